#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "uso/errors.hpp"

namespace uso {

/// Absolute cap on cube dimension: outmap tables hold 2^n entries.
inline constexpr int kDimensionCap = 30;

/// Effective dimension cap; USO_MAX_DIM in the environment lowers (or raises,
/// up to kDimensionCap) the default of 30.
inline int max_dimension() {
    if (const char* env = std::getenv("USO_MAX_DIM")) {
        int v = std::atoi(env);
        if (v >= 0 && v <= kDimensionCap) return v;
    }
    return kDimensionCap;
}

/// A subset of the dimensions [n] = {1,...,n}; dimension i sits at bit i-1.
/// Doubles as a cube vertex and as an outmap value. The vertex index of a
/// DimSet is the integer value of its bitmask.
struct DimSet {
    std::uint32_t bits = 0;

    constexpr DimSet() = default;
    explicit constexpr DimSet(std::uint32_t b) : bits(b) {}

    static constexpr DimSet single(int dim) { return DimSet(1u << (dim - 1)); }
    static constexpr DimSet full(int n) {
        return DimSet(n == 0 ? 0u : (n >= 32 ? ~0u : (1u << n) - 1u));
    }

    constexpr bool empty() const { return bits == 0; }
    constexpr int size() const { return std::popcount(bits); }
    constexpr bool contains(int dim) const { return (bits >> (dim - 1)) & 1u; }
    constexpr bool subset_of(DimSet other) const { return (bits & ~other.bits) == 0; }

    constexpr DimSet with(int dim) const { return DimSet(bits | (1u << (dim - 1))); }
    constexpr DimSet without(int dim) const { return DimSet(bits & ~(1u << (dim - 1))); }
    constexpr DimSet complement_in(int n) const { return DimSet(~bits & full(n).bits); }

    /// Smallest dimension in the set; 0 if empty.
    constexpr int lowest() const { return bits == 0 ? 0 : std::countr_zero(bits) + 1; }

    std::vector<int> dims() const {
        std::vector<int> out;
        out.reserve(size());
        for (std::uint32_t b = bits; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
        return out;
    }

    friend constexpr DimSet operator^(DimSet a, DimSet b) { return DimSet(a.bits ^ b.bits); }
    friend constexpr DimSet operator|(DimSet a, DimSet b) { return DimSet(a.bits | b.bits); }
    friend constexpr DimSet operator&(DimSet a, DimSet b) { return DimSet(a.bits & b.bits); }
    friend constexpr bool operator==(DimSet a, DimSet b) { return a.bits == b.bits; }
    friend constexpr bool operator!=(DimSet a, DimSet b) { return a.bits != b.bits; }
    friend constexpr bool operator<(DimSet a, DimSet b) { return a.bits < b.bits; }
};

/// "{}" or "{1,3}"; for human-readable reports.
inline std::string to_string(DimSet s) {
    std::string out = "{";
    bool first = true;
    for (int d : s.dims()) {
        if (!first) out += ',';
        out += std::to_string(d);
        first = false;
    }
    return out + "}";
}

}  // namespace uso
