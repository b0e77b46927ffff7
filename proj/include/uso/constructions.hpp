#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "uso/analysis.hpp"
#include "uso/cube.hpp"
#include "uso/lcp.hpp"

namespace uso {

/// Recursively combed USOs are in bijection with bitstrings of length
/// 2^n - 1: bit 0 directs every dimension-n edge (0 = downward, toward the
/// smaller set; 1 = upward), and the two blocks of 2^(n-1) - 1 bits that
/// follow encode the lower and upper facet, in that order.
struct CombedSpec {
    int n = 1;
    std::uint64_t bits = 0;

    CombedSpec(int n_, std::uint64_t bits_) : n(n_), bits(bits_) {
        if (n < 1 || n > 6) throw Error("combed spec dimension must be in [1,6]");
        const int len = (1 << n) - 1;
        if (len < 64 && (bits >> len) != 0) throw Error("combed spec has stray bits");
    }
    int bit_length() const { return (1 << n) - 1; }
};

inline OutMap recursively_combed(const CombedSpec& spec) {
    const int n = spec.n;
    const bool up = spec.bits & 1;
    if (n == 1) return OutMap(1, up ? std::vector<std::uint32_t>{1, 0} : std::vector<std::uint32_t>{0, 1});
    const int half = (1 << (n - 1)) - 1;
    const std::uint64_t lower_bits = (spec.bits >> 1) & ((std::uint64_t(1) << half) - 1);
    const std::uint64_t upper_bits = (spec.bits >> (1 + half)) & ((std::uint64_t(1) << half) - 1);
    const OutMap lower = recursively_combed(CombedSpec(n - 1, lower_bits));
    const OutMap upper = recursively_combed(CombedSpec(n - 1, upper_bits));
    const std::uint32_t top = std::uint32_t(1) << (n - 1);
    OutMap o(n);
    for (std::uint32_t v = 0; v < top; ++v) {
        o.set_mask(v, lower.mask_at(v) | (up ? top : 0));
        o.set_mask(v | top, upper.mask_at(v) | (up ? 0 : top));
    }
    return o;
}

/// The uniform USO: every edge directed toward the smaller set, phi(V) = V.
inline OutMap uniform_uso(int n) {
    OutMap o(n);
    for (std::uint32_t v = 0; v < o.vertex_count(); ++v) o.set_mask(v, v);
    return o;
}

/// A set of cube edges (vertex, dimension) with pairwise disjoint
/// endpoints.
struct Matching {
    std::vector<std::pair<DimSet, int>> edges;
};

inline void validate_matching(const Matching& m, int n) {
    std::vector<std::uint8_t> covered(std::size_t(1) << n, 0);
    for (const auto& [v, dim] : m.edges) {
        if (dim < 1 || dim > n) throw InvalidMatching("edge dimension out of range");
        if (!v.subset_of(DimSet::full(n))) throw InvalidMatching("edge vertex outside the cube");
        const std::uint32_t a = v.bits;
        const std::uint32_t b = v.bits ^ (std::uint32_t(1) << (dim - 1));
        if (covered[a] || covered[b]) throw InvalidMatching("matching covers a vertex twice");
        covered[a] = covered[b] = 1;
    }
}

/// Uniform USO with the matched edges flipped; always a USO.
inline OutMap matching_reversal(int n, const Matching& m) {
    validate_matching(m, n);
    OutMap o = uniform_uso(n);
    for (const auto& [v, dim] : m.edges) {
        const std::uint32_t bit = std::uint32_t(1) << (dim - 1);
        o.set_mask(v.bits, o.mask_at(v.bits) ^ bit);
        o.set_mask(v.bits ^ bit, o.mask_at(v.bits ^ bit) ^ bit);
    }
    if (!is_uso(o)) throw std::logic_error("matching reversal produced a non-USO");
    return o;
}

/// Diffs an outmap against the uniform USO; the flipped edges form the
/// matching that reproduces o, provided they are disjoint.
inline Matching matching_from_uniform_diff(const OutMap& o) {
    const int n = o.dimension();
    Matching m;
    for (std::uint32_t v = 0; v < o.vertex_count(); ++v) {
        const std::uint32_t diff = o.mask_at(v) ^ v;
        for (std::uint32_t b = diff; b; b &= b - 1) {
            const int i = std::countr_zero(b);
            if (!((v >> i) & 1u)) m.edges.push_back({DimSet(v), i + 1});  // record each edge once
        }
    }
    validate_matching(m, n);
    return m;
}

/// Splits V ⊆ [2n] into (V_L, V_H): the low dimensions and the high
/// dimensions renamed down into [n].
inline std::pair<DimSet, DimSet> split_lh(DimSet v, int n) {
    return {DimSet(v.bits & DimSet::full(n).bits), DimSet(v.bits >> n)};
}

/// Kaleidoscope identity: psi(V)_L = phi(V_L xor V_H) for all V ⊆ [2n].
inline bool is_kaleidoscope(const OutMap& psi, const OutMap& phi) {
    const int n = phi.dimension();
    if (psi.dimension() != 2 * n)
        throw DimensionMismatch("kaleidoscope must have twice the base dimension");
    const std::uint32_t low = DimSet::full(n).bits;
    for (std::uint32_t v = 0; v < psi.vertex_count(); ++v)
        if ((psi.mask_at(v) & low) != phi.mask_at((v & low) ^ (v >> n))) return false;
    return true;
}

/// Schurr-Szabo product construction: psi(V)_L = phi(V_L xor V_H),
/// psi(V)_H = V_H. Every edge along a high dimension points downward.
inline OutMap product_kaleidoscope(const OutMap& phi) {
    if (!is_uso(phi)) throw NotAUso("kaleidoscope base must be a USO");
    const int n = phi.dimension();
    OutMap psi(2 * n);
    const std::uint32_t low = DimSet::full(n).bits;
    for (std::uint32_t v = 0; v < psi.vertex_count(); ++v)
        psi.set_mask(v, phi.mask_at((v & low) ^ (v >> n)) | (v & ~low));
    if (!is_uso(psi)) throw std::logic_error("product kaleidoscope produced a non-USO");
    return psi;
}

/// Searches for V ⊆ {n+1,...,2n} such that the subcube [V, V∪[n]] is a
/// translated copy of phi; candidates scanned in increasing index order.
inline std::optional<DimSet> contains_copy(const OutMap& psi_prime, const OutMap& phi) {
    const int n = phi.dimension();
    if (psi_prime.dimension() != 2 * n)
        throw DimensionMismatch("container must have twice the base dimension");
    const std::uint32_t low = DimSet::full(n).bits;
    for (std::uint32_t vh = 0; vh <= low; ++vh) {
        const std::uint32_t v = vh << n;
        bool match = true;
        for (std::uint32_t u = 0; u <= low && match; ++u)
            if ((psi_prime.mask_at(v | u) & low) != phi.mask_at(u)) match = false;
        if (match) return DimSet(v);
    }
    return std::nullopt;
}

/// Doubles a P-matrix: M = (A, A+I; A-I, A) is again a P-matrix. The
/// blow-up is asserted exactly up to base dimension 6.
inline RationalMatrix blowup_pmatrix(const RationalMatrix& a) {
    if (!is_p_matrix(a)) throw NotPMatrix("blow-up input must be a P-matrix");
    const int n = a.rows();
    RationalMatrix m(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rational& v = a.at(i, j);
            m.at(i, j) = v;
            m.at(i, j + n) = i == j ? v + 1 : v;
            m.at(i + n, j) = i == j ? v - 1 : v;
            m.at(i + n, j + n) = v;
        }
    if (n <= 6 && !is_p_matrix(m)) throw std::logic_error("blow-up is not a P-matrix");
    return m;
}

struct PcubeKaleidoscope {
    RationalMatrix m;  // 2n x 2n blow-up
    RationalVector q;  // (b, b)
    OutMap psi;        // the 2n-dimensional P-cube
};

/// Algebraic kaleidoscope: the blow-up of A with q = (b, b) generates a
/// 2n-dimensional P-cube that is a kaleidoscope for the P-cube of (A, b).
inline PcubeKaleidoscope pcube_kaleidoscope(const RationalMatrix& a, const RationalVector& b,
                                            int jobs = 1) {
    const OutMap phi = pcube_outmap(a, b, jobs);
    RationalMatrix m = blowup_pmatrix(a);
    const int n = a.rows();
    RationalVector q(2 * n);
    for (int i = 0; i < n; ++i) q[i] = q[i + n] = b[i];
    OutMap psi = detail::outmap_from_lcp(m, q, jobs);  // P-matrix already certified by the blow-up
    if (!is_uso(psi)) throw std::logic_error("P-cube kaleidoscope produced a non-USO");
    if (!is_kaleidoscope(psi, phi)) throw std::logic_error("blow-up failed the kaleidoscope identity");
    return {std::move(m), std::move(q), std::move(psi)};
}

}  // namespace uso
