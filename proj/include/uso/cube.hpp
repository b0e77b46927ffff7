#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "uso/dimset.hpp"
#include "uso/errors.hpp"

namespace uso {

/// Outmap of an n-cube orientation: for each vertex V (indexed by bitmask),
/// the set of dimensions along which V has outgoing edges. A freshly parsed
/// table need not be a consistent orientation; see is_orientation().
class OutMap {
public:
    OutMap() : n_(0), masks_(1, 0) {}

    explicit OutMap(int n) : n_(check_dim(n)), masks_(std::size_t(1) << n, 0) {}

    OutMap(int n, std::vector<std::uint32_t> masks) : n_(check_dim(n)), masks_(std::move(masks)) {
        if (masks_.size() != (std::size_t(1) << n_))
            throw Error("outmap table must have exactly 2^n entries");
        const std::uint32_t limit = DimSet::full(n_).bits;
        for (std::uint32_t m : masks_)
            if (m & ~limit) throw Error("outmap entry has bits outside [n]");
    }

    int dimension() const { return n_; }
    std::uint32_t vertex_count() const { return std::uint32_t(1) << n_; }

    DimSet at(DimSet vertex) const { return DimSet(masks_[vertex.bits]); }
    std::uint32_t mask_at(std::uint32_t vertex) const { return masks_[vertex]; }
    void set(DimSet vertex, DimSet value) { masks_[vertex.bits] = value.bits; }
    void set_mask(std::uint32_t vertex, std::uint32_t value) { masks_[vertex] = value; }

    const std::vector<std::uint32_t>& masks() const { return masks_; }

    friend bool operator==(const OutMap& a, const OutMap& b) {
        return a.n_ == b.n_ && a.masks_ == b.masks_;
    }
    friend bool operator!=(const OutMap& a, const OutMap& b) { return !(a == b); }

private:
    static int check_dim(int n) {
        if (n < 0) throw Error("negative cube dimension");
        if (n > max_dimension())
            throw DimensionTooLarge("cube dimension " + std::to_string(n) +
                                    " exceeds cap " + std::to_string(max_dimension()));
        return n;
    }

    int n_;
    std::vector<std::uint32_t> masks_;
};

/// Subcube given by an interval [lower, upper], lower ⊆ upper.
struct Face {
    DimSet lower;
    DimSet upper;

    Face(DimSet lo, DimSet up) : lower(lo), upper(up) {
        if (!lo.subset_of(up)) throw Error("malformed face: lower not a subset of upper");
    }
    static Face whole_cube(int n) { return Face(DimSet(), DimSet::full(n)); }

    DimSet carrier() const { return upper ^ lower; }
    int dimension() const { return carrier().size(); }
    bool contains_vertex(DimSet v) const { return lower.subset_of(v) && v.subset_of(upper); }
};

/// Maps a mask through a permutation of dimensions. perm[i] is the 0-based
/// image of 0-based dimension i.
inline std::uint32_t permute_mask(std::uint32_t mask, const std::vector<std::uint8_t>& perm) {
    std::uint32_t out = 0;
    for (std::uint32_t b = mask; b; b &= b - 1)
        out |= std::uint32_t(1) << perm[std::countr_zero(b)];
    return out;
}

inline std::vector<std::uint8_t> identity_perm(int n) {
    std::vector<std::uint8_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline std::vector<std::uint8_t> inverse_perm(const std::vector<std::uint8_t>& perm) {
    std::vector<std::uint8_t> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = std::uint8_t(i);
    return inv;
}

inline void check_permutation(const std::vector<std::uint8_t>& perm, int n) {
    if (int(perm.size()) != n) throw InvalidPermutation("permutation has wrong length");
    std::uint32_t seen = 0;
    for (std::uint8_t v : perm) {
        if (v >= n || (seen >> v) & 1u) throw InvalidPermutation("permutation is not a bijection on [n]");
        seen |= std::uint32_t(1) << v;
    }
}

/// Cube automorphism h(V) = pi(V xor F): mirror along F, then rename
/// dimensions by pi.
struct Automorphism {
    DimSet flip;
    std::vector<std::uint8_t> perm;  // perm[i] = 0-based image of 0-based dimension i

    Automorphism(DimSet f, std::vector<std::uint8_t> p) : flip(f), perm(std::move(p)) {
        check_permutation(perm, int(perm.size()));
    }
    static Automorphism identity(int n) { return Automorphism(DimSet(), identity_perm(n)); }

    int dimension() const { return int(perm.size()); }
    bool is_identity() const {
        if (!flip.empty()) return false;
        for (std::size_t i = 0; i < perm.size(); ++i)
            if (perm[i] != i) return false;
        return true;
    }

    DimSet map_dims(DimSet s) const { return DimSet(permute_mask(s.bits, perm)); }
    DimSet apply_vertex(DimSet v) const { return map_dims(v ^ flip); }

    /// h^{-1}(W) = pi^{-1}(W) xor F = pi^{-1}(W xor pi(F)).
    Automorphism inverse() const { return Automorphism(map_dims(flip), inverse_perm(perm)); }

    friend bool operator==(const Automorphism& a, const Automorphism& b) {
        return a.flip == b.flip && a.perm == b.perm;
    }
};

/// outer ∘ inner as a single automorphism:
/// outer(inner(V)) = pi2(pi1(V xor F1) xor F2) = (pi2∘pi1)(V xor (F1 xor pi1^{-1}(F2))).
inline Automorphism composed(const Automorphism& outer, const Automorphism& inner) {
    if (outer.dimension() != inner.dimension())
        throw DimensionMismatch("automorphism dimensions differ");
    const int n = inner.dimension();
    DimSet flip = inner.flip ^ DimSet(permute_mask(outer.flip.bits, inverse_perm(inner.perm)));
    std::vector<std::uint8_t> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = outer.perm[inner.perm[i]];
    return Automorphism(flip, std::move(perm));
}

enum class EdgeDirection { Outgoing, Incoming };

/// True iff the table is a consistent orientation: each edge {V, V+i} is
/// claimed outgoing by exactly one endpoint.
inline bool is_orientation(const OutMap& o) {
    const int n = o.dimension();
    const std::uint32_t nv = o.vertex_count();
    for (std::uint32_t v = 0; v < nv; ++v)
        for (int i = 0; i < n; ++i) {
            if ((v >> i) & 1u) continue;
            std::uint32_t edge_bit = std::uint32_t(1) << i;
            if (!((o.mask_at(v) ^ o.mask_at(v | edge_bit)) & edge_bit)) return false;
        }
    return true;
}

inline EdgeDirection edge_direction(const OutMap& o, DimSet v, int dim) {
    if (dim < 1 || dim > o.dimension())
        throw DimensionMismatch("edge dimension " + std::to_string(dim) + " out of range");
    return o.at(v).contains(dim) ? EdgeDirection::Outgoing : EdgeDirection::Incoming;
}

/// Reversal O ⊕ R: xors R into every outmap value, flipping all edges along
/// the dimensions in R. Involution; preserves orientations.
inline OutMap reverse(const OutMap& o, DimSet r) {
    OutMap out(o.dimension());
    const std::uint32_t nv = o.vertex_count();
    for (std::uint32_t v = 0; v < nv; ++v) out.set_mask(v, o.mask_at(v) ^ r.bits);
    return out;
}

/// Mirror image psi'(V) = psi(V xor F); the automorphism with identity
/// renaming.
inline OutMap mirror(const OutMap& o, DimSet f) {
    OutMap out(o.dimension());
    const std::uint32_t nv = o.vertex_count();
    for (std::uint32_t v = 0; v < nv; ++v) out.set_mask(v, o.mask_at(v ^ f.bits));
    return out;
}

/// Renames dimensions: vertex pi(V) gets outmap pi(phi(V)).
inline OutMap permute_dims(const OutMap& o, const std::vector<std::uint8_t>& perm) {
    check_permutation(perm, o.dimension());
    OutMap out(o.dimension());
    const std::uint32_t nv = o.vertex_count();
    for (std::uint32_t v = 0; v < nv; ++v)
        out.set_mask(permute_mask(v, perm), permute_mask(o.mask_at(v), perm));
    return out;
}

/// Image under h(V) = pi(V xor F); equals permute_dims(mirror(o, F), pi).
inline OutMap apply_automorphism(const OutMap& o, const Automorphism& a) {
    if (a.dimension() != o.dimension())
        throw DimensionMismatch("automorphism dimension does not match cube");
    OutMap out(o.dimension());
    const std::uint32_t nv = o.vertex_count();
    const std::vector<std::uint8_t> inv = inverse_perm(a.perm);
    for (std::uint32_t w = 0; w < nv; ++w)
        out.set_mask(w, permute_mask(o.mask_at(permute_mask(w, inv) ^ a.flip.bits), a.perm));
    return out;
}

/// Restriction to a face, with the carrier dimensions renamed to [1..k] in
/// increasing order. The result is a k-cube outmap.
inline OutMap face_subcube(const OutMap& o, const Face& face) {
    if (!face.upper.subset_of(DimSet::full(o.dimension())))
        throw DimensionMismatch("face lies outside the cube");
    const std::vector<int> carrier = face.carrier().dims();
    const int k = int(carrier.size());
    OutMap out(k);
    for (std::uint32_t sub = 0; sub < (std::uint32_t(1) << k); ++sub) {
        std::uint32_t v = face.lower.bits;
        for (int b = 0; b < k; ++b)
            if ((sub >> b) & 1u) v |= std::uint32_t(1) << (carrier[b] - 1);
        std::uint32_t phi = o.mask_at(v);
        std::uint32_t renamed = 0;
        for (int b = 0; b < k; ++b)
            if ((phi >> (carrier[b] - 1)) & 1u) renamed |= std::uint32_t(1) << b;
        out.set_mask(sub, renamed);
    }
    return out;
}

/// Enumerates every n-cube orientation table (2^(n·2^(n-1)) of them) in a
/// fixed order; fn(const OutMap&) is called for each. Intended for n <= 3.
template <typename Fn>
void for_each_orientation(int n, Fn&& fn) {
    if (n > 3) throw DimensionTooLarge("orientation enumeration is exhaustive; n <= 3 only");
    std::vector<std::pair<std::uint32_t, int>> edges;
    const std::uint32_t nv = std::uint32_t(1) << n;
    for (std::uint32_t v = 0; v < nv; ++v)
        for (int i = 0; i < n; ++i)
            if (!((v >> i) & 1u)) edges.push_back({v, i});
    OutMap o(n);
    const std::uint64_t total = std::uint64_t(1) << edges.size();
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        for (std::uint32_t v = 0; v < nv; ++v) o.set_mask(v, 0);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            auto [v, i] = edges[e];
            if ((bits >> e) & 1u)
                o.set_mask(v, o.mask_at(v) | (std::uint32_t(1) << i));  // V -> V+i
            else
                o.set_mask(v | (std::uint32_t(1) << i),
                           o.mask_at(v | (std::uint32_t(1) << i)) | (std::uint32_t(1) << i));
        }
        fn(std::as_const(o));
    }
}

}  // namespace uso
