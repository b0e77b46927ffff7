#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "uso/analysis.hpp"
#include "uso/cube.hpp"
#include "uso/lgraph.hpp"

namespace uso {

/// Streams all 2^n·n! cube automorphisms exactly once, in a fixed order:
/// flip sets by index, permutations lexicographically within each flip.
class AutomorphismEnumerator {
public:
    explicit AutomorphismEnumerator(int n) : n_(n), perm_(identity_perm(n)) {
        if (n > 8) throw DimensionTooLarge("automorphism sweep is 2^n n!; n <= 8 only");
    }

    bool next(Automorphism& out) {
        if (exhausted_) return false;
        out = Automorphism(DimSet(flip_), perm_);
        if (!std::next_permutation(perm_.begin(), perm_.end())) {
            // wrapped back to the identity; move to the next flip set
            if (++flip_ >= (std::uint32_t(1) << n_)) exhausted_ = true;
        }
        return true;
    }

private:
    int n_;
    std::uint32_t flip_ = 0;
    std::vector<std::uint8_t> perm_;
    bool exhausted_ = false;
};

template <typename Fn>
void for_each_automorphism(int n, Fn&& fn) {
    AutomorphismEnumerator e(n);
    Automorphism a = Automorphism::identity(n);
    while (e.next(a)) fn(std::as_const(a));
}

inline std::uint64_t automorphism_count(int n) {
    std::uint64_t c = std::uint64_t(1) << n;
    for (int i = 2; i <= n; ++i) c *= std::uint64_t(i);
    return c;
}

/// Lexicographic minimum of the outmap table over all automorphic images;
/// the class representative used by the census. Idempotent, and equal for
/// isomorphic inputs.
inline OutMap canonical_form(const OutMap& o) {
    if (!is_uso(o)) throw NotAUso("canonical form is defined for USOs");
    OutMap best = o;
    for_each_automorphism(o.dimension(), [&](const Automorphism& a) {
        OutMap img = apply_automorphism(o, a);
        if (img.masks() < best.masks()) best = img;
    });
    return best;
}

/// True iff no automorphic image is lexicographically smaller. Cheaper than
/// canonical_form: each automorphism is abandoned at the first deciding
/// entry.
inline bool is_canonical(const OutMap& o) {
    if (!is_uso(o)) throw NotAUso("canonicality is defined for USOs");
    const std::uint32_t nv = o.vertex_count();
    bool canonical = true;
    for_each_automorphism(o.dimension(), [&](const Automorphism& a) {
        if (!canonical) return;
        const std::vector<std::uint8_t> inv = inverse_perm(a.perm);
        for (std::uint32_t w = 0; w < nv; ++w) {
            const std::uint32_t img =
                permute_mask(o.mask_at(permute_mask(w, inv) ^ a.flip.bits), a.perm);
            if (img < o.mask_at(w)) { canonical = false; return; }
            if (img > o.mask_at(w)) return;
        }
    });
    return canonical;
}

/// First automorphism (in enumeration order) mapping o1 onto o2, if any.
inline std::optional<Automorphism> are_isomorphic(const OutMap& o1, const OutMap& o2) {
    if (o1.dimension() != o2.dimension()) throw DimensionMismatch("cube dimensions differ");
    if (!is_uso(o1) || !is_uso(o2)) throw NotAUso("isomorphism test is defined for USOs");
    const std::uint32_t nv = o1.vertex_count();
    std::optional<Automorphism> found;
    for_each_automorphism(o1.dimension(), [&](const Automorphism& a) {
        if (found) return;
        const std::vector<std::uint8_t> inv = inverse_perm(a.perm);
        for (std::uint32_t w = 0; w < nv; ++w)
            if (permute_mask(o1.mask_at(permute_mask(w, inv) ^ a.flip.bits), a.perm) !=
                o2.mask_at(w))
                return;
        found = a;
    });
    return found;
}

/// First automorphism whose image of o satisfies property L, after a full
/// sweep of all 2^n·n! candidates; absent if no isomorphic copy has it.
inline std::optional<Automorphism> exists_property_l_copy(const OutMap& o) {
    if (!is_uso(o)) throw NotAUso("property-L copy search is defined for USOs");
    std::optional<Automorphism> found;
    for_each_automorphism(o.dimension(), [&](const Automorphism& a) {
        if (found) return;
        if (has_property_l(apply_automorphism(o, a)).holds) found = a;
    });
    return found;
}

/// Enumerates every n-cube USO exactly once by backtracking over vertex
/// outmap values in vertex-index-major, mask-minor order, pruned by the
/// pairwise criterion. The visitor may not retain the reference.
template <typename Fn>
void enumerate_usos(int n, Fn&& visit) {
    if (n > 4) throw DimensionTooLarge("exhaustive USO enumeration only for n <= 4");
    const std::uint32_t nv = std::uint32_t(1) << n;
    OutMap o(n);
    std::vector<std::uint32_t> next_mask(nv + 1, 0);
    std::int32_t depth = 0;
    while (depth >= 0) {
        if (next_mask[depth] >= nv) {
            --depth;
            if (depth >= 0) ++next_mask[depth];
            continue;
        }
        const std::uint32_t mask = next_mask[depth];
        bool ok = true;
        for (std::uint32_t u = 0; u < std::uint32_t(depth); ++u)
            if (!((o.mask_at(u) ^ mask) & (u ^ std::uint32_t(depth)))) { ok = false; break; }
        if (!ok) {
            ++next_mask[depth];
            continue;
        }
        o.set_mask(std::uint32_t(depth), mask);
        if (std::uint32_t(depth) == nv - 1) {
            visit(std::as_const(o));
            ++next_mask[depth];
            continue;
        }
        ++depth;
        next_mask[depth] = 0;
    }
}

inline std::uint64_t count_usos(int n) {
    std::uint64_t c = 0;
    enumerate_usos(n, [&](const OutMap&) { ++c; });
    return c;
}

}  // namespace uso
