#pragma once

#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "uso/analysis.hpp"
#include "uso/cube.hpp"
#include "uso/lgraph.hpp"
#include "uso/matrix.hpp"

namespace uso {

/// Principal-minor sweeps are exponential; this is the accepted desk-scale
/// bound for the exact all-minors P-matrix test.
inline constexpr int kPMatrixMaxDim = 14;

/// M(V): column i is -M_i for i in V, the i-th identity column otherwise.
inline RationalMatrix build_mv(const RationalMatrix& m, DimSet v) {
    if (!m.is_square()) throw DimensionMismatch("M must be square");
    const int n = m.rows();
    RationalMatrix out(n, n);
    for (int c = 0; c < n; ++c) {
        if (v.contains(c + 1))
            for (int r = 0; r < n; ++r) out.at(r, c) = -m.at(r, c);
        else
            out.at(c, c) = 1;
    }
    return out;
}

/// Exact P-matrix test: every principal minor positive.
inline bool is_p_matrix(const RationalMatrix& m) {
    if (!m.is_square()) return false;
    const int n = m.rows();
    if (n > kPMatrixMaxDim)
        throw DimensionTooLarge("P-matrix test sweeps 2^n principal minors; n <= " +
                                std::to_string(kPMatrixMaxDim));
    for (std::uint32_t idx = 1; idx < (std::uint32_t(1) << n); ++idx)
        if (determinant(principal_submatrix(m, DimSet(idx))).sign() <= 0) return false;
    return true;
}

/// Sylvester's criterion: symmetric with all leading principal minors
/// positive.
inline bool is_spd(const RationalMatrix& m) {
    if (!m.is_square() || !m.is_symmetric()) return false;
    const int n = m.rows();
    for (int k = 1; k <= n; ++k)
        if (determinant(principal_submatrix(m, DimSet::full(k))).sign() <= 0) return false;
    return true;
}

namespace detail {

/// Solves M(V)x = q and returns the outmap value {i : x_i < 0}; throws
/// NotGeneric if any component vanishes.
inline std::uint32_t lcp_vertex_mask(const RationalMatrix& m, const RationalVector& q,
                                     std::uint32_t v) {
    const RationalVector x = solve_exact(build_mv(m, DimSet(v)), q);
    std::uint32_t mask = 0;
    for (int i = 0; i < x.size(); ++i) {
        const int s = x[i].sign();
        if (s == 0) throw NotGeneric(v, i + 1);
        if (s < 0) mask |= std::uint32_t(1) << i;
    }
    return mask;
}

/// The 2^n per-vertex solves are independent; jobs > 1 shards the vertex
/// range. Assembly is deterministic, and the lowest not-generic vertex wins
/// when several shards fail.
inline OutMap outmap_from_lcp(const RationalMatrix& m, const RationalVector& q, int jobs) {
    const int n = m.rows();
    if (q.size() != n) throw DimensionMismatch("q has wrong length");
    OutMap o(n);
    const std::uint32_t nv = o.vertex_count();
    if (jobs <= 1 || nv < 64) {
        for (std::uint32_t v = 0; v < nv; ++v) o.set_mask(v, lcp_vertex_mask(m, q, v));
        return o;
    }
    std::vector<std::thread> workers;
    std::vector<std::optional<NotGeneric>> failures(jobs);
    for (int t = 0; t < jobs; ++t)
        workers.emplace_back([&, t] {
            for (std::uint32_t v = t; v < nv; v += std::uint32_t(jobs)) {
                try {
                    o.set_mask(v, lcp_vertex_mask(m, q, v));
                } catch (const NotGeneric& e) {
                    if (!failures[t] || e.vertex() < failures[t]->vertex()) failures[t] = e;
                }
            }
        });
    for (auto& w : workers) w.join();
    std::optional<NotGeneric> first;
    for (const auto& f : failures)
        if (f && (!first || f->vertex() < first->vertex())) first = f;
    if (first) throw *first;
    return o;
}

}  // namespace detail

/// Stickney-Watson P-cube: phi(V) = {i : (M(V)^{-1} q)_i < 0}. Requires a
/// P-matrix and generic q; the result is checked to be a USO.
inline OutMap pcube_outmap(const RationalMatrix& m, const RationalVector& q, int jobs = 1) {
    if (!is_p_matrix(m)) throw NotPMatrix("matrix has a nonpositive principal minor");
    OutMap o = detail::outmap_from_lcp(m, q, jobs);
    if (!is_uso(o)) throw std::logic_error("P-cube construction produced a non-USO");
    return o;
}

/// Full LCP vertex solution at V: w on the complement, z on V, exact
/// residual w - Mz = q.
struct LcpSolution {
    RationalVector w;
    RationalVector z;
    DimSet basis;
};

inline LcpSolution lcp_solution_at(const RationalMatrix& m, const RationalVector& q, DimSet v) {
    const int n = m.rows();
    if (q.size() != n) throw DimensionMismatch("q has wrong length");
    const RationalVector x = solve_exact(build_mv(m, v), q);
    LcpSolution sol{RationalVector(n), RationalVector(n), v};
    for (int i = 0; i < n; ++i) {
        if (x[i].is_zero()) throw NotGeneric(v.bits, i + 1);
        (v.contains(i + 1) ? sol.z[i] : sol.w[i]) = x[i];
    }
    return sol;
}

/// Principal-pivot reduction: the (n-1)x(n-1) matrix with entries
/// m_ij - m_ik m_kj / m_kk over i,j != k, indices renamed in increasing
/// order. Governs the facet [{k},[n]] of a P-cube.
inline RationalMatrix schur_reduce(const RationalMatrix& m, int k) {
    if (!m.is_square()) throw DimensionMismatch("M must be square");
    const int n = m.rows();
    if (k < 1 || k > n) throw DimensionMismatch("pivot dimension out of range");
    const Rational& pivot = m.at(k - 1, k - 1);
    if (pivot.is_zero()) throw ZeroPivot("m_kk is zero");
    RationalMatrix out(n - 1, n - 1);
    int ri = 0;
    for (int i = 0; i < n; ++i) {
        if (i == k - 1) continue;
        int ci = 0;
        for (int j = 0; j < n; ++j) {
            if (j == k - 1) continue;
            out.at(ri, ci) = m.at(i, j) - m.at(i, k - 1) * m.at(k - 1, j) / pivot;
            ++ci;
        }
        ++ri;
    }
    return out;
}

/// D-cube: the P-cube of a symmetric positive definite matrix. Property L
/// is part of the contract and asserted on the result.
inline OutMap dcube_outmap(const RationalMatrix& m, const RationalVector& q, int jobs = 1) {
    if (!is_spd(m)) throw NotSpd("matrix is not symmetric positive definite");
    OutMap o = detail::outmap_from_lcp(m, q, jobs);
    if (!is_uso(o)) throw std::logic_error("D-cube construction produced a non-USO");
    if (!has_property_l(o).holds) throw std::logic_error("D-cube violates property L");
    return o;
}

}  // namespace uso
