#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "uso/analysis.hpp"
#include "uso/cube.hpp"

namespace uso {

/// The L-graph of a vertex V: a digraph on the dimensions outside V with an
/// arc (i,j) whenever exactly one of V and V∪{i} has an outgoing j-edge.
struct LGraph {
    DimSet base;                     // V
    int ambient = 0;                 // n
    DimSet nodes;                    // [n] \ V
    std::array<std::uint32_t, kDimensionCap> adj{};  // adj[i-1]: bitmask of arc targets of i

    bool has_arc(int i, int j) const { return (adj[i - 1] >> (j - 1)) & 1u; }

    std::vector<std::pair<int, int>> arcs() const {
        std::vector<std::pair<int, int>> out;
        for (int i : nodes.dims())
            for (int j : DimSet(adj[i - 1]).dims()) out.push_back({i, j});
        return out;
    }

    friend bool operator==(const LGraph& a, const LGraph& b) {
        return a.base == b.base && a.ambient == b.ambient && a.nodes == b.nodes && a.adj == b.adj;
    }
};

inline LGraph lgraph(const OutMap& o, DimSet v) {
    const int n = o.dimension();
    LGraph g;
    g.base = v;
    g.ambient = n;
    g.nodes = v.complement_in(n);
    const std::uint32_t outside = g.nodes.bits;
    for (std::uint32_t b = outside; b; b &= b - 1) {
        const int i0 = std::countr_zero(b);
        const std::uint32_t diff = o.mask_at(v.bits) ^ o.mask_at(v.bits | (std::uint32_t(1) << i0));
        g.adj[i0] = diff & outside & ~(std::uint32_t(1) << i0);
    }
    return g;
}

namespace detail {

/// Kahn peeling on the node subset; true iff some arc-cycle remains.
inline bool lgraph_cyclic(const LGraph& g) {
    std::uint32_t alive = g.nodes.bits;
    bool changed = true;
    while (changed && alive) {
        changed = false;
        for (std::uint32_t b = alive; b; b &= b - 1) {
            const int i = std::countr_zero(b);
            bool has_in = false;
            for (std::uint32_t c = alive; c; c &= c - 1) {
                const int j = std::countr_zero(c);
                if (j != i && ((g.adj[j] >> i) & 1u)) { has_in = true; break; }
            }
            if (!has_in) {
                alive &= ~(std::uint32_t(1) << i);
                changed = true;
            }
        }
    }
    return alive != 0;
}

/// Shortest directed cycle, as a dimension sequence i0 -> i1 -> ... -> i0
/// (first dimension not repeated at the end). Deterministic: smallest start
/// node, BFS expanding targets in increasing order.
inline std::vector<int> lgraph_shortest_cycle(const LGraph& g) {
    std::vector<int> best;
    for (int s : g.nodes.dims()) {
        // BFS from s; find shortest path back to s.
        std::array<int, kDimensionCap + 1> parent{};
        parent.fill(-1);
        std::vector<int> queue{s};
        parent[s] = s;
        std::vector<int> found;
        for (std::size_t qi = 0; qi < queue.size() && found.empty(); ++qi) {
            const int u = queue[qi];
            for (int w : DimSet(g.adj[u - 1]).dims()) {
                if (w == s) {
                    found.push_back(u);
                    break;
                }
                if (parent[w] == -1) {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if (!found.empty()) {
            std::vector<int> cyc;
            for (int u = found[0]; u != s; u = parent[u]) cyc.push_back(u);
            cyc.push_back(s);
            std::reverse(cyc.begin(), cyc.end());
            if (best.empty() || cyc.size() < best.size()) best = cyc;
        }
    }
    return best;
}

}  // namespace detail

struct PropertyLReport {
    bool holds = true;
    std::optional<DimSet> witness_vertex;   // first vertex (index order) with a cyclic L-graph
    std::vector<int> witness_cycle;         // shortest dimension cycle there
};

/// Property L: all 2^n L-graphs are acyclic. On failure the report carries
/// the first offending vertex in index order and a shortest cycle.
inline PropertyLReport has_property_l(const OutMap& o) {
    const std::uint32_t nv = o.vertex_count();
    for (std::uint32_t v = 0; v < nv; ++v) {
        LGraph g = lgraph(o, DimSet(v));
        if (detail::lgraph_cyclic(g)) {
            PropertyLReport r;
            r.holds = false;
            r.witness_vertex = DimSet(v);
            r.witness_cycle = detail::lgraph_shortest_cycle(g);
            return r;
        }
    }
    return {};
}

/// Desk-scale verification harness for "property L implies USO": sweeps all
/// 2^(n·2^(n-1)) orientations of the n-cube.
inline bool property_l_implies_uso_check(int n) {
    if (n > 3) throw DimensionTooLarge("exhaustive orientation sweep only for n <= 3");
    bool ok = true;
    for_each_orientation(n, [&](const OutMap& o) {
        if (ok && has_property_l(o).holds && !is_uso(o)) ok = false;
    });
    return ok;
}

}  // namespace uso
