#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "uso/cube.hpp"

namespace uso {

/// Szabo-Welzl pairwise criterion: phi is a USO outmap iff
/// (phi(U) xor phi(V)) ∩ (U xor V) is nonempty for all U != V.
inline bool is_uso(const OutMap& o) {
    const std::uint32_t nv = o.vertex_count();
    for (std::uint32_t u = 0; u < nv; ++u)
        for (std::uint32_t v = u + 1; v < nv; ++v)
            if (!((o.mask_at(u) ^ o.mask_at(v)) & (u ^ v))) return false;
    return true;
}

struct SinkReport {
    Face face;
    std::vector<DimSet> sinks;  // vertices with no outgoing edge inside the face
};

inline SinkReport sinks_in_face(const OutMap& o, const Face& face) {
    if (!face.upper.subset_of(DimSet::full(o.dimension())))
        throw DimensionMismatch("face lies outside the cube");
    SinkReport r{face, {}};
    const std::uint32_t carrier = face.carrier().bits;
    std::uint32_t sub = carrier;
    while (true) {
        const std::uint32_t v = face.lower.bits | sub;
        if (!(o.mask_at(v) & carrier)) r.sinks.push_back(DimSet(v));
        if (sub == 0) break;
        sub = (sub - 1) & carrier;
    }
    std::sort(r.sinks.begin(), r.sinks.end());
    return r;
}

inline DimSet global_sink(const OutMap& o) {
    DimSet found;
    int count = 0;
    const std::uint32_t nv = o.vertex_count();
    for (std::uint32_t v = 0; v < nv; ++v)
        if (o.mask_at(v) == 0) {
            found = DimSet(v);
            ++count;
        }
    if (count != 1) throw NotAUso("expected exactly one global sink, found " + std::to_string(count));
    return found;
}

/// Pseudo USO: no unique global sink, but every proper face has a unique
/// sink. These are the minimal non-USOs.
inline bool is_pseudo_uso(const OutMap& o) {
    const int n = o.dimension();
    const std::uint32_t nv = o.vertex_count();
    int global_sinks = 0;
    for (std::uint32_t v = 0; v < nv; ++v)
        if (o.mask_at(v) == 0) ++global_sinks;
    if (global_sinks == 1) return false;
    // every proper face [U, U|C] has exactly one sink
    const std::uint32_t full = DimSet::full(n).bits;
    for (std::uint32_t carrier = 0; carrier < nv; ++carrier) {
        std::uint32_t rest = full & ~carrier;
        std::uint32_t lo = 0;
        while (true) {
            if (!(carrier == full && lo == 0)) {  // skip the whole cube
                int sinks = 0;
                std::uint32_t sub = carrier;
                while (true) {
                    if (!(o.mask_at(lo | sub) & carrier)) ++sinks;
                    if (sub == 0) break;
                    sub = (sub - 1) & carrier;
                }
                if (sinks != 1) return false;
            }
            if (lo == rest) break;
            lo = (lo - rest) & rest;  // next subset of rest
        }
    }
    return true;
}

enum class Parity { AllEven, AllOdd, Mixed };

inline Parity pseudo_outdegree_parity(const OutMap& o) {
    const std::uint32_t nv = o.vertex_count();
    bool even = false, odd = false;
    for (std::uint32_t v = 0; v < nv; ++v)
        (std::popcount(o.mask_at(v)) % 2 ? odd : even) = true;
    if (even && odd) return Parity::Mixed;
    return odd ? Parity::AllOdd : Parity::AllEven;
}

/// Directed cycle witness in the bottom two layers above a pseudo USO's
/// sink: vertices alternate V∪{i_t}, V∪{i_t,i_{t+1}}, and the last vertex
/// closes back to the first.
struct PseudoCycleWitness {
    std::vector<DimSet> cycle;
};

/// Walks the cycle guaranteed by the pseudo-USO lemma. Requires an
/// m-dimensional pseudo USO, m >= 3, whose global sink sits at v, the bottom
/// vertex of the cube. Up-steps break ties toward the smallest dimension.
inline PseudoCycleWitness find_pseudo_cycle(const OutMap& o, DimSet v) {
    const int n = o.dimension();
    if (n < 3) throw PreconditionFailed("pseudo-USO cycle walk needs dimension >= 3");
    if (!v.empty()) throw PreconditionFailed("sink must sit at the bottom vertex of the cube");
    if (!is_orientation(o) || !is_pseudo_uso(o)) throw PreconditionFailed("input is not a pseudo USO");
    if (o.mask_at(0) != 0) throw PreconditionFailed("bottom vertex is not a global sink");

    // From layer-1 vertex {k}: all outdegrees are even and {k} -> sink is
    // outgoing, so there is an outgoing up-edge; take the smallest dimension.
    // The down-step from {k,l} to {l} is then forced by the 2-face below it.
    std::vector<int> order;        // dim sequence k_0, k_1, ...
    std::vector<int> seen_at(n + 1, -1);
    int k = 1;
    for (;;) {
        if (seen_at[k] >= 0) break;
        seen_at[k] = int(order.size());
        order.push_back(k);
        const std::uint32_t kv = std::uint32_t(1) << (k - 1);
        std::uint32_t up = o.mask_at(kv) & ~kv;
        if (!up) throw std::logic_error("pseudo-USO walk stuck: no outgoing up-edge");
        k = std::countr_zero(up) + 1;
    }
    PseudoCycleWitness w;
    for (std::size_t t = seen_at[k]; t < order.size(); ++t) {
        const int a = order[t];
        const int b = (t + 1 < order.size()) ? order[t + 1] : k;
        w.cycle.push_back(DimSet::single(a));
        w.cycle.push_back(DimSet::single(a) | DimSet::single(b));
    }
    return w;
}

/// Checks a pseudo-cycle witness against the orientation: vertices in the
/// two layers above v, consecutive vertices adjacent, every edge directed
/// along the cycle.
inline bool validate_pseudo_cycle(const OutMap& o, DimSet v, const PseudoCycleWitness& w) {
    if (w.cycle.size() < 4 || w.cycle.size() % 2 != 0) return false;
    for (const DimSet& u : w.cycle) {
        const int layer = (u ^ v).size();
        if (!v.subset_of(u) || (layer != 1 && layer != 2)) return false;
    }
    for (std::size_t t = 0; t < w.cycle.size(); ++t) {
        const DimSet a = w.cycle[t];
        const DimSet b = w.cycle[(t + 1) % w.cycle.size()];
        const DimSet d = a ^ b;
        if (d.size() != 1) return false;
        if (!o.at(a).contains(d.lowest())) return false;
    }
    return true;
}

namespace detail {

/// Unit-vertex-capacity max flow via BFS augmentation (vertex splitting is
/// baked into the node numbering: 2V = in-node, 2V+1 = out-node).
inline int disjoint_path_count(const OutMap& o, std::uint32_t source, std::uint32_t sink) {
    const int n = o.dimension();
    const std::uint32_t nv = o.vertex_count();
    const int nodes = int(nv) * 2;
    struct Edge { int to; int cap; };
    std::vector<Edge> edges;
    std::vector<std::vector<int>> adj(nodes);
    auto add_edge = [&](int a, int b, int cap) {
        adj[a].push_back(int(edges.size()));
        edges.push_back({b, cap});
        adj[b].push_back(int(edges.size()));
        edges.push_back({a, 0});
    };
    for (std::uint32_t v = 0; v < nv; ++v)
        add_edge(int(2 * v), int(2 * v + 1), (v == source || v == sink) ? n : 1);
    for (std::uint32_t v = 0; v < nv; ++v)
        for (int i = 0; i < n; ++i) {
            if ((v >> i) & 1u) continue;
            const std::uint32_t w = v | (std::uint32_t(1) << i);
            if ((o.mask_at(v) >> i) & 1u)
                add_edge(int(2 * v + 1), int(2 * w), 1);
            else
                add_edge(int(2 * w + 1), int(2 * v), 1);
        }
    const int s = int(2 * source), t = int(2 * sink + 1);
    int flow = 0;
    for (;;) {
        std::vector<int> pred_edge(nodes, -1);
        std::deque<int> queue{s};
        pred_edge[s] = -2;
        while (!queue.empty() && pred_edge[t] == -1) {
            const int u = queue.front();
            queue.pop_front();
            for (int e : adj[u])
                if (edges[e].cap > 0 && pred_edge[edges[e].to] == -1) {
                    pred_edge[edges[e].to] = e;
                    queue.push_back(edges[e].to);
                }
        }
        if (pred_edge[t] == -1) break;
        for (int u = t; u != s;) {
            const int e = pred_edge[u];
            edges[e].cap -= 1;
            edges[e ^ 1].cap += 1;
            u = edges[e ^ 1].to;
        }
        ++flow;
        if (flow >= n) break;
    }
    return flow;
}

}  // namespace detail

inline DimSet global_source(const OutMap& o) {
    const std::uint32_t full = DimSet::full(o.dimension()).bits;
    const std::uint32_t nv = o.vertex_count();
    for (std::uint32_t v = 0; v < nv; ++v)
        if (o.mask_at(v) == full) return DimSet(v);
    throw NotAUso("no global source");
}

/// Holt-Klee property: n internally vertex-disjoint directed paths from the
/// global source to the global sink. Decided by unit-capacity max flow.
inline bool check_holt_klee(const OutMap& o) {
    if (!is_uso(o)) throw NotAUso("Holt-Klee check requires a USO");
    const int n = o.dimension();
    if (n == 0) return true;
    const DimSet source = global_source(o);
    const DimSet sink = global_sink(o);
    return detail::disjoint_path_count(o, source.bits, sink.bits) >= n;
}

/// Local uniformity at every vertex: the face spanned by all incoming
/// neighbors is uniformly directed downward, the face spanned by all
/// outgoing neighbors uniformly upward.
///
/// Checking only the maximal incoming/outgoing neighbor sets suffices. If S
/// is any set of incoming dimensions at V, then S is contained in the
/// maximal incoming set I, the face [V, V∪S] is a subface of [V, V∪I], and
/// a downward-uniform orientation restricted to a subface containing the
/// bottom vertex is again downward-uniform. So uniformity on the maximal
/// faces implies it on every "some k neighbors" face, and the two readings
/// coincide (the converse is immediate since the maximal set is one of the
/// candidate sets). The exhaustive equivalence test against the
/// all-subsets reading lives in the test suite.
inline bool check_locally_uniform(const OutMap& o) {
    if (!is_uso(o)) throw NotAUso("local-uniformity check requires a USO");
    const std::uint32_t full = DimSet::full(o.dimension()).bits;
    const std::uint32_t nv = o.vertex_count();
    for (std::uint32_t v = 0; v < nv; ++v) {
        const std::uint32_t outside = ~v & full;
        const std::uint32_t out = o.mask_at(v) & outside;
        const std::uint32_t in = outside & ~out;
        // downward-uniform on [v, v|in]: phi(w) ∩ in == (w \ v) ∩ in
        std::uint32_t sub = in;
        while (true) {
            if ((o.mask_at(v | sub) & in) != sub) return false;
            if (sub == 0) break;
            sub = (sub - 1) & in;
        }
        // upward-uniform on [v, v|out]: phi(w) ∩ out == out \ w
        sub = out;
        while (true) {
            if ((o.mask_at(v | sub) & out) != (out & ~sub)) return false;
            if (sub == 0) break;
            sub = (sub - 1) & out;
        }
    }
    return true;
}

/// True iff the orientation, viewed as a digraph on the cube, contains a
/// directed cycle.
inline bool orientation_has_cycle(const OutMap& o) {
    const int n = o.dimension();
    const std::uint32_t nv = o.vertex_count();
    std::vector<std::uint8_t> color(nv, 0);
    std::vector<std::pair<std::uint32_t, int>> stack;
    for (std::uint32_t s = 0; s < nv; ++s) {
        if (color[s]) continue;
        stack.push_back({s, 0});
        color[s] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i >= n) {
                color[v] = 2;
                stack.pop_back();
                continue;
            }
            const int bit = i++;
            if (!((o.mask_at(v) >> bit) & 1u)) continue;
            const std::uint32_t w = v ^ (std::uint32_t(1) << bit);
            if (color[w] == 1) return true;
            if (color[w] == 0) {
                color[w] = 1;
                stack.push_back({w, 0});
            }
        }
    }
    return false;
}

inline constexpr std::uint64_t kDefaultPathBudget = 10'000'000;

/// Maximum number of edges over all simple directed paths. USOs may contain
/// cycles, so the search keeps a per-path visited set; expansions beyond the
/// budget raise BudgetExceeded.
inline int longest_directed_path_length(const OutMap& o, std::uint64_t budget = kDefaultPathBudget) {
    if (!is_uso(o)) throw NotAUso("path-length search requires a USO");
    const int n = o.dimension();
    const std::uint32_t nv = o.vertex_count();
    std::vector<std::uint8_t> visited(nv, 0);
    std::uint64_t expansions = 0;
    int best = 0;
    // explicit stack of (vertex, next-dim, depth)
    struct Frame { std::uint32_t v; int i; };
    std::vector<Frame> stack;
    for (std::uint32_t s = 0; s < nv; ++s) {
        stack.push_back({s, 0});
        visited[s] = 1;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.i >= n) {
                visited[f.v] = 0;
                stack.pop_back();
                continue;
            }
            const int bit = f.i++;
            if (!((o.mask_at(f.v) >> bit) & 1u)) continue;
            const std::uint32_t w = f.v ^ (std::uint32_t(1) << bit);
            if (visited[w]) continue;
            if (++expansions > budget)
                throw BudgetExceeded("path search exceeded node budget");
            visited[w] = 1;
            stack.push_back({w, 0});
            best = std::max(best, int(stack.size()) - 1);
        }
    }
    return best;
}

}  // namespace uso
