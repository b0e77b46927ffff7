#pragma once

#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "uso/iso.hpp"

namespace uso {

struct IsoClassRecord {
    OutMap canonical;
    std::uint64_t class_size = 0;  // orbit size; divides 2^n·n!
    bool has_property_l_member = false;
    std::optional<Automorphism> witness_automorphism;  // first property-L image
};

struct CensusOptions {
    int jobs = 1;
    std::string checkpoint_path;  // empty: no checkpointing
    bool resume = false;
    std::function<void(int done_subtrees, int total_subtrees)> progress;
};

struct CensusResult {
    std::vector<IsoClassRecord> classes;
    std::uint64_t total_usos = 0;
};

namespace detail {

/// Per-automorphism lookup tables over a fixed dimension: source vertex per
/// target vertex, and the mask image under the renaming.
struct AutoTables {
    std::vector<std::uint32_t> source_vertex;  // pi^{-1}(w) xor F
    std::vector<std::uint32_t> mask_image;     // pi(m)
    Automorphism original;
};

inline std::vector<AutoTables> build_auto_tables(int n) {
    const std::uint32_t nv = std::uint32_t(1) << n;
    std::vector<AutoTables> out;
    out.reserve(automorphism_count(n));
    for_each_automorphism(n, [&](const Automorphism& a) {
        AutoTables t{std::vector<std::uint32_t>(nv), std::vector<std::uint32_t>(nv), a};
        const std::vector<std::uint8_t> inv = inverse_perm(a.perm);
        for (std::uint32_t m = 0; m < nv; ++m) {
            t.mask_image[m] = permute_mask(m, a.perm);
            t.source_vertex[m] = permute_mask(m, inv) ^ a.flip.bits;
        }
        out.push_back(std::move(t));
    });
    return out;
}

inline bool table_is_canonical(const std::vector<std::uint32_t>& t,
                               const std::vector<AutoTables>& autos) {
    const std::uint32_t nv = std::uint32_t(t.size());
    for (const AutoTables& a : autos) {
        for (std::uint32_t w = 0; w < nv; ++w) {
            const std::uint32_t img = a.mask_image[t[a.source_vertex[w]]];
            if (img < t[w]) return false;
            if (img > t[w]) break;
        }
    }
    return true;
}

/// Enumerates the USOs whose bottom-vertex outmap equals `root`, the
/// deterministic subtree unit for sharding and checkpointing.
template <typename Fn>
void enumerate_uso_subtree(int n, std::uint32_t root, Fn&& visit) {
    const std::uint32_t nv = std::uint32_t(1) << n;
    std::vector<std::uint32_t> t(nv, 0);
    t[0] = root;
    std::vector<std::uint32_t> next_mask(nv + 1, 0);
    std::int32_t depth = 1;
    if (nv == 1) { visit(t); return; }
    while (depth >= 1) {
        if (next_mask[depth] >= nv) {
            --depth;
            if (depth >= 1) ++next_mask[depth];
            continue;
        }
        const std::uint32_t mask = next_mask[depth];
        bool ok = true;
        for (std::uint32_t u = 0; u < std::uint32_t(depth); ++u)
            if (!((t[u] ^ mask) & (u ^ std::uint32_t(depth)))) { ok = false; break; }
        if (!ok) {
            ++next_mask[depth];
            continue;
        }
        t[depth] = mask;
        if (std::uint32_t(depth) == nv - 1) {
            visit(t);
            ++next_mask[depth];
            continue;
        }
        ++depth;
        next_mask[depth] = 0;
    }
}

struct CensusState {
    int n = 0;
    std::vector<std::uint8_t> done;                               // per subtree
    std::vector<std::uint64_t> counts;                            // USOs per subtree
    std::vector<std::vector<std::vector<std::uint32_t>>> reps;    // canonical tables per subtree

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["format"] = "uso-census-checkpoint";
        j["version"] = 1;
        j["n"] = n;
        j["done"] = nlohmann::json::array();
        j["counts"] = nlohmann::json::array();
        j["reps"] = nlohmann::json::array();
        for (std::size_t c = 0; c < done.size(); ++c) {
            if (!done[c]) continue;
            j["done"].push_back(c);
            j["counts"].push_back(counts[c]);
            j["reps"].push_back(reps[c]);
        }
        return j;
    }

    static CensusState from_json(const nlohmann::json& j, int n) {
        if (j.value("format", "") != "uso-census-checkpoint" || j.value("n", -1) != n)
            throw Error("checkpoint does not match this census run");
        CensusState s;
        s.n = n;
        const std::size_t subtrees = std::size_t(1) << n;
        s.done.assign(subtrees, 0);
        s.counts.assign(subtrees, 0);
        s.reps.assign(subtrees, {});
        for (std::size_t i = 0; i < j["done"].size(); ++i) {
            const std::size_t c = j["done"][i].get<std::size_t>();
            if (c >= subtrees) throw Error("checkpoint subtree index out of range");
            s.done[c] = 1;
            s.counts[c] = j["counts"][i].get<std::uint64_t>();
            s.reps[c] = j["reps"][i].get<std::vector<std::vector<std::uint32_t>>>();
        }
        return s;
    }
};

inline void write_checkpoint(const std::string& path, const CensusState& state) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw Error("cannot write checkpoint: " + path);
        out << state.to_json().dump();
    }
    std::rename(tmp.c_str(), path.c_str());
}

}  // namespace detail

/// Full isomorphism census for n <= 4: enumerates all USOs, keeps exactly
/// the canonical representative of each class (a USO is kept iff it is
/// already canonical, so no cross-subtree dedup is needed), then computes
/// orbit sizes from stabilizers and sweeps automorphisms for a property-L
/// member per class. Deterministic for any job count; subtrees keyed by the
/// bottom-vertex outmap value checkpoint and resume.
inline CensusResult census(int n, const CensusOptions& opts = {}) {
    if (n > 4) throw DimensionTooLarge("census only for n <= 4");
    const std::uint32_t nv = std::uint32_t(1) << n;
    const std::vector<detail::AutoTables> autos = detail::build_auto_tables(n);

    detail::CensusState state;
    state.n = n;
    state.done.assign(nv, 0);
    state.counts.assign(nv, 0);
    state.reps.assign(nv, {});
    if (opts.resume && !opts.checkpoint_path.empty()) {
        std::ifstream in(opts.checkpoint_path);
        if (in) state = detail::CensusState::from_json(nlohmann::json::parse(in), n);
    }

    std::mutex mu;
    std::atomic<std::uint32_t> next_subtree{0};
    std::atomic<int> done_count{0};
    for (std::uint32_t c = 0; c < nv; ++c)
        if (state.done[c]) ++done_count;

    auto worker = [&] {
        for (;;) {
            const std::uint32_t c = next_subtree.fetch_add(1);
            if (c >= nv) return;
            if (state.done[c]) continue;
            std::uint64_t count = 0;
            std::vector<std::vector<std::uint32_t>> reps;
            detail::enumerate_uso_subtree(n, c, [&](const std::vector<std::uint32_t>& t) {
                ++count;
                if (detail::table_is_canonical(t, autos)) reps.push_back(t);
            });
            std::lock_guard<std::mutex> lock(mu);
            state.counts[c] = count;
            state.reps[c] = std::move(reps);
            state.done[c] = 1;
            if (!opts.checkpoint_path.empty()) detail::write_checkpoint(opts.checkpoint_path, state);
            if (opts.progress) opts.progress(++done_count, int(nv));
        }
    };
    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    CensusResult result;
    std::vector<std::vector<std::uint32_t>> tables;
    for (std::uint32_t c = 0; c < nv; ++c) {
        result.total_usos += state.counts[c];
        for (auto& t : state.reps[c]) tables.push_back(std::move(t));
    }
    std::sort(tables.begin(), tables.end());

    for (auto& t : tables) {
        IsoClassRecord rec{OutMap(n, t), 0, false, std::nullopt};
        std::uint64_t stabilizer = 0;
        for (const detail::AutoTables& a : autos) {
            bool fixed = true;
            for (std::uint32_t w = 0; w < nv && fixed; ++w)
                if (a.mask_image[t[a.source_vertex[w]]] != t[w]) fixed = false;
            if (fixed) ++stabilizer;
        }
        rec.class_size = automorphism_count(n) / stabilizer;
        OutMap img(n);
        for (const detail::AutoTables& a : autos) {
            for (std::uint32_t w = 0; w < nv; ++w) img.set_mask(w, a.mask_image[t[a.source_vertex[w]]]);
            if (has_property_l(img).holds) {
                rec.has_property_l_member = true;
                rec.witness_automorphism = a.original;
                break;
            }
        }
        result.classes.push_back(std::move(rec));
    }
    return result;
}

}  // namespace uso
