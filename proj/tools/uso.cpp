// Command-line front end: check | build | transform | census | iso |
// verify-report. Exit codes: 0 = holds/success, 1 = verdict fails,
// 2 = input or usage error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uso/uso.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitInputError = 2;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

struct OutputOptions {
    std::string format = "text";  // text | json
    std::string report_path;      // also write the JSON report here
};

void emit(const uso::Report& report, const OutputOptions& out) {
    if (out.format == "json")
        std::cout << report.to_json().dump(2) << "\n";
    else
        std::cout << report.to_text();
    if (!out.report_path.empty()) {
        std::ofstream f(out.report_path);
        if (!f) throw uso::Error("cannot write report to " + out.report_path);
        f << report.to_json().dump(2) << "\n";
    }
}

uso::OutMap load_orientation(const std::string& path) {
    uso::OutMap o = uso::read_uso_file(path);
    if (!uso::is_orientation(o))
        throw uso::Error(path + ": table is not a consistent orientation");
    return o;
}

json dimset_masks(const std::vector<uso::DimSet>& sets) {
    json arr = json::array();
    for (uso::DimSet s : sets) arr.push_back(s.bits);
    return arr;
}

// ---------------------------------------------------------------- check ---

/// Runs one named check; fills verdicts/witnesses. Returns the primary
/// verdict. Shared between `check` and `verify-report`.
bool run_check(const uso::OutMap& o, const std::string& which, json& verdicts, json& witnesses) {
    if (which == "uso") {
        const bool ok = uso::is_uso(o);
        verdicts["uso"] = ok;
        if (!ok) {
            const std::uint32_t nv = o.vertex_count();
            for (std::uint32_t u = 0; u < nv; ++u)
                for (std::uint32_t v = u + 1; v < nv; ++v)
                    if (!((o.mask_at(u) ^ o.mask_at(v)) & (u ^ v))) {
                        witnesses["violating_pair"] = json::array({u, v});
                        return false;
                    }
        }
        return ok;
    }
    if (which == "property-l") {
        const uso::PropertyLReport r = uso::has_property_l(o);
        verdicts["property_l"] = r.holds;
        if (!r.holds) {
            witnesses["vertex"] = r.witness_vertex->bits;
            witnesses["cycle"] = r.witness_cycle;
        }
        return r.holds;
    }
    if (which == "holt-klee") {
        const bool ok = uso::check_holt_klee(o);
        verdicts["holt_klee"] = ok;
        return ok;
    }
    if (which == "locally-uniform") {
        const bool ok = uso::check_locally_uniform(o);
        verdicts["locally_uniform"] = ok;
        return ok;
    }
    if (which == "pseudo") {
        const bool ok = uso::is_pseudo_uso(o);
        verdicts["pseudo_uso"] = ok;
        const uso::SinkReport sinks = uso::sinks_in_face(o, uso::Face::whole_cube(o.dimension()));
        witnesses["global_sinks"] = dimset_masks(sinks.sinks);
        if (ok) {
            switch (uso::pseudo_outdegree_parity(o)) {
                case uso::Parity::AllEven: verdicts["outdegree_parity"] = "all-even"; break;
                case uso::Parity::AllOdd: verdicts["outdegree_parity"] = "all-odd"; break;
                case uso::Parity::Mixed: verdicts["outdegree_parity"] = "mixed"; break;
            }
            if (o.dimension() >= 3 && o.mask_at(0) == 0) {
                const uso::PseudoCycleWitness w = uso::find_pseudo_cycle(o, uso::DimSet());
                witnesses["pseudo_cycle"] = dimset_masks(w.cycle);
            }
        }
        return ok;
    }
    throw uso::Error("unknown check '" + which + "'");
}

int cmd_check(const std::string& path, const std::string& which, const OutputOptions& out) {
    Timer timer;
    const uso::OutMap o = load_orientation(path);
    uso::Report report;
    report.command = "check";
    report.inputs = {{"path", path}, {"which", which}, {"n", o.dimension()}};
    const bool ok = run_check(o, which, report.verdicts, report.witnesses);
    report.timings_ms["total"] = timer.ms();
    emit(report, out);
    return ok ? kExitHolds : kExitFails;
}

// ---------------------------------------------------------------- build ---

struct BuildParams {
    std::string kind;
    std::string lcp_path;
    std::string uso_path;
    int n = 0;
    std::string bits;
    std::vector<std::string> edges;  // "vertex:dim"
    int jobs = 1;
};

uso::Matching parse_matching(const std::vector<std::string>& edges) {
    uso::Matching m;
    for (const std::string& e : edges) {
        const auto colon = e.find(':');
        if (colon == std::string::npos) throw uso::Error("edge must be 'vertex:dim', got '" + e + "'");
        m.edges.push_back({uso::DimSet(std::uint32_t(std::stoul(e.substr(0, colon)))),
                           std::stoi(e.substr(colon + 1))});
    }
    return m;
}

uso::OutMap build_outmap(const BuildParams& p) {
    if (p.kind == "pcube") {
        const uso::LcpData d = uso::read_lcp_file(p.lcp_path);
        return uso::pcube_outmap(d.m, d.q, p.jobs);
    }
    if (p.kind == "dcube") {
        const uso::LcpData d = uso::read_lcp_file(p.lcp_path);
        return uso::dcube_outmap(d.m, d.q, p.jobs);
    }
    if (p.kind == "kaleidoscope-product") return uso::product_kaleidoscope(load_orientation(p.uso_path));
    if (p.kind == "kaleidoscope-pmatrix") {
        const uso::LcpData d = uso::read_lcp_file(p.lcp_path);
        return uso::pcube_kaleidoscope(d.m, d.q, p.jobs).psi;
    }
    if (p.kind == "combed") {
        std::uint64_t bits = 0;
        if (int(p.bits.size()) != (1 << p.n) - 1)
            throw uso::Error("combed spec needs " + std::to_string((1 << p.n) - 1) + " bits");
        for (std::size_t i = 0; i < p.bits.size(); ++i) {
            if (p.bits[i] != '0' && p.bits[i] != '1') throw uso::Error("combed bits must be 0/1");
            if (p.bits[i] == '1') bits |= std::uint64_t(1) << i;
        }
        return uso::recursively_combed(uso::CombedSpec(p.n, bits));
    }
    if (p.kind == "uniform") return uso::uniform_uso(p.n);
    if (p.kind == "matching-reversal") return uso::matching_reversal(p.n, parse_matching(p.edges));
    throw uso::Error("unknown build kind '" + p.kind + "'");
}

int cmd_build(const BuildParams& p, const std::string& out_path, const std::string& out_lcp,
              const OutputOptions& out) {
    Timer timer;
    const uso::OutMap o = build_outmap(p);
    uso::write_uso_file(out_path, o);
    uso::Report report;
    report.command = "build";
    report.inputs = {{"kind", p.kind}, {"out", out_path}, {"jobs", p.jobs}};
    if (!p.lcp_path.empty()) report.inputs["lcp"] = p.lcp_path;
    if (!p.uso_path.empty()) report.inputs["uso"] = p.uso_path;
    if (p.kind == "combed") { report.inputs["n"] = p.n; report.inputs["bits"] = p.bits; }
    if (p.kind == "uniform") report.inputs["n"] = p.n;
    if (p.kind == "matching-reversal") { report.inputs["n"] = p.n; report.inputs["edges"] = p.edges; }
    if (p.kind == "kaleidoscope-pmatrix" && !out_lcp.empty()) {
        const uso::LcpData d = uso::read_lcp_file(p.lcp_path);
        const uso::PcubeKaleidoscope k = uso::pcube_kaleidoscope(d.m, d.q, p.jobs);
        uso::write_lcp_file(out_lcp, {k.m, k.q});
        report.inputs["out_lcp"] = out_lcp;
    }
    report.verdicts["n"] = o.dimension();
    report.verdicts["uso"] = uso::is_uso(o);
    const uso::PropertyLReport l = uso::has_property_l(o);
    report.verdicts["property_l"] = l.holds;
    if (!l.holds) {
        report.witnesses["vertex"] = l.witness_vertex->bits;
        report.witnesses["cycle"] = l.witness_cycle;
    }
    report.timings_ms["total"] = timer.ms();
    emit(report, out);
    return kExitHolds;
}

// ------------------------------------------------------------ transform ---

struct TransformParams {
    std::string path;
    std::string op;
    std::uint32_t set = 0;
    std::vector<int> perm;  // 1-based images
};

std::vector<std::uint8_t> perm_from_cli(const std::vector<int>& images) {
    std::vector<std::uint8_t> p;
    for (int v : images) {
        if (v < 1) throw uso::Error("permutation images are 1-based");
        p.push_back(std::uint8_t(v - 1));
    }
    return p;
}

uso::OutMap apply_transform(const uso::OutMap& o, const TransformParams& p,
                            uso::Report* report) {
    if (p.op == "reverse") return uso::reverse(o, uso::DimSet(p.set));
    if (p.op == "mirror") return uso::mirror(o, uso::DimSet(p.set));
    if (p.op == "permute") return uso::permute_dims(o, perm_from_cli(p.perm));
    if (p.op == "automorph")
        return uso::apply_automorphism(o, uso::Automorphism(uso::DimSet(p.set), perm_from_cli(p.perm)));
    if (p.op == "find-l-copy") {
        const auto a = uso::exists_property_l_copy(o);
        if (!a) throw uso::Error("no isomorphic copy with property L exists");
        if (report) report->witnesses["automorphism"] = uso::automorphism_to_json(*a);
        return uso::apply_automorphism(o, *a);
    }
    throw uso::Error("unknown transform '" + p.op + "'");
}

int cmd_transform(const TransformParams& p, const std::string& out_path, const OutputOptions& out) {
    Timer timer;
    const uso::OutMap o = load_orientation(p.path);
    uso::Report report;
    report.command = "transform";
    report.inputs = {{"path", p.path}, {"op", p.op}, {"out", out_path}};
    if (p.op == "reverse" || p.op == "mirror" || p.op == "automorph") report.inputs["set"] = p.set;
    if (p.op == "permute" || p.op == "automorph") report.inputs["perm"] = p.perm;
    const uso::OutMap t = apply_transform(o, p, &report);
    uso::write_uso_file(out_path, t);
    const bool before = uso::has_property_l(o).holds;
    const bool after = uso::has_property_l(t).holds;
    report.verdicts["property_l_before"] = before;
    report.verdicts["property_l_after"] = after;
    report.verdicts["property_l_changed"] = before != after;
    report.timings_ms["total"] = timer.ms();
    emit(report, out);
    return kExitHolds;
}

// --------------------------------------------------------------- census ---

int cmd_census(int n, bool heavy, bool resume, int jobs, std::string checkpoint,
               const std::string& out_dir, const OutputOptions& out) {
    Timer timer;
    if (n >= 4 && !heavy)
        throw uso::Error("census with n >= 4 runs for minutes; pass --heavy to confirm");
    fs::create_directories(out_dir);
    if (checkpoint.empty() && n >= 4) checkpoint = (fs::path(out_dir) / "census-checkpoint.json").string();

    uso::CensusOptions opts;
    opts.jobs = jobs;
    opts.checkpoint_path = checkpoint;
    opts.resume = resume;
    opts.progress = [](int done, int total) {
        std::cerr << "census: " << done << "/" << total << " subtrees done\n";
    };
    const uso::CensusResult result = uso::census(n, opts);

    uso::Report report;
    report.command = "census";
    report.inputs = {{"n", n}, {"jobs", jobs}, {"out_dir", out_dir}};
    json classes = json::array();
    int without_l = 0;
    char name[32];
    for (std::size_t i = 0; i < result.classes.size(); ++i) {
        const uso::IsoClassRecord& rec = result.classes[i];
        std::snprintf(name, sizeof name, "class_%05zu.uso", i);
        const std::string file = (fs::path(out_dir) / name).string();
        uso::write_uso_file(file, rec.canonical);
        json entry = {{"file", file},
                      {"class_size", rec.class_size},
                      {"has_property_l_member", rec.has_property_l_member}};
        if (rec.witness_automorphism)
            entry["witness_automorphism"] = uso::automorphism_to_json(*rec.witness_automorphism);
        classes.push_back(std::move(entry));
        if (!rec.has_property_l_member) ++without_l;
    }
    report.verdicts["classes"] = result.classes.size();
    report.verdicts["without_property_l_member"] = without_l;
    report.verdicts["total_usos"] = result.total_usos;
    report.witnesses["classes"] = std::move(classes);
    report.timings_ms["total"] = timer.ms();
    emit(report, out);
    return kExitHolds;
}

// ------------------------------------------------------------------ iso ---

int cmd_iso(const std::string& path1, const std::string& path2, const OutputOptions& out) {
    Timer timer;
    const uso::OutMap o1 = load_orientation(path1);
    const uso::OutMap o2 = load_orientation(path2);
    const auto witness = uso::are_isomorphic(o1, o2);
    uso::Report report;
    report.command = "iso";
    report.inputs = {{"path1", path1}, {"path2", path2}};
    report.verdicts["isomorphic"] = bool(witness);
    if (witness) report.witnesses["automorphism"] = uso::automorphism_to_json(*witness);
    report.timings_ms["total"] = timer.ms();
    emit(report, out);
    return witness ? kExitHolds : kExitFails;
}

// -------------------------------------------------------- verify-report ---

/// Replays a report against its input files: recomputes every verdict and
/// re-validates every witness. Any mismatch fails the verification.
bool verify_report_json(const json& j, std::vector<std::string>& problems) {
    const uso::Report report = uso::Report::from_json(j);
    auto mismatch = [&problems](const std::string& what) { problems.push_back(what); };

    if (report.command == "check") {
        const uso::OutMap o = load_orientation(report.inputs.at("path"));
        json verdicts = json::object(), witnesses = json::object();
        run_check(o, report.inputs.at("which"), verdicts, witnesses);
        for (auto it = report.verdicts.begin(); it != report.verdicts.end(); ++it)
            if (verdicts.value(it.key(), json()) != it.value())
                mismatch("verdict '" + it.key() + "' does not replay");
        // structural witness validation against the input
        if (report.witnesses.contains("cycle")) {
            const uso::LGraph g = uso::lgraph(o, uso::DimSet(report.witnesses.at("vertex").get<std::uint32_t>()));
            const auto cyc = report.witnesses.at("cycle").get<std::vector<int>>();
            for (std::size_t t = 0; t < cyc.size(); ++t)
                if (!g.has_arc(cyc[t], cyc[(t + 1) % cyc.size()]))
                    mismatch("witness cycle arc missing from L-graph");
        }
        if (report.witnesses.contains("violating_pair")) {
            const auto pr = report.witnesses.at("violating_pair").get<std::vector<std::uint32_t>>();
            if ((o.mask_at(pr[0]) ^ o.mask_at(pr[1])) & (pr[0] ^ pr[1]))
                mismatch("witness pair does not violate the pairwise criterion");
        }
        if (report.witnesses.contains("global_sinks")) {
            const auto sinks = uso::sinks_in_face(o, uso::Face::whole_cube(o.dimension())).sinks;
            if (dimset_masks(sinks) != report.witnesses.at("global_sinks"))
                mismatch("global sink list does not replay");
        }
        if (report.witnesses.contains("pseudo_cycle")) {
            uso::PseudoCycleWitness w;
            for (const auto& m : report.witnesses.at("pseudo_cycle"))
                w.cycle.push_back(uso::DimSet(m.get<std::uint32_t>()));
            if (!uso::validate_pseudo_cycle(o, uso::DimSet(), w))
                mismatch("pseudo-USO cycle witness does not validate");
        }
        return problems.empty();
    }

    if (report.command == "build") {
        BuildParams p;
        p.kind = report.inputs.at("kind");
        p.lcp_path = report.inputs.value("lcp", "");
        p.uso_path = report.inputs.value("uso", "");
        p.n = report.inputs.value("n", 0);
        p.bits = report.inputs.value("bits", "");
        p.edges = report.inputs.value("edges", std::vector<std::string>{});
        const uso::OutMap rebuilt = build_outmap(p);
        const uso::OutMap stored = load_orientation(report.inputs.at("out"));
        if (rebuilt != stored) mismatch("stored outmap differs from rebuild");
        if (report.verdicts.value("uso", true) != uso::is_uso(stored)) mismatch("uso verdict does not replay");
        if (report.verdicts.value("property_l", true) != uso::has_property_l(stored).holds)
            mismatch("property-L verdict does not replay");
        return problems.empty();
    }

    if (report.command == "transform") {
        TransformParams p;
        p.path = report.inputs.at("path");
        p.op = report.inputs.at("op");
        p.set = report.inputs.value("set", 0u);
        p.perm = report.inputs.value("perm", std::vector<int>{});
        const uso::OutMap o = load_orientation(p.path);
        const uso::OutMap expect = apply_transform(o, p, nullptr);
        if (expect != load_orientation(report.inputs.at("out")))
            mismatch("stored outmap differs from re-applied transform");
        return problems.empty();
    }

    if (report.command == "iso") {
        const uso::OutMap o1 = load_orientation(report.inputs.at("path1"));
        const uso::OutMap o2 = load_orientation(report.inputs.at("path2"));
        if (report.verdicts.at("isomorphic").get<bool>()) {
            const uso::Automorphism a = uso::automorphism_from_json(report.witnesses.at("automorphism"));
            if (uso::apply_automorphism(o1, a) != o2) mismatch("witness automorphism does not map file1 to file2");
        } else if (uso::are_isomorphic(o1, o2)) {
            mismatch("files are isomorphic but the report says otherwise");
        }
        return problems.empty();
    }

    if (report.command == "census") {
        std::uint64_t size_sum = 0;
        int without_l = 0;
        const int n = report.inputs.at("n").get<int>();
        for (const json& entry : report.witnesses.at("classes")) {
            const uso::OutMap o = load_orientation(entry.at("file"));
            if (o.dimension() != n) mismatch(std::string(entry.at("file")) + ": wrong dimension");
            if (!uso::is_canonical(o)) mismatch(std::string(entry.at("file")) + ": not canonical");
            const bool has_l = bool(uso::exists_property_l_copy(o));
            if (has_l != entry.at("has_property_l_member").get<bool>())
                mismatch(std::string(entry.at("file")) + ": property-L flag does not replay");
            if (!has_l) ++without_l;
            std::uint64_t stabilizer = 0;
            uso::for_each_automorphism(n, [&](const uso::Automorphism& a) {
                if (uso::apply_automorphism(o, a) == o) ++stabilizer;
            });
            const std::uint64_t orbit = uso::automorphism_count(n) / stabilizer;
            if (orbit != entry.at("class_size").get<std::uint64_t>())
                mismatch(std::string(entry.at("file")) + ": class size does not replay");
            size_sum += orbit;
        }
        if (report.witnesses.at("classes").size() != report.verdicts.at("classes").get<std::size_t>())
            mismatch("class count does not match the class list");
        if (without_l != report.verdicts.at("without_property_l_member").get<int>())
            mismatch("without-property-L count does not replay");
        if (size_sum != report.verdicts.at("total_usos").get<std::uint64_t>())
            mismatch("sum of class sizes does not match total USO count");
        return problems.empty();
    }

    problems.push_back("unknown command '" + report.command + "'");
    return false;
}

int cmd_verify_report(const std::string& path, const OutputOptions& out) {
    Timer timer;
    std::ifstream in(path);
    if (!in) throw uso::Error("cannot open " + path);
    const json j = json::parse(in);
    std::vector<std::string> problems;
    const bool ok = verify_report_json(j, problems);
    uso::Report report;
    report.command = "verify-report";
    report.inputs = {{"path", path}, {"verified_command", j.value("command", "")}};
    report.verdicts["valid"] = ok;
    if (!ok) report.witnesses["problems"] = problems;
    report.timings_ms["total"] = timer.ms();
    emit(report, out);
    return ok ? kExitHolds : kExitFails;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unique sink orientation toolkit"};
    app.require_subcommand(1);

    OutputOptions out;
    app.add_option("--format", out.format, "Report format on stdout")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--report", out.report_path, "Also write the JSON report to this file");

    // check
    std::string check_path, check_which;
    CLI::App* check = app.add_subcommand("check", "Run a structural check on a USO file");
    check->add_option("file", check_path, "Input .uso file")->required();
    check->add_option("--which", check_which, "Which check to run")
        ->required()
        ->check(CLI::IsMember({"uso", "property-l", "holt-klee", "locally-uniform", "pseudo"}));

    // build
    BuildParams bp;
    std::string build_out, build_out_lcp;
    CLI::App* build = app.add_subcommand("build", "Construct an orientation and write a USO file");
    build->add_option("kind", bp.kind, "What to build")
        ->required()
        ->check(CLI::IsMember({"pcube", "dcube", "kaleidoscope-product", "kaleidoscope-pmatrix",
                               "combed", "uniform", "matching-reversal"}));
    build->add_option("--lcp", bp.lcp_path, "Input .lcp file (pcube, dcube, kaleidoscope-pmatrix)");
    build->add_option("--uso", bp.uso_path, "Input .uso file (kaleidoscope-product)");
    build->add_option("--n", bp.n, "Dimension (combed, uniform, matching-reversal)");
    build->add_option("--bits", bp.bits, "Combed spec bits, e.g. 0110101 for n=3");
    build->add_option("--edge", bp.edges, "Matching edge 'vertex:dim'; repeatable");
    build->add_option("--jobs", bp.jobs, "Worker threads for the per-vertex solves");
    build->add_option("--out", build_out, "Output .uso file")->required();
    build->add_option("--out-lcp", build_out_lcp, "Also write the blow-up LCP (kaleidoscope-pmatrix)");

    // transform
    TransformParams tp;
    std::string transform_out;
    CLI::App* transform = app.add_subcommand("transform", "Apply an outmap transform");
    transform->add_option("file", tp.path, "Input .uso file")->required();
    transform->add_option("--op", tp.op, "Transform to apply")
        ->required()
        ->check(CLI::IsMember({"reverse", "mirror", "permute", "automorph", "find-l-copy"}));
    transform->add_option("--set", tp.set, "Dimension set as a decimal mask (reverse/mirror/automorph)");
    transform->add_option("--perm", tp.perm, "Permutation as 1-based images, e.g. 2,3,1")->delimiter(',');
    transform->add_option("--out", transform_out, "Output .uso file")->required();

    // census
    int census_n = 0, census_jobs = 1;
    bool census_heavy = false, census_resume = false;
    std::string census_checkpoint, census_dir;
    CLI::App* census = app.add_subcommand("census", "Isomorphism-class census (n <= 4)");
    census->add_option("--n", census_n, "Cube dimension")->required();
    census->add_flag("--heavy", census_heavy, "Confirm the multi-minute n=4 run");
    census->add_flag("--resume", census_resume, "Resume from the checkpoint file");
    census->add_option("--jobs", census_jobs, "Worker threads (deterministic result)");
    census->add_option("--checkpoint", census_checkpoint, "Checkpoint file (default: out-dir/census-checkpoint.json for n >= 4)");
    census->add_option("--out-dir", census_dir, "Directory for per-class canonical USO files")->required();

    // iso
    std::string iso_a, iso_b;
    CLI::App* iso = app.add_subcommand("iso", "Decide isomorphism of two USO files");
    iso->add_option("file1", iso_a)->required();
    iso->add_option("file2", iso_b)->required();

    // verify-report
    std::string verify_path;
    CLI::App* verify = app.add_subcommand("verify-report", "Replay a report against its inputs");
    verify->add_option("report", verify_path, "Report JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(check_path, check_which, out);
        if (build->parsed()) return cmd_build(bp, build_out, build_out_lcp, out);
        if (transform->parsed()) return cmd_transform(tp, transform_out, out);
        if (census->parsed())
            return cmd_census(census_n, census_heavy, census_resume, census_jobs,
                              census_checkpoint, census_dir, out);
        if (iso->parsed()) return cmd_iso(iso_a, iso_b, out);
        if (verify->parsed()) return cmd_verify_report(verify_path, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
