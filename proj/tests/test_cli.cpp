#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "testutil.hpp"
#include "uso/uso.hpp"

// Drives the installed binary end to end: exit-code contract, file formats,
// report emission, witness replay.

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kBin = USO_CLI_PATH;
const fs::path kData = USO_DATA_DIR;

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run(const std::string& args) {
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() / ("uso-cli-out-" + std::to_string(counter++) + ".txt");
    const std::string cmd = kBin + " " + args + " > " + out.string() + " 2> " + out.string() + ".err";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    fs::remove(out);
    fs::remove(out.string() + ".err");
    return {WEXITSTATUS(status), text};
}

fs::path tmpdir() {
    const fs::path d = fs::temp_directory_path() / "uso-cli-test";
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("cli check: exit codes and witnesses") {
    SECTION("eye is a USO (exit 0)") {
        CHECK(run("check " + (kData / "eye.uso").string() + " --which uso").exit_code == 0);
    }
    SECTION("spinner fails property L with the 1->3->2 cycle at the bottom vertex") {
        const fs::path report = tmpdir() / "spinner-l.json";
        const RunResult r = run("--format json --report " + report.string() + " check " +
                                (kData / "spinner.uso").string() + " --which property-l");
        CHECK(r.exit_code == 1);
        const json j = json::parse(r.stdout_text);
        CHECK(j["verdicts"]["property_l"] == false);
        CHECK(j["witnesses"]["vertex"] == 0);
        CHECK(j["witnesses"]["cycle"].size() == 3);
        CHECK(run("verify-report " + report.string()).exit_code == 0);
    }
    SECTION("twin peak is a pseudo USO") {
        const RunResult r = run("--format json check " + (kData / "twin-peak.uso").string() + " --which pseudo");
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.stdout_text);
        CHECK(j["verdicts"]["pseudo_uso"] == true);
        CHECK(j["verdicts"]["outdegree_parity"] == "all-even");
        CHECK(j["witnesses"]["global_sinks"].size() == 2);
    }
    SECTION("holt-klee and locally-uniform run on USO inputs") {
        CHECK(run("check " + (kData / "spinner.uso").string() + " --which holt-klee").exit_code == 0);
        CHECK(run("check " + (kData / "spinner.uso").string() + " --which locally-uniform").exit_code == 1);
    }
    SECTION("input errors exit 2") {
        const fs::path bad = tmpdir() / "bad.uso";
        std::ofstream(bad) << "USO 1\n2\n0 1 2\n";
        CHECK(run("check " + bad.string() + " --which uso").exit_code == 2);
        const fs::path incons = tmpdir() / "incons.uso";
        std::ofstream(incons) << "USO 1\n1\n0 0\n";
        CHECK(run("check " + incons.string() + " --which uso").exit_code == 2);
        CHECK(run("check missing-file.uso --which uso").exit_code == 2);
        // non-USO input is a precondition error for holt-klee
        CHECK(run("check " + (kData / "twin-peak.uso").string() + " --which holt-klee").exit_code == 2);
    }
}

TEST_CASE("cli build") {
    const fs::path dir = tmpdir();
    SECTION("pcube from the spinner LCP reproduces the committed spinner file") {
        const fs::path out = dir / "spinner-built.uso";
        const fs::path report = dir / "spinner-built.json";
        const RunResult r = run("--report " + report.string() + " build pcube --lcp " +
                                (kData / "spinner.lcp").string() + " --out " + out.string());
        REQUIRE(r.exit_code == 0);
        std::ifstream a(out), b(kData / "spinner.uso");
        const std::string built((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
        const std::string want((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
        CHECK(built == want);
        CHECK(run("verify-report " + report.string()).exit_code == 0);
    }
    SECTION("dcube from the section-5 LCP has property L") {
        const fs::path out = dir / "dcube-built.uso";
        const RunResult r = run("--format json build dcube --lcp " +
                                (kData / "dcube-example.lcp").string() + " --out " + out.string());
        REQUIRE(r.exit_code == 0);
        const json j = json::parse(r.stdout_text);
        CHECK(j["verdicts"]["uso"] == true);
        CHECK(j["verdicts"]["property_l"] == true);
    }
    SECTION("kaleidoscope-pmatrix builds the 6-dimensional P-cube kaleidoscope") {
        const fs::path out = dir / "kal.uso";
        const fs::path out_lcp = dir / "kal.lcp";
        const RunResult r = run("build kaleidoscope-pmatrix --lcp " + (kData / "spinner.lcp").string() +
                                " --out " + out.string() + " --out-lcp " + out_lcp.string());
        REQUIRE(r.exit_code == 0);
        const uso::OutMap psi = uso::read_uso_file(out.string());
        CHECK(psi.dimension() == 6);
        CHECK(uso::is_kaleidoscope(psi, testutil::spinner()));
        const uso::LcpData d = uso::read_lcp_file(out_lcp.string());
        CHECK(d.m.rows() == 6);
        CHECK(d.q == uso::RationalVector{1, 1, 1, 1, 1, 1});
    }
    SECTION("combed, uniform, matching-reversal") {
        const fs::path out = dir / "built.uso";
        CHECK(run("build uniform --n 3 --out " + out.string()).exit_code == 0);
        CHECK(uso::read_uso_file(out.string()) == uso::uniform_uso(3));
        CHECK(run("build combed --n 2 --bits 000 --out " + out.string()).exit_code == 0);
        CHECK(uso::read_uso_file(out.string()) == uso::uniform_uso(2));
        CHECK(run("build matching-reversal --n 2 --edge 1:2 --out " + out.string()).exit_code == 0);
        CHECK(uso::read_uso_file(out.string()) == testutil::bow());
        CHECK(run("build combed --n 2 --bits 01 --out " + out.string()).exit_code == 2);  // wrong length
        CHECK(run("build matching-reversal --n 2 --edge 0:1 --edge 0:2 --out " + out.string()).exit_code == 2);
    }
    SECTION("non-generic q is an input error") {
        const fs::path bad = dir / "bad.lcp";
        std::ofstream(bad) << "LCP 1\n2\n1 0\n0 1\n1 0\n";
        CHECK(run("build pcube --lcp " + bad.string() + " --out " + (dir / "x.uso").string()).exit_code == 2);
    }
}

TEST_CASE("cli transform") {
    const fs::path dir = tmpdir();
    SECTION("reversing the twin peak along dimension 2 gives the cycle file") {
        const fs::path out = dir / "cycle-built.uso";
        const fs::path report = dir / "reverse.json";
        const RunResult r = run("--report " + report.string() + " transform " +
                                (kData / "twin-peak.uso").string() +
                                " --op reverse --set 2 --out " + out.string());
        REQUIRE(r.exit_code == 0);
        CHECK(uso::read_uso_file(out.string()) == testutil::four_cycle());
        CHECK(run("verify-report " + report.string()).exit_code == 0);
    }
    SECTION("mirror with the empty set writes an identical table") {
        const fs::path out = dir / "same.uso";
        REQUIRE(run("transform " + (kData / "spinner.uso").string() + " --op mirror --set 0 --out " +
                    out.string()).exit_code == 0);
        CHECK(uso::read_uso_file(out.string()) == testutil::spinner());
    }
    SECTION("find-l-copy lands on a property-L copy of the spinner and reports the change") {
        const fs::path out = dir / "spinner-l.uso";
        const RunResult r = run("--format json transform " + (kData / "spinner.uso").string() +
                                " --op find-l-copy --out " + out.string());
        REQUIRE(r.exit_code == 0);
        const json j = json::parse(r.stdout_text);
        CHECK(j["verdicts"]["property_l_before"] == false);
        CHECK(j["verdicts"]["property_l_after"] == true);
        CHECK(j["verdicts"]["property_l_changed"] == true);
        CHECK(uso::has_property_l(uso::read_uso_file(out.string())).holds);
    }
    SECTION("permute with the spinner's rotation is the identity on the table") {
        const fs::path out = dir / "rot.uso";
        REQUIRE(run("transform " + (kData / "spinner.uso").string() + " --op permute --perm 2,3,1 --out " +
                    out.string()).exit_code == 0);
        CHECK(uso::read_uso_file(out.string()) == testutil::spinner());
    }
}

TEST_CASE("cli iso") {
    const fs::path dir = tmpdir();
    const fs::path dcube = dir / "dcube.uso";
    REQUIRE(run("build dcube --lcp " + (kData / "dcube-example.lcp").string() + " --out " +
                dcube.string()).exit_code == 0);
    SECTION("spinner vs the section-5 D-cube: isomorphic, witness verifies") {
        const fs::path report = dir / "iso.json";
        const RunResult r = run("--format json --report " + report.string() + " iso " +
                                (kData / "spinner.uso").string() + " " + dcube.string());
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.stdout_text);
        CHECK(j["verdicts"]["isomorphic"] == true);
        const uso::Automorphism a = uso::automorphism_from_json(j["witnesses"]["automorphism"]);
        CHECK(uso::apply_automorphism(testutil::spinner(), a) == testutil::dcube_example());
        CHECK(run("verify-report " + report.string()).exit_code == 0);
    }
    SECTION("eye vs bow: not isomorphic (exit 1)") {
        const fs::path report = dir / "noniso.json";
        CHECK(run("--report " + report.string() + " iso " + (kData / "eye.uso").string() + " " +
                  (kData / "bow.uso").string()).exit_code == 1);
        CHECK(run("verify-report " + report.string()).exit_code == 0);
    }
    SECTION("a file against itself yields the identity") {
        const RunResult r = run("--format json iso " + (kData / "bow.uso").string() + " " +
                                (kData / "bow.uso").string());
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.stdout_text);
        CHECK(j["witnesses"]["automorphism"]["flip"] == 0);
    }
}

TEST_CASE("cli census") {
    const fs::path dir = tmpdir() / "census2";
    fs::remove_all(dir);
    const fs::path report = tmpdir() / "census2.json";
    const RunResult r = run("--format json --report " + report.string() +
                            " census --n 2 --out-dir " + dir.string());
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.stdout_text);
    CHECK(j["verdicts"]["classes"] == 2);
    CHECK(j["verdicts"]["without_property_l_member"] == 0);
    CHECK(j["verdicts"]["total_usos"] == 12);
    CHECK(fs::exists(dir / "class_00000.uso"));
    CHECK(fs::exists(dir / "class_00001.uso"));
    SECTION("the census report replays") {
        CHECK(run("verify-report " + report.string()).exit_code == 0);
    }
    SECTION("a tampered class file fails verification") {
        std::ofstream(dir / "class_00001.uso") << uso::format_uso(testutil::bow());  // not canonical
        CHECK(run("verify-report " + report.string()).exit_code == 1);
    }
    SECTION("n=4 without --heavy is refused") {
        CHECK(run("census --n 4 --out-dir " + dir.string()).exit_code == 2);
    }
    SECTION("n=3: 19 classes, none without a property-L member") {
        const fs::path dir3 = tmpdir() / "census3";
        fs::remove_all(dir3);
        const RunResult r3 = run("--format json census --n 3 --jobs 2 --out-dir " + dir3.string());
        REQUIRE(r3.exit_code == 0);
        const json j3 = json::parse(r3.stdout_text);
        CHECK(j3["verdicts"]["classes"] == 19);
        CHECK(j3["verdicts"]["without_property_l_member"] == 0);
        CHECK(j3["verdicts"]["total_usos"] == 744);
    }
}
