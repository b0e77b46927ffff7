#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"
#include "uso/uso.hpp"

using namespace uso;
using namespace testutil;

TEST_CASE("is_uso on the zoo") {
    CHECK(is_uso(eye()));
    CHECK(is_uso(bow()));
    CHECK(!is_uso(twin_peak()));
    CHECK(!is_uso(four_cycle()));
    CHECK(is_uso(spinner()));
    CHECK(is_uso(dcube_example()));
}

TEST_CASE("pairwise criterion agrees with the face-scan definition") {
    for (int n = 2; n <= 3; ++n) {
        bool agree = true;
        for_each_orientation(n, [&](const OutMap& o) {
            if (agree && is_uso(o) != oracle_is_uso_by_faces(o)) agree = false;
        });
        CHECK(agree);
    }
}

TEST_CASE("sinks_in_face") {
    CHECK(sinks_in_face(eye(), Face::whole_cube(2)).sinks == std::vector<DimSet>{DimSet()});
    CHECK(sinks_in_face(twin_peak(), Face::whole_cube(2)).sinks ==
          std::vector<DimSet>{DimSet(), DimSet::full(2)});
    CHECK(sinks_in_face(four_cycle(), Face::whole_cube(2)).sinks.empty());
    // an edge face of the spinner
    SinkReport r = sinks_in_face(spinner(), Face(DimSet(), DimSet::single(1)));
    CHECK(r.sinks == std::vector<DimSet>{DimSet()});
}

TEST_CASE("global_sink") {
    CHECK(global_sink(eye()) == DimSet());
    CHECK(global_sink(spinner()) == DimSet());
    CHECK(global_sink(dcube_example()) == DimSet(0b011));
    CHECK_THROWS_AS(global_sink(twin_peak()), NotAUso);   // two sinks
    CHECK_THROWS_AS(global_sink(four_cycle()), NotAUso);  // none
    CHECK(global_source(spinner()) == DimSet::full(3));
}

TEST_CASE("is_pseudo_uso") {
    CHECK(is_pseudo_uso(twin_peak()));
    CHECK(is_pseudo_uso(four_cycle()));
    CHECK(!is_pseudo_uso(eye()));
    CHECK(!is_pseudo_uso(spinner()));
}

TEST_CASE("pseudo USO structure over all small orientations") {
    for (int n = 2; n <= 3; ++n) {
        int pseudo_count = 0;
        bool sinks_ok = true, parity_ok = true;
        for_each_orientation(n, [&](const OutMap& o) {
            if (!is_pseudo_uso(o)) return;
            ++pseudo_count;
            const auto sinks = sinks_in_face(o, Face::whole_cube(n)).sinks.size();
            if (sinks != 0 && sinks != 2) sinks_ok = false;
            if (pseudo_outdegree_parity(o) == Parity::Mixed) parity_ok = false;
        });
        CHECK(sinks_ok);
        CHECK(parity_ok);
        CHECK(pseudo_count == (n == 2 ? 4 : 16));
    }
}

TEST_CASE("outdegree parity classification") {
    CHECK(pseudo_outdegree_parity(twin_peak()) == Parity::AllEven);
    CHECK(pseudo_outdegree_parity(four_cycle()) == Parity::AllOdd);
    CHECK(pseudo_outdegree_parity(eye()) == Parity::Mixed);
}

TEST_CASE("find_pseudo_cycle") {
    SECTION("walks a valid cycle for every 3-dimensional pseudo USO with bottom sink") {
        int found = 0;
        for_each_orientation(3, [&](const OutMap& o) {
            if (!is_pseudo_uso(o) || o.mask_at(0) != 0) return;
            ++found;
            PseudoCycleWitness w = find_pseudo_cycle(o, DimSet());
            CHECK(validate_pseudo_cycle(o, DimSet(), w));
            // edges individually validated against edge_direction
            for (std::size_t t = 0; t < w.cycle.size(); ++t) {
                DimSet a = w.cycle[t];
                DimSet b = w.cycle[(t + 1) % w.cycle.size()];
                CHECK(edge_direction(o, a, (a ^ b).lowest()) == EdgeDirection::Outgoing);
            }
        });
        CHECK(found > 0);
    }
    SECTION("preconditions") {
        CHECK_THROWS_AS(find_pseudo_cycle(twin_peak(), DimSet()), PreconditionFailed);  // m = 2
        OutMap p3(3, {0, 3, 6, 5, 5, 6, 3, 0});
        REQUIRE(is_pseudo_uso(p3));
        // mirroring moves the sinks off the bottom vertex; both the wrong v
        // and the true (non-bottom) sink vertex must be rejected
        OutMap moved = mirror(p3, DimSet::single(1));
        REQUIRE(is_pseudo_uso(moved));
        REQUIRE(moved.mask_at(0) != 0);
        CHECK_THROWS_AS(find_pseudo_cycle(moved, DimSet()), PreconditionFailed);
        CHECK_THROWS_AS(find_pseudo_cycle(moved, DimSet::single(1)), PreconditionFailed);
        CHECK_THROWS_AS(find_pseudo_cycle(spinner(), DimSet()), PreconditionFailed);  // a USO
    }
}

TEST_CASE("check_holt_klee") {
    CHECK(check_holt_klee(spinner()));
    CHECK(check_holt_klee(eye()));
    CHECK(check_holt_klee(dcube_example()));
    CHECK_THROWS_AS(check_holt_klee(twin_peak()), NotAUso);

    SECTION("max-flow verdict matches exhaustive disjoint-path search on every 3-cube USO") {
        int fails = 0;
        for (const OutMap& o : all_usos(3)) {
            const bool flow = check_holt_klee(o);
            CHECK(flow == oracle_holt_klee_by_search(o));
            if (!flow) ++fails;
        }
        CHECK(fails == 72);  // some 3-cube USOs do fail Holt-Klee
    }
}

TEST_CASE("check_locally_uniform") {
    CHECK(check_locally_uniform(uniform_uso(3)));
    CHECK(!check_locally_uniform(spinner()));
    CHECK_THROWS_AS(check_locally_uniform(twin_peak()), NotAUso);

    SECTION("maximal-set check equals the all-subsets reading on every 3-cube USO") {
        int uniform_count = 0;
        for (const OutMap& o : all_usos(3)) {
            const bool fast = check_locally_uniform(o);
            CHECK(fast == oracle_locally_uniform_all_subsets(o));
            if (fast) ++uniform_count;
        }
        CHECK(uniform_count == 98);
    }

    SECTION("classification of the recursively combed USOs, frozen") {
        const int expect[] = {0, 2, 6, 34};
        for (int n = 1; n <= 3; ++n) {
            int lu = 0;
            for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << ((1 << n) - 1)); ++bits)
                if (check_locally_uniform(recursively_combed(CombedSpec(n, bits)))) ++lu;
            CHECK(lu == expect[n]);
        }
    }
}

TEST_CASE("orientation_has_cycle") {
    CHECK(orientation_has_cycle(spinner()));
    CHECK(orientation_has_cycle(four_cycle()));
    CHECK(!orientation_has_cycle(uniform_uso(3)));
    CHECK(!orientation_has_cycle(eye()));
}

TEST_CASE("longest_directed_path_length") {
    CHECK(longest_directed_path_length(uniform_uso(3)) == 3);
    CHECK(longest_directed_path_length(spinner()) == 7);  // >= 6: it threads the 6-cycle
    CHECK(longest_directed_path_length(spinner()) == oracle_longest_path_by_sequences(spinner()));
    CHECK(longest_directed_path_length(uniform_uso(2)) == oracle_longest_path_by_sequences(uniform_uso(2)));
    CHECK_THROWS_AS(longest_directed_path_length(spinner(), 3), BudgetExceeded);
    CHECK_THROWS_AS(longest_directed_path_length(twin_peak()), NotAUso);
}

TEST_CASE("full reversal of a USO is a USO and swaps source and sink") {
    for (const OutMap& o : all_usos(3)) {
        OutMap r = reverse(o, DimSet::full(3));
        CHECK(is_uso(r));
        CHECK(global_sink(r) == global_source(o));
        CHECK(global_source(r) == global_sink(o));
    }
}
