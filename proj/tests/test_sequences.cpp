#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "moa/sequences.hpp"

using namespace moa;

TEST_CASE("linear lattice front") {
    FrontSpec spec;
    spec.shape = FrontShape::linear;
    spec.dimension = 2;
    spec.point_count = 3;
    const auto y = sample_ground_set(spec);
    REQUIRE(y.size() == 3);
    const double total = y[0][0] + y[0][1];
    for (const auto& p : y) {
        CHECK(p[0] + p[1] == total);
        CHECK(p[0] == std::floor(p[0]));
        CHECK(p[0] > 0.0);
    }
    CHECK(set_equal(minimal_set(y), y));
}

TEST_CASE("degenerate front shares a fixed coordinate") {
    FrontSpec spec;
    spec.shape = FrontShape::degenerate;
    spec.dimension = 3;
    spec.point_count = 2;
    const auto y = sample_ground_set(spec);
    REQUIRE(y.size() == 2);
    CHECK(y[0][2] == y[1][2]);
    CHECK(set_equal(minimal_set(y), y));
    FrontSpec flat = spec;
    flat.dimension = 2;
    CHECK_THROWS_AS(sample_ground_set(flat), std::invalid_argument);
}

TEST_CASE("noise points are strictly dominated by the front") {
    FrontSpec spec;
    spec.shape = FrontShape::linear;
    spec.dimension = 2;
    spec.point_count = 2;
    spec.dominated_noise_count = 1;
    spec.seed = 5;
    const auto y = sample_ground_set(spec);
    REQUIRE(y.size() == 3);
    const SolutionSet front(y.begin(), y.begin() + 2);
    bool dominated = false;
    for (const auto& f : front) dominated = dominated || dominates(f, y[2]);
    CHECK(dominated);
}

TEST_CASE("every shape produces a mutually nondominated front") {
    for (FrontShape shape : {FrontShape::linear, FrontShape::concave, FrontShape::convex,
                             FrontShape::disconnected, FrontShape::degenerate}) {
        for (std::size_t d : {std::size_t(2), std::size_t(3)}) {
            if (shape == FrontShape::degenerate && d == 2) continue;
            for (bool lattice : {true, false}) {
                FrontSpec spec;
                spec.shape = shape;
                spec.dimension = d;
                spec.point_count = 8;
                spec.dominated_noise_count = 3;
                spec.seed = 11 + d;
                spec.lattice = lattice;
                const auto y = sample_ground_set(spec);
                REQUIRE(y.size() == 11);
                const SolutionSet front(y.begin(), y.begin() + 8);
                CHECK(set_equal(minimal_set(front), front));
                for (std::size_t i = 8; i < y.size(); ++i) {
                    bool dominated = false;
                    for (const auto& f : front) dominated = dominated || dominates(f, y[i]);
                    CHECK(dominated);
                }
                for (const auto& p : y)
                    for (double v : p) CHECK(v > 0.0);
            }
        }
    }
}

TEST_CASE("order and batch") {
    const SolutionSet y{{1, 11}, {6, 6}, {11, 1}, {4, 8}};

    SECTION("singleton batches") {
        const auto seq = order_and_batch(y, {OrderKind::replay, 0}, 1, 1);
        REQUIRE(seq.batches.size() == 4);
        for (const auto& b : seq.batches) CHECK(b.solutions.size() == 1);
    }
    SECTION("one big batch") {
        const auto seq = order_and_batch(y, {OrderKind::replay, 0}, 4, 1);
        REQUIRE(seq.batches.size() == 1);
        CHECK(seq.batches[0].solutions.size() == 4);
    }
    SECTION("lexicographic sweep sorts by the first objective") {
        const auto seq = order_and_batch({{10, 0}, {0, 10}, {5, 5}},
                                         {OrderKind::lexicographic_sweep, 0}, 1, 1);
        CHECK(seq.batches[0].solutions[0] == ObjectiveVector{0, 10});
        CHECK(seq.batches[1].solutions[0] == ObjectiveVector{5, 5});
        CHECK(seq.batches[2].solutions[0] == ObjectiveVector{10, 0});
    }
    SECTION("extremes come first") {
        const auto seq = order_and_batch(y, {OrderKind::extremes_first, 3}, 1, 1);
        CHECK(seq.batches[0].solutions[0] == ObjectiveVector{1, 11});
        CHECK(seq.batches[1].solutions[0] == ObjectiveVector{11, 1});
    }
    SECTION("each pass preserves the multiset") {
        for (OrderKind kind : {OrderKind::shuffle, OrderKind::lexicographic_sweep,
                               OrderKind::extremes_first}) {
            const auto seq = order_and_batch(y, {kind, 9}, 3, 2);
            const auto flat = seq.all_solutions();
            REQUIRE(flat.size() == 8);
            SolutionSet pass1(flat.begin(), flat.begin() + 4);
            SolutionSet pass2(flat.begin() + 4, flat.end());
            std::sort(pass1.begin(), pass1.end());
            std::sort(pass2.begin(), pass2.end());
            auto sorted = y;
            std::sort(sorted.begin(), sorted.end());
            CHECK(pass1 == sorted);
            CHECK(pass2 == sorted);
        }
    }
    SECTION("bad arguments") {
        CHECK_THROWS_AS(order_and_batch(y, {OrderKind::shuffle, 0}, 0, 1), std::invalid_argument);
        CHECK_THROWS_AS(order_and_batch({}, {OrderKind::shuffle, 0}, 1, 1), std::invalid_argument);
    }
}

TEST_CASE("fig1 scenario reproduces crowding deterioration") {
    const auto sc = scenario("fig1_crowding");
    const auto traj = run_archiver(sc.archiver, sc.sequence);
    REQUIRE(traj.steps() == 5);
    CHECK(set_equal(traj.snapshots[3], {{0, 10}, {2, 7}, {10, 0}}));
    CHECK(set_equal(traj.snapshots[5], {{0, 10}, {4, 7.5}, {10, 0}}));
    const auto rep = find_report(check_anytime(traj), PropertyKind::set_monotone);
    REQUIRE_FALSE(rep.clean());
    CHECK(rep.witnesses[0].t == 3);
    CHECK(rep.witnesses[0].t2 == 5);
    CHECK(better(traj.snapshots[3], traj.snapshots[5]));
}

TEST_CASE("fig2 scenario reproduces the Pareto-subset failure and nothing else") {
    const auto sc = scenario("fig2_adom");
    const auto traj = run_archiver(sc.archiver, sc.sequence);
    const auto reports = check_anytime(traj);
    const auto pareto = find_report(reports, PropertyKind::pareto_subset);
    REQUIRE_FALSE(pareto.clean());
    CHECK(pareto.witnesses[0].offender == ObjectiveVector{1, 8});
    CHECK(pareto.witnesses[0].victim == ObjectiveVector{2, 9});
    CHECK(find_report(reports, PropertyKind::point_monotone).clean());
    CHECK(find_report(reports, PropertyKind::set_monotone).clean());
}

TEST_CASE("fig4 scenario deteriorates only under the adaptive reference") {
    const auto sc = scenario("fig4_adaptive_hv");
    REQUIRE(sc.has_control);
    const auto adaptive = run_archiver(sc.archiver, sc.sequence);
    const auto rep = find_report(check_anytime(adaptive), PropertyKind::set_monotone);
    REQUIRE_FALSE(rep.clean());
    CHECK(rep.witnesses[0].t == sc.expected.t);
    CHECK(rep.witnesses[0].t2 == sc.expected.t2);

    const auto fixed = run_archiver(sc.control, sc.sequence);
    for (const auto& r : check_anytime(fixed)) CHECK(r.clean());
}

TEST_CASE("unknown scenario name") {
    CHECK_THROWS_AS(scenario("fig3"), std::invalid_argument);
}

TEST_CASE("sequence csv round trip") {
    const auto sc = scenario("fig1_crowding");
    std::stringstream ss;
    write_sequence(sc.sequence, ss);
    const auto back = read_sequence(ss);
    REQUIRE(back.batches.size() == sc.sequence.batches.size());
    for (std::size_t i = 0; i < back.batches.size(); ++i)
        CHECK(back.batches[i].solutions == sc.sequence.batches[i].solutions);
    CHECK(back.ground == sc.sequence.ground);
}

TEST_CASE("csv rendering is bit-exact") {
    Sequence seq;
    seq.batches.push_back(Batch{0, {{0.1, 1.0 / 3.0}, {7.5, 1e-17}}});
    seq.batches.push_back(Batch{1, {{-2.5e300, 4.9e-324}}});
    std::stringstream ss;
    write_sequence(seq, ss);
    const auto back = read_sequence(ss);
    CHECK(back.batches[0].solutions == seq.batches[0].solutions);
    CHECK(back.batches[1].solutions == seq.batches[1].solutions);
}

TEST_CASE("csv format errors carry line numbers") {
    SECTION("wrong arity") {
        std::stringstream ss("t,f1,f2\n0,1,2\n1,3\n");
        try {
            read_sequence(ss);
            FAIL("expected FormatError");
        } catch (const FormatError& e) {
            CHECK(e.line == 3);
        }
    }
    SECTION("non-monotone batch index") {
        std::stringstream ss("t,f1,f2\n1,1,2\n0,3,4\n");
        try {
            read_sequence(ss);
            FAIL("expected FormatError");
        } catch (const FormatError& e) {
            CHECK(e.line == 3);
        }
    }
    SECTION("bad header") {
        std::stringstream ss("x,f1,f2\n");
        CHECK_THROWS_AS(read_sequence(ss), FormatError);
    }
    SECTION("bad value") {
        std::stringstream ss("t,f1,f2\n0,1,abc\n");
        CHECK_THROWS_AS(read_sequence(ss), FormatError);
    }
    SECTION("non-finite value") {
        std::stringstream ss("t,f1,f2\n0,1,inf\n");
        CHECK_THROWS_AS(read_sequence(ss), FormatError);
    }
    SECTION("missing file") {
        CHECK_THROWS_AS(read_sequence("/nonexistent/sequence.csv"), std::runtime_error);
    }
}

TEST_CASE("trajectory files rebind to their sequence for re-verification") {
    const auto sc = scenario("fig1_crowding");
    const auto traj = run_archiver(sc.archiver, sc.sequence);
    std::stringstream ss;
    write_trajectory(traj, ss);
    auto snapshots = read_trajectory_snapshots(ss);
    while (snapshots.size() < sc.sequence.batches.size() + 1) snapshots.emplace_back();
    const auto rebound = make_trajectory(sc.sequence, snapshots);
    REQUIRE(rebound.snapshots == traj.snapshots);
    const auto before = find_report(check_anytime(traj), PropertyKind::set_monotone);
    const auto after = find_report(check_anytime(rebound), PropertyKind::set_monotone);
    REQUIRE(before.witnesses.size() == after.witnesses.size());
    CHECK(after.witnesses[0].t == before.witnesses[0].t);
    CHECK(after.witnesses[0].t2 == before.witnesses[0].t2);
}
