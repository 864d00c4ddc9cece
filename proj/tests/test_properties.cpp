#include <catch2/catch_amalgamated.hpp>

#include "moa/properties.hpp"
#include "moa/sequences.hpp"
#include "support.hpp"

using namespace moa;
using testsupport::random_set;
using testsupport::random_vec;

namespace {

// a trajectory of arbitrary archive snapshots over a random seen pool;
// exercises the checkers, not any archiver
Trajectory random_trajectory(std::mt19937_64& rng, std::size_t steps, std::size_t d, int hi) {
    Trajectory traj;
    for (std::size_t t = 0; t < steps; ++t) {
        const auto batch = random_set(rng, 1 + detail::bounded(rng, 2), d, hi);
        const auto archive = random_set(rng, 1 + detail::bounded(rng, 3), d, hi);
        traj.record(archive, batch);
    }
    return traj;
}

SolutionSet positive_lattice_set(std::mt19937_64& rng, std::size_t count, std::size_t d, int hi) {
    SolutionSet y;
    for (std::size_t i = 0; i < count; ++i) {
        auto v = random_vec(rng, d, hi - 1);
        for (double& x : v) x += 1.0;
        y.push_back(std::move(v));
    }
    return y;
}

Sequence shuffled_sequence(std::mt19937_64& rng, const SolutionSet& y, std::size_t passes) {
    return order_and_batch(y, {OrderKind::shuffle, rng()}, 1, passes);
}

ArchiverConfig weak_config(IndicatorKind kind, std::size_t capacity, const SolutionSet& y) {
    ArchiverConfig cfg;
    cfg.kind = ArchiverKind::weak_compliant;
    cfg.capacity = capacity;
    const std::size_t d = y.front().size();
    switch (kind) {
        case IndicatorKind::epsilon_additive:
            cfg.indicator = IndicatorSpec::make_epsilon(canonical_set(minimal_set(y)));
            break;
        case IndicatorKind::igd_plus:
            cfg.indicator = IndicatorSpec::make_igd_plus(canonical_set(minimal_set(y)));
            break;
        case IndicatorKind::r2: {
            ObjectiveVector utopian(d);
            for (std::size_t k = 0; k < d; ++k) {
                double lo = y.front()[k];
                for (const auto& p : y) lo = std::min(lo, p[k]);
                utopian[k] = lo - 1.0;
            }
            cfg.indicator = IndicatorSpec::make_r2(uniform_weights(d, 11), utopian);
            break;
        }
        case IndicatorKind::hypervolume:
            throw std::logic_error("use indicator_mu1 for hypervolume");
    }
    return cfg;
}

}  // namespace

TEST_CASE("constant trajectory is clean") {
    Trajectory traj;
    for (int t = 0; t < 5; ++t) traj.record({{0, 1}, {1, 0}}, {{0, 1}});
    for (const auto& rep : check_anytime(traj)) CHECK(rep.clean());
}

TEST_CASE("witness pairs are ordered in time") {
    std::mt19937_64 rng(60);
    for (int rep = 0; rep < 500; ++rep) {
        const auto traj = random_trajectory(rng, 2 + detail::bounded(rng, 5), 2, 4);
        for (const auto& report : check_anytime(traj))
            for (const auto& w : report.witnesses) CHECK(w.t <= w.t2);
    }
}

TEST_CASE("checker cross-consistency on random trajectories") {
    // a trajectory without point-monotone violations cannot have a
    // set-monotone witness whose archives contain a dominating pair of
    // minimal members: such a pair is itself a point-monotone witness
    std::mt19937_64 rng(61);
    int set_witnesses_seen = 0;
    for (int rep = 0; rep < 10000; ++rep) {
        const auto traj = random_trajectory(rng, 2 + detail::bounded(rng, 3), 2, 4);
        const auto reports = check_anytime(traj);
        const bool point_clean = find_report(reports, PropertyKind::point_monotone).clean();
        const auto set_rep = find_report(reports, PropertyKind::set_monotone);
        set_witnesses_seen += static_cast<int>(set_rep.witnesses.size());
        if (!point_clean) continue;
        for (const auto& w : set_rep.witnesses) {
            const auto older = minimal_set(traj.snapshots[w.t]);
            const auto newer = minimal_set(traj.snapshots[w.t2]);
            for (const auto& a : older)
                for (const auto& b : newer) CHECK_FALSE(dominates(a, b));
        }
    }
    CHECK(set_witnesses_seen > 0);
}

TEST_CASE("lemma checks") {
    SECTION("single-batch trajectory is clean") {
        Trajectory traj;
        traj.record({{0, 1}}, {{0, 1}});
        for (const auto& rep : check_lemmas(traj, IndicatorSpec::make_epsilon({{0, 1}})))
            CHECK(rep.clean());
    }
    SECTION("reinserted snapshot is a lemma2 witness") {
        Trajectory traj;
        traj.record({{0, 2}, {2, 0}}, {{0, 2}});
        traj.record({{0, 2}, {1, 1}}, {{1, 1}});
        traj.record({{0, 2}, {2, 0}}, {{2, 0}});   // revisit
        const auto reports =
            check_lemmas(traj, IndicatorSpec::make_epsilon({{0, 2}, {1, 1}, {2, 0}}));
        const auto lemma2 = find_report(reports, PropertyKind::lemma2_no_revisit);
        REQUIRE(lemma2.witnesses.size() == 1);
        CHECK(lemma2.witnesses[0].t == 1);
        CHECK(lemma2.witnesses[0].t2 == 3);
    }
    SECTION("a degrading indicator value is a lemma1 witness") {
        Trajectory traj;
        traj.record({{0, 0}}, {{0, 0}});
        traj.record({{3, 3}}, {{3, 3}});
        const auto reports = check_lemmas(traj, IndicatorSpec::make_epsilon({{0, 0}}));
        CHECK_FALSE(find_report(reports, PropertyKind::lemma1_monotone).clean());
    }
    SECTION("a long igd+ run stays clean") {
        std::mt19937_64 rng(67);
        const auto y = positive_lattice_set(rng, 30, 2, 40);
        const auto cfg = weak_config(IndicatorKind::igd_plus, 5, y);
        Archiver arch{cfg};
        Trajectory traj;
        for (int i = 0; i < 1000; ++i) {
            const auto& s = y[detail::bounded(rng, y.size())];
            arch.fold(Batch{i, {s}});
            traj.record(arch.members(), {s});
        }
        for (const auto& rep : check_lemmas(traj, cfg.indicator)) CHECK(rep.clean());
    }
    SECTION("weak-compliant runs are clean for every configured indicator") {
        std::mt19937_64 rng(62);
        for (int rep = 0; rep < 10; ++rep) {
            const std::size_t d = 2 + rep % 2;
            const auto y = positive_lattice_set(rng, 15, d, 9);
            const auto seq = shuffled_sequence(rng, y, 3);
            for (IndicatorKind kind : {IndicatorKind::epsilon_additive, IndicatorKind::igd_plus,
                                       IndicatorKind::r2}) {
                const auto cfg = weak_config(kind, 4, y);
                const auto traj = run_archiver(cfg, seq);
                for (const auto& report : check_lemmas(traj, cfg.indicator)) CHECK(report.clean());
            }
        }
    }
}

TEST_CASE("optimal approximation oracles") {
    const SolutionSet y{{0, 1}, {1, 0}, {2, 2}};
    CHECK(is_optimal_approximation_bruteforce({{0, 1}, {1, 0}}, y, 2));
    CHECK(is_optimal_approximation_fast({{0, 1}, {1, 0}}, y, 2));
    CHECK_FALSE(is_optimal_approximation_bruteforce({{0, 1}}, y, 2));
    CHECK_FALSE(is_optimal_approximation_fast({{0, 1}}, y, 2));
    CHECK_FALSE(is_optimal_approximation_bruteforce({{0, 1}, {2, 2}}, y, 2));
    CHECK_FALSE(is_optimal_approximation_fast({{0, 1}, {2, 2}}, y, 2));
    CHECK_THROWS_AS(is_optimal_approximation({{5, 5}}, y, 2), std::invalid_argument);

    SECTION("both paths agree on random instances") {
        std::mt19937_64 rng(63);
        int optimal_seen = 0;
        for (int rep = 0; rep < 400; ++rep) {
            const auto ground = canonical_set(random_set(rng, 2 + detail::bounded(rng, 9), 2, 5));
            const std::size_t n = 1 + detail::bounded(rng, 4);
            SolutionSet a;
            for (const auto& p : ground)
                if (detail::bounded(rng, 3) == 0 && a.size() < n) a.push_back(p);
            if (a.empty()) a.push_back(ground[detail::bounded(rng, ground.size())]);
            const bool brute = is_optimal_approximation_bruteforce(a, ground, n);
            const bool fast = is_optimal_approximation_fast(a, ground, n);
            CHECK(brute == fast);
            optimal_seen += brute;
        }
        CHECK(optimal_seen > 0);
    }
}

TEST_CASE("limit experiments") {
    std::mt19937_64 rng(64);
    const auto y = canonical_set(positive_lattice_set(rng, 24, 2, 19));

    SECTION("weak-compliant epsilon archiver converges to an optimal approximation") {
        const auto cfg = weak_config(IndicatorKind::epsilon_additive, 5, y);
        const auto verdict = run_limit_experiment(cfg, y, 123);
        REQUIRE(verdict.stabilized);
        CHECK(verdict.is_pareto_subset);
        CHECK(verdict.is_optimal);
        CHECK_FALSE(verdict.budget_exhausted);
    }
    SECTION("dominating archiver converges to an optimal approximation") {
        ArchiverConfig cfg;
        cfg.kind = ArchiverKind::a_dom;
        cfg.capacity = 5;
        const auto verdict = run_limit_experiment(cfg, y, 42);
        REQUIRE(verdict.stabilized);
        CHECK(verdict.is_pareto_subset);
        CHECK(verdict.is_optimal);
    }
    SECTION("experiments are deterministic given the seed") {
        ArchiverConfig cfg;
        cfg.kind = ArchiverKind::nsga2;
        cfg.capacity = 5;
        const auto v1 = run_limit_experiment(cfg, y, 7, 200, 4000);
        const auto v2 = run_limit_experiment(cfg, y, 7, 200, 4000);
        CHECK(v1.stabilized == v2.stabilized);
        CHECK(v1.stable_at == v2.stable_at);
        CHECK(v1.final_archive == v2.final_archive);
    }
    SECTION("window below the ground set size is rejected") {
        ArchiverConfig cfg;
        cfg.kind = ArchiverKind::a_dom;
        cfg.capacity = 5;
        CHECK_THROWS_AS(run_limit_experiment(cfg, y, 1, 5, 100), std::invalid_argument);
    }
}

TEST_CASE("capacity safety for every archiver kind") {
    std::mt19937_64 rng(65);
    const std::size_t n = 4;
    for (int rep = 0; rep < 6; ++rep) {
        const std::size_t d = 2 + rep % 2;
        const auto y = positive_lattice_set(rng, 16, d, 15);
        const auto seq = shuffled_sequence(rng, y, 2);

        std::vector<ArchiverConfig> configs;
        {
            ArchiverConfig c;
            c.kind = ArchiverKind::a_dom; c.capacity = n; configs.push_back(c);
            c.kind = ArchiverKind::mga; configs.push_back(c);
            c.kind = ArchiverKind::nsga2; configs.push_back(c);
            c.batch_native = true; configs.push_back(c);
        }
        {
            ArchiverConfig c;
            c.kind = ArchiverKind::eps_box; c.capacity = n; c.epsilon = 1.0;
            configs.push_back(c);
            c.eps_mode = EpsBoxMode::approx; configs.push_back(c);
        }
        {
            ArchiverConfig c;
            c.kind = ArchiverKind::moead; c.capacity = n; c.weights = uniform_weights(d, n);
            configs.push_back(c);
            c.scalarizer = Scalarizer::pbi; configs.push_back(c);
        }
        {
            ArchiverConfig c;
            c.kind = ArchiverKind::indicator_mu1; c.capacity = n;
            c.indicator = IndicatorSpec::make_hypervolume(ObjectiveVector(d, 17.0));
            configs.push_back(c);
            c.ref_policy = RefPolicy::adaptive_nadir_plus_one; configs.push_back(c);
        }
        configs.push_back(weak_config(IndicatorKind::epsilon_additive, n, y));
        configs.push_back(weak_config(IndicatorKind::r2, n, y));

        for (const auto& cfg : configs) {
            const auto traj = run_archiver(cfg, seq);
            for (const auto& snap : traj.snapshots) CHECK(snap.size() <= n);
        }
    }
}

TEST_CASE("property probes at unit scale") {
    std::mt19937_64 rng(66);
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t d = 2 + rep % 2;
        const auto y = positive_lattice_set(rng, 14, d, 15);
        const auto seq = shuffled_sequence(rng, y, 2);

        {
            ArchiverConfig cfg;
            cfg.kind = ArchiverKind::a_dom;
            cfg.capacity = 3;
            const auto traj = run_archiver(cfg, seq);
            CHECK(find_report(check_anytime(traj), PropertyKind::point_monotone).clean());
        }
        {
            ArchiverConfig cfg;
            cfg.kind = ArchiverKind::eps_box;
            cfg.epsilon = 1.0;
            const auto traj = run_archiver(cfg, seq);
            CHECK(find_report(check_anytime(traj), PropertyKind::pareto_subset).clean());
        }
        {
            ArchiverConfig cfg;
            cfg.kind = ArchiverKind::mga;
            cfg.capacity = 3;
            cfg.rng_seed = rng();
            const auto traj = run_archiver(cfg, seq);
            CHECK(find_report(check_anytime(traj), PropertyKind::set_monotone).clean());
        }
        {
            ArchiverConfig cfg;
            cfg.kind = ArchiverKind::indicator_mu1;
            cfg.capacity = 3;
            cfg.indicator = IndicatorSpec::make_hypervolume(ObjectiveVector(d, 17.0));
            cfg.rng_seed = rng();
            const auto traj = run_archiver(cfg, seq);
            CHECK(find_report(check_anytime(traj), PropertyKind::set_monotone).clean());
        }
        {
            ArchiverConfig cfg;
            cfg.kind = ArchiverKind::moead;
            cfg.capacity = 4;
            cfg.weights = uniform_weights(d, 4);
            ObjectiveVector ideal(d);
            for (std::size_t k = 0; k < d; ++k) {
                double lo = y.front()[k];
                for (const auto& p : y) lo = std::min(lo, p[k]);
                ideal[k] = lo;
            }
            cfg.fixed_ideal = ideal;   // true ideal supplied up front
            const auto traj = run_archiver(cfg, seq);
            CHECK(find_report(check_anytime(traj), PropertyKind::set_monotone).clean());
        }
        {
            const auto cfg = weak_config(IndicatorKind::igd_plus, 3, y);
            const auto traj = run_archiver(cfg, seq);
            const auto reports = check_anytime(traj);
            CHECK(find_report(reports, PropertyKind::set_monotone).clean());
            for (const auto& snap : traj.snapshots) {
                if (snap.empty()) continue;
                CHECK(set_equal(minimal_set(snap), snap));
                CHECK_FALSE(has_duplicates(snap));
            }
        }
    }
}
