// Executable checkers for the anytime archiver properties, the two
// indicator-archiver lemmas, and the optimal-approximation oracles.

#pragma once

#include <map>

#include "moa/archivers.hpp"
#include "moa/core.hpp"

namespace moa {

enum class PropertyKind {
    pareto_subset, point_monotone, set_monotone, lemma1_monotone, lemma2_no_revisit
};

inline const char* property_name(PropertyKind p) {
    switch (p) {
        case PropertyKind::pareto_subset: return "pareto_subset";
        case PropertyKind::point_monotone: return "point_monotone";
        case PropertyKind::set_monotone: return "set_monotone";
        case PropertyKind::lemma1_monotone: return "lemma1_monotone";
        case PropertyKind::lemma2_no_revisit: return "lemma2_no_revisit";
    }
    return "?";
}

// One concrete counterexample. t < t2 always; for pareto_subset both refer
// to the same snapshot and offender is the seen solution dominating the
// archived victim.
struct Witness {
    std::size_t t = 0;
    std::size_t t2 = 0;
    ObjectiveVector offender;
    ObjectiveVector victim;
};

struct ViolationReport {
    PropertyKind property = PropertyKind::pareto_subset;
    std::vector<Witness> witnesses;
    bool clean() const { return witnesses.empty(); }
};

struct AnytimeOptions {
    bool pareto_subset = true;
    bool point_monotone = true;
    bool set_monotone = true;
    // first witness per offending snapshot element; caps runaway reports
    std::size_t max_witnesses_per_property = 1000;
};

// Scan a trajectory for anytime-property counterexamples.
// pareto_subset: an archived minimal member dominated by anything seen.
// point_monotone: a minimal member of a later archive dominated by a
// minimal member of an earlier one. set_monotone: an earlier archive
// better than a later one.
inline std::vector<ViolationReport> check_anytime(const Trajectory& traj,
                                                  const AnytimeOptions& opt = {}) {
    std::vector<ViolationReport> out;
    const std::size_t steps = traj.steps();

    if (opt.pareto_subset) {
        ViolationReport rep{PropertyKind::pareto_subset, {}};
        // vectors verified clean against a prefix of the seen pool; a known
        // dominator short-circuits repeats of the same archive member
        std::map<ObjectiveVector, std::size_t> checked_to;
        std::map<ObjectiveVector, ObjectiveVector> known_dominator;
        for (std::size_t t = 1; t <= steps && rep.witnesses.size() < opt.max_witnesses_per_property; ++t) {
            if (traj.snapshots[t].empty()) continue;
            const auto seen = traj.seen_at(t);
            for (const auto& a : minimal_set(traj.snapshots[t])) {
                if (rep.witnesses.size() >= opt.max_witnesses_per_property) break;
                auto hit = known_dominator.find(a);
                if (hit != known_dominator.end()) {
                    rep.witnesses.push_back({t, t, hit->second, a});
                    continue;
                }
                std::size_t& from = checked_to.try_emplace(a, 0).first->second;
                for (std::size_t k = from; k < seen.size(); ++k) {
                    if (dominates(seen[k], a)) {
                        known_dominator.emplace(a, seen[k]);
                        rep.witnesses.push_back({t, t, seen[k], a});
                        break;
                    }
                }
                if (!known_dominator.count(a)) from = seen.size();
            }
        }
        out.push_back(std::move(rep));
    }

    if (opt.point_monotone) {
        ViolationReport rep{PropertyKind::point_monotone, {}};
        // minimal-archive members seen so far, tagged with first snapshot
        std::vector<std::pair<ObjectiveVector, std::size_t>> past;
        std::map<ObjectiveVector, std::size_t> past_index;
        for (std::size_t t = 1; t <= steps; ++t) {
            if (traj.snapshots[t].empty()) continue;
            const SolutionSet mins = minimal_set(traj.snapshots[t]);
            if (rep.witnesses.size() < opt.max_witnesses_per_property) {
                for (const auto& a2 : mins) {
                    for (const auto& [a, ta] : past) {
                        if (dominates(a, a2)) {
                            rep.witnesses.push_back({ta, t, a, a2});
                            break;
                        }
                    }
                    if (rep.witnesses.size() >= opt.max_witnesses_per_property) break;
                }
            }
            for (const auto& a : mins)
                if (past_index.emplace(a, t).second) past.emplace_back(a, t);
        }
        out.push_back(std::move(rep));
    }

    if (opt.set_monotone) {
        ViolationReport rep{PropertyKind::set_monotone, {}};
        // group consecutive identical archives; compare distinct groups
        std::vector<std::pair<SolutionSet, std::size_t>> groups;   // canonical set, first t
        for (std::size_t t = 1; t <= steps; ++t) {
            if (traj.snapshots[t].empty()) continue;
            SolutionSet canon = canonical_set(traj.snapshots[t]);
            if (groups.empty() || groups.back().first != canon)
                groups.emplace_back(std::move(canon), t);
        }
        for (std::size_t i = 0; i < groups.size(); ++i) {
            for (std::size_t j = i + 1; j < groups.size(); ++j) {
                if (rep.witnesses.size() >= opt.max_witnesses_per_property) break;
                if (groups[i].first != groups[j].first &&
                    better(groups[i].first, groups[j].first))
                    rep.witnesses.push_back({groups[i].second, groups[j].second, {}, {}});
            }
            if (rep.witnesses.size() >= opt.max_witnesses_per_property) break;
        }
        out.push_back(std::move(rep));
    }
    return out;
}

// Lemma checks for trajectories produced by the weak-compliant archiver
// with the given indicator: the indicator value never degrades, and a
// changed archive is never revisited.
inline std::vector<ViolationReport> check_lemmas(const Trajectory& traj,
                                                 const IndicatorSpec& indicator) {
    std::vector<ViolationReport> out;
    const std::size_t steps = traj.steps();

    ViolationReport lemma1{PropertyKind::lemma1_monotone, {}};
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t t = 1; t <= steps; ++t) {
        if (traj.snapshots[t].empty()) continue;
        const double v = indicator.score(traj.snapshots[t]);
        if (v > prev) lemma1.witnesses.push_back({t - 1, t, {}, {}});
        prev = v;
    }
    out.push_back(std::move(lemma1));

    ViolationReport lemma2{PropertyKind::lemma2_no_revisit, {}};
    std::vector<std::pair<SolutionSet, std::size_t>> groups;
    for (std::size_t t = 1; t <= steps; ++t) {
        if (traj.snapshots[t].empty()) continue;
        SolutionSet canon = canonical_set(traj.snapshots[t]);
        if (groups.empty() || groups.back().first != canon)
            groups.emplace_back(std::move(canon), t);
    }
    std::map<SolutionSet, std::size_t> first_group_t;
    for (const auto& [canon, t] : groups) {
        auto [it, fresh] = first_group_t.emplace(canon, t);
        if (!fresh) lemma2.witnesses.push_back({it->second, t, {}, {}});
    }
    out.push_back(std::move(lemma2));
    return out;
}

inline ViolationReport find_report(const std::vector<ViolationReport>& reports,
                                   PropertyKind p) {
    for (const auto& r : reports)
        if (r.property == p) return r;
    return {p, {}};
}

namespace detail {

inline void require_subset_of_ground(const SolutionSet& a, const SolutionSet& y) {
    for (const auto& v : a)
        if (!contains(y, v))
            throw std::invalid_argument("is_optimal_approximation: archive not drawn from ground set");
}

// Enumeration work for the brute-force oracle: subsets of size <= n from m
// distinct candidates.
inline double subset_count(std::size_t m, std::size_t n) {
    double total = 0.0, c = 1.0;
    for (std::size_t k = 1; k <= std::min(m, n); ++k) {
        c = c * static_cast<double>(m - k + 1) / static_cast<double>(k);
        total += c;
    }
    return total;
}

}  // namespace detail

// Brute-force oracle for "optimal approximation of bounded size N": A (as a
// set) is nondominated and no subset of Y of size <= N is better than it.
inline bool is_optimal_approximation_bruteforce(const SolutionSet& a_in, const SolutionSet& y,
                                                std::size_t n) {
    require_nonempty(a_in, "is_optimal_approximation");
    detail::require_subset_of_ground(a_in, y);
    const SolutionSet a = canonical_set(a_in);
    if (a.size() > n) return false;
    if (!set_equal(minimal_set(a), a)) return false;
    const SolutionSet pool = canonical_set(y);
    const std::size_t m = pool.size();
    const std::size_t pick = std::min(m, n);
    std::vector<std::size_t> idx;
    // depth-first enumeration of all nonempty subsets of size <= pick
    std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
        if (!idx.empty()) {
            SolutionSet b;
            for (std::size_t i : idx) b.push_back(pool[i]);
            if (better(b, a)) return true;
        }
        if (idx.size() == pick) return false;
        for (std::size_t i = start; i < m; ++i) {
            idx.push_back(i);
            if (rec(i + 1)) return true;
            idx.pop_back();
        }
        return false;
    };
    return !rec(0);
}

// Fast path from the convergence analysis: a duplicate-free nondominated
// subset of the Pareto set of Y that fills min(N, |Pareto set|) slots.
inline bool is_optimal_approximation_fast(const SolutionSet& a_in, const SolutionSet& y,
                                          std::size_t n) {
    require_nonempty(a_in, "is_optimal_approximation");
    detail::require_subset_of_ground(a_in, y);
    const SolutionSet a = canonical_set(a_in);
    if (a.size() > n) return false;
    if (!set_equal(minimal_set(a), a)) return false;
    const SolutionSet ystar = canonical_set(minimal_set(y));
    if (!subset_of(a, ystar)) return false;
    return a.size() == std::min<std::size_t>(n, ystar.size());
}

// Dispatcher: exhaustive enumeration when tractable, fast path otherwise.
// The two paths agree wherever both apply.
inline bool is_optimal_approximation(const SolutionSet& a, const SolutionSet& y,
                                     std::size_t n) {
    const std::size_t m = canonical_set(y).size();
    if (detail::subset_count(m, std::min(m, n)) <= 250000.0)
        return is_optimal_approximation_bruteforce(a, y, n);
    return is_optimal_approximation_fast(a, y, n);
}

// Outcome of a limit experiment. A budget-exhausted run neither confirms
// nor refutes the limit properties; the flags are only meaningful when the
// run stabilized.
struct LimitVerdict {
    bool stabilized = false;
    std::size_t stable_at = 0;        // last step the archive set changed
    bool is_pareto_subset = false;
    bool is_optimal = false;
    bool budget_exhausted = false;
    SolutionSet final_archive;
};

// Feed i.i.d. uniform draws from Y one at a time until the archive set is
// unchanged for stability_window consecutive draws, then judge the stable
// archive. Zero window/budget pick the defaults 50*|Y| and 10^4*|Y|.
inline LimitVerdict run_limit_experiment(const ArchiverConfig& cfg, const SolutionSet& y,
                                         std::uint64_t seed, std::size_t stability_window = 0,
                                         std::size_t budget = 0) {
    require_nonempty(y, "run_limit_experiment");
    if (stability_window == 0) stability_window = 50 * y.size();
    if (budget == 0) budget = 10000 * y.size();
    if (stability_window < y.size())
        throw std::invalid_argument("run_limit_experiment: stability window below |Y|");

    Archiver arch(cfg);
    std::mt19937_64 draw_rng(seed);
    LimitVerdict verdict;
    SolutionSet prev;
    std::size_t unchanged = 0;
    for (std::size_t step = 1; step <= budget; ++step) {
        const auto& s = y[detail::bounded(draw_rng, y.size())];
        arch.fold(Batch{static_cast<int>(step - 1), {s}});
        SolutionSet canon = canonical_set(arch.members());
        if (canon == prev) {
            if (++unchanged >= stability_window) {
                verdict.stabilized = true;
                break;
            }
        } else {
            prev = std::move(canon);
            unchanged = 0;
            verdict.stable_at = step;
        }
    }
    verdict.budget_exhausted = !verdict.stabilized;
    verdict.final_archive = arch.members();
    if (verdict.stabilized) {
        const SolutionSet mins = minimal_set(verdict.final_archive);
        const SolutionSet ystar = minimal_set(y);
        verdict.is_pareto_subset = subset_of(mins, ystar);
        const std::size_t n =
            cfg.capacity == kUnbounded ? canonical_set(y).size() : cfg.capacity;
        verdict.is_optimal = is_optimal_approximation(mins, y, n);
    }
    return verdict;
}

}  // namespace moa
