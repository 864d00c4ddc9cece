// The archiver catalogue: every bounded-archive update rule behind one
// fold contract. All archivers consume solutions one at a time except the
// batch-native NSGA-II mode, which merges a whole batch before truncating.

#pragma once

#include <cmath>
#include <optional>

#include "moa/core.hpp"
#include "moa/indicators.hpp"

namespace moa {

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

enum class ArchiverKind {
    unbounded, a_dom, eps_box, mga, nsga2, moead, indicator_mu1, weak_compliant
};
enum class EpsBoxMode { pareto, approx };
enum class Scalarizer { tch, pbi };
enum class RefPolicy { fixed, adaptive_nadir_plus_one };
enum class TiePolicy { reject_new, uniform_random };

inline const char* archiver_kind_name(ArchiverKind k) {
    switch (k) {
        case ArchiverKind::unbounded: return "unbounded";
        case ArchiverKind::a_dom: return "a_dom";
        case ArchiverKind::eps_box: return "eps_box";
        case ArchiverKind::mga: return "mga";
        case ArchiverKind::nsga2: return "nsga2";
        case ArchiverKind::moead: return "moead";
        case ArchiverKind::indicator_mu1: return "indicator_mu1";
        case ArchiverKind::weak_compliant: return "weak_compliant";
    }
    return "?";
}

struct ArchiverConfig {
    ArchiverKind kind = ArchiverKind::unbounded;
    std::size_t capacity = kUnbounded;            // N
    IndicatorSpec indicator;                      // indicator_mu1, weak_compliant
    double epsilon = 1.0;                         // eps_box
    EpsBoxMode eps_mode = EpsBoxMode::pareto;     // eps_box
    Scalarizer scalarizer = Scalarizer::tch;      // moead
    double pbi_theta = 5.0;                       // moead, pbi only
    std::vector<ObjectiveVector> weights;         // moead, one per capacity slot
    std::optional<ObjectiveVector> fixed_ideal;   // moead: freeze the reference point
    RefPolicy ref_policy = RefPolicy::fixed;      // indicator_mu1 with hypervolume
    TiePolicy tie_policy = TiePolicy::reject_new; // indicator_mu1
    bool batch_native = false;                    // nsga2 only
    std::uint64_t rng_seed = 0;
    std::string label;                            // report name; default from kind

    std::string name() const {
        if (!label.empty()) return label;
        std::string n = archiver_kind_name(kind);
        if (kind == ArchiverKind::eps_box)
            n += eps_mode == EpsBoxMode::pareto ? "_pareto" : "_approx";
        if (kind == ArchiverKind::moead)
            n += scalarizer == Scalarizer::tch ? "_tch" : "_pbi";
        if (kind == ArchiverKind::indicator_mu1 || kind == ArchiverKind::weak_compliant) {
            n += std::string("_") + indicator_name(indicator.kind);
            if (kind == ArchiverKind::indicator_mu1 &&
                indicator.kind == IndicatorKind::hypervolume)
                n += ref_policy == RefPolicy::fixed ? "_fixed" : "_adaptive";
        }
        return n;
    }

    bool needs_indicator() const {
        return kind == ArchiverKind::indicator_mu1 || kind == ArchiverKind::weak_compliant;
    }

    void validate(std::size_t dim) const {
        if (capacity == 0) throw std::invalid_argument("archiver capacity must be >= 1");
        switch (kind) {
            case ArchiverKind::unbounded:
                break;
            case ArchiverKind::eps_box:
                if (!(epsilon > 0.0)) throw std::invalid_argument("eps_box: epsilon must be > 0");
                break;
            case ArchiverKind::moead: {
                if (capacity == kUnbounded)
                    throw std::invalid_argument("moead: capacity must be finite");
                if (weights.size() != capacity)
                    throw std::invalid_argument("moead: weight count must equal capacity");
                for (const auto& w : weights)
                    if (w.size() != dim)
                        throw std::invalid_argument("moead: weight has wrong dimension");
                if (fixed_ideal && fixed_ideal->size() != dim)
                    throw std::invalid_argument("moead: ideal point has wrong dimension");
                break;
            }
            case ArchiverKind::indicator_mu1:
                if (capacity == kUnbounded)
                    throw std::invalid_argument("indicator_mu1: capacity must be finite");
                if (!(indicator.kind == IndicatorKind::hypervolume &&
                      ref_policy == RefPolicy::adaptive_nadir_plus_one))
                    indicator.validate(dim);   // adaptive ref is derived per update
                break;
            case ArchiverKind::weak_compliant:
                if (capacity == kUnbounded)
                    throw std::invalid_argument("weak_compliant: capacity must be finite");
                indicator.validate(dim);
                break;
            case ArchiverKind::a_dom:
            case ArchiverKind::mga:
            case ArchiverKind::nsga2:
                if (capacity == kUnbounded)
                    throw std::invalid_argument(std::string(archiver_kind_name(kind)) +
                                                ": capacity must be finite");
                break;
        }
    }
};

// Repeatedly peel the minimal set: F1 = min(P), F2 = min(P \ F1), ...
// Returned fronts hold indices into P; order within a front follows P.
inline std::vector<std::vector<std::size_t>> nondom_sorting_indices(const SolutionSet& p) {
    require_nonempty(p, "nondom_sorting");
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<bool> assigned(p.size(), false);
    std::size_t left = p.size();
    while (left > 0) {
        std::vector<std::size_t> front;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (assigned[i]) continue;
            bool dominated = false;
            for (std::size_t j = 0; j < p.size() && !dominated; ++j)
                dominated = !assigned[j] && j != i && dominates(p[j], p[i]);
            if (!dominated) front.push_back(i);
        }
        for (std::size_t i : front) assigned[i] = true;
        left -= front.size();
        fronts.push_back(std::move(front));
    }
    return fronts;
}

inline std::vector<SolutionSet> nondom_sorting(const SolutionSet& p) {
    std::vector<SolutionSet> out;
    for (const auto& front : nondom_sorting_indices(p)) {
        SolutionSet f;
        for (std::size_t i : front) f.push_back(p[i]);
        out.push_back(std::move(f));
    }
    return out;
}

// Crowding distance of one nondominated front. Boundary members per
// objective get +inf; interior members accumulate normalized neighbour
// gaps; objectives with zero range contribute nothing. Fronts of size <= 2
// are all boundary.
inline std::vector<double> crowding_distance(const SolutionSet& front) {
    const std::size_t n = front.size();
    const double inf = std::numeric_limits<double>::infinity();
    if (n == 0) return {};
    if (n <= 2) return std::vector<double>(n, inf);
    const std::size_t d = front.front().size();
    std::vector<double> cd(n, 0.0);
    std::vector<std::size_t> order(n);
    for (std::size_t m = 0; m < d; ++m) {
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return front[a][m] != front[b][m] ? front[a][m] < front[b][m] : a < b;
        });
        const double range = front[order[n - 1]][m] - front[order[0]][m];
        if (range == 0.0) continue;
        cd[order[0]] = inf;
        cd[order[n - 1]] = inf;
        for (std::size_t k = 1; k + 1 < n; ++k)
            if (cd[order[k]] != inf)
                cd[order[k]] += (front[order[k + 1]][m] - front[order[k - 1]][m]) / range;
    }
    return cd;
}

namespace detail {

// Box index for the epsilon grid: floor(log y_i / log(1+eps)).
// eps == 1 uses ilogb, which is exact.
inline std::vector<double> eps_box_index(const ObjectiveVector& y, double eps) {
    std::vector<double> box(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0))
            throw std::domain_error("eps_box: objective values must be strictly positive");
        box[i] = (eps == 1.0) ? static_cast<double>(std::ilogb(y[i]))
                              : std::floor(std::log(y[i]) / std::log1p(eps));
    }
    return box;
}

// Box index at dyadic coarseness level b: floor(y_i * 2^-b).
inline std::vector<double> mga_box_index(const ObjectiveVector& y, int level) {
    std::vector<double> box(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        box[i] = std::floor(std::ldexp(y[i], -level));
    return box;
}

inline bool vec_weakly_dominates(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline bool vec_dominates(const std::vector<double>& a, const std::vector<double>& b) {
    return vec_weakly_dominates(a, b) && a != b;
}

inline double tch_value(const ObjectiveVector& a, const ObjectiveVector& w,
                        const ObjectiveVector& r) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, w[i] * std::abs(a[i] - r[i]));
    return m;
}

inline double pbi_value(const ObjectiveVector& a, const ObjectiveVector& w,
                        const ObjectiveVector& r, double theta) {
    double wnorm = 0.0;
    for (double x : w) wnorm += x * x;
    wnorm = std::sqrt(wnorm);
    double d1 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d1 += (a[i] - r[i]) * w[i];
    d1 /= wnorm;
    double d2sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double perp = (a[i] - r[i]) - d1 * w[i] / wnorm;
        d2sq += perp * perp;
    }
    return d1 + theta * std::sqrt(d2sq);
}

}  // namespace detail

// Per-weight associations and the running ideal point of the MOEA/D
// archiver. assoc[i] belongs to weights[i]; the archive contents are the
// associated solutions (a solution may occupy several slots).
struct MoeadState {
    std::vector<ObjectiveVector> assoc;
    ObjectiveVector ideal;
    bool initialized() const { return !assoc.empty(); }
};

// Online archiver state: owns the archive, the archiver-specific auxiliary
// state and the eviction RNG. Updates are sequential by definition.
class Archiver {
public:
    explicit Archiver(ArchiverConfig cfg)
        : cfg_(std::move(cfg)), rng_(cfg_.rng_seed) {}

    const ArchiverConfig& config() const { return cfg_; }
    const MoeadState& moead_state() const { return moead_; }

    // Archive contents A^(t). For MOEA/D this is the multiset of
    // associated solutions.
    const SolutionSet& members() const {
        return cfg_.kind == ArchiverKind::moead ? moead_.assoc : members_;
    }

    // One-at-a-time update with the configured rule.
    void offer(const ObjectiveVector& s) {
        ensure_dimension(s);
        switch (cfg_.kind) {
            case ArchiverKind::unbounded: unbounded_update(s); break;
            case ArchiverKind::a_dom: a_dom_update(s); break;
            case ArchiverKind::eps_box: eps_box_update(s); break;
            case ArchiverKind::mga: mga_update(s); break;
            case ArchiverKind::nsga2: nsga2_update(s); break;
            case ArchiverKind::moead: moead_update(s); break;
            case ArchiverKind::indicator_mu1: indicator_mu1_update(s); break;
            case ArchiverKind::weak_compliant: weak_compliant_update(s); break;
        }
    }

    // Fold one batch, one solution at a time in batch order; NSGA-II in
    // batch-native mode merges the whole batch and truncates once.
    void fold(const Batch& batch) {
        if (batch.solutions.empty())
            throw std::invalid_argument("fold: empty batch");
        if (cfg_.kind == ArchiverKind::nsga2 && cfg_.batch_native) {
            for (const auto& s : batch.solutions) ensure_dimension(s);
            nsga2_batch_update(batch.solutions);
            return;
        }
        for (const auto& s : batch.solutions) offer(s);
    }

private:
    ArchiverConfig cfg_;
    SolutionSet members_;
    MoeadState moead_;
    std::mt19937_64 rng_;
    std::size_t dim_ = 0;

    void ensure_dimension(const ObjectiveVector& s) {
        if (s.size() < 2) throw std::invalid_argument("objective vectors need dimension >= 2");
        for (double x : s)
            if (!std::isfinite(x))
                throw std::invalid_argument("objective values must be finite");
        if (dim_ == 0) {
            dim_ = s.size();
            cfg_.validate(dim_);
        } else if (s.size() != dim_) {
            throw std::invalid_argument("solution dimension does not match archive");
        }
    }

    bool weakly_dominated_by_member(const ObjectiveVector& s) const {
        for (const auto& a : members_)
            if (weakly_dominates(a, s)) return true;
        return false;
    }

    void unbounded_update(const ObjectiveVector& s) {
        if (weakly_dominated_by_member(s)) return;   // covers exact duplicates
        std::erase_if(members_, [&](const ObjectiveVector& a) { return dominates(s, a); });
        members_.push_back(s);
    }

    void a_dom_update(const ObjectiveVector& s) {
        if (weakly_dominated_by_member(s)) return;
        SolutionSet cand = members_;
        cand.push_back(s);
        cand = minimal_set(cand);
        if (cand.size() <= cfg_.capacity) members_ = std::move(cand);
        // else: nondominated but no room and nothing dominated; reject
    }

    void eps_box_update(const ObjectiveVector& s) {
        const auto sbox = detail::eps_box_index(s, cfg_.epsilon);
        std::vector<std::vector<double>> boxes;
        boxes.reserve(members_.size());
        for (const auto& a : members_) boxes.push_back(detail::eps_box_index(a, cfg_.epsilon));

        // solutions whose box is strictly dominated by the newcomer's box
        std::vector<char> evict(members_.size(), 0);
        bool any_evict = false;
        for (std::size_t i = 0; i < members_.size(); ++i)
            if (detail::vec_dominates(sbox, boxes[i])) { evict[i] = 1; any_evict = true; }
        if (any_evict) {
            SolutionSet next;
            for (std::size_t i = 0; i < members_.size(); ++i)
                if (!evict[i]) next.push_back(members_[i]);
            next.push_back(s);
            members_ = std::move(next);
            return;
        }
        if (cfg_.eps_mode == EpsBoxMode::pareto) {
            // same box: newcomer may replace a member it dominates
            for (std::size_t i = 0; i < members_.size(); ++i) {
                if (boxes[i] == sbox && dominates(s, members_[i])) {
                    members_[i] = s;
                    return;
                }
            }
        }
        for (const auto& box : boxes)
            if (detail::vec_weakly_dominates(box, sbox)) return;   // occupied box covers s
        if (members_.size() < cfg_.capacity) members_.push_back(s);
    }

    void mga_update(const ObjectiveVector& s) {
        for (const auto& a : members_)
            if (dominates(a, s)) return;
        SolutionSet cand = members_;
        cand.push_back(s);
        cand = minimal_set(cand);
        if (cand.size() <= cfg_.capacity) {
            members_ = std::move(cand);
            return;
        }
        const std::size_t s_idx = cand.size() - 1;   // s survives minimal_set
        std::vector<std::size_t> box_dominated = mga_level_scan(cand);
        if (box_dominated.empty()) return;           // no level separates: keep old archive
        for (std::size_t i : box_dominated)
            if (i == s_idx) return;                  // newcomer itself is box-dominated
        const std::size_t victim = box_dominated[detail::bounded(rng_, box_dominated.size())];
        cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(victim));
        members_ = std::move(cand);
    }

    // Find the finest dyadic level at which some member of cand weakly
    // box-dominates another distinct member, and return the box-dominated
    // members at that level. Exact duplicates box-dominate each other at
    // every level, so they short-circuit the scan.
    std::vector<std::size_t> mga_level_scan(const SolutionSet& cand) const {
        std::vector<std::size_t> dup;
        for (std::size_t i = 0; i < cand.size(); ++i)
            for (std::size_t j = 0; j < cand.size(); ++j)
                if (j != i && cand[i] == cand[j]) { dup.push_back(i); break; }
        if (!dup.empty()) return dup;

        double max_abs = 0.0;
        for (const auto& a : cand)
            for (double x : a) max_abs = std::max(max_abs, std::abs(x));
        if (max_abs == 0.0) return {};   // unreachable: all-zero vectors are duplicates
        const int level_max = std::ilogb(max_abs) + 1;

        // below the smallest nonzero coordinate difference, distinct
        // mutually nondominated members cannot weakly box-dominate
        double min_diff = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < cand.size(); ++i)
            for (std::size_t j = i + 1; j < cand.size(); ++j)
                for (std::size_t k = 0; k < cand[i].size(); ++k) {
                    const double diff = std::abs(cand[i][k] - cand[j][k]);
                    if (diff > 0.0) min_diff = std::min(min_diff, diff);
                }
        if (!std::isfinite(min_diff)) return {};
        const int level_min = std::ilogb(min_diff) - 1;

        for (int b = level_min; b <= level_max; ++b) {
            std::vector<std::vector<double>> boxes;
            boxes.reserve(cand.size());
            for (const auto& a : cand) boxes.push_back(detail::mga_box_index(a, b));
            std::vector<std::size_t> dominated;
            for (std::size_t i = 0; i < cand.size(); ++i)
                for (std::size_t j = 0; j < cand.size(); ++j)
                    if (j != i && detail::vec_weakly_dominates(boxes[j], boxes[i])) {
                        dominated.push_back(i);
                        break;
                    }
            if (!dominated.empty()) return dominated;
        }
        return {};
    }

    // One-at-a-time NSGA-II rule. Whole-set growth only while the merged
    // set is a single nondominated front within capacity; otherwise the
    // minimum-crowding member of the last front goes, ties broken against
    // the most recently added.
    void nsga2_update(const ObjectiveVector& s) {
        SolutionSet pool = members_;
        pool.push_back(s);
        const auto fronts = nondom_sorting_indices(pool);
        if (fronts.size() == 1 && pool.size() <= cfg_.capacity) {
            members_ = std::move(pool);
            return;
        }
        const auto& last = fronts.back();
        SolutionSet front;
        for (std::size_t i : last) front.push_back(pool[i]);
        const auto cd = crowding_distance(front);
        std::size_t victim = last[0];
        double victim_cd = cd[0];
        for (std::size_t k = 1; k < last.size(); ++k)
            if (cd[k] < victim_cd || (cd[k] == victim_cd && last[k] > victim)) {
                victim = last[k];
                victim_cd = cd[k];
            }
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(victim));
        members_ = std::move(pool);
    }

    // Generational NSGA-II: fill whole fronts, then truncate the split
    // front by one-shot descending crowding distance.
    void nsga2_batch_update(const SolutionSet& batch) {
        SolutionSet pool = members_;
        pool.insert(pool.end(), batch.begin(), batch.end());
        const auto fronts = nondom_sorting_indices(pool);
        SolutionSet next;
        for (const auto& f : fronts) {
            if (next.size() + f.size() <= cfg_.capacity) {
                for (std::size_t i : f) next.push_back(pool[i]);
                if (next.size() == cfg_.capacity) break;
                continue;
            }
            const std::size_t room = cfg_.capacity - next.size();
            SolutionSet front;
            for (std::size_t i : f) front.push_back(pool[i]);
            const auto cd = crowding_distance(front);
            std::vector<std::size_t> order(front.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return cd[a] > cd[b];
            });
            for (std::size_t k = 0; k < room; ++k) next.push_back(front[order[k]]);
            break;
        }
        members_ = std::move(next);
    }

    void moead_update(const ObjectiveVector& s) {
        if (!moead_.initialized()) {
            moead_.assoc.assign(cfg_.capacity, s);
            moead_.ideal = cfg_.fixed_ideal ? *cfg_.fixed_ideal : s;
            return;
        }
        if (!cfg_.fixed_ideal)
            for (std::size_t i = 0; i < dim_; ++i)
                moead_.ideal[i] = std::min(moead_.ideal[i], s[i]);
        for (std::size_t i = 0; i < cfg_.weights.size(); ++i) {
            const double cand = scalarize(s, cfg_.weights[i]);
            const double incumbent = scalarize(moead_.assoc[i], cfg_.weights[i]);
            if (cand < incumbent) moead_.assoc[i] = s;
        }
    }

    double scalarize(const ObjectiveVector& a, const ObjectiveVector& w) const {
        return cfg_.scalarizer == Scalarizer::tch
                   ? detail::tch_value(a, w, moead_.ideal)
                   : detail::pbi_value(a, w, moead_.ideal, cfg_.pbi_theta);
    }

    // Common indicator-based selection: drop the least-contributing member
    // of the last front, rejecting the newcomer on ties under reject_new.
    void indicator_mu1_update(const ObjectiveVector& s) {
        if (cfg_.indicator.kind == IndicatorKind::hypervolume &&
            cfg_.ref_policy == RefPolicy::adaptive_nadir_plus_one) {
            ObjectiveVector ref = s;
            for (const auto& a : members_)
                for (std::size_t i = 0; i < dim_; ++i) ref[i] = std::max(ref[i], a[i]);
            for (double& x : ref) x += 1.0;
            cfg_.indicator.reference_point = std::move(ref);
        }
        if (members_.size() < cfg_.capacity) {
            members_.push_back(s);
            return;
        }
        SolutionSet pool = members_;
        pool.push_back(s);
        const std::size_t s_idx = pool.size() - 1;
        const auto fronts = nondom_sorting_indices(pool);
        const auto& last = fronts.back();

        std::vector<std::size_t> least;   // argmin of I(F_l \ {a}) over the last front
        if (last.size() == 1) {
            least = last;
        } else {
            double best = std::numeric_limits<double>::infinity();
            std::vector<double> value(last.size());
            for (std::size_t k = 0; k < last.size(); ++k) {
                SolutionSet rest;
                for (std::size_t j = 0; j < last.size(); ++j)
                    if (j != k) rest.push_back(pool[last[j]]);
                value[k] = cfg_.indicator.score(rest);
                best = std::min(best, value[k]);
            }
            for (std::size_t k = 0; k < last.size(); ++k)
                if (value[k] == best) least.push_back(last[k]);
        }

        if (cfg_.tie_policy == TiePolicy::reject_new) {
            for (std::size_t i : least)
                if (i == s_idx) return;   // newcomer among the least contributors
        }
        const std::size_t victim = least[detail::bounded(rng_, least.size())];
        if (victim == s_idx) return;      // uniform_random may discard the newcomer
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(victim));
        members_ = std::move(pool);
    }

    // Weakly-Pareto-compliant indicator archiver: reject if weakly
    // dominated; take the merged minimal set if it fits; otherwise swap
    // only on a strict indicator improvement (ties reject the newcomer).
    void weak_compliant_update(const ObjectiveVector& s) {
        if (weakly_dominated_by_member(s)) return;               // Rule 1
        SolutionSet cand = members_;
        cand.push_back(s);
        cand = minimal_set(cand);
        if (cand.size() <= cfg_.capacity) {                      // Rule 2
            members_ = std::move(cand);
            return;
        }
        const double incumbent = cfg_.indicator.score(members_);
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_idx = 0;
        for (std::size_t j = 0; j < members_.size(); ++j) {
            SolutionSet alt;
            for (std::size_t k = 0; k < members_.size(); ++k)
                if (k != j) alt.push_back(members_[k]);
            alt.push_back(s);
            const double v = cfg_.indicator.score(alt);
            if (v < best) { best = v; best_idx = j; }
        }
        if (incumbent <= best) return;                           // Rule 3
        members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(best_idx));
        members_.push_back(s);                                   // Rule 4
    }
};

// Fold one batch into an archive state and return the new state.
inline Archiver fold_batch(Archiver state, const Batch& batch) {
    state.fold(batch);
    return state;
}

// Run an archiver over a whole sequence, recording one snapshot per batch.
inline Trajectory run_archiver(const ArchiverConfig& cfg, const Sequence& seq) {
    Archiver arch(cfg);
    Trajectory traj;
    traj.rng_seed = cfg.rng_seed;
    for (const auto& batch : seq.batches) {
        arch.fold(batch);
        traj.record(arch.members(), batch.solutions);
    }
    return traj;
}

}  // namespace moa
