// Unary quality indicators: hypervolume (exact, any dimension), additive
// epsilon, IGD+, and R2. All assume minimisation of the underlying
// objectives; hypervolume itself is larger-is-better and gets negated where
// a minimised score is required.

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "moa/core.hpp"

namespace moa {

namespace detail {

// Points strictly inside the box below ref; everything else has zero
// dominated volume and is clamped away.
inline SolutionSet clip_to_reference(const SolutionSet& a, const ObjectiveVector& ref) {
    SolutionSet out;
    for (const auto& y : a) {
        require_same_dim(y, ref);
        bool inside = true;
        for (std::size_t i = 0; i < y.size(); ++i)
            if (y[i] >= ref[i]) { inside = false; break; }
        if (inside) out.push_back(y);
    }
    return out;
}

// Exact hypervolume of a clipped nondominated set by sweeping slabs of the
// last objective and recursing on the projection.
inline double hv_recursive(SolutionSet pts, const ObjectiveVector& ref) {
    if (pts.empty()) return 0.0;
    const std::size_t d = ref.size();
    if (d == 1) {
        double lo = ref[0];
        for (const auto& p : pts) lo = std::min(lo, p[0]);
        return ref[0] - lo;
    }
    if (d == 2) {
        // nondominated + deduped: f1 strictly increasing, f2 strictly decreasing
        pts = canonical_set(std::move(pts));
        double hv = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double next1 = (i + 1 < pts.size()) ? pts[i + 1][0] : ref[0];
            hv += (next1 - pts[i][0]) * (ref[1] - pts[i][1]);
        }
        return hv;
    }
    // d >= 3: slab decomposition along the last objective.
    std::sort(pts.begin(), pts.end(), [d](const auto& x, const auto& y) {
        return x[d - 1] < y[d - 1];
    });
    double hv = 0.0;
    SolutionSet active;   // projections of points at or below the current slab
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ObjectiveVector proj(pts[i].begin(), pts[i].end() - 1);
        active.push_back(std::move(proj));
        const double z0 = pts[i][d - 1];
        const double z1 = (i + 1 < pts.size()) ? pts[i + 1][d - 1] : ref[d - 1];
        if (z1 > z0) {
            ObjectiveVector subref(ref.begin(), ref.end() - 1);
            hv += (z1 - z0) * hv_recursive(minimal_set(active), subref);
        }
    }
    return hv;
}

inline double hypervolume_unchecked(const SolutionSet& a, const ObjectiveVector& ref) {
    SolutionSet pts = clip_to_reference(a, ref);
    if (pts.empty()) return 0.0;
    return hv_recursive(minimal_set(pts), ref);
}

}  // namespace detail

// Lebesgue measure of the region dominated by A and bounding ref.
inline double hypervolume(const SolutionSet& a, const ObjectiveVector& ref) {
    require_nonempty(a, "hypervolume");
    return detail::hypervolume_unchecked(a, ref);
}

// HV(A) - HV(A \ {a}); one occurrence of a is removed.
inline double hv_contribution(const SolutionSet& a, const ObjectiveVector& member,
                              const ObjectiveVector& ref) {
    auto it = std::find(a.begin(), a.end(), member);
    if (it == a.end())
        throw std::invalid_argument("hv_contribution: solution is not a member of the set");
    SolutionSet rest(a.begin(), it);
    rest.insert(rest.end(), std::next(it), a.end());
    return hypervolume(a, ref) - detail::hypervolume_unchecked(rest, ref);
}

// Monte-Carlo estimate over the box [componentwise min of A, ref].
// Verification aid for the exact computation.
inline double monte_carlo_hypervolume(const SolutionSet& a, const ObjectiveVector& ref,
                                      std::size_t samples, std::uint64_t seed) {
    require_nonempty(a, "monte_carlo_hypervolume");
    SolutionSet pts = detail::clip_to_reference(a, ref);
    if (pts.empty()) return 0.0;
    const std::size_t d = ref.size();
    ObjectiveVector lo = pts.front();
    for (const auto& p : pts)
        for (std::size_t i = 0; i < d; ++i) lo[i] = std::min(lo[i], p[i]);
    double box = 1.0;
    for (std::size_t i = 0; i < d; ++i) box *= ref[i] - lo[i];
    std::mt19937_64 rng(seed);
    std::size_t hits = 0;
    ObjectiveVector u(d);
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < d; ++i)
            u[i] = lo[i] + detail::unit_real(rng) * (ref[i] - lo[i]);
        for (const auto& p : pts)
            if (weakly_dominates(p, u)) { ++hits; break; }
    }
    return box * static_cast<double>(hits) / static_cast<double>(samples);
}

// Smallest additive shift e such that A - e weakly dominates R:
// max over r in R of min over a in A of max_i (a_i - r_i).
inline double epsilon_additive(const SolutionSet& a, const SolutionSet& r) {
    require_nonempty(a, "epsilon_additive");
    require_nonempty(r, "epsilon_additive");
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& rv : r) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& av : a) {
            require_same_dim(av, rv);
            double m = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < av.size(); ++i) m = std::max(m, av[i] - rv[i]);
            best = std::min(best, m);
        }
        worst = std::max(worst, best);
    }
    return worst;
}

// Mean over R of the dominance-truncated distance to the nearest member of A.
inline double igd_plus(const SolutionSet& a, const SolutionSet& r) {
    require_nonempty(a, "igd_plus");
    require_nonempty(r, "igd_plus");
    double total = 0.0;
    for (const auto& rv : r) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& av : a) {
            require_same_dim(av, rv);
            double sq = 0.0;
            for (std::size_t i = 0; i < av.size(); ++i) {
                const double gap = std::max(av[i] - rv[i], 0.0);
                sq += gap * gap;
            }
            best = std::min(best, std::sqrt(sq));
        }
        total += best;
    }
    return total / static_cast<double>(r.size());
}

// Mean over W of the best weighted Tchebycheff utility achieved by A,
// anchored at a utopian point z that weakly dominates all of A.
inline double r2(const SolutionSet& a, const std::vector<ObjectiveVector>& w,
                 const ObjectiveVector& z) {
    require_nonempty(a, "r2");
    if (w.empty()) throw std::invalid_argument("r2: empty weight set");
    for (const auto& av : a)
        if (!weakly_dominates(z, av))
            throw std::invalid_argument("r2: utopian point does not weakly dominate the set");
    double total = 0.0;
    for (const auto& wv : w) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& av : a) {
            require_same_dim(av, z);
            double m = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < av.size(); ++i)
                m = std::max(m, wv[i] * std::abs(av[i] - z[i]));
            best = std::min(best, m);
        }
        total += best;
    }
    return total / static_cast<double>(w.size());
}

// Evenly spread convex weight vectors on the simplex (nonnegative, each
// summing to one). Used both for R2 and for decomposition archivers.
inline std::vector<ObjectiveVector> uniform_weights(std::size_t dim, std::size_t count) {
    if (dim < 2 || count < 1) throw std::invalid_argument("uniform_weights: bad arguments");
    if (count == 1) return {ObjectiveVector(dim, 1.0 / static_cast<double>(dim))};
    if (dim == 2) {
        std::vector<ObjectiveVector> out;
        for (std::size_t i = 0; i < count; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(count - 1);
            out.push_back({t, 1.0 - t});
        }
        return out;
    }
    // simplex-lattice (Das-Dennis) with the smallest resolution that yields
    // at least `count` vectors, evenly subsampled down to exactly `count`
    std::vector<ObjectiveVector> lattice;
    std::size_t h = 1;
    while (true) {
        lattice.clear();
        std::vector<std::size_t> part(dim, 0);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
            if (pos + 1 == dim) {
                part[pos] = left;
                ObjectiveVector w(dim);
                for (std::size_t i = 0; i < dim; ++i)
                    w[i] = static_cast<double>(part[i]) / static_cast<double>(h);
                lattice.push_back(std::move(w));
                return;
            }
            for (std::size_t k = 0; k <= left; ++k) { part[pos] = k; rec(pos + 1, left - k); }
        };
        rec(0, h);
        if (lattice.size() >= count) break;
        ++h;
    }
    std::vector<ObjectiveVector> out;
    for (std::size_t j = 0; j < count; ++j)
        out.push_back(lattice[j * lattice.size() / count]);
    return out;
}

enum class IndicatorKind { hypervolume, epsilon_additive, igd_plus, r2 };

inline const char* indicator_name(IndicatorKind k) {
    switch (k) {
        case IndicatorKind::hypervolume: return "hypervolume";
        case IndicatorKind::epsilon_additive: return "epsilon_additive";
        case IndicatorKind::igd_plus: return "igd_plus";
        case IndicatorKind::r2: return "r2";
    }
    return "?";
}

// An indicator identity plus its configuration. score() folds the
// orientation so that smaller is always better, which is what the
// indicator-driven archivers consume.
struct IndicatorSpec {
    IndicatorKind kind = IndicatorKind::epsilon_additive;
    ObjectiveVector reference_point;              // hypervolume
    SolutionSet reference_set;                    // epsilon_additive, igd_plus
    std::vector<ObjectiveVector> weight_set;      // r2
    ObjectiveVector utopian_point;                // r2

    bool maximised() const { return kind == IndicatorKind::hypervolume; }

    void validate(std::size_t dim) const {
        switch (kind) {
            case IndicatorKind::hypervolume:
                if (reference_point.size() != dim)
                    throw std::invalid_argument("hypervolume: reference point has wrong dimension");
                break;
            case IndicatorKind::epsilon_additive:
            case IndicatorKind::igd_plus: {
                require_nonempty(reference_set, indicator_name(kind));
                for (const auto& r : reference_set)
                    if (r.size() != dim)
                        throw std::invalid_argument("indicator reference set has wrong dimension");
                if (!set_equal(minimal_set(reference_set), reference_set))
                    throw std::invalid_argument("indicator reference set must be nondominated");
                break;
            }
            case IndicatorKind::r2: {
                if (weight_set.empty()) throw std::invalid_argument("r2: empty weight set");
                for (const auto& w : weight_set) {
                    if (w.size() != dim) throw std::invalid_argument("r2: weight has wrong dimension");
                    double sum = 0.0;
                    for (double x : w) {
                        if (x < 0.0) throw std::invalid_argument("r2: negative weight component");
                        sum += x;
                    }
                    if (std::abs(sum - 1.0) > 1e-9)
                        throw std::invalid_argument("r2: weight vector does not sum to 1");
                }
                if (utopian_point.size() != dim)
                    throw std::invalid_argument("r2: utopian point has wrong dimension");
                break;
            }
        }
    }

    // Raw indicator value in its native orientation.
    double evaluate(const SolutionSet& a) const {
        switch (kind) {
            case IndicatorKind::hypervolume: return hypervolume(a, reference_point);
            case IndicatorKind::epsilon_additive: return epsilon_additive(a, reference_set);
            case IndicatorKind::igd_plus: return igd_plus(a, reference_set);
            case IndicatorKind::r2: return r2(a, weight_set, utopian_point);
        }
        return 0.0;
    }

    // Value oriented so that smaller is better.
    double score(const SolutionSet& a) const {
        const double v = evaluate(a);
        return maximised() ? -v : v;
    }

    static IndicatorSpec make_hypervolume(ObjectiveVector ref) {
        IndicatorSpec s;
        s.kind = IndicatorKind::hypervolume;
        s.reference_point = std::move(ref);
        return s;
    }
    static IndicatorSpec make_epsilon(SolutionSet reference) {
        IndicatorSpec s;
        s.kind = IndicatorKind::epsilon_additive;
        s.reference_set = std::move(reference);
        return s;
    }
    static IndicatorSpec make_igd_plus(SolutionSet reference) {
        IndicatorSpec s;
        s.kind = IndicatorKind::igd_plus;
        s.reference_set = std::move(reference);
        return s;
    }
    static IndicatorSpec make_r2(std::vector<ObjectiveVector> weights, ObjectiveVector utopian) {
        IndicatorSpec s;
        s.kind = IndicatorKind::r2;
        s.weight_set = std::move(weights);
        s.utopian_point = std::move(utopian);
        return s;
    }
};

}  // namespace moa
