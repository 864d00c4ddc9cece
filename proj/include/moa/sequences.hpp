// Synthetic sequence generation (front shapes x order policies x batch
// policies), the three counterexample scenarios, and the on-disk CSV
// sequence format.
//
// Generated coordinates are strictly positive so every archiver, including
// the log-grid ones, accepts every generated sequence.

#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "moa/archivers.hpp"
#include "moa/properties.hpp"

namespace moa {

enum class FrontShape { linear, concave, convex, disconnected, degenerate };

inline const char* front_shape_name(FrontShape s) {
    switch (s) {
        case FrontShape::linear: return "linear";
        case FrontShape::concave: return "concave";
        case FrontShape::convex: return "convex";
        case FrontShape::disconnected: return "disconnected";
        case FrontShape::degenerate: return "degenerate";
    }
    return "?";
}

struct FrontSpec {
    FrontShape shape = FrontShape::linear;
    std::size_t dimension = 2;
    std::size_t point_count = 10;            // mutually nondominated points
    std::size_t dominated_noise_count = 0;   // strictly dominated extras
    std::uint64_t seed = 0;
    bool lattice = true;                     // snap to integers for exact ties
};

namespace detail {

// keep candidates that are mutually nondominated with everything kept
inline SolutionSet greedy_nondominated(const SolutionSet& candidates, std::size_t want) {
    SolutionSet kept;
    for (const auto& c : candidates) {
        bool ok = true;
        for (const auto& k : kept)
            if (weakly_dominates(k, c) || weakly_dominates(c, k)) { ok = false; break; }
        if (ok) kept.push_back(c);
        if (kept.size() == want) break;
    }
    return kept;
}

inline ObjectiveVector snap(const ObjectiveVector& v, bool lattice) {
    if (!lattice) return v;
    ObjectiveVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::round(v[i]);
    return out;
}

}  // namespace detail

// n mutually nondominated points on the requested shape plus m dominated
// noise points. The first n returned entries are the front, the rest the
// noise.
inline SolutionSet sample_ground_set(const FrontSpec& spec) {
    if (spec.point_count < 1 || spec.dimension < 2)
        throw std::invalid_argument("sample_ground_set: need n >= 1 and d >= 2");
    const std::size_t n = spec.point_count;
    const std::size_t d = spec.dimension;
    std::mt19937_64 rng(spec.seed);
    SolutionSet front;

    switch (spec.shape) {
        case FrontShape::linear: {
            const double total = 5.0 * static_cast<double>(n > 1 ? n - 1 : 1);
            if (d == 2) {
                for (std::size_t i = 0; i < n; ++i) {
                    const double x = n > 1 ? 5.0 * static_cast<double>(i) : total / 2.0;
                    front.push_back({1.0 + x, 1.0 + total - x});
                }
            } else {
                // distinct lattice compositions of the simplex sum
                std::size_t attempts = 0;
                while (front.size() < n) {
                    if (++attempts > 1000 * n + 1000)
                        throw std::invalid_argument("sample_ground_set: lattice too small for n points");
                    std::vector<double> cuts{0.0, total};
                    for (std::size_t k = 0; k + 1 < d; ++k)
                        cuts.push_back(spec.lattice
                                           ? static_cast<double>(detail::bounded(rng, static_cast<std::size_t>(total) + 1))
                                           : detail::unit_real(rng) * total);
                    std::sort(cuts.begin(), cuts.end());
                    ObjectiveVector p(d);
                    for (std::size_t k = 0; k < d; ++k) p[k] = 1.0 + cuts[k + 1] - cuts[k];
                    if (!contains(front, p)) front.push_back(p);
                }
            }
            break;
        }
        case FrontShape::concave:
        case FrontShape::convex: {
            const double radius = 5.0 * static_cast<double>(n + 1);
            SolutionSet candidates;
            const std::size_t extra = 8 * n + 16;
            for (std::size_t i = 0; i < extra; ++i) {
                ObjectiveVector dir(d);
                if (d == 2) {
                    const double lo = 0.02, hi = std::acos(-1.0) / 2.0 - 0.02;
                    const double theta =
                        (i < n) ? lo + (hi - lo) * (n == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(n - 1))
                                : lo + (hi - lo) * detail::unit_real(rng);
                    dir = {std::cos(theta), std::sin(theta)};
                } else {
                    double norm = 0.0;
                    for (std::size_t k = 0; k < d; ++k) {
                        dir[k] = 0.05 + detail::unit_real(rng);
                        norm += dir[k] * dir[k];
                    }
                    norm = std::sqrt(norm);
                    for (double& x : dir) x /= norm;
                }
                ObjectiveVector p(d);
                for (std::size_t k = 0; k < d; ++k)
                    p[k] = spec.shape == FrontShape::concave
                               ? 1.0 + radius * dir[k]
                               : 1.0 + radius * (1.0 - dir[k]);
                candidates.push_back(detail::snap(p, spec.lattice));
            }
            front = detail::greedy_nondominated(candidates, n);
            if (front.size() < n)
                throw std::invalid_argument("sample_ground_set: lattice too small for n points");
            break;
        }
        case FrontShape::disconnected: {
            // linear staircase with the middle band removed
            const std::size_t wide = 2 * n + 2;
            FrontSpec inner = spec;
            inner.shape = FrontShape::linear;
            inner.point_count = wide;
            inner.dominated_noise_count = 0;
            SolutionSet line = sample_ground_set(inner);
            std::sort(line.begin(), line.end());
            const std::size_t take_lo = (n + 1) / 2;
            for (std::size_t i = 0; i < take_lo; ++i) front.push_back(line[i]);
            for (std::size_t i = wide - (n - take_lo); i < wide; ++i) front.push_back(line[i]);
            break;
        }
        case FrontShape::degenerate: {
            if (d < 3)
                throw std::invalid_argument("sample_ground_set: degenerate slice needs d >= 3");
            FrontSpec inner = spec;
            inner.shape = FrontShape::linear;
            inner.dimension = d - 1;
            inner.dominated_noise_count = 0;
            for (auto& p : sample_ground_set(inner)) {
                p.push_back(7.0);   // shared fixed coordinate
                front.push_back(p);
            }
            break;
        }
    }

    SolutionSet out = front;
    for (std::size_t i = 0; i < spec.dominated_noise_count; ++i) {
        ObjectiveVector p = front[detail::bounded(rng, front.size())];
        for (double& x : p)
            x += spec.lattice ? static_cast<double>(1 + detail::bounded(rng, 5))
                              : 0.25 + 5.0 * detail::unit_real(rng);
        out.push_back(std::move(p));
    }
    return out;
}

enum class OrderKind { shuffle, lexicographic_sweep, extremes_first, replay };

inline const char* order_kind_name(OrderKind k) {
    switch (k) {
        case OrderKind::shuffle: return "shuffle";
        case OrderKind::lexicographic_sweep: return "lexicographic_sweep";
        case OrderKind::extremes_first: return "extremes_first";
        case OrderKind::replay: return "replay";
    }
    return "?";
}

struct OrderPolicy {
    OrderKind kind = OrderKind::shuffle;
    std::uint64_t seed = 0;
};

// Concatenate `passes` permutations of Y under the policy, chunked into
// batches of batch_size (the last batch of a run may be smaller).
inline Sequence order_and_batch(const SolutionSet& y, const OrderPolicy& policy,
                                std::size_t batch_size, std::size_t passes) {
    require_nonempty(y, "order_and_batch");
    if (batch_size < 1 || passes < 1)
        throw std::invalid_argument("order_and_batch: batch_size and passes must be >= 1");
    std::mt19937_64 rng(policy.seed);
    SolutionSet flat;
    for (std::size_t pass = 0; pass < passes; ++pass) {
        SolutionSet perm = y;
        switch (policy.kind) {
            case OrderKind::shuffle:
                detail::shuffle(perm, rng);
                break;
            case OrderKind::lexicographic_sweep:
                std::sort(perm.begin(), perm.end());
                break;
            case OrderKind::extremes_first: {
                // per-objective minimisers first, remainder shuffled
                SolutionSet rest = y;
                perm.clear();
                const std::size_t d = y.front().size();
                for (std::size_t m = 0; m < d; ++m) {
                    std::size_t best = 0;
                    for (std::size_t i = 1; i < rest.size(); ++i)
                        if (rest[i][m] < rest[best][m] ||
                            (rest[i][m] == rest[best][m] && rest[i] < rest[best]))
                            best = i;
                    perm.push_back(rest[best]);
                    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
                    if (rest.empty()) break;
                }
                detail::shuffle(rest, rng);
                perm.insert(perm.end(), rest.begin(), rest.end());
                break;
            }
            case OrderKind::replay:
                break;   // stored order verbatim
        }
        flat.insert(flat.end(), perm.begin(), perm.end());
    }
    Sequence seq;
    seq.ground = canonical_set(y);
    for (std::size_t i = 0; i < flat.size(); i += batch_size) {
        Batch b;
        b.timestep = static_cast<int>(seq.batches.size());
        for (std::size_t k = i; k < std::min(i + batch_size, flat.size()); ++k)
            b.solutions.push_back(flat[k]);
        seq.batches.push_back(std::move(b));
    }
    return seq;
}

// A hand-constructed sequence reproducing one of the counterexample
// figures, the archiver it targets, and the violation it must produce.
struct Scenario {
    std::string name;
    Sequence sequence;
    ArchiverConfig archiver;
    PropertyKind expected_violation = PropertyKind::set_monotone;
    Witness expected;                 // skeleton of the expected witness
    bool has_control = false;
    ArchiverConfig control;           // same sequence, violation-free config
};

inline Sequence one_at_a_time(const SolutionSet& order) {
    Sequence seq;
    seq.ground = canonical_set(order);
    for (std::size_t i = 0; i < order.size(); ++i)
        seq.batches.push_back(Batch{static_cast<int>(i), {order[i]}});
    return seq;
}

inline Scenario scenario(const std::string& name) {
    Scenario sc;
    sc.name = name;
    if (name == "fig1_crowding") {
        // crowding eviction lets a worse spread replace a Pareto point
        sc.sequence = one_at_a_time({{0, 10}, {2, 7}, {10, 0}, {6, 2}, {4, 7.5}});
        sc.archiver.kind = ArchiverKind::nsga2;
        sc.archiver.capacity = 3;
        sc.expected_violation = PropertyKind::set_monotone;
        sc.expected = Witness{3, 5, {}, {}};
    } else if (name == "fig2_adom") {
        // a full archive rejects c, later admits a solution c dominates
        sc.sequence = one_at_a_time({{4, 5}, {5, 4}, {1, 8}, {3, 3}, {2, 9}});
        sc.archiver.kind = ArchiverKind::a_dom;
        sc.archiver.capacity = 2;
        sc.expected_violation = PropertyKind::pareto_subset;
        sc.expected = Witness{5, 5, {1, 8}, {2, 9}};
    } else if (name == "fig4_adaptive_hv") {
        // moving the hypervolume reference point deteriorates the archive:
        // (4,3) is squeezed out at t=4 and the dominated (6,3) enters at
        // t=7; the identical sequence under a fixed reference stays clean.
        // Every eviction along the way is tie-free, so the trajectory does
        // not depend on the archiver seed.
        const SolutionSet order{{6, 6}, {3, 4}, {4, 3}, {1, 8}, {8, 2}, {9, 1}, {6, 3}};
        sc.sequence = one_at_a_time(order);
        sc.archiver.kind = ArchiverKind::indicator_mu1;
        sc.archiver.capacity = 2;
        sc.archiver.indicator.kind = IndicatorKind::hypervolume;
        sc.archiver.ref_policy = RefPolicy::adaptive_nadir_plus_one;
        sc.archiver.tie_policy = TiePolicy::reject_new;
        sc.expected_violation = PropertyKind::set_monotone;
        sc.expected = Witness{3, 7, {}, {}};
        sc.has_control = true;
        sc.control = sc.archiver;
        sc.control.ref_policy = RefPolicy::fixed;
        sc.control.indicator = IndicatorSpec::make_hypervolume({10, 10});
    } else {
        throw std::invalid_argument("unknown scenario: " + name);
    }
    return sc;
}

// --- sequence file format -------------------------------------------------
//
// CSV, UTF-8, header `t,f1,...,fd`; one solution per row; t is the
// non-decreasing batch index. Values render with shortest round-trip
// precision, so read(write(x)) is bit-exact.

struct FormatError : std::runtime_error {
    std::size_t line;
    FormatError(std::size_t line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

namespace detail {

inline std::string render_double(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline double parse_double(const std::string& tok, std::size_t line) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto r = std::from_chars(first, last, v);
    if (r.ec != std::errc() || r.ptr != last)
        throw FormatError(line, "bad numeric value '" + tok + "'");
    if (!std::isfinite(v))
        throw FormatError(line, "non-finite objective value");
    return v;
}

inline std::vector<std::string> split_csv(const std::string& row) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : row) {
        if (c == ',') { out.push_back(cur); cur.clear(); }
        else if (c != '\r') cur += c;
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

inline void write_sequence(const Sequence& seq, std::ostream& os) {
    const std::size_t d = seq.dimension();
    os << "t";
    for (std::size_t i = 1; i <= d; ++i) os << ",f" << i;
    os << "\n";
    for (const auto& b : seq.batches)
        for (const auto& s : b.solutions) {
            os << b.timestep;
            for (double v : s) os << "," << detail::render_double(v);
            os << "\n";
        }
}

inline void write_sequence(const Sequence& seq, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_sequence(seq, os);
}

inline Sequence read_sequence(std::istream& is) {
    std::string row;
    std::size_t line = 0;
    if (!std::getline(is, row)) throw FormatError(1, "missing header");
    ++line;
    const auto header = detail::split_csv(row);
    if (header.size() < 3 || header[0] != "t")
        throw FormatError(1, "header must be t,f1,...,fd with d >= 2");
    for (std::size_t i = 1; i < header.size(); ++i)
        if (header[i] != "f" + std::to_string(i))
            throw FormatError(1, "header must be t,f1,...,fd");
    const std::size_t d = header.size() - 1;

    Sequence seq;
    long long prev_t = -1;
    while (std::getline(is, row)) {
        ++line;
        if (row.empty()) continue;
        const auto cols = detail::split_csv(row);
        if (cols.size() != d + 1)
            throw FormatError(line, "expected " + std::to_string(d + 1) + " columns, got " +
                                        std::to_string(cols.size()));
        long long t = 0;
        {
            const auto& tok = cols[0];
            auto r = std::from_chars(tok.data(), tok.data() + tok.size(), t);
            if (r.ec != std::errc() || r.ptr != tok.data() + tok.size() || t < 0)
                throw FormatError(line, "bad batch index '" + tok + "'");
        }
        if (t < prev_t) throw FormatError(line, "batch index decreases");
        ObjectiveVector s(d);
        for (std::size_t i = 0; i < d; ++i) s[i] = detail::parse_double(cols[i + 1], line);
        if (t != prev_t) {
            seq.batches.push_back(Batch{static_cast<int>(t), {}});
            prev_t = t;
        }
        seq.batches.back().solutions.push_back(std::move(s));
    }
    if (seq.batches.empty()) throw FormatError(line, "no solutions");
    seq.ground = canonical_set(seq.all_solutions());
    return seq;
}

inline Sequence read_sequence(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open sequence file: " + path);
    return read_sequence(is);
}

// Trajectory files reuse the row format with the snapshot id in place of
// the batch index. Snapshot 0 is the empty initial archive and has no rows.
inline void write_trajectory(const Trajectory& traj, std::ostream& os) {
    std::size_t d = 0;
    for (const auto& snap : traj.snapshots)
        if (!snap.empty()) { d = snap.front().size(); break; }
    os << "snapshot";
    for (std::size_t i = 1; i <= d; ++i) os << ",f" << i;
    os << "\n";
    for (std::size_t t = 1; t < traj.snapshots.size(); ++t)
        for (const auto& s : traj.snapshots[t]) {
            os << t;
            for (double v : s) os << "," << detail::render_double(v);
            os << "\n";
        }
}

inline void write_trajectory(const Trajectory& traj, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_trajectory(traj, os);
}

inline std::vector<SolutionSet> read_trajectory_snapshots(std::istream& is) {
    std::string row;
    std::size_t line = 0;
    if (!std::getline(is, row)) throw FormatError(1, "missing header");
    ++line;
    const auto header = detail::split_csv(row);
    if (header.size() < 3 || header[0] != "snapshot")
        throw FormatError(1, "header must be snapshot,f1,...,fd with d >= 2");
    const std::size_t d = header.size() - 1;
    std::vector<SolutionSet> snapshots(1);
    long long prev = 0;
    while (std::getline(is, row)) {
        ++line;
        if (row.empty()) continue;
        const auto cols = detail::split_csv(row);
        if (cols.size() != d + 1) throw FormatError(line, "wrong column count");
        long long t = 0;
        auto r = std::from_chars(cols[0].data(), cols[0].data() + cols[0].size(), t);
        if (r.ec != std::errc() || t < 1) throw FormatError(line, "bad snapshot id");
        if (t < prev) throw FormatError(line, "snapshot id decreases");
        prev = t;
        while (snapshots.size() <= static_cast<std::size_t>(t)) snapshots.emplace_back();
        ObjectiveVector s(d);
        for (std::size_t i = 0; i < d; ++i) s[i] = detail::parse_double(cols[i + 1], line);
        snapshots[static_cast<std::size_t>(t)].push_back(std::move(s));
    }
    return snapshots;
}

inline std::vector<SolutionSet> read_trajectory_snapshots(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open trajectory file: " + path);
    return read_trajectory_snapshots(is);
}

// Rebind stored snapshots to the sequence that produced them so the
// checkers can re-verify reported violations.
inline Trajectory make_trajectory(const Sequence& seq, std::vector<SolutionSet> snapshots) {
    if (snapshots.size() != seq.batches.size() + 1)
        throw std::invalid_argument("make_trajectory: snapshot count does not match sequence");
    Trajectory traj;
    traj.snapshots = std::move(snapshots);
    traj.seen_prefix.clear();
    traj.seen_prefix.push_back(0);
    for (const auto& b : seq.batches) {
        traj.seen_pool.insert(traj.seen_pool.end(), b.solutions.begin(), b.solutions.end());
        traj.seen_prefix.push_back(traj.seen_pool.size());
    }
    return traj;
}

}  // namespace moa
