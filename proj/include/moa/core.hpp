// Dominance relations on objective vectors and solution sets.
//
// Minimisation throughout: smaller objective values are preferred.
// Solutions are points in objective space; there is no decision space here.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace moa {

using ObjectiveVector = std::vector<double>;

// A finite collection of objective vectors. Duplicates are allowed;
// contexts that forbid them enforce that themselves.
using SolutionSet = std::vector<ObjectiveVector>;

inline void require_same_dim(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("objective vectors differ in dimension (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
}

inline void require_nonempty(const SolutionSet& s, const char* what) {
    if (s.empty())
        throw std::invalid_argument(std::string(what) + ": empty solution set");
}

// y <= y' componentwise.
inline bool weakly_dominates(const ObjectiveVector& y, const ObjectiveVector& y2) {
    require_same_dim(y, y2);
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] > y2[i]) return false;
    return true;
}

// y <= y' componentwise and y != y' (exact equality).
inline bool dominates(const ObjectiveVector& y, const ObjectiveVector& y2) {
    return weakly_dominates(y, y2) && y != y2;
}

// Minimal elements of P: members dominated by no other member.
// Duplicates of a minimal element are all retained (equal vectors do not
// dominate each other).
inline SolutionSet minimal_set(const SolutionSet& p) {
    require_nonempty(p, "minimal_set");
    SolutionSet out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < p.size() && !dominated; ++j)
            dominated = (j != i) && dominates(p[j], p[i]);
        if (!dominated) out.push_back(p[i]);
    }
    return out;
}

// Every b in B is weakly dominated by some a in A.
inline bool set_weakly_dominates(const SolutionSet& a, const SolutionSet& b) {
    require_nonempty(a, "set_weakly_dominates");
    require_nonempty(b, "set_weakly_dominates");
    for (const auto& y2 : b) {
        bool covered = false;
        for (const auto& y : a)
            if (weakly_dominates(y, y2)) { covered = true; break; }
        if (!covered) return false;
    }
    return true;
}

// A is better than B: A weakly dominates B and some a in A is weakly
// dominated by no member of B (equivalently A<=B and not B<=A).
inline bool better(const SolutionSet& a, const SolutionSet& b) {
    if (!set_weakly_dominates(a, b)) return false;
    for (const auto& ya : a) {
        bool covered = false;
        for (const auto& yb : b)
            if (weakly_dominates(yb, ya)) { covered = true; break; }
        if (!covered) return true;
    }
    return false;
}

inline bool contains(const SolutionSet& s, const ObjectiveVector& y) {
    return std::find(s.begin(), s.end(), y) != s.end();
}

// Lexicographically sorted copy with exact duplicates removed.
// Canonical form used for set equality and hashing of archives.
inline SolutionSet canonical_set(SolutionSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline SolutionSet distinct(const SolutionSet& s) { return canonical_set(s); }

// Equality as sets of objective vectors (duplicates and order ignored).
inline bool set_equal(const SolutionSet& a, const SolutionSet& b) {
    return canonical_set(a) == canonical_set(b);
}

// True when every member of a also occurs in b (set inclusion, duplicates
// ignored).
inline bool subset_of(const SolutionSet& a, const SolutionSet& b) {
    for (const auto& y : a)
        if (!contains(b, y)) return false;
    return true;
}

inline bool has_duplicates(const SolutionSet& s) {
    return canonical_set(s).size() != s.size();
}

// One step of an input sequence: the solutions presented at timestep t.
struct Batch {
    int timestep = 0;
    SolutionSet solutions;
};

// An input sequence: batches in arrival order, optionally tied to the
// finite ground set the batches were drawn from.
struct Sequence {
    std::vector<Batch> batches;
    SolutionSet ground;   // distinct universe; empty when unknown

    std::size_t dimension() const {
        for (const auto& b : batches)
            if (!b.solutions.empty()) return b.solutions.front().size();
        return 0;
    }
    SolutionSet all_solutions() const {
        SolutionSet out;
        for (const auto& b : batches)
            out.insert(out.end(), b.solutions.begin(), b.solutions.end());
        return out;
    }
    // Distinct solutions appearing anywhere in the sequence.
    SolutionSet universe() const {
        return ground.empty() ? canonical_set(all_solutions()) : ground;
    }
};

// Archive history A^(0..T) plus the cumulative seen-set Y^(t).
// snapshots[0] is the empty initial archive; snapshots[t] is the archive
// after folding batch t-1. seen_prefix[t] counts solutions seen through
// snapshot t, indexing into seen_pool.
struct Trajectory {
    std::vector<SolutionSet> snapshots;
    SolutionSet seen_pool;
    std::vector<std::size_t> seen_prefix;
    std::uint64_t rng_seed = 0;   // archiver RNG seed, recorded for replay

    Trajectory() : snapshots(1), seen_prefix(1, 0) {}

    std::size_t steps() const { return snapshots.size() - 1; }

    std::span<const ObjectiveVector> seen_at(std::size_t t) const {
        return {seen_pool.data(), seen_prefix.at(t)};
    }
    void record(SolutionSet archive, const SolutionSet& batch) {
        seen_pool.insert(seen_pool.end(), batch.begin(), batch.end());
        seen_prefix.push_back(seen_pool.size());
        snapshots.push_back(std::move(archive));
    }
};

namespace detail {

// Unbiased draw from [0, n) via rejection; deterministic across platforms,
// unlike std::uniform_int_distribution.
inline std::size_t bounded(std::mt19937_64& rng, std::size_t n) {
    if (n == 0) throw std::invalid_argument("bounded: empty range");
    const std::uint64_t span = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                (std::numeric_limits<std::uint64_t>::max() % span);
    std::uint64_t x;
    do { x = rng(); } while (x >= limit);
    return static_cast<std::size_t>(x % span);
}

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[bounded(rng, i)]);
}

inline double unit_real(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

}  // namespace moa
