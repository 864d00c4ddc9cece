// shared helpers for the test suites: seeded integer-lattice generators so
// every dominance comparison and indicator tie in the tests is exact
#pragma once

#include <random>

#include "moa/core.hpp"

namespace testsupport {

inline moa::ObjectiveVector random_vec(std::mt19937_64& rng, std::size_t d, int hi) {
    moa::ObjectiveVector v(d);
    for (auto& x : v) x = static_cast<double>(moa::detail::bounded(rng, hi + 1));
    return v;
}

inline moa::SolutionSet random_set(std::mt19937_64& rng, std::size_t count, std::size_t d,
                                   int hi) {
    moa::SolutionSet s;
    for (std::size_t i = 0; i < count; ++i) s.push_back(random_vec(rng, d, hi));
    return s;
}

inline moa::SolutionSet random_nondominated_set(std::mt19937_64& rng, std::size_t count,
                                                std::size_t d, int hi) {
    moa::SolutionSet pool = random_set(rng, 4 * count + 8, d, hi);
    moa::SolutionSet kept;
    for (const auto& c : pool) {
        bool ok = true;
        for (const auto& k : kept)
            if (moa::weakly_dominates(k, c) || moa::weakly_dominates(c, k)) { ok = false; break; }
        if (ok) kept.push_back(c);
        if (kept.size() == count) break;
    }
    return kept.empty() ? moa::SolutionSet{random_vec(rng, d, hi)} : kept;
}

}  // namespace testsupport
