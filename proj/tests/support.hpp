#pragma once

// Shared fixtures for the unit tests.

#include "bondtherm/grid.hpp"
#include "bondtherm/materials.hpp"

#include <random>
#include <vector>

namespace testing {

inline std::vector<double> uniform_ticks(double lo, double hi, int cells) {
    std::vector<double> t;
    for (int i = 0; i <= cells; ++i) t.push_back(lo + (hi - lo) * i / cells);
    return t;
}

/// Strictly increasing ticks with random spacing.
inline std::vector<double> random_ticks(std::mt19937_64& rng, int min_ticks, int max_ticks) {
    std::uniform_int_distribution<int> count(min_ticks, max_ticks);
    std::uniform_real_distribution<double> step(0.1, 2.0);
    std::uniform_real_distribution<double> start(-5.0, 5.0);
    std::vector<double> t{start(rng)};
    const int n = count(rng);
    for (int i = 1; i < n; ++i) t.push_back(t.back() + step(rng));
    return t;
}

inline bondtherm::MaterialLaw copper(double alpha_sigma = 0.0) {
    return {"copper", 5.80e7, 398.0, 3.45e6, alpha_sigma, 0.0, 300.0};
}

inline bondtherm::MaterialLaw epoxy() { return {"epoxy", 1e-6, 0.87, 1.6e6, 0.0, 0.0, 300.0}; }

}  // namespace testing
