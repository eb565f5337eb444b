#pragma once

// Monte Carlo over uncertain bonding-wire lengths. The relative elongation
// delta = (L - d) / L of every wire is drawn independently from a normal
// distribution truncated to [lo, hi]; statistics are aggregated per wire and
// time point in sample-index order, so results do not depend on the number
// of workers.

#include "bondtherm/bondwire.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace bondtherm {

struct ElongationDist {
    double mu = 0.17;
    double sigma = 0.048;
    double lo = 0.0;
    double hi = 0.9;
};

std::vector<std::string> validate(const ElongationDist& dist);

struct NormalFit {
    ElongationDist dist;
    std::size_t count = 0;
    std::optional<std::string> warning;
};

/// Sample mean and unbiased standard deviation. Throws DataError for fewer
/// than two samples; warns below 30 samples.
NormalFit fit_normal(std::span<const double> samples);

/// One value per line; '#' starts a comment, blank lines are skipped.
std::vector<double> read_samples(std::istream& in);
std::vector<double> read_samples_file(const std::string& path);

using Rng = std::mt19937_64;

/// Independent generator for sample `index`, keyed by (seed, index).
Rng sample_stream(std::uint64_t seed, std::uint64_t index);

/// Rejection sampling from the truncated normal. Throws ConfigError when the
/// truncation window carries no probability mass.
double draw_elongation(const ElongationDist& dist, Rng& rng);

std::vector<double> sample_elongations(const ElongationDist& dist, std::size_t wire_count, Rng& rng);

/// L_j = d_j / (1 - delta_j) with delta_j drawn independently per wire.
std::vector<double> sample_lengths(const ElongationDist& dist, std::span<const WireSpec> wires, Rng& rng);

/// Wire temperatures of one sample, indexed [time][wire].
using Trajectory = std::vector<std::vector<double>>;
using SampleFunction = std::function<Trajectory(std::uint64_t index, Rng& rng)>;

struct McOptions {
    std::size_t samples = 1;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    double max_failure_fraction = 0.01;
};

struct SampleFailure {
    std::size_t index = 0;
    std::string message;
};

struct McResult {
    std::vector<double> times;
    std::vector<std::string> wire_ids;
    std::vector<std::vector<double>> mean;    // E_j(t), [time][wire]
    std::vector<std::vector<double>> stddev;  // s_j(t), [time][wire]
    std::vector<double> e_max;                // max_j E_j(t)
    std::vector<std::size_t> e_max_wire;      // argmax_j E_j(t)
    std::size_t hottest_wire = 0;             // argmax_j E_j(t_end)
    double sigma_mc = 0.0;                    // std of the hottest wire at t_end
    double error_mc = 0.0;                    // sigma_mc / sqrt(samples)
    std::size_t samples = 0;                  // successful samples
    std::uint64_t seed = 0;
    std::vector<SampleFailure> failures;
};

inline double mc_error(double sigma, std::size_t samples) {
    return sigma / std::sqrt(static_cast<double>(samples));
}

/// Runs `options.samples` evaluations on `options.workers` threads. Failed
/// samples are recorded; throws NumericalError when more than
/// `max_failure_fraction` of them fail.
McResult run_mc(const SampleFunction& sample, std::vector<double> times, std::vector<std::string> wire_ids,
                const McOptions& options);

/// Earliest time at which E_max(t) + k s(t) reaches `t_critical`, with s(t)
/// the standard deviation of the wire attaining E_max(t).
std::optional<double> critical_crossing(const McResult& result, double t_critical, double k);

}  // namespace bondtherm
