#include "bondtherm/uq.hpp"

#include "bondtherm/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

namespace bondtherm {

namespace {

constexpr std::size_t kSmallSampleWarning = 30;
constexpr int kMaxRejections = 1'000'000;

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

std::vector<std::string> validate(const ElongationDist& d) {
    std::vector<std::string> errors;
    if (!(d.sigma >= 0.0)) errors.emplace_back("uq.sigma: must be >= 0");
    if (!(d.lo < d.hi)) errors.emplace_back("uq.lo/uq.hi: truncation window is empty (lo >= hi)");
    if (!(d.hi < 1.0)) errors.emplace_back("uq.hi: must be < 1 to keep wire lengths finite");
    if (!(d.lo >= 0.0)) errors.emplace_back("uq.lo: must be >= 0 (wires cannot be shorter than d)");
    if (!std::isfinite(d.mu)) errors.emplace_back("uq.mu: must be finite");
    return errors;
}

NormalFit fit_normal(std::span<const double> samples) {
    if (samples.size() < 2) {
        throw DataError("elongation fit needs at least 2 samples, got " + std::to_string(samples.size()));
    }
    const double n = static_cast<double>(samples.size());
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double ss = 0.0;
    for (double s : samples) ss += (s - mean) * (s - mean);
    NormalFit fit;
    fit.dist.mu = mean;
    fit.dist.sigma = std::sqrt(ss / (n - 1.0));
    fit.count = samples.size();
    if (samples.size() < kSmallSampleWarning) {
        fit.warning = "elongation fit uses only " + std::to_string(samples.size()) +
                      " samples; the normal distribution is poorly constrained";
    }
    return fit;
}

std::vector<double> read_samples(std::istream& in) {
    std::vector<double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream is(line);
        double v = 0.0;
        if (!(is >> v)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw DataError("line " + std::to_string(line_no) + ": not a number: '" + line + "'");
        }
        std::string rest;
        if (is >> rest) throw DataError("line " + std::to_string(line_no) + ": expected one value per line");
        values.push_back(v);
    }
    return values;
}

std::vector<double> read_samples_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open elongation samples file '" + path + "'");
    try {
        return read_samples(in);
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

Rng sample_stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x6274u};
    return Rng(seq);
}

double draw_elongation(const ElongationDist& d, Rng& rng) {
    if (auto errors = validate(d); !errors.empty()) throw ConfigError(std::move(errors));
    if (d.sigma == 0.0) {
        if (d.mu < d.lo || d.mu > d.hi) {
            throw ConfigError("uq: deterministic elongation mu lies outside the truncation window");
        }
        return d.mu;
    }
    const double mass = normal_cdf((d.hi - d.mu) / d.sigma) - normal_cdf((d.lo - d.mu) / d.sigma);
    if (!(mass > 1e-12)) {
        throw ConfigError("uq: truncation window [lo, hi] excludes essentially all probability mass");
    }
    std::normal_distribution<double> normal(d.mu, d.sigma);
    for (int i = 0; i < kMaxRejections; ++i) {
        const double v = normal(rng);
        if (v >= d.lo && v <= d.hi) return v;
    }
    throw NumericalError("uq: rejection sampling exceeded the iteration limit");
}

std::vector<double> sample_elongations(const ElongationDist& dist, std::size_t wire_count, Rng& rng) {
    std::vector<double> out;
    out.reserve(wire_count);
    for (std::size_t j = 0; j < wire_count; ++j) out.push_back(draw_elongation(dist, rng));
    return out;
}

std::vector<double> sample_lengths(const ElongationDist& dist, std::span<const WireSpec> wires, Rng& rng) {
    std::vector<double> out;
    out.reserve(wires.size());
    for (const auto& w : wires) out.push_back(w.length_for(draw_elongation(dist, rng)));
    return out;
}

McResult run_mc(const SampleFunction& sample, std::vector<double> times, std::vector<std::string> wire_ids,
                const McOptions& options) {
    if (options.samples < 1) throw ConfigError("uq.samples: must be >= 1");
    const std::size_t m = options.samples;
    const std::size_t nt = times.size();
    const std::size_t nw = wire_ids.size();

    std::vector<Trajectory> trajectories(m);
    std::vector<std::optional<std::string>> errors(m);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < m; i = next.fetch_add(1)) {
            try {
                Rng rng = sample_stream(options.seed, i);
                Trajectory tr = sample(i, rng);
                bool ok = tr.size() == nt;
                for (const auto& row : tr) ok = ok && row.size() == nw;
                if (!ok) throw NumericalError("sample trajectory has the wrong shape");
                trajectories[i] = std::move(tr);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const unsigned n_workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(m)));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    }

    McResult r;
    r.seed = options.seed;
    for (std::size_t i = 0; i < m; ++i) {
        if (errors[i]) r.failures.push_back({i, *errors[i]});
    }
    if (static_cast<double>(r.failures.size()) > options.max_failure_fraction * static_cast<double>(m)) {
        std::ostringstream os;
        os << r.failures.size() << " of " << m << " Monte Carlo samples failed; first failure (sample "
           << r.failures.front().index << "): " << r.failures.front().message;
        throw NumericalError(os.str());
    }
    r.samples = m - r.failures.size();
    const double count = static_cast<double>(r.samples);

    r.times = std::move(times);
    r.wire_ids = std::move(wire_ids);
    r.mean.assign(nt, std::vector<double>(nw, 0.0));
    r.stddev.assign(nt, std::vector<double>(nw, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        if (errors[i]) continue;
        for (std::size_t t = 0; t < nt; ++t)
            for (std::size_t j = 0; j < nw; ++j) r.mean[t][j] += trajectories[i][t][j];
    }
    for (auto& row : r.mean)
        for (double& v : row) v /= count;
    if (r.samples > 1) {
        for (std::size_t i = 0; i < m; ++i) {
            if (errors[i]) continue;
            for (std::size_t t = 0; t < nt; ++t)
                for (std::size_t j = 0; j < nw; ++j) {
                    const double dev = trajectories[i][t][j] - r.mean[t][j];
                    r.stddev[t][j] += dev * dev;
                }
        }
        for (auto& row : r.stddev)
            for (double& v : row) v = std::sqrt(v / (count - 1.0));
    }

    r.e_max.assign(nt, 0.0);
    r.e_max_wire.assign(nt, 0);
    for (std::size_t t = 0; t < nt && nw > 0; ++t) {
        const auto it = std::max_element(r.mean[t].begin(), r.mean[t].end());
        r.e_max[t] = *it;
        r.e_max_wire[t] = static_cast<std::size_t>(it - r.mean[t].begin());
    }
    if (nt > 0 && nw > 0) {
        r.hottest_wire = r.e_max_wire.back();
        r.sigma_mc = r.stddev.back()[r.hottest_wire];
    }
    r.error_mc = mc_error(r.sigma_mc, r.samples);
    return r;
}

std::optional<double> critical_crossing(const McResult& result, double t_critical, double k) {
    if (k < 0.0) throw std::invalid_argument("critical_crossing: k must be >= 0");
    for (std::size_t t = 0; t < result.times.size(); ++t) {
        const double s = result.stddev[t][result.e_max_wire[t]];
        if (result.e_max[t] + k * s >= t_critical) return result.times[t];
    }
    return std::nullopt;
}

}  // namespace bondtherm
