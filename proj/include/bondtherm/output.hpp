#pragma once

// Plain-text writers. Numbers are printed in fixed decimal notation with nine
// significant digits and no exponent, so files diff cleanly across runs.

#include "bondtherm/uq.hpp"

#include <Eigen/Core>

#include <array>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace bondtherm {

std::string format_sig9(double value);

/// Mean and standard deviation per time point and wire, [time][wire].
struct WireSeries {
    std::vector<double> times;
    std::vector<std::string> wire_ids;
    std::vector<std::vector<double>> mean;
    std::vector<std::vector<double>> stddev;
};

WireSeries series_from(const McResult& result);

inline constexpr const char* kTimeseriesHeader = "t_s,wire_id,mean_K,std_K";

void write_timeseries_csv(const WireSeries& series, std::ostream& out);
void write_timeseries_csv(const WireSeries& series, const std::filesystem::path& path);

/// Legacy ASCII VTK, rectilinear grid, nodal temperature and potential.
void write_vtk(const std::array<std::vector<double>, 3>& axes, const Eigen::VectorXd& temperature,
               const Eigen::VectorXd& potential, double t, std::ostream& out);
void write_vtk(const std::array<std::vector<double>, 3>& axes, const Eigen::VectorXd& temperature,
               const Eigen::VectorXd& potential, double t, const std::filesystem::path& path);

struct McSummary {
    double sigma_mc = 0.0;
    double error_mc = 0.0;
    std::size_t samples = 0;
    double e_max_end = 0.0;
    std::optional<double> t_cross_critical;
    std::uint64_t seed = 0;
};

McSummary summarize(const McResult& result, double t_critical, double k_sigma);

/// key=value lines: sigma_mc_K, error_mc_K, m_samples, e_max_end_K,
/// t_cross_critical_s (empty when never crossed), seed.
void write_summary(const McSummary& summary, std::ostream& out);
void write_summary(const McSummary& summary, const std::filesystem::path& path);

/// Ordered key=value pairs, values written verbatim.
void write_key_values(const std::vector<std::pair<std::string, std::string>>& entries,
                      const std::filesystem::path& path);

}  // namespace bondtherm
