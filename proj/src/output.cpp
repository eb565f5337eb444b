#include "bondtherm/output.hpp"

#include "bondtherm/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>

namespace bondtherm {

namespace {

constexpr int kSignificant = 9;

std::ofstream open_for_writing(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_axis(std::ostream& out, const char* name, const std::vector<double>& ticks) {
    out << name << ' ' << ticks.size() << " double\n";
    for (std::size_t i = 0; i < ticks.size(); ++i) out << format_sig9(ticks[i]) << (i + 1 == ticks.size() ? '\n' : ' ');
}

void write_scalars(std::ostream& out, const char* name, const Eigen::VectorXd& values) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (Eigen::Index i = 0; i < values.size(); ++i) out << format_sig9(values[i]) << '\n';
}

}  // namespace

std::string format_sig9(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) value = 0.0;  // drops the sign of -0
    // The exponent after rounding to nine digits fixes the decimal count.
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", kSignificant - 1, value);
    const int exponent = std::atoi(std::strchr(buf, 'e') + 1);
    const int decimals = std::max(0, kSignificant - 1 - exponent);
    std::string out(static_cast<std::size_t>(std::snprintf(nullptr, 0, "%.*f", decimals, value)), '\0');
    std::snprintf(out.data(), out.size() + 1, "%.*f", decimals, value);
    return out;
}

WireSeries series_from(const McResult& r) { return {r.times, r.wire_ids, r.mean, r.stddev}; }

void write_timeseries_csv(const WireSeries& s, std::ostream& out) {
    if (s.mean.size() != s.times.size() || s.stddev.size() != s.times.size()) {
        throw std::invalid_argument("write_timeseries_csv: one row of values per time point expected");
    }
    out << kTimeseriesHeader << '\n';
    for (std::size_t t = 0; t < s.times.size(); ++t) {
        if (s.mean[t].size() != s.wire_ids.size() || s.stddev[t].size() != s.wire_ids.size()) {
            throw std::invalid_argument("write_timeseries_csv: one value per wire expected");
        }
        const std::string time = format_sig9(s.times[t]);
        for (std::size_t j = 0; j < s.wire_ids.size(); ++j) {
            out << time << ',' << s.wire_ids[j] << ',' << format_sig9(s.mean[t][j]) << ','
                << format_sig9(s.stddev[t][j]) << '\n';
        }
    }
}

void write_timeseries_csv(const WireSeries& series, const std::filesystem::path& path) {
    auto out = open_for_writing(path);
    write_timeseries_csv(series, out);
    finish(out, path);
}

void write_vtk(const std::array<std::vector<double>, 3>& axes, const Eigen::VectorXd& temperature,
               const Eigen::VectorXd& potential, double t, std::ostream& out) {
    const std::size_t points = axes[0].size() * axes[1].size() * axes[2].size();
    if (points == 0) throw std::invalid_argument("write_vtk: every axis needs at least one coordinate");
    if (static_cast<std::size_t>(temperature.size()) != points || static_cast<std::size_t>(potential.size()) != points) {
        throw std::invalid_argument("write_vtk: field sizes must match the number of grid points");
    }
    out << "# vtk DataFile Version 3.0\n";
    out << "bondtherm fields at t_s=" << format_sig9(t) << '\n';
    out << "ASCII\n";
    out << "DATASET RECTILINEAR_GRID\n";
    out << "DIMENSIONS " << axes[0].size() << ' ' << axes[1].size() << ' ' << axes[2].size() << '\n';
    write_axis(out, "X_COORDINATES", axes[0]);
    write_axis(out, "Y_COORDINATES", axes[1]);
    write_axis(out, "Z_COORDINATES", axes[2]);
    out << "POINT_DATA " << points << '\n';
    write_scalars(out, "temperature_K", temperature);
    write_scalars(out, "potential_V", potential);
}

void write_vtk(const std::array<std::vector<double>, 3>& axes, const Eigen::VectorXd& temperature,
               const Eigen::VectorXd& potential, double t, const std::filesystem::path& path) {
    auto out = open_for_writing(path);
    write_vtk(axes, temperature, potential, t, out);
    finish(out, path);
}

McSummary summarize(const McResult& r, double t_critical, double k_sigma) {
    McSummary s;
    s.sigma_mc = r.sigma_mc;
    s.error_mc = r.error_mc;
    s.samples = r.samples;
    s.e_max_end = r.e_max.empty() ? 0.0 : r.e_max.back();
    s.t_cross_critical = critical_crossing(r, t_critical, k_sigma);
    s.seed = r.seed;
    return s;
}

void write_summary(const McSummary& s, std::ostream& out) {
    out << "sigma_mc_K=" << format_sig9(s.sigma_mc) << '\n';
    out << "error_mc_K=" << format_sig9(s.error_mc) << '\n';
    out << "m_samples=" << s.samples << '\n';
    out << "e_max_end_K=" << format_sig9(s.e_max_end) << '\n';
    out << "t_cross_critical_s=" << (s.t_cross_critical ? format_sig9(*s.t_cross_critical) : "") << '\n';
    out << "seed=" << s.seed << '\n';
}

void write_summary(const McSummary& summary, const std::filesystem::path& path) {
    auto out = open_for_writing(path);
    write_summary(summary, out);
    finish(out, path);
}

void write_key_values(const std::vector<std::pair<std::string, std::string>>& entries,
                      const std::filesystem::path& path) {
    auto out = open_for_writing(path);
    for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
    finish(out, path);
}

}  // namespace bondtherm
