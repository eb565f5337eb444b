#include "bondtherm/error.hpp"
#include "bondtherm/output.hpp"

#include "catch_amalgamated.hpp"

#include <filesystem>
#include <map>
#include <sstream>

using namespace bondtherm;
using Catch::Matchers::WithinRel;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::map<std::string, std::string> key_values(const std::string& text) {
    std::map<std::string, std::string> kv;
    for (const auto& line : lines_of(text)) {
        const auto eq = line.find('=');
        REQUIRE(eq != std::string::npos);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

McResult two_by_two() {
    McResult r;
    r.times = {0.0, 1.0};
    r.wire_ids = {"w01", "w02"};
    r.mean = {{300.0, 300.0}, {310.5, 320.25}};
    r.stddev = {{0.0, 0.0}, {0.5, 4.65}};
    r.e_max = {300.0, 320.25};
    r.e_max_wire = {0, 1};
    r.hottest_wire = 1;
    r.sigma_mc = 4.65;
    r.samples = 1000;
    r.error_mc = mc_error(4.65, 1000);
    r.seed = 1;
    return r;
}

}  // namespace

TEST_CASE("nine significant digits without exponent") {
    CHECK(format_sig9(0.0) == "0.00000000");
    CHECK(format_sig9(300.0) == "300.000000");
    CHECK(format_sig9(0.147047) == "0.147047000");
    CHECK(format_sig9(-1.5) == "-1.50000000");
    CHECK(format_sig9(1.0 / 3.0) == "0.333333333");
    CHECK(format_sig9(123456789.4) == "123456789");
    CHECK(format_sig9(1.5e-5) == "0.0000150000000");
    CHECK(format_sig9(-0.0) == "0.00000000");
    for (double v : {1.0 / 7.0, 523.15, 4.65e-3, 98765.4321}) {
        CHECK_THAT(std::stod(format_sig9(v)), WithinRel(v, 5e-9));
        CHECK(format_sig9(v).find('e') == std::string::npos);
    }
}

TEST_CASE("time series CSV") {
    std::ostringstream out;
    write_timeseries_csv(series_from(two_by_two()), out);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "t_s,wire_id,mean_K,std_K");
    CHECK(lines[1] == "0.00000000,w01,300.000000,0.00000000");
    CHECK(lines[4] == "1.00000000,w02,320.250000,4.65000000");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 3);
    }
}

TEST_CASE("summary keys") {
    const McSummary s = summarize(two_by_two(), 523.0, 6.0);
    CHECK(s.error_mc == s.sigma_mc / std::sqrt(1000.0));
    CHECK_FALSE(s.t_cross_critical);
    std::ostringstream out;
    write_summary(s, out);
    const auto kv = key_values(out.str());
    CHECK(kv.size() == 6);
    CHECK(kv.at("sigma_mc_K") == "4.65000000");
    CHECK(kv.at("error_mc_K").substr(0, 5) == "0.147");
    CHECK(kv.at("m_samples") == "1000");
    CHECK(kv.at("e_max_end_K") == "320.250000");
    CHECK(kv.at("t_cross_critical_s").empty());
    CHECK(kv.at("seed") == "1");
    const auto lines = lines_of(out.str());
    CHECK(lines[0].rfind("sigma_mc_K=", 0) == 0);
    CHECK(lines[5].rfind("seed=", 0) == 0);

    const McSummary hot = summarize(two_by_two(), 340.0, 6.0);
    REQUIRE(hot.t_cross_critical);
    CHECK(*hot.t_cross_critical == 1.0);
}

TEST_CASE("VTK for a single point") {
    std::ostringstream out;
    write_vtk({std::vector<double>{0.0}, {0.0}, {0.0}}, Eigen::VectorXd::Constant(1, 300.0),
              Eigen::VectorXd::Constant(1, 0.02), 0.0, out);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() >= 14);
    CHECK(lines[0] == "# vtk DataFile Version 3.0");
    CHECK(lines[2] == "ASCII");
    CHECK(lines[3] == "DATASET RECTILINEAR_GRID");
    CHECK(lines[4] == "DIMENSIONS 1 1 1");
    CHECK(lines[5] == "X_COORDINATES 1 double");
    const std::string text = out.str();
    const auto pos = [&](const char* s) { return text.find(s); };
    CHECK(pos("X_COORDINATES") < pos("Y_COORDINATES"));
    CHECK(pos("Y_COORDINATES") < pos("Z_COORDINATES"));
    CHECK(pos("Z_COORDINATES") < pos("POINT_DATA 1"));
    CHECK(pos("POINT_DATA 1") < pos("SCALARS temperature_K double 1"));
    CHECK(pos("SCALARS temperature_K") < pos("SCALARS potential_V double 1"));
    CHECK(pos("LOOKUP_TABLE default") != std::string::npos);
}

TEST_CASE("VTK node ordering and counts") {
    const std::array<std::vector<double>, 3> axes{std::vector<double>{0, 1, 2}, {0, 1}, {0, 0.5}};
    Eigen::VectorXd t(12), p(12);
    for (Index n = 0; n < 12; ++n) {
        t[n] = 300.0 + n;
        p[n] = -static_cast<double>(n);
    }
    std::ostringstream out;
    write_vtk(axes, t, p, 2.5, out);
    const auto lines = lines_of(out.str());
    CHECK(lines[4] == "DIMENSIONS 3 2 2");
    const auto it = std::find(lines.begin(), lines.end(), "SCALARS temperature_K double 1");
    REQUIRE(it != lines.end());
    REQUIRE(std::distance(it, lines.end()) > 13);
    CHECK(*(it + 1) == "LOOKUP_TABLE default");
    for (int n = 0; n < 12; ++n) CHECK(std::stod(*(it + 2 + n)) == 300.0 + n);
    CHECK_THROWS(write_vtk(axes, Eigen::VectorXd::Zero(3), p, 0.0, out));
}

TEST_CASE("unwritable paths raise an I/O error naming the path") {
    const std::filesystem::path bad = "/nonexistent/dir/out.csv";
    try {
        write_timeseries_csv(series_from(two_by_two()), bad);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find(bad.string()) != std::string::npos);
    }
}
