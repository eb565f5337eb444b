#include "catch_amalgamated.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kSmall = fs::path(BONDTHERM_TEST_DATA_DIR) / "small.json";

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("bondtherm_cli_" + name);
    fs::remove_all(p);
    return p;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + BONDTHERM_CLI + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int count_lines(const std::string& text) {
    return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("check accepts a valid configuration") {
    CHECK(run_cli("check --config \"" + kSmall.string() + "\"") == 0);
}

TEST_CASE("check on a broken configuration exits 2 and writes nothing") {
    const fs::path dir = fresh_dir("broken");
    fs::create_directories(dir);
    const fs::path cfg = dir / "broken.json";
    {
        std::ofstream out(cfg);
        out << R"({"materials": [], "output": {"directory": "should_not_exist"}})";
    }
    CHECK(run_cli("check --config \"" + cfg.string() + "\" --output \"" + (dir / "out").string() + "\"") == 2);
    CHECK_FALSE(fs::exists(dir / "out"));
    CHECK(run_cli("run --config \"" + cfg.string() + "\" --output \"" + (dir / "out").string() + "\"") == 2);
    CHECK_FALSE(fs::exists(dir / "out"));
    CHECK(run_cli("check --config \"" + (dir / "missing.json").string() + "\"") == 2);
    fs::remove_all(dir);
}

TEST_CASE("command line usage errors") {
    CHECK(run_cli("") != 0);
    CHECK(run_cli("run") == 2);
    CHECK(run_cli("frobnicate --config x.json") == 2);
}

TEST_CASE("run writes one row per time point and wire") {
    const fs::path dir = fresh_dir("run");
    REQUIRE(run_cli("run --quiet --config \"" + kSmall.string() + "\" --output \"" + dir.string() + "\"") == 0);
    const std::string csv = slurp(dir / "wire_temperatures.csv");
    CHECK(csv.rfind("t_s,wire_id,mean_K,std_K\n", 0) == 0);
    // 5 time points (0..4 s) times 2 wires plus the header
    CHECK(count_lines(csv) == 1 + 5 * 2);
    CHECK(fs::exists(dir / "run_summary.txt"));
    CHECK(fs::exists(dir / "fields_0000.vtk"));
    CHECK(fs::exists(dir / "fields_0002.vtk"));
    CHECK(fs::exists(dir / "fields_0004.vtk"));
    CHECK_FALSE(fs::exists(dir / "fields_0001.vtk"));
    fs::remove_all(dir);
}

TEST_CASE("mc is deterministic for a fixed seed") {
    const fs::path a = fresh_dir("mc_a");
    const fs::path b = fresh_dir("mc_b");
    const std::string common = "mc --quiet --samples 4 --seed 1 --config \"" + kSmall.string() + "\" ";
    REQUIRE(run_cli(common + "--workers 1 --output \"" + a.string() + "\"") == 0);
    REQUIRE(run_cli(common + "--workers 3 --output \"" + b.string() + "\"") == 0);
    for (const char* f : {"wire_statistics.csv", "summary.txt"}) {
        const std::string x = slurp(a / f);
        CHECK_FALSE(x.empty());
        CHECK(x == slurp(b / f));
    }
    CHECK(slurp(a / "summary.txt").find("m_samples=4\n") != std::string::npos);
    CHECK(slurp(a / "summary.txt").find("seed=1\n") != std::string::npos);
    fs::remove_all(a);
    fs::remove_all(b);
}
