#include "bondtherm/error.hpp"
#include "bondtherm/uq.hpp"

#include "catch_amalgamated.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

using namespace bondtherm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

/// T = 100 delta + 300 K for every wire and time point.
SampleFunction affine_stub(ElongationDist dist, std::size_t wires, std::size_t times) {
    return [=](std::uint64_t, Rng& rng) {
        Trajectory tr(times);
        const std::vector<double> d = sample_elongations(dist, wires, rng);
        for (auto& row : tr) {
            for (double delta : d) row.push_back(100.0 * delta + 300.0);
        }
        return tr;
    };
}

McResult run_stub(std::size_t samples, std::uint64_t seed, unsigned workers, std::size_t wires = 1) {
    McOptions o;
    o.samples = samples;
    o.seed = seed;
    o.workers = workers;
    std::vector<std::string> ids;
    for (std::size_t j = 0; j < wires; ++j) ids.push_back("w" + std::to_string(j));
    return run_mc(affine_stub({}, wires, 3), {0.0, 1.0, 2.0}, ids, o);
}

}  // namespace

TEST_CASE("normal fit") {
    const NormalFit same = fit_normal(std::vector<double>{0.17, 0.17});
    CHECK(same.dist.mu == 0.17);
    CHECK(same.dist.sigma == 0.0);
    const NormalFit two = fit_normal(std::vector<double>{0.1, 0.2});
    CHECK_THAT(two.dist.mu, WithinRel(0.15, 1e-14));
    CHECK_THAT(two.dist.sigma, WithinRel(0.0707, 1e-3));
    CHECK(two.warning);
    CHECK_THROWS_AS(fit_normal(std::vector<double>{0.1}), DataError);
    CHECK_THROWS_AS(fit_normal(std::vector<double>{}), DataError);
    std::vector<double> many(30, 0.2);
    many[0] = 0.1;
    CHECK_FALSE(fit_normal(many).warning);
}

TEST_CASE("bundled elongation dataset") {
    const std::vector<double> v = read_samples_file(std::string(BONDTHERM_DATA_DIR) + "/elongation_samples.txt");
    CHECK(v.size() == 12);
    const NormalFit f = fit_normal(v);
    CHECK_THAT(f.dist.mu, WithinAbs(0.17, 5e-4));
    CHECK_THAT(f.dist.sigma, WithinAbs(0.048, 5e-4));
    CHECK(f.warning);
}

TEST_CASE("sample file parsing") {
    std::istringstream in("# heights\n0.1\n\n  0.2  # trailing comment\n0.3\n");
    CHECK(read_samples(in) == std::vector<double>{0.1, 0.2, 0.3});
    std::istringstream bad("0.1\nabc\n");
    CHECK_THROWS_AS(read_samples(bad), DataError);
    CHECK_THROWS_AS(read_samples_file("/nonexistent/elongations.txt"), Error);
}

TEST_CASE("distribution validation") {
    CHECK(validate(ElongationDist{}).empty());
    CHECK_FALSE(validate(ElongationDist{0.17, -0.1, 0.0, 0.9}).empty());
    CHECK_FALSE(validate(ElongationDist{0.17, 0.05, 0.5, 0.5}).empty());
    CHECK_FALSE(validate(ElongationDist{0.17, 0.05, 0.0, 1.0}).empty());
    Rng rng = sample_stream(1, 0);
    CHECK_THROWS_AS(draw_elongation({0.17, 0.001, 0.5, 0.9}, rng), ConfigError);
}

TEST_CASE("sampled wire lengths") {
    WireSpec w;
    w.direct_distance = 1.29e-3;
    std::vector<WireSpec> wires{w, w};
    Rng rng = sample_stream(1, 0);
    const auto fixed = sample_lengths({0.17, 0.0, 0.0, 0.9}, wires, rng);
    for (double l : fixed) CHECK_THAT(l, WithinRel(1.29e-3 / 0.83, 1e-15));
    CHECK_THAT(fixed[0], WithinRel(1.554e-3, 1e-3));
    const auto straight = sample_lengths({0.0, 0.0, 0.0, 0.9}, wires, rng);
    CHECK(straight[0] == 1.29e-3);

    Rng a = sample_stream(7, 3);
    Rng b = sample_stream(7, 3);
    CHECK(sample_elongations({}, 12, a) == sample_elongations({}, 12, b));
    Rng c = sample_stream(7, 4);
    Rng d = sample_stream(7, 3);
    CHECK(sample_elongations({}, 12, c) != sample_elongations({}, 12, d));

    Rng e = sample_stream(3, 0);
    const auto many = sample_elongations({0.17, 0.3, 0.0, 0.9}, 5000, e);
    for (double x : many) {
        CHECK(x >= 0.0);
        CHECK(x <= 0.9);
    }
}

TEST_CASE("single sample run") {
    const McResult r = run_stub(1, 5, 1, 2);
    CHECK(r.samples == 1);
    CHECK(r.sigma_mc == 0.0);
    CHECK(r.error_mc == 0.0);
    Rng rng = sample_stream(5, 0);
    const auto d = sample_elongations({}, 2, rng);
    for (std::size_t t = 0; t < 3; ++t)
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(r.mean[t][j] == 100.0 * d[j] + 300.0);
            CHECK(r.stddev[t][j] == 0.0);
        }
}

TEST_CASE("estimator identities") {
    const McResult r = run_stub(200, 9, 1, 4);
    CHECK(r.error_mc == r.sigma_mc / std::sqrt(200.0));
    for (std::size_t t = 0; t < r.times.size(); ++t) {
        CHECK(r.e_max[t] == *std::max_element(r.mean[t].begin(), r.mean[t].end()));
        for (double e : r.mean[t]) CHECK(r.e_max[t] >= e);
    }
    CHECK(r.sigma_mc == r.stddev.back()[r.hottest_wire]);
    CHECK_THAT(mc_error(4.65, 1000), WithinAbs(0.147, 5e-4));
}

TEST_CASE("affine stub mean") {
    const McResult r = run_stub(1000, 1, 1);
    CHECK_THAT(r.mean.back()[0], WithinAbs(317.0, 0.456));
    CHECK_THAT(r.sigma_mc, WithinAbs(4.8, 0.5));
}

TEST_CASE("worker count does not change results") {
    const McResult one = run_stub(64, 3, 1, 3);
    const McResult four = run_stub(64, 3, 4, 3);
    CHECK(one.mean == four.mean);
    CHECK(one.stddev == four.stddev);
    CHECK(one.sigma_mc == four.sigma_mc);
}

TEST_CASE("sample failures") {
    McOptions o;
    o.samples = 200;
    const SampleFunction flaky = [](std::uint64_t i, Rng&) -> Trajectory {
        if (i == 17) throw NumericalError("diverged");
        return {{300.0 + static_cast<double>(i % 3)}};
    };
    const McResult r = run_mc(flaky, {0.0}, {"w"}, o);
    CHECK(r.samples == 199);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].index == 17);
    CHECK(r.error_mc == r.sigma_mc / std::sqrt(199.0));

    const SampleFunction broken = [](std::uint64_t i, Rng&) -> Trajectory {
        if (i % 10 == 0) throw NumericalError("diverged");
        return {{300.0}};
    };
    CHECK_THROWS_AS(run_mc(broken, {0.0}, {"w"}, o), NumericalError);
}

TEST_CASE("critical crossing") {
    McResult r;
    r.times = {0.0, 1.0, 2.0};
    r.mean = {{300.0}, {520.0}, {520.0}};
    r.stddev = {{0.0}, {1.0}, {1.0}};
    r.e_max = {300.0, 520.0, 520.0};
    r.e_max_wire = {0, 0, 0};
    CHECK(critical_crossing(r, 523.0, 6.0) == 1.0);
    CHECK_FALSE(critical_crossing(r, 523.0, 0.0));
    CHECK(critical_crossing(r, 520.0, 0.0) == 1.0);
    CHECK_FALSE(critical_crossing(r, 600.0, 6.0));
}
