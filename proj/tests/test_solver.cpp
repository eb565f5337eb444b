#include "bondtherm/error.hpp"
#include "bondtherm/solver.hpp"

#include "catch_amalgamated.hpp"
#include "rod.hpp"
#include "support.hpp"

#include <cmath>
#include <limits>

using namespace bondtherm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Homogeneous copper bar of `cells` x 1 x 1 cells with contacts on both x ends.
Model bar(int cells, double v_left, double v_right, double h = 0.0, double eps = 0.0, double alpha = 0.0) {
    MaterialTable t;
    const MaterialId cu = t.add(testing::copper(alpha));
    Grid g = Grid::build({testing::uniform_ticks(0, 1e-3 * cells, cells), {0, 1e-3}, {0, 1e-3}});
    const double len = g.extent(0);
    MaterialField f{std::vector<MaterialId>(static_cast<std::size_t>(g.cell_count()), cu)};
    BoundarySpec b;
    b.contacts = {{"l", {{0, 0, 0}, {0, 1e-3, 1e-3}}, v_left}, {"r", {{len, 0, 0}, {len, 1e-3, 1e-3}}, v_right}};
    b.h = h;
    b.emissivity = eps;
    b.ambient = 300.0;
    return Model::build(std::move(g), std::move(t), std::move(f), {}, std::move(b), 1e-12);
}

}  // namespace

TEST_CASE("electric solve with every node on one contact potential") {
    MaterialTable t;
    const MaterialId cu = t.add(testing::copper());
    Grid g = Grid::build({std::vector<double>{0, 1e-3}, {0, 1e-3}, {0, 1e-3}});
    MaterialField f{{cu}};
    BoundarySpec b;
    b.contacts = {{"all", {{0, 0, 0}, {1e-3, 1e-3, 1e-3}}, 0.02}};
    const Model m = Model::build(std::move(g), std::move(t), std::move(f), {}, std::move(b), 1e-12);
    Simulator sim(m, {});
    const Eigen::VectorXd phi = sim.solve_electric(Eigen::VectorXd::Constant(8, 300.0));
    CHECK(phi == Eigen::VectorXd::Constant(8, 0.02));
    CHECK(joule_node_power(m.grid, m.field, m.materials, phi, Eigen::VectorXd::Constant(8, 300.0)).sum() == 0.0);
}

TEST_CASE("linear potential on a homogeneous bar") {
    const Model m = bar(10, 1.0, 0.0);
    Simulator sim(m, {});
    const Eigen::VectorXd phi = sim.solve_electric(Eigen::VectorXd::Constant(m.grid.node_count(), 300.0));
    double worst = 0.0;
    for (Index n = 0; n < m.grid.node_count(); ++n) {
        const double exact = 1.0 - m.grid.node_position(n)[0] / m.grid.extent(0);
        worst = std::max(worst, std::abs(phi[n] - exact));
    }
    CHECK(worst <= 1e-10);
    // Contacts hold their values exactly
    for (std::size_t i = 0; i < m.dirichlet.fixed_nodes.size(); ++i) {
        CHECK(phi[m.dirichlet.fixed_nodes[i]] == m.dirichlet.fixed_values[i]);
    }
    // Reduced electric matrix is exactly symmetric with a positive diagonal
    const Eigen::MatrixXd k(sim.last_electric_matrix());
    CHECK((k - k.transpose()).norm() == 0.0);
    CHECK(k.diagonal().minCoeff() > 0.0);
}

TEST_CASE("no sources keep the ambient equilibrium") {
    const Model m = bar(4, 0.0, 0.0, 25.0, 0.2475);
    Simulator sim(m, {});
    const Eigen::VectorXd t0 = Eigen::VectorXd::Constant(m.grid.node_count(), 300.0);
    const Eigen::VectorXd phi = Eigen::VectorXd::Zero(m.grid.node_count());
    const ThermalStepResult r = sim.thermal_step(t0, phi, t0, 1.0);
    CHECK((r.temperature - t0).cwiseAbs().maxCoeff() < 1e-8);
    const Eigen::MatrixXd a(sim.last_thermal_matrix());
    CHECK((a - a.transpose()).norm() == 0.0);
}

TEST_CASE("zero applied voltage keeps the temperature at ambient") {
    const Model m = bar(4, 0.0, 0.0, 25.0, 0.2475, 3.9e-3);
    SolverConfig c;
    c.dt = 1.0;
    c.steps = 5;
    Simulator sim(m, c);
    const TransientResult r = sim.run_transient();
    REQUIRE(r.records.size() == 6);
    CHECK((r.final_state.temperature.array() - 300.0).abs().maxCoeff() < 1e-8);
}

TEST_CASE("zero steps return the initial state only") {
    const Model m = bar(2, 0.02, -0.02);
    SolverConfig c;
    c.steps = 0;
    Simulator sim(m, c);
    int snapshots = 0;
    const TransientResult r = sim.run_transient([&](const SimState&, int) { ++snapshots; });
    CHECK(r.records.size() == 1);
    CHECK(snapshots == 1);
    CHECK(r.final_state.t == 0.0);
    CHECK(r.final_state.temperature == Eigen::VectorXd::Constant(m.grid.node_count(), 300.0));
    CHECK(r.final_state.potential[m.dirichlet.fixed_nodes.front()] == m.dirichlet.fixed_values.front());
}

TEST_CASE("scalar implicit Euler limit") {
    // A single 1 m^3 cell with rho c = 1 J/K/m^3 has a total capacity of
    // 1 J/K. Conduction cannot redistribute a uniform field, no Robin losses,
    // and 1 W spread as 1/8 W per corner raises T by exactly 1 K per 1 s step.
    MaterialTable t;
    const MaterialId id = t.add({"unit", 1.0, 1.0, 1.0, 0.0, 0.0, 300.0});
    Grid g = Grid::build({std::vector<double>{0, 1}, {0, 1}, {0, 1}});
    MaterialField f{{id}};
    BoundarySpec b;
    b.contacts = {{"l", {{0, 0, 0}, {0, 1, 1}}, 1.0}, {"r", {{1, 0, 0}, {1, 1, 1}}, 0.0}};
    const Model m = Model::build(std::move(g), std::move(t), std::move(f), {}, std::move(b), 1e-12);
    Simulator sim(m, {});
    Eigen::VectorXd phi(8);
    for (Index n = 0; n < 8; ++n) phi[n] = 1.0 - m.grid.node_position(n)[0];
    Eigen::VectorXd temp = Eigen::VectorXd::Constant(8, 300.0);
    for (int k = 1; k <= 3; ++k) {
        const ThermalStepResult r = sim.thermal_step(temp, phi, temp, 1.0);
        CHECK_THAT(r.balance.input(), WithinRel(1.0, 1e-14));
        for (Index n = 0; n < 8; ++n) CHECK_THAT(r.temperature[n], WithinAbs(300.0 + k, 1e-9));
        temp = r.temperature;
    }
}

TEST_CASE("steady Joule rod peak rise") {
    const testing::Rod rod(80);
    Simulator sim(*rod.model, {});
    const Index n = rod.model->grid.node_count();
    const Eigen::VectorXd t0 = Eigen::VectorXd::Constant(n, testing::Rod::ambient);
    const Eigen::VectorXd phi = sim.solve_electric(t0);
    const ThermalStepResult r = sim.thermal_step(t0, phi, t0, kInf);
    const double rise = r.temperature[rod.node(40)] - testing::Rod::ambient;
    CHECK_THAT(rod.peak_rise_oracle(), WithinRel(3.141, 1e-3));
    CHECK_THAT(rise, WithinRel(rod.peak_rise_oracle(), 1e-2));
    // Nodal values match the parabola closely
    for (int i = 0; i <= rod.cells; ++i) {
        const double x = rod.model->grid.node_position(rod.node(i))[0];
        CHECK_THAT(r.temperature[rod.node(i)], WithinAbs(rod.exact(x), 1e-6));
    }
    // Stationary balance: everything generated leaves through the ends
    CHECK_THAT(r.balance.boundary_outflow, WithinRel(r.balance.input(), 1e-8));
    CHECK_THAT(r.balance.input(), WithinRel(1e8 * 1e-2 * 1e-6, 1e-10));
}

TEST_CASE("one-way coupling converges in at most two Picard iterations") {
    const Model m = bar(6, 1e-3, -1e-3, 25.0, 0.0, 0.0);
    SolverConfig c;
    c.dt = 1.0;
    c.steps = 3;
    Simulator sim(m, c);
    const TransientResult r = sim.run_transient();
    for (std::size_t s = 1; s < r.records.size(); ++s) CHECK(r.records[s].picard_iterations <= 2);
}

TEST_CASE("two-way coupling: Picard converges and heating is monotone") {
    const Model m = bar(6, 1e-3, -1e-3, 25.0, 0.2475, 3.9e-3);
    SolverConfig c;
    c.dt = 0.5;
    c.steps = 4;
    Simulator sim(m, c);
    const TransientResult r = sim.run_transient();
    for (std::size_t s = 1; s < r.records.size(); ++s) {
        CHECK(r.records[s].last_increment < c.picard_tol);
        const EnergyBalance& e = r.records[s].balance;
        CHECK(std::abs(e.residual()) <= 1e-6 * e.input());
    }
    CHECK(r.final_state.temperature.minCoeff() >= 300.0 - 1e-9);
    CHECK(r.final_state.temperature.maxCoeff() > 300.0);
}

TEST_CASE("Picard failure is reported as a numerical error") {
    const Model m = bar(6, 1e-3, -1e-3, 25.0, 0.2475, 3.9e-3);
    SolverConfig c;
    c.dt = 1.0;
    c.steps = 2;
    c.max_picard = 1;
    c.picard_tol = 1e-14;
    Simulator sim(m, c);
    try {
        sim.run_transient();
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("step 1") != std::string::npos);
    }
}

TEST_CASE("invalid solver configuration") {
    SolverConfig c;
    c.dt = 0.0;
    c.picard_tol = -1.0;
    CHECK(validate(c).size() == 2);
    const Model m = bar(2, 0.0, 0.0);
    CHECK_THROWS_AS(Simulator(m, c), ConfigError);
}
