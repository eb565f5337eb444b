#pragma once

// =============================================================================
// Coupled electrothermal solver
// =============================================================================
// Per time step (implicit Euler) the two-way coupling is resolved by
// successive substitution:
//
//   T_k := T_n
//   repeat
//     K_el(T_k) phi = 0                      (PEC nodes prescribed)
//     (M_rc/dt + K_th(T_k) + B(T_k)) T_k+1 = M_rc T_n/dt + Q_el + Q_bw + b(T_k)
//   until max |T_k+1 - T_k| < picard_tol
//
// K_el and K_th are S~ M S~^T plus the stamped wire conductances, B collects
// the convective and linearized radiative Robin terms.
// =============================================================================

#include "bondtherm/bondwire.hpp"
#include "bondtherm/boundary.hpp"
#include "bondtherm/grid.hpp"
#include "bondtherm/linear_solver.hpp"
#include "bondtherm/materials.hpp"

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bondtherm {

/// Everything a simulation reads but never mutates. Shared by concurrent
/// Monte Carlo workers.
struct Model {
    Grid grid;
    MaterialTable materials;
    MaterialField field;
    std::vector<WireSpec> wires;
    std::vector<WireStamp> stamps;
    BoundarySpec boundary;
    DirichletSet dirichlet;
    std::vector<std::string> warnings;

    static Model build(Grid grid, MaterialTable materials, MaterialField field, std::vector<WireSpec> wires,
                       BoundarySpec boundary, double snap_tolerance);
};

struct SolverConfig {
    double dt = 1.0;            // s
    int steps = 50;
    double picard_tol = 1e-6;   // K, max-norm of the temperature increment
    double phi_tol = 1e-10;     // relative residual of the electric solve
    int max_picard = 50;
    double linear_tol = 1e-10;  // relative residual of the thermal solve
};

std::vector<std::string> validate(const SolverConfig& config);

struct SimState {
    double t = 0.0;
    Eigen::VectorXd potential;    // V
    Eigen::VectorXd temperature;  // K
    std::vector<double> wire_temperature;  // K
    std::vector<double> wire_power;        // W
};

/// Power bookkeeping of one converged thermal solve (W). The discrete
/// conduction operators annihilate constants, so summing the thermal system
/// row by row gives input = boundary outflow + storage up to solver tolerance.
struct EnergyBalance {
    double field_joule = 0.0;
    double wire_joule = 0.0;
    double boundary_outflow = 0.0;
    double storage_rate = 0.0;

    [[nodiscard]] double input() const { return field_joule + wire_joule; }
    [[nodiscard]] double residual() const { return input() - boundary_outflow - storage_rate; }
};

struct ThermalStepResult {
    Eigen::VectorXd temperature;
    Eigen::VectorXd field_joule;  // nodal W
    std::vector<double> wire_power;
    EnergyBalance balance;
};

struct StepRecord {
    double t = 0.0;
    std::vector<double> wire_temperature;
    std::vector<double> wire_power;
    double max_temperature_change = 0.0;  // max nodal |T_n+1 - T_n|, K
    int picard_iterations = 0;
    double last_increment = 0.0;
    EnergyBalance balance;
};

struct TransientResult {
    std::vector<StepRecord> records;  // records[0] is the initial state
    SimState final_state;
};

/// Called after the initial state (step 0) and after every completed step.
using SnapshotCallback = std::function<void(const SimState&, int step)>;

class Simulator {
public:
    /// Uses the elongation stored in each WireSpec.
    Simulator(const Model& model, SolverConfig config);
    /// Overrides the wire elongations (one per wire), e.g. per MC sample.
    Simulator(const Model& model, SolverConfig config, std::vector<double> elongations);

    [[nodiscard]] const Model& model() const { return model_; }
    [[nodiscard]] const SolverConfig& config() const { return config_; }
    [[nodiscard]] const std::vector<double>& wire_lengths() const { return lengths_; }

    /// Initial condition: T = T_inf everywhere, phi = 0 except on PEC nodes.
    [[nodiscard]] SimState initial_state() const;

    /// Stationary current problem with conductivities evaluated at `t_k`.
    Eigen::VectorXd solve_electric(const Eigen::VectorXd& t_k);

    /// One linearized implicit-Euler solve. `dt` may be infinite for a
    /// stationary thermal solve.
    ThermalStepResult thermal_step(const Eigen::VectorXd& t_n, const Eigen::VectorXd& potential,
                                   const Eigen::VectorXd& t_k, double dt);

    /// Advances by config().dt. Throws NumericalError when Picard does not
    /// converge within config().max_picard iterations.
    SimState step(const SimState& state);
    [[nodiscard]] const StepRecord& last_step() const { return last_step_; }

    /// Runs config().steps steps from the initial state.
    TransientResult run_transient(const SnapshotCallback& snapshot = {});

    /// Reduced electric system and full thermal system of the last solves.
    [[nodiscard]] const SparseMatrix& last_electric_matrix() const { return electric_reduced_; }
    [[nodiscard]] const SparseMatrix& last_thermal_matrix() const { return thermal_op_.matrix(); }

private:
    Eigen::VectorXd electric_for(const Eigen::VectorXd& t_k);
    std::vector<double> wire_temperatures(const Eigen::VectorXd& temperature) const;

    const Model& model_;
    SolverConfig config_;
    std::vector<double> lengths_;
    bool electric_depends_on_temperature_;

    Eigen::VectorXd capacity_;
    RobinTerms convection_;
    NodalOperator electric_op_;
    NodalOperator thermal_op_;
    SparseMatrix electric_reduced_;
    Eigen::VectorXd electric_guess_;  // last reduced potential
    SpdSolver electric_solver_;
    SpdSolver thermal_solver_;
    std::optional<Eigen::VectorXd> cached_potential_;
    StepRecord last_step_;
};

}  // namespace bondtherm
