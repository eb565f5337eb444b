#include "bondtherm/solver.hpp"

#include "bondtherm/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace bondtherm {

namespace {

std::vector<std::pair<Index, Index>> wire_links(const std::vector<WireStamp>& stamps) {
    std::vector<std::pair<Index, Index>> links;
    links.reserve(stamps.size());
    for (const auto& s : stamps) links.emplace_back(s.pad_node, s.chip_node);
    return links;
}

std::span<const double> as_span(const Eigen::VectorXd& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

Model Model::build(Grid grid, MaterialTable materials, MaterialField field, std::vector<WireSpec> wires,
                   BoundarySpec boundary, double snap_tolerance) {
    if (field.cell_material.size() != static_cast<std::size_t>(grid.cell_count())) {
        throw ConfigError("material field does not match the grid cell count");
    }
    for (MaterialId id : field.cell_material) {
        if (id >= materials.size()) throw ConfigError("material field references an unknown material id");
    }
    if (auto errors = validate(boundary); !errors.empty()) throw ConfigError(std::move(errors));

    Model m{std::move(grid), std::move(materials), std::move(field), std::move(wires), {}, std::move(boundary), {}, {}};
    for (const auto& w : m.wires) {
        if (w.material >= m.materials.size()) throw ConfigError("wire " + w.id + ": unknown material id");
        m.stamps.push_back(build_wire_stamp(m.grid, w, snap_tolerance, &m.warnings));
    }
    m.dirichlet = dirichlet_partition(m.grid, m.boundary, snap_tolerance);
    return m;
}

std::vector<std::string> validate(const SolverConfig& c) {
    std::vector<std::string> errors;
    if (!(c.dt > 0.0)) errors.emplace_back("time.dt: must be > 0");
    if (c.steps < 0) errors.emplace_back("time.steps: must be >= 0");
    if (!(c.picard_tol > 0.0)) errors.emplace_back("time.picard_tol: must be > 0");
    if (!(c.phi_tol > 0.0)) errors.emplace_back("time.phi_tol: must be > 0");
    if (!(c.linear_tol > 0.0)) errors.emplace_back("time.linear_tol: must be > 0");
    if (c.max_picard < 1) errors.emplace_back("time.max_picard: must be >= 1");
    return errors;
}

Simulator::Simulator(const Model& model, SolverConfig config)
    : Simulator(model, config, [&model] {
          std::vector<double> d;
          for (const auto& w : model.wires) d.push_back(w.elongation);
          return d;
      }()) {}

Simulator::Simulator(const Model& model, SolverConfig config, std::vector<double> elongations)
    : model_(model),
      config_(config),
      electric_depends_on_temperature_(model.materials.temperature_dependent_sigma()),
      electric_op_(model.grid, wire_links(model.stamps)),
      thermal_op_(model.grid, wire_links(model.stamps)),
      electric_solver_(config.phi_tol, SpdSolver::Refactor::WhenSlow),
      thermal_solver_(config.linear_tol, SpdSolver::Refactor::WhenSlow) {
    if (auto errors = validate(config_); !errors.empty()) throw ConfigError(std::move(errors));
    if (elongations.size() != model.wires.size()) {
        throw std::invalid_argument("Simulator: one elongation per wire expected");
    }
    lengths_.reserve(elongations.size());
    for (std::size_t j = 0; j < elongations.size(); ++j) lengths_.push_back(model.wires[j].length_for(elongations[j]));
    capacity_ = assemble_m_rhoc(model.grid, model.field, model.materials);
    convection_ = convection_terms(model.grid, model.boundary);
}

std::vector<double> Simulator::wire_temperatures(const Eigen::VectorXd& temperature) const {
    std::vector<double> t;
    t.reserve(model_.stamps.size());
    for (const auto& s : model_.stamps) t.push_back(wire_temperature(s, temperature));
    return t;
}

SimState Simulator::initial_state() const {
    const Index n = model_.grid.node_count();
    SimState s;
    s.t = 0.0;
    s.temperature = Eigen::VectorXd::Constant(n, model_.boundary.ambient);
    s.potential = Eigen::VectorXd::Zero(n);
    const auto& d = model_.dirichlet;
    for (std::size_t i = 0; i < d.fixed_nodes.size(); ++i) s.potential[d.fixed_nodes[i]] = d.fixed_values[i];
    s.wire_temperature = wire_temperatures(s.temperature);
    for (std::size_t j = 0; j < model_.wires.size(); ++j) {
        const auto g = wire_conductances(model_.wires[j], lengths_[j], model_.materials, s.wire_temperature[j]);
        s.wire_power.push_back(wire_joule(model_.stamps[j], g.electric, s.potential));
    }
    return s;
}

Eigen::VectorXd Simulator::solve_electric(const Eigen::VectorXd& t_k) {
    const Eigen::VectorXd m_sigma = assemble_m_sigma(model_.grid, model_.field, model_.materials, t_k);
    std::vector<double> g_wire;
    g_wire.reserve(model_.wires.size());
    for (std::size_t j = 0; j < model_.wires.size(); ++j) {
        const double t_bw = wire_temperature(model_.stamps[j], t_k);
        g_wire.push_back(wire_conductances(model_.wires[j], lengths_[j], model_.materials, t_bw).electric);
    }
    const std::vector<double> zero(static_cast<std::size_t>(model_.grid.node_count()), 0.0);
    const SparseMatrix& k = electric_op_.assemble(as_span(m_sigma), g_wire, zero);

    const auto& d = model_.dirichlet;
    Eigen::VectorXd full(k.rows());
    Eigen::VectorXd fixed(static_cast<Index>(d.fixed_nodes.size()));
    for (std::size_t i = 0; i < d.fixed_nodes.size(); ++i) {
        fixed[static_cast<Index>(i)] = d.fixed_values[i];
        full[d.fixed_nodes[i]] = d.fixed_values[i];
    }
    if (d.free_nodes.empty()) return full;
    ReducedSystem r = reduce_dirichlet(k, d);
    electric_reduced_ = std::move(r.free_free);
    electric_solver_.factorize(electric_reduced_);
    const Eigen::VectorXd rhs = -(r.free_fixed * fixed);
    const bool warm = electric_guess_.size() == rhs.size();
    electric_guess_ = electric_solver_.solve(rhs, warm ? &electric_guess_ : nullptr);
    const Eigen::VectorXd& x = electric_guess_;
    for (std::size_t i = 0; i < d.free_nodes.size(); ++i) full[d.free_nodes[i]] = x[static_cast<Index>(i)];
    return full;
}

Eigen::VectorXd Simulator::electric_for(const Eigen::VectorXd& t_k) {
    if (!electric_depends_on_temperature_) {
        if (!cached_potential_) cached_potential_ = solve_electric(t_k);
        return *cached_potential_;
    }
    return solve_electric(t_k);
}

ThermalStepResult Simulator::thermal_step(const Eigen::VectorXd& t_n, const Eigen::VectorXd& potential,
                                          const Eigen::VectorXd& t_k, double dt) {
    const auto& grid = model_.grid;
    const Index n = grid.node_count();
    if (t_n.size() != n || potential.size() != n || t_k.size() != n) {
        throw std::invalid_argument("thermal_step: vector sizes must match the node count");
    }
    if (!(dt > 0.0)) throw std::invalid_argument("thermal_step: dt must be > 0");
    const bool transient = std::isfinite(dt);

    const Eigen::VectorXd m_lambda = assemble_m_lambda(grid, model_.field, model_.materials, t_k);
    const RobinTerms rad = radiation_terms(grid, model_.boundary, t_k);

    ThermalStepResult out;
    std::vector<double> g_th;
    g_th.reserve(model_.wires.size());
    for (std::size_t j = 0; j < model_.wires.size(); ++j) {
        const double t_bw = wire_temperature(model_.stamps[j], t_k);
        const auto g = wire_conductances(model_.wires[j], lengths_[j], model_.materials, t_bw);
        g_th.push_back(g.thermal);
        out.wire_power.push_back(wire_joule(model_.stamps[j], g.electric, potential));
    }

    Eigen::VectorXd robin = convection_.diagonal + rad.diagonal;
    Eigen::VectorXd robin_rhs = convection_.rhs + rad.rhs;
    Eigen::VectorXd diag = robin;
    out.field_joule = joule_node_power(grid, model_.field, model_.materials, potential, t_k);
    const Eigen::VectorXd wire_heat = distribute_wire_heat(model_.stamps, out.wire_power, n);
    Eigen::VectorXd rhs = out.field_joule + wire_heat + robin_rhs;
    if (transient) {
        diag += capacity_ / dt;
        rhs += capacity_.cwiseProduct(t_n) / dt;
    }

    const SparseMatrix& a = thermal_op_.assemble(as_span(m_lambda), g_th, as_span(diag));
    thermal_solver_.factorize(a);
    out.temperature = thermal_solver_.solve(rhs, &t_k);

    out.balance.field_joule = out.field_joule.sum();
    for (double p : out.wire_power) out.balance.wire_joule += p;
    out.balance.boundary_outflow = robin.dot(out.temperature) - robin_rhs.sum();
    out.balance.storage_rate = transient ? capacity_.dot(out.temperature - t_n) / dt : 0.0;
    return out;
}

SimState Simulator::step(const SimState& state) {
    const Eigen::VectorXd& t_n = state.temperature;
    Eigen::VectorXd t_k = t_n;
    Eigen::VectorXd potential;
    ThermalStepResult solved;
    double increment = std::numeric_limits<double>::infinity();
    int iterations = 0;
    while (iterations < config_.max_picard) {
        ++iterations;
        potential = electric_for(t_k);
        solved = thermal_step(t_n, potential, t_k, config_.dt);
        increment = (solved.temperature - t_k).lpNorm<Eigen::Infinity>();
        t_k = solved.temperature;
        if (!std::isfinite(increment)) break;
        if (increment < config_.picard_tol) break;
    }
    if (!(increment < config_.picard_tol)) {
        std::ostringstream os;
        os << "Picard iteration did not converge in " << iterations << " iterations at t = " << state.t + config_.dt
           << " s (last increment " << increment << " K, tolerance " << config_.picard_tol << " K)";
        throw NumericalError(os.str());
    }

    SimState next;
    next.t = state.t + config_.dt;
    next.potential = std::move(potential);
    next.temperature = std::move(t_k);
    next.wire_temperature = wire_temperatures(next.temperature);
    next.wire_power = solved.wire_power;

    last_step_.t = next.t;
    last_step_.wire_temperature = next.wire_temperature;
    last_step_.wire_power = next.wire_power;
    last_step_.max_temperature_change = (next.temperature - t_n).lpNorm<Eigen::Infinity>();
    last_step_.picard_iterations = iterations;
    last_step_.last_increment = increment;
    last_step_.balance = solved.balance;
    return next;
}

TransientResult Simulator::run_transient(const SnapshotCallback& snapshot) {
    TransientResult result;
    SimState state = initial_state();
    StepRecord first;
    first.t = state.t;
    first.wire_temperature = state.wire_temperature;
    first.wire_power = state.wire_power;
    result.records.push_back(std::move(first));
    if (snapshot) snapshot(state, 0);

    for (int s = 1; s <= config_.steps; ++s) {
        try {
            state = step(state);
        } catch (const Error& e) {
            throw NumericalError("step " + std::to_string(s) + ": " + e.what());
        }
        result.records.push_back(last_step_);
        if (snapshot) snapshot(state, s);
    }
    result.final_state = std::move(state);
    return result;
}

}  // namespace bondtherm
