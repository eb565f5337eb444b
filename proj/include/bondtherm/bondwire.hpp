#pragma once

// Bonding wires as lumped two-terminal electrothermal conductances between
// grid nodes. A wire is a uniform cylinder of length L = d / (1 - delta),
// where d is the straight endpoint distance and delta the relative elongation.

#include "bondtherm/grid.hpp"
#include "bondtherm/materials.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace bondtherm {

struct WireSpec {
    std::string id;
    Vec3 pad_point{};
    Vec3 chip_point{};
    double diameter = 0.0;         // m
    double direct_distance = 0.0;  // m
    double elongation = 0.0;       // relative elongation delta, [0, 1)
    MaterialId material = 0;

    /// Throws GeometryError when delta is outside [0, 1) or d <= 0.
    [[nodiscard]] double length() const { return length_for(elongation); }
    [[nodiscard]] double length_for(double delta) const;
    [[nodiscard]] double cross_section() const;
};

/// Terminal nodes of a wire. The incidence vector P has +1 at the pad node and
/// -1 at the chip node; the averaging vector X has 1/2 at both.
struct WireStamp {
    Index pad_node = 0;
    Index chip_node = 0;
    double area = 0.0;  // m^2

    [[nodiscard]] Eigen::VectorXd incidence(Index node_count) const;
    [[nodiscard]] Eigen::VectorXd averaging(Index node_count) const;
};

struct WireConductance {
    double electric = 0.0;  // S
    double thermal = 0.0;   // W/K
};

/// G_el = sigma(T) A / L and G_th = lambda(T) A / L.
WireConductance wire_conductances(const WireSpec& wire, double length, const MaterialTable& table,
                                  double wire_temperature);
inline WireConductance wire_conductances(const WireSpec& wire, const MaterialTable& table, double wire_temperature) {
    return wire_conductances(wire, wire.length(), table, wire_temperature);
}

/// Snaps both endpoints; throws GeometryError when they land on one node.
/// Snap warnings are appended to `warnings` when given.
WireStamp build_wire_stamp(const Grid& grid, const WireSpec& wire, double tol,
                           std::vector<std::string>* warnings = nullptr);

/// K += P G P^T.
void stamp_conductance(SparseMatrix& matrix, const WireStamp& stamp, double conductance);

/// X^T T.
double wire_temperature(const WireStamp& stamp, const Eigen::VectorXd& temperature);

/// Phi^T P G P^T Phi.
double wire_joule(const WireStamp& stamp, double electric_conductance, const Eigen::VectorXd& potential);

/// sum_j X_j Q_j: half of every wire's power goes to each terminal.
Eigen::VectorXd distribute_wire_heat(const std::vector<WireStamp>& stamps, const std::vector<double>& powers,
                                     Index node_count);

}  // namespace bondtherm
