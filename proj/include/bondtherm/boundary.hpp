#pragma once

#include "bondtherm/grid.hpp"

#include <Eigen/Core>

#include <array>
#include <string>
#include <vector>

namespace bondtherm {

inline constexpr double kStefanBoltzmann = 5.670374419e-8;  // W/m^2/K^4

/// Perfectly conducting contact: every node inside the box is held at
/// `potential` (V).
struct Contact {
    std::string name;
    Box box;
    double potential = 0.0;
};

struct BoundarySpec {
    std::vector<Contact> contacts;
    double h = 0.0;           // W/m^2/K
    double emissivity = 0.0;  // [0, 1]
    double ambient = 300.0;   // K
    /// Exterior faces carrying the convective and radiative terms.
    std::array<bool, kFaceCount> robin_faces{true, true, true, true, true, true};
};

std::vector<std::string> validate(const BoundarySpec& spec);

/// Electric Dirichlet data. `reduced_index[n]` is the position of node n in
/// the free set, or -1 for a fixed node.
struct DirichletSet {
    std::vector<Index> fixed_nodes;
    std::vector<double> fixed_values;
    std::vector<Index> free_nodes;
    std::vector<Index> reduced_index;

    [[nodiscard]] bool is_fixed(Index node) const { return reduced_index[node] < 0; }
};

/// Throws ConfigError without contacts (the electric problem would be
/// singular) or when a node receives two different potentials.
DirichletSet dirichlet_partition(const Grid& grid, const BoundarySpec& spec, double tol);

/// Diagonal Robin matrix and right-hand side: B_jj = coeff_j A_j and
/// b_j = coeff_j A_j T_inf, with A_j the exterior dual area on enabled faces.
struct RobinTerms {
    Eigen::VectorXd diagonal;
    Eigen::VectorXd rhs;
};

/// Exterior dual area per node restricted to `spec.robin_faces`.
Eigen::VectorXd robin_area(const Grid& grid, const BoundarySpec& spec);

RobinTerms convection_terms(const Grid& grid, const BoundarySpec& spec);

/// h_rad = eps sigma_SB (T_k^2 + T_inf^2)(T_k + T_inf), so h_rad (T - T_inf)
/// reproduces eps sigma_SB (T^4 - T_inf^4) once T = T_k.
double radiation_coefficient(double emissivity, double t_k, double ambient);

/// Picard-linearized radiation about `t_k`. Throws SolverStateError when a
/// boundary node has a nonpositive temperature.
RobinTerms radiation_terms(const Grid& grid, const BoundarySpec& spec, const Eigen::VectorXd& t_k);

}  // namespace bondtherm
