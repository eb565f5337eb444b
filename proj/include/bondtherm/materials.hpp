#pragma once

#include "bondtherm/grid.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bondtherm {

using MaterialId = std::uint16_t;

/// Temperature range over which material laws are evaluated (K).
inline constexpr double kMinValidTemperature = 200.0;
inline constexpr double kMaxValidTemperature = 1500.0;

/// Isotropic material with resistivity-linear conductivities:
///   sigma(T)  = sigma_ref  / (1 + alpha_sigma  * (T - t_ref))
///   lambda(T) = lambda_ref / (1 + alpha_lambda * (T - t_ref))
/// The volumetric heat capacity is temperature independent.
struct MaterialLaw {
    std::string name;
    double sigma_ref = 0.0;   // S/m
    double lambda_ref = 0.0;  // W/K/m
    double rho_c = 0.0;       // J/K/m^3
    double alpha_sigma = 0.0; // 1/K
    double alpha_lambda = 0.0;// 1/K
    double t_ref = 300.0;     // K
};

/// Checks positivity and that both laws stay positive over the valid
/// temperature range. Returns one message per violation.
std::vector<std::string> validate(const MaterialLaw& law);

double sigma_at(const MaterialLaw& law, double temperature);
double lambda_at(const MaterialLaw& law, double temperature);

class MaterialTable {
public:
    MaterialId add(MaterialLaw law);
    [[nodiscard]] std::optional<MaterialId> find(const std::string& name) const;
    [[nodiscard]] const MaterialLaw& operator[](MaterialId id) const { return laws_.at(id); }
    [[nodiscard]] std::size_t size() const { return laws_.size(); }
    [[nodiscard]] const std::vector<MaterialLaw>& laws() const { return laws_; }
    [[nodiscard]] bool temperature_dependent_sigma() const;

private:
    std::vector<MaterialLaw> laws_;
};

/// Staircase material assignment: one material per primary cell.
struct MaterialField {
    std::vector<MaterialId> cell_material;
};

struct Region {
    Box box;
    MaterialId material = 0;
};

/// Assigns materials cell by cell; later regions override earlier ones and
/// uncovered cells get `background`. Box faces must lie on grid planes
/// within `tol`.
MaterialField assign_regions(const Grid& grid, const std::vector<Region>& regions, MaterialId background, double tol);

/// Diagonal of M_sigma (S): per edge, sum over the dual-facet quadrants of
/// quadrant area times the cell conductivity at the edge temperature (mean of
/// the endpoint temperatures), divided by the edge length.
Eigen::VectorXd assemble_m_sigma(const Grid& grid, const MaterialField& field, const MaterialTable& table,
                                 const Eigen::VectorXd& temperature);

/// Diagonal of M_lambda (W/K), same averaging as assemble_m_sigma.
Eigen::VectorXd assemble_m_lambda(const Grid& grid, const MaterialField& field, const MaterialTable& table,
                                  const Eigen::VectorXd& temperature);

/// Diagonal of M_rhoc (J/K): octant-volume weighted heat capacity per dual cell.
Eigen::VectorXd assemble_m_rhoc(const Grid& grid, const MaterialField& field, const MaterialTable& table);

/// Per-cell Joule power density sigma(T_cell) |E|^2 (W/m^3). E per direction
/// is the mean voltage of the four parallel cell edges over the edge length;
/// T_cell is the mean of the eight corner temperatures.
Eigen::VectorXd joule_cell_density(const Grid& grid, const MaterialField& field, const MaterialTable& table,
                                   const Eigen::VectorXd& potential, const Eigen::VectorXd& temperature);

/// Nodal Joule power (W): every cell hands V_cell/8 times its power density
/// to each of its corners.
Eigen::VectorXd joule_node_power(const Grid& grid, const MaterialField& field, const MaterialTable& table,
                                 const Eigen::VectorXd& potential, const Eigen::VectorXd& temperature);

}  // namespace bondtherm
