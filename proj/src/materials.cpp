#include "bondtherm/materials.hpp"

#include "bondtherm/error.hpp"

#include <cmath>
#include <sstream>

namespace bondtherm {

namespace {

double reciprocal_law(const MaterialLaw& law, double ref_value, double alpha, double temperature, const char* what) {
    if (!(temperature >= kMinValidTemperature && temperature <= kMaxValidTemperature)) {
        std::ostringstream os;
        os << "material '" << law.name << "': " << what << " requested at T = " << temperature
           << " K, outside the valid range [" << kMinValidTemperature << ", " << kMaxValidTemperature << "] K";
        throw MaterialRangeError(os.str());
    }
    const double denom = 1.0 + alpha * (temperature - law.t_ref);
    if (!(denom > 0.0)) {
        std::ostringstream os;
        os << "material '" << law.name << "': " << what << " law denominator " << denom << " <= 0 at T = "
           << temperature << " K";
        throw MaterialRangeError(os.str());
    }
    return ref_value / denom;
}

enum class Conductivity { Electric, Thermal };

double conductivity_at(const MaterialLaw& law, Conductivity kind, double temperature) {
    return kind == Conductivity::Electric ? sigma_at(law, temperature) : lambda_at(law, temperature);
}

Eigen::VectorXd assemble_edge_conductance(const Grid& grid, const MaterialField& field, const MaterialTable& table,
                                          const Eigen::VectorXd& temperature, Conductivity kind) {
    Eigen::VectorXd m(grid.edge_count());
    const std::array<Index, 3> n{grid.nodes_along(0), grid.nodes_along(1), grid.nodes_along(2)};
    const auto lengths = grid.edge_lengths();
    for (Index e = 0; e < grid.edge_count(); ++e) {
        const int axis = grid.edge_axis(e);
        const int a1 = (axis + 1) % 3;
        const int a2 = (axis + 2) % 3;
        const auto tail = grid.node_ijk(grid.edge_tail(e));
        const double t_edge = 0.5 * (temperature[grid.edge_tail(e)] + temperature[grid.edge_head(e)]);

        double weighted = 0.0;  // sum of quadrant area * conductivity
        for (Index c1 = tail[a1] - 1; c1 <= tail[a1]; ++c1) {
            if (c1 < 0 || c1 + 1 >= n[a1]) continue;
            for (Index c2 = tail[a2] - 1; c2 <= tail[a2]; ++c2) {
                if (c2 < 0 || c2 + 1 >= n[a2]) continue;
                std::array<Index, 3> cell{};
                cell[axis] = tail[axis];
                cell[a1] = c1;
                cell[a2] = c2;
                const double quadrant = 0.25 * grid.interval(a1, c1) * grid.interval(a2, c2);
                const MaterialId id = field.cell_material[grid.cell_index(cell[0], cell[1], cell[2])];
                weighted += quadrant * conductivity_at(table[id], kind, t_edge);
            }
        }
        m[e] = weighted / lengths[e];
    }
    return m;
}

}  // namespace

std::vector<std::string> validate(const MaterialLaw& law) {
    std::vector<std::string> errors;
    const std::string who = "material '" + law.name + "'";
    if (!(law.sigma_ref > 0.0)) errors.push_back(who + ": sigma_ref must be > 0");
    if (!(law.lambda_ref > 0.0)) errors.push_back(who + ": lambda_ref must be > 0");
    if (!(law.rho_c > 0.0)) errors.push_back(who + ": rho_c must be > 0");
    if (!(law.t_ref > 0.0)) errors.push_back(who + ": t_ref must be > 0");
    for (double t : {kMinValidTemperature, kMaxValidTemperature}) {
        if (!(1.0 + law.alpha_sigma * (t - law.t_ref) > 0.0)) {
            errors.push_back(who + ": alpha_sigma makes sigma nonpositive at " + std::to_string(t) + " K");
        }
        if (!(1.0 + law.alpha_lambda * (t - law.t_ref) > 0.0)) {
            errors.push_back(who + ": alpha_lambda makes lambda nonpositive at " + std::to_string(t) + " K");
        }
    }
    return errors;
}

double sigma_at(const MaterialLaw& law, double temperature) {
    return reciprocal_law(law, law.sigma_ref, law.alpha_sigma, temperature, "sigma");
}

double lambda_at(const MaterialLaw& law, double temperature) {
    return reciprocal_law(law, law.lambda_ref, law.alpha_lambda, temperature, "lambda");
}

MaterialId MaterialTable::add(MaterialLaw law) {
    if (auto errors = validate(law); !errors.empty()) throw ConfigError(std::move(errors));
    if (find(law.name)) throw ConfigError("material '" + law.name + "' defined twice");
    laws_.push_back(std::move(law));
    return static_cast<MaterialId>(laws_.size() - 1);
}

std::optional<MaterialId> MaterialTable::find(const std::string& name) const {
    for (std::size_t i = 0; i < laws_.size(); ++i) {
        if (laws_[i].name == name) return static_cast<MaterialId>(i);
    }
    return std::nullopt;
}

bool MaterialTable::temperature_dependent_sigma() const {
    for (const auto& law : laws_) {
        if (law.alpha_sigma != 0.0) return true;
    }
    return false;
}

MaterialField assign_regions(const Grid& grid, const std::vector<Region>& regions, MaterialId background, double tol) {
    MaterialField field;
    field.cell_material.assign(static_cast<std::size_t>(grid.cell_count()), background);
    for (std::size_t r = 0; r < regions.size(); ++r) {
        NodeRange range;
        try {
            range = snap_box(grid, regions[r].box, tol);
        } catch (const GeometryError& e) {
            throw GeometryError("region " + std::to_string(r) + ": " + e.what());
        }
        for (int a = 0; a < 3; ++a) {
            if (range.hi[a] == range.lo[a]) {
                throw GeometryError("region " + std::to_string(r) + ": box has zero thickness on the grid");
            }
        }
        for (Index k = range.lo[2]; k < range.hi[2]; ++k)
            for (Index j = range.lo[1]; j < range.hi[1]; ++j)
                for (Index i = range.lo[0]; i < range.hi[0]; ++i)
                    field.cell_material[grid.cell_index(i, j, k)] = regions[r].material;
    }
    return field;
}

Eigen::VectorXd assemble_m_sigma(const Grid& grid, const MaterialField& field, const MaterialTable& table,
                                 const Eigen::VectorXd& temperature) {
    return assemble_edge_conductance(grid, field, table, temperature, Conductivity::Electric);
}

Eigen::VectorXd assemble_m_lambda(const Grid& grid, const MaterialField& field, const MaterialTable& table,
                                  const Eigen::VectorXd& temperature) {
    return assemble_edge_conductance(grid, field, table, temperature, Conductivity::Thermal);
}

Eigen::VectorXd assemble_m_rhoc(const Grid& grid, const MaterialField& field, const MaterialTable& table) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(grid.node_count());
    for (Index c = 0; c < grid.cell_count(); ++c) {
        const auto [i, j, k] = grid.cell_ijk(c);
        const double share = 0.125 * grid.cell_volume(c) * table[field.cell_material[c]].rho_c;
        for (Index dk = 0; dk < 2; ++dk)
            for (Index dj = 0; dj < 2; ++dj)
                for (Index di = 0; di < 2; ++di) m[grid.node_index(i + di, j + dj, k + dk)] += share;
    }
    return m;
}

Eigen::VectorXd joule_cell_density(const Grid& grid, const MaterialField& field, const MaterialTable& table,
                                   const Eigen::VectorXd& potential, const Eigen::VectorXd& temperature) {
    Eigen::VectorXd q(grid.cell_count());
    for (Index c = 0; c < grid.cell_count(); ++c) {
        const auto [i, j, k] = grid.cell_ijk(c);
        double t_cell = 0.0;
        for (Index dk = 0; dk < 2; ++dk)
            for (Index dj = 0; dj < 2; ++dj)
                for (Index di = 0; di < 2; ++di) t_cell += temperature[grid.node_index(i + di, j + dj, k + dk)];
        t_cell *= 0.125;

        // mean of the four parallel edge voltages per direction
        const std::array<double, 3> h{grid.interval(0, i), grid.interval(1, j), grid.interval(2, k)};
        double e2 = 0.0;
        for (int axis = 0; axis < 3; ++axis) {
            const int a1 = (axis + 1) % 3;
            const int a2 = (axis + 2) % 3;
            double v = 0.0;
            for (Index s1 = 0; s1 < 2; ++s1)
                for (Index s2 = 0; s2 < 2; ++s2) {
                    std::array<Index, 3> lo{i, j, k};
                    lo[a1] += s1;
                    lo[a2] += s2;
                    auto hi = lo;
                    hi[axis] += 1;
                    v += potential[grid.node_index(hi[0], hi[1], hi[2])] - potential[grid.node_index(lo[0], lo[1], lo[2])];
                }
            const double e = 0.25 * v / h[axis];
            e2 += e * e;
        }
        q[c] = sigma_at(table[field.cell_material[c]], t_cell) * e2;
    }
    return q;
}

Eigen::VectorXd joule_node_power(const Grid& grid, const MaterialField& field, const MaterialTable& table,
                                 const Eigen::VectorXd& potential, const Eigen::VectorXd& temperature) {
    const Eigen::VectorXd density = joule_cell_density(grid, field, table, potential, temperature);
    Eigen::VectorXd p = Eigen::VectorXd::Zero(grid.node_count());
    for (Index c = 0; c < grid.cell_count(); ++c) {
        const double share = 0.125 * grid.cell_volume(c) * density[c];
        if (share == 0.0) continue;
        const auto [i, j, k] = grid.cell_ijk(c);
        for (Index dk = 0; dk < 2; ++dk)
            for (Index dj = 0; dj < 2; ++dj)
                for (Index di = 0; di < 2; ++di) p[grid.node_index(i + di, j + dj, k + dk)] += share;
    }
    return p;
}

}  // namespace bondtherm
