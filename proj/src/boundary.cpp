#include "bondtherm/boundary.hpp"

#include "bondtherm/error.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace bondtherm {

std::vector<std::string> validate(const BoundarySpec& spec) {
    std::vector<std::string> errors;
    if (!(spec.h >= 0.0)) errors.emplace_back("boundary.h: must be >= 0");
    if (!(spec.emissivity >= 0.0 && spec.emissivity <= 1.0)) errors.emplace_back("boundary.emissivity: must lie in [0, 1]");
    if (!(spec.ambient > 0.0)) errors.emplace_back("boundary.ambient: must be > 0");
    return errors;
}

DirichletSet dirichlet_partition(const Grid& grid, const BoundarySpec& spec, double tol) {
    if (spec.contacts.empty()) {
        throw ConfigError("contacts: electric problem is singular without Dirichlet data (no PEC contact)");
    }
    std::map<Index, std::pair<double, std::size_t>> fixed;  // node -> (value, contact)
    std::vector<std::string> conflicts;
    for (std::size_t c = 0; c < spec.contacts.size(); ++c) {
        const auto& contact = spec.contacts[c];
        NodeRange r;
        try {
            r = snap_box(grid, contact.box, tol);
        } catch (const GeometryError& e) {
            throw GeometryError("contact '" + contact.name + "': " + e.what());
        }
        for (Index k = r.lo[2]; k <= r.hi[2]; ++k)
            for (Index j = r.lo[1]; j <= r.hi[1]; ++j)
                for (Index i = r.lo[0]; i <= r.hi[0]; ++i) {
                    const Index n = grid.node_index(i, j, k);
                    auto [it, inserted] = fixed.try_emplace(n, contact.potential, c);
                    if (!inserted && it->second.first != contact.potential) {
                        std::ostringstream os;
                        os << "contacts: " << grid.describe_node(n) << " assigned " << it->second.first << " V by '"
                           << spec.contacts[it->second.second].name << "' and " << contact.potential << " V by '"
                           << contact.name << "'";
                        conflicts.push_back(os.str());
                    }
                }
    }
    if (!conflicts.empty()) throw ConfigError(std::move(conflicts));

    DirichletSet d;
    d.reduced_index.assign(static_cast<std::size_t>(grid.node_count()), -1);
    for (const auto& [node, value] : fixed) {
        d.fixed_nodes.push_back(node);
        d.fixed_values.push_back(value.first);
    }
    for (Index n = 0; n < grid.node_count(); ++n) {
        if (fixed.count(n)) continue;
        d.reduced_index[n] = static_cast<Index>(d.free_nodes.size());
        d.free_nodes.push_back(n);
    }
    return d;
}

Eigen::VectorXd robin_area(const Grid& grid, const BoundarySpec& spec) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(grid.node_count());
    bool all = true;
    for (bool f : spec.robin_faces) all = all && f;
    if (all) {
        const auto b = grid.boundary_areas();
        for (Index n = 0; n < grid.node_count(); ++n) a[n] = b[n];
        return a;
    }
    for (Index n = 0; n < grid.node_count(); ++n) {
        for (int f = 0; f < kFaceCount; ++f) {
            if (spec.robin_faces[f]) a[n] += grid.face_area(n, static_cast<Face>(f));
        }
    }
    return a;
}

RobinTerms convection_terms(const Grid& grid, const BoundarySpec& spec) {
    RobinTerms t;
    t.diagonal = spec.h * robin_area(grid, spec);
    t.rhs = spec.ambient * t.diagonal;
    return t;
}

double radiation_coefficient(double emissivity, double t_k, double ambient) {
    return emissivity * kStefanBoltzmann * (t_k * t_k + ambient * ambient) * (t_k + ambient);
}

RobinTerms radiation_terms(const Grid& grid, const BoundarySpec& spec, const Eigen::VectorXd& t_k) {
    const Eigen::VectorXd area = robin_area(grid, spec);
    RobinTerms t;
    t.diagonal = Eigen::VectorXd::Zero(grid.node_count());
    t.rhs = Eigen::VectorXd::Zero(grid.node_count());
    if (spec.emissivity == 0.0) return t;
    for (Index n = 0; n < grid.node_count(); ++n) {
        if (area[n] == 0.0) continue;
        if (!(t_k[n] > 0.0)) {
            std::ostringstream os;
            os << "radiation: nonpositive temperature " << t_k[n] << " K at " << grid.describe_node(n);
            throw SolverStateError(os.str());
        }
        t.diagonal[n] = radiation_coefficient(spec.emissivity, t_k[n], spec.ambient) * area[n];
        t.rhs[n] = t.diagonal[n] * spec.ambient;
    }
    return t;
}

}  // namespace bondtherm
