#include "bondtherm/bondwire.hpp"

#include "bondtherm/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bondtherm {

double WireSpec::length_for(double delta) const {
    if (!(direct_distance > 0.0)) {
        throw GeometryError("wire " + id + ": direct distance must be > 0");
    }
    if (!(delta >= 0.0 && delta < 1.0)) {
        std::ostringstream os;
        os << "wire " << id << ": elongation " << delta << " outside [0, 1) gives no finite length";
        throw GeometryError(os.str());
    }
    return direct_distance / (1.0 - delta);
}

double WireSpec::cross_section() const {
    return 0.25 * std::numbers::pi * diameter * diameter;
}

Eigen::VectorXd WireStamp::incidence(Index node_count) const {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(node_count);
    p[pad_node] = 1.0;
    p[chip_node] = -1.0;
    return p;
}

Eigen::VectorXd WireStamp::averaging(Index node_count) const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(node_count);
    x[pad_node] = 0.5;
    x[chip_node] = 0.5;
    return x;
}

WireConductance wire_conductances(const WireSpec& wire, double length, const MaterialTable& table,
                                  double wire_temperature) {
    if (!(length > 0.0)) throw GeometryError("wire " + wire.id + ": length must be > 0");
    const auto& law = table[wire.material];
    const double shape = wire.cross_section() / length;
    return {sigma_at(law, wire_temperature) * shape, lambda_at(law, wire_temperature) * shape};
}

WireStamp build_wire_stamp(const Grid& grid, const WireSpec& wire, double tol, std::vector<std::string>* warnings) {
    if (!(wire.diameter > 0.0)) throw GeometryError("wire " + wire.id + ": diameter must be > 0");
    SnapResult pad;
    SnapResult chip;
    try {
        pad = snap_point(grid, wire.pad_point, tol);
        chip = snap_point(grid, wire.chip_point, tol);
    } catch (const GeometryError& e) {
        throw GeometryError("wire " + wire.id + ": " + e.what());
    }
    if (pad.node == chip.node) {
        throw GeometryError("wire " + wire.id + ": both endpoints snap to " + grid.describe_node(pad.node));
    }
    if (warnings) {
        if (pad.warning) warnings->push_back("wire " + wire.id + " pad end: " + *pad.warning);
        if (chip.warning) warnings->push_back("wire " + wire.id + " chip end: " + *chip.warning);
    }
    return {pad.node, chip.node, wire.cross_section()};
}

void stamp_conductance(SparseMatrix& matrix, const WireStamp& stamp, double conductance) {
    matrix.coeffRef(stamp.pad_node, stamp.pad_node) += conductance;
    matrix.coeffRef(stamp.chip_node, stamp.chip_node) += conductance;
    matrix.coeffRef(stamp.pad_node, stamp.chip_node) -= conductance;
    matrix.coeffRef(stamp.chip_node, stamp.pad_node) -= conductance;
}

double wire_temperature(const WireStamp& stamp, const Eigen::VectorXd& temperature) {
    return 0.5 * (temperature[stamp.pad_node] + temperature[stamp.chip_node]);
}

double wire_joule(const WireStamp& stamp, double electric_conductance, const Eigen::VectorXd& potential) {
    const double dv = potential[stamp.pad_node] - potential[stamp.chip_node];
    return electric_conductance * dv * dv;
}

Eigen::VectorXd distribute_wire_heat(const std::vector<WireStamp>& stamps, const std::vector<double>& powers,
                                     Index node_count) {
    if (stamps.size() != powers.size()) {
        throw std::invalid_argument("distribute_wire_heat: one power per wire expected");
    }
    Eigen::VectorXd q = Eigen::VectorXd::Zero(node_count);
    for (std::size_t j = 0; j < stamps.size(); ++j) {
        q[stamps[j].pad_node] += 0.5 * powers[j];
        q[stamps[j].chip_node] += 0.5 * powers[j];
    }
    return q;
}

}  // namespace bondtherm
