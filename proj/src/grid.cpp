#include "bondtherm/grid.hpp"

#include "bondtherm/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bondtherm {

namespace {

constexpr const char* kAxisName[3] = {"x", "y", "z"};

// Index of the tick nearest to v; ties resolve to the lower index.
Index nearest_tick(const std::vector<double>& ticks, double v) {
    auto it = std::lower_bound(ticks.begin(), ticks.end(), v);
    if (it == ticks.begin()) return 0;
    if (it == ticks.end()) return static_cast<Index>(ticks.size()) - 1;
    const Index hi = it - ticks.begin();
    const Index lo = hi - 1;
    return (v - ticks[lo] <= ticks[hi] - v) ? lo : hi;
}

}  // namespace

Grid Grid::build(std::array<std::vector<double>, 3> axes) {
    for (int a = 0; a < 3; ++a) {
        const auto& t = axes[a];
        if (t.size() < 2) {
            throw ConfigError(std::string("grid axis ") + kAxisName[a] + ": needs at least 2 ticks, got " +
                              std::to_string(t.size()));
        }
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!std::isfinite(t[i])) {
                throw ConfigError(std::string("grid axis ") + kAxisName[a] + ": tick " + std::to_string(i) +
                                  " is not finite");
            }
            if (i > 0 && !(t[i] > t[i - 1])) {
                throw ConfigError(std::string("grid axis ") + kAxisName[a] + ": ticks not strictly increasing at index " +
                                  std::to_string(i));
            }
        }
    }

    Grid g;
    g.ticks_ = std::move(axes);
    for (int a = 0; a < 3; ++a) g.n_[a] = static_cast<Index>(g.ticks_[a].size());
    const auto [nx, ny, nz] = g.n_;

    const Index ex = (nx - 1) * ny * nz;
    const Index ey = nx * (ny - 1) * nz;
    const Index ez = nx * ny * (nz - 1);
    g.edge_offset_ = {0, ex, ex + ey};
    const Index n_edges = ex + ey + ez;
    g.edge_tail_.resize(n_edges);
    g.edge_head_.resize(n_edges);
    g.edge_length_.resize(n_edges);
    g.dual_area_.resize(n_edges);

    // x-block
    for (Index k = 0; k < nz; ++k)
        for (Index j = 0; j < ny; ++j)
            for (Index i = 0; i + 1 < nx; ++i) {
                const Index e = g.edge_index(0, i, j, k);
                g.edge_tail_[e] = g.node_index(i, j, k);
                g.edge_head_[e] = g.node_index(i + 1, j, k);
                g.edge_length_[e] = g.interval(0, i);
                g.dual_area_[e] = g.dual_width(1, j) * g.dual_width(2, k);
            }
    // y-block
    for (Index k = 0; k < nz; ++k)
        for (Index j = 0; j + 1 < ny; ++j)
            for (Index i = 0; i < nx; ++i) {
                const Index e = g.edge_index(1, i, j, k);
                g.edge_tail_[e] = g.node_index(i, j, k);
                g.edge_head_[e] = g.node_index(i, j + 1, k);
                g.edge_length_[e] = g.interval(1, j);
                g.dual_area_[e] = g.dual_width(0, i) * g.dual_width(2, k);
            }
    // z-block
    for (Index k = 0; k + 1 < nz; ++k)
        for (Index j = 0; j < ny; ++j)
            for (Index i = 0; i < nx; ++i) {
                const Index e = g.edge_index(2, i, j, k);
                g.edge_tail_[e] = g.node_index(i, j, k);
                g.edge_head_[e] = g.node_index(i, j, k + 1);
                g.edge_length_[e] = g.interval(2, k);
                g.dual_area_[e] = g.dual_width(0, i) * g.dual_width(1, j);
            }

    const Index n_nodes = g.node_count();
    g.dual_volume_.resize(n_nodes);
    g.boundary_area_.assign(n_nodes, 0.0);
    for (Index n = 0; n < n_nodes; ++n) {
        const auto [i, j, k] = g.node_ijk(n);
        g.dual_volume_[n] = g.dual_width(0, i) * g.dual_width(1, j) * g.dual_width(2, k);
        double a = 0.0;
        for (int f = 0; f < kFaceCount; ++f) a += g.face_area(n, static_cast<Face>(f));
        g.boundary_area_[n] = a;
    }
    return g;
}

Vec3 Grid::node_position(Index node) const {
    const auto [i, j, k] = node_ijk(node);
    return {ticks_[0][i], ticks_[1][j], ticks_[2][k]};
}

double Grid::cell_volume(Index cell) const {
    const auto [i, j, k] = cell_ijk(cell);
    return interval(0, i) * interval(1, j) * interval(2, k);
}

Index Grid::edge_index(int axis, Index i, Index j, Index k) const {
    switch (axis) {
        case 0: return edge_offset_[0] + i + (n_[0] - 1) * (j + n_[1] * k);
        case 1: return edge_offset_[1] + i + n_[0] * (j + (n_[1] - 1) * k);
        default: return edge_offset_[2] + i + n_[0] * (j + n_[1] * k);
    }
}

int Grid::edge_axis(Index e) const {
    if (e < edge_offset_[1]) return 0;
    if (e < edge_offset_[2]) return 1;
    return 2;
}

double Grid::dual_width(int axis, Index i) const {
    const auto& t = ticks_[axis];
    const Index n = static_cast<Index>(t.size());
    double w = 0.0;
    if (i > 0) w += 0.5 * (t[i] - t[i - 1]);
    if (i + 1 < n) w += 0.5 * (t[i + 1] - t[i]);
    return w;
}

double Grid::face_area(Index node, Face face) const {
    const auto ijk = node_ijk(node);
    const int f = static_cast<int>(face);
    const int axis = f / 2;
    const bool upper = (f % 2) == 1;
    const Index at = upper ? n_[axis] - 1 : 0;
    if (ijk[axis] != at) return 0.0;
    const int a1 = (axis + 1) % 3;
    const int a2 = (axis + 2) % 3;
    return dual_width(a1, ijk[a1]) * dual_width(a2, ijk[a2]);
}

std::string Grid::describe_node(Index node) const {
    const auto [i, j, k] = node_ijk(node);
    const auto p = node_position(node);
    std::ostringstream os;
    os << "node " << node << " (" << i << "," << j << "," << k << ") at (" << p[0] << ", " << p[1] << ", " << p[2]
       << ") m";
    return os.str();
}

IncidenceMatrix gradient_operator(const Grid& grid) {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(2 * static_cast<std::size_t>(grid.edge_count()));
    for (Index e = 0; e < grid.edge_count(); ++e) {
        t.emplace_back(e, grid.edge_tail(e), -1.0);
        t.emplace_back(e, grid.edge_head(e), 1.0);
    }
    IncidenceMatrix g(grid.edge_count(), grid.node_count());
    g.setFromTriplets(t.begin(), t.end());
    return g;
}

IncidenceMatrix divergence_operator(const Grid& grid) {
    // Outflow through the dual facet of an edge counts +1 for the node the
    // edge leaves and -1 for the node it enters.
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(6 * static_cast<std::size_t>(grid.node_count()));
    std::array<Index, 3> n{grid.nodes_along(0), grid.nodes_along(1), grid.nodes_along(2)};
    for (Index node = 0; node < grid.node_count(); ++node) {
        const auto ijk = grid.node_ijk(node);
        for (int axis = 0; axis < 3; ++axis) {
            if (ijk[axis] + 1 < n[axis]) {
                t.emplace_back(node, grid.edge_index(axis, ijk[0], ijk[1], ijk[2]), 1.0);
            }
            if (ijk[axis] > 0) {
                auto prev = ijk;
                prev[axis] -= 1;
                t.emplace_back(node, grid.edge_index(axis, prev[0], prev[1], prev[2]), -1.0);
            }
        }
    }
    IncidenceMatrix s(grid.node_count(), grid.edge_count());
    s.setFromTriplets(t.begin(), t.end());
    return s;
}

SnapResult snap_point(const Grid& grid, const Vec3& p, double tol) {
    std::array<Index, 3> idx{};
    double d2 = 0.0;
    for (int a = 0; a < 3; ++a) {
        const auto& t = grid.ticks(a);
        idx[a] = nearest_tick(t, p[a]);
        const double d = p[a] - t[idx[a]];
        d2 += d * d;
    }
    SnapResult r;
    r.node = grid.node_index(idx[0], idx[1], idx[2]);
    r.distance = std::sqrt(d2);
    if (r.distance > tol) {
        std::ostringstream os;
        os << "point (" << p[0] << ", " << p[1] << ", " << p[2] << ") m is " << r.distance
           << " m from the nearest grid node, beyond tolerance " << tol << " m; nearest is "
           << grid.describe_node(r.node);
        throw GeometryError(os.str());
    }
    if (r.distance > 0.0) {
        std::ostringstream os;
        os << "point (" << p[0] << ", " << p[1] << ", " << p[2] << ") m snapped by " << r.distance << " m to "
           << grid.describe_node(r.node);
        r.warning = os.str();
    }
    return r;
}

NodeRange snap_box(const Grid& grid, const Box& box, double tol) {
    NodeRange r;
    for (int a = 0; a < 3; ++a) {
        if (box.max[a] < box.min[a]) {
            throw GeometryError(std::string("box has max < min along ") + kAxisName[a]);
        }
        const auto& t = grid.ticks(a);
        for (int side = 0; side < 2; ++side) {
            const double v = side == 0 ? box.min[a] : box.max[a];
            const Index i = nearest_tick(t, v);
            if (std::abs(t[i] - v) > tol) {
                std::ostringstream os;
                os << "box face " << (side == 0 ? "min" : "max") << "_" << kAxisName[a] << " = " << v
                   << " m is not on a grid plane (nearest " << t[i] << " m, tolerance " << tol << " m)";
                throw GeometryError(os.str());
            }
            (side == 0 ? r.lo : r.hi)[a] = i;
        }
    }
    return r;
}

std::vector<double> graded_ticks(std::vector<double> breakpoints, double max_step, double merge_tol) {
    if (breakpoints.size() < 2) throw ConfigError("graded axis needs at least 2 breakpoints");
    if (!(max_step > 0.0)) throw ConfigError("graded axis max_step must be > 0");
    std::sort(breakpoints.begin(), breakpoints.end());
    std::vector<double> merged;
    for (double b : breakpoints) {
        if (merged.empty() || b - merged.back() > merge_tol) merged.push_back(b);
    }
    if (merged.size() < 2) throw ConfigError("graded axis collapses to a single point");
    std::vector<double> ticks{merged.front()};
    for (std::size_t s = 1; s < merged.size(); ++s) {
        const double a = merged[s - 1];
        const double b = merged[s];
        const auto parts = static_cast<long>(std::ceil((b - a) / max_step - 1e-9));
        for (long p = 1; p < parts; ++p) ticks.push_back(a + (b - a) * static_cast<double>(p) / static_cast<double>(parts));
        ticks.push_back(b);
    }
    return ticks;
}

}  // namespace bondtherm
