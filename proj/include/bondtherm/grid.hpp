#pragma once

// =============================================================================
// Staggered tensor-product hexahedral grid
// =============================================================================
// Primary nodes carry potentials and temperatures. Each primary edge crosses
// exactly one dual facet and each node sits inside exactly one dual cell.
// Dual cells are bounded by the mid-planes between ticks and are clipped at
// the domain boundary (half, quarter and eighth cells).
//
// Indexing:
//   node (i,j,k)  ->  i + nx*(j + ny*k)              (x fastest)
//   edges         ->  x-block, then y-block, then z-block, each lexicographic
//   cell (i,j,k)  ->  i + (nx-1)*(j + (ny-1)*k)
// Every edge points from its lower-index node (tail) to its higher one (head).
// =============================================================================

#include <Eigen/SparseCore>

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bondtherm {

using Index = std::ptrdiff_t;
using Vec3 = std::array<double, 3>;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Topological operator with entries in {-1, 0, +1}.
using IncidenceMatrix = SparseMatrix;

/// Exterior faces of the bounding box, ordered x-, x+, y-, y+, z-, z+.
enum class Face : int { XMin = 0, XMax, YMin, YMax, ZMin, ZMax };
inline constexpr int kFaceCount = 6;

/// Axis-aligned box in meters. Degenerate (zero-thickness) boxes are allowed.
struct Box {
    Vec3 min{};
    Vec3 max{};
};

/// Inclusive tick index ranges of a box snapped onto grid planes.
struct NodeRange {
    std::array<Index, 3> lo{};
    std::array<Index, 3> hi{};
};

struct SnapResult {
    Index node = 0;
    double distance = 0.0;
    std::optional<std::string> warning;
};

class Grid {
public:
    /// Throws ConfigError naming the axis when an axis has fewer than two
    /// ticks or is not strictly increasing.
    static Grid build(std::array<std::vector<double>, 3> axes);

    [[nodiscard]] Index nodes_along(int axis) const { return static_cast<Index>(ticks_[axis].size()); }
    [[nodiscard]] Index node_count() const { return n_[0] * n_[1] * n_[2]; }
    [[nodiscard]] Index edge_count() const { return static_cast<Index>(edge_tail_.size()); }
    [[nodiscard]] Index cell_count() const { return (n_[0] - 1) * (n_[1] - 1) * (n_[2] - 1); }

    [[nodiscard]] const std::vector<double>& ticks(int axis) const { return ticks_[axis]; }
    [[nodiscard]] double extent(int axis) const { return ticks_[axis].back() - ticks_[axis].front(); }

    [[nodiscard]] Index node_index(Index i, Index j, Index k) const { return i + n_[0] * (j + n_[1] * k); }
    [[nodiscard]] std::array<Index, 3> node_ijk(Index node) const {
        return {node % n_[0], (node / n_[0]) % n_[1], node / (n_[0] * n_[1])};
    }
    [[nodiscard]] Vec3 node_position(Index node) const;

    [[nodiscard]] Index cell_index(Index i, Index j, Index k) const {
        return i + (n_[0] - 1) * (j + (n_[1] - 1) * k);
    }
    [[nodiscard]] std::array<Index, 3> cell_ijk(Index cell) const {
        const Index cx = n_[0] - 1;
        const Index cy = n_[1] - 1;
        return {cell % cx, (cell / cx) % cy, cell / (cx * cy)};
    }
    [[nodiscard]] double cell_volume(Index cell) const;

    /// First edge index of the block of edges parallel to `axis`.
    [[nodiscard]] Index edge_block_offset(int axis) const { return edge_offset_[axis]; }
    /// Index of the edge parallel to `axis` whose tail is node (i,j,k).
    [[nodiscard]] Index edge_index(int axis, Index i, Index j, Index k) const;

    [[nodiscard]] Index edge_tail(Index e) const { return edge_tail_[e]; }
    [[nodiscard]] Index edge_head(Index e) const { return edge_head_[e]; }
    [[nodiscard]] int edge_axis(Index e) const;

    [[nodiscard]] std::span<const double> edge_lengths() const { return edge_length_; }
    [[nodiscard]] std::span<const double> dual_areas() const { return dual_area_; }
    [[nodiscard]] std::span<const double> dual_volumes() const { return dual_volume_; }
    [[nodiscard]] std::span<const double> boundary_areas() const { return boundary_area_; }

    /// Width of the dual cell around tick `i` along `axis` (sum of the two
    /// adjacent half intervals, one at the ends).
    [[nodiscard]] double dual_width(int axis, Index i) const;
    [[nodiscard]] double interval(int axis, Index i) const { return ticks_[axis][i + 1] - ticks_[axis][i]; }

    /// Exterior area of the dual cell of `node` lying on `face` (0 if the
    /// node is not on that face).
    [[nodiscard]] double face_area(Index node, Face face) const;

    [[nodiscard]] std::string describe_node(Index node) const;

private:
    Grid() = default;

    std::array<std::vector<double>, 3> ticks_;
    std::array<Index, 3> n_{};
    std::array<Index, 3> edge_offset_{};
    std::vector<Index> edge_tail_;
    std::vector<Index> edge_head_;
    std::vector<double> edge_length_;
    std::vector<double> dual_area_;
    std::vector<double> dual_volume_;
    std::vector<double> boundary_area_;
};

/// Discrete gradient G (edges x nodes): -1 at the tail node, +1 at the head.
IncidenceMatrix gradient_operator(const Grid& grid);

/// Discrete divergence S~ (nodes x edges), assembled node by node from the
/// edges incident to each dual cell. Satisfies S~ = -G^T.
IncidenceMatrix divergence_operator(const Grid& grid);

/// Nearest node to `p`; ties go to the lowest node index. Throws
/// GeometryError when the point is farther than `tol` from every node.
SnapResult snap_point(const Grid& grid, const Vec3& p, double tol);

/// Snaps every face of `box` onto a grid plane. Throws GeometryError when a
/// face is farther than `tol` from the nearest plane.
NodeRange snap_box(const Grid& grid, const Box& box, double tol);

/// Builds strictly increasing ticks that contain every breakpoint (after
/// merging points closer than `merge_tol`) and subdivide each interval
/// uniformly so no step exceeds `max_step`.
std::vector<double> graded_ticks(std::vector<double> breakpoints, double max_step, double merge_tol);

}  // namespace bondtherm
