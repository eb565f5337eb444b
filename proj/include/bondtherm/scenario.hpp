#pragma once

// =============================================================================
// Scenario configuration
// =============================================================================
// JSON document with the top-level keys
//   grid, materials, regions, wires, contacts, boundary, time, uq, output.
// All quantities are SI. Geometry keys may instead carry an explicit "_mm"
// suffix (e.g. "min_mm", "diameter_mm"); giving both spellings is an error.
// Grid axes are either explicit tick lists or graded descriptions
//   {"breaks": [...], "max_step": h}
// and, with "auto_breaks": true, additionally conform to every region,
// contact and wire endpoint coordinate.
// =============================================================================

#include "bondtherm/boundary.hpp"
#include "bondtherm/bondwire.hpp"
#include "bondtherm/materials.hpp"
#include "bondtherm/solver.hpp"
#include "bondtherm/uq.hpp"

#include "json.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bondtherm {

struct NamedRegion {
    std::string name;
    std::string material;
    Box box;
};

struct UqConfig {
    ElongationDist dist;
    std::optional<std::string> samples_file;  // fitted when present
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    double t_critical = 523.0;  // K
    double k_sigma = 6.0;
};

struct OutputConfig {
    std::string directory = "output";
    bool vtk = false;
    int vtk_every = 0;  // steps between snapshots, 0 = first and last only
};

struct Scenario {
    std::array<std::vector<double>, 3> axes;  // m
    double snap_tolerance = 1e-9;             // m
    MaterialTable materials;
    std::string background;
    std::vector<NamedRegion> regions;
    std::vector<WireSpec> wires;
    BoundarySpec boundary;
    SolverConfig solver;
    double end_time = 50.0;  // s
    UqConfig uq;
    OutputConfig output;
    std::vector<std::string> warnings;

    [[nodiscard]] std::vector<std::string> wire_ids() const;
    /// Times of the steps 0..steps.
    [[nodiscard]] std::vector<double> time_points() const;
};

/// Parses and fully validates a document, geometry included. Throws
/// ConfigError carrying every problem found, each prefixed with its key path.
/// Relative file references resolve against `base_dir`.
Scenario parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

/// Reads and parses a JSON file; syntax errors become ConfigError.
Scenario load_config(const std::filesystem::path& path);

/// Canonical SI document (explicit ticks) that parses back to an equivalent
/// scenario.
nlohmann::json to_json(const Scenario& scenario);

/// Grid, material field, wire stamps and Dirichlet data for the scenario.
Model build_model(const Scenario& scenario);

}  // namespace bondtherm
