#pragma once

// Subcommands behind the `bondtherm` executable. Each returns the process exit
// code: 0 success, 2 configuration/geometry/data error, 3 numerical failure,
// 1 anything else (I/O included).

#include "bondtherm/scenario.hpp"
#include "bondtherm/uq.hpp"

#include <cstdint>
#include <exception>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>

namespace bondtherm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

int exit_code_for(const std::exception& e);

struct CommandOptions {
    std::filesystem::path config;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<std::filesystem::path> output;
    std::optional<int> vtk_every;  // also switches VTK output on
    bool quiet = false;
};

/// BONDTHERM_WORKERS if set to a positive integer, else the hardware thread
/// count (at least 1).
unsigned default_workers();

/// One transient run per sample with every wire elongation drawn from `dist`.
SampleFunction transient_sampler(std::shared_ptr<const Model> model, SolverConfig config, ElongationDist dist);

int cmd_run(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_mc(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_check(const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace bondtherm
