// bondtherm: coupled electrothermal simulation of bonding wires with Monte
// Carlo over uncertain wire lengths.
//
//   bondtherm check --config chip.json
//   bondtherm run   --config chip.json --output out --vtk-every 10
//   bondtherm mc    --config chip.json --samples 1000 --seed 1 --workers 8

#include "bondtherm/commands.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    using namespace bondtherm;
    CLI::App app{"Electrothermal bonding-wire simulator"};
    app.require_subcommand(1);

    CommandOptions opt;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string output;
    int vtk_every = 0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "Scenario file (JSON)")->required();
        sub->add_option("--output", output, "Output directory (overrides the config)");
        sub->add_flag("--quiet", opt.quiet, "Suppress progress and warnings");
    };
    CLI::App* run = app.add_subcommand("run", "Transient simulation with the configured wire lengths");
    common(run);
    run->add_option("--vtk-every", vtk_every, "Write a VTK snapshot every K steps (0: first and last)")
        ->check(CLI::NonNegativeNumber);
    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo over wire elongations");
    common(mc);
    mc->add_option("--samples", samples, "Number of samples M")->check(CLI::PositiveNumber);
    mc->add_option("--seed", seed, "Base seed");
    mc->add_option("--workers", workers, "Worker threads (default: BONDTHERM_WORKERS or hardware threads)")
        ->check(CLI::PositiveNumber);
    CLI::App* check = app.add_subcommand("check", "Validate a scenario without solving");
    common(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (!output.empty()) opt.output = output;
    if (mc->count("--samples")) opt.samples = samples;
    if (mc->count("--seed")) opt.seed = seed;
    if (mc->count("--workers")) opt.workers = workers;
    if (run->count("--vtk-every")) opt.vtk_every = vtk_every;

    if (*run) return cmd_run(opt, std::cout, std::cerr);
    if (*mc) return cmd_mc(opt, std::cout, std::cerr);
    return cmd_check(opt, std::cout, std::cerr);
}
