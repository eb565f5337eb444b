#include "bondtherm/commands.hpp"

#include "bondtherm/error.hpp"
#include "bondtherm/output.hpp"
#include "bondtherm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

namespace bondtherm {

namespace {

void report(const std::exception& e, std::ostream& err) {
    if (const auto* c = dynamic_cast<const ConfigError*>(&e)) {
        err << "configuration error:\n";
        for (const auto& m : c->messages()) err << "  " << m << '\n';
        return;
    }
    const char* kind = "error";
    switch (exit_code_for(e)) {
        case kExitConfig: kind = "configuration error"; break;
        case kExitNumerical: kind = "numerical failure"; break;
        default: break;
    }
    err << kind << ": " << e.what() << '\n';
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        report(e, err);
        return exit_code_for(e);
    }
}

Scenario load(const CommandOptions& o, std::ostream& err) {
    if (o.config.empty()) throw ConfigError("--config: a configuration file is required");
    Scenario sc = load_config(o.config);
    if (o.samples) {
        if (*o.samples < 1) throw ConfigError("--samples: must be >= 1");
        sc.uq.samples = *o.samples;
    }
    if (o.seed) sc.uq.seed = *o.seed;
    if (o.output) sc.output.directory = o.output->string();
    if (o.vtk_every) {
        if (*o.vtk_every < 0) throw ConfigError("--vtk-every: must be >= 0");
        sc.output.vtk = true;
        sc.output.vtk_every = *o.vtk_every;
    }
    if (!o.quiet) {
        for (const auto& w : sc.warnings) err << "warning: " << w << '\n';
    }
    return sc;
}

std::filesystem::path prepare_output(const Scenario& sc) {
    const std::filesystem::path dir(sc.output.directory);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

std::string vtk_name(int step) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fields_%04d.vtk", step);
    return buf;
}

}  // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const GeometryError*>(&e) ||
        dynamic_cast<const DataError*>(&e)) {
        return kExitConfig;
    }
    if (dynamic_cast<const NumericalError*>(&e) || dynamic_cast<const SolverStateError*>(&e) ||
        dynamic_cast<const MaterialRangeError*>(&e)) {
        return kExitNumerical;
    }
    return kExitFailure;
}

unsigned default_workers() {
    if (const char* env = std::getenv("BONDTHERM_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SampleFunction transient_sampler(std::shared_ptr<const Model> model, SolverConfig config, ElongationDist dist) {
    return [model = std::move(model), config, dist](std::uint64_t, Rng& rng) {
        Simulator sim(*model, config, sample_elongations(dist, model->wires.size(), rng));
        const TransientResult r = sim.run_transient();
        Trajectory tr;
        tr.reserve(r.records.size());
        for (const auto& rec : r.records) tr.push_back(rec.wire_temperature);
        return tr;
    };
}

int cmd_check(const CommandOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Scenario sc = load(options, err);
        const Model m = build_model(sc);
        if (!options.quiet) {
            out << "configuration ok: " << m.grid.nodes_along(0) << " x " << m.grid.nodes_along(1) << " x "
                << m.grid.nodes_along(2) << " nodes, " << sc.materials.size() << " materials, " << sc.wires.size()
                << " wires, " << sc.boundary.contacts.size() << " contacts, " << sc.solver.steps << " steps of "
                << format_sig9(sc.solver.dt) << " s\n";
        }
        return kExitOk;
    });
}

int cmd_run(const CommandOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Scenario sc = load(options, err);
        const Model model = build_model(sc);
        const std::filesystem::path dir = prepare_output(sc);
        Simulator sim(model, sc.solver);

        const int steps = sc.solver.steps;
        auto snapshot = [&](const SimState& s, int step) {
            if (sc.output.vtk) {
                const bool cadence = sc.output.vtk_every > 0 && step % sc.output.vtk_every == 0;
                if (step == 0 || step == steps || cadence) {
                    write_vtk(sc.axes, s.temperature, s.potential, s.t, dir / vtk_name(step));
                }
            }
            if (!options.quiet && step > 0) {
                const StepRecord& rec = sim.last_step();
                out << "step " << step << '/' << steps << "  t=" << format_sig9(s.t)
                    << " s  max|dT|=" << format_sig9(rec.max_temperature_change)
                    << " K  picard=" << rec.picard_iterations << '\n';
            }
        };
        const TransientResult r = sim.run_transient(snapshot);

        WireSeries series;
        series.wire_ids = sc.wire_ids();
        for (const auto& rec : r.records) {
            series.times.push_back(rec.t);
            series.mean.push_back(rec.wire_temperature);
            series.stddev.emplace_back(rec.wire_temperature.size(), 0.0);
        }
        write_timeseries_csv(series, dir / "wire_temperatures.csv");

        const StepRecord& last = r.records.back();
        std::size_t hottest = 0;
        double hottest_t = 0.0;
        for (std::size_t j = 0; j < last.wire_temperature.size(); ++j) {
            if (j == 0 || last.wire_temperature[j] > hottest_t) {
                hottest = j;
                hottest_t = last.wire_temperature[j];
            }
        }
        const EnergyBalance& b = last.balance;
        const double input = b.input();
        std::vector<std::pair<std::string, std::string>> kv{
            {"t_end_s", format_sig9(last.t)},
            {"steps", std::to_string(steps)},
            {"hottest_wire", sc.wires.empty() ? "" : sc.wires[hottest].id},
            {"hottest_wire_end_K", sc.wires.empty() ? "" : format_sig9(hottest_t)},
            {"max_temperature_end_K", format_sig9(r.final_state.temperature.maxCoeff())},
            {"last_step_max_dT_K", format_sig9(last.max_temperature_change)},
            {"joule_field_W", format_sig9(b.field_joule)},
            {"joule_wires_W", format_sig9(b.wire_joule)},
            {"boundary_outflow_W", format_sig9(b.boundary_outflow)},
            {"storage_rate_W", format_sig9(b.storage_rate)},
            {"balance_residual_rel", input > 0.0 ? format_sig9(std::abs(b.residual()) / input) : ""},
        };
        write_key_values(kv, dir / "run_summary.txt");
        if (!options.quiet) {
            out << "hottest wire " << kv[2].second << " at " << kv[3].second << " K; outputs in " << dir.string()
                << '\n';
        }
        return kExitOk;
    });
}

int cmd_mc(const CommandOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Scenario sc = load(options, err);
        auto model = std::make_shared<const Model>(build_model(sc));
        if (model->wires.empty()) throw ConfigError("wires: Monte Carlo needs at least one wire");
        if (auto errors = validate(sc.uq.dist); !errors.empty()) throw ConfigError(std::move(errors));
        const std::filesystem::path dir = prepare_output(sc);

        McOptions mo;
        mo.samples = sc.uq.samples;
        mo.seed = sc.uq.seed;
        mo.workers = options.workers.value_or(default_workers());
        if (mo.workers < 1) throw ConfigError("--workers: must be >= 1");
        const McResult r =
            run_mc(transient_sampler(model, sc.solver, sc.uq.dist), sc.time_points(), sc.wire_ids(), mo);

        for (const auto& f : r.failures) err << "warning: sample " << f.index << " failed: " << f.message << '\n';
        write_timeseries_csv(series_from(r), dir / "wire_statistics.csv");
        const McSummary summary = summarize(r, sc.uq.t_critical, sc.uq.k_sigma);
        write_summary(summary, dir / "summary.txt");
        if (!options.quiet) {
            out << r.samples << " samples, hottest wire " << r.wire_ids[r.hottest_wire] << ": E="
                << format_sig9(summary.e_max_end) << " K, sigma_MC=" << format_sig9(summary.sigma_mc)
                << " K, error_MC=" << format_sig9(summary.error_mc) << " K";
            if (summary.t_cross_critical) {
                out << ", E+" << format_sig9(sc.uq.k_sigma) << "s reaches " << format_sig9(sc.uq.t_critical)
                    << " K at t=" << format_sig9(*summary.t_cross_critical) << " s";
            }
            out << '\n';
        }
        return kExitOk;
    });
}

}  // namespace bondtherm
