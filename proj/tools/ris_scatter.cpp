// ris-scatter: scenario-driven scattered-field computations for finite
// reconfigurable panels. Subcommands write CSV data plus a JSON sidecar with
// everything needed to regenerate the run.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ris/csv_io.hpp"
#include "ris/parallel.hpp"
#include "ris/scenario.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CommonOpts {
    std::string config;
    std::string engine;
    double tile_edge_wl = 0.0;
    std::string out_dir = ".";
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config, "scenario file (JSON)")->required();
    cmd->add_option("--engine", o.engine, "override engine: integral|array");
    cmd->add_option("--tile-edge", o.tile_edge_wl, "override tile edge (wavelength fraction)");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--threads", o.threads,
                    "worker threads (default: RIS_SCATTER_THREADS or hardware)");
}

ris::Scenario load_with_overrides(const CommonOpts& o) {
    ris::Scenario s = ris::load_scenario(o.config);
    if (!o.engine.empty()) {
        if (o.engine == "integral")
            s.engine = ris::Engine::integral;
        else if (o.engine == "array")
            s.engine = ris::Engine::array;
        else
            throw ris::ValidationError("--engine must be integral or array");
    }
    if (o.tile_edge_wl > 0.0) {
        json j = s.raw;
        j["panel"]["tile_edge_wavelengths"] = o.tile_edge_wl;
        std::string path = s.source_path;
        s = ris::scenario_from_json(j, path);
        if (!o.engine.empty())
            s.engine = o.engine == "integral" ? ris::Engine::integral : ris::Engine::array;
    }
    return s;
}

void print_warnings(const ris::Scenario& s) {
    for (const auto& w : s.warnings)
        std::cerr << "warning: " << w << "\n";
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json base_sidecar(const ris::Scenario& s, const std::string& command, unsigned threads) {
    json j;
    j["tool"] = "ris-scatter";
    j["schema_version"] = 1;
    j["command"] = command;
    j["engine"] = s.engine == ris::Engine::integral ? "integral" : "array";
    j["threads"] = threads;
    j["warnings"] = s.warnings;
    j["budget_resolution"] = s.budget_resolution;
    json feas = json::array();
    for (const auto& v : s.feasibility)
        feas.push_back({{"message", v.message}, {"value", v.value}, {"bound", v.bound},
                        {"hard", v.hard}});
    j["feasibility"] = feas;
    j["scenario"] = ris::scenario_to_json(s);
    return j;
}

void emit(const fs::path& dir, const std::string& base, const std::string& csv, json sidecar) {
    fs::create_directories(dir);
    fs::path csv_path = dir / (base + ".csv");
    ris::write_text_file(csv_path.string(), csv);
    sidecar["csv"] = csv_path.filename().string();
    sidecar["content_hash_fnv1a64"] = ris::fnv1a64_hex(csv);
    ris::write_text_file((dir / (base + ".json")).string(), sidecar.dump(2) + "\n");
    std::cout << csv_path.string() << "\n";
}

int run_budget(const ris::Scenario& s) {
    const ris::PowerBudget& b = *s.budget;
    std::cout << "rho        = " << b.rho() << "\n";
    for (std::size_t i = 0; i < b.mode_weights().size(); ++i)
        std::cout << "m" << i + 1 << "         = " << b.mode_weights()[i] << "\n";
    std::cout << "sum(rho+m) = " << b.rho() + b.mode_weight_sum() << "\n";
    std::cout << "S^2        = " << b.s_squared() << "\n";
    std::cout << "tau        = " << b.tau() << "\n";
    std::cout << "rayleigh R = " << b.rayleigh() << "\n";
    std::cout << "balance residual = " << b.balance_residual() << "\n";
    return 0;
}

int run_validate(const ris::Scenario& s) {
    ris::Scene scene = s.build_scene();  // builds caches; exercises every check
    std::cout << "scenario ok: " << s.source_path << "\n";
    std::cout << "  tiles (integral): " << scene.panel().nx() << " x " << scene.panel().ny()
              << " at " << scene.panel().tile_edge() << " m\n";
    if (scene.array_available())
        std::cout << "  tiles (array):    " << scene.array_panel().nx() << " x "
                  << scene.array_panel().ny() << " at " << scene.array_panel().tile_edge()
                  << " m\n";
    std::cout << "  contributions: ";
    for (const auto& l : scene.labels())
        std::cout << l << " ";
    std::cout << "\n  warnings: " << s.warnings.size() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"scattered-field simulator for finite reconfigurable panels"};
    app.require_subcommand(1);

    CommonOpts o;
    auto* cmd_map = app.add_subcommand("map", "field map over a planar raster");
    auto* cmd_cut = app.add_subcommand("cut", "angular pattern cut at fixed radius");
    auto* cmd_cmp = app.add_subcommand("compare", "integral vs array engine on one grid");
    auto* cmd_spr = app.add_subcommand("spreading", "windowed |E| vs distance along a beam");
    auto* cmd_bud = app.add_subcommand("budget", "print the resolved power budget");
    auto* cmd_val = app.add_subcommand("validate", "load and validate a scenario");
    for (auto* c : {cmd_map, cmd_cut, cmd_cmp, cmd_spr, cmd_bud, cmd_val})
        add_common(c, o);

    CLI11_PARSE(app, argc, argv);

    try {
        ris::Scenario s = load_with_overrides(o);
        print_warnings(s);
        unsigned threads = o.threads ? o.threads : ris::default_thread_count();
        fs::path dir = o.out_dir;

        if (cmd_bud->parsed())
            return run_budget(s);
        if (cmd_val->parsed())
            return run_validate(s);

        ris::Scene scene = s.build_scene();

        if (cmd_map->parsed() || cmd_cut->parsed()) {
            if (cmd_map->parsed() && s.scan.type != ris::ScanSpec::Type::map)
                throw ris::ValidationError("scenario scan.type is not \"map\"");
            if (cmd_cut->parsed() && s.scan.type != ris::ScanSpec::Type::cut)
                throw ris::ValidationError("scenario scan.type is not \"cut\"");
            ris::ObservationGrid grid = s.build_grid(scene.panel());
            ris::ScanResult res = scene.grid_scan(grid, s.engine, threads);
            json side = base_sidecar(s, cmd_map->parsed() ? "map" : "cut", threads);
            side["profile_signature_fnv1a64"] = hex64(scene.gamma_signature());
            side["points"] = grid.size();
            side["elapsed_s"] = res.elapsed_s;
            side["tile_edge_m"] = res.tile_edge_m;
            side["contributions"] = res.labels;
            emit(dir, s.output_basename, ris::scan_csv(res), side);
            return 0;
        }

        if (cmd_cmp->parsed()) {
            if (s.scan.type == ris::ScanSpec::Type::spreading)
                throw ris::ValidationError("compare needs a map or cut scan");
            if (!s.comparison) {
                // both engines must share one tile grid for a point-by-point error
                json j = s.raw;
                j["comparison"] = true;
                s = ris::scenario_from_json(j, s.source_path);
                std::cerr << "note: comparison mode forced (shared tile grid for both engines)\n";
                scene = s.build_scene();
            }
            ris::ObservationGrid grid = s.build_grid(scene.panel());
            ris::CompareResult cmp = scene.compare_engines(grid, threads);
            json side = base_sidecar(s, "compare", threads);
            side["profile_signature_fnv1a64"] = hex64(scene.gamma_signature());
            side["points"] = grid.size();
            side["included_points"] = cmp.included;
            side["rel_error_quantiles"] = {{"q50", cmp.q50}, {"q90", cmp.q90}, {"q99", cmp.q99},
                                           {"max", cmp.qmax}};
            side["fraction_within_2pct_guard_1e-3"] = cmp.fraction_within(0.02, 1e-3);
            side["seconds_per_point"] = {{"integral", cmp.seconds_per_point_integral},
                                         {"array", cmp.seconds_per_point_array}};
            emit(dir, s.output_basename + "_compare", ris::compare_csv(grid, cmp), side);
            return 0;
        }

        if (cmd_spr->parsed()) {
            if (s.scan.type != ris::ScanSpec::Type::spreading)
                throw ris::ValidationError("scenario scan.type is not \"spreading\"");
            ris::SpreadingResult sw = scene.spreading_sweep(
                s.spreading_direction(scene.panel()), s.scan.r_min_m, s.scan.r_max_m,
                s.scan.samples, s.scan.window_wavelengths * s.wave.wavelength_m(), s.engine,
                threads);
            json side = base_sidecar(s, "spreading", threads);
            side["profile_signature_fnv1a64"] = hex64(scene.gamma_signature());
            side["near_slope"] = sw.near_slope;
            side["far_slope"] = sw.far_slope;
            side["transition_m"] = sw.transition_m;
            side["asymptote_crossing_m"] = sw.asymptote_crossing_m;
            side["fraunhofer_m"] = sw.fraunhofer_m;
            emit(dir, s.output_basename + "_spreading", ris::spreading_csv(sw), side);
            return 0;
        }
    } catch (const ris::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
