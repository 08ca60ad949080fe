#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ris/errors.hpp"
#include "ris/scene.hpp"

namespace ris {

struct ScanSpec {
    enum class Type { map, cut, spreading };
    Type type = Type::map;

    // map
    Vec3 origin, axis_a, axis_b;
    std::size_t count_a = 0, count_b = 0;
    double step_a_m = 0, step_b_m = 0;

    // cut
    double radius_m = 0;
    std::string plane = "xz";
    double start_deg = -90, stop_deg = 90, step_deg = 0.25;

    // spreading
    double direction_deg = 0;
    double r_min_m = 0, r_max_m = 0;
    std::size_t samples = 0;
    double window_wavelengths = 10.0;
};

/// Parsed and fully validated scenario file. Degrees and GHz at the file
/// boundary; everything is converted and cross-checked at load, and all
/// findings (lenient budget, feasibility, clamps) are collected as warnings.
struct Scenario {
    WaveSpec wave{1e9};
    double panel_size_x = 0, panel_size_y = 0;
    Vec3 panel_center, panel_normal{0, 0, 1}, panel_x_axis{1, 0, 0};
    double tile_edge_wl = 0.5;
    bool tile_edge_explicit = false;
    std::optional<double> array_tile_edge_wl;
    bool comparison = false;

    /// Array-engine pitch: the shared edge in comparison mode, an explicit
    /// override, an explicitly pinned tile edge, or the matched default 0.49.
    double array_edge_wl() const {
        if (comparison)
            return tile_edge_wl;
        if (array_tile_edge_wl)
            return *array_tile_edge_wl;
        return tile_edge_explicit ? tile_edge_wl : 0.49;
    }

    std::optional<IncidentWave> incident;
    std::vector<Mode> anomalous_modes;
    std::optional<PowerBudget> budget;
    ElementPattern pattern = ElementPattern::huygens();
    ElementNorm norm = ElementNorm::aperture;
    Engine engine = Engine::integral;
    ScanSpec scan;
    std::string output_basename = "scan";

    std::vector<std::string> warnings;
    std::vector<FeasibilityViolation> feasibility;
    std::string budget_resolution;
    std::string source_path;
    nlohmann::json raw;

    RisPanel build_panel() const;
    Scene build_scene() const;
    ObservationGrid build_grid(const RisPanel& panel) const;
    AngularCut build_cut(const RisPanel& panel) const;
    Vec3 spreading_direction(const RisPanel& panel) const;
};

Scenario load_scenario(const std::string& path);
Scenario scenario_from_json(const nlohmann::json& j, const std::string& source_path = {});

/// Serialization that load round-trips to an equivalent scenario.
nlohmann::json scenario_to_json(const Scenario& s);

} // namespace ris
