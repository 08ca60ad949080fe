#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ris/array_engine.hpp"
#include "ris/budget.hpp"
#include "ris/diffuse.hpp"
#include "ris/grid.hpp"
#include "ris/incident.hpp"
#include "ris/integral_engine.hpp"
#include "ris/modulation.hpp"
#include "ris/panel.hpp"
#include "ris/vec.hpp"
#include "ris/wave.hpp"

namespace ris {

enum class Engine { integral, array };

constexpr unsigned kFlagReactiveZone = 1u;

struct Contribution {
    std::string label;
    CVec3 field;
};

/// Field at one observation point with per-contribution breakdown. The
/// coherent field is the sum of the contributions by construction; diffuse
/// power adds incoherently: |E_total|^2 = |E_coherent|^2 + diffuse.
struct FieldSample {
    Vec3 point;
    std::vector<Contribution> contributions;
    CVec3 e_coherent;
    double diffuse_v2 = 0.0;  // V^2/m^2
    unsigned flags = 0;

    double total_magnitude() const {
        double c = magnitude(e_coherent);
        return std::sqrt(c * c + diffuse_v2);
    }
};

struct ScanResult {
    std::vector<FieldSample> samples;
    std::vector<std::string> labels;  // contribution labels, in slot order
    Engine engine = Engine::integral;
    double tile_edge_m = 0;
    unsigned threads = 1;
    double elapsed_s = 0;
    std::optional<std::vector<double>> cut_angles_rad;  // set for angular cuts
};

struct CompareResult {
    std::vector<double> rel_error;      // per point; -1 where below the inclusion guard
    std::vector<double> integral_mag;   // |E_int| per point
    std::vector<double> array_mag;      // |E_arr| per point
    double max_integral_mag = 0;
    double q50 = 0, q90 = 0, q99 = 0, qmax = 0;  // over included points
    std::size_t included = 0;
    double seconds_per_point_integral = 0;
    double seconds_per_point_array = 0;

    /// Fraction of points with |E_int| > guard*max whose error is <= tol.
    double fraction_within(double tol, double guard) const;
};

struct SpreadingResult {
    std::vector<double> distance_m;
    std::vector<double> mean_amplitude;  // window-averaged |E|
    double near_slope = 0, near_intercept = 0;
    double far_slope = 0, far_intercept = 0;
    /// Onset of the spherical-wave regime: smallest sampled distance beyond
    /// which every sample stays within 0.5 dB of the far-zone fitted line.
    double transition_m = 0;
    /// Where the two fitted asymptotes cross (regime-dominance knee).
    double asymptote_crossing_m = 0;
    double fraunhofer_m = 0;  // 2 D^2 / lambda
};

/// Immutable assembled scene: panel + illumination + modulation + budget +
/// element pattern, with per-engine tile caches built once. The specular
/// slot is a constant coefficient R sqrt(rho); for the integral engine that
/// slot also carries the Gamma-independent part of the image-current source
/// (the blockage field that exists even for an absorbing panel), so the slots
/// always sum to the single-run total.
class Scene {
  public:
    Scene(WaveSpec wave, RisPanel panel, IncidentWave incident, std::vector<Mode> anomalous_modes,
          PowerBudget budget, ElementPattern pattern = ElementPattern::huygens(),
          ElementNorm norm = ElementNorm::aperture,
          std::optional<double> array_tile_edge_m = std::nullopt);

    const WaveSpec& wave() const { return wave_; }
    const RisPanel& panel() const { return panel_; }
    const RisPanel& array_panel() const { return *array_panel_; }
    const IncidentWave& incident() const { return incident_; }
    const PowerBudget& budget() const { return budget_; }
    const ElementPattern& pattern() const { return pattern_; }
    const ModulationProfile& profile() const { return *profile_; }
    const std::vector<std::string>& labels() const { return labels_; }
    bool array_available() const { return array_ok_; }

    /// FNV-1a over the tile-center coefficient samples (integral grid);
    /// identifies the modulation the engines actually consumed.
    std::uint64_t gamma_signature() const;

    FieldSample total_field(const Vec3& p, Engine engine) const;

    ScanResult grid_scan(const ObservationGrid& grid, Engine engine, unsigned threads) const;

    /// total_field along an angular arc; radius must exceed 3 lambda.
    ScanResult pattern_cut(const AngularCut& cut, Engine engine, unsigned threads) const;

    CompareResult compare_engines(const ObservationGrid& grid, unsigned threads) const;

    SpreadingResult spreading_sweep(const Vec3& direction, double r_min, double r_max,
                                    std::size_t samples, double window_m, Engine engine,
                                    unsigned threads) const;

  private:
    WaveSpec wave_;
    RisPanel panel_;        // integral-engine tiling
    IncidentWave incident_;
    PowerBudget budget_;
    ElementPattern pattern_;
    ElementNorm norm_;
    std::unique_ptr<RisPanel> array_panel_;
    std::unique_ptr<ModulationProfile> profile_;  // specular slot + anomalous modes
    std::vector<std::string> labels_;
    bool array_ok_ = true;

    // integral caches: slot 0 full (affine) source, slots 1.. Gamma-linear parts
    std::vector<SurfaceSource> integral_sources_;
    // array caches, one context per slot
    std::vector<ArrayContext> array_ctx_;
};

/// 2 D^2 / lambda with D the larger panel edge.
double fraunhofer_distance(const RisPanel& panel, const WaveSpec& wave);

double to_db_v(double amplitude_vpm);  // 20 log10(|E| / 1 V/m)

} // namespace ris
