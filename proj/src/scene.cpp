#include "ris/scene.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <cmath>
#include <stdexcept>

#include "ris/parallel.hpp"

namespace ris {

namespace {

double quantile(std::vector<double> v, double q) {
    if (v.empty())
        return 0.0;
    std::sort(v.begin(), v.end());
    double pos = q * double(v.size() - 1);
    std::size_t lo = std::size_t(pos);
    std::size_t hi = std::min(lo + 1, v.size() - 1);
    double t = pos - double(lo);
    return (1 - t) * v[lo] + t * v[hi];
}

struct LineFit {
    double slope = 0, intercept = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() < 2)
        throw std::domain_error("line fit needs at least two samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-300)
        throw std::domain_error("line fit: degenerate abscissae");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

} // namespace

std::uint64_t Scene::gamma_signature() const {
    auto g = profile_->sample(panel_);
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](double v) {
        unsigned char bytes[sizeof(double)];
        std::memcpy(bytes, &v, sizeof(double));
        for (unsigned char c : bytes) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    for (const cplx& c : g) {
        mix(c.real());
        mix(c.imag());
    }
    return h;
}

double fraunhofer_distance(const RisPanel& panel, const WaveSpec& wave) {
    double d = panel.max_dimension();
    return 2.0 * d * d / wave.wavelength_m();
}

double to_db_v(double amplitude_vpm) { return 20.0 * std::log10(amplitude_vpm); }

double CompareResult::fraction_within(double tol, double guard) const {
    std::size_t n = 0, ok = 0;
    for (std::size_t i = 0; i < rel_error.size(); ++i) {
        if (integral_mag[i] <= guard * max_integral_mag)
            continue;
        ++n;
        if (rel_error[i] >= 0.0 && rel_error[i] <= tol)
            ++ok;
    }
    return n == 0 ? 0.0 : double(ok) / double(n);
}

Scene::Scene(WaveSpec wave, RisPanel panel, IncidentWave incident,
             std::vector<Mode> anomalous_modes, PowerBudget budget, ElementPattern pattern,
             ElementNorm norm, std::optional<double> array_tile_edge_m)
    : wave_(wave), panel_(panel), incident_(incident), budget_(budget), pattern_(pattern),
      norm_(norm) {
    if (anomalous_modes.size() != budget_.mode_weights().size())
        throw std::invalid_argument("scene: one anomalous mode per budget weight required");
    for (std::size_t n = 0; n < anomalous_modes.size(); ++n)
        if (std::abs(anomalous_modes[n].weight - budget_.mode_weights()[n]) > 1e-12)
            throw std::invalid_argument("scene: mode weight disagrees with the power budget");

    // slot 0 is always the specular coefficient R sqrt(rho) (zero for rho = 0)
    std::vector<Mode> slots;
    slots.reserve(anomalous_modes.size() + 1);
    slots.push_back(constant_profile(budget_.rho(), "specular"));
    for (auto& m : anomalous_modes) {
        if (m.label.empty())
            m.label = "mode" + std::to_string(&m - anomalous_modes.data() + 1);
        slots.push_back(std::move(m));
    }
    profile_ = std::make_unique<ModulationProfile>(
        ModulationProfile::over_panel(std::move(slots), budget_.rayleigh(), panel_));
    for (std::size_t n = 0; n < profile_->mode_count(); ++n)
        labels_.push_back(profile_->mode(n).label);

    // integral caches: slot 0 carries the affine (full) source, others linear parts
    integral_sources_.reserve(profile_->mode_count());
    {
        auto g0 = profile_->sample_mode(0, panel_);
        integral_sources_.push_back(
            huygens_source(wave_, panel_, incident_, g0, SourcePart::full));
        for (std::size_t n = 1; n < profile_->mode_count(); ++n) {
            auto gn = profile_->sample_mode(n, panel_);
            integral_sources_.push_back(
                huygens_source(wave_, panel_, incident_, gn, SourcePart::gamma_linear));
        }
    }

    // array caches on the (possibly re-meshed) array grid
    double array_edge = array_tile_edge_m.value_or(0.49 * wave_.wavelength_m());
    array_panel_ = std::make_unique<RisPanel>(panel_.with_tile_edge(array_edge));
    array_ok_ = array_edge <= 0.5 * wave_.wavelength_m() + 1e-12;
    if (array_ok_) {
        for (std::size_t n = 0; n < profile_->mode_count(); ++n) {
            auto gn = profile_->sample_mode(n, *array_panel_);
            array_ctx_.push_back(
                build_array_context(wave_, *array_panel_, incident_, gn, pattern_, norm_));
        }
    }
}

FieldSample Scene::total_field(const Vec3& p, Engine engine) const {
    FieldSample s;
    s.point = p;
    if (engine == Engine::array && !array_ok_)
        throw std::domain_error("array engine unavailable: tile edge exceeds lambda/2");

    s.contributions.reserve(labels_.size());
    if (engine == Engine::integral) {
        for (std::size_t n = 0; n < integral_sources_.size(); ++n)
            s.contributions.push_back({labels_[n], reradiate_E(integral_sources_[n], wave_, p)});
    } else {
        for (std::size_t n = 0; n < array_ctx_.size(); ++n)
            s.contributions.push_back({labels_[n], array_field(array_ctx_[n], p)});
    }
    for (const auto& c : s.contributions)
        s.e_coherent += c.field;

    if (budget_.s_squared() > 0.0)
        s.diffuse_v2 = diffuse_intensity(panel_, wave_, incident_, budget_.s_squared(), p);
    if (in_reactive_zone(panel_, p, wave_.wavelength_m()))
        s.flags |= kFlagReactiveZone;
    return s;
}

ScanResult Scene::grid_scan(const ObservationGrid& grid, Engine engine, unsigned threads) const {
    grid.require_front_halfspace(panel_);
    ScanResult res;
    res.engine = engine;
    res.labels = labels_;
    res.tile_edge_m = engine == Engine::integral ? panel_.tile_edge() : array_panel_->tile_edge();
    res.threads = threads;
    res.samples.resize(grid.size());

    auto t0 = std::chrono::steady_clock::now();
    parallel_for_index(grid.size(), threads,
                       [&](std::size_t i) { res.samples[i] = total_field(grid.point(i), engine); });
    res.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (const AngularCut* c = grid.cut())
        res.cut_angles_rad = c->angles_rad;
    return res;
}

ScanResult Scene::pattern_cut(const AngularCut& cut, Engine engine, unsigned threads) const {
    if (!(cut.radius > 3.0 * wave_.wavelength_m()))
        throw std::invalid_argument("pattern_cut: radius must exceed 3 wavelengths");
    return grid_scan(ObservationGrid(cut), engine, threads);
}

CompareResult Scene::compare_engines(const ObservationGrid& grid, unsigned threads) const {
    ScanResult si = grid_scan(grid, Engine::integral, threads);
    ScanResult sa = grid_scan(grid, Engine::array, threads);

    CompareResult res;
    res.seconds_per_point_integral = si.elapsed_s / double(std::max<std::size_t>(1, grid.size()));
    res.seconds_per_point_array = sa.elapsed_s / double(std::max<std::size_t>(1, grid.size()));
    res.rel_error.resize(grid.size());
    res.integral_mag.resize(grid.size());
    res.array_mag.resize(grid.size());

    for (std::size_t i = 0; i < grid.size(); ++i) {
        double m = magnitude(si.samples[i].e_coherent);
        res.integral_mag[i] = m;
        res.array_mag[i] = magnitude(sa.samples[i].e_coherent);
        res.max_integral_mag = std::max(res.max_integral_mag, m);
    }
    std::vector<double> included;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        // low-field points carry no meaningful relative error
        if (res.integral_mag[i] <= 1e-6 * res.max_integral_mag) {
            res.rel_error[i] = -1.0;
            continue;
        }
        double err = magnitude(sa.samples[i].e_coherent - si.samples[i].e_coherent) /
                     res.integral_mag[i];
        res.rel_error[i] = err;
        included.push_back(err);
    }
    res.included = included.size();
    res.q50 = quantile(included, 0.5);
    res.q90 = quantile(included, 0.9);
    res.q99 = quantile(included, 0.99);
    res.qmax = included.empty() ? 0.0 : *std::max_element(included.begin(), included.end());
    return res;
}

SpreadingResult Scene::spreading_sweep(const Vec3& direction, double r_min, double r_max,
                                       std::size_t samples, double window_m, Engine engine,
                                       unsigned threads) const {
    if (!(r_min > 0.0) || !(r_max > r_min) || samples < 4)
        throw std::invalid_argument("spreading_sweep: need 0 < r_min < r_max and >= 4 samples");
    Vec3 d = normalized(direction);
    Vec3 t1 = normalized(cross(d, panel_.y_axis()));
    Vec3 t2 = cross(d, t1);

    SpreadingResult res;
    res.fraunhofer_m = fraunhofer_distance(panel_, wave_);
    res.distance_m.resize(samples);
    res.mean_amplitude.assign(samples, 0.0);
    double ratio = r_max / r_min;
    for (std::size_t i = 0; i < samples; ++i)
        res.distance_m[i] = r_min * std::pow(ratio, double(i) / double(samples - 1));

    constexpr int kSub = 11;  // fixed 11 x 11 window sub-sampling
    parallel_for_index(samples, threads, [&](std::size_t i) {
        Vec3 c = panel_.center() + res.distance_m[i] * d;
        double acc = 0.0;
        std::size_t n = 0;
        for (int a = 0; a < kSub; ++a)
            for (int b = 0; b < kSub; ++b) {
                double oa = window_m * (double(a) / (kSub - 1) - 0.5);
                double ob = window_m * (double(b) / (kSub - 1) - 0.5);
                Vec3 p = c + oa * t1 + ob * t2;
                if (!(panel_.height_above(p) > 0.0))
                    continue;  // window corner dipped behind the panel plane
                acc += total_field(p, engine).total_magnitude();
                ++n;
            }
        res.mean_amplitude[i] = n ? acc / double(n) : 0.0;
    });

    std::vector<double> xn, yn, xf, yf;
    for (std::size_t i = 0; i < samples; ++i) {
        double r = res.distance_m[i];
        double a = res.mean_amplitude[i];
        if (a <= 0.0)
            continue;
        if (r < 0.1 * res.fraunhofer_m) {
            xn.push_back(std::log10(r));
            yn.push_back(std::log10(a));
        } else if (r > 2.0 * res.fraunhofer_m) {
            xf.push_back(std::log10(r));
            yf.push_back(std::log10(a));
        }
    }
    LineFit nf = fit_line(xn, yn);
    LineFit ff = fit_line(xf, yf);
    res.near_slope = nf.slope;
    res.near_intercept = nf.intercept;
    res.far_slope = ff.slope;
    res.far_intercept = ff.intercept;
    res.asymptote_crossing_m =
        std::pow(10.0, (ff.intercept - nf.intercept) / (nf.slope - ff.slope));

    // onset of the far-field law: walk inward from the largest distance while
    // the samples track the far line within 0.5 dB (0.025 decades)
    constexpr double kOnsetDecades = 0.025;
    std::size_t onset = samples;
    for (std::size_t i = samples; i-- > 0;) {
        double a = res.mean_amplitude[i];
        if (a <= 0.0)
            break;
        double line = ff.intercept + ff.slope * std::log10(res.distance_m[i]);
        if (std::abs(std::log10(a) - line) > kOnsetDecades)
            break;
        onset = i;
    }
    res.transition_m = onset < samples ? res.distance_m[onset] : res.distance_m.back();
    return res;
}

} // namespace ris
