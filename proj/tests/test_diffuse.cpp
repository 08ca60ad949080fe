#include <doctest.h>

#include <cmath>

#include "ris/diffuse.hpp"

using namespace ris;

namespace {
const WaveSpec wave(3e9);
const double lam = wave.wavelength_m();
const double eta = wave.impedance();
} // namespace

TEST_CASE("no roughness, no diffuse field") {
    RisPanel p = RisPanel::centered(lam, lam, lam / 2);
    IncidentWave inc(PlaneWave{1.0, {0, 0, -1}, {0, 1, 0}, 0.0});
    CHECK(diffuse_intensity(p, wave, inc, 0.0, {0, 0, 5}) == 0.0);
}

TEST_CASE("single-tile hemisphere bookkeeping") {
    // the scattered power of one tile integrates to S^2 of its intercepted power
    RisPanel p = RisPanel::centered(0.04, 0.04, lam / 2);
    REQUIRE(p.tile_count() == 1);
    double th_i = pi / 6;
    IncidentWave inc(PlaneWave{1.0, {std::sin(th_i), 0, -std::cos(th_i)}, {0, 1, 0}, 0.0});
    double s2 = 0.37;

    double r = 30.0;
    const int nth = 2000;
    double acc = 0.0;
    for (int i = 0; i < nth; ++i) {
        double th = (i + 0.5) * (pi / 2) / nth;
        Vec3 obs = r * Vec3{std::sin(th), 0, std::cos(th)};
        acc += diffuse_intensity(p, wave, inc, s2, obs) * std::sin(th);
    }
    double power = 2 * pi * acc * (pi / 2 / nth) * r * r / (2 * eta);
    double p_tile = (1.0 / (2 * eta)) * std::cos(th_i) * p.tile_area();
    CHECK(power == doctest::Approx(s2 * p_tile).epsilon(1e-3));
}

TEST_CASE("grazing observation vanishes") {
    RisPanel p = RisPanel::centered(0.04, 0.04, lam / 2);
    IncidentWave inc(PlaneWave{1.0, {0, 0, -1}, {0, 1, 0}, 0.0});
    double near_plane = diffuse_intensity(p, wave, inc, 0.5, {50.0, 0, 1e-6});
    double overhead = diffuse_intensity(p, wave, inc, 0.5, {0, 0, 50.0});
    CHECK(near_plane < 1e-7 * overhead);
}

TEST_CASE("whole-panel energy bookkeeping at half-wave tiling") {
    RisPanel p = RisPanel::centered(20 * lam, 20 * lam, lam / 2);
    IncidentWave inc(PlaneWave{1.0, {0, 0, -1}, {0, 1, 0}, 0.0});
    double s2 = 0.4;

    double r = 150.0;  // far enough that the panel looks compact
    const int nth = 400, nph = 400;
    double acc = 0.0;
    for (int i = 0; i < nth; ++i) {
        double th = (i + 0.5) * (pi / 2) / nth;
        double row = 0.0;
        for (int j = 0; j < nph; ++j) {
            double ph = (j + 0.5) * (2 * pi) / nph;
            Vec3 obs = r * Vec3{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                std::cos(th)};
            row += diffuse_intensity(p, wave, inc, s2, obs);
        }
        acc += row * std::sin(th) * (pi / 2 / nth) * (2 * pi / nph);
    }
    double power = acc * r * r / (2 * eta);
    double p_panel = (1.0 / (2 * eta)) * p.area();
    CHECK(power == doctest::Approx(s2 * p_panel).epsilon(0.01));
}

TEST_CASE("stable under tile refinement") {
    IncidentWave inc(PlaneWave{1.0, {0, 0, -1}, {0, 1, 0}, 0.0});
    Vec3 obs{3.0, -1.0, 10.0};
    RisPanel p1 = RisPanel::centered(20 * lam, 20 * lam, lam / 2);
    RisPanel p2 = p1.with_tile_edge(lam / 4);
    double a = diffuse_intensity(p1, wave, inc, 0.6, obs);
    double b = diffuse_intensity(p2, wave, inc, 0.6, obs);
    CHECK(std::abs(a - b) / b < 0.005);
}

TEST_CASE("half-space guard") {
    RisPanel p = RisPanel::centered(lam, lam, lam / 2);
    IncidentWave inc(PlaneWave{1.0, {0, 0, -1}, {0, 1, 0}, 0.0});
    CHECK_THROWS_WITH_AS(diffuse_intensity(p, wave, inc, 0.5, {0, 0, -1}),
                         doctest::Contains("wrong-half-space"), std::domain_error);
}
