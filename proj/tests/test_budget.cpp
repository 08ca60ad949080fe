#include <doctest.h>

#include <cmath>
#include <random>

#include "ris/budget.hpp"

using namespace ris;

TEST_CASE("diffuse fraction from the balance") {
    // R = 1: no roughness loss
    CHECK(solve_diffuse(0.4, {0.3, 0.2}, 1.0) == 0.0);

    // arithmetic case
    CHECK(solve_diffuse(0.3, {0.25, 0.25}, 0.9) == doctest::Approx(0.19 * 0.8).epsilon(1e-12));

    // nothing coherent, nothing to scatter
    CHECK(solve_diffuse(0.0, {}, 0.37) == 0.0);

    CHECK_THROWS_AS(solve_diffuse(1.2, {}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_diffuse(0.2, {-0.1}, 1.0), std::invalid_argument);
}

TEST_CASE("plain-wall identity") {
    CHECK(check_er_identity(0.6, 0.8));
    CHECK(check_er_identity(0.0, 1.0));
    CHECK_FALSE(check_er_identity(0.5, 0.5));
}

TEST_CASE("smooth-surface split") {
    CHECK(smooth_balance(0.0, 1.0, 0.0));
    CHECK(smooth_balance(0.0, 0.97, 0.03));
    CHECK_FALSE(smooth_balance(0.2, 0.2, 0.2));
}

TEST_CASE("re-solve rule") {
    double r = rayleigh_for_diffuse(0.4, 0.0, {1.0});
    CHECK(r * r == doctest::Approx(0.6).epsilon(1e-12));
    // diverting everything kills the coherent field
    CHECK(rayleigh_for_diffuse(1.0, 1.0, {}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(rayleigh_for_diffuse(0.5, 0.2, {0.1}), std::domain_error);
    CHECK_THROWS_AS(rayleigh_for_diffuse(0.5, 0.0, {}), std::domain_error);
}

TEST_CASE("budget round-trip property") {
    // randomized: solve S^2 from R, reassemble, residual vanishes
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_int_distribution<int> nmodes(0, 4);
    int cases = 10000;
    double worst = 0.0;
    for (int i = 0; i < cases; ++i) {
        int n = nmodes(rng);
        std::vector<double> m(n);
        double budget_left = u01(rng);  // keep rho + sum(m) <= 1
        double rho = budget_left * u01(rng);
        double rem = budget_left - rho;
        for (int kk = 0; kk < n; ++kk) {
            m[kk] = rem * u01(rng) / double(n);
        }
        double r = u01(rng);
        PowerBudget b = PowerBudget::from_rayleigh(rho, m, r, false);
        worst = std::max(worst, b.balance_residual());
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("monotonicity of the solved diffuse fraction") {
    std::vector<double> m{0.4};
    // non-increasing in R
    double prev = 2.0;
    for (double r = 0.0; r <= 1.0; r += 0.05) {
        double s2 = solve_diffuse(0.3, m, r);
        CHECK(s2 <= prev + 1e-15);
        prev = s2;
    }
    // non-decreasing in the coherent sum
    prev = -1.0;
    for (double rho = 0.0; rho <= 0.6; rho += 0.05) {
        double s2 = solve_diffuse(rho, m, 0.7);
        CHECK(s2 >= prev - 1e-15);
        prev = s2;
    }
}

TEST_CASE("strict and lenient budgets") {
    // quoted multi-mode set exceeding unit sum loads in lenient mode
    PowerBudget lenient = PowerBudget::from_rayleigh(0.17, {0.76, 0.17}, 1.0, false);
    CHECK(lenient.rho() + lenient.mode_weight_sum() == doctest::Approx(1.10));
    CHECK(lenient.tau() == 0.0);  // clamped
    CHECK_FALSE(lenient.validate().empty());

    CHECK_THROWS_AS(PowerBudget::from_rayleigh(0.17, {0.76, 0.17}, 1.0, true),
                    std::invalid_argument);

    PowerBudget strict = PowerBudget::from_rayleigh(0.1, {0.6}, 0.9, true);
    CHECK(strict.balance_residual() < 1e-12);
    CHECK(strict.validate().empty());
}

TEST_CASE("angle table interpolation") {
    AngleTable t({0.0, 0.5, 1.0},
                 {{0.2, {0.5}, 0.3}, {0.3, {0.4}, 0.3}, {0.5, {0.1}, 0.4}});
    CHECK(t.at(-1.0).rho == doctest::Approx(0.2));  // clamped low
    CHECK(t.at(2.0).rho == doctest::Approx(0.5));   // clamped high
    auto mid = t.at(0.25);
    CHECK(mid.rho == doctest::Approx(0.25));
    CHECK(mid.mode_weights[0] == doctest::Approx(0.45));
    CHECK_THROWS_AS(AngleTable({0.5, 0.0}, {{0, {}, 0}, {0, {}, 0}}), std::invalid_argument);
}
