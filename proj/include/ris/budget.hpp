#pragma once

#include <string>
#include <vector>

#include "ris/vec.hpp"

namespace ris {

/// S^2 = (1 - R^2)(rho + sum m_n): diffuse fraction left over after the
/// Rayleigh factor attenuates all coherent (specular + reradiated) modes.
double solve_diffuse(double rho, const std::vector<double>& mode_weights, double rayleigh);

/// Plain-wall identity S^2 + R^2 = 1 within 1e-9.
bool check_er_identity(double s, double rayleigh);

/// Smooth-surface split rho + m + tau = 1 within 1e-9.
bool smooth_balance(double rho, double m, double tau);

/// Re-solve rule: given a target diffuse fraction, R^2 = 1 - S^2/(rho + sum m_n).
double rayleigh_for_diffuse(double s_squared, double rho, const std::vector<double>& mode_weights);

/// Power bookkeeping for one illumination: specular fraction rho, per-mode
/// reradiation weights m_n, diffuse fraction S^2, dissipation tau and the
/// Rayleigh factor R. In strict mode the full balance
/// R^2 rho + S^2 + R^2 sum(m_n) + tau = 1 is enforced at 1e-9; lenient mode
/// downgrades violations to warnings (some published parameter sets exceed
/// unit sum).
class PowerBudget {
  public:
    PowerBudget(double rho, std::vector<double> mode_weights, double s_squared, double tau,
                double rayleigh, bool strict = false);

    /// Completes tau = 1 - rho - sum(m) (clamped in lenient mode) and S^2 from R.
    static PowerBudget from_rayleigh(double rho, std::vector<double> mode_weights, double rayleigh,
                                     bool strict = false);
    /// Completes R from a target S^2 via the re-solve rule, then as above.
    static PowerBudget from_diffuse_target(double rho, std::vector<double> mode_weights,
                                           double s_squared, bool strict = false);

    double rho() const { return rho_; }
    const std::vector<double>& mode_weights() const { return modes_; }
    double mode_weight_sum() const;
    double s_squared() const { return s_squared_; }
    double tau() const { return tau_; }
    double rayleigh() const { return rayleigh_; }
    bool strict() const { return strict_; }

    /// |R^2 rho + S^2 + R^2 sum(m) + tau - 1|
    double balance_residual() const;

    /// Collected findings; throws std::invalid_argument in strict mode.
    std::vector<std::string> validate() const;

  private:
    double rho_;
    std::vector<double> modes_;
    double s_squared_;
    double tau_;
    double rayleigh_;
    bool strict_;
};

/// Optional angle-of-incidence dependence of (rho, m_n, tau): rows at sample
/// angles, linear interpolation, end clamping.
class AngleTable {
  public:
    struct Row {
        double rho;
        std::vector<double> mode_weights;
        double tau;
    };

    AngleTable(std::vector<double> theta_rad, std::vector<Row> rows);

    Row at(double theta_rad) const;
    bool empty() const { return thetas_.empty(); }

  private:
    std::vector<double> thetas_;
    std::vector<Row> rows_;
};

} // namespace ris
