#include "ris/budget.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ris {

namespace {

constexpr double kIdentityTol = 1e-9;

void require_fraction(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

double weight_sum(const std::vector<double>& m) {
    return std::accumulate(m.begin(), m.end(), 0.0);
}

} // namespace

double solve_diffuse(double rho, const std::vector<double>& mode_weights, double rayleigh) {
    require_fraction(rho, "rho");
    require_fraction(rayleigh, "rayleigh");
    for (double m : mode_weights)
        require_fraction(m, "mode weight");
    return (1.0 - rayleigh * rayleigh) * (rho + weight_sum(mode_weights));
}

bool check_er_identity(double s, double rayleigh) {
    require_fraction(s, "S");
    require_fraction(rayleigh, "rayleigh");
    return std::abs(s * s + rayleigh * rayleigh - 1.0) < kIdentityTol;
}

bool smooth_balance(double rho, double m, double tau) {
    require_fraction(rho, "rho");
    require_fraction(m, "m");
    require_fraction(tau, "tau");
    return std::abs(rho + m + tau - 1.0) < kIdentityTol;
}

double rayleigh_for_diffuse(double s_squared, double rho, const std::vector<double>& mode_weights) {
    require_fraction(s_squared, "s_squared");
    double coherent = rho + weight_sum(mode_weights);
    if (!(coherent > 0.0))
        throw std::domain_error("rayleigh_for_diffuse: no coherent power to divert");
    double r2 = 1.0 - s_squared / coherent;
    if (r2 < -kIdentityTol)
        throw std::domain_error("rayleigh_for_diffuse: target S^2 exceeds rho + sum(m)");
    return std::sqrt(std::max(r2, 0.0));
}

PowerBudget::PowerBudget(double rho, std::vector<double> mode_weights, double s_squared,
                         double tau, double rayleigh, bool strict)
    : rho_(rho), modes_(std::move(mode_weights)), s_squared_(s_squared), tau_(tau),
      rayleigh_(rayleigh), strict_(strict) {
    require_fraction(rho_, "rho");
    require_fraction(s_squared_, "s_squared");
    require_fraction(tau_, "tau");
    require_fraction(rayleigh_, "rayleigh");
    for (double m : modes_)
        require_fraction(m, "mode weight");
    if (strict_) {
        auto findings = validate();
        if (!findings.empty())
            throw std::invalid_argument("strict budget: " + findings.front());
    }
}

PowerBudget PowerBudget::from_rayleigh(double rho, std::vector<double> mode_weights,
                                       double rayleigh, bool strict) {
    double s2 = solve_diffuse(rho, mode_weights, rayleigh);
    double coherent = rho + weight_sum(mode_weights);
    double tau = std::clamp(1.0 - coherent, 0.0, 1.0);
    return PowerBudget(rho, std::move(mode_weights), std::min(s2, 1.0), tau, rayleigh, strict);
}

PowerBudget PowerBudget::from_diffuse_target(double rho, std::vector<double> mode_weights,
                                             double s_squared, bool strict) {
    double r = rayleigh_for_diffuse(s_squared, rho, mode_weights);
    double tau = std::clamp(1.0 - rho - weight_sum(mode_weights), 0.0, 1.0);
    return PowerBudget(rho, std::move(mode_weights), s_squared, tau, r, strict);
}

double PowerBudget::mode_weight_sum() const { return weight_sum(modes_); }

double PowerBudget::balance_residual() const {
    double r2 = rayleigh_ * rayleigh_;
    return std::abs(r2 * rho_ + s_squared_ + r2 * mode_weight_sum() + tau_ - 1.0);
}

std::vector<std::string> PowerBudget::validate() const {
    std::vector<std::string> findings;
    double coherent = rho_ + mode_weight_sum();
    if (coherent > 1.0 + kIdentityTol)
        findings.push_back("rho + sum(mode weights) = " + std::to_string(coherent) +
                           " exceeds 1 (published parameter sets sometimes do; lenient mode keeps them verbatim)");
    if (balance_residual() > kIdentityTol)
        findings.push_back("power balance residual " + std::to_string(balance_residual()) +
                           " exceeds 1e-9");
    return findings;
}

AngleTable::AngleTable(std::vector<double> theta_rad, std::vector<Row> rows)
    : thetas_(std::move(theta_rad)), rows_(std::move(rows)) {
    if (thetas_.size() != rows_.size() || thetas_.empty())
        throw std::invalid_argument("AngleTable: need one row per sample angle");
    if (!std::is_sorted(thetas_.begin(), thetas_.end()))
        throw std::invalid_argument("AngleTable: sample angles must be ascending");
    std::size_t nm = rows_.front().mode_weights.size();
    for (const Row& r : rows_)
        if (r.mode_weights.size() != nm)
            throw std::invalid_argument("AngleTable: inconsistent mode count across rows");
}

AngleTable::Row AngleTable::at(double theta) const {
    if (theta <= thetas_.front())
        return rows_.front();
    if (theta >= thetas_.back())
        return rows_.back();
    auto hi = std::upper_bound(thetas_.begin(), thetas_.end(), theta);
    std::size_t i = std::size_t(hi - thetas_.begin());
    double t = (theta - thetas_[i - 1]) / (thetas_[i] - thetas_[i - 1]);
    const Row& a = rows_[i - 1];
    const Row& b = rows_[i];
    Row out;
    out.rho = (1 - t) * a.rho + t * b.rho;
    out.tau = (1 - t) * a.tau + t * b.tau;
    out.mode_weights.resize(a.mode_weights.size());
    for (std::size_t k = 0; k < out.mode_weights.size(); ++k)
        out.mode_weights[k] = (1 - t) * a.mode_weights[k] + t * b.mode_weights[k];
    return out;
}

} // namespace ris
