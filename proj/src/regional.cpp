#include "snc/regional.hpp"

#include "snc/optim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace snc {

namespace {
constexpr double tau_floor = 1e-4; // keeps beta(tau) away from the log singularity
}

void RegionalModel::validate() const
{
    if (!(R > 0.0) || !(R <= W))
        throw std::invalid_argument("RegionalModel: require 0 < R <= W");
    if (!(d_u >= 0.0) || !(d_u <= W - R + 1e-9))
        throw std::invalid_argument("RegionalModel: require 0 <= d_u <= W - R");
    if (density < 0.0)
        throw std::invalid_argument("RegionalModel: density must be nonnegative");
    fit.validate();
}

double p_cov_core(const RegionalModel& model)
{
    return (model.R * model.R) / (model.W * model.W);
}

double p_cov_uil(const RegionalModel& model, double tau)
{
    const double b = beta(tau, model.fit);
    if (!(b > 0.0))
        throw std::domain_error("p_cov_uil: beta(tau) must be positive");
    const double R = model.R, du = model.d_u, W = model.W;
    return 2.0 * ((-b * (R + du) - 1.0) * std::exp(-b * du) + b * R + 1.0) / (W * W * b * b);
}

RegionalProfit regional_profit(const RegionalModel& model, double tau)
{
    const double pr = p_cov_core(model);
    const double pd = p_cov_uil(model, tau);
    RegionalProfit out;
    out.profit = pr + pd * (1.0 - tau);
    if (pr > 0.0)
        out.gain_percent = 100.0 * pd * (1.0 - tau) / pr;
    return out;
}

RegionalOptimum optimal_regional_incentive(const RegionalModel& model)
{
    model.validate();
    RegionalOptimum out;
    if (model.d_u <= 0.0) {
        out.tau_star = 0.0;
        out.profit = p_cov_core(model);
        out.gain_percent = 0.0;
        return out;
    }
    const auto f = [&](double tau) { return regional_profit(model, tau).profit; };
    const GoldenSectionResult g = golden_section_max(f, tau_floor, 1.0, 1e-6);
    out.tau_star = g.x;
    const RegionalProfit p = regional_profit(model, g.x);
    out.profit = p.profit;
    out.gain_percent = p.gain_percent.value_or(0.0);
    return out;
}

namespace {

// limiting revenue per lambda*pi: R^2 + 2(1-tau)(1+beta R)/beta^2
double pi_inf_per_lampi(double tau, double R, const PersuasionFit& fit)
{
    const double b = beta(tau, fit);
    return R * R + 2.0 * (1.0 - tau) * (1.0 + b * R) / (b * b);
}

} // namespace

double tau_infinity_stationarity(double tau, double R, const PersuasionFit& fit)
{
    const double b = beta(tau, fit);
    const double k1 = fit.k1;
    // d/dtau of 2(1-tau)(1+bR)/b^2 with b' = k1/tau
    return -(1.0 + b * R) / (b * b) + (1.0 - tau) * R * k1 / (tau * b * b) -
           2.0 * k1 * (1.0 - tau) * (1.0 + b * R) / (tau * b * b * b);
}

TauInfinityResult tau_infinity(double R, const PersuasionFit& fit)
{
    if (!(R > 0.0))
        throw std::invalid_argument("tau_infinity: R must be positive");
    fit.validate();

    const auto f = [&](double tau) { return pi_inf_per_lampi(tau, R, fit); };
    const GoldenSectionResult g = golden_section_max(f, tau_floor, 1.0 - 1e-9, 1e-4);

    // polish: bisect the analytic derivative inside a bracket around the
    // golden-section estimate
    double lo = std::max(tau_floor, g.x - 1e-2);
    double hi = std::min(1.0 - 1e-9, g.x + 1e-2);
    const auto deriv = [&](double tau) { return tau_infinity_stationarity(tau, R, fit); };
    double tau_opt = g.x;
    if (deriv(lo) > 0.0 && deriv(hi) < 0.0) {
        tau_opt = bisect_root(deriv, lo, hi, 1e-14).root;
    } else {
        // widen until a sign change appears (derivative is + left of the max)
        lo = tau_floor;
        hi = 1.0 - 1e-9;
        if (deriv(lo) > 0.0 && deriv(hi) < 0.0)
            tau_opt = bisect_root(deriv, lo, hi, 1e-14).root;
    }

    TauInfinityResult out;
    out.tau_inf = tau_opt;
    out.profit_per_density = std::numbers::pi * pi_inf_per_lampi(tau_opt, R, fit);
    out.residual = std::abs(tau_infinity_stationarity(tau_opt, R, fit));
    return out;
}

} // namespace snc
