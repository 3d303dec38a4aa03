#ifndef SNC_REGIONAL_HPP
#define SNC_REGIONAL_HPP

#include "snc/uil.hpp"

#include <optional>

namespace snc {

/// Uniform-user-density model for the regional incentive analysis: a
/// coverage disk of radius R and an incentive annulus of width d_u inside a
/// world disk of radius W.
struct RegionalModel {
    double R = 200.0;
    double W = 2000.0;
    double d_u = 1800.0;
    double density = 0.0; // users per m^2; only scales absolute revenue
    PersuasionFit fit;

    /// Throws std::invalid_argument unless 0 < R <= W, 0 <= d_u <= W - R.
    void validate() const;
};

/// Probability that a uniformly placed user falls in the coverage disk:
/// R^2 / W^2.
double p_cov_core(const RegionalModel& model);

/// Probability that a user in the annulus accepts the regional incentive tau
/// and ends up covered:
///   2((-b(R+d_u) - 1) e^{-b d_u} + bR + 1) / (W^2 b^2),  b = beta(tau).
/// Throws std::domain_error when beta(tau) <= 0.
double p_cov_uil(const RegionalModel& model, double tau);

struct RegionalProfit {
    double profit = 0.0;                    // P^R + (1 - tau) P^D
    std::optional<double> gain_percent;     // 100 (1-tau) P^D / P^R; empty when P^R = 0
};

RegionalProfit regional_profit(const RegionalModel& model, double tau);

struct RegionalOptimum {
    double tau_star = 0.0;
    double profit = 0.0;
    double gain_percent = 0.0;
};

/// Maximizes the regional profit over tau in [1e-4, 1] (golden section over
/// the beta-singularity-free domain). d_u = 0 degenerates to the no-offer
/// result (tau = 0, profit = P^R).
RegionalOptimum optimal_regional_incentive(const RegionalModel& model);

struct TauInfinityResult {
    double tau_inf = 0.0;
    double profit_per_density = 0.0; // pi (R^2 + 2(1-tau)(1+beta R)/beta^2), lambda = 1
    double residual = 0.0;           // |stationarity| at tau_inf
};

/// Infinite-region limit (W -> inf, d_u -> W - R) of the optimal regional
/// incentive for coverage radius R, and the limiting revenue per unit
/// density. The optimum is bracketed by golden section and polished by
/// bisecting the analytic derivative.
TauInfinityResult tau_infinity(double R, const PersuasionFit& fit = {});

/// d/dtau of the limiting revenue (per lambda*pi); zero at tau_inf.
double tau_infinity_stationarity(double tau, double R, const PersuasionFit& fit = {});

} // namespace snc

#endif
