#include "snc/uil.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace snc {

void PersuasionFit::validate() const
{
    if (!(k1 < 0.0))
        throw std::invalid_argument("PersuasionFit: k1 must be negative");
}

double beta(double tau, const PersuasionFit& fit)
{
    if (!(tau > 0.0) || tau > 1.0)
        throw std::domain_error("beta: tau must be in (0, 1]");
    return fit.k1 * std::log(tau) + fit.k2;
}

double move_probability(double tau, double d, const PersuasionFit& fit)
{
    if (d < 0.0)
        throw std::domain_error("move_probability: d must be nonnegative");
    const double b = beta(tau, fit);
    const double p = std::exp(-b * d);
    if (p > 1.0) {
        // only reachable with user-configured fits where beta(tau) < 0
        static std::atomic<bool> warned{false};
        if (!warned.exchange(true))
            std::cerr << "snc: warning: beta(tau) < 0, move probability clamped to 1\n";
        return 1.0;
    }
    return p;
}

double unit_profit(double tau, double d, const PersuasionFit& fit)
{
    return (1.0 - tau) * move_probability(tau, d, fit);
}

OptimalIncentive optimal_incentive(double d, const PersuasionFit& fit)
{
    if (d < 0.0)
        throw std::domain_error("optimal_incentive: d must be nonnegative");
    if (d == 0.0)
        return {0.0, 1.0};
    const double tau = fit.k1 * d / (fit.k1 * d - 1.0);
    return {tau, unit_profit(tau, d, fit)};
}

} // namespace snc
