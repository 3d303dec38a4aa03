#ifndef SNC_UIL_HPP
#define SNC_UIL_HPP

namespace snc {

/// Logarithmic fit of the persuasion parameter: beta(tau) = k1*ln(tau) + k2.
/// Defaults are the survey-fitted coefficients.
struct PersuasionFit {
    double k1 = -0.01166;
    double k2 = 0.005676;

    /// Throws std::invalid_argument unless k1 < 0 (beta must decrease in tau).
    void validate() const;
};

/// Persuasion parameter (1/m) for an incentive tau in (0, 1]. Throws
/// std::domain_error for tau outside (0, 1]; tau = 0 means "no offer" and is
/// handled by the callers, never here.
double beta(double tau, const PersuasionFit& fit = {});

/// P{user moves a distance <= d} = exp(-beta(tau) * d). Clamped to <= 1 when
/// a user-supplied fit makes beta negative.
double move_probability(double tau, double d, const PersuasionFit& fit = {});

/// Expected normalized revenue from offering tau to a user who must move d:
/// (1 - tau) * exp(-beta(tau) * d).
double unit_profit(double tau, double d, const PersuasionFit& fit = {});

struct OptimalIncentive {
    double tau_star = 0.0;
    double profit = 0.0;
};

/// Closed-form maximizer of unit_profit(., d): tau* = k1*d / (k1*d - 1).
/// For d = 0 returns (0, 1) by convention (the user need not move).
OptimalIncentive optimal_incentive(double d, const PersuasionFit& fit = {});

/// A per-user incentive decision. tau = 0 together with d = 0 encodes
/// "no offer"; expected_profit is then the covered-user revenue.
struct IncentiveOffer {
    int user_id = -1;
    double tau = 0.0;          // discount fraction in (0,1], or 0 for no offer
    double d = 0.0;            // suggested move distance, m
    double accept_prob = 1.0;
    double expected_profit = 0.0;
    double move_dx = 0.0;      // suggested displacement (radial, toward the drone)
    double move_dy = 0.0;
};

} // namespace snc

#endif
