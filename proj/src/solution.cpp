#include "snc/solution.hpp"

#include <cmath>
#include <stdexcept>

namespace snc {

SncSolution attach_incentives(const Placement& placement, const CoverageAssignment& assignment,
                              std::span<const User> users, double d_u, const PersuasionFit& fit)
{
    if (assignment.covered.size() != users.size())
        throw std::invalid_argument("attach_incentives: assignment does not match users");

    SncSolution sol;
    sol.method = SncMethod::usnc;
    sol.placement = placement;
    sol.flags.u.assign(users.size(), 0);
    sol.flags.w.assign(users.size(), 0);
    sol.objective = 0.0;

    const double R = placement.coverage_radius;
    for (std::size_t i = 0; i < users.size(); ++i) {
        if (assignment.covered[i]) {
            sol.flags.u[i] = 1;
            sol.objective += 1.0;
            continue;
        }
        const double r = assignment.ground_dist[i];
        const double d = r - R;
        if (d <= 0.0 || d > d_u)
            continue;
        const OptimalIncentive oi = optimal_incentive(d, fit);
        IncentiveOffer o;
        o.user_id = users[i].id;
        o.tau = oi.tau_star;
        o.d = d;
        o.accept_prob = move_probability(oi.tau_star, d, fit);
        o.expected_profit = oi.profit;
        if (r > 0.0) {
            o.move_dx = (placement.x_d - users[i].x) / r * d;
            o.move_dy = (placement.y_d - users[i].y) / r * d;
        }
        sol.flags.w[i] = 1;
        sol.offers.push_back(o);
        sol.objective += o.expected_profit;
    }
    return sol;
}

} // namespace snc
