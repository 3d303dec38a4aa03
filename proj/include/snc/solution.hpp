#ifndef SNC_SOLUTION_HPP
#define SNC_SOLUTION_HPP

#include "snc/uil.hpp"
#include "snc/usnc.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace snc {

enum class SncMethod { usnc, jsnc, semi_jsnc, exact_oracle };

std::string to_string(SncMethod m);

/// Per-user region indicators: u = inside the coverage disk, w = inside the
/// incentive annulus and receiving an offer. u + w <= 1 always.
struct RegionFlags {
    std::vector<std::uint8_t> u;
    std::vector<std::uint8_t> w;
};

struct SolverStats {
    int candidates = 0;          // multistart seeds evaluated
    int refine_iterations = 0;   // total direct-search iterations
    double wall_time_ms = 0.0;
    double approx_objective = 0.0; // the PWL objective the solver maximized
    bool converged = true; // false when the best simplex run hit the iteration cap
};

struct SncSolution {
    Placement placement;
    RegionFlags flags;
    std::vector<IncentiveOffer> offers;
    double objective = 0.0; // covered count + expected offer profits
    SncMethod method = SncMethod::usnc;
    SolverStats solver_stats;
};

/// Post-pass of the uncoordinated method: for every uncovered user within
/// d_u of the coverage boundary, offers the closed-form optimal incentive at
/// the minimal displacement d_i = r_i - R. Covered users contribute 1.
SncSolution attach_incentives(const Placement& placement, const CoverageAssignment& assignment,
                              std::span<const User> users, double d_u,
                              const PersuasionFit& fit = {});

} // namespace snc

#endif
