#ifndef SNC_JSNC_HPP
#define SNC_JSNC_HPP

#include "snc/pwl.hpp"
#include "snc/solution.hpp"

#include <cstdint>
#include <span>

namespace snc {

/// Exact per-center profit, decomposed per user:
///   r <= Gamma*            -> 1
///   Gamma* < r <= Gamma*+d_u -> unit_profit at the closed-form optimal
///                               incentive for the minimal displacement
///                               d = r - Gamma*
///   otherwise              -> 0
struct ExactProfit {
    double total = 0.0;
    std::vector<double> per_user;
};

ExactProfit exact_profit(Point2 center, std::span<const User> users, double gamma_star,
                         double d_u, const PersuasionFit& fit = {});

struct SncSolverOptions {
    double alpha_star = 1.0;   // altitude-to-radius ratio for the placement
    int random_starts = 32;
    int max_iterations = 500;  // cap per direct-search start
    double simplex_tol = 0.01; // m
    double initial_step = 5.0; // m, initial simplex edge
    std::uint64_t seed = 0x534e43u; // stream for the uniform random starts
};

/// Joint configuration: maximizes sum(u_i + Pi^a_i) where Pi^a_i is the best
/// point of the triangle-method surface subject to d_i >= r_i - Gamma*. For a
/// fixed center the inner optimum is exact (vertex enumeration on the clipped
/// cells); the center is optimized by multistart Nelder-Mead direct search
/// seeded from the geometric candidate set. The grid must span (0, d_u].
SncSolution solve_jsnc(std::span<const User> users, const Bounds& bounds, double gamma_star,
                       double d_u, const PwlGrid& grid, const PersuasionFit& fit = {},
                       const SncSolverOptions& opts = {});

/// Semi-joint configuration: maximizes sum(u_i + Pi_check(d_i)) with
/// d_i = clamp(r_i - Gamma*, 0, d_u) via the univariate PWL proxy, then
/// assigns closed-form optimal incentives after the center is fixed.
/// fit1d must span [0, d_u].
SncSolution solve_semi_jsnc(std::span<const User> users, const Bounds& bounds,
                            double gamma_star, double d_u, const Pwl1D& fit1d,
                            const PersuasionFit& fit = {}, const SncSolverOptions& opts = {});

enum class ObjectiveKind { exact, jsnc_approx, semi_approx };

struct BruteForceCenter {
    Point2 center;
    double objective = 0.0;
};

/// Exhaustive center scan of the bounds box scoring the chosen objective.
/// Validation oracle exploiting the per-center decomposition; test-scale only.
/// jsnc_approx requires grid, semi_approx requires fit1d.
BruteForceCenter brute_force_center(std::span<const User> users, const Bounds& bounds,
                                    double gamma_star, double d_u, const PersuasionFit& fit,
                                    double grid_step, ObjectiveKind kind,
                                    const PwlGrid* grid = nullptr,
                                    const Pwl1D* fit1d = nullptr);

/// Best value of the triangle-method surface subject to d >= d_min (and the
/// grid rectangle), with its argmax. Exposed for tests.
struct SurfaceMax {
    double value = 0.0;
    double tau = 0.0;
    double d = 0.0;
};
SurfaceMax max_on_surface(const PwlGrid& grid, double d_min);

} // namespace snc

#endif
