#ifndef SNC_USNC_HPP
#define SNC_USNC_HPP

#include "snc/geometry.hpp"
#include "snc/uil.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace snc {

struct User {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
};

/// Placement box for the drone. Altitude limits apply as a post-check on
/// alpha_star * R.
struct Bounds {
    double x_lo = -700.0, x_hi = 700.0;
    double y_lo = -700.0, y_hi = 700.0;
    double h_lo = 0.0, h_hi = 1e9;

    bool contains(double x, double y) const
    {
        return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi;
    }
    Point2 clamp(Point2 p) const;
};

struct Placement {
    double x_d = 0.0;
    double y_d = 0.0;
    double h_d = 0.0;
    double coverage_radius = 0.0; // R, m
    double alpha = 0.0;           // h_d / R

    Point2 center() const { return {x_d, y_d}; }
};

struct CoverageAssignment {
    std::vector<std::uint8_t> covered; // per user, aligned with the input order
    std::vector<double> ground_dist;   // r_i to the placement center
    int covered_count = 0;
};

struct UsncOptions {
    double alpha_star = 1.0;  // altitude-to-radius ratio applied to the shrunk R
    double r_min = 1.0;       // floor for degenerate zero-radius placements, m
    double coverage_tol = 1e-9;
};

struct UsncResult {
    Placement placement;
    CoverageAssignment assignment;
    int candidates_evaluated = 0;
    bool altitude_clamped = false; // alpha re-solved on the feasible boundary
};

/// Places the drone to maximize the number of users within a disk of radius
/// gamma_star, by exact geometric enumeration: candidate centers are the user
/// locations and the pairwise intersections of radius-gamma_star circles
/// around users (clamped into the bounds box). Ties are broken by the
/// smaller enclosing radius of the covered set, then lexicographically.
/// The winning center is then re-centered to the minimum enclosing circle of
/// its covered set, R is set to the largest covered distance (floored at
/// r_min) and h to alpha_star * R, re-solving alpha on the boundary when the
/// altitude box binds.
/// Throws std::invalid_argument on an empty user list and std::runtime_error
/// when the bounds box admits no candidate.
UsncResult solve_usnc(std::span<const User> users, const Bounds& bounds, double gamma_star,
                      const UsncOptions& opts);

struct BruteForceUsnc {
    int best_count = 0;
    Point2 center;
};

/// Exhaustive grid scan of the bounds box for the max-coverage count.
/// Validation oracle; quadratic in the box size, use at desk scale only.
BruteForceUsnc brute_force_usnc(std::span<const User> users, const Bounds& bounds,
                                double gamma_star, double grid_step);

} // namespace snc

#endif
