#include "snc/usnc.hpp"

#include "snc/optim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace snc {

Point2 Bounds::clamp(Point2 p) const
{
    return {std::clamp(p.x, x_lo, x_hi), std::clamp(p.y, y_lo, y_hi)};
}

namespace {

CoverageAssignment assign_coverage(std::span<const User> users, Point2 center, double radius,
                                   double tol)
{
    CoverageAssignment a;
    a.covered.resize(users.size());
    a.ground_dist.resize(users.size());
    for (std::size_t i = 0; i < users.size(); ++i) {
        const double r = std::hypot(users[i].x - center.x, users[i].y - center.y);
        a.ground_dist[i] = r;
        a.covered[i] = r <= radius + tol ? 1 : 0;
        a.covered_count += a.covered[i];
    }
    return a;
}

double enclosing_radius(std::span<const User> users, const CoverageAssignment& a)
{
    double r = 0.0;
    for (std::size_t i = 0; i < users.size(); ++i)
        if (a.covered[i])
            r = std::max(r, a.ground_dist[i]);
    return r;
}

} // namespace

UsncResult solve_usnc(std::span<const User> users, const Bounds& bounds, double gamma_star,
                      const UsncOptions& opts)
{
    if (users.empty())
        throw std::invalid_argument("solve_usnc: empty user list");
    if (!(gamma_star > 0.0))
        throw std::invalid_argument("solve_usnc: gamma_star must be positive");
    if (!(bounds.x_lo <= bounds.x_hi) || !(bounds.y_lo <= bounds.y_hi))
        throw std::runtime_error("solve_usnc: bounds box is empty");

    std::vector<Point2> candidates;
    candidates.reserve(users.size() * users.size() + users.size());
    for (const auto& u : users) {
        const Point2 p = bounds.clamp({u.x, u.y});
        candidates.push_back(p);
    }
    for (std::size_t i = 0; i < users.size(); ++i) {
        for (std::size_t j = i + 1; j < users.size(); ++j) {
            const auto inter = circle_intersections({users[i].x, users[i].y},
                                                    {users[j].x, users[j].y}, gamma_star);
            if (inter) {
                candidates.push_back(bounds.clamp(inter->first));
                candidates.push_back(bounds.clamp(inter->second));
            }
        }
    }
    if (candidates.empty())
        throw std::runtime_error("solve_usnc: bounds box excludes all candidate centers");

    // best by (count desc, enclosing radius asc, lexicographic center)
    int best_count = -1;
    double best_radius = 0.0;
    Point2 best_center{};
    for (const auto& c : candidates) {
        int count = 0;
        double enc = 0.0;
        const double lim = gamma_star + opts.coverage_tol;
        for (const auto& u : users) {
            const double r = std::hypot(u.x - c.x, u.y - c.y);
            if (r <= lim) {
                ++count;
                enc = std::max(enc, r);
            }
        }
        const bool better = count > best_count ||
                            (count == best_count && enc < best_radius - 1e-12) ||
                            (count == best_count && std::abs(enc - best_radius) <= 1e-12 &&
                             (c.x < best_center.x - 1e-12 ||
                              (std::abs(c.x - best_center.x) <= 1e-12 && c.y < best_center.y - 1e-12)));
        if (better) {
            best_count = count;
            best_radius = enc;
            best_center = c;
        }
    }

    // shrink: re-center on the minimum enclosing circle of the covered set
    Point2 center = best_center;
    {
        CoverageAssignment a = assign_coverage(users, best_center, gamma_star, opts.coverage_tol);
        std::vector<Point2> covered_pts;
        for (std::size_t i = 0; i < users.size(); ++i)
            if (a.covered[i])
                covered_pts.push_back({users[i].x, users[i].y});
        if (!covered_pts.empty()) {
            const Circle mec = min_enclosing_circle(covered_pts);
            if (mec.radius <= gamma_star + opts.coverage_tol &&
                bounds.contains(mec.center.x, mec.center.y))
                center = mec.center;
        }
    }

    UsncResult res;
    res.candidates_evaluated = static_cast<int>(candidates.size());
    res.assignment = assign_coverage(users, center, gamma_star, opts.coverage_tol);

    double radius = std::max(enclosing_radius(users, res.assignment), opts.r_min);
    res.placement.x_d = center.x;
    res.placement.y_d = center.y;
    res.placement.coverage_radius = radius;
    res.placement.alpha = opts.alpha_star;
    res.placement.h_d = opts.alpha_star * radius;

    // altitude box post-check
    if (res.placement.h_d < bounds.h_lo || res.placement.h_d > bounds.h_hi) {
        const double a_lo = bounds.h_lo / radius;
        const double a_hi = bounds.h_hi / radius;
        if (!(a_lo <= a_hi))
            throw std::runtime_error("solve_usnc: empty feasible altitude range");
        res.placement.alpha = std::clamp(opts.alpha_star, a_lo, a_hi);
        res.placement.h_d = res.placement.alpha * radius;
        res.altitude_clamped = true;
    }
    // flags are defined against the actual coverage radius
    res.assignment = assign_coverage(users, center, radius, opts.coverage_tol);
    return res;
}

BruteForceUsnc brute_force_usnc(std::span<const User> users, const Bounds& bounds,
                                double gamma_star, double grid_step)
{
    if (!(grid_step > 0.0))
        throw std::invalid_argument("brute_force_usnc: grid_step must be positive");
    BruteForceUsnc best;
    best.center = {bounds.x_lo, bounds.y_lo};
    const double g2 = gamma_star * gamma_star;
    for (double y = bounds.y_lo; y <= bounds.y_hi + 1e-12; y += grid_step) {
        for (double x = bounds.x_lo; x <= bounds.x_hi + 1e-12; x += grid_step) {
            int count = 0;
            for (const auto& u : users) {
                const double dx = u.x - x;
                const double dy = u.y - y;
                if (dx * dx + dy * dy <= g2)
                    ++count;
            }
            if (count > best.best_count) {
                best.best_count = count;
                best.center = {x, y};
            }
        }
    }
    return best;
}

} // namespace snc
