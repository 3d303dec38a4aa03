#include "snc/jsnc.hpp"

#include "snc/optim.hpp"
#include "snc/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace snc {

std::string to_string(SncMethod m)
{
    switch (m) {
    case SncMethod::usnc: return "usnc";
    case SncMethod::jsnc: return "jsnc";
    case SncMethod::semi_jsnc: return "semi-jsnc";
    case SncMethod::exact_oracle: return "exact-oracle";
    }
    return "?";
}

// coverage boundary tolerance shared by all region tests
static constexpr double kCoverTol = 1e-9;

ExactProfit exact_profit(Point2 center, std::span<const User> users, double gamma_star,
                         double d_u, const PersuasionFit& fit)
{
    ExactProfit out;
    out.per_user.resize(users.size(), 0.0);
    for (std::size_t i = 0; i < users.size(); ++i) {
        const double r = std::hypot(users[i].x - center.x, users[i].y - center.y);
        double v = 0.0;
        if (r <= gamma_star + kCoverTol)
            v = 1.0;
        else if (r - gamma_star <= d_u)
            v = optimal_incentive(r - gamma_star, fit).profit;
        out.per_user[i] = v;
        out.total += v;
    }
    return out;
}

// ---------------------------------------------------------------------------
// triangle-surface maximization under d >= d_min

namespace {

struct Plane {
    double gt = 0.0, gd = 0.0, c = 0.0; // value = c + gt*tau + gd*d
    double eval(double tau, double d) const { return c + gt * tau + gd * d; }
};

Plane plane_through(double x1, double y1, double v1, double x2, double y2, double v2, double x3,
                    double y3, double v3)
{
    const double det = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1);
    Plane p;
    p.gt = ((v2 - v1) * (y3 - y1) - (v3 - v1) * (y2 - y1)) / det;
    p.gd = ((x2 - x1) * (v3 - v1) - (x3 - x1) * (v2 - v1)) / det;
    p.c = v1 - p.gt * x1 - p.gd * y1;
    return p;
}

struct TriVertex {
    double tau, d;
};

// max of one triangle's plane over {d >= dlo}, considering corner points and
// edge intersections with the cut line
void consider_triangle(const Plane& pl, const TriVertex (&tri)[3], double dlo, SurfaceMax& best)
{
    auto take = [&](double tau, double d) {
        const double v = pl.eval(tau, d);
        if (v > best.value) {
            best.value = v;
            best.tau = tau;
            best.d = d;
        }
    };
    constexpr double tol = 1e-12;
    for (const auto& v : tri)
        if (v.d >= dlo - tol)
            take(v.tau, std::max(v.d, dlo));
    for (int e = 0; e < 3; ++e) {
        const TriVertex& a = tri[e];
        const TriVertex& b = tri[(e + 1) % 3];
        if ((a.d - dlo) * (b.d - dlo) < 0.0) {
            const double t = (dlo - a.d) / (b.d - a.d);
            take(a.tau + t * (b.tau - a.tau), dlo);
        }
    }
}

// one cell of the grid, planes precomputed for both triangles
struct CellPlanes {
    TriVertex upper[3];
    TriVertex lower[3];
    Plane upper_plane;
    Plane lower_plane;
    double d_hi = 0.0;
};

struct TriangleSurface {
    std::vector<CellPlanes> cells;
    double d_front = 0.0;
    double d_back = 0.0;

    explicit TriangleSurface(const PwlGrid& grid)
    {
        const auto& tv = grid.tau_vertices();
        const auto& dv = grid.d_vertices();
        d_front = dv.front();
        d_back = dv.back();
        for (std::size_t k = 0; k + 1 < tv.size(); ++k) {
            for (std::size_t j = 0; j + 1 < dv.size(); ++j) {
                const double t0 = tv[k], t1 = tv[k + 1];
                const double d0 = dv[j], d1 = dv[j + 1];
                const double v00 = grid.value(static_cast<int>(k), static_cast<int>(j));
                const double v01 = grid.value(static_cast<int>(k), static_cast<int>(j) + 1);
                const double v10 = grid.value(static_cast<int>(k) + 1, static_cast<int>(j));
                const double v11 = grid.value(static_cast<int>(k) + 1, static_cast<int>(j) + 1);
                CellPlanes c;
                c.d_hi = d1;
                c.upper[0] = {t0, d0};
                c.upper[1] = {t0, d1};
                c.upper[2] = {t1, d1};
                c.upper_plane = plane_through(t0, d0, v00, t0, d1, v01, t1, d1, v11);
                c.lower[0] = {t0, d0};
                c.lower[1] = {t1, d0};
                c.lower[2] = {t1, d1};
                c.lower_plane = plane_through(t0, d0, v00, t1, d0, v10, t1, d1, v11);
                cells.push_back(c);
            }
        }
    }

    SurfaceMax max_from(double d_min) const
    {
        SurfaceMax best;
        best.value = -1.0;
        const double dlo = std::max(d_min, d_front);
        if (dlo > d_back + 1e-12)
            return {0.0, 0.0, 0.0}; // no feasible point on the surface
        for (const auto& c : cells) {
            if (c.d_hi < dlo - 1e-12)
                continue;
            consider_triangle(c.upper_plane, c.upper, dlo, best);
            consider_triangle(c.lower_plane, c.lower, dlo, best);
        }
        if (best.value < 0.0)
            return {0.0, 0.0, 0.0};
        return best;
    }
};

} // namespace

SurfaceMax max_on_surface(const PwlGrid& grid, double d_min)
{
    return TriangleSurface(grid).max_from(d_min);
}

// ---------------------------------------------------------------------------
// shared center search

namespace {

double pwl1d_value(const Pwl1D& f, double d)
{
    const auto& t = f.breakpoints;
    auto it = std::upper_bound(t.begin(), t.end(), d);
    std::size_t j = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - t.begin() - 1, 0,
                                             static_cast<std::ptrdiff_t>(t.size()) - 2));
    const double w = (t[j + 1] - d) / (t[j + 1] - t[j]);
    return w * f.node_values[j] + (1.0 - w) * f.node_values[j + 1];
}

struct CandidateScore {
    double objective = -1.0;
    int covered = -1;
    double enclosing = 0.0;
    Point2 center;
};

bool better_than(const CandidateScore& a, const CandidateScore& b)
{
    if (a.objective > b.objective + 1e-9)
        return true;
    if (a.objective < b.objective - 1e-9)
        return false;
    if (a.covered != b.covered)
        return a.covered > b.covered;
    if (std::abs(a.enclosing - b.enclosing) > 1e-12)
        return a.enclosing < b.enclosing;
    if (std::abs(a.center.x - b.center.x) > 1e-12)
        return a.center.x < b.center.x;
    return a.center.y < b.center.y;
}

CandidateScore score_center(Point2 c, const std::function<double(Point2)>& objective,
                            std::span<const User> users, double gamma_star)
{
    CandidateScore s;
    s.center = c;
    s.objective = objective(c);
    s.covered = 0;
    s.enclosing = 0.0;
    for (const auto& u : users) {
        const double r = std::hypot(u.x - c.x, u.y - c.y);
        if (r <= gamma_star + kCoverTol) {
            ++s.covered;
            s.enclosing = std::max(s.enclosing, r);
        }
    }
    return s;
}

std::vector<Point2> geometric_seeds(std::span<const User> users, const Bounds& bounds,
                                    double gamma_star, double d_u)
{
    std::vector<Point2> seeds;
    seeds.reserve(users.size() * users.size() * 2 + users.size());
    for (const auto& u : users)
        seeds.push_back(bounds.clamp({u.x, u.y}));
    for (std::size_t i = 0; i < users.size(); ++i) {
        for (std::size_t j = i + 1; j < users.size(); ++j) {
            const Point2 a{users[i].x, users[i].y};
            const Point2 b{users[j].x, users[j].y};
            for (double radius : {gamma_star, gamma_star + d_u}) {
                if (auto inter = circle_intersections(a, b, radius)) {
                    seeds.push_back(bounds.clamp(inter->first));
                    seeds.push_back(bounds.clamp(inter->second));
                }
            }
        }
    }
    return seeds;
}

std::vector<Point2> kmeans_seeds(std::span<const User> users)
{
    std::vector<Point2> seeds;
    const std::size_t n = users.size();
    for (std::size_t k = 1; k <= std::min<std::size_t>(4, n); ++k) {
        std::vector<Point2> centroids(k);
        for (std::size_t i = 0; i < k; ++i)
            centroids[i] = {users[i * n / k].x, users[i * n / k].y};
        std::vector<std::size_t> owner(n, 0);
        for (int iter = 0; iter < 10; ++iter) {
            for (std::size_t i = 0; i < n; ++i) {
                double best_d = 1e300;
                for (std::size_t c = 0; c < k; ++c) {
                    const double d = distance_sq({users[i].x, users[i].y}, centroids[c]);
                    if (d < best_d) {
                        best_d = d;
                        owner[i] = c;
                    }
                }
            }
            std::vector<Point2> sum(k);
            std::vector<int> cnt(k, 0);
            for (std::size_t i = 0; i < n; ++i) {
                sum[owner[i]].x += users[i].x;
                sum[owner[i]].y += users[i].y;
                ++cnt[owner[i]];
            }
            for (std::size_t c = 0; c < k; ++c)
                if (cnt[c] > 0)
                    centroids[c] = {sum[c].x / cnt[c], sum[c].y / cnt[c]};
        }
        seeds.insert(seeds.end(), centroids.begin(), centroids.end());
    }
    return seeds;
}

struct CenterSearchResult {
    CandidateScore best;
    SolverStats stats;
};

// local mesh refinement around a stalled simplex result. The objective is
// piecewise smooth with curved ridges along coverage circles, where simplex
// steps and fixed compass directions fall off; a shrinking evaluation mesh
// tracks them.
Point2 mesh_polish(Point2 p, const Bounds& bounds,
                   const std::function<double(Point2)>& objective, int& iterations)
{
    double value = objective(p);
    for (double spacing : {2.0, 0.5, 0.125, 0.03, 0.0075}) {
        for (int moves = 0; moves < 40; ++moves) {
            ++iterations;
            Point2 best_p = p;
            double best_v = value;
            for (int i = -6; i <= 6; ++i) {
                for (int k = -6; k <= 6; ++k) {
                    if (i == 0 && k == 0)
                        continue;
                    const Point2 q = bounds.clamp({p.x + spacing * i, p.y + spacing * k});
                    const double v = objective(q);
                    if (v > best_v) {
                        best_v = v;
                        best_p = q;
                    }
                }
            }
            if (best_v <= value)
                break;
            p = best_p;
            value = best_v;
        }
    }
    return p;
}

// 1-D maximization along the circle of the given radius around one user:
// dense angular sweep at roughly 1 m arc steps, then golden-section inside
// the best bracket. The jump set of the objective is exactly these circles
// (a user enters coverage, or enters the incentive band), so the supremum is
// typically attained on one of them.
void arc_search(const User& u, double radius, const Bounds& bounds,
                const std::function<double(Point2)>& objective,
                std::vector<Point2>& candidates)
{
    constexpr double pi2 = 2.0 * std::numbers::pi;
    const int n = std::max(64, static_cast<int>(pi2 * radius));
    auto at = [&](double theta) {
        return Point2{u.x + radius * std::cos(theta), u.y + radius * std::sin(theta)};
    };
    double best_v = -1.0;
    double best_theta = 0.0;
    bool found = false;
    for (int i = 0; i < n; ++i) {
        const double theta = pi2 * i / n;
        const Point2 p = at(theta);
        if (!bounds.contains(p.x, p.y))
            continue;
        const double v = objective(p);
        if (v > best_v) {
            best_v = v;
            best_theta = theta;
            found = true;
        }
    }
    if (!found)
        return;
    const double step = pi2 / n;
    const GoldenSectionResult g = golden_section_max(
        [&](double theta) {
            const Point2 p = at(theta);
            return bounds.contains(p.x, p.y) ? objective(p) : -1.0;
        },
        best_theta - step, best_theta + step, 1e-9);
    candidates.push_back(at(best_theta));
    candidates.push_back(at(g.x));
}

CenterSearchResult optimize_center(std::span<const User> users, const Bounds& bounds,
                                   double gamma_star, double d_u,
                                   const std::function<double(Point2)>& objective,
                                   const SncSolverOptions& opts)
{
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<Point2> seeds = geometric_seeds(users, bounds, gamma_star, d_u);
    {
        UsncOptions uo;
        uo.alpha_star = opts.alpha_star;
        const UsncResult usnc = solve_usnc(users, bounds, gamma_star, uo);
        seeds.push_back(usnc.placement.center());
    }
    for (const auto& c : kmeans_seeds(users))
        seeds.push_back(bounds.clamp(c));
    Rng rng(opts.seed);
    for (int i = 0; i < opts.random_starts; ++i)
        seeds.push_back({rng.uniform(bounds.x_lo, bounds.x_hi),
                         rng.uniform(bounds.y_lo, bounds.y_hi)});

    auto clamped_objective = [&](std::span<const double> x) {
        return objective(bounds.clamp({x[0], x[1]}));
    };

    NelderMeadOptions nm;
    nm.max_iterations = opts.max_iterations;
    nm.simplex_tol = opts.simplex_tol;
    nm.initial_step = opts.initial_step;

    CenterSearchResult out;
    out.stats.candidates = static_cast<int>(seeds.size());
    struct Refined {
        Point2 p;
        double value;
        bool converged;
    };
    std::vector<Refined> refined;
    refined.reserve(seeds.size());
    for (const auto& seed : seeds) {
        const double start[2] = {seed.x, seed.y};
        const NelderMeadResult r = nelder_mead_max(clamped_objective, start, nm);
        out.stats.refine_iterations += r.iterations;
        refined.push_back({bounds.clamp({r.x[0], r.x[1]}), r.value, r.converged});
    }

    // polish the strongest distinct basins: sort by refined value, then keep
    // at most one representative per 10 m neighborhood so one deep basin
    // cannot crowd out the rest
    std::sort(refined.begin(), refined.end(), [](const Refined& a, const Refined& b) {
        if (a.value != b.value)
            return a.value > b.value;
        if (a.p.x != b.p.x)
            return a.p.x < b.p.x;
        return a.p.y < b.p.y;
    });
    std::vector<std::size_t> polish_idx;
    for (std::size_t i = 0; i < refined.size() && polish_idx.size() < 16; ++i) {
        bool distinct = true;
        for (std::size_t k : polish_idx)
            if (distance(refined[i].p, refined[k].p) < 10.0) {
                distinct = false;
                break;
            }
        if (distinct)
            polish_idx.push_back(i);
    }
    // the convergence flag reports the refinement phase: false when the
    // strongest simplex run ended on the iteration cap instead of collapsing
    bool refinement_converged = true;
    double best_refined = -1.0;
    for (std::size_t i = 0; i < refined.size(); ++i) {
        Point2 p = refined[i].p;
        if (std::find(polish_idx.begin(), polish_idx.end(), i) != polish_idx.end())
            p = mesh_polish(p, bounds, objective, out.stats.refine_iterations);
        const CandidateScore s = score_center(p, objective, users, gamma_star);
        if (out.best.covered < 0 || better_than(s, out.best))
            out.best = s;
        if (refined[i].value > best_refined) {
            best_refined = refined[i].value;
            refinement_converged = refined[i].converged;
        }
    }

    // sweep the discontinuity circles
    std::vector<Point2> arc_pts;
    for (const auto& u : users) {
        arc_search(u, gamma_star, bounds, objective, arc_pts);
        arc_search(u, gamma_star + d_u, bounds, objective, arc_pts);
    }
    for (const Point2& p : arc_pts) {
        const CandidateScore s = score_center(p, objective, users, gamma_star);
        if (better_than(s, out.best))
            out.best = s;
    }
    out.stats.candidates += static_cast<int>(arc_pts.size());
    out.stats.converged = refinement_converged;
    out.stats.approx_objective = out.best.objective;
    out.stats.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

IncentiveOffer make_offer(const User& u, Point2 center, double r, double tau, double d,
                          const PersuasionFit& fit)
{
    IncentiveOffer o;
    o.user_id = u.id;
    o.tau = tau;
    o.d = d;
    o.accept_prob = move_probability(tau, d, fit);
    o.expected_profit = unit_profit(tau, d, fit);
    if (r > 0.0) {
        o.move_dx = (center.x - u.x) / r * d;
        o.move_dy = (center.y - u.y) / r * d;
    }
    return o;
}

SncSolution build_solution(SncMethod method, std::span<const User> users, Point2 center,
                           double gamma_star, double alpha_star,
                           const std::vector<IncentiveOffer>& offers,
                           const std::vector<std::uint8_t>& w_flags, const SolverStats& stats)
{
    SncSolution sol;
    sol.method = method;
    sol.solver_stats = stats;
    sol.placement.x_d = center.x;
    sol.placement.y_d = center.y;
    sol.placement.coverage_radius = gamma_star;
    sol.placement.alpha = alpha_star;
    sol.placement.h_d = alpha_star * gamma_star;
    sol.flags.u.resize(users.size(), 0);
    sol.flags.w = w_flags;
    sol.offers = offers;
    sol.objective = 0.0;
    for (std::size_t i = 0; i < users.size(); ++i) {
        const double r = std::hypot(users[i].x - center.x, users[i].y - center.y);
        if (r <= gamma_star + kCoverTol) {
            sol.flags.u[i] = 1;
            sol.objective += 1.0;
        }
    }
    for (const auto& o : offers)
        sol.objective += o.expected_profit;
    return sol;
}

} // namespace

SncSolution solve_jsnc(std::span<const User> users, const Bounds& bounds, double gamma_star,
                       double d_u, const PwlGrid& grid, const PersuasionFit& fit,
                       const SncSolverOptions& opts)
{
    if (users.empty())
        throw std::invalid_argument("solve_jsnc: empty user list");
    if (std::abs(grid.d_vertices().back() - d_u) > 1e-6)
        throw std::invalid_argument("solve_jsnc: grid must span (0, d_u]");

    const TriangleSurface surface(grid);
    auto objective = [&](Point2 c) {
        double total = 0.0;
        for (const auto& u : users) {
            const double r = std::hypot(u.x - c.x, u.y - c.y);
            if (r <= gamma_star + kCoverTol)
                total += 1.0;
            else if (r - gamma_star <= d_u)
                total += surface.max_from(r - gamma_star).value;
        }
        return total;
    };

    CenterSearchResult search = optimize_center(users, bounds, gamma_star, d_u, objective, opts);
    const Point2 center = search.best.center;

    std::vector<IncentiveOffer> offers;
    std::vector<std::uint8_t> w(users.size(), 0);
    for (std::size_t i = 0; i < users.size(); ++i) {
        const double r = std::hypot(users[i].x - center.x, users[i].y - center.y);
        const double dmin = r - gamma_star;
        if (dmin > kCoverTol && dmin <= d_u) {
            const SurfaceMax sm = surface.max_from(dmin);
            if (sm.value > 0.0) {
                w[i] = 1;
                offers.push_back(make_offer(users[i], center, r, sm.tau, sm.d, fit));
            }
        }
    }
    return build_solution(SncMethod::jsnc, users, center, gamma_star, opts.alpha_star, offers, w,
                          search.stats);
}

SncSolution solve_semi_jsnc(std::span<const User> users, const Bounds& bounds, double gamma_star,
                            double d_u, const Pwl1D& fit1d, const PersuasionFit& fit,
                            const SncSolverOptions& opts)
{
    if (users.empty())
        throw std::invalid_argument("solve_semi_jsnc: empty user list");
    if (std::abs(fit1d.breakpoints.back() - d_u) > 1e-6 || fit1d.breakpoints.front() != 0.0)
        throw std::invalid_argument("solve_semi_jsnc: fit1d must span [0, d_u]");

    auto objective = [&](Point2 c) {
        double total = 0.0;
        for (const auto& u : users) {
            const double r = std::hypot(u.x - c.x, u.y - c.y);
            if (r <= gamma_star + kCoverTol)
                total += 1.0;
            else if (r - gamma_star <= d_u)
                total += std::max(0.0, pwl1d_value(fit1d, r - gamma_star));
        }
        return total;
    };

    CenterSearchResult search = optimize_center(users, bounds, gamma_star, d_u, objective, opts);
    const Point2 center = search.best.center;

    // incentives assigned after placement, from the closed form
    std::vector<IncentiveOffer> offers;
    std::vector<std::uint8_t> w(users.size(), 0);
    for (std::size_t i = 0; i < users.size(); ++i) {
        const double r = std::hypot(users[i].x - center.x, users[i].y - center.y);
        const double dmin = r - gamma_star;
        if (dmin > kCoverTol && dmin <= d_u && pwl1d_value(fit1d, dmin) > 0.0) {
            const OptimalIncentive oi = optimal_incentive(dmin, fit);
            w[i] = 1;
            offers.push_back(make_offer(users[i], center, r, oi.tau_star, dmin, fit));
        }
    }
    return build_solution(SncMethod::semi_jsnc, users, center, gamma_star, opts.alpha_star,
                          offers, w, search.stats);
}

BruteForceCenter brute_force_center(std::span<const User> users, const Bounds& bounds,
                                    double gamma_star, double d_u, const PersuasionFit& fit,
                                    double grid_step, ObjectiveKind kind, const PwlGrid* grid,
                                    const Pwl1D* fit1d)
{
    if (!(grid_step > 0.0))
        throw std::invalid_argument("brute_force_center: grid_step must be positive");
    if (kind == ObjectiveKind::jsnc_approx && grid == nullptr)
        throw std::invalid_argument("brute_force_center: jsnc_approx needs a grid");
    if (kind == ObjectiveKind::semi_approx && fit1d == nullptr)
        throw std::invalid_argument("brute_force_center: semi_approx needs a 1-D fit");

    std::optional<TriangleSurface> surface;
    if (kind == ObjectiveKind::jsnc_approx)
        surface.emplace(*grid);
    auto user_value = [&](double dmin) {
        switch (kind) {
        case ObjectiveKind::exact:
            return optimal_incentive(dmin, fit).profit;
        case ObjectiveKind::jsnc_approx:
            return surface->max_from(dmin).value;
        case ObjectiveKind::semi_approx:
            return std::max(0.0, pwl1d_value(*fit1d, dmin));
        }
        return 0.0;
    };

    BruteForceCenter best;
    best.center = {bounds.x_lo, bounds.y_lo};
    best.objective = -1.0;
    for (double y = bounds.y_lo; y <= bounds.y_hi + 1e-12; y += grid_step) {
        for (double x = bounds.x_lo; x <= bounds.x_hi + 1e-12; x += grid_step) {
            double total = 0.0;
            for (const auto& u : users) {
                const double r = std::hypot(u.x - x, u.y - y);
                if (r <= gamma_star + kCoverTol)
                    total += 1.0;
                else if (r - gamma_star <= d_u)
                    total += user_value(r - gamma_star);
            }
            if (total > best.objective) {
                best.objective = total;
                best.center = {x, y};
            }
        }
    }
    return best;
}

} // namespace snc
