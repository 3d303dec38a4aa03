#include "snc/pwl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace snc {

namespace {

void require_strictly_increasing(const std::vector<double>& v, const char* what)
{
    if (v.size() < 2)
        throw std::invalid_argument(std::string(what) + ": need at least two vertices");
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1]))
            throw std::invalid_argument(std::string(what) + ": vertices must be strictly increasing");
}

// index of the cell [v[i], v[i+1]] containing x (right-closed at the end)
int locate(const std::vector<double>& v, double x)
{
    auto it = std::upper_bound(v.begin(), v.end(), x);
    int i = static_cast<int>(it - v.begin()) - 1;
    i = std::clamp(i, 0, static_cast<int>(v.size()) - 2);
    return i;
}

} // namespace

PwlGrid PwlGrid::build(std::vector<double> tau_vertices, std::vector<double> d_vertices,
                       const PersuasionFit& fit)
{
    require_strictly_increasing(tau_vertices, "PwlGrid tau");
    require_strictly_increasing(d_vertices, "PwlGrid d");
    if (!(tau_vertices.front() > 0.0) || tau_vertices.back() > 1.0)
        throw std::invalid_argument("PwlGrid: tau vertices must lie in (0, 1]");
    if (!(d_vertices.front() > 0.0))
        throw std::invalid_argument("PwlGrid: d vertices must be positive");
    fit.validate();

    PwlGrid g;
    g.tau_ = std::move(tau_vertices);
    g.d_ = std::move(d_vertices);
    g.values_.resize(g.tau_.size(), std::vector<double>(g.d_.size()));
    for (std::size_t k = 0; k < g.tau_.size(); ++k)
        for (std::size_t j = 0; j < g.d_.size(); ++j)
            g.values_[k][j] = unit_profit(g.tau_[k], g.d_[j], fit);
    return g;
}

TriangleApprox triangle_approx(const PwlGrid& grid, double tau, double d)
{
    const auto& tv = grid.tau_vertices();
    const auto& dv = grid.d_vertices();
    constexpr double edge_tol = 1e-12;
    if (tau < tv.front() - edge_tol || tau > tv.back() + edge_tol || d < dv.front() - edge_tol ||
        d > dv.back() + edge_tol)
        throw std::domain_error("triangle_approx: query outside the grid rectangle");
    tau = std::clamp(tau, tv.front(), tv.back());
    d = std::clamp(d, dv.front(), dv.back());

    const int k = locate(tv, tau);
    const int j = locate(dv, d);
    const double t0 = tv[static_cast<std::size_t>(k)], t1 = tv[static_cast<std::size_t>(k) + 1];
    const double d0 = dv[static_cast<std::size_t>(j)], d1 = dv[static_cast<std::size_t>(j) + 1];

    TriangleApprox out;
    // upper triangle (towards larger d) iff strictly above the cell diagonal
    const bool upper = d > d0 + (tau - t0) * (d1 - d0) / (t1 - t0);
    if (upper) {
        out.vertices = {std::pair{k, j}, {k, j + 1}, {k + 1, j + 1}};
    } else {
        out.vertices = {std::pair{k, j}, {k + 1, j}, {k + 1, j + 1}};
    }

    // barycentric coordinates in the selected triangle
    const auto vp = [&](int idx) {
        return std::pair<double, double>{tv[static_cast<std::size_t>(out.vertices[static_cast<std::size_t>(idx)].first)],
                                         dv[static_cast<std::size_t>(out.vertices[static_cast<std::size_t>(idx)].second)]};
    };
    const auto [xa, ya] = vp(0);
    const auto [xb, yb] = vp(1);
    const auto [xc, yc] = vp(2);
    const double det = (yb - yc) * (xa - xc) + (xc - xb) * (ya - yc);
    double wa = ((yb - yc) * (tau - xc) + (xc - xb) * (d - yc)) / det;
    double wb = ((yc - ya) * (tau - xc) + (xa - xc) * (d - yc)) / det;
    double wc = 1.0 - wa - wb;
    // rounding can leave weights a hair outside [0,1]
    wa = std::clamp(wa, 0.0, 1.0);
    wb = std::clamp(wb, 0.0, 1.0);
    wc = std::clamp(wc, 0.0, 1.0);
    const double s = wa + wb + wc;
    out.weights = {wa / s, wb / s, wc / s};
    out.value = 0.0;
    for (int i = 0; i < 3; ++i)
        out.value += out.weights[static_cast<std::size_t>(i)] *
                     grid.value(out.vertices[static_cast<std::size_t>(i)].first,
                                out.vertices[static_cast<std::size_t>(i)].second);
    return out;
}

namespace {

// Least-squares node values for fixed breakpoints, with the left node pinned.
// The hat-function normal equations are tridiagonal; solved by the Thomas
// algorithm. Returns the achieved RMSE.
double ls_node_values(const std::vector<double>& knots, const std::vector<double>& xs,
                      const std::vector<double>& ys, double pinned_left,
                      std::vector<double>& values)
{
    const std::size_t n = knots.size();
    std::vector<double> diag(n, 0.0), off(n - 1, 0.0), rhs(n, 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const int j = locate(knots, xs[i]);
        const auto ju = static_cast<std::size_t>(j);
        const double w = (knots[ju + 1] - xs[i]) / (knots[ju + 1] - knots[ju]);
        diag[ju] += w * w;
        diag[ju + 1] += (1.0 - w) * (1.0 - w);
        off[ju] += w * (1.0 - w);
        rhs[ju] += w * ys[i];
        rhs[ju + 1] += (1.0 - w) * ys[i];
    }
    // eliminate the pinned first node
    rhs[1] -= off[0] * pinned_left;

    values.assign(n, 0.0);
    values[0] = pinned_left;
    // Thomas algorithm on nodes 1..n-1
    std::vector<double> c(n, 0.0), dv(n, 0.0);
    double denom = diag[1];
    if (denom <= 0.0)
        denom = 1e-30;
    c[1] = (n > 2) ? off[1] / denom : 0.0;
    dv[1] = rhs[1] / denom;
    for (std::size_t i = 2; i < n; ++i) {
        double m = diag[i] - off[i - 1] * c[i - 1];
        if (std::abs(m) < 1e-30)
            m = 1e-30;
        if (i + 1 < n)
            c[i] = off[i] / m;
        dv[i] = (rhs[i] - off[i - 1] * dv[i - 1]) / m;
    }
    values[n - 1] = dv[n - 1];
    for (std::size_t i = n - 2; i >= 1; --i)
        values[i] = dv[i] - c[i] * values[i + 1];

    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const int j = locate(knots, xs[i]);
        const auto ju = static_cast<std::size_t>(j);
        const double w = (knots[ju + 1] - xs[i]) / (knots[ju + 1] - knots[ju]);
        const double fit = w * values[ju] + (1.0 - w) * values[ju + 1];
        const double r = fit - ys[i];
        sse += r * r;
    }
    return std::sqrt(sse / static_cast<double>(xs.size()));
}

struct KnotFit {
    std::vector<double> knots;
    std::vector<double> values;
    double rmse = 1e300;
};

} // namespace

Pwl1D fit_pwl1d(const std::function<double(double)>& target, int n_breakpoints, double d_u,
                int samples)
{
    if (n_breakpoints < 2)
        throw std::invalid_argument("fit_pwl1d: need at least two breakpoints");
    if (!(d_u > 0.0))
        throw std::invalid_argument("fit_pwl1d: d_u must be positive");
    if (n_breakpoints > samples)
        throw std::invalid_argument("fit_pwl1d: more breakpoints than samples");

    const auto n = static_cast<std::size_t>(n_breakpoints);
    std::vector<double> xs(static_cast<std::size_t>(samples)), ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = d_u * static_cast<double>(i) / static_cast<double>(xs.size() - 1);
        ys[i] = target(xs[i]);
    }
    const double pinned_left = ys[0];
    const double min_gap = 1e-6 * d_u;

    auto evaluate = [&](std::vector<double> interior) -> KnotFit {
        std::sort(interior.begin(), interior.end());
        KnotFit kf;
        kf.knots.reserve(n);
        kf.knots.push_back(0.0);
        for (double t : interior)
            kf.knots.push_back(std::clamp(t, min_gap, d_u - min_gap));
        kf.knots.push_back(d_u);
        for (std::size_t i = 1; i < kf.knots.size(); ++i)
            if (kf.knots[i] - kf.knots[i - 1] < min_gap)
                return kf; // degenerate spacing, keep rmse at infinity
        kf.rmse = ls_node_values(kf.knots, xs, ys, pinned_left, kf.values);
        return kf;
    };

    const std::size_t n_int = n - 2;
    KnotFit best;
    if (n_int == 0) {
        best = evaluate({});
    } else {
        // multi-start: uniform init plus quantile-shifted variants
        std::vector<std::vector<double>> starts;
        std::vector<double> uniform;
        for (std::size_t i = 1; i <= n_int; ++i)
            uniform.push_back(d_u * static_cast<double>(i) / static_cast<double>(n - 1));
        starts.push_back(uniform);
        for (double scale : {0.25, 0.5, 2.0, 4.0}) {
            std::vector<double> s;
            for (std::size_t i = 1; i <= n_int; ++i) {
                const double frac = static_cast<double>(i) / static_cast<double>(n - 1);
                s.push_back(d_u * std::pow(frac, scale));
            }
            starts.push_back(s);
        }

        for (const auto& start : starts) {
            // coordinate descent with a shrinking step ladder
            KnotFit cur = evaluate(start);
            std::vector<double> interior = start;
            for (const double step0 : {d_u / 8.0, d_u / 32.0, d_u / 128.0, d_u / 1024.0}) {
                bool improved = true;
                while (improved) {
                    improved = false;
                    for (std::size_t i = 0; i < n_int; ++i) {
                        for (double sgn : {1.0, -1.0}) {
                            auto trial = interior;
                            trial[i] += sgn * step0;
                            KnotFit t = evaluate(trial);
                            if (t.rmse < cur.rmse - 1e-15) {
                                cur = std::move(t);
                                interior = trial;
                                improved = true;
                            }
                        }
                    }
                }
            }
            if (cur.rmse < best.rmse)
                best = cur;
        }

        // local-optimum certificate: +/-0.1% of d_u must not improve; if it
        // does, take the improvement and retry
        const double probe = 1e-3 * d_u;
        bool cert = false;
        while (!cert) {
            cert = true;
            for (std::size_t i = 1; i + 1 < best.knots.size(); ++i) {
                for (double sgn : {1.0, -1.0}) {
                    std::vector<double> interior(best.knots.begin() + 1, best.knots.end() - 1);
                    interior[i - 1] += sgn * probe;
                    KnotFit t = evaluate(interior);
                    if (t.rmse < best.rmse - 1e-15) {
                        best = std::move(t);
                        cert = false;
                    }
                }
            }
        }
    }

    if (!(best.rmse < 1e300))
        throw std::runtime_error("fit_pwl1d: fitting failed");

    Pwl1D out;
    out.breakpoints = best.knots;
    out.node_values = best.values;
    out.d_u = d_u;
    out.rmse = best.rmse;
    out.slopes.resize(n - 1);
    out.intercepts.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        out.slopes[i] = (best.values[i + 1] - best.values[i]) /
                        (best.knots[i + 1] - best.knots[i]);
        out.intercepts[i] = best.values[i] - out.slopes[i] * best.knots[i];
    }
    return out;
}

Pwl1DEval eval_pwl1d(const Pwl1D& fit, double d)
{
    if (fit.breakpoints.size() < 2)
        throw std::invalid_argument("eval_pwl1d: fit has no segments");
    constexpr double edge_tol = 1e-12;
    if (d < fit.breakpoints.front() - edge_tol || d > fit.breakpoints.back() + edge_tol)
        throw std::domain_error("eval_pwl1d: d outside [t_1, t_N]");
    d = std::clamp(d, fit.breakpoints.front(), fit.breakpoints.back());

    const int j = locate(fit.breakpoints, d);
    const auto ju = static_cast<std::size_t>(j);
    Pwl1DEval out;
    out.lambda.assign(fit.breakpoints.size(), 0.0);
    const double w = (fit.breakpoints[ju + 1] - d) / (fit.breakpoints[ju + 1] - fit.breakpoints[ju]);
    out.lambda[ju] = w;
    out.lambda[ju + 1] = 1.0 - w;
    out.value = w * fit.node_values[ju] + (1.0 - w) * fit.node_values[ju + 1];
    return out;
}

} // namespace snc
