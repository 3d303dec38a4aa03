#include "snc/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace snc {

BisectionResult bisect_root(const std::function<double(double)>& f, double lo, double hi,
                            double tol, bool polish)
{
    if (!(lo < hi))
        throw std::invalid_argument("bisect_root: invalid bracket");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0)
        return {lo, 0, true};
    if (fhi == 0.0)
        return {hi, 0, true};
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("bisect_root: no sign change on bracket");

    BisectionResult res;
    const double stop = polish ? 0.0 : tol;
    // 200 halvings is more than enough to hit the last representable midpoint
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break; // bracket collapsed to adjacent doubles
        const double fmid = f(mid);
        res.iterations = it + 1;
        if (fmid == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
        if (hi - lo <= stop)
            break;
    }
    res.root = 0.5 * (lo + hi);
    res.converged = (hi - lo) <= std::max(tol, 4.0 * std::abs(res.root) *
                                                   std::numeric_limits<double>::epsilon());
    return res;
}

GoldenSectionResult golden_section_max(const std::function<double(double)>& f, double lo,
                                       double hi, double tol)
{
    if (!(lo < hi))
        throw std::invalid_argument("golden_section_max: invalid interval");
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    int it = 0;
    while (b - a > tol && it < 400) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
        ++it;
    }
    const double x = 0.5 * (a + b);
    return {x, f(x), it};
}

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& verts)
{
    double dia = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < verts[i].size(); ++k) {
                const double d = verts[i][k] - verts[j][k];
                s += d * d;
            }
            dia = std::max(dia, std::sqrt(s));
        }
    return dia;
}

} // namespace

NelderMeadResult nelder_mead_max(const std::function<double(std::span<const double>)>& f,
                                 std::span<const double> start, const NelderMeadOptions& opts)
{
    const std::size_t n = start.size();
    if (n == 0)
        throw std::invalid_argument("nelder_mead_max: empty start point");

    std::vector<std::vector<double>> verts(n + 1, std::vector<double>(start.begin(), start.end()));
    for (std::size_t i = 0; i < n; ++i)
        verts[i + 1][i] += opts.initial_step;
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        fv[i] = f(verts[i]);

    NelderMeadResult best;
    best.x.assign(start.begin(), start.end());
    best.value = fv[0];
    auto note = [&](const std::vector<double>& x, double v) {
        if (v > best.value) {
            best.value = v;
            best.x = x;
        }
    };
    for (std::size_t i = 0; i <= n; ++i)
        note(verts[i], fv[i]);

    constexpr double rho = 1.0, chi = 2.0, gam = 0.5, sig = 0.5;
    int it = 0;
    for (; it < opts.max_iterations; ++it) {
        // order ascending; last vertex is the current maximizer
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        {
            std::vector<std::vector<double>> v2;
            std::vector<double> f2;
            v2.reserve(n + 1);
            f2.reserve(n + 1);
            for (auto i : idx) {
                v2.push_back(verts[i]);
                f2.push_back(fv[i]);
            }
            verts.swap(v2);
            fv.swap(f2);
        }
        if (simplex_diameter(verts) < opts.simplex_tol) {
            best.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 1; i <= n; ++i) // all but the worst (index 0)
            for (std::size_t k = 0; k < n; ++k)
                centroid[k] += verts[i][k] / static_cast<double>(n);

        auto affine = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t k = 0; k < n; ++k)
                p[k] = centroid[k] + t * (centroid[k] - verts[0][k]);
            return p;
        };

        const auto xr = affine(rho);
        const double fr = f(xr);
        note(xr, fr);
        if (fr > fv[n]) {
            const auto xe = affine(rho * chi);
            const double fe = f(xe);
            note(xe, fe);
            if (fe > fr) {
                verts[0] = xe;
                fv[0] = fe;
            } else {
                verts[0] = xr;
                fv[0] = fr;
            }
            continue;
        }
        if (fr > fv[1]) { // better than the second-worst
            verts[0] = xr;
            fv[0] = fr;
            continue;
        }
        const bool outside = fr > fv[0];
        const auto xc = affine(outside ? rho * gam : -gam);
        const double fc = f(xc);
        note(xc, fc);
        if (fc > (outside ? fr : fv[0])) {
            verts[0] = xc;
            fv[0] = fc;
            continue;
        }
        // shrink towards the best vertex
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k)
                verts[i][k] = verts[n][k] + sig * (verts[i][k] - verts[n][k]);
            fv[i] = f(verts[i]);
            note(verts[i], fv[i]);
        }
    }
    best.iterations = it;
    return best;
}

} // namespace snc
