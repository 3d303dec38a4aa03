#ifndef SNC_PWL_HPP
#define SNC_PWL_HPP

#include "snc/uil.hpp"

#include <array>
#include <functional>
#include <utility>
#include <vector>

namespace snc {

/// Bivariate sampling grid of the unit-profit surface for the triangle
/// method. Immutable after construction; values[k][j] = unit_profit at
/// (tau_vertices[k], d_vertices[j]).
class PwlGrid {
public:
    static PwlGrid build(std::vector<double> tau_vertices, std::vector<double> d_vertices,
                         const PersuasionFit& fit = {});

    const std::vector<double>& tau_vertices() const { return tau_; }
    const std::vector<double>& d_vertices() const { return d_; }
    double value(int k, int j) const { return values_[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]; }
    int tau_count() const { return static_cast<int>(tau_.size()); }
    int d_count() const { return static_cast<int>(d_.size()); }

private:
    PwlGrid() = default;
    std::vector<double> tau_;
    std::vector<double> d_;
    std::vector<std::vector<double>> values_;
};

/// Result of one triangle-method query: the interpolated value, the three
/// grid vertices of the selected triangle ((tau index, d index) pairs) and
/// their barycentric weights. Weights are nonnegative and sum to 1, and at
/// most three are nonzero by construction (the SOS requirement).
struct TriangleApprox {
    double value = 0.0;
    std::array<std::pair<int, int>, 3> vertices{};
    std::array<double, 3> weights{};
};

/// Interpolates the grid at (tau, d). The enclosing cell is split by its
/// main diagonal; the upper triangle is selected iff
///   d > d_j + (tau - tau_k) * (d_{j+1} - d_j) / (tau_{k+1} - tau_k).
/// Queries outside the grid rectangle throw std::domain_error (callers clamp).
TriangleApprox triangle_approx(const PwlGrid& grid, double tau, double d);

/// Continuous piecewise-linear approximation of a univariate function on
/// [0, d_u]: N breakpoints with t_1 = 0 and t_N = d_u, fitted node values,
/// and the per-segment line coefficients value = slope*d + intercept.
struct Pwl1D {
    std::vector<double> breakpoints;
    std::vector<double> node_values;
    std::vector<double> slopes;
    std::vector<double> intercepts;
    double rmse = 0.0;
    double d_u = 0.0;
};

/// Fits a continuous PWL with free interior breakpoints by minimizing the
/// RMSE over dense uniform samples (least-squares node values per breakpoint
/// configuration, multi-start local search over the breakpoints). The left
/// node value is pinned to target(0), taken as the right-sided limit of the
/// target. The returned fit is a local optimum: perturbing any interior
/// breakpoint by +/-0.1% of d_u does not improve the RMSE.
/// Throws std::invalid_argument when n_breakpoints < 2 or exceeds the sample
/// count.
Pwl1D fit_pwl1d(const std::function<double(double)>& target, int n_breakpoints, double d_u,
                int samples = 2000);

/// Evaluation with the SOS2 weight vector: exactly two adjacent lambdas are
/// nonzero (one at a breakpoint), sum(lambda) = 1, sum(lambda_j t_j) = d and
/// sum(lambda_j v_j) = value. Out-of-range d throws std::domain_error.
struct Pwl1DEval {
    double value = 0.0;
    std::vector<double> lambda;
};

Pwl1DEval eval_pwl1d(const Pwl1D& fit, double d);

} // namespace snc

#endif
