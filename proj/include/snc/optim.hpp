#ifndef SNC_OPTIM_HPP
#define SNC_OPTIM_HPP

#include <functional>
#include <span>
#include <vector>

namespace snc {

struct BisectionResult {
    double root = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Root of f on [lo, hi] by bisection on the sign of f. Requires a sign change
// on the bracket; throws std::invalid_argument otherwise. Runs until the
// bracket width is below tol (and keeps going to near machine precision when
// polish is set, so plugging the root back into f gives a tiny residual).
BisectionResult bisect_root(const std::function<double(double)>& f, double lo, double hi,
                            double tol, bool polish = true);

struct GoldenSectionResult {
    double x = 0.0;
    double value = 0.0;
    int iterations = 0;
};

// Maximum of a unimodal f on [lo, hi] by golden-section search.
GoldenSectionResult golden_section_max(const std::function<double(double)>& f, double lo,
                                       double hi, double tol);

struct NelderMeadOptions {
    int max_iterations = 500;
    double simplex_tol = 0.01;  // terminate when the simplex diameter drops below this
    double initial_step = 5.0;  // edge length of the initial simplex
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Derivative-free MAXIMIZATION of f from a start point (standard
// reflect/expand/contract/shrink simplex updates). Returns the best point
// ever evaluated, so the result never regresses below the seed.
NelderMeadResult nelder_mead_max(const std::function<double(std::span<const double>)>& f,
                                 std::span<const double> start, const NelderMeadOptions& opts);

} // namespace snc

#endif
