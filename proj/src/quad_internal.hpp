#ifndef BTTN_QUAD_INTERNAL_HPP
#define BTTN_QUAD_INTERNAL_HPP

// Shared quadrature plumbing for specfun.cpp and mellin.cpp. Not installed.

#include <functional>
#include <vector>

#include "bttn/specfun.hpp"

namespace bttn {
namespace specfun {
namespace detail {

struct GkResult {
    double integral;
    double err;
};

// 15-point Gauss-Kronrod rule on [a, b] with the usual QUADPACK error
// estimate (scaled by the deviation-from-mean sum so smooth integrands do
// not get flagged as converged off a fluke agreement).
GkResult gk15(const std::function<double(double)>& f, double a, double b);

// Globally adaptive bisection over the initial segments given by pts
// (ascending breakpoints). Stops when the summed error estimate drops below
// max(abs_tol, rel_tol * |integral|); throws ConvergenceError when every
// offending segment has reached max_refinements bisections or the split
// budget runs out.
double adapt(const std::function<double(double)>& f,
             const std::vector<double>& pts, const QuadSpec& spec);

} // namespace detail
} // namespace specfun
} // namespace bttn

#endif
