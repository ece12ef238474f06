#pragma once

#include <functional>
#include <string>

namespace rjv::num {

// Root tolerance for cut-off solves (absolute, in theta).
inline constexpr double kThetaTol = 1e-12;
// Relative tolerance for adaptive quadrature.
inline constexpr double kQuadRelTol = 1e-12;
// Upper clamp for integrals and discretizations approaching the cost pole at 1.
inline constexpr double kThetaCap = 1.0 - 1e-9;
// Probability deltas inside this band are reported as equal, never strict.
inline constexpr double kProbTol = 1e-9;

// Root of f(x) = target for nondecreasing f on [lo, hi]. Plain bisection to
// kThetaTol; assumes f(lo) <= target <= f(hi).
double bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                         double target);

// Adaptive Simpson integral of f over [a, b] at kQuadRelTol.
double integrate(const std::function<double(double)>& f, double a, double b);

// Nearest double to the 12-significant-digit decimal rendering of x. Applied
// to every number that reaches a report, a CSV cell, or a region label, so
// re-deriving labels from printed output is exact.
double round_sig12(double x);
std::string format_sig12(double x);

} // namespace rjv::num
