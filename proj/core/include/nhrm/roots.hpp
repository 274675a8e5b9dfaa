#pragma once

#include <functional>

namespace nhrm {

// Root of f on [lo, hi], where f(lo) and f(hi) have opposite signs.
// Secant steps safeguarded by bisection; terminates when the bracket width
// drops below tol or the residual hits zero.
// Throws BracketError when there is no sign change, ConvergenceError when the
// iteration cap is reached.
double find_root_bracketed(const std::function<double(double)>& f, double lo,
                           double hi, double tol);

// Same contract with an analytic derivative: safeguarded Newton inside the
// bisection bracket.
double find_root_bracketed(const std::function<double(double)>& f,
                           const std::function<double(double)>& df, double lo,
                           double hi, double tol);

}  // namespace nhrm
