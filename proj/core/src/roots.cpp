#include "nhrm/roots.hpp"

#include <cmath>

#include "nhrm/errors.hpp"

namespace nhrm {
namespace {

constexpr int kMaxIterations = 200;

void check_inputs(double lo, double hi, double tol) {
  if (!(lo < hi)) throw BracketError("find_root_bracketed: requires lo < hi");
  if (!(tol > 0.0)) throw RangeError("find_root_bracketed: tol must be > 0");
}

// Illinois variant of regula falsi: halving the retained residual forces both
// endpoints to move, so the bracket width shrinks superlinearly.
double illinois(const std::function<double(double)>& f, double a, double b,
                double fa, double fb, double tol) {
  int side = 0;
  for (int it = 0; it < kMaxIterations; ++it) {
    double x = (fa * b - fb * a) / (fa - fb);
    if (!std::isfinite(x) || x <= a || x >= b) x = 0.5 * (a + b);
    const double fx = f(x);
    if (!std::isfinite(fx)) {
      throw ConvergenceError("find_root_bracketed: non-finite residual");
    }
    if (fx == 0.0) return x;
    if (std::signbit(fx) == std::signbit(fa)) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == +1) fa *= 0.5;
      side = +1;
    }
    if (b - a < tol) return 0.5 * (a + b);
  }
  throw ConvergenceError("find_root_bracketed: iteration cap reached");
}

// Newton steps clipped to the bracket, falling back to bisection whenever the
// step leaves the bracket or fails to shrink fast enough.
double newton_safeguarded(const std::function<double(double)>& f,
                          const std::function<double(double)>& df, double a,
                          double b, double fa, double fb, double tol) {
  double x = 0.5 * (a + b);
  double dxold = b - a;
  double dx = dxold;
  double fx = f(x);
  double d = df(x);
  for (int it = 0; it < kMaxIterations; ++it) {
    if (fx == 0.0) return x;
    if (std::signbit(fx) == std::signbit(fa)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    const bool newton_ok =
        d != 0.0 && std::isfinite(d) &&
        ((x - b) * d - fx) * ((x - a) * d - fx) < 0.0 &&
        std::abs(2.0 * fx) <= std::abs(dxold * d);
    dxold = dx;
    if (newton_ok) {
      dx = fx / d;
      x -= dx;
    } else {
      dx = 0.5 * (b - a);
      x = a + dx;
    }
    if (std::abs(dx) < tol || b - a < tol) return x;
    fx = f(x);
    d = df(x);
    if (!std::isfinite(fx)) {
      throw ConvergenceError("find_root_bracketed: non-finite residual");
    }
  }
  throw ConvergenceError("find_root_bracketed: iteration cap reached");
}

}  // namespace

double find_root_bracketed(const std::function<double(double)>& f, double lo,
                           double hi, double tol) {
  check_inputs(lo, hi, tol);
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw BracketError("find_root_bracketed: no sign change on [lo, hi]");
  }
  return illinois(f, lo, hi, flo, fhi, tol);
}

double find_root_bracketed(const std::function<double(double)>& f,
                           const std::function<double(double)>& df, double lo,
                           double hi, double tol) {
  check_inputs(lo, hi, tol);
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw BracketError("find_root_bracketed: no sign change on [lo, hi]");
  }
  return newton_safeguarded(f, df, lo, hi, flo, fhi, tol);
}

}  // namespace nhrm
