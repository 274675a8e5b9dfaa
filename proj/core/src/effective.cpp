#include "nhrm/effective.hpp"

#include <cmath>

#include "nhrm/bessel.hpp"
#include "nhrm/errors.hpp"
#include "nhrm/roots.hpp"

namespace nhrm {
namespace {

constexpr int kPrescanPoints = 400;

double default_a_max(double omega, double a_max) {
  return a_max > 0.0 ? a_max : 8.0 * omega;
}

// Signed discriminant as a function of A at fixed (delta, omega).
double discriminant_at(double delta, double omega, double amp) {
  return ep_condition(ModelParams{omega, delta, amp});
}

// Smallest root of `g` in [0, a_max]: exact zero at A=0 counts, otherwise
// the first sign change of the pre-scan is refined by the bracketed solver.
std::optional<double> first_root(const std::function<double(double)>& g,
                                 double a_max) {
  double prev_a = 0.0;
  double prev_g = g(0.0);
  if (prev_g == 0.0) return 0.0;
  for (int i = 1; i <= kPrescanPoints; ++i) {
    const double a =
        a_max * static_cast<double>(i) / static_cast<double>(kPrescanPoints);
    const double ga = g(a);
    if (ga == 0.0) return a;
    if (std::signbit(ga) != std::signbit(prev_g)) {
      return find_root_bracketed(g, prev_a, a, 1e-13 * a_max);
    }
    prev_a = a;
    prev_g = ga;
  }
  return std::nullopt;
}

}  // namespace

void validate_params(const ModelParams& p) {
  if (!(p.omega > 0.0)) throw RangeError("ModelParams: omega must be > 0");
  if (!(p.delta >= 0.0)) throw RangeError("ModelParams: delta must be >= 0");
  if (!(p.amp >= 0.0)) throw RangeError("ModelParams: amp must be >= 0");
}

double solve_alpha(const ModelParams& p) {
  validate_params(p);
  if (p.delta == 0.0) return 1.0;
  if (p.amp == 0.0) return p.omega / (p.delta + p.omega);

  const double tol_residual = 1e-12 * std::max(p.delta, p.amp);
  const auto residual = [&](double a) {
    return p.delta * bessel_i(1, p.amp * a / p.omega) -
           0.5 * p.amp * (1.0 - a);
  };
  const auto residual_d = [&](double a) {
    const double x = p.amp * a / p.omega;
    const double i1p = 0.5 * (bessel_i(0, x) + bessel_i(2, x));
    return p.delta * (p.amp / p.omega) * i1p + 0.5 * p.amp;
  };
  const double alpha = find_root_bracketed(residual, residual_d, 0.0, 1.0,
                                           1e-15);
  if (std::abs(residual(alpha)) > tol_residual) {
    throw ConvergenceError("solve_alpha: residual above tolerance");
  }
  return alpha;
}

EffectiveModel effective(const ModelParams& p) {
  EffectiveModel em;
  em.alpha = solve_alpha(p);
  const double x = p.amp * em.alpha / p.omega;
  em.delta_tilde = p.delta * bessel_i(0, x) - p.omega;
  em.amp_tilde = 2.0 * p.amp * (1.0 - em.alpha);
  em.rabi_sq = 0.25 * (em.delta_tilde * em.delta_tilde -
                       0.25 * em.amp_tilde * em.amp_tilde);
  em.rabi = std::sqrt(Complex(em.rabi_sq, 0.0));
  return em;
}

std::pair<Complex, Complex> quasi_energies(const ModelParams& p, int n_shift) {
  const EffectiveModel em = effective(p);
  const Complex shift(0.5 * p.omega + static_cast<double>(n_shift) * p.omega,
                      0.0);
  return {shift + em.rabi, shift - em.rabi};
}

double ep_condition(const ModelParams& p) {
  const EffectiveModel em = effective(p);
  return em.delta_tilde * em.delta_tilde -
         0.25 * em.amp_tilde * em.amp_tilde;
}

std::optional<double> ep_boundary_amplitude(double delta, double omega,
                                            double a_max) {
  validate_params(ModelParams{omega, delta, 0.0});
  const double hi = default_a_max(omega, a_max);
  return first_root(
      [&](double a) { return discriminant_at(delta, omega, a); }, hi);
}

std::optional<double> crossing_amplitude(double delta, double omega, int n,
                                         double a_max) {
  validate_params(ModelParams{omega, delta, 0.0});
  if (n < 1) throw RangeError("crossing_amplitude: n must be >= 1");
  const double hi = default_a_max(omega, a_max);
  const double target = 4.0 * static_cast<double>(n) *
                        static_cast<double>(n) * omega * omega;
  return first_root(
      [&](double a) { return discriminant_at(delta, omega, a) - target; },
      hi);
}

std::optional<double> crossing_amplitude_small_a(double delta, double omega,
                                                 int n) {
  if (n < 0) throw RangeError("crossing_amplitude_small_a: n must be >= 0");
  if (!(omega > 0.0)) {
    throw RangeError("crossing_amplitude_small_a: omega must be > 0");
  }
  if (delta <= 0.0) return std::nullopt;
  const double d = delta - omega;
  const double radicand =
      d * d - 4.0 * static_cast<double>(n) * static_cast<double>(n) * omega *
                  omega;
  if (radicand < 0.0) return std::nullopt;
  return (delta + omega) / delta * std::sqrt(radicand);
}

}  // namespace nhrm
