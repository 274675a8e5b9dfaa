#pragma once

// Shared fixtures for the test suite: canonical parameter points and small
// independent reference computations (series Bessel, one-period monodromy)
// used as oracles against the library implementations.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "nhrm/effective.hpp"
#include "nhrm/ode.hpp"

namespace nhrm::testing {

inline constexpr double kPi = std::numbers::pi;

// Canonical parameter points used throughout the suite (omega = 1).
inline ModelParams point_a() { return {1.0, 2.5, 1.0}; }
inline ModelParams point_b() { return {1.0, 3.5, 3.0}; }
inline ModelParams point_c() { return {1.0, 2.5, 4.0}; }
inline ModelParams point_detuned(double delta) { return {1.0, delta, 2.0}; }

// Test-local fold into [-omega/2, omega/2), kept independent of the library.
inline double fold(double re, double omega) {
  return re - omega * std::floor(re / omega + 0.5);
}

// Distance between two reals on the circle of circumference omega.
inline double circ_dist(double a, double b, double omega) {
  return std::abs(fold(a - b, omega));
}

// Long-double power series for I_n(x); independent Bessel oracle. Fine for
// the whole tested range because every term is positive.
inline double bessel_series(int n, double x) {
  const long double half = 0.5L * static_cast<long double>(x);
  long double prefactor = 1.0L;
  for (int k = 1; k <= n; ++k) prefactor *= half / k;
  const long double q = half * half;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 4000; ++k) {
    term *= q / (static_cast<long double>(k) * (n + k));
    sum += term;
    if (term < sum * 1e-25L) break;
  }
  return static_cast<double>(prefactor * sum);
}

// Folded quasi-energies from the one-period propagator, computed without any
// Floquet machinery: the 2x2 monodromy matrix is integrated column by column
// and its eigenvalues come from the quadratic formula.
inline std::pair<Complex, Complex> monodromy_folded(const ModelParams& p,
                                                    bool hermitian = false) {
  const Complex i(0.0, 1.0);
  const auto rhs = [&p, hermitian, i](double t, std::span<const Complex> y,
                                      std::span<Complex> dydt) {
    const double drive = 0.5 * p.amp * std::cos(p.omega * t);
    const Complex coupling = hermitian ? -i * drive : Complex(drive, 0.0);
    for (std::size_t col = 0; col < 2; ++col) {
      const Complex cp = y[2 * col];
      const Complex cm = y[2 * col + 1];
      dydt[2 * col] = -i * (0.5 * p.delta) * cp + coupling * cm;
      dydt[2 * col + 1] = i * (0.5 * p.delta) * cm + coupling * cp;
    }
  };
  const double period = 2.0 * kPi / p.omega;
  auto traj = integrate_ode(rhs, {1.0, 0.0, 0.0, 1.0}, 0.0, period, 1e-13);
  traj.sample({period});
  const auto& u = traj.state();
  const Complex tr = u[0] + u[3];
  const Complex det = u[0] * u[3] - u[1] * u[2];
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  const Complex l1 = 0.5 * (tr + disc);
  const Complex l2 = 0.5 * (tr - disc);
  const auto quasi = [&](const Complex& l) {
    const Complex eps = i * std::log(l) / period;
    return Complex(fold(eps.real(), p.omega), eps.imag());
  };
  return {quasi(l1), quasi(l2)};
}

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const auto n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Greedy nearest-neighbor matching of two complex multisets; returns the
// largest matched distance (or infinity on size mismatch).
inline double multiset_distance(std::vector<Complex> a,
                                std::vector<Complex> b) {
  if (a.size() != b.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  for (const Complex& va : a) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = std::abs(va - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    worst = std::max(worst, best_d);
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

}  // namespace nhrm::testing
