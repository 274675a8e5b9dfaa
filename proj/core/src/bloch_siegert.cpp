#include "nhrm/bloch_siegert.hpp"

#include <cmath>
#include <limits>

#include "nhrm/bessel.hpp"
#include "nhrm/errors.hpp"
#include "nhrm/parallel.hpp"
#include "nhrm/roots.hpp"

namespace nhrm {
namespace {

constexpr int kPrescanPoints = 33;
constexpr int kMaxGoldenIterations = 200;

DeltaBracket default_bracket(double amp, double omega) {
  return {0.5 * omega, std::min(3.0 * omega, omega + amp)};
}

void check_bracket(const DeltaBracket& b) {
  if (!(b.first < b.second)) {
    throw BracketError("resonance: requires bracket lo < hi");
  }
}

// Stationarity residual of the squared gap in delta:
//   2 [delta I0(x) - omega][I0(x) + (delta amp / omega) I1(x) a'] +
//   2 amp^2 (1 - alpha) a' ,   x = amp alpha / omega,
// with the alpha response
//   a' = -2 omega I1(x) / (amp { omega + delta [I0(x) + I2(x)] }).
double stationarity_residual(double delta, double amp, double omega) {
  const ModelParams p{omega, delta, amp};
  const double alpha = solve_alpha(p);
  const double x = amp * alpha / omega;
  const double i0 = bessel_i(0, x);
  const double i1 = bessel_i(1, x);
  const double i2 = bessel_i(2, x);
  const double ap = -2.0 * omega * i1 / (amp * (omega + delta * (i0 + i2)));
  return 2.0 * (delta * i0 - omega) * (i0 + delta * amp / omega * i1 * ap) +
         2.0 * amp * amp * (1.0 - alpha) * ap;
}

double golden_max(const std::function<double(double)>& f, double lo,
                  double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < kMaxGoldenIterations && (b - a) > tol; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double resonance_numeric(double amp, double omega, const FloquetConfig& cfg,
                         std::optional<DeltaBracket> delta_bracket,
                         double tol) {
  if (!(omega > 0.0)) throw RangeError("resonance_numeric: omega must be > 0");
  if (!(amp >= 0.0)) throw RangeError("resonance_numeric: amp must be >= 0");
  if (!(tol > 0.0)) throw RangeError("resonance_numeric: tol must be > 0");
  validate_config(cfg);
  if (amp == 0.0) return omega;

  const DeltaBracket bracket =
      delta_bracket ? *delta_bracket : default_bracket(amp, omega);
  check_bracket(bracket);

  const auto objective = [&](double delta) {
    return classify(ModelParams{omega, delta, amp}, cfg).max_imag;
  };

  // Pre-scan to bracket the interior maximum for the golden section.
  int best = -1;
  double best_val = 0.0;
  std::vector<double> grid(kPrescanPoints);
  for (int i = 0; i < kPrescanPoints; ++i) {
    grid[i] = bracket.first + (bracket.second - bracket.first) *
                                  static_cast<double>(i) /
                                  static_cast<double>(kPrescanPoints - 1);
    const double v = objective(grid[i]);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best <= 0 || best >= kPrescanPoints - 1) {
    throw SearchError("resonance_numeric: no interior maximum in bracket");
  }
  return golden_max(objective, grid[best - 1], grid[best + 1], tol * omega);
}

double resonance_analytic(double amp, double omega,
                          std::optional<DeltaBracket> delta_bracket) {
  if (!(omega > 0.0)) {
    throw RangeError("resonance_analytic: omega must be > 0");
  }
  if (!(amp >= 0.0)) throw RangeError("resonance_analytic: amp must be >= 0");
  if (amp == 0.0) return omega;

  const DeltaBracket bracket =
      delta_bracket ? *delta_bracket : default_bracket(amp, omega);
  check_bracket(bracket);
  return find_root_bracketed(
      [&](double delta) { return stationarity_residual(delta, amp, omega); },
      bracket.first, bracket.second, 1e-10 * omega);
}

double resonance_series(double amp, double omega, int order) {
  if (!(omega > 0.0)) throw RangeError("resonance_series: omega must be > 0");
  if (order != 2 && order != 4) {
    throw RangeError("resonance_series: order must be 2 or 4");
  }
  const double a2 = amp * amp;
  double res = omega + a2 / (16.0 * omega);
  if (order == 4) res -= 5.0 * a2 * a2 / (1024.0 * omega * omega * omega);
  return res;
}

std::vector<BsResult> bs_sweep(const std::vector<double>& amp_values,
                               double omega, const FloquetConfig& cfg,
                               int workers) {
  std::vector<BsResult> results(amp_values.size());
  parallel_for(amp_values.size(), workers, [&](std::size_t i) {
    BsResult& r = results[i];
    r.amp = amp_values[i];
    r.series2 = resonance_series(r.amp, omega, 2);
    r.series4 = resonance_series(r.amp, omega, 4);
    try {
      r.numeric = resonance_numeric(r.amp, omega, cfg);
      r.analytic = resonance_analytic(r.amp, omega);
    } catch (const std::exception& ex) {
      r.numeric = std::numeric_limits<double>::quiet_NaN();
      r.analytic = std::numeric_limits<double>::quiet_NaN();
      r.error = ex.what();
    }
  });
  return results;
}

}  // namespace nhrm
