#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nhrm/effective.hpp"
#include "nhrm/floquet.hpp"

namespace nhrm {

// Resonance-location estimates at one coupling strength; a failed point
// carries NaN in the affected fields and a non-empty error message.
struct BsResult {
  double amp = 0.0;
  double numeric = 0.0;
  double analytic = 0.0;
  double series2 = 0.0;
  double series4 = 0.0;
  std::string error;
};

using DeltaBracket = std::pair<double, double>;

// The delta maximizing the kept |Im| of the quasi-energy spectrum, located
// by a pre-scan plus golden-section search to tol*omega. Default bracket
// [0.5*omega, min(3*omega, omega + amp)]. amp = 0 returns omega exactly.
// Throws SearchError when the objective has no interior maximum.
double resonance_numeric(double amp, double omega, const FloquetConfig& cfg,
                         std::optional<DeltaBracket> delta_bracket =
                             std::nullopt,
                         double tol = 1e-6);

// Root of the stationarity condition d(rabi_sq)/d(delta) = 0, with the
// alpha response d(alpha)/d(delta) folded in analytically; each residual
// evaluation re-solves alpha. amp = 0 returns omega exactly.
double resonance_analytic(double amp, double omega,
                          std::optional<DeltaBracket> delta_bracket =
                              std::nullopt);

// Power-series resonance: omega + A^2/(16 omega) at order 2, minus
// 5 A^4/(1024 omega^3) at order 4. Only orders 2 and 4 exist.
double resonance_series(double amp, double omega, int order);

// Tabulates all four estimates over the amplitude list; per-point failures
// are recorded in the result rows and the sweep continues.
std::vector<BsResult> bs_sweep(const std::vector<double>& amp_values,
                               double omega, const FloquetConfig& cfg,
                               int workers = 0);

}  // namespace nhrm
