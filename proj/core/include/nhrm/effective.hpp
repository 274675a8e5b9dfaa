#pragma once

#include <complex>
#include <optional>

namespace nhrm {

using Complex = std::complex<double>;

// Physical parameters of one model instance. All three carry the same
// absolute units; ratios delta/omega and amp/omega are the natural
// dimensionless coordinates.
struct ModelParams {
  double omega = 1.0;  // field frequency, > 0
  double delta = 0.0;  // atomic frequency, >= 0
  double amp = 0.0;    // coupling strength, >= 0
};

// Throws RangeError unless omega > 0, delta >= 0, amp >= 0.
void validate_params(const ModelParams& p);

// Closed-form quantities of the transformed static two-level model.
struct EffectiveModel {
  double alpha = 0.0;        // transformation coefficient, in (0, 1]
  double delta_tilde = 0.0;  // effective detuning
  double amp_tilde = 0.0;    // effective coupling
  double rabi_sq = 0.0;      // (delta_tilde^2 - amp_tilde^2/4) / 4
  Complex rabi;              // principal sqrt(rabi_sq), Im >= 0
};

// Unique root in [0, 1] of delta*I1(A*alpha/omega) = (A/2)(1 - alpha).
// A = 0 returns the analytic limit omega/(delta+omega); delta = 0 returns 1.
double solve_alpha(const ModelParams& p);

// Populates the full set of effective quantities from solve_alpha.
EffectiveModel effective(const ModelParams& p);

// Quasi-energy pair eps_pm = +-rabi + omega/2 + n_shift*omega.
std::pair<Complex, Complex> quasi_energies(const ModelParams& p, int n_shift);

// Signed discriminant delta_tilde^2 - amp_tilde^2/4; its zero crossing in A
// at fixed delta locates the analytical phase boundary.
double ep_condition(const ModelParams& p);

// Smallest A in (0, a_max] where the discriminant crosses zero, i.e. the
// analytical phase-boundary abscissa at fixed delta. Returns 0 when the
// discriminant vanishes already at A = 0 (delta = omega), nullopt when no
// crossing exists in range.
std::optional<double> ep_boundary_amplitude(double delta, double omega,
                                            double a_max = -1.0);

// Smallest A in (0, a_max] with sqrt(discriminant) = 2*n*omega, i.e. where
// the level shifted by 2n rungs meets the unshifted one (n >= 1). Returns 0
// when the condition already holds at A = 0, nullopt when no solution lies
// in range. Default a_max = 8*omega with a 400-point pre-scan.
std::optional<double> crossing_amplitude(double delta, double omega, int n,
                                         double a_max = -1.0);

// Small-coupling closed form ((delta+omega)/delta)*sqrt((delta-omega)^2 -
// 4 n^2 omega^2); nullopt when the radicand is negative or delta <= 0.
std::optional<double> crossing_amplitude_small_a(double delta, double omega,
                                                 int n);

}  // namespace nhrm
