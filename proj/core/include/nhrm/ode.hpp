#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace nhrm {

using Complex = std::complex<double>;

// Right-hand side of y' = f(t, y); writes the derivative into dydt.
using OdeRhs =
    std::function<void(double t, std::span<const Complex> y,
                       std::span<Complex> dydt)>;

// Forward trajectory sampler over [t0, t1] backed by an adaptive embedded
// Dormand-Prince 5(4) stepper with per-step error control at `tol`
// (mixed absolute/relative). Sample times are hit exactly by clamping the
// step, so no interpolation error enters the reported states.
class OdeTrajectory {
 public:
  OdeTrajectory(OdeRhs rhs, std::vector<Complex> y0, double t0, double t1,
                double tol);

  // States at the requested times. Times must be non-decreasing, inside
  // [t0, t1], and not before any previously sampled time (the trajectory
  // only moves forward).
  std::vector<std::vector<Complex>> sample(const std::vector<double>& times);

  // States on the inclusive uniform grid t0 + k*(t1-t0)/(n-1), k=0..n-1.
  std::vector<std::vector<Complex>> sample_uniform(std::size_t n_samples);

  double time() const { return t_; }
  const std::vector<Complex>& state() const { return y_; }

 private:
  void advance_to(double target);
  double error_norm(const std::vector<Complex>& y_new) const;

  OdeRhs rhs_;
  std::vector<Complex> y_;
  double t_;
  double t_end_;
  double tol_;
  double h_;
  bool have_k1_;
  std::vector<Complex> k_[7];
  std::vector<Complex> work_;
  std::vector<Complex> err_;
};

// Builds the sampler after validating t1 > t0 and tol > 0.
OdeTrajectory integrate_ode(OdeRhs rhs, std::vector<Complex> state0, double t0,
                            double t1, double tol);

}  // namespace nhrm
