#include "nhrm/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "nhrm/errors.hpp"

namespace nhrm {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
// Difference between the 5th- and embedded 4th-order weights.
constexpr double kE[7] = {71.0 / 57600,      0.0,        -71.0 / 16695,
                          71.0 / 1920,       -17253.0 / 339200,
                          22.0 / 525,        -1.0 / 40};

constexpr std::size_t kMaxSteps = 50'000'000;

bool finite_state(const std::vector<Complex>& y) {
  for (const auto& v : y) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

}  // namespace

OdeTrajectory::OdeTrajectory(OdeRhs rhs, std::vector<Complex> y0, double t0,
                             double t1, double tol)
    : rhs_(std::move(rhs)),
      y_(std::move(y0)),
      t_(t0),
      t_end_(t1),
      tol_(tol),
      have_k1_(false) {
  if (!(t1 > t0)) throw RangeError("integrate_ode: requires t1 > t0");
  if (!(tol > 0.0)) throw RangeError("integrate_ode: tol must be > 0");
  if (y_.empty()) throw ShapeError("integrate_ode: empty initial state");
  const std::size_t n = y_.size();
  for (auto& k : k_) k.assign(n, Complex{});
  work_.assign(n, Complex{});
  err_.assign(n, Complex{});

  // Crude but safe initial step from the size of the initial derivative.
  rhs_(t_, y_, k_[0]);
  have_k1_ = true;
  double ynorm = 0.0;
  double fnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ynorm = std::max(ynorm, std::abs(y_[i]));
    fnorm = std::max(fnorm, std::abs(k_[0][i]));
  }
  const double span = t1 - t0;
  h_ = (fnorm > 0.0) ? 0.01 * std::max(ynorm, 1.0) / fnorm : 0.01 * span;
  h_ = std::min(h_, span);
}

double OdeTrajectory::error_norm(const std::vector<Complex>& y_new) const {
  const std::size_t n = y_.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double scale =
        tol_ + tol_ * std::max(std::abs(y_[i]), std::abs(y_new[i]));
    const double r = std::abs(err_[i]) / scale;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

void OdeTrajectory::advance_to(double target) {
  const std::size_t n = y_.size();
  std::vector<Complex> y_new(n);
  std::size_t steps = 0;
  while (t_ < target) {
    if (++steps > kMaxSteps) {
      throw IntegrationError("integrate_ode: step budget exhausted");
    }
    if (!have_k1_) {
      rhs_(t_, y_, k_[0]);
      have_k1_ = true;
    }
    double h = std::min(h_, target - t_);
    const double tiny = 1e-14 * std::max(std::abs(t_), 1.0);
    if (h < tiny) {
      // Within round-off of the target: snap.
      t_ = target;
      break;
    }
    // Stages 2..7 (stage 7 doubles as the new-point derivative via FSAL).
    for (int s = 1; s < 7; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        Complex acc = y_[i];
        for (int j = 0; j < s; ++j) acc += h * kA[s][j] * k_[j][i];
        work_[i] = acc;
      }
      rhs_(t_ + kC[s] * h, work_, k_[s]);
      if (s == 6) y_new = work_;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex e{};
      for (int s = 0; s < 7; ++s) e += kE[s] * k_[s][i];
      err_[i] = h * e;
    }
    const double err = error_norm(y_new);
    if (std::isfinite(err) && err <= 1.0 && finite_state(y_new)) {
      t_ += h;
      y_.swap(y_new);
      k_[0].swap(k_[6]);  // FSAL: stage 7 is the derivative at the new point.
      const double grow =
          (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
      h_ = h * std::clamp(grow, 0.2, 5.0);
    } else {
      if (!std::isfinite(err) || !finite_state(y_new)) {
        h_ = 0.5 * h;
      } else {
        h_ = h * std::clamp(0.9 * std::pow(err, -0.2), 0.2, 0.9);
      }
      if (h_ < tiny) {
        throw IntegrationError("integrate_ode: step underflow");
      }
    }
  }
}

std::vector<std::vector<Complex>> OdeTrajectory::sample(
    const std::vector<double>& times) {
  std::vector<std::vector<Complex>> out;
  out.reserve(times.size());
  const double slack = 1e-12 * std::max(std::abs(t_end_), 1.0);
  for (double ts : times) {
    if (ts < t_ - slack) {
      throw SamplingError("OdeTrajectory::sample: times must be forward");
    }
    if (ts > t_end_ + slack) {
      throw SamplingError("OdeTrajectory::sample: time beyond t1");
    }
    if (ts > t_) advance_to(std::min(ts, t_end_));
    out.push_back(y_);
  }
  return out;
}

std::vector<std::vector<Complex>> OdeTrajectory::sample_uniform(
    std::size_t n_samples) {
  if (n_samples < 2) {
    throw SamplingError("OdeTrajectory::sample_uniform: need >= 2 samples");
  }
  std::vector<double> times(n_samples);
  const double t0 = t_;
  const double span = t_end_ - t0;
  for (std::size_t k = 0; k < n_samples; ++k) {
    times[k] =
        t0 + span * static_cast<double>(k) / static_cast<double>(n_samples - 1);
  }
  times.back() = t_end_;
  return sample(times);
}

OdeTrajectory integrate_ode(OdeRhs rhs, std::vector<Complex> state0, double t0,
                            double t1, double tol) {
  return OdeTrajectory(std::move(rhs), std::move(state0), t0, t1, tol);
}

}  // namespace nhrm
