#include "nhrm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nhrm/dft.hpp"
#include "nhrm/errors.hpp"

namespace nhrm {
namespace {

// Least-squares exponential envelope a*exp(b t) fitted through log(pe) on
// the strictly positive samples; returns false when the fit is degenerate.
bool fit_exponential(const std::vector<double>& t,
                     const std::vector<double>& pe, double& a, double& b) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (pe[i] > 1e-300) {
      const double y = std::log(pe[i]);
      sx += t[i];
      sy += y;
      sxx += t[i] * t[i];
      sxy += t[i] * y;
      ++n;
    }
  }
  if (n < 2) return false;
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  if (denom == 0.0) return false;
  b = (static_cast<double>(n) * sxy - sx * sy) / denom;
  a = std::exp((sy - b * sx) / static_cast<double>(n));
  return std::isfinite(a) && std::isfinite(b);
}

std::string candidate_label(int k, int m, int sign) {
  const auto harmonic = [](int kk) {
    return std::to_string(2 * kk) + "*omega";
  };
  if (m == 0) return harmonic(k);
  if (k == 0) return "2*Omega_R";
  return harmonic(k) + (sign > 0 ? "+" : "-") + "2*Omega_R";
}

}  // namespace

FourierSpectrum fourier_spectrum(const TimeSeries& ts, bool detrend,
                                 bool hann) {
  if (ts.t.size() < 2 || ts.t.size() != ts.pe.size()) {
    throw SamplingError("fourier_spectrum: need >= 2 uniform samples");
  }
  const double dt = ts.t[1] - ts.t[0];
  if (!(dt > 0.0)) throw SamplingError("fourier_spectrum: non-positive dt");
  for (std::size_t i = 1; i < ts.t.size(); ++i) {
    if (std::abs((ts.t[i] - ts.t[i - 1]) - dt) > 1e-9 * dt) {
      throw SamplingError("fourier_spectrum: non-uniform sampling");
    }
  }

  std::vector<double> signal = ts.pe;
  if (detrend) {
    double a = 0.0, b = 0.0;
    if (fit_exponential(ts.t, ts.pe, a, b)) {
      for (std::size_t i = 0; i < signal.size(); ++i) {
        signal[i] -= a * std::exp(b * ts.t[i]);
      }
    }
  }

  const DftResult dft = dft_magnitude(signal, dt, hann);
  FourierSpectrum out;
  out.freq.reserve(dft.frequency.size());
  out.mag = dft.magnitude;
  const double to_omega_units = 2.0 * std::numbers::pi / ts.omega;
  for (double nu : dft.frequency) out.freq.push_back(nu * to_omega_units);
  return out;
}

PeakSet extract_peaks(const std::vector<double>& freqs,
                      const std::vector<double>& mags, double rel_threshold) {
  if (!(rel_threshold > 0.0 && rel_threshold < 1.0)) {
    throw RangeError("extract_peaks: rel_threshold must be in (0, 1)");
  }
  if (freqs.size() != mags.size()) {
    throw ShapeError("extract_peaks: freqs/mags size mismatch");
  }
  PeakSet peaks;
  if (mags.size() < 3) return peaks;

  double global = 0.0;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    if (freqs[i] > 0.0) global = std::max(global, mags[i]);
  }
  const double threshold = rel_threshold * global;

  const double bin = freqs[1] - freqs[0];
  for (std::size_t i = 1; i + 1 < mags.size(); ++i) {
    if (freqs[i] <= 0.0) continue;
    const double a = mags[i - 1];
    const double b = mags[i];
    const double c = mags[i + 1];
    if (!(b > a && b >= c && b >= threshold && b > 0.0)) continue;
    const double denom = a - 2.0 * b + c;
    double p = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
    p = std::clamp(p, -0.5, 0.5);
    Peak peak;
    peak.frequency = freqs[i] + p * bin;
    peak.magnitude = b - 0.25 * (a - c) * p;
    peaks.push_back(std::move(peak));
  }
  return peaks;
}

PeakSet label_peaks(const PeakSet& ps, const EffectiveModel& em, double omega,
                    int max_n, double tol) {
  if (!(omega > 0.0)) throw RangeError("label_peaks: omega must be > 0");
  if (max_n < 0) throw RangeError("label_peaks: max_n must be >= 0");
  if (!(tol > 0.0)) throw RangeError("label_peaks: tol must be > 0");
  if (em.rabi_sq < 0.0) {
    throw RangeError("label_peaks: requires a real rabi frequency");
  }
  const double r = em.rabi.real() / omega;  // Omega_R in units of omega

  struct Candidate {
    double freq;
    std::string label;
  };
  std::vector<Candidate> candidates;
  for (int k = 0; k <= max_n; ++k) {
    for (int m = 0; m <= 1; ++m) {
      for (int sign : {+1, -1}) {
        if (m == 0 && sign < 0) continue;
        const double f =
            std::abs(2.0 * k + sign * 2.0 * m * r);
        if (f == 0.0) continue;
        const bool duplicate =
            std::any_of(candidates.begin(), candidates.end(),
                        [&](const Candidate& c) {
                          return std::abs(c.freq - f) < 1e-12;
                        });
        if (!duplicate) candidates.push_back({f, candidate_label(k, m, sign)});
      }
    }
  }

  PeakSet out = ps;
  for (auto& peak : out) {
    double best = tol;
    const Candidate* hit = nullptr;
    for (const auto& c : candidates) {
      const double d = std::abs(peak.frequency - c.freq);
      if (d <= best) {
        best = d;
        hit = &c;
      }
    }
    if (hit) peak.label = hit->label;
  }
  return out;
}

}  // namespace nhrm
