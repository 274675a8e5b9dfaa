#include "nhrm/dft.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "nhrm/errors.hpp"

namespace nhrm {

DftResult dft_magnitude(const std::vector<double>& samples, double dt,
                        bool hann) {
  const std::size_t n = samples.size();
  if (n < 2) throw SamplingError("dft_magnitude: need at least 2 samples");
  if (!(dt > 0.0)) throw SamplingError("dft_magnitude: dt must be > 0");

  const double mean =
      std::accumulate(samples.begin(), samples.end(), 0.0) /
      static_cast<double>(n);
  std::vector<double> x(n);
  double window_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double w = 1.0;
    if (hann) {
      w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi *
                                static_cast<double>(i) /
                                static_cast<double>(n - 1)));
    }
    x[i] = w * (samples[i] - mean);
    window_sum += w;
  }

  const std::size_t n_bins = n / 2 + 1;
  DftResult out;
  out.frequency.resize(n_bins);
  out.magnitude.resize(n_bins);
  const double df = 1.0 / (static_cast<double>(n) * dt);
  for (std::size_t k = 0; k < n_bins; ++k) {
    const double theta =
        -2.0 * std::numbers::pi * static_cast<double>(k) /
        static_cast<double>(n);
    const std::complex<double> rot(std::cos(theta), std::sin(theta));
    std::complex<double> phase(1.0, 0.0);
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      acc += x[i] * phase;
      phase *= rot;
    }
    const bool interior = k != 0 && !(n % 2 == 0 && k == n / 2);
    const double scale = (interior ? 2.0 : 1.0) / window_sum;
    out.frequency[k] = df * static_cast<double>(k);
    out.magnitude[k] = scale * std::abs(acc);
  }
  return out;
}

}  // namespace nhrm
