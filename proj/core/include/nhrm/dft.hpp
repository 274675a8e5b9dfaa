#pragma once

#include <vector>

namespace nhrm {

// One-sided magnitude spectrum. frequency[k] = k / (N*dt) in cycles per
// time unit of dt; magnitude is amplitude-normalized so a full-scale
// bin-centered tone of amplitude a reports magnitude ~a.
struct DftResult {
  std::vector<double> frequency;
  std::vector<double> magnitude;
};

// Plain O(N^2) discrete Fourier transform of the mean-subtracted signal,
// returning the one-sided spectrum (k = 0 .. floor(N/2)). Optional Hann
// taper; rectangular window by default. Throws SamplingError for fewer
// than two samples or non-positive dt.
DftResult dft_magnitude(const std::vector<double>& samples, double dt,
                        bool hann = false);

}  // namespace nhrm
