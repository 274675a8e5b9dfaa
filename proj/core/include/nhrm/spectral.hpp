#pragma once

#include <string>
#include <vector>

#include "nhrm/dynamics.hpp"
#include "nhrm/effective.hpp"

namespace nhrm {

// One-sided magnitude spectrum with the frequency axis in angular units of
// the drive frequency (value 2 means 2*omega).
struct FourierSpectrum {
  std::vector<double> freq;
  std::vector<double> mag;
};

// Peak list sorted by frequency; label is empty when unassigned.
struct Peak {
  double frequency = 0.0;  // angular, units of omega
  double magnitude = 0.0;
  std::string label;
};
using PeakSet = std::vector<Peak>;

// Magnitude spectrum of a uniformly sampled population series. `detrend`
// subtracts a fitted exponential envelope before transforming (useful for
// broken-phase series, off by default); `hann` applies a Hann taper.
FourierSpectrum fourier_spectrum(const TimeSeries& ts, bool detrend = false,
                                 bool hann = false);

// Local maxima with magnitude >= rel_threshold * global maximum (the
// zero-frequency bin is excluded), refined by 3-point parabolic
// interpolation. rel_threshold must lie in (0, 1).
PeakSet extract_peaks(const std::vector<double>& freqs,
                      const std::vector<double>& mags, double rel_threshold);

// Assigns to each peak the nearest candidate |2k*omega +- 2m*rabi|
// (k = 0..max_n, m = 0..1, zero excluded) within `tol` (absolute, same
// units as the peak frequencies, i.e. units of omega). Peaks with no
// candidate in range keep an empty label. Requires an unbroken-phase
// effective model (real rabi frequency).
PeakSet label_peaks(const PeakSet& ps, const EffectiveModel& em, double omega,
                    int max_n, double tol);

}  // namespace nhrm
