#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nhrm/effective.hpp"
#include "nhrm/matrix.hpp"

namespace nhrm {

// Parity sector of the extended-space Hamiltonian. `unresolved` only ever
// appears as an eigenvalue label, never as a build request.
enum class Parity { odd, even, unresolved };

struct FloquetConfig {
  int n_harmonics = 64;           // Fourier modes kept, index range -N..N
  bool hermitian_mode = false;    // replace the iA/4 couplings by A/4
  double broken_threshold = 1e-8;  // units of omega
  double edge_discard_fraction = 0.25;  // in [0, 0.5)
};

// Throws ConfigError unless n_harmonics >= 8, broken_threshold > 0 and
// edge_discard_fraction in [0, 0.5).
void validate_config(const FloquetConfig& cfg);

struct QuasiSpectrum {
  std::vector<Complex> raw;       // eigenvalues, absolute units
  std::vector<Parity> parity;     // per-eigenvalue source block
  std::vector<Complex> folded;    // Re mapped into [-omega/2, omega/2)
  std::vector<std::uint8_t> kept_mask;  // survives the edge discard
  double omega = 1.0;
};

struct Classification {
  bool broken = false;
  double max_imag = 0.0;  // max |Im| over kept eigenvalues, absolute units
};

struct PhaseGrid {
  std::vector<double> delta_axis;  // delta/omega
  std::vector<double> amp_axis;    // amp/omega
  // max_imag[i][j] in units of omega at (delta_axis[i], amp_axis[j]);
  // NaN marks a failed cell (logged in `errors`, broken=false).
  std::vector<std::vector<double>> max_imag;
  std::vector<std::vector<std::uint8_t>> broken;
  std::vector<std::string> errors;
};

// Maps re into [-omega/2, omega/2) by shifting an integer multiple of omega.
double fold_real(double re, double omega);

// Full extended-space Hamiltonian, dimension 2(2N+1). Basis index
// 2(m+N) + s with s=0 for |+, m> and s=1 for |-, m>; diagonal
// +-delta/2 + m*omega, couplings |+-, m> <-> |-+, m+-1> equal to iA/4
// (A/4 in hermitian mode).
ComplexMatrix build_full(const ModelParams& p, const FloquetConfig& cfg);

// One parity block: tridiagonal, dimension 2N+1, row k standing for mode
// m = k - N. The odd block hosts |+, even m> and |-, odd m>, so its
// diagonal is (m even ? +delta/2 : -delta/2) + m*omega; the even block has
// the opposite sign pattern. Off-diagonals are constant iA/4 (A/4 in
// hermitian mode).
ComplexMatrix build_parity(const ModelParams& p, Parity parity,
                           const FloquetConfig& cfg);

// Diagonalizes both parity blocks, tags eigenvalues with their block,
// folds the real parts, and keeps the central (1 - edge_discard_fraction)
// portion ranked by |Re(raw)| (ties at the cutoff are all kept so
// conjugate partners never split).
QuasiSpectrum spectrum(const ModelParams& p, const FloquetConfig& cfg);

// PT classification from the kept eigenvalues: broken iff
// max |Im| > broken_threshold * omega. Only one parity block is
// diagonalized; the blocks' spectra are exact mirror images
// (even = -conj(odd)), so their kept |Im| sets coincide.
Classification classify(const ModelParams& p, const FloquetConfig& cfg);

// Grid scan of classify over (delta/omega, amp/omega). Ranges are
// inclusive, resolution is points per axis (>= 2). Cells run on `workers`
// threads (0 = hardware concurrency); per-cell failures are recorded as
// NaN max_imag with broken=false plus an entry in PhaseGrid::errors.
PhaseGrid scan_phase(std::pair<double, double> delta_range,
                     std::pair<double, double> amp_range,
                     std::pair<int, int> resolution, const FloquetConfig& cfg,
                     int workers = 0);

// spectrum() with the coupling forced real (hermitian_mode on).
QuasiSpectrum hermitian_spectrum(const ModelParams& p,
                                 const FloquetConfig& cfg);

}  // namespace nhrm
