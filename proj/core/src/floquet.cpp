#include "nhrm/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "nhrm/errors.hpp"
#include "nhrm/parallel.hpp"

namespace nhrm {
namespace {

// Tie slack when ranking |Re(raw)|: conjugate partners agree only to
// eigensolver accuracy, and both must land on the same side of the cut.
constexpr double kTieSlack = 1e-9;

Complex coupling(const ModelParams& p, const FloquetConfig& cfg) {
  return cfg.hermitian_mode ? Complex(0.25 * p.amp, 0.0)
                            : Complex(0.0, 0.25 * p.amp);
}

// Diagonal of one parity block; row k stands for Fourier mode m = k - N.
std::vector<Complex> block_diagonal(const ModelParams& p, Parity parity,
                                    int n_harmonics) {
  const int n = n_harmonics;
  std::vector<Complex> diag(static_cast<std::size_t>(2 * n + 1));
  for (int k = 0; k <= 2 * n; ++k) {
    const int m = k - n;
    const bool even_mode = (m % 2) == 0;
    double sign = even_mode ? 1.0 : -1.0;
    if (parity == Parity::even) sign = -sign;
    diag[static_cast<std::size_t>(k)] =
        Complex(sign * 0.5 * p.delta + static_cast<double>(m) * p.omega, 0.0);
  }
  return diag;
}

std::vector<Complex> block_eigenvalues(const ModelParams& p, Parity parity,
                                       const FloquetConfig& cfg) {
  const auto diag = block_diagonal(p, parity, cfg.n_harmonics);
  const std::vector<Complex> off(diag.size() - 1, coupling(p, cfg));
  auto eigs = eig_tridiag(diag, off);
  std::sort(eigs.begin(), eigs.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return eigs;
}

// Marks the kept_count eigenvalues of smallest |Re|, extending through ties
// at the cutoff so mirror/conjugate partners are never split.
std::vector<std::uint8_t> keep_central(const std::vector<Complex>& raw,
                                       double edge_discard_fraction,
                                       double omega) {
  const std::size_t n = raw.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::abs(raw[a].real()) < std::abs(raw[b].real());
                   });
  auto count = static_cast<std::size_t>(
      std::llround((1.0 - edge_discard_fraction) * static_cast<double>(n)));
  count = std::clamp<std::size_t>(count, 1, n);
  const double cutoff =
      std::abs(raw[order[count - 1]].real()) + kTieSlack * omega;
  std::vector<std::uint8_t> kept(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t idx = order[i];
    if (i < count || std::abs(raw[idx].real()) <= cutoff) {
      kept[idx] = 1;
    } else {
      break;
    }
  }
  return kept;
}

}  // namespace

void validate_config(const FloquetConfig& cfg) {
  if (cfg.n_harmonics < 8) {
    throw ConfigError("FloquetConfig: n_harmonics must be >= 8");
  }
  if (!(cfg.broken_threshold > 0.0)) {
    throw ConfigError("FloquetConfig: broken_threshold must be > 0");
  }
  if (!(cfg.edge_discard_fraction >= 0.0 &&
        cfg.edge_discard_fraction < 0.5)) {
    throw ConfigError(
        "FloquetConfig: edge_discard_fraction must be in [0, 0.5)");
  }
}

double fold_real(double re, double omega) {
  return re - omega * std::floor(re / omega + 0.5);
}

ComplexMatrix build_full(const ModelParams& p, const FloquetConfig& cfg) {
  validate_params(p);
  validate_config(cfg);
  const int n = cfg.n_harmonics;
  const auto index = [n](int m, int s) {
    return static_cast<std::size_t>(2 * (m + n) + s);
  };
  ComplexMatrix h(static_cast<std::size_t>(2 * (2 * n + 1)));
  for (int m = -n; m <= n; ++m) {
    h.at(index(m, 0), index(m, 0)) =
        Complex(0.5 * p.delta + static_cast<double>(m) * p.omega, 0.0);
    h.at(index(m, 1), index(m, 1)) =
        Complex(-0.5 * p.delta + static_cast<double>(m) * p.omega, 0.0);
  }
  const Complex c = coupling(p, cfg);
  for (int m = -n; m < n; ++m) {
    // |+, m> <-> |-, m+1> and |-, m> <-> |+, m+1>, symmetric in both modes
    h.at(index(m, 0), index(m + 1, 1)) = c;
    h.at(index(m + 1, 1), index(m, 0)) = c;
    h.at(index(m, 1), index(m + 1, 0)) = c;
    h.at(index(m + 1, 0), index(m, 1)) = c;
  }
  return h;
}

ComplexMatrix build_parity(const ModelParams& p, Parity parity,
                           const FloquetConfig& cfg) {
  validate_params(p);
  validate_config(cfg);
  if (parity == Parity::unresolved) {
    throw RangeError("build_parity: parity must be odd or even");
  }
  const auto diag = block_diagonal(p, parity, cfg.n_harmonics);
  const Complex c = coupling(p, cfg);
  ComplexMatrix h(diag.size());
  for (std::size_t k = 0; k < diag.size(); ++k) {
    h.at(k, k) = diag[k];
    if (k + 1 < diag.size()) {
      h.at(k, k + 1) = c;
      h.at(k + 1, k) = c;
    }
  }
  return h;
}

QuasiSpectrum spectrum(const ModelParams& p, const FloquetConfig& cfg) {
  validate_params(p);
  validate_config(cfg);
  const auto odd = block_eigenvalues(p, Parity::odd, cfg);
  const auto even = block_eigenvalues(p, Parity::even, cfg);

  QuasiSpectrum qs;
  qs.omega = p.omega;
  qs.raw.reserve(odd.size() + even.size());
  qs.parity.reserve(odd.size() + even.size());
  for (const auto& e : odd) {
    qs.raw.push_back(e);
    qs.parity.push_back(Parity::odd);
  }
  for (const auto& e : even) {
    qs.raw.push_back(e);
    qs.parity.push_back(Parity::even);
  }
  qs.folded.reserve(qs.raw.size());
  for (const auto& e : qs.raw) {
    qs.folded.emplace_back(fold_real(e.real(), p.omega), e.imag());
  }
  qs.kept_mask = keep_central(qs.raw, cfg.edge_discard_fraction, p.omega);
  return qs;
}

Classification classify(const ModelParams& p, const FloquetConfig& cfg) {
  validate_params(p);
  validate_config(cfg);
  // The even block equals -conj(odd block) under index reversal, so the two
  // kept |Im| sets coincide; one diagonalization suffices.
  const auto eigs = block_eigenvalues(p, Parity::odd, cfg);
  const auto kept = keep_central(eigs, cfg.edge_discard_fraction, p.omega);
  double max_imag = 0.0;
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    if (kept[i]) max_imag = std::max(max_imag, std::abs(eigs[i].imag()));
  }
  return Classification{max_imag > cfg.broken_threshold * p.omega, max_imag};
}

PhaseGrid scan_phase(std::pair<double, double> delta_range,
                     std::pair<double, double> amp_range,
                     std::pair<int, int> resolution, const FloquetConfig& cfg,
                     int workers) {
  validate_config(cfg);
  if (resolution.first < 2 || resolution.second < 2) {
    throw RangeError("scan_phase: resolution must be >= 2 per axis");
  }
  if (!(delta_range.second >= delta_range.first) || delta_range.first < 0.0) {
    throw RangeError("scan_phase: invalid delta range");
  }
  if (!(amp_range.second >= amp_range.first) || amp_range.first < 0.0) {
    throw RangeError("scan_phase: invalid amp range");
  }

  const auto nd = static_cast<std::size_t>(resolution.first);
  const auto na = static_cast<std::size_t>(resolution.second);
  PhaseGrid grid;
  grid.delta_axis.resize(nd);
  grid.amp_axis.resize(na);
  for (std::size_t i = 0; i < nd; ++i) {
    grid.delta_axis[i] =
        delta_range.first + (delta_range.second - delta_range.first) *
                                static_cast<double>(i) /
                                static_cast<double>(nd - 1);
  }
  for (std::size_t j = 0; j < na; ++j) {
    grid.amp_axis[j] =
        amp_range.first + (amp_range.second - amp_range.first) *
                              static_cast<double>(j) /
                              static_cast<double>(na - 1);
  }
  grid.max_imag.assign(nd, std::vector<double>(na, 0.0));
  grid.broken.assign(nd, std::vector<std::uint8_t>(na, 0));
  std::vector<std::string> cell_errors(nd * na);

  parallel_for(nd * na, workers, [&](std::size_t cell) {
    const std::size_t i = cell / na;
    const std::size_t j = cell % na;
    // Axes are dimensionless ratios; evaluate at omega = 1.
    const ModelParams p{1.0, grid.delta_axis[i], grid.amp_axis[j]};
    try {
      const Classification c = classify(p, cfg);
      grid.max_imag[i][j] = c.max_imag;
      grid.broken[i][j] = c.broken ? 1 : 0;
    } catch (const std::exception& ex) {
      grid.max_imag[i][j] = std::numeric_limits<double>::quiet_NaN();
      grid.broken[i][j] = 0;
      std::ostringstream msg;
      msg << "cell delta/omega=" << grid.delta_axis[i]
          << " amp/omega=" << grid.amp_axis[j] << ": " << ex.what();
      cell_errors[cell] = msg.str();
    }
  });
  for (auto& e : cell_errors) {
    if (!e.empty()) grid.errors.push_back(std::move(e));
  }
  return grid;
}

QuasiSpectrum hermitian_spectrum(const ModelParams& p,
                                 const FloquetConfig& cfg) {
  FloquetConfig hc = cfg;
  hc.hermitian_mode = true;
  return spectrum(p, hc);
}

}  // namespace nhrm
