// Command-line front end: emits quasi-energy spectra, phase diagrams,
// population dynamics, Fourier analyses, and resonance-shift tables as
// CSV/JSON files.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nhrm/bloch_siegert.hpp"
#include "nhrm/csv.hpp"
#include "nhrm/dynamics.hpp"
#include "nhrm/effective.hpp"
#include "nhrm/errors.hpp"
#include "nhrm/floquet.hpp"
#include "nhrm/spectral.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitPartial = 3;

struct Settings {
  double omega = 1.0;
  double delta = 2.5;
  double amp = 1.0;
  int harmonics = 64;
  int workers = 0;
  bool hermitian = false;
  std::string out_dir;
  std::string preset;

  double broken_threshold = 1e-8;
  double edge_discard = 0.25;

  // spectrum: coupling sweep at fixed delta
  double amp_min = 0.0;
  double amp_max = 6.0;
  int amp_points = 121;
  int n_shift_max = 3;

  // phase-diagram grid
  double delta_min = 0.0;
  double delta_max = 6.0;
  int delta_points = 61;
  double pd_amp_min = 0.0;
  double pd_amp_max = 8.0;
  int pd_amp_points = 81;

  // dynamics / fourier sampling
  double periods = 10.0;
  int samples = 1024;
  double fourier_periods = 50.0;
  int fourier_samples = 4096;
  double peak_threshold = 0.05;
  double label_tol = 0.05;
  int max_label_n = 2;
  bool detrend = false;
  bool hann = false;

  // resonance-shift sweep
  double bs_amp_min = 0.0;
  double bs_amp_max = 5.0;
  int bs_points = 26;
};

// Tracks which shared flags were given so they can override the config file.
struct FlagState {
  CLI::Option* omega = nullptr;
  CLI::Option* delta = nullptr;
  CLI::Option* amp = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* harmonics = nullptr;
  CLI::Option* workers = nullptr;
  CLI::Option* hermitian = nullptr;
  CLI::Option* preset = nullptr;
  CLI::Option* config = nullptr;
};

struct SharedFlagValues {
  double omega = 1.0;
  double delta = 2.5;
  double amp = 1.0;
  std::string out_dir;
  int harmonics = 64;
  int workers = 0;
  bool hermitian = false;
  std::string preset;
  std::string config_path;
};

void apply_preset(Settings& s) {
  if (s.preset.empty()) return;
  struct PresetDef {
    const char* name;
    double delta;
    double amp;
  };
  static constexpr PresetDef kPresets[] = {
      {"A", 2.5, 1.0},     {"B", 3.5, 3.0},     {"C", 2.5, 4.0},
      {"appB-4", 4.0, 2.0}, {"appB-5", 5.0, 2.0}, {"appB-6", 6.0, 2.0},
  };
  for (const auto& pd : kPresets) {
    if (s.preset == pd.name) {
      s.delta = pd.delta * s.omega;
      s.amp = pd.amp * s.omega;
      return;
    }
  }
  throw nhrm::ConfigError("config field 'preset': unknown preset '" +
                          s.preset + "'");
}

template <typename T>
T get_field(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw nhrm::ConfigError("config field '" + key + "': wrong type");
  }
}

void load_config_file(const std::string& path, Settings& s) {
  std::ifstream in(path);
  if (!in) throw nhrm::ConfigError("config field 'config': cannot open '" +
                                   path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw nhrm::ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw nhrm::ConfigError("config root must be an object");

  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key == "omega") s.omega = get_field<double>(j, key);
    else if (key == "delta") s.delta = get_field<double>(j, key);
    else if (key == "amp") s.amp = get_field<double>(j, key);
    else if (key == "harmonics") s.harmonics = get_field<int>(j, key);
    else if (key == "workers") s.workers = get_field<int>(j, key);
    else if (key == "hermitian") s.hermitian = get_field<bool>(j, key);
    else if (key == "out") s.out_dir = get_field<std::string>(j, key);
    else if (key == "preset") s.preset = get_field<std::string>(j, key);
    else if (key == "broken_threshold") s.broken_threshold = get_field<double>(j, key);
    else if (key == "edge_discard") s.edge_discard = get_field<double>(j, key);
    else if (key == "amp_min") s.amp_min = get_field<double>(j, key);
    else if (key == "amp_max") s.amp_max = get_field<double>(j, key);
    else if (key == "amp_points") s.amp_points = get_field<int>(j, key);
    else if (key == "n_shift_max") s.n_shift_max = get_field<int>(j, key);
    else if (key == "delta_min") s.delta_min = get_field<double>(j, key);
    else if (key == "delta_max") s.delta_max = get_field<double>(j, key);
    else if (key == "delta_points") s.delta_points = get_field<int>(j, key);
    else if (key == "pd_amp_min") s.pd_amp_min = get_field<double>(j, key);
    else if (key == "pd_amp_max") s.pd_amp_max = get_field<double>(j, key);
    else if (key == "pd_amp_points") s.pd_amp_points = get_field<int>(j, key);
    else if (key == "periods") s.periods = get_field<double>(j, key);
    else if (key == "samples") s.samples = get_field<int>(j, key);
    else if (key == "fourier_periods") s.fourier_periods = get_field<double>(j, key);
    else if (key == "fourier_samples") s.fourier_samples = get_field<int>(j, key);
    else if (key == "peak_threshold") s.peak_threshold = get_field<double>(j, key);
    else if (key == "label_tol") s.label_tol = get_field<double>(j, key);
    else if (key == "max_label_n") s.max_label_n = get_field<int>(j, key);
    else if (key == "detrend") s.detrend = get_field<bool>(j, key);
    else if (key == "hann") s.hann = get_field<bool>(j, key);
    else if (key == "bs_amp_min") s.bs_amp_min = get_field<double>(j, key);
    else if (key == "bs_amp_max") s.bs_amp_max = get_field<double>(j, key);
    else if (key == "bs_points") s.bs_points = get_field<int>(j, key);
    else throw nhrm::ConfigError("config field '" + key + "': unknown field");
  }
}

// Defaults -> config file -> preset -> explicit flags.
Settings resolve_settings(const SharedFlagValues& flags,
                          const FlagState& given) {
  Settings s;
  if (given.config->count() > 0) load_config_file(flags.config_path, s);
  if (given.preset->count() > 0) s.preset = flags.preset;
  if (given.omega->count() > 0) s.omega = flags.omega;
  apply_preset(s);
  if (given.delta->count() > 0) s.delta = flags.delta;
  if (given.amp->count() > 0) s.amp = flags.amp;
  if (given.out->count() > 0) s.out_dir = flags.out_dir;
  if (given.harmonics->count() > 0) s.harmonics = flags.harmonics;
  if (given.workers->count() > 0) s.workers = flags.workers;
  if (given.hermitian->count() > 0) s.hermitian = flags.hermitian;

  if (s.out_dir.empty()) {
    if (const char* env = std::getenv("NHRM_OUT_DIR")) s.out_dir = env;
  }
  if (s.out_dir.empty()) s.out_dir = ".";

  if (!(s.omega > 0.0)) {
    throw nhrm::ConfigError("config field 'omega': must be > 0");
  }
  if (s.delta < 0.0) {
    throw nhrm::ConfigError("config field 'delta': must be >= 0");
  }
  if (s.amp < 0.0) throw nhrm::ConfigError("config field 'amp': must be >= 0");
  if (s.harmonics < 8) {
    throw nhrm::ConfigError("config field 'harmonics': must be >= 8");
  }
  return s;
}

nhrm::FloquetConfig floquet_config(const Settings& s) {
  nhrm::FloquetConfig cfg;
  cfg.n_harmonics = s.harmonics;
  cfg.hermitian_mode = s.hermitian;
  cfg.broken_threshold = s.broken_threshold;
  cfg.edge_discard_fraction = s.edge_discard;
  return cfg;
}

nhrm::ModelParams model_params(const Settings& s) {
  return nhrm::ModelParams{s.omega, s.delta, s.amp};
}

fs::path prepare_out_dir(const Settings& s) {
  fs::path dir(s.out_dir);
  fs::create_directories(dir);
  return dir;
}

int finish(const fs::path& out_dir, const std::vector<std::string>& errors) {
  if (errors.empty()) return kExitOk;
  const fs::path log = out_dir / "errors.log";
  std::ofstream out(log);
  for (const auto& e : errors) out << e << '\n';
  std::cerr << errors.size() << " partial failure(s); see " << log << '\n';
  return kExitPartial;
}

std::string fmt(double v) { return nhrm::format_double(v); }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

const char* parity_name(nhrm::Parity p) {
  switch (p) {
    case nhrm::Parity::odd: return "odd";
    case nhrm::Parity::even: return "even";
    default: return "unresolved";
  }
}

// ---- spectrum ----------------------------------------------------------

int cmd_spectrum(const Settings& s) {
  if (s.amp_points < 2 || !(s.amp_max >= s.amp_min) || s.amp_min < 0.0) {
    throw nhrm::ConfigError("config field 'amp_min/amp_max/amp_points': "
                            "invalid sweep range");
  }
  const auto out_dir = prepare_out_dir(s);
  const auto cfg = floquet_config(s);
  std::vector<std::string> errors;

  nhrm::CsvTable table;
  table.comments = {
      "quasi-energy sweep at fixed delta",
      "delta/omega = " + fmt(s.delta / s.omega) +
          ", harmonics N = " + std::to_string(s.harmonics),
      "columns: A_over_omega (-), re_eps (units of omega), im_eps (units of "
      "omega), parity, source",
  };
  table.columns = {"A_over_omega", "re_eps", "im_eps", "parity", "source"};

  for (double amp_ratio : linspace(s.amp_min, s.amp_max, s.amp_points)) {
    const nhrm::ModelParams p{s.omega, s.delta, amp_ratio * s.omega};
    try {
      const auto qs = nhrm::spectrum(p, cfg);
      for (std::size_t i = 0; i < qs.raw.size(); ++i) {
        if (!qs.kept_mask[i]) continue;
        table.rows.push_back({fmt(amp_ratio), fmt(qs.raw[i].real() / s.omega),
                              fmt(qs.raw[i].imag() / s.omega),
                              parity_name(qs.parity[i]), "floquet"});
      }
      for (int shift = -s.n_shift_max; shift <= s.n_shift_max; ++shift) {
        const auto [ep, em] = nhrm::quasi_energies(p, shift);
        const char* source = shift == 0 ? "analytic_n0" : "analytic_shifted";
        for (const auto& e : {ep, em}) {
          table.rows.push_back({fmt(amp_ratio), fmt(e.real() / s.omega),
                                fmt(e.imag() / s.omega), "unresolved",
                                source});
        }
      }
    } catch (const std::exception& ex) {
      errors.push_back("spectrum A/omega=" + fmt(amp_ratio) + ": " +
                       ex.what());
    }
  }
  nhrm::write_csv((out_dir / "spectrum.csv").string(), table);
  return finish(out_dir, errors);
}

// ---- phase diagram -----------------------------------------------------

int cmd_phase_diagram(const Settings& s) {
  if (s.delta_points < 2 || s.pd_amp_points < 2) {
    throw nhrm::ConfigError(
        "config field 'delta_points/pd_amp_points': must be >= 2");
  }
  const auto out_dir = prepare_out_dir(s);
  const auto cfg = floquet_config(s);

  const auto grid = nhrm::scan_phase({s.delta_min, s.delta_max},
                                     {s.pd_amp_min, s.pd_amp_max},
                                     {s.delta_points, s.pd_amp_points}, cfg,
                                     s.workers);

  nhrm::CsvTable table;
  table.comments = {
      "PT phase classification grid, harmonics N = " +
          std::to_string(s.harmonics),
      "columns: delta_over_omega (-), amp_over_omega (-), max_imag (units "
      "of omega), broken (0/1)",
  };
  table.columns = {"delta_over_omega", "amp_over_omega", "max_imag",
                   "broken"};
  for (std::size_t i = 0; i < grid.delta_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.amp_axis.size(); ++j) {
      table.rows.push_back({fmt(grid.delta_axis[i]), fmt(grid.amp_axis[j]),
                            fmt(grid.max_imag[i][j]),
                            grid.broken[i][j] ? "1" : "0"});
    }
  }
  nhrm::write_csv((out_dir / "phase_diagram.csv").string(), table);

  nhrm::CsvTable boundary;
  boundary.comments = {
      "analytic phase-boundary abscissa per delta (nan = no boundary in "
      "range)",
      "columns: delta_over_omega (-), amp_ep (units of omega)",
  };
  boundary.columns = {"delta_over_omega", "amp_ep"};
  for (double d : grid.delta_axis) {
    const auto a = nhrm::ep_boundary_amplitude(d, 1.0);
    boundary.rows.push_back(
        {fmt(d), fmt(a ? *a : std::nan(""))});
  }
  nhrm::write_csv((out_dir / "ep_boundary.csv").string(), boundary);

  nhrm::CsvTable crossings;
  crossings.comments = {
      "level-crossing amplitudes per delta for shifts n = 1, 2 (nan = none "
      "in range)",
      "columns: delta_over_omega (-), n (-), amp_cross (units of omega)",
  };
  crossings.columns = {"delta_over_omega", "n", "amp_cross"};
  for (int n = 1; n <= 2; ++n) {
    for (double d : grid.delta_axis) {
      const auto a = nhrm::crossing_amplitude(d, 1.0, n);
      crossings.rows.push_back(
          {fmt(d), std::to_string(n), fmt(a ? *a : std::nan(""))});
    }
  }
  nhrm::write_csv((out_dir / "crossing_lines.csv").string(), crossings);

  return finish(out_dir, grid.errors);
}

// ---- dynamics ----------------------------------------------------------

int cmd_dynamics(const Settings& s) {
  if (s.samples < 2 || !(s.periods > 0.0)) {
    throw nhrm::ConfigError(
        "config field 'samples/periods': invalid sampling");
  }
  const auto out_dir = prepare_out_dir(s);
  const auto p = model_params(s);
  const double t_end = s.periods * 2.0 * std::numbers::pi / s.omega;
  const auto n = static_cast<std::size_t>(s.samples);

  const auto psi0 = nhrm::InitialState::ground();
  const auto numeric =
      nhrm::evolve_numeric(p, psi0, t_end, n, 1e-10, s.hermitian);
  const auto analytic = nhrm::evolve_operator(p, psi0, t_end, n);
  const auto rwa = nhrm::evolve_rwa(p, t_end, n);

  nhrm::CsvTable table;
  table.comments = {
      "excited-state population: exact integration, factorized-operator "
      "route, rotating-wave form",
      "delta/omega = " + fmt(s.delta / s.omega) +
          ", A/omega = " + fmt(s.amp / s.omega),
      "columns: t_periods (field periods), pe_numeric (-), pe_analytic (-), "
      "pe_rwa (-)",
  };
  table.columns = {"t_periods", "pe_numeric", "pe_analytic", "pe_rwa"};
  const double to_periods = s.omega / (2.0 * std::numbers::pi);
  for (std::size_t k = 0; k < numeric.t.size(); ++k) {
    table.rows.push_back({fmt(numeric.t[k] * to_periods), fmt(numeric.pe[k]),
                          fmt(analytic.pe[k]), fmt(rwa.pe[k])});
  }
  nhrm::write_csv((out_dir / "dynamics.csv").string(), table);
  return kExitOk;
}

// ---- fourier -----------------------------------------------------------

json peaks_to_json(const nhrm::PeakSet& peaks) {
  json arr = json::array();
  for (const auto& p : peaks) {
    json item;
    item["frequency_over_omega"] = p.frequency;
    item["magnitude"] = p.magnitude;
    if (p.label.empty()) {
      item["label"] = nullptr;
    } else {
      item["label"] = p.label;
    }
    arr.push_back(std::move(item));
  }
  return arr;
}

int cmd_fourier(const Settings& s) {
  if (s.fourier_samples < 2 || !(s.fourier_periods > 0.0)) {
    throw nhrm::ConfigError(
        "config field 'fourier_samples/fourier_periods': invalid sampling");
  }
  if (!(s.peak_threshold > 0.0 && s.peak_threshold < 1.0)) {
    throw nhrm::ConfigError(
        "config field 'peak_threshold': must be in (0, 1)");
  }
  const auto out_dir = prepare_out_dir(s);
  const auto p = model_params(s);
  const auto cfg = floquet_config(s);
  const double t_end = s.fourier_periods * 2.0 * std::numbers::pi / s.omega;
  const auto n = static_cast<std::size_t>(s.fourier_samples);

  const bool broken = nhrm::classify(p, cfg).broken;
  if (broken) {
    std::cerr << "warning: PT-broken parameter point; spectral peaks ride "
                 "on an exponential envelope\n";
  }

  const auto psi0 = nhrm::InitialState::ground();
  const auto numeric =
      nhrm::evolve_numeric(p, psi0, t_end, n, 1e-10, s.hermitian);
  const auto analytic = nhrm::evolve_operator(p, psi0, t_end, n);
  const auto rwa = nhrm::evolve_rwa(p, t_end, n);

  const auto spec_numeric = nhrm::fourier_spectrum(numeric, s.detrend, s.hann);
  const auto spec_analytic =
      nhrm::fourier_spectrum(analytic, s.detrend, s.hann);
  const auto spec_rwa = nhrm::fourier_spectrum(rwa, s.detrend, s.hann);

  nhrm::CsvTable table;
  table.comments = {
      "one-sided population spectra over " + fmt(s.fourier_periods) +
          " field periods",
      "columns: nu_over_omega (angular, units of omega), mag_numeric (-), "
      "mag_analytic (-), mag_rwa (-)",
  };
  table.columns = {"nu_over_omega", "mag_numeric", "mag_analytic", "mag_rwa"};
  for (std::size_t k = 0; k < spec_numeric.freq.size(); ++k) {
    table.rows.push_back({fmt(spec_numeric.freq[k]),
                          fmt(spec_numeric.mag[k]), fmt(spec_analytic.mag[k]),
                          fmt(spec_rwa.mag[k])});
  }
  nhrm::write_csv((out_dir / "fourier.csv").string(), table);

  auto peaks_numeric =
      nhrm::extract_peaks(spec_numeric.freq, spec_numeric.mag,
                          s.peak_threshold);
  auto peaks_analytic =
      nhrm::extract_peaks(spec_analytic.freq, spec_analytic.mag,
                          s.peak_threshold);
  auto peaks_rwa =
      nhrm::extract_peaks(spec_rwa.freq, spec_rwa.mag, s.peak_threshold);

  json out;
  out["delta_over_omega"] = s.delta / s.omega;
  out["amp_over_omega"] = s.amp / s.omega;
  out["broken"] = broken;
  if (!broken && !s.hermitian) {
    const auto em = nhrm::effective(p);
    peaks_numeric = nhrm::label_peaks(peaks_numeric, em, s.omega,
                                      s.max_label_n, s.label_tol);
    peaks_analytic = nhrm::label_peaks(peaks_analytic, em, s.omega,
                                       s.max_label_n, s.label_tol);
    peaks_rwa = nhrm::label_peaks(peaks_rwa, em, s.omega, s.max_label_n,
                                  s.label_tol);
    out["rabi_over_omega"] = em.rabi.real() / s.omega;
    out["error"] = nullptr;
  } else {
    out["rabi_over_omega"] = nullptr;
    out["error"] = broken ? "broken phase: labels suppressed" : nullptr;
  }
  out["numeric"] = peaks_to_json(peaks_numeric);
  out["analytic"] = peaks_to_json(peaks_analytic);
  out["rwa"] = peaks_to_json(peaks_rwa);

  std::ofstream jf(out_dir / "peaks.json");
  if (!jf) throw nhrm::IoError("cmd_fourier: cannot open peaks.json");
  jf << out.dump(2) << '\n';
  return kExitOk;
}

// ---- resonance shift ---------------------------------------------------

int cmd_bs_shift(const Settings& s) {
  if (s.bs_points < 2 || !(s.bs_amp_max >= s.bs_amp_min) ||
      s.bs_amp_min < 0.0) {
    throw nhrm::ConfigError(
        "config field 'bs_amp_min/bs_amp_max/bs_points': invalid range");
  }
  const auto out_dir = prepare_out_dir(s);
  const auto cfg = floquet_config(s);

  std::vector<double> amps;
  for (double a : linspace(s.bs_amp_min, s.bs_amp_max, s.bs_points)) {
    amps.push_back(a * s.omega);
  }
  const auto results = nhrm::bs_sweep(amps, s.omega, cfg, s.workers);

  nhrm::CsvTable table;
  table.comments = {
      "resonance location vs coupling strength (all columns in units of "
      "omega)",
      "columns: A_over_omega (-), numeric, analytic, series2, series4",
  };
  table.columns = {"A_over_omega", "numeric", "analytic", "series2",
                   "series4"};
  std::vector<std::string> errors;
  for (const auto& r : results) {
    table.rows.push_back({fmt(r.amp / s.omega), fmt(r.numeric / s.omega),
                          fmt(r.analytic / s.omega), fmt(r.series2 / s.omega),
                          fmt(r.series4 / s.omega)});
    if (!r.error.empty()) {
      errors.push_back("bs-shift A/omega=" + fmt(r.amp / s.omega) + ": " +
                       r.error);
    }
  }
  nhrm::write_csv((out_dir / "bs_shift.csv").string(), table);
  return finish(out_dir, errors);
}

void add_shared_flags(CLI::App* cmd, SharedFlagValues& v, FlagState& st) {
  st.omega = cmd->add_option("--omega", v.omega, "Field frequency (> 0)");
  st.delta = cmd->add_option("--delta", v.delta, "Atomic frequency (>= 0)");
  st.amp = cmd->add_option("--amp", v.amp, "Coupling strength (>= 0)");
  st.config = cmd->add_option("--config", v.config_path,
                              "JSON config file (flags override it)");
  st.out = cmd->add_option(
      "--out", v.out_dir,
      "Output directory (default: $NHRM_OUT_DIR or current directory)");
  st.harmonics =
      cmd->add_option("--harmonics", v.harmonics, "Fourier modes kept (>= 8)");
  st.workers = cmd->add_option("--workers", v.workers,
                               "Worker threads (0 = machine parallelism)");
  st.hermitian = cmd->add_flag("--hermitian", v.hermitian,
                               "Real-coupling control mode");
  st.preset = cmd->add_option(
      "--preset", v.preset,
      "Named parameter point: A, B, C, appB-4, appB-5, appB-6");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Driven two-level-system toolkit: quasi-energy spectra, PT phase "
      "diagrams, population dynamics, Fourier peaks, resonance shift.\n"
      "Precedence: command-line flags > --config file > presets > defaults."};
  app.require_subcommand(1);

  struct SubcommandSpec {
    const char* name;
    const char* help;
    int (*run)(const Settings&);
  };
  static constexpr SubcommandSpec kCommands[] = {
      {"spectrum", "Quasi-energy sweep over coupling at fixed delta",
       cmd_spectrum},
      {"phase-diagram", "PT classification grid plus analytic overlays",
       cmd_phase_diagram},
      {"dynamics", "Excited-state population by three methods",
       cmd_dynamics},
      {"fourier", "Population spectra and labeled peaks", cmd_fourier},
      {"bs-shift", "Resonance location vs coupling strength", cmd_bs_shift},
  };

  struct Bound {
    SharedFlagValues values;
    FlagState state;
    int (*run)(const Settings&) = nullptr;
    CLI::App* cmd = nullptr;
  };
  std::vector<Bound> bound(std::size(kCommands));
  for (std::size_t i = 0; i < std::size(kCommands); ++i) {
    bound[i].cmd = app.add_subcommand(kCommands[i].name, kCommands[i].help);
    bound[i].run = kCommands[i].run;
    add_shared_flags(bound[i].cmd, bound[i].values, bound[i].state);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  for (const auto& b : bound) {
    if (!b.cmd->parsed()) continue;
    try {
      const Settings s = resolve_settings(b.values, b.state);
      return b.run(s);
    } catch (const nhrm::ConfigError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitConfig;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitRuntime;
    }
  }
  return kExitConfig;
}
