// End-to-end checks of the command-line tool: artifact layout, config
// precedence, exit codes, and numeric formatting of the emitted tables.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "helpers.hpp"
#include "nhrm/csv.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* cli_path() {
  const char* cli = std::getenv("NHRM_CLI");
  REQUIRE_MESSAGE(cli != nullptr,
                  "NHRM_CLI must point at the command-line binary");
  return cli;
}

// Fresh scratch directory, deterministic per test name.
fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "nhrm_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& body) {
  const fs::path p = dir / "config.json";
  std::ofstream out(p);
  out << body;
  return p;
}

RunResult run_cli(const std::string& args, const fs::path& dir,
                  const std::string& env_prefix = "") {
  const fs::path out_f = dir / "stdout.txt";
  const fs::path err_f = dir / "stderr.txt";
  std::string cmd = env_prefix;
  if (!cmd.empty()) cmd += ' ';
  cmd += '"';
  cmd += cli_path();
  cmd += "\" ";
  cmd += args;
  cmd += " >\"" + out_f.string() + "\" 2>\"" + err_f.string() + "\"";
  const int status = std::system(cmd.c_str());
  RunResult r;
  REQUIRE(status != -1);
  if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
  r.out = slurp(out_f);
  r.err = slurp(err_f);
  return r;
}

double cell(const nhrm::CsvTable& t, std::size_t row, std::size_t col) {
  return nhrm::parse_double(t.rows.at(row).at(col));
}

TEST_CASE("help text lists every subcommand") {
  const auto dir = fresh_dir("help");
  const auto r = run_cli("--help", dir);
  CHECK(r.code == 0);
  for (const char* name :
       {"spectrum", "phase-diagram", "dynamics", "fourier", "bs-shift"}) {
    CAPTURE(name);
    CHECK(r.out.find(name) != std::string::npos);
  }
}

TEST_CASE("dynamics writes the population table") {
  const auto dir = fresh_dir("dynamics");
  const auto cfg = write_config(dir, R"({"samples": 65, "periods": 2.0})");
  const auto r = run_cli("dynamics --preset A --harmonics 16 --config \"" +
                             cfg.string() + "\" --out \"" + dir.string() +
                             "\"",
                         dir);
  REQUIRE(r.code == 0);
  CHECK(!fs::exists(dir / "errors.log"));

  const auto table = nhrm::read_csv((dir / "dynamics.csv").string());
  const std::vector<std::string> want_cols = {"t_periods", "pe_numeric",
                                              "pe_analytic", "pe_rwa"};
  CHECK(table.columns == want_cols);
  REQUIRE(table.rows.size() == 65);
  CHECK(!table.comments.empty());
  bool mentions_periods = false;
  for (const auto& c : table.comments) {
    if (c.find("periods") != std::string::npos) mentions_periods = true;
  }
  CHECK(mentions_periods);

  // The ground-state start has zero excited population in every method.
  CHECK(cell(table, 0, 0) == 0.0);
  CHECK(cell(table, 0, 1) == 0.0);
  CHECK(cell(table, 0, 3) == 0.0);
  CHECK(cell(table, 64, 0) == doctest::Approx(2.0).epsilon(1e-12));

  // Every cell uses the shortest round-trip decimal form.
  for (const auto& row : table.rows) {
    for (const auto& c : row) {
      CHECK(nhrm::format_double(nhrm::parse_double(c)) == c);
    }
  }
}

TEST_CASE("fourier labels the effective-frequency peaks") {
  const auto dir = fresh_dir("fourier");
  const auto cfg = write_config(
      dir, R"({"fourier_samples": 512, "fourier_periods": 20.0})");
  const auto r = run_cli("fourier --preset A --harmonics 16 --config \"" +
                             cfg.string() + "\" --out \"" + dir.string() +
                             "\"",
                         dir);
  REQUIRE(r.code == 0);

  const auto table = nhrm::read_csv((dir / "fourier.csv").string());
  const std::vector<std::string> want_cols = {"nu_over_omega", "mag_numeric",
                                              "mag_analytic", "mag_rwa"};
  CHECK(table.columns == want_cols);
  CHECK(table.rows.size() == 512 / 2 + 1);

  std::ifstream jf(dir / "peaks.json");
  REQUIRE(jf.good());
  const json j = json::parse(jf);
  CHECK(j.at("delta_over_omega").get<double>() == 2.5);
  CHECK(j.at("amp_over_omega").get<double>() == 1.0);
  CHECK(j.at("broken").get<bool>() == false);
  CHECK(j.at("error").is_null());
  CHECK(j.at("rabi_over_omega").get<double>() ==
        doctest::Approx(0.6875798017410631).epsilon(1e-9));

  const auto& numeric = j.at("numeric");
  REQUIRE(numeric.is_array());
  REQUIRE(!numeric.empty());
  bool saw_rabi_line = false;
  for (const auto& item : numeric) {
    CHECK(item.contains("frequency_over_omega"));
    CHECK(item.contains("magnitude"));
    CHECK(item.contains("label"));
    if (!item.at("label").is_null() &&
        item.at("label").get<std::string>() == "2*Omega_R") {
      saw_rabi_line = true;
    }
  }
  CHECK(saw_rabi_line);
}

TEST_CASE("phase-diagram writes the grid and analytic overlays") {
  const auto dir = fresh_dir("phase_diagram");
  const auto cfg = write_config(dir, R"({
    "delta_points": 5, "delta_max": 3.0,
    "pd_amp_points": 5, "pd_amp_max": 4.0
  })");
  const auto r = run_cli("phase-diagram --harmonics 8 --workers 1 --config "
                         "\"" + cfg.string() + "\" --out \"" + dir.string() +
                             "\"",
                         dir);
  REQUIRE(r.code == 0);
  CHECK(!fs::exists(dir / "errors.log"));

  const auto grid = nhrm::read_csv((dir / "phase_diagram.csv").string());
  CHECK(grid.columns == std::vector<std::string>{"delta_over_omega",
                                                 "amp_over_omega", "max_imag",
                                                 "broken"});
  REQUIRE(grid.rows.size() == 25);
  for (const auto& row : grid.rows) {
    CHECK((row.at(3) == "0" || row.at(3) == "1"));
  }
  // Zero-coupling column is always unbroken.
  for (std::size_t i = 0; i < grid.rows.size(); ++i) {
    if (cell(grid, i, 1) == 0.0) CHECK(grid.rows[i].at(3) == "0");
  }

  const auto ep = nhrm::read_csv((dir / "ep_boundary.csv").string());
  REQUIRE(ep.rows.size() == 5);
  CHECK(std::isnan(cell(ep, 0, 1)));  // no boundary at delta = 0

  const auto cl = nhrm::read_csv((dir / "crossing_lines.csv").string());
  REQUIRE(cl.rows.size() == 10);  // shifts n = 1, 2 over 5 grid columns
  CHECK(cl.columns == std::vector<std::string>{"delta_over_omega", "n",
                                               "amp_cross"});
}

TEST_CASE("spectrum sweep emits tagged quasi-energies") {
  const auto dir = fresh_dir("spectrum");
  const auto cfg = write_config(
      dir, R"({"amp_min": 0.0, "amp_max": 1.0, "amp_points": 3,
               "n_shift_max": 1})");
  const auto r = run_cli("spectrum --preset A --harmonics 8 --config \"" +
                             cfg.string() + "\" --out \"" + dir.string() +
                             "\"",
                         dir);
  REQUIRE(r.code == 0);

  const auto table = nhrm::read_csv((dir / "spectrum.csv").string());
  CHECK(table.columns ==
        std::vector<std::string>{"A_over_omega", "re_eps", "im_eps", "parity",
                                 "source"});
  REQUIRE(!table.rows.empty());

  std::vector<double> analytic_a0;
  for (const auto& row : table.rows) {
    CHECK((row.at(3) == "odd" || row.at(3) == "even" ||
           row.at(3) == "unresolved"));
    CHECK((row.at(4) == "floquet" || row.at(4) == "analytic_n0" ||
           row.at(4) == "analytic_shifted"));
    if (row.at(4) == "analytic_n0" && nhrm::parse_double(row.at(0)) == 0.0) {
      analytic_a0.push_back(nhrm::parse_double(row.at(1)));
    }
  }
  // At zero coupling the unshifted doublet is omega/2 +- Omega_R exactly:
  // delta = 2.5 gives Omega_R = 0.75.
  REQUIRE(analytic_a0.size() == 2);
  std::sort(analytic_a0.begin(), analytic_a0.end());
  CHECK(analytic_a0[0] == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(analytic_a0[1] == doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("bs-shift table starts from the zero-coupling limit") {
  const auto dir = fresh_dir("bs_shift");
  const auto cfg = write_config(
      dir, R"({"bs_points": 3, "bs_amp_min": 0.0, "bs_amp_max": 1.0})");
  const auto r = run_cli("bs-shift --harmonics 8 --config \"" + cfg.string() +
                             "\" --out \"" + dir.string() + "\"",
                         dir);
  REQUIRE(r.code == 0);
  CHECK(!fs::exists(dir / "errors.log"));

  const auto table = nhrm::read_csv((dir / "bs_shift.csv").string());
  CHECK(table.columns ==
        std::vector<std::string>{"A_over_omega", "numeric", "analytic",
                                 "series2", "series4"});
  REQUIRE(table.rows.size() == 3);
  CHECK(cell(table, 0, 0) == 0.0);
  for (std::size_t col = 1; col < 5; ++col) CHECK(cell(table, 0, col) == 1.0);
  for (std::size_t row = 1; row < 3; ++row) {
    for (std::size_t col = 1; col < 5; ++col) {
      CHECK(std::isfinite(cell(table, row, col)));
      CHECK(cell(table, row, col) > 1.0);
    }
  }
}

TEST_CASE("config precedence: flags beat the config file and presets") {
  const auto dir = fresh_dir("precedence");
  const auto cfg = write_config(
      dir,
      R"({"delta": 9.0, "fourier_samples": 256, "fourier_periods": 10.0})");

  SUBCASE("explicit flag overrides the config value") {
    const auto r = run_cli("fourier --config \"" + cfg.string() +
                               "\" --delta 2.5 --amp 1.0 --harmonics 16 "
                               "--out \"" + dir.string() + "\"",
                           dir);
    REQUIRE(r.code == 0);
    std::ifstream jf(dir / "peaks.json");
    const json j = json::parse(jf);
    CHECK(j.at("delta_over_omega").get<double>() == 2.5);
    CHECK(j.at("broken").get<bool>() == false);
  }

  SUBCASE("preset sets the point, later flags refine it") {
    const auto r = run_cli("fourier --config \"" + cfg.string() +
                               "\" --preset A --amp 4.0 --harmonics 16 "
                               "--out \"" + dir.string() + "\"",
                           dir);
    REQUIRE(r.code == 0);
    std::ifstream jf(dir / "peaks.json");
    const json j = json::parse(jf);
    CHECK(j.at("delta_over_omega").get<double>() == 2.5);  // from preset A
    CHECK(j.at("amp_over_omega").get<double>() == 4.0);    // from the flag
    CHECK(j.at("broken").get<bool>() == true);             // labels suppressed
    CHECK(j.at("rabi_over_omega").is_null());
    CHECK(!j.at("error").is_null());
  }
}

TEST_CASE("output directory falls back to NHRM_OUT_DIR") {
  const auto dir = fresh_dir("out_env");
  const auto cfg = write_config(dir, R"({"samples": 17, "periods": 1.0})");
  const auto r = run_cli("dynamics --preset A --harmonics 16 --config \"" +
                             cfg.string() + "\"",
                         dir, "NHRM_OUT_DIR=\"" + dir.string() + "\"");
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "dynamics.csv"));
}

TEST_CASE("repeat runs and worker counts leave the tables byte-identical") {
  const auto dir1 = fresh_dir("det_w1");
  const auto dir2 = fresh_dir("det_w2");
  const std::string cfg_body = R"({
    "delta_points": 4, "delta_max": 3.0,
    "pd_amp_points": 4, "pd_amp_max": 4.0
  })";
  const auto cfg1 = write_config(dir1, cfg_body);
  const auto cfg2 = write_config(dir2, cfg_body);

  const auto r1 = run_cli("phase-diagram --harmonics 8 --workers 1 --config "
                          "\"" + cfg1.string() + "\" --out \"" +
                              dir1.string() + "\"",
                          dir1);
  const auto r2 = run_cli("phase-diagram --harmonics 8 --workers 2 --config "
                          "\"" + cfg2.string() + "\" --out \"" +
                              dir2.string() + "\"",
                          dir2);
  REQUIRE(r1.code == 0);
  REQUIRE(r2.code == 0);
  for (const char* f :
       {"phase_diagram.csv", "ep_boundary.csv", "crossing_lines.csv"}) {
    CAPTURE(f);
    CHECK(slurp(dir1 / f) == slurp(dir2 / f));
  }
}

TEST_CASE("configuration errors exit with code 2 and name the field") {
  const auto dir = fresh_dir("config_errors");

  SUBCASE("unknown config key") {
    const auto cfg = write_config(dir, R"({"bogus": 1})");
    const auto r = run_cli("dynamics --config \"" + cfg.string() + "\"", dir);
    CHECK(r.code == 2);
    CHECK(r.err.find("bogus") != std::string::npos);
  }

  SUBCASE("malformed JSON") {
    const auto cfg = write_config(dir, "{not json");
    const auto r = run_cli("dynamics --config \"" + cfg.string() + "\"", dir);
    CHECK(r.code == 2);
  }

  SUBCASE("wrong field type") {
    const auto cfg = write_config(dir, R"({"samples": "many"})");
    const auto r = run_cli("dynamics --config \"" + cfg.string() + "\"", dir);
    CHECK(r.code == 2);
    CHECK(r.err.find("samples") != std::string::npos);
  }

  SUBCASE("non-positive omega") {
    const auto r = run_cli("dynamics --omega -1.0", dir);
    CHECK(r.code == 2);
    CHECK(r.err.find("omega") != std::string::npos);
  }

  SUBCASE("unknown preset") {
    const auto r = run_cli("dynamics --preset Z", dir);
    CHECK(r.code == 2);
    CHECK(r.err.find("preset") != std::string::npos);
  }

  SUBCASE("missing subcommand") {
    const auto r = run_cli("", dir);
    CHECK(r.code == 2);
  }
}

TEST_CASE("per-point failures keep partial output and exit with code 3") {
  const auto dir = fresh_dir("partial");
  const auto cfg = write_config(
      dir, R"({"amp_min": 900.0, "amp_max": 1000.0, "amp_points": 2,
               "n_shift_max": 1})");
  const auto r = run_cli("spectrum --delta 2.5 --harmonics 8 --config \"" +
                             cfg.string() + "\" --out \"" + dir.string() +
                             "\"",
                         dir);
  CHECK(r.code == 3);
  REQUIRE(fs::exists(dir / "errors.log"));
  const auto log = slurp(dir / "errors.log");
  CHECK(!log.empty());
  CHECK(log.find("A/omega=") != std::string::npos);

  // The Floquet rows for each sweep point were already emitted.
  const auto table = nhrm::read_csv((dir / "spectrum.csv").string());
  bool floquet_rows = false;
  for (const auto& row : table.rows) {
    if (row.at(4) == "floquet") floquet_rows = true;
  }
  CHECK(floquet_rows);
}

}  // namespace
