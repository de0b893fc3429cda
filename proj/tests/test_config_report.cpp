#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "report.hpp"

using namespace stabilyze;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir(const char* tag) : path(fs::temp_directory_path() / (std::string("stz_test_") + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("parse_config: minimal config is valid") {
  const RunConfig cfg = parse_config(
      "[model]\n"
      "kind = timoshenko\n"
      "[params]\n"
      "gamma = 0.5\n"
      "[spectrum]\n"
      "kind = dirichlet\n"
      "ell = 3.141592653589793\n"
      "n_max = 200\n");
  CHECK(cfg.model_kind == ModelKind::Timoshenko);
  CHECK(cfg.params.gamma == 0.5);
  CHECK(cfg.spectrum.size() == 200);
  CHECK(cfg.spectrum.alpha0() == doctest::Approx(1.0));
  CHECK(cfg.gamma_axis.size() == 1);
}

TEST_CASE("parse_config: diagnostics name the key and line") {
  // chi too large: b would be non-positive
  CHECK_THROWS_WITH_AS(parse_config("[params]\nchi = 5\n"),
                       doctest::Contains("b would be non-positive"), ConfigError);
  // gamma guard
  CHECK_THROWS_WITH_AS(parse_config("[params]\ngamma = 10\n"), doctest::Contains("gamma"),
                       ConfigError);
  // unknown key with line number
  CHECK_THROWS_WITH_AS(parse_config("[params]\nrho9 = 1\n"), doctest::Contains("line 2"),
                       ConfigError);
  // type mismatch
  CHECK_THROWS_WITH_AS(parse_config("[params]\nrho1 = fast\n"), doctest::Contains("expected a number"),
                       ConfigError);
  // unknown section
  CHECK_THROWS_AS(parse_config("[paramz]\nrho1 = 1\n"), ConfigError);
  // both b and chi
  CHECK_THROWS_WITH_AS(parse_config("[params]\nb = 1\nchi = 0\n"), doctest::Contains("not both"),
                       ConfigError);
  // duplicate key
  CHECK_THROWS_WITH_AS(parse_config("[params]\na = 1\na = 2\n"), doctest::Contains("duplicate"),
                       ConfigError);
  // sweep gamma out of range
  CHECK_THROWS_WITH_AS(parse_config("[sweep]\ngamma = 0.5, 10\n"), doctest::Contains("gamma out of range"),
                       ConfigError);
}

TEST_CASE("parse_config: sweep axes, ranges and lists") {
  const RunConfig cfg = parse_config(
      "[sweep]\n"
      "gamma = 0:1:0.25\n"
      "chi = 0, 0.5\n");
  CHECK(cfg.gamma_axis.size() == 5);
  CHECK(cfg.gamma_axis.front() == 0.0);
  CHECK(cfg.gamma_axis.back() == 1.0);
  CHECK(cfg.chi_axis == std::vector<double>{0.0, 0.5});

  // chi realized through b: from_chi at each sweep point
  const Model m = cfg.model_at(0.5, 0.5);
  CHECK(m.params.b == doctest::Approx(0.5));
  CHECK(m.params.chi() == doctest::Approx(0.5));
}

TEST_CASE("parse_config: waveheat rejects chi sweep") {
  CHECK_THROWS_WITH_AS(parse_config("[model]\nkind = waveheat\n[sweep]\nchi = 0, 1\n"),
                       doctest::Contains("wave-heat"), ConfigError);
  const RunConfig cfg = parse_config("[model]\nkind = waveheat\n[sweep]\ngamma = 0, 0.5\n");
  CHECK(cfg.model_kind == ModelKind::WaveHeat);
  CHECK(cfg.model_at(0.5, 0.0).kind == ModelKind::WaveHeat);
}

TEST_CASE("number formatting is shortest round-trip") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(1e-06) == "1e-06");
  CHECK(format_number(-0.08349030868603136) == "-0.08349030868603136");
}

TEST_CASE("classify csv row shape") {
  CHECK(classify_csv_header() ==
        "gamma,chi,sup_abscissa,pruss_margin,inverse_growth_exponent,witness_exponent,"
        "classification,analytic_prediction,agree,status\n");
  ClassifyRow row;
  row.gamma = 0.5;
  row.chi = 0.0;
  row.failed = true;
  row.status = "numerical-failure: x, y";
  const std::string line = classify_csv_row(row);
  CHECK(line == "0.5,0,nan,nan,none,none,Indeterminate,Indeterminate,false,numerical-failure: x  y\n");
}

TEST_CASE("run_classify pipeline: single corner row, deterministic bytes, resume") {
  TempDir tmp("classify");
  const std::string cfg_text =
      "[params]\n"
      "gamma = 0.5\n"
      "chi = 0\n"
      "[spectrum]\n"
      "kind = loggrid\n"
      "alpha_min = 1\n"
      "alpha_max = 1e4\n"
      "count = 25\n"
      "[scan]\n"
      "lambda_count = 80\n"
      "decay_t_count = 8\n"
      "[output]\n"
      "dir = " + tmp.path.string() + "\n";
  RunConfig cfg = parse_config(cfg_text);
  cfg.workers = 2;

  CHECK(run_classify(cfg) == 0);
  const std::string first = slurp(tmp.path / "report.csv");
  CHECK(first.find("Exponential") != std::string::npos);
  CHECK(first.back() == '\n');
  CHECK(first.find("true") != std::string::npos);

  // byte-identical on re-run
  CHECK(run_classify(cfg) == 0);
  CHECK(slurp(tmp.path / "report.csv") == first);

  // resume path keeps completed rows
  cfg.resume = true;
  CHECK(run_classify(cfg) == 0);
  CHECK(slurp(tmp.path / "report.csv") == first);
}

TEST_CASE("run_sweep: rows ordered by key, agree on a small corner sweep") {
  TempDir tmp("sweep");
  const std::string cfg_text =
      "[params]\n"
      "gamma = 0.5\n"
      "chi = 0\n"
      "[sweep]\n"
      "gamma = 0.5, 2\n"
      "chi = 0, 0.5\n"
      "[spectrum]\n"
      "kind = loggrid\n"
      "alpha_min = 1\n"
      "alpha_max = 1e6\n"
      "count = 40\n"
      "[scan]\n"
      "lambda_count = 120\n"
      "decay_t_count = 10\n"
      "[output]\n"
      "dir = " + tmp.path.string() + "\n";
  RunConfig cfg = parse_config(cfg_text);
  cfg.workers = 2;
  CHECK(run_sweep(cfg) == 0);
  const std::string csv = slurp(tmp.path / "report.csv");

  std::istringstream ss(csv);
  std::string line;
  std::getline(ss, line);  // header
  int rows = 0, agrees = 0;
  std::vector<std::pair<double, double>> keys;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    ++rows;
    if (line.find(",true,") != std::string::npos) ++agrees;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    keys.emplace_back(std::stod(line.substr(0, c1)), std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
  }
  CHECK(rows == 4);
  CHECK(agrees == 4);
  CHECK(std::is_sorted(keys.begin(), keys.end()));
}

TEST_CASE("run_witness emits per-alpha rows plus fit summary") {
  TempDir tmp("witness");
  const std::string cfg_text =
      "[params]\n"
      "gamma = 1\n"
      "chi = 0\n"
      "[spectrum]\n"
      "kind = loggrid\n"
      "alpha_min = 1e4\n"
      "alpha_max = 1e8\n"
      "count = 30\n"
      "[output]\n"
      "dir = " + tmp.path.string() + "\n";
  RunConfig cfg = parse_config(cfg_text);
  CHECK(run_witness(cfg) == 0);
  const std::string csv = slurp(tmp.path / "witness_1_0.csv");
  CHECK(csv.rfind("alpha,lambda,watched_magnitude\n", 0) == 0);
  CHECK(csv.find("# case=I") != std::string::npos);
  CHECK(csv.find("predicted_exponent=1") != std::string::npos);

  // no witness at the exponentially stable point
  RunConfig bad = parse_config(
      "[params]\ngamma = 0.5\nchi = 0\n[output]\ndir = " + tmp.path.string() + "\n");
  CHECK(run_witness(bad) == 1);
}

TEST_CASE("run_decay and run_resolvent_scan emit schema-stable files") {
  TempDir tmp("decay");
  const std::string cfg_text =
      "[params]\n"
      "gamma = 0.5\n"
      "chi = 0\n"
      "[spectrum]\n"
      "kind = loggrid\n"
      "alpha_min = 1\n"
      "alpha_max = 1e3\n"
      "count = 12\n"
      "[scan]\n"
      "lambda_count = 60\n"
      "decay_t_count = 8\n"
      "decay_t_max = 1e3\n"
      "[output]\n"
      "dir = " + tmp.path.string() + "\n";
  RunConfig cfg = parse_config(cfg_text);
  cfg.workers = 2;
  CHECK(run_decay(cfg) == 0);
  const std::string decay = slurp(tmp.path / "decay_0.5_0.csv");
  CHECK(decay.rfind("t,h\n", 0) == 0);
  CHECK(decay.find("# ratio=") != std::string::npos);
  const std::string modes = slurp(tmp.path / "decay_0.5_0_modes.csv");
  CHECK(modes.rfind("alpha,kappa_fit\n", 0) == 0);

  CHECK(run_resolvent_scan(cfg) == 0);
  const std::string scan = slurp(tmp.path / "scan_0.5_0.csv");
  CHECK(scan.rfind("alpha,lambda_argmin,sigma_min\n", 0) == 0);
  CHECK(scan.find("# margin=") != std::string::npos);

  CHECK(run_simulate(cfg) == 0);
  const std::string sim = slurp(tmp.path / "sim_0.5_0.csv");
  CHECK(sim.rfind("t,E,Lambda1,Lambda2,Lambda3,identity_residual\n", 0) == 0);
}

TEST_CASE("run_command dispatch and config error exit code") {
  TempDir tmp("cmd");
  const fs::path cfg_path = tmp.path / "bad.ini";
  std::ofstream(cfg_path) << "[params]\nchi = 5\n";
  CHECK(run_command("classify", cfg_path.string(), tmp.path.string(), 1, false) == 1);
  CHECK(run_command("nonsense", cfg_path.string(), tmp.path.string(), 1, false) == 1);

  const fs::path good = tmp.path / "good.ini";
  std::ofstream(good) << "[params]\ngamma = 1\nchi = 0\n[spectrum]\nkind = loggrid\n"
                      << "alpha_min = 1e4\nalpha_max = 1e6\ncount = 10\n";
  CHECK(run_command("witness", good.string(), tmp.path.string(), 1, false) == 0);
  CHECK(fs::exists(tmp.path / "witness_1_0.csv"));
}
