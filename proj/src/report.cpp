#include "report.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "dynamics.hpp"
#include "parallel.hpp"

namespace stabilyze {

namespace fs = std::filesystem;

std::string format_number(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& v, const char* none_label) {
  return v ? format_number(*v) : std::string(none_label);
}

namespace {

std::string point_suffix(double gamma, double chi) {
  return format_number(gamma) + "_" + format_number(chi);
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  out << content;
}

std::string sanitize(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ' ';
  return s;
}

}  // namespace

std::string classify_csv_header() {
  return "gamma,chi,sup_abscissa,pruss_margin,inverse_growth_exponent,witness_exponent,"
         "classification,analytic_prediction,agree,status\n";
}

std::string classify_csv_row(const ClassifyRow& row) {
  std::ostringstream ss;
  ss << format_number(row.gamma) << ',' << format_number(row.chi) << ',';
  if (row.failed) {
    ss << "nan,nan,none,none,Indeterminate,Indeterminate,false," << sanitize(row.status) << '\n';
    return ss.str();
  }
  const StabilityReport& r = row.report;
  ss << format_number(r.sup_abscissa) << ',' << format_number(r.pruss_margin) << ','
     << format_optional(r.inverse_growth_exponent, "bounded") << ','
     << format_optional(r.witness_exponent_fit, "none") << ',' << to_string(r.classification) << ','
     << to_string(r.analytic_prediction) << ',' << (r.agree ? "true" : "false") << ','
     << sanitize(row.status) << '\n';
  return ss.str();
}

namespace {

ClassifyRow classify_point(const RunConfig& cfg, double gamma, double chi, int workers) {
  ClassifyRow row;
  row.gamma = gamma;
  row.chi = cfg.model_kind == ModelKind::WaveHeat ? 0.0 : chi;
  try {
    const Model model = cfg.model_at(gamma, chi);
    ClassifyOptions opts = cfg.scan;
    opts.workers = workers;
    row.report = classify(model, cfg.spectrum, opts);
  } catch (const NumericalError& e) {
    row.failed = true;
    row.status = std::string("numerical-failure: ") + e.what();
  } catch (const std::invalid_argument& e) {
    row.failed = true;
    row.status = std::string("invalid-point: ") + e.what();
  }
  return row;
}

int emit_report_rows(const RunConfig& cfg, const std::vector<std::pair<double, double>>& points) {
  const fs::path out = fs::path(cfg.out_dir) / "report.csv";

  // resume: completed keys are recognized by their formatted (gamma, chi)
  std::map<std::pair<std::string, std::string>, std::string> done;
  if (cfg.resume && fs::exists(out)) {
    std::ifstream in(out);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto c1 = line.find(',');
      const auto c2 = line.find(',', c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos) continue;
      done[{line.substr(0, c1), line.substr(c1 + 1, c2 - c1 - 1)}] = line + "\n";
    }
  }

  std::vector<std::string> rows(points.size());
  std::vector<char> failed(points.size(), 0);
  const bool parallel_points = points.size() > 1;
  const int outer = parallel_points ? cfg.workers : 1;
  const int inner = parallel_points ? 1 : cfg.workers;
  parallel_for(points.size(), outer, [&](std::size_t i) {
    const auto [gamma, chi] = points[i];
    const auto key = std::make_pair(format_number(gamma),
                                    format_number(cfg.model_kind == ModelKind::WaveHeat ? 0.0 : chi));
    if (auto it = done.find(key); it != done.end()) {
      rows[i] = it->second;
      return;
    }
    const ClassifyRow row = classify_point(cfg, gamma, chi, inner);
    rows[i] = classify_csv_row(row);
    failed[i] = row.failed ? 1 : 0;
  });

  std::string content = classify_csv_header();
  for (const auto& r : rows) content += r;
  write_file(out, content);

  int rc = 0;
  for (char f : failed)
    if (f) rc = 2;
  std::cout << "wrote " << out.string() << " (" << points.size() << " rows)\n";
  return rc;
}

}  // namespace

int run_classify(const RunConfig& cfg) {
  const double gamma = cfg.params.gamma;
  const double chi = cfg.params.chi();
  const int rc = emit_report_rows(cfg, {{gamma, chi}});
  return rc;
}

int run_sweep(const RunConfig& cfg) {
  std::vector<std::pair<double, double>> points;
  for (double g : cfg.gamma_axis)
    for (double chi : cfg.chi_axis) points.emplace_back(g, chi);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return emit_report_rows(cfg, points);
}

int run_witness(const RunConfig& cfg) {
  if (cfg.model_kind == ModelKind::WaveHeat) {
    std::cerr << "witness: only defined for the timoshenko model\n";
    return 1;
  }
  const Model model = cfg.model_at(cfg.params.gamma, cfg.params.chi());
  WitnessScanResult res;
  try {
    res = witness_scan(model.params, cfg.spectrum);
  } catch (const CaseMismatchError& e) {
    std::cerr << "witness: " << e.what() << "\n";
    return 1;
  }
  std::string content = "alpha,lambda,watched_magnitude\n";
  for (const auto& pt : res.per_alpha)
    content += format_number(pt.alpha) + "," + format_number(pt.lambda) + "," +
               format_number(pt.magnitude) + "\n";
  content += "# case=" + res.witness.name() + " fitted_exponent=" + format_number(res.fitted_exponent) +
             " predicted_exponent=" + format_number(res.witness.predicted_exponent) + "\n";
  const fs::path out =
      fs::path(cfg.out_dir) / ("witness_" + point_suffix(cfg.params.gamma, cfg.params.chi()) + ".csv");
  write_file(out, content);
  std::cout << "wrote " << out.string() << " (case " << res.witness.name() << ", slope "
            << format_number(res.fitted_exponent) << ")\n";
  return 0;
}

int run_decay(const RunConfig& cfg) {
  const Model model = cfg.model_at(cfg.params.gamma, cfg.params.chi());
  const Spectrum probe = cfg.spectrum.truncated(cfg.scan.decay_alpha_cap);
  std::vector<double> times(cfg.scan.decay_t_count);
  const double l0 = std::log(cfg.scan.decay_t_min), l1 = std::log(cfg.scan.decay_t_max);
  for (int i = 0; i < cfg.scan.decay_t_count; ++i)
    times[i] = std::exp(l0 + (l1 - l0) * i / (cfg.scan.decay_t_count - 1));

  DecayCurve curve;
  try {
    curve = semiuniform_decay(model, probe, times, cfg.scan.decay_threshold, cfg.workers);
  } catch (const NumericalError& e) {
    std::cerr << "decay: numerical failure: " << e.what() << "\n";
    return 2;
  }
  std::string content = "t,h\n";
  for (std::size_t i = 0; i < curve.t.size(); ++i)
    content += format_number(curve.t[i]) + "," + format_number(curve.h[i]) + "\n";
  content += std::string("# ratio=") + format_number(curve.ratio) +
             " decayed=" + (curve.decayed ? "true" : "false") + "\n";
  const std::string suffix = point_suffix(cfg.params.gamma, cfg.params.chi());
  write_file(fs::path(cfg.out_dir) / ("decay_" + suffix + ".csv"), content);

  if (cfg.model_kind == ModelKind::Timoshenko) {
    try {
      const DecayFit fit = decay_rate_fit(model.params, probe, {}, 1e9);
      std::string modes = "alpha,kappa_fit\n";
      for (const auto& [alpha, kap] : fit.per_mode)
        modes += format_number(alpha) + "," + format_number(kap) + "\n";
      modes += "# kappa=" + format_number(fit.kappa) + " K=" + format_number(fit.K) + "\n";
      write_file(fs::path(cfg.out_dir) / ("decay_" + suffix + "_modes.csv"), modes);
    } catch (const NumericalError& e) {
      std::cerr << "decay: per-mode fit failed: " << e.what() << "\n";
      return 2;
    }
  }
  std::cout << "wrote decay_" << suffix << ".csv (ratio " << format_number(curve.ratio) << ")\n";
  return 0;
}

int run_resolvent_scan(const RunConfig& cfg) {
  const Model model = cfg.model_at(cfg.params.gamma, cfg.params.chi());
  const auto grid = default_lambda_grid(model, cfg.spectrum, cfg.scan.lambda_count, cfg.scan.lambda_min);
  ResolventScan scan;
  try {
    scan = pruss_margin(model, cfg.spectrum, grid, cfg.workers);
  } catch (const NumericalError& e) {
    std::cerr << "resolvent-scan: numerical failure: " << e.what() << "\n";
    return 2;
  }
  std::string content = "alpha,lambda_argmin,sigma_min\n";
  for (std::size_t i = 0; i < scan.alphas.size(); ++i)
    content += format_number(scan.alphas[i]) + "," + format_number(scan.per_alpha_argmin_lambda[i]) +
               "," + format_number(scan.per_alpha_min[i]) + "\n";
  content += "# margin=" + format_number(scan.margin) + " argmin_alpha=" + format_number(scan.argmin_alpha) +
             " argmin_lambda=" + format_number(scan.argmin_lambda) + "\n";
  const fs::path out = fs::path(cfg.out_dir) /
                       ("scan_" + point_suffix(cfg.params.gamma, cfg.params.chi()) + ".csv");
  write_file(out, content);
  std::cout << "wrote " << out.string() << " (margin " << format_number(scan.margin) << ")\n";
  return 0;
}

int run_simulate(const RunConfig& cfg) {
  if (cfg.model_kind == ModelKind::WaveHeat) {
    std::cerr << "simulate: only the timoshenko model carries the energy functionals\n";
    return 1;
  }
  const SystemParams p = cfg.model_at(cfg.params.gamma, cfg.params.chi()).params;
  const double alpha = cfg.spectrum.alpha0();
  const ModalBlock block = timoshenko_block(p, alpha);
  ModalState s0{alpha, Vec(5)};
  s0.components << 1.0, 0.0, 1.0, 0.0, 1.0;

  std::string content = "t,E,Lambda1,Lambda2,Lambda3,identity_residual\n";
  LyapunovConstants dummy;  // functional values only; eps-free fields unused
  dummy.C1 = dummy.C2 = dummy.C3 = dummy.M_const = 1.0;
  dummy.eps = dummy.nu = 1.0;
  try {
    for (int i = 0; i < cfg.time_count; ++i) {
      const double t = cfg.time_max * i / (cfg.time_count - 1);
      const ModalState st = evolve(p, block, s0, t);
      const LyapunovValues vals = lyapunov_values(p, alpha, st.components, dummy);
      const double res = energy_identity_residual(p, block, s0, {t});
      content += format_number(t) + "," + format_number(vals.energy) + "," +
                 format_number(vals.lambda1) + "," + format_number(vals.lambda2) + "," +
                 format_number(vals.lambda3) + "," + format_number(res) + "\n";
    }
  } catch (const NumericalError& e) {
    std::cerr << "simulate: numerical failure: " << e.what() << "\n";
    return 2;
  }
  const fs::path out = fs::path(cfg.out_dir) /
                       ("sim_" + point_suffix(cfg.params.gamma, cfg.params.chi()) + ".csv");
  write_file(out, content);
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

int run_command(const std::string& command, const std::string& config_path,
                const std::string& out_dir_override, int workers_override, bool resume) {
  RunConfig cfg;
  try {
    cfg = parse_config_file(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  if (!out_dir_override.empty()) cfg.out_dir = out_dir_override;
  if (workers_override > 0) cfg.workers = workers_override;
  cfg.resume = resume;

  try {
    if (command == "classify") return run_classify(cfg);
    if (command == "sweep") return run_sweep(cfg);
    if (command == "witness") return run_witness(cfg);
    if (command == "decay") return run_decay(cfg);
    if (command == "resolvent-scan") return run_resolvent_scan(cfg);
    if (command == "simulate") return run_simulate(cfg);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "unknown command '" << command
            << "' (expected classify|sweep|witness|simulate|decay|resolvent-scan)\n";
  return 1;
}

}  // namespace stabilyze
