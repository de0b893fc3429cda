#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace stabilyze {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

double parse_number(const std::string& key, const Entry& e) {
  const std::string v = trim(e.value);
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0' || !std::isfinite(x))
    throw ConfigError("line " + std::to_string(e.line) + ": expected a number for key '" + key +
                      "', got '" + v + "'");
  return x;
}

int parse_int(const std::string& key, const Entry& e) {
  const double x = parse_number(key, e);
  if (x != std::floor(x) || std::abs(x) > 1e9)
    throw ConfigError("line " + std::to_string(e.line) + ": expected an integer for key '" + key + "'");
  return static_cast<int>(x);
}

// value lists: "a, b, c" or "start:stop:step"
std::vector<double> parse_axis(const std::string& key, const Entry& e) {
  const std::string v = trim(e.value);
  std::vector<double> out;
  if (v.find(':') != std::string::npos) {
    std::istringstream ss(v);
    std::string tok;
    std::vector<double> parts;
    while (std::getline(ss, tok, ':')) parts.push_back(parse_number(key, Entry{tok, e.line}));
    if (parts.size() != 3 || !(parts[2] > 0.0))
      throw ConfigError("line " + std::to_string(e.line) + ": range for '" + key +
                        "' must be start:stop:step with step > 0");
    for (double x = parts[0]; x <= parts[1] + 1e-12 * std::max(1.0, std::abs(parts[1])); x += parts[2])
      out.push_back(x);
  } else {
    std::istringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_number(key, Entry{trim(tok), e.line}));
  }
  if (out.empty())
    throw ConfigError("line " + std::to_string(e.line) + ": empty value list for key '" + key + "'");
  return out;
}

}  // namespace

Model RunConfig::model_at(double gamma, double chi) const {
  if (model_kind == ModelKind::WaveHeat) return Model::waveheat(gamma);
  SystemParams p = SystemParams::from_chi(params.rho1, params.rho2, params.rho3, params.a, chi,
                                          params.c, params.delta, gamma);
  return Model::timoshenko(p);
}

RunConfig parse_config(const std::string& text) {
  std::map<std::string, Section> sections;
  std::map<std::string, int> section_lines;
  {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::string current;
    while (std::getline(in, raw)) {
      ++lineno;
      std::string line = raw;
      const auto hash = line.find_first_of("#;");
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']')
          throw ConfigError("line " + std::to_string(lineno) + ": malformed section header '" + line + "'");
        current = trim(line.substr(1, line.size() - 2));
        static const std::set<std::string> known = {"model", "params", "sweep", "spectrum", "scan", "output"};
        if (!known.count(current))
          throw ConfigError("line " + std::to_string(lineno) + ": unknown section '" + current + "'");
        section_lines[current] = lineno;
        sections[current];
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value', got '" + line + "'");
      if (current.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": key outside of any [section]");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty() || value.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
      if (sections[current].count(key))
        throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "' in [" + current + "]");
      sections[current][key] = Entry{value, lineno};
    }
  }

  RunConfig cfg;
  auto sec = [&](const char* name) -> Section& { return sections[name]; };
  auto take = [&](Section& s, const std::string& key) -> Entry* {
    auto it = s.find(key);
    if (it == s.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  };

  // [model]
  if (auto* e = take(sec("model"), "kind")) {
    const std::string v = trim(e->value);
    if (v == "timoshenko") cfg.model_kind = ModelKind::Timoshenko;
    else if (v == "waveheat") cfg.model_kind = ModelKind::WaveHeat;
    else
      throw ConfigError("line " + std::to_string(e->line) + ": kind must be 'timoshenko' or 'waveheat'");
  }

  // [params]
  Section& sp = sec("params");
  SystemParams p;
  std::optional<double> chi_opt;
  if (auto* e = take(sp, "rho1")) p.rho1 = parse_number("rho1", *e);
  if (auto* e = take(sp, "rho2")) p.rho2 = parse_number("rho2", *e);
  if (auto* e = take(sp, "rho3")) p.rho3 = parse_number("rho3", *e);
  if (auto* e = take(sp, "a")) p.a = parse_number("a", *e);
  if (auto* e = take(sp, "c")) p.c = parse_number("c", *e);
  if (auto* e = take(sp, "delta")) p.delta = parse_number("delta", *e);
  if (auto* e = take(sp, "gamma")) p.gamma = parse_number("gamma", *e);
  const Entry* b_entry = take(sp, "b");
  if (auto* e = take(sp, "chi")) chi_opt = parse_number("chi", *e);
  if (b_entry && chi_opt)
    throw ConfigError("line " + std::to_string(b_entry->line) + ": give either 'b' or 'chi', not both");
  if (b_entry) p.b = parse_number("b", *b_entry);
  if (chi_opt) {
    if (!(*chi_opt < p.a / p.rho1))
      throw ConfigError("constraint violation: b would be non-positive (chi must be < a/rho1)");
    p.b = p.rho2 * (p.a / p.rho1 - *chi_opt);
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("[params]: ") + err.what());
  }
  cfg.params = p;

  // [sweep]
  Section& ssw = sec("sweep");
  cfg.gamma_axis = {p.gamma};
  cfg.chi_axis = {p.chi()};
  if (auto* e = take(ssw, "gamma")) cfg.gamma_axis = parse_axis("gamma", *e);
  if (auto* e = take(ssw, "chi")) {
    if (cfg.model_kind == ModelKind::WaveHeat)
      throw ConfigError("line " + std::to_string(e->line) + ": chi sweep is meaningless for the wave-heat model");
    cfg.chi_axis = parse_axis("chi", *e);
  }
  if (cfg.model_kind == ModelKind::WaveHeat) cfg.chi_axis = {0.0};
  for (double g : cfg.gamma_axis)
    if (std::abs(g) > kGammaGuard)
      throw ConfigError("gamma out of range: |gamma| <= 4 required (sweep value " + std::to_string(g) + ")");
  for (double chi : cfg.chi_axis)
    if (cfg.model_kind == ModelKind::Timoshenko && !(chi < p.a / p.rho1))
      throw ConfigError("constraint violation: b would be non-positive for sweep chi=" + std::to_string(chi));

  // [spectrum]
  Section& ssp = sec("spectrum");
  std::string kind = "loggrid";
  if (auto* e = take(ssp, "kind")) kind = trim(e->value);
  try {
    if (kind == "loggrid") {
      double amin = 1.0, amax = 1e8;
      int count = 400;
      if (auto* e = take(ssp, "alpha_min")) amin = parse_number("alpha_min", *e);
      if (auto* e = take(ssp, "alpha_max")) amax = parse_number("alpha_max", *e);
      if (auto* e = take(ssp, "count")) count = parse_int("count", *e);
      cfg.spectrum = Spectrum::log_grid(amin, amax, count);
    } else if (kind == "dirichlet") {
      double ell = 3.14159265358979323846;
      int n_max = 200;
      if (auto* e = take(ssp, "ell")) ell = parse_number("ell", *e);
      if (auto* e = take(ssp, "n_max")) n_max = parse_int("n_max", *e);
      cfg.spectrum = Spectrum::dirichlet(ell, n_max);
    } else if (kind == "geometric") {
      double alpha0 = 1.0, ratio = 2.0;
      int count = 30;
      if (auto* e = take(ssp, "alpha0")) alpha0 = parse_number("alpha0", *e);
      if (auto* e = take(ssp, "ratio")) ratio = parse_number("ratio", *e);
      if (auto* e = take(ssp, "count")) count = parse_int("count", *e);
      cfg.spectrum = Spectrum::geometric(alpha0, ratio, count);
    } else if (kind == "list") {
      auto* e = take(ssp, "values");
      if (!e) throw ConfigError("[spectrum]: kind=list requires 'values'");
      cfg.spectrum = Spectrum::explicit_list(parse_axis("values", *e));
    } else {
      throw ConfigError("[spectrum]: unknown kind '" + kind + "'");
    }
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("[spectrum]: ") + err.what());
  }

  // [scan]
  Section& ssc = sec("scan");
  if (auto* e = take(ssc, "lambda_count")) cfg.scan.lambda_count = parse_int("lambda_count", *e);
  if (auto* e = take(ssc, "lambda_min")) cfg.scan.lambda_min = parse_number("lambda_min", *e);
  if (auto* e = take(ssc, "margin_threshold")) cfg.scan.margin_threshold = parse_number("margin_threshold", *e);
  if (auto* e = take(ssc, "abscissa_threshold"))
    cfg.scan.abscissa_threshold = parse_number("abscissa_threshold", *e);
  if (auto* e = take(ssc, "decay_threshold")) cfg.scan.decay_threshold = parse_number("decay_threshold", *e);
  if (auto* e = take(ssc, "trend_threshold")) cfg.scan.trend_threshold = parse_number("trend_threshold", *e);
  if (auto* e = take(ssc, "decay_alpha_cap")) cfg.scan.decay_alpha_cap = parse_number("decay_alpha_cap", *e);
  if (auto* e = take(ssc, "decay_t_min")) cfg.scan.decay_t_min = parse_number("decay_t_min", *e);
  if (auto* e = take(ssc, "decay_t_max")) cfg.scan.decay_t_max = parse_number("decay_t_max", *e);
  if (auto* e = take(ssc, "decay_t_count")) cfg.scan.decay_t_count = parse_int("decay_t_count", *e);
  if (auto* e = take(ssc, "time_max")) cfg.time_max = parse_number("time_max", *e);
  if (auto* e = take(ssc, "time_count")) cfg.time_count = parse_int("time_count", *e);
  if (cfg.scan.lambda_count < 2 || cfg.scan.decay_t_count < 2 || cfg.time_count < 2)
    throw ConfigError("[scan]: grid counts must be >= 2");
  if (!(cfg.scan.lambda_min > 0.0)) throw ConfigError("[scan]: lambda_min must be positive");

  // [output]
  if (auto* e = take(sec("output"), "dir")) cfg.out_dir = trim(e->value);
  if (auto* e = take(sec("output"), "workers")) cfg.workers = parse_int("workers", *e);

  for (const auto& [name, s] : sections)
    for (const auto& [key, entry] : s)
      if (!entry.used)
        throw ConfigError("line " + std::to_string(entry.line) + ": unknown key '" + key + "' in [" +
                          name + "]");

  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace stabilyze
