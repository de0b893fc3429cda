#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modal_block.hpp"
#include "spectral_analysis.hpp"
#include "spectrum.hpp"

namespace stabilyze {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parsed and validated run configuration.  Sections: [model], [params],
// [sweep], [spectrum], [scan], [output]; unknown sections or keys are
// errors, each diagnostic names the offending key and line.
struct RunConfig {
  ModelKind model_kind = ModelKind::Timoshenko;
  SystemParams params;
  std::vector<double> gamma_axis;  // sweep values; singleton when no sweep
  std::vector<double> chi_axis;
  Spectrum spectrum = Spectrum::log_grid(1.0, 1e8, 400);
  ClassifyOptions scan;
  double time_max = 50.0;
  int time_count = 200;
  std::string out_dir = "out";
  int workers = 1;
  bool resume = false;

  Model model_at(double gamma, double chi) const;
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace stabilyze
