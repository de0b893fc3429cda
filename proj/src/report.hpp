#pragma once

// Sweep orchestration and machine-readable outputs.  All CSVs have a fixed
// column order, locale-independent shortest round-trip number formatting,
// and a terminating newline, so identical configs diff clean.

#include <string>

#include "config.hpp"

namespace stabilyze {

// Locale-independent shortest round-trip formatting.
std::string format_number(double v);
std::string format_optional(const std::optional<double>& v, const char* none_label);

struct ClassifyRow {
  double gamma = 0.0;
  double chi = 0.0;
  StabilityReport report;
  std::string status = "ok";
  bool failed = false;
};

std::string classify_csv_header();
std::string classify_csv_row(const ClassifyRow& row);

// Exit codes: 0 all rows computed, 1 config error, 2 numerical failure.
int run_classify(const RunConfig& cfg);
int run_sweep(const RunConfig& cfg);
int run_witness(const RunConfig& cfg);
int run_decay(const RunConfig& cfg);
int run_resolvent_scan(const RunConfig& cfg);
int run_simulate(const RunConfig& cfg);

// Dispatch by subcommand name; returns the process exit code.
int run_command(const std::string& command, const std::string& config_path,
                const std::string& out_dir_override, int workers_override, bool resume);

}  // namespace stabilyze
