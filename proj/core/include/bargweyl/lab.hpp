#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bargweyl/verify.hpp"

namespace bargweyl {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// flat key-value config with [run] / [quadrature] / [symbol] / [output]
// sections; unknown keys are errors (see README for the grammar)
struct ExperimentConfig {
  // [run]
  std::string name = "default";
  std::vector<double> h_grid = {0.2, 0.1, 0.05};
  double s = 2.0;
  double C = 50.0;
  std::string weight = "bargmann";        // bargmann | fbi
  std::uint64_t seed = 42;
  std::string route = "auto";             // auto | superposition | direct | rank-one
  std::string perturbation = "tanh";      // tanh | none
  int threads = 1;
  bool quick = false;
  bool include_slow = true;
  // [quadrature]
  int N = 12;
  int M = 128;
  double R = 0.0;  // 0 = auto from the weight and degree
  // [symbol]
  std::string symbol_kind = "gaussian";   // gaussian | gevrey-bump | plane-wave | oscillator
  double symbol_width = 1.0;
  double symbol_s = 2.0;
  double symbol_r = 1.2;
  double symbol_xstar_re = 0.3;
  double symbol_xstar_im = 0.0;
  // [output]
  std::string out_dir = "out";
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

struct Report {
  std::string experiment;
  std::string csv;                     // pinned header + rows
  std::string json_body;               // deterministic body (no wall time)
  double wall_ms = 0.0;                // excluded from determinism
  int exit_code = 0;                   // 0 ok, 1 invariant failure
  std::vector<std::string> warnings;
};

Report run_verify(const ExperimentConfig& cfg);
Report run_norm_sweep(const ExperimentConfig& cfg);
Report run_gevrey_fit(const ExperimentConfig& cfg);
Report run_decomposition_check(const ExperimentConfig& cfg);
Report run_compose(const ExperimentConfig& cfg);

// writes <out_dir>/<experiment>.csv and .json (json includes the wall time in
// a separate, documented-as-nondeterministic field)
void write_report(const Report& rep, const std::string& out_dir);

std::string format_double(double v);  // %.12g, deterministic

}  // namespace bargweyl
