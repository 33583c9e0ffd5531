#pragma once

#include <string>
#include <vector>

#include "mixtura/dynamics.hpp"

namespace mixtura {

/// Everything a command can read from a config file. Sections:
/// [mixture] [grid] [time] [initial] [output]. Unknown sections or keys are
/// rejected.
struct ExperimentConfig {
  SimConfig sim;
  std::string output_dir = "out";
  std::string source_path;
  std::string sha256;  // of the raw config bytes

  // sweeps
  std::vector<int> sweep_cells{32, 64, 128};
  double dt_coefficient = 1.0;  // dt = c dx^2 in spatial sweeps
  std::vector<double> temporal_dts{0.01, 0.005, 0.0025};
  int temporal_cells = 256;
  double mms_amplitude = 0.1;
  double mms_t_end = 0.2;
  double temporal_t_end = 1.0;

  // lagrangian-check
  double delta = 0.5;
  int quadrature = 64;
  double lagrangian_time = 0.5;
  std::vector<double> epsilons{1e-2, 5e-3, 2.5e-3};

  explicit ExperimentConfig(SimConfig s) : sim(std::move(s)) {}
};

/// Parses an INI-style config file. Throws ConfigError with the path and
/// key on any problem (missing file, bad number, unknown key, invalid
/// value).
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text, const std::string& origin);

std::string sha256_hex(const std::string& bytes);

}  // namespace mixtura
