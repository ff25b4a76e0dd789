// Copyright (c) 2026 relaybf developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relaybf/simulator.hpp"

namespace relaybf {

/// Command-line values that take precedence over the config file.
struct FlagOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> mode;        // "exact" or "estimated:N"
  std::optional<std::string> algorithms;  // comma-separated subset
};

ModeSpec parse_mode(const std::string& text);
std::vector<Algorithm> parse_algorithms(const std::string& text);

/// Reads a flat `key = value` config file (optional), applies flag
/// overrides, fills defaults, validates. Returns the spec plus soft
/// warnings. Unknown keys and invariant violations raise ValidationError
/// naming the key.
std::pair<ExperimentSpec, std::vector<std::string>> parse_config(
    ExperimentKind kind, const std::optional<std::string>& path,
    const FlagOverrides& overrides);

/// Canonical flat key/value echo of a spec; reproducing a run is writing
/// these lines back to a config file and re-running the same subcommand.
std::vector<std::pair<std::string, std::string>> spec_echo(
    const ExperimentSpec& spec);

struct RunManifest {
  ExperimentSpec spec;
  double duration_seconds = 0.0;
  long long degenerate_redraws = 0;
  struct AlgorithmStats {
    Algorithm algorithm;
    double mean_solver_calls = 0.0;
    int max_solver_calls = 0;
  };
  std::vector<AlgorithmStats> stats;

  std::string to_json() const;
};

/// Runs the experiment and assembles its manifest.
std::pair<ExperimentCurve, RunManifest> run_experiment(
    const ExperimentSpec& spec);

/// Writes curve.csv (x plus <algorithm>_mean/_stderr columns, 12
/// significant digits) and manifest.json under out_dir; overwrites
/// existing files. Returns the two paths.
std::pair<std::string, std::string> write_outputs(const ExperimentCurve& curve,
                                                  const RunManifest& manifest,
                                                  const std::string& out_dir);

/// The CSV payload as a string (exact bytes of curve.csv).
std::string curve_to_csv(const ExperimentCurve& curve);

}  // namespace relaybf
