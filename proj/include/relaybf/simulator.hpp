// Copyright (c) 2026 relaybf developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relaybf/selection.hpp"

namespace relaybf {

enum class Algorithm { kNone, kRrrs, kResrs, kRgsrs };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

enum class ExperimentKind { kSinrVsSnr, kSinrVsM, kBerVsSnr };

std::string to_string(ExperimentKind k);

/// Covariance model requested for an experiment; the per-trial snapshot
/// seeds are derived inside the harness.
struct ModeSpec {
  bool exact = true;
  int n_snapshots = 0;

  static ModeSpec make_exact() { return {}; }
  static ModeSpec make_estimated(int n) { return {false, n}; }
  std::string str() const {
    return exact ? "exact" : "estimated:" + std::to_string(n_snapshots);
  }
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kSinrVsSnr;
  NetworkConfig base;
  std::vector<double> x_grid;  // SNR grid in dB, or integral M values
  std::vector<Algorithm> algorithms = {Algorithm::kNone, Algorithm::kRrrs,
                                       Algorithm::kResrs, Algorithm::kRgsrs};
  int trials = 500;
  long long bits = 100000;  // BER experiments
  int n_coh = 100;          // symbols per channel realization (block fading)
  int n_select = 3;         // subset size for the random-selection algorithm
  ModeSpec mode;
  std::uint64_t master_seed = 1;
  int threads = 1;

  /// Hard violations throw ValidationError naming the key; returns soft
  /// warnings.
  std::vector<std::string> validate() const;
};

struct AlgorithmSeries {
  Algorithm algorithm = Algorithm::kNone;
  std::vector<double> mean;    // SINR in dB of the linear trial mean, or BER
  std::vector<double> stderr_; // same units as mean
  std::vector<double> mean_solver_calls;  // per x-point
  int max_solver_calls = 0;
};

struct ExperimentCurve {
  std::vector<double> x;
  std::vector<AlgorithmSeries> series;
  long long degenerate_redraws = 0;
};

/// Two-hop transmission of one symbol block: per symbol time the relays
/// receive F s + nu, forward with the solution's weights, and the
/// destination adds its own noise. symbols is T x K with +/-1 entries,
/// column 0 the desired source.
ComplexVector transmit_block(const ChannelRealization& ch,
                             const BeamformingSolution& sol,
                             const RealVector& source_power,
                             const RealMatrix& symbols, RandomStream& rng);

/// Effective desired-signal coefficient sqrt(P_1) sum_m w_m g_m f_{m,1}.
Complex effective_channel(const ChannelRealization& ch,
                          const ComplexVector& w_tilde,
                          const RealVector& source_power);

/// Coherent BPSK decision: 0 for +1, 1 for -1. h_eff must be nonzero.
int detect_bpsk(Complex z, Complex h_eff);

ExperimentCurve run_sinr_vs_snr(const ExperimentSpec& spec);
ExperimentCurve run_sinr_vs_m(const ExperimentSpec& spec);
ExperimentCurve run_ber_vs_snr(const ExperimentSpec& spec);

/// Dispatches on spec.kind.
ExperimentCurve run(const ExperimentSpec& spec);

}  // namespace relaybf
