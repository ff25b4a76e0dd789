// Copyright (c) 2026 relaybf developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "relaybf/beamformer.hpp"

namespace relaybf {

struct IterationRecord {
  int iteration = 0;
  std::optional<int> candidate_removed;  // relay index, empty for baseline
  double sinr = 0.0;
  bool accepted = false;
};

struct SelectionResult {
  SelectionMask mask;
  BeamformingSolution solution;
  int solver_calls = 0;  // total msinr_solve invocations
  std::vector<IterationRecord> trace;
};

/// Random selection: exactly n_select relays drawn uniformly without
/// replacement, then a single weight solve.
SelectionResult rrrs(const NetworkConfig& cfg, const ChannelRealization& ch,
                     int n_select, const RealVector& source_power,
                     RandomStream& rng, const CovarianceMode& mode);

/// Exhaustive search over every subset of size m_min..m. Ties break toward
/// larger subsets, then the lexicographically smallest mask. Solver calls
/// equal the binomial sum over those sizes.
SelectionResult resrs(const NetworkConfig& cfg, const ChannelRealization& ch,
                      const RealVector& source_power,
                      const CovarianceMode& mode);

/// Greedy backward elimination: starting from the full set, each iteration
/// solves once per active relay with that relay disabled, keeps the best,
/// and stops as soon as the best single removal no longer improves the
/// SINR (or m_min is reached). Removal ties break toward the lowest relay
/// index. Selection-stage solves after i iterations total i(2M-i+1)/2.
SelectionResult rgsrs(const NetworkConfig& cfg, const ChannelRealization& ch,
                      const RealVector& source_power,
                      const CovarianceMode& mode);

}  // namespace relaybf
