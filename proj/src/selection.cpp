// Copyright (c) 2026 relaybf developers.
// SPDX-License-Identifier: Apache-2.0
#include "relaybf/selection.hpp"

#include <numeric>
#include <string>

namespace relaybf {

namespace {

BeamformingSolution solve_subset(const NetworkConfig& cfg,
                                 const ChannelRealization& ch,
                                 const SelectionMask& mask,
                                 const RealVector& source_power,
                                 const CovarianceMode& mode) {
  return msinr_solve(ch, mask, source_power, cfg.p_t_linear(),
                     cfg.noise_variance, mode);
}

// true when (cand_sinr, cand_mask) should replace the incumbent: higher
// SINR wins, then larger subsets, then lexicographically smaller masks.
bool better(double cand_sinr, const SelectionMask& cand, double best_sinr,
            const SelectionMask& best) {
  if (cand_sinr != best_sinr) return cand_sinr > best_sinr;
  if (cand.count() != best.count()) return cand.count() > best.count();
  return cand.lex_less(best);
}

}  // namespace

SelectionResult rrrs(const NetworkConfig& cfg, const ChannelRealization& ch,
                     int n_select, const RealVector& source_power,
                     RandomStream& rng, const CovarianceMode& mode) {
  const int m = static_cast<int>(ch.relays());
  if (n_select < cfg.m_min || n_select > m) {
    throw DomainError("rrrs: n_select must lie in [m_min, m], got " +
                      std::to_string(n_select));
  }

  // Partial Fisher-Yates over the relay indices.
  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  SelectionMask mask(m);
  for (int i = 0; i < n_select; ++i) {
    const int j = i + static_cast<int>(rng.below(m - i));
    std::swap(idx[i], idx[j]);
    mask.set(idx[i], true);
  }

  SelectionResult res;
  res.mask = mask;
  res.solution = solve_subset(cfg, ch, mask, source_power, mode);
  res.solver_calls = 1;
  res.trace.push_back({0, std::nullopt, res.solution.sinr, true});
  return res;
}

SelectionResult resrs(const NetworkConfig& cfg, const ChannelRealization& ch,
                      const RealVector& source_power,
                      const CovarianceMode& mode) {
  const int m = static_cast<int>(ch.relays());

  SelectionResult res;
  res.solver_calls = 0;
  bool have_best = false;
  double best_sinr = 0.0;

  // All subsets of size >= m_min, visited in popcount order.
  for (int size = cfg.m_min; size <= m; ++size) {
    std::vector<int> comb(size);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
      SelectionMask mask(m);
      for (int i : comb) mask.set(i, true);
      BeamformingSolution sol = solve_subset(cfg, ch, mask, source_power, mode);
      ++res.solver_calls;
      if (!have_best || better(sol.sinr, mask, best_sinr, res.mask)) {
        have_best = true;
        best_sinr = sol.sinr;
        res.mask = mask;
        res.solution = std::move(sol);
      }
      // next combination in lexicographic order
      int i = size - 1;
      while (i >= 0 && comb[i] == m - size + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
    }
  }

  res.trace.push_back({0, std::nullopt, res.solution.sinr, true});
  return res;
}

SelectionResult rgsrs(const NetworkConfig& cfg, const ChannelRealization& ch,
                      const RealVector& source_power,
                      const CovarianceMode& mode) {
  const int m = static_cast<int>(ch.relays());

  SelectionResult res;
  res.mask = SelectionMask::full(m);
  res.solution = solve_subset(cfg, ch, res.mask, source_power, mode);
  res.solver_calls = 1;
  res.trace.push_back({0, std::nullopt, res.solution.sinr, true});

  for (int i = 1; i <= m - cfg.m_min; ++i) {
    // Evaluate every single-relay removal from the current set; the lowest
    // index wins ties.
    bool have_cand = false;
    int cand_removed = -1;
    SelectionMask cand_mask;
    BeamformingSolution cand_sol;
    for (int r = 0; r < m; ++r) {
      if (!res.mask.selected(r)) continue;
      SelectionMask trial = res.mask;
      trial.set(r, false);
      BeamformingSolution sol =
          solve_subset(cfg, ch, trial, source_power, mode);
      ++res.solver_calls;
      if (!have_cand || sol.sinr > cand_sol.sinr) {
        have_cand = true;
        cand_removed = r;
        cand_mask = trial;
        cand_sol = std::move(sol);
      }
    }

    const bool improves = cand_sol.sinr > res.solution.sinr;
    res.trace.push_back({i, cand_removed, cand_sol.sinr, improves});
    if (!improves) break;  // keep the previous set and stop
    res.mask = cand_mask;
    res.solution = std::move(cand_sol);
  }
  return res;
}

}  // namespace relaybf
