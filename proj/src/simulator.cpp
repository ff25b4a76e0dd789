// Copyright (c) 2026 relaybf developers.
// SPDX-License-Identifier: Apache-2.0
#include "relaybf/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

namespace relaybf {

namespace {

// Substream purposes; part of the reproducibility contract.
constexpr std::uint64_t kPurposeChannel = 1;
constexpr std::uint64_t kPurposeSnapshots = 2;
constexpr std::uint64_t kPurposeRandomSelect = 3;
constexpr std::uint64_t kPurposeBits = 4;
constexpr std::uint64_t kPurposeInterferers = 5;
constexpr std::uint64_t kPurposeNoise = 6;

constexpr int kMaxDegenerateRedraws = 64;

void parallel_for(int n_jobs, int n_threads,
                  const std::function<void(int)>& body) {
  n_threads = std::max(1, std::min(n_threads, n_jobs));
  if (n_threads == 1) {
    for (int j = 0; j < n_jobs; ++j) body(j);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(n_threads);
  const int chunk = (n_jobs + n_threads - 1) / n_threads;
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t] {
      const int lo = t * chunk;
      const int hi = std::min(n_jobs, lo + chunk);
      try {
        for (int j = lo; j < hi; ++j) body(j);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

CovarianceMode trial_mode(const ExperimentSpec& spec, std::uint64_t x_index,
                          std::uint64_t trial_key) {
  if (spec.mode.exact) return CovarianceMode::exact();
  // One snapshot seed per (point, trial); inside the solver the stream is
  // additionally keyed on the mask, so every algorithm evaluating the same
  // subset of the same realization sees the identical estimate.
  const std::uint64_t seed = derive_stream(
      spec.master_seed, kPurposeSnapshots, derive_stream(x_index, trial_key));
  return CovarianceMode::estimated(spec.mode.n_snapshots, seed);
}

NetworkConfig point_config(const ExperimentSpec& spec, double x) {
  NetworkConfig cfg = spec.base;
  switch (spec.kind) {
    case ExperimentKind::kSinrVsSnr:
    case ExperimentKind::kBerVsSnr:
      cfg.snr_db = x;
      break;
    case ExperimentKind::kSinrVsM:
      cfg.m = static_cast<int>(x);
      break;
  }
  return cfg;
}

SelectionResult run_algorithm(Algorithm alg, const ExperimentSpec& spec,
                              const NetworkConfig& cfg,
                              const ChannelRealization& ch,
                              const RealVector& p, const CovarianceMode& mode,
                              std::uint64_t x_index, std::uint64_t trial_key) {
  switch (alg) {
    case Algorithm::kNone: {
      SelectionResult res;
      res.mask = SelectionMask::full(ch.relays());
      res.solution = msinr_solve(ch, res.mask, p, cfg.p_t_linear(),
                                 cfg.noise_variance, mode);
      res.solver_calls = 1;
      res.trace.push_back({0, std::nullopt, res.solution.sinr, true});
      return res;
    }
    case Algorithm::kRrrs: {
      RandomStream rng = substream(spec.master_seed, kPurposeRandomSelect,
                                   x_index, trial_key);
      return rrrs(cfg, ch, spec.n_select, p, rng, mode);
    }
    case Algorithm::kResrs:
      return resrs(cfg, ch, p, mode);
    case Algorithm::kRgsrs:
      return rgsrs(cfg, ch, p, mode);
  }
  throw DomainError("run_algorithm: unknown algorithm");
}

struct SeriesAccumulator {
  // [x][trial] slots written by the workers, reduced in index order
  // afterwards so the result does not depend on the thread count.
  std::vector<std::vector<double>> value;
  std::vector<std::vector<double>> solver_calls;
};

ExperimentCurve reduce_sinr(const ExperimentSpec& spec,
                            std::vector<SeriesAccumulator>& acc) {
  ExperimentCurve curve;
  curve.x = spec.x_grid;
  const int n_x = static_cast<int>(spec.x_grid.size());
  for (size_t a = 0; a < spec.algorithms.size(); ++a) {
    AlgorithmSeries s;
    s.algorithm = spec.algorithms[a];
    for (int ix = 0; ix < n_x; ++ix) {
      const auto& v = acc[a].value[ix];
      const double n = static_cast<double>(v.size());
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= n;
      double var = 0.0;
      for (double x : v) var += (x - mean) * (x - mean);
      var = v.size() > 1 ? var / (n - 1.0) : 0.0;
      const double sem = std::sqrt(var / n);

      // Average in linear scale, report in dB (delta-method stderr).
      s.mean.push_back(10.0 * std::log10(mean));
      s.stderr_.push_back(mean > 0.0 ? 10.0 / std::log(10.0) * sem / mean
                                     : 0.0);

      const auto& calls = acc[a].solver_calls[ix];
      double mc = 0.0;
      for (double c : calls) {
        mc += c;
        s.max_solver_calls =
            std::max(s.max_solver_calls, static_cast<int>(c));
      }
      s.mean_solver_calls.push_back(mc / n);
    }
    curve.series.push_back(std::move(s));
  }
  return curve;
}

ExperimentCurve run_sinr(const ExperimentSpec& spec) {
  spec.validate();
  const int n_x = static_cast<int>(spec.x_grid.size());
  const int n_alg = static_cast<int>(spec.algorithms.size());

  std::vector<SeriesAccumulator> acc(n_alg);
  for (auto& a : acc) {
    a.value.assign(n_x, std::vector<double>(spec.trials, 0.0));
    a.solver_calls.assign(n_x, std::vector<double>(spec.trials, 0.0));
  }

  parallel_for(n_x * spec.trials, spec.threads, [&](int job) {
    const int ix = job / spec.trials;
    const int trial = job % spec.trials;
    const NetworkConfig cfg = point_config(spec, spec.x_grid[ix]);
    const RealVector p = source_powers(cfg);

    RandomStream ch_rng =
        substream(spec.master_seed, kPurposeChannel, ix, trial);
    const ChannelRealization ch = draw_channels(cfg, ch_rng);
    const CovarianceMode mode = trial_mode(spec, ix, trial);

    for (int a = 0; a < n_alg; ++a) {
      SelectionResult res = run_algorithm(spec.algorithms[a], spec, cfg, ch,
                                          p, mode, ix, trial);
      acc[a].value[ix][trial] = evaluate_sinr(ch, res.solution.w_tilde, p,
                                              cfg.noise_variance, res.mask);
      acc[a].solver_calls[ix][trial] = res.solver_calls;
    }
  });

  return reduce_sinr(spec, acc);
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kNone: return "none";
    case Algorithm::kRrrs: return "rrrs";
    case Algorithm::kResrs: return "resrs";
    case Algorithm::kRgsrs: return "rgsrs";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "none") return Algorithm::kNone;
  if (name == "rrrs") return Algorithm::kRrrs;
  if (name == "resrs") return Algorithm::kResrs;
  if (name == "rgsrs") return Algorithm::kRgsrs;
  throw ValidationError("algorithms: unknown algorithm '" + name +
                        "' (expected none|rrrs|resrs|rgsrs)");
}

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kSinrVsSnr: return "sinr_vs_snr";
    case ExperimentKind::kSinrVsM: return "sinr_vs_m";
    case ExperimentKind::kBerVsSnr: return "ber_vs_snr";
  }
  return "?";
}

std::vector<std::string> ExperimentSpec::validate() const {
  std::vector<std::string> warnings = base.validate();
  if (trials < 1) throw ValidationError("trials: must be >= 1");
  if (threads < 1) throw ValidationError("threads: must be >= 1");
  if (x_grid.empty()) throw ValidationError("x_grid: must be nonempty");
  for (size_t i = 1; i < x_grid.size(); ++i) {
    if (!(x_grid[i] > x_grid[i - 1])) {
      throw ValidationError("x_grid: must be strictly increasing");
    }
  }
  if (algorithms.empty()) {
    throw ValidationError("algorithms: must name at least one algorithm");
  }
  if (!mode.exact && mode.n_snapshots < 1) {
    throw ValidationError("mode: estimated n_snapshots must be >= 1");
  }
  if (kind == ExperimentKind::kBerVsSnr) {
    if (bits < 1) throw ValidationError("bits: must be >= 1");
    if (n_coh < 1) throw ValidationError("n_coh: must be >= 1");
  }
  if (kind == ExperimentKind::kSinrVsM) {
    for (double x : x_grid) {
      if (x != std::floor(x)) {
        throw ValidationError("m_grid: entries must be integers");
      }
      if (x < base.m_min) {
        throw ValidationError("m_grid: every M must be >= m_min");
      }
    }
  }
  const bool uses_rrrs =
      std::find(algorithms.begin(), algorithms.end(), Algorithm::kRrrs) !=
      algorithms.end();
  if (uses_rrrs) {
    const int min_m = kind == ExperimentKind::kSinrVsM
                          ? static_cast<int>(x_grid.front())
                          : base.m;
    if (n_select < base.m_min || n_select > min_m) {
      throw ValidationError("n_select: must lie in [m_min, m]");
    }
  }
  return warnings;
}

ComplexVector transmit_block(const ChannelRealization& ch,
                             const BeamformingSolution& sol,
                             const RealVector& source_power,
                             const RealMatrix& symbols, RandomStream& rng) {
  const Index m_count = ch.relays();
  const Index k_count = ch.sources();
  if (symbols.cols() != k_count) {
    throw DimensionError("transmit_block: symbols must have K columns");
  }
  if (sol.w_tilde.size() != m_count) {
    throw DimensionError("transmit_block: weight length != relay count");
  }
  const RealVector amp = source_power.cwiseSqrt();
  const double relay_noise_sd = std::sqrt(ch.noise_variance);

  ComplexVector z(symbols.rows());
  ComplexVector x(m_count);
  for (Index t = 0; t < symbols.rows(); ++t) {
    for (Index m = 0; m < m_count; ++m) {
      Complex acc(0.0, 0.0);
      for (Index k = 0; k < k_count; ++k) {
        acc += amp[k] * symbols(t, k) * ch.f(m, k);
      }
      x[m] = acc + relay_noise_sd * rng.complex_normal();
    }
    Complex received(0.0, 0.0);
    for (Index m = 0; m < m_count; ++m) {
      received += ch.g[m] * sol.w_tilde[m] * x[m];
    }
    z[t] = received + relay_noise_sd * rng.complex_normal();
  }
  return z;
}

Complex effective_channel(const ChannelRealization& ch,
                          const ComplexVector& w_tilde,
                          const RealVector& source_power) {
  Complex h(0.0, 0.0);
  for (Index m = 0; m < ch.relays(); ++m) {
    h += w_tilde[m] * ch.g[m] * ch.f(m, 0);
  }
  return std::sqrt(source_power[0]) * h;
}

int detect_bpsk(Complex z, Complex h_eff) {
  if (h_eff == Complex(0.0, 0.0)) {
    throw DomainError("detect_bpsk: degenerate zero effective channel");
  }
  return std::real(std::conj(h_eff) * z) < 0.0 ? 1 : 0;
}

ExperimentCurve run_sinr_vs_snr(const ExperimentSpec& spec) {
  if (spec.kind != ExperimentKind::kSinrVsSnr) {
    throw ValidationError("kind: expected sinr_vs_snr");
  }
  return run_sinr(spec);
}

ExperimentCurve run_sinr_vs_m(const ExperimentSpec& spec) {
  if (spec.kind != ExperimentKind::kSinrVsM) {
    throw ValidationError("kind: expected sinr_vs_m");
  }
  return run_sinr(spec);
}

ExperimentCurve run_ber_vs_snr(const ExperimentSpec& spec) {
  if (spec.kind != ExperimentKind::kBerVsSnr) {
    throw ValidationError("kind: expected ber_vs_snr");
  }
  spec.validate();

  const int n_x = static_cast<int>(spec.x_grid.size());
  const int n_alg = static_cast<int>(spec.algorithms.size());
  const long long n_blocks = (spec.bits + spec.n_coh - 1) / spec.n_coh;

  // errors[a][ix][block], solver calls likewise; redraw counts per block.
  std::vector<std::vector<std::vector<long long>>> errors(
      n_alg, std::vector<std::vector<long long>>(
                 n_x, std::vector<long long>(n_blocks, 0)));
  std::vector<SeriesAccumulator> acc(n_alg);
  for (auto& a : acc) {
    a.solver_calls.assign(n_x, std::vector<double>(n_blocks, 0.0));
  }
  std::vector<std::vector<long long>> redraws(
      n_x, std::vector<long long>(n_blocks, 0));

  parallel_for(static_cast<int>(n_x * n_blocks), spec.threads, [&](int job) {
    const int ix = job / static_cast<int>(n_blocks);
    const long long block = job % n_blocks;
    const NetworkConfig cfg = point_config(spec, spec.x_grid[ix]);
    const RealVector p = source_powers(cfg);
    const long long first_bit = block * spec.n_coh;
    const int n_sym =
        static_cast<int>(std::min<long long>(spec.n_coh, spec.bits - first_bit));

    for (int attempt = 0;; ++attempt) {
      if (attempt >= kMaxDegenerateRedraws) {
        throw DomainError(
            "run_ber_vs_snr: repeated degenerate realizations (h_eff = 0)");
      }
      const std::uint64_t trial_key =
          derive_stream(static_cast<std::uint64_t>(block), attempt);
      RandomStream ch_rng =
          substream(spec.master_seed, kPurposeChannel, ix, trial_key);
      const ChannelRealization ch = draw_channels(cfg, ch_rng);
      const CovarianceMode mode = trial_mode(spec, ix, trial_key);

      std::vector<SelectionResult> sel;
      sel.reserve(n_alg);
      std::vector<Complex> h_eff(n_alg);
      bool degenerate = false;
      for (int a = 0; a < n_alg; ++a) {
        sel.push_back(run_algorithm(spec.algorithms[a], spec, cfg, ch, p,
                                    mode, ix, trial_key));
        h_eff[a] = effective_channel(ch, sel[a].solution.w_tilde, p);
        if (h_eff[a] == Complex(0.0, 0.0)) degenerate = true;
      }
      if (degenerate) {
        ++redraws[ix][block];
        continue;
      }

      // Shared symbol draws; the desired stream carries the payload bits.
      RandomStream bit_rng =
          substream(spec.master_seed, kPurposeBits, ix, trial_key);
      RandomStream intf_rng =
          substream(spec.master_seed, kPurposeInterferers, ix, trial_key);
      std::vector<int> payload(n_sym);
      RealMatrix symbols(n_sym, cfg.k);
      for (int t = 0; t < n_sym; ++t) {
        payload[t] = static_cast<int>(bit_rng.below(2));
        symbols(t, 0) = payload[t] == 0 ? 1.0 : -1.0;
        for (int k = 1; k < cfg.k; ++k) {
          symbols(t, k) = intf_rng.below(2) == 0 ? 1.0 : -1.0;
        }
      }

      for (int a = 0; a < n_alg; ++a) {
        // Same noise substream for every algorithm: identical channel,
        // symbols and noise, only the weights differ.
        RandomStream noise_rng =
            substream(spec.master_seed, kPurposeNoise, ix, trial_key);
        const ComplexVector z =
            transmit_block(ch, sel[a].solution, p, symbols, noise_rng);
        long long err = 0;
        for (int t = 0; t < n_sym; ++t) {
          err += detect_bpsk(z[t], h_eff[a]) != payload[t];
        }
        errors[a][ix][block] = err;
        acc[a].solver_calls[ix][block] = sel[a].solver_calls;
      }
      break;
    }
  });

  ExperimentCurve curve;
  curve.x = spec.x_grid;
  for (int a = 0; a < n_alg; ++a) {
    AlgorithmSeries s;
    s.algorithm = spec.algorithms[a];
    for (int ix = 0; ix < n_x; ++ix) {
      long long err = 0;
      for (long long b = 0; b < n_blocks; ++b) err += errors[a][ix][b];
      const double ber =
          static_cast<double>(err) / static_cast<double>(spec.bits);
      s.mean.push_back(ber);
      s.stderr_.push_back(
          std::sqrt(ber * (1.0 - ber) / static_cast<double>(spec.bits)));
      double mc = 0.0;
      for (long long b = 0; b < n_blocks; ++b) {
        mc += acc[a].solver_calls[ix][b];
        s.max_solver_calls = std::max(
            s.max_solver_calls, static_cast<int>(acc[a].solver_calls[ix][b]));
      }
      s.mean_solver_calls.push_back(mc / static_cast<double>(n_blocks));
    }
    curve.series.push_back(std::move(s));
  }
  for (int ix = 0; ix < n_x; ++ix) {
    for (long long b = 0; b < n_blocks; ++b) {
      curve.degenerate_redraws += redraws[ix][b];
    }
  }
  return curve;
}

ExperimentCurve run(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::kSinrVsSnr: return run_sinr_vs_snr(spec);
    case ExperimentKind::kSinrVsM: return run_sinr_vs_m(spec);
    case ExperimentKind::kBerVsSnr: return run_ber_vs_snr(spec);
  }
  throw ValidationError("kind: unknown experiment kind");
}

}  // namespace relaybf
