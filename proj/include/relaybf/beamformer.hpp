// Copyright (c) 2026 relaybf developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "relaybf/channel.hpp"
#include "relaybf/linalg.hpp"
#include "relaybf/types.hpp"

namespace relaybf {

/// 0/1 relay cooperation vector. Masked relays take no part in the solve
/// and their weights are exactly zero.
class SelectionMask {
 public:
  SelectionMask() = default;
  explicit SelectionMask(Index size) : alpha_(Eigen::ArrayXi::Zero(size)) {}
  static SelectionMask full(Index size) {
    SelectionMask m(size);
    m.alpha_.setOnes();
    return m;
  }

  Index size() const { return alpha_.size(); }
  int count() const { return alpha_.sum(); }
  bool selected(Index i) const { return alpha_[i] != 0; }
  void set(Index i, bool on) { alpha_[i] = on ? 1 : 0; }
  const Eigen::ArrayXi& alpha() const { return alpha_; }

  /// mask ∘ v with exact zeros on unselected entries.
  ComplexVector apply(const ComplexVector& v) const;

  /// Injective 64-bit key (hash chain over entries); keys the snapshot
  /// noise in estimated mode so the same subset always sees the same
  /// covariance estimate within a trial.
  std::uint64_t key() const;

  /// Lexicographic order on the alpha entries, first index most significant.
  bool lex_less(const SelectionMask& other) const;

  friend bool operator==(const SelectionMask& a, const SelectionMask& b) {
    return a.alpha_.size() == b.alpha_.size() && (a.alpha_ == b.alpha_).all();
  }

 private:
  Eigen::ArrayXi alpha_;
};

/// Covariance model used by the solver. Exact mode conditions on the
/// instantaneous CSI (rank-one covariances); estimated mode averages
/// finitely many noisy snapshots, which is the regime where discarding
/// relays can pay off.
struct CovarianceMode {
  enum class Kind { kExact, kEstimated };
  Kind kind = Kind::kExact;
  int n_snapshots = 0;
  std::uint64_t snapshot_seed = 0;

  static CovarianceMode exact() { return {}; }
  static CovarianceMode estimated(int n_snapshots,
                                  std::uint64_t snapshot_seed) {
    if (n_snapshots < 1) {
      throw DomainError("estimated mode: n_snapshots must be >= 1");
    }
    return {Kind::kEstimated, n_snapshots, snapshot_seed};
  }
  bool is_exact() const { return kind == Kind::kExact; }
};

/// R1, the K-1 interferer covariances, Q and the diagonal of D, all in the
/// masked coordinates (rows/columns of unselected relays are exactly zero;
/// D keeps sigma_n^2 on every diagonal entry so it stays full rank).
struct CovarianceSet {
  ComplexMatrix r1;
  std::vector<ComplexMatrix> rk;
  ComplexMatrix q;
  RealVector d;
};

struct BeamformingSolution {
  ComplexVector w_tilde;   // zero exactly on masked relays
  double sinr = 0.0;       // linear, design value P_T * lambda_max(E)
  SelectionMask mask;
  int solver_calls = 1;
};

/// Rank-one covariances conditioned on the instantaneous channels.
CovarianceSet exact_covariances(const ChannelRealization& ch,
                                const SelectionMask& mask,
                                const RealVector& source_power,
                                double sigma_n2);

/// Sample averages over n_snapshots noisy copies of each masked channel
/// vector (per-entry perturbation CN(0, sigma_n^2/n_snapshots), active
/// entries only). D is kept exact.
CovarianceSet estimated_covariances(const ChannelRealization& ch,
                                    const SelectionMask& mask,
                                    const RealVector& source_power,
                                    double sigma_n2, int n_snapshots,
                                    RandomStream& rng);

/// Assembles the maximization pencil: A = sigma_n^2 I + P_T D^{-1/2} (Q +
/// sum R_k) D^{-1/2} returned factored, and B = D^{-1/2} R1 D^{-1/2}.
struct SinrPencil {
  CholeskyFactor a;
  ComplexMatrix b;
};
SinrPencil build_e(const CovarianceSet& cov, double p_t, double sigma_n2);

/// Closed-form max-SINR weights for the given relay subset:
/// w = sqrt(P_T) D^{-1/2} v with v the principal eigenvector of A^{-1} B,
/// and design SINR = P_T * lambda_max. Exact mode takes the rank-one fast
/// path; estimated mode runs the whitened power iteration.
BeamformingSolution msinr_solve(const ChannelRealization& ch,
                                const SelectionMask& mask,
                                const RealVector& source_power, double p_t,
                                double sigma_n2, const CovarianceMode& mode);

/// Instantaneous output SINR of arbitrary weights, evaluated directly from
/// the channel realization (no eigensolver involved). Serves as the
/// independent check of the closed form and as the true-performance metric
/// for weights designed from estimated covariances.
double evaluate_sinr(const ChannelRealization& ch,
                     const ComplexVector& w_tilde,
                     const RealVector& source_power, double sigma_n2,
                     const SelectionMask& mask);

}  // namespace relaybf
