// Copyright (c) 2026 relaybf developers.
// SPDX-License-Identifier: Apache-2.0
#include "relaybf/beamformer.hpp"

#include <cmath>
#include <string>

namespace relaybf {

ComplexVector SelectionMask::apply(const ComplexVector& v) const {
  if (v.size() != alpha_.size()) {
    throw DimensionError("SelectionMask::apply: length mismatch");
  }
  ComplexVector out = ComplexVector::Zero(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    if (alpha_[i] != 0) out[i] = v[i];
  }
  return out;
}

std::uint64_t SelectionMask::key() const {
  std::uint64_t h = 0x243F6A8885A308D3ull;  // arbitrary non-zero base
  for (Index i = 0; i < alpha_.size(); ++i) {
    h = derive_stream(h, static_cast<std::uint64_t>(alpha_[i] != 0 ? 1 : 0));
  }
  return h;
}

bool SelectionMask::lex_less(const SelectionMask& other) const {
  const Index n = std::min(alpha_.size(), other.alpha_.size());
  for (Index i = 0; i < n; ++i) {
    if (alpha_[i] != other.alpha_[i]) return alpha_[i] < other.alpha_[i];
  }
  return alpha_.size() < other.alpha_.size();
}

namespace {

void check_dims(const ChannelRealization& ch, const SelectionMask& mask,
                const RealVector& source_power) {
  if (mask.size() != ch.relays()) {
    throw DimensionError("covariances: mask length != relay count");
  }
  if (source_power.size() != ch.sources()) {
    throw DimensionError("covariances: power vector length != source count");
  }
}

RealVector d_diagonal(const ChannelRealization& ch, const SelectionMask& mask,
                      const RealVector& source_power, double sigma_n2) {
  const Index m_count = ch.relays();
  RealVector d(m_count);
  for (Index m = 0; m < m_count; ++m) {
    double acc = 0.0;
    if (mask.selected(m)) {
      for (Index k = 0; k < ch.sources(); ++k) {
        acc += source_power[k] * std::norm(ch.f(m, k));
      }
    }
    d[m] = acc + sigma_n2;
  }
  return d;
}

}  // namespace

CovarianceSet exact_covariances(const ChannelRealization& ch,
                                const SelectionMask& mask,
                                const RealVector& source_power,
                                double sigma_n2) {
  check_dims(ch, mask, source_power);
  CovarianceSet cov;
  const ComplexVector h1 = mask.apply(hadamard(ch.f.col(0), ch.g));
  cov.r1 = source_power[0] * outer(h1, h1);
  cov.rk.reserve(static_cast<size_t>(ch.sources() - 1));
  for (Index k = 1; k < ch.sources(); ++k) {
    const ComplexVector hk = mask.apply(hadamard(ch.f.col(k), ch.g));
    cov.rk.push_back(source_power[k] * outer(hk, hk));
  }
  const ComplexVector gm = mask.apply(ch.g);
  cov.q = sigma_n2 * outer(gm, gm);
  cov.d = d_diagonal(ch, mask, source_power, sigma_n2);
  return cov;
}

CovarianceSet estimated_covariances(const ChannelRealization& ch,
                                    const SelectionMask& mask,
                                    const RealVector& source_power,
                                    double sigma_n2, int n_snapshots,
                                    RandomStream& rng) {
  check_dims(ch, mask, source_power);
  if (n_snapshots < 1) {
    throw DomainError("estimated_covariances: n_snapshots must be >= 1");
  }
  const Index m_count = ch.relays();
  const double noise_sd = std::sqrt(sigma_n2 / n_snapshots);

  // Perturb active entries of the power-scaled vector only, average the
  // outer products, symmetrize rounding. In the large-n limit each
  // estimate tends to the exact covariance plus (sigma_n^2/n) I on the
  // support. Draw order (R1, Rk..., Q; snapshots outer, entries inner) is
  // pinned for reproducibility.
  const auto sampled = [&](const ComplexVector& scaled) {
    ComplexMatrix acc = ComplexMatrix::Zero(m_count, m_count);
    ComplexVector snap(m_count);
    for (int s = 0; s < n_snapshots; ++s) {
      for (Index m = 0; m < m_count; ++m) {
        snap[m] = mask.selected(m)
                      ? scaled[m] + noise_sd * rng.complex_normal()
                      : Complex(0.0, 0.0);
      }
      acc += outer(snap, snap);
    }
    acc /= static_cast<double>(n_snapshots);
    return ComplexMatrix(0.5 * (acc + acc.adjoint().eval()));
  };

  CovarianceSet cov;
  cov.r1 = sampled(std::sqrt(source_power[0]) *
                   mask.apply(hadamard(ch.f.col(0), ch.g)));
  cov.rk.reserve(static_cast<size_t>(ch.sources() - 1));
  for (Index k = 1; k < ch.sources(); ++k) {
    cov.rk.push_back(sampled(std::sqrt(source_power[k]) *
                             mask.apply(hadamard(ch.f.col(k), ch.g))));
  }
  cov.q = sampled(std::sqrt(sigma_n2) * mask.apply(ch.g));
  cov.d = d_diagonal(ch, mask, source_power, sigma_n2);
  return cov;
}

SinrPencil build_e(const CovarianceSet& cov, double p_t, double sigma_n2) {
  if (cov.d.size() == 0 || cov.d.minCoeff() <= 0.0) {
    throw DomainError("build_e: D must be positive");
  }
  const RealVector dm12 = cov.d.array().rsqrt();

  ComplexMatrix s = cov.q;
  for (const auto& rk : cov.rk) s += rk;

  ComplexMatrix a = (p_t * dm12.asDiagonal() * s * dm12.asDiagonal());
  a.diagonal().array() += sigma_n2;
  a = 0.5 * (a + a.adjoint().eval());

  ComplexMatrix b = dm12.asDiagonal() * cov.r1 * dm12.asDiagonal();
  b = 0.5 * (b + b.adjoint().eval());
  return SinrPencil{cholesky(a), std::move(b)};
}

BeamformingSolution msinr_solve(const ChannelRealization& ch,
                                const SelectionMask& mask,
                                const RealVector& source_power, double p_t,
                                double sigma_n2, const CovarianceMode& mode) {
  check_dims(ch, mask, source_power);
  if (mask.count() < 1) {
    throw DomainError("msinr_solve: mask must select at least one relay");
  }

  CovarianceSet cov;
  if (mode.is_exact()) {
    cov = exact_covariances(ch, mask, source_power, sigma_n2);
  } else {
    RandomStream rng(mode.snapshot_seed, mask.key());
    cov = estimated_covariances(ch, mask, source_power, sigma_n2,
                                mode.n_snapshots, rng);
  }

  SinrPencil pencil = build_e(cov, p_t, sigma_n2);
  const RealVector dm12 = cov.d.array().rsqrt();

  EigenPair pair;
  if (mode.is_exact()) {
    // R1 is the outer product of the masked desired-signal vector, so the
    // whitened numerator matrix is rank one and the eigenpair is closed
    // form.
    const ComplexVector u =
        std::sqrt(source_power[0]) *
        dm12.cwiseProduct(mask.apply(hadamard(ch.f.col(0), ch.g)));
    pair = dominant_eigenpair(pencil.a, u);
  } else {
    try {
      pair = dominant_eigenpair(pencil.a, pencil.b);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError(
          std::string("msinr_solve: eigensolver failed for a ") +
              std::to_string(mask.count()) + "-relay subset: " + e.what(),
          e.last_value, e.iterations);
    }
  }

  // The eigenvector lies in the masked subspace for any nonzero lambda;
  // project and renormalize anyway so degenerate all-zero-channel inputs
  // still honor the masked-nullity and power contracts.
  ComplexVector v = mask.apply(pair.vector);
  const double vn = v.norm();
  if (vn > 0.0) {
    v /= vn;
  } else {
    for (Index i = 0; i < mask.size(); ++i) {
      if (mask.selected(i)) {
        v[i] = Complex(1.0, 0.0);
        break;
      }
    }
  }

  BeamformingSolution sol;
  sol.w_tilde = std::sqrt(p_t) * dm12.cwiseProduct(v);
  sol.sinr = p_t * pair.value;
  sol.mask = mask;
  sol.solver_calls = 1;
  return sol;
}

double evaluate_sinr(const ChannelRealization& ch,
                     const ComplexVector& w_tilde,
                     const RealVector& source_power, double sigma_n2,
                     const SelectionMask& mask) {
  check_dims(ch, mask, source_power);
  if (w_tilde.size() != mask.size()) {
    throw DimensionError("evaluate_sinr: weight length != mask length");
  }
  for (Index m = 0; m < mask.size(); ++m) {
    if (!mask.selected(m) && w_tilde[m] != Complex(0.0, 0.0)) {
      throw ContractViolationError(
          "evaluate_sinr: nonzero weight on masked relay " +
          std::to_string(m));
    }
  }

  const ComplexVector h1 = mask.apply(hadamard(ch.f.col(0), ch.g));
  const double signal = source_power[0] * std::norm(w_tilde.dot(h1));

  double interference = 0.0;
  for (Index k = 1; k < ch.sources(); ++k) {
    const ComplexVector hk = mask.apply(hadamard(ch.f.col(k), ch.g));
    interference += source_power[k] * std::norm(w_tilde.dot(hk));
  }
  const double relay_noise =
      sigma_n2 * std::norm(w_tilde.dot(mask.apply(ch.g)));

  return signal / (sigma_n2 + interference + relay_noise);
}

}  // namespace relaybf
