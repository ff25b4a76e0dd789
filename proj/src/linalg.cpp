// Copyright (c) 2026 relaybf developers.
// SPDX-License-Identifier: Apache-2.0
#include "relaybf/linalg.hpp"

#include <cmath>
#include <string>

namespace relaybf {

namespace {

void require_same_size(Index a, Index b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": length mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

void require_finite(const ComplexMatrix& a, const char* op) {
  if (!a.allFinite()) {
    throw DomainError(std::string(op) + ": non-finite entry");
  }
}

}  // namespace

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  const double dev = (a - a.adjoint()).cwiseAbs().maxCoeff();
  return dev <= tol * scale;
}

ComplexVector hadamard(const ComplexVector& a, const ComplexVector& b) {
  require_same_size(a.size(), b.size(), "hadamard");
  return a.cwiseProduct(b);
}

ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) {
  return a * b.adjoint();
}

CholeskyFactor cholesky(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("cholesky: matrix not square");
  }
  require_finite(a, "cholesky");
  if (!is_hermitian(a)) {
    throw DomainError("cholesky: matrix not Hermitian within tolerance");
  }
  const Index n = a.rows();
  const double pivot_floor = 1e-14 * a.diagonal().real().maxCoeff();

  ComplexMatrix l = ComplexMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    double pivot = a(j, j).real();
    for (Index k = 0; k < j; ++k) pivot -= std::norm(l(j, k));
    if (!(pivot > pivot_floor)) {
      throw NotPositiveDefiniteError(
          "cholesky: non-positive pivot at index " + std::to_string(j) +
          " (pivot " + std::to_string(pivot) + ")");
    }
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (Index i = j + 1; i < n; ++i) {
      Complex s = a(i, j);
      for (Index k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return CholeskyFactor{std::move(l)};
}

ComplexVector solve(const CholeskyFactor& f, const ComplexVector& b) {
  require_same_size(f.size(), b.size(), "solve");
  ComplexVector y = f.l.triangularView<Eigen::Lower>().solve(b);
  return f.l.adjoint().triangularView<Eigen::Upper>().solve(y);
}

ComplexMatrix solve(const CholeskyFactor& f, const ComplexMatrix& b) {
  require_same_size(f.size(), b.rows(), "solve");
  ComplexMatrix y = f.l.triangularView<Eigen::Lower>().solve(b);
  return f.l.adjoint().triangularView<Eigen::Upper>().solve(y);
}

ComplexVector fix_phase(ComplexVector v) {
  Index imax = 0;
  double best = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > best) {
      best = m;
      imax = i;
    }
  }
  if (best > 0.0) {
    const Complex rot = std::conj(v[imax]) / best;
    v *= rot;
    v[imax] = Complex(std::abs(v[imax]), 0.0);  // clear rounding in Im
  }
  return v;
}

namespace {

// Maps a whitened eigenvector back to E = A^{-1} B coordinates.
EigenPair finish_pair(const CholeskyFactor& a_factor, double value,
                      const ComplexVector& v_white, int iterations) {
  ComplexVector v =
      a_factor.l.adjoint().triangularView<Eigen::Upper>().solve(v_white);
  const double norm = v.norm();
  if (norm > 0.0) v /= norm;
  return EigenPair{value, fix_phase(std::move(v)), iterations};
}

struct PowerResult {
  double value = 0.0;
  ComplexVector vector;
  int iterations = 0;
  bool converged = false;
};

PowerResult power_iterate(const ComplexMatrix& c, ComplexVector v, double tol,
                          int max_iter, int* spent) {
  PowerResult out;
  double lambda = std::real(v.dot(c * v));
  for (int it = 0; it < max_iter - *spent; ++it) {
    ComplexVector w = c * v;
    const double wn = w.norm();
    if (wn == 0.0) {
      // v is annihilated by C; caller decides whether C itself is zero.
      out.value = 0.0;
      out.vector = std::move(v);
      out.iterations = it;
      out.converged = true;
      *spent += it + 1;
      return out;
    }
    v = w / wn;
    const double next = std::real(v.dot(c * v));
    const double change = std::abs(next - lambda);
    const bool done = change <= tol * std::max(std::abs(next), 1e-300);
    lambda = next;
    if (done) {
      out.value = lambda;
      out.vector = std::move(v);
      out.iterations = it + 1;
      out.converged = true;
      *spent += it + 1;
      return out;
    }
  }
  out.value = lambda;
  out.vector = std::move(v);
  out.iterations = max_iter - *spent;
  out.converged = false;
  *spent = max_iter;
  return out;
}

// Inverse iteration with the converged Rayleigh shift; gap-independent
// residual cleanup. Falls back silently if the shifted matrix is too
// singular to factor, which only happens when the pair is already exact.
void polish(const ComplexMatrix& c, double& lambda, ComplexVector& v,
            double scale) {
  for (int step = 0; step < 3; ++step) {
    const double resid = (c * v - lambda * v).norm();
    if (resid <= 1e-13 * std::max(scale, 1e-300)) break;
    ComplexMatrix shifted = c;
    const double shift = lambda * (1.0 + 1e-14) + 1e-280;
    shifted.diagonal().array() -= shift;
    Eigen::PartialPivLU<ComplexMatrix> lu(shifted);
    ComplexVector w = lu.solve(v);
    const double wn = w.norm();
    if (!w.allFinite() || wn == 0.0) break;
    v = w / wn;
    lambda = std::real(v.dot(c * v));
  }
}

}  // namespace

EigenPair dominant_eigenpair(const CholeskyFactor& a_factor,
                             const ComplexMatrix& b, double tol,
                             int max_iter) {
  require_same_size(a_factor.size(), b.rows(), "dominant_eigenpair");
  if (b.rows() != b.cols()) {
    throw DimensionError("dominant_eigenpair: B not square");
  }
  require_finite(b, "dominant_eigenpair");
  if (!is_hermitian(b, 1e-10)) {
    throw DomainError("dominant_eigenpair: B not Hermitian within tolerance");
  }

  const Index n = b.rows();
  const auto lower = a_factor.l.triangularView<Eigen::Lower>();
  // C = L^{-1} B L^{-H}; two triangular solves, then symmetrize rounding.
  ComplexMatrix x = lower.solve(b);
  ComplexMatrix c = lower.solve(x.adjoint().eval());
  c = 0.5 * (c + c.adjoint().eval());

  const double scale = c.norm();
  if (scale == 0.0) {
    ComplexVector v = ComplexVector::Constant(n, Complex(1.0, 0.0));
    v /= v.norm();
    return finish_pair(a_factor, 0.0, v, 0);
  }

  ComplexVector start = ComplexVector::Constant(n, Complex(1.0, 0.0));
  start /= start.norm();

  int spent = 0;
  PowerResult res = power_iterate(c, start, tol, max_iter, &spent);

  // A converged quotient below max_i C_ii cannot be the dominant value:
  // the diagonal entries are Rayleigh quotients themselves. This is the
  // "stalled" case; restart once from the perturbed start vector.
  const double diag_bound = c.diagonal().real().maxCoeff();
  const double stall_slack = std::max(1e-10, 100.0 * tol);
  const auto stalled = [&](const PowerResult& r) {
    return r.value < diag_bound * (1.0 - stall_slack);
  };
  if (res.converged && stalled(res)) {
    ComplexVector restart = ComplexVector::Constant(n, Complex(1.0, 0.0));
    restart[0] += 1e-6;
    restart /= restart.norm();
    res = power_iterate(c, restart, tol, max_iter, &spent);
    if (res.converged && stalled(res)) {
      throw ConvergenceError(
          "dominant_eigenpair: Rayleigh quotient stalled at " +
              std::to_string(res.value) + " below the diagonal bound " +
              std::to_string(diag_bound),
          res.value, spent);
    }
  }

  if (!res.converged) {
    throw ConvergenceError(
        "dominant_eigenpair: power iteration did not reach tol=" +
            std::to_string(tol) + " within " + std::to_string(max_iter) +
            " iterations (eigenvalue gap too small); last value " +
            std::to_string(res.value),
        res.value, max_iter);
  }

  double lambda = res.value;
  ComplexVector v = res.vector;
  polish(c, lambda, v, scale);
  if (lambda < 0.0 && lambda > -1e-12 * scale) lambda = 0.0;
  return finish_pair(a_factor, lambda, v, res.iterations);
}

EigenPair dominant_eigenpair(const CholeskyFactor& a_factor,
                             const ComplexVector& u) {
  require_same_size(a_factor.size(), u.size(), "dominant_eigenpair");
  ComplexVector ainv_u = solve(a_factor, u);
  const double value = std::real(u.dot(ainv_u));
  const double norm = ainv_u.norm();
  ComplexVector v;
  if (norm > 0.0) {
    v = fix_phase(ainv_u / norm);
  } else {
    v = ComplexVector::Constant(u.size(), Complex(1.0, 0.0));
    v /= v.norm();
    v = fix_phase(std::move(v));
  }
  return EigenPair{value < 0.0 ? 0.0 : value, std::move(v), 0};
}

}  // namespace relaybf
