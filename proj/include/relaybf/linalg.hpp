// Copyright (c) 2026 relaybf developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "relaybf/types.hpp"

namespace relaybf {

/// max|A - A^H| <= tol * max|A|.
bool is_hermitian(const ComplexMatrix& a, double tol = 1e-12);

/// Element-wise (Schur) product. Lengths must match.
ComplexVector hadamard(const ComplexVector& a, const ComplexVector& b);

/// outer(a, b)(i, j) = a_i * conj(b_j). outer(a, a) is Hermitian PSD.
ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b);

/// Lower-triangular factor with real positive diagonal, L L^H = A.
struct CholeskyFactor {
  ComplexMatrix l;
  Index size() const { return l.rows(); }
};

/// Factorizes a Hermitian positive-definite matrix. A pivot at or below
/// 1e-14 * max diagonal raises NotPositiveDefiniteError; in this library
/// that signals a non-positive noise variance or corrupted covariances.
CholeskyFactor cholesky(const ComplexMatrix& a);

/// Solves (L L^H) x = b by forward/back substitution.
ComplexVector solve(const CholeskyFactor& f, const ComplexVector& b);
ComplexMatrix solve(const CholeskyFactor& f, const ComplexMatrix& b);

struct EigenPair {
  double value = 0.0;     // real, >= 0 for the pencils handled here
  ComplexVector vector;   // unit norm, largest-magnitude entry real positive
  int iterations = 0;
};

/// Dominant eigenpair of E = A^{-1} B for Hermitian PD A (given as its
/// Cholesky factor) and Hermitian PSD B.
///
/// E itself is not Hermitian, but C = L^{-1} B L^{-H} is and shares E's
/// spectrum, so the iteration runs on C and maps the eigenvector back
/// through L^{-H}. Power iteration starts from the normalized all-ones
/// vector and stops when the Rayleigh quotient's relative change falls
/// below `tol`; a converged quotient below the largest diagonal entry of C
/// (a lower bound on the true maximum) means the start vector was deficient
/// and triggers one deterministic restart with +1e-6 on the first
/// coordinate. A few inverse-iteration steps then push the residual to
/// machine level independently of the eigenvalue gap.
EigenPair dominant_eigenpair(const CholeskyFactor& a_factor,
                             const ComplexMatrix& b, double tol = 1e-12,
                             int max_iter = 10000);

/// Rank-one fast path for B = u u^H: value = u^H A^{-1} u and vector
/// proportional to A^{-1} u, both closed-form (no iteration).
EigenPair dominant_eigenpair(const CholeskyFactor& a_factor,
                             const ComplexVector& u);

/// Rotates v so its largest-magnitude entry is real positive.
ComplexVector fix_phase(ComplexVector v);

}  // namespace relaybf
