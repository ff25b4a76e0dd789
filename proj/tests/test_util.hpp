// Copyright (c) 2026 relaybf developers.
// SPDX-License-Identifier: Apache-2.0
//
// Shared test helpers. The pencil oracle here goes out of its way to stay
// independent of the library's linear algebra: hand-rolled determinant,
// hand-rolled 4x4 solve for the characteristic coefficients, closed-form
// cubic roots, bisection polish on the determinant itself.
#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "relaybf/channel.hpp"
#include "relaybf/rng.hpp"
#include "relaybf/types.hpp"

namespace testutil {

using relaybf::Complex;
using relaybf::ComplexMatrix;
using relaybf::ComplexVector;

inline ComplexMatrix random_complex_matrix(relaybf::RandomStream& rng, int r,
                                           int c) {
  ComplexMatrix m(r, c);
  for (int j = 0; j < c; ++j) {
    for (int i = 0; i < r; ++i) m(i, j) = rng.complex_normal();
  }
  return m;
}

inline ComplexVector random_complex_vector(relaybf::RandomStream& rng, int n) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.complex_normal();
  return v;
}

/// Hermitian positive definite with a ridge keeping it away from singular.
inline ComplexMatrix random_hpd(relaybf::RandomStream& rng, int n,
                                double ridge = 0.5) {
  ComplexMatrix x = random_complex_matrix(rng, n, n);
  ComplexMatrix a = (x * x.adjoint()) / static_cast<double>(n);
  a = 0.5 * (a + a.adjoint().eval());
  a.diagonal().array() += ridge;
  return a;
}

/// Hermitian PSD of the requested rank.
inline ComplexMatrix random_psd(relaybf::RandomStream& rng, int n, int rank) {
  ComplexMatrix y = random_complex_matrix(rng, n, rank);
  ComplexMatrix b = (y * y.adjoint()) / static_cast<double>(rank);
  return 0.5 * (b + b.adjoint().eval());
}

inline Complex det3(const ComplexMatrix& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

// Solves a 4x4 real system by Gaussian elimination with partial pivoting.
inline void solve4(double a[4][5]) {
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    for (int c = 0; c < 5; ++c) std::swap(a[col][c], a[piv][c]);
    for (int r = col + 1; r < 4; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 5; ++c) a[r][c] -= f * a[col][c];
    }
  }
  for (int col = 3; col >= 0; --col) {
    for (int r = 0; r < col; ++r) {
      const double f = a[r][col] / a[col][col];
      a[r][4] -= f * a[col][4];
      a[r][col] = 0.0;
    }
    a[col][4] /= a[col][col];
  }
}

/// Largest root of det(B - lambda A) = 0 for a 3x3 Hermitian pencil with A
/// positive definite and B PSD (all roots real and >= 0).
inline double largest_pencil_root(const ComplexMatrix& a,
                                  const ComplexMatrix& b) {
  const auto p_of = [&](double lam) {
    return std::real(det3(b - lam * a));
  };

  double scale = b.norm() / a.norm();
  if (scale <= 0.0) return 0.0;

  // Fit p through 4 nodes at the eigenvalue scale.
  double sys[4][5];
  for (int j = 0; j < 4; ++j) {
    const double t = scale * j;
    sys[j][0] = 1.0;
    sys[j][1] = t;
    sys[j][2] = t * t;
    sys[j][3] = t * t * t;
    sys[j][4] = p_of(t);
  }
  solve4(sys);
  const double c0 = sys[0][4], c1 = sys[1][4], c2 = sys[2][4],
               c3 = sys[3][4];

  // Monic cubic lam^3 + a2 lam^2 + a1 lam + a0, depressed via lam = t - a2/3.
  const double a2 = c2 / c3, a1 = c1 / c3, a0 = c0 / c3;
  const double shift = -a2 / 3.0;
  const double p = a1 - a2 * a2 / 3.0;
  const double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;

  double root;
  if (p >= -1e-300) {
    // near triple root
    root = shift + std::cbrt(-q);
  } else {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * r);
    arg = std::min(1.0, std::max(-1.0, arg));
    const double theta = std::acos(arg) / 3.0;
    // k = 0 gives the largest of the three real roots
    root = shift + r * std::cos(theta);
  }

  // Bisection polish directly on p(lambda): above the largest root the
  // polynomial has the sign of -det(A) < 0, just below it is positive.
  double lo = root, hi = root;
  const double step0 = std::max(1e-8 * std::max(root, scale), 1e-300);
  bool bracketed = false;
  for (double step = step0; step <= 1e6 * step0; step *= 4.0) {
    lo = root - step;
    hi = root + step;
    if (p_of(lo) > 0.0 && p_of(hi) < 0.0) {
      bracketed = true;
      break;
    }
  }
  if (!bracketed) return root < 0.0 ? 0.0 : root;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (p_of(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double lam = 0.5 * (lo + hi);
  return lam < 0.0 ? 0.0 : lam;
}

/// Hand-built realization with explicit channels; noise variance included.
inline relaybf::ChannelRealization make_realization(const ComplexMatrix& f,
                                                    const ComplexVector& g,
                                                    double noise_variance = 1.0) {
  relaybf::ChannelRealization ch;
  ch.f = f;
  ch.g = g;
  ch.f0 = f;
  ch.g0 = g;
  ch.gamma = 1.0;
  ch.beta = 1.0;
  ch.noise_variance = noise_variance;
  return ch;
}

}  // namespace testutil
