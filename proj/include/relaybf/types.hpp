// Copyright (c) 2026 relaybf developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace relaybf {

inline constexpr const char* kVersion = "0.1.0";

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible.
struct DimensionError : Error {
  using Error::Error;
};

/// A scalar argument is outside its mathematical domain (d <= 0, n < 1, ...).
struct DomainError : Error {
  using Error::Error;
};

/// A configuration value violates a documented invariant.
struct ValidationError : Error {
  using Error::Error;
};

/// Cholesky factorization hit a non-positive pivot.
struct NotPositiveDefiniteError : Error {
  using Error::Error;
};

/// An iteration failed to reach its tolerance; carries the last iterate.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& what, double last_value_, int iterations_)
      : Error(what), last_value(last_value_), iterations(iterations_) {}
  double last_value;
  int iterations;
};

/// A caller broke a documented call contract (e.g. weight on a masked relay).
struct ContractViolationError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace relaybf
