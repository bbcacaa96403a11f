#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "gesp/types.hpp"

namespace gesp {

struct EigOptions {
  double tol = 1e-10;
  /// Defaults to 10 d + 500 for a d x d matrix.
  std::optional<std::size_t> max_iter;
};

struct EigResult {
  double eigenvalue = 0.0;
  ComplexVec eigenvector;  // unit norm, phase-canonical
  std::size_t iterations = 0;
  double residual = 0.0;  // ||M v - eigenvalue v||
};

/// Rotates v by a global phase so its largest-modulus entry (smallest index on
/// ties) is real and non-negative.
void canonicalize_phase(std::span<Complex> v);

/// Eigenpair of the largest algebraic eigenvalue of a Hermitian matrix.
///
/// Power iteration on the shifted matrix M + sigma I, where sigma is the
/// Gershgorin bound max_u sum_v |M_uv|. The shift moves the spectrum into
/// [0, 2 sigma] so the top algebraic eigenvalue is also the dominant one. The
/// shifted matrix is raised to a fixed power by repeated squaring and the
/// iteration runs on that power, which keeps the iteration count small when
/// the relative gap after shifting is narrow.
///
/// Stops once ||M v - tau v|| <= tol max(1, |tau|) and either successive
/// phase-aligned iterates differ by less than tol or the residual has reached
/// rounding level (the top eigenvalue is numerically repeated).
///
/// Throws NonConvergence (carrying the last iterate) after max_iter products.
EigResult max_eigvec(const CMatrix& matrix, const EigOptions& options = {});

}  // namespace gesp
