#include "gesp/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gesp/errors.hpp"
#include "gesp/numerics.hpp"

namespace gesp {

namespace {

// Each iteration applies (M + sigma I)^(2^kSquarings).
constexpr int kSquarings = 5;

ComplexVec multiply(const CMatrix& a, std::span<const Complex> v) {
  ComplexVec out(a.rows(), Complex{0.0, 0.0});
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto row = a.row(r);
    Complex acc{0.0, 0.0};
    for (std::size_t c = 0; c < a.cols(); ++c) acc += row[c] * v[c];
    out[r] = acc;
  }
  return out;
}

CMatrix square_hermitian(const CMatrix& a) {
  const std::size_t d = a.rows();
  CMatrix out(d, d);
  for (std::size_t u = 0; u < d; ++u) {
    for (std::size_t v = u; v < d; ++v) {
      Complex acc{0.0, 0.0};
      for (std::size_t w = 0; w < d; ++w) acc += a(u, w) * a(w, v);
      out(u, v) = acc;
    }
  }
  double scale = 0.0;
  for (std::size_t u = 0; u < d; ++u) {
    out(u, u) = Complex{out(u, u).real(), 0.0};
    for (std::size_t v = u + 1; v < d; ++v) out(v, u) = std::conj(out(u, v));
    for (std::size_t v = u; v < d; ++v) scale = std::max(scale, std::abs(out(u, v)));
  }
  if (scale > 0.0) {
    for (Complex& c : out.data()) c /= scale;
  }
  return out;
}

void normalize(ComplexVec& v) {
  const double nv = norm(v);
  for (Complex& c : v) c /= nv;
}

}  // namespace

void canonicalize_phase(std::span<Complex> v) {
  std::size_t best = 0;
  double best_mod = -1.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double mod = std::abs(v[j]);
    if (mod > best_mod) {
      best_mod = mod;
      best = j;
    }
  }
  if (best_mod <= 0.0) return;
  const Complex rot = std::conj(v[best]) / best_mod;
  for (Complex& c : v) c *= rot;
  v[best] = Complex{best_mod, 0.0};
}

EigResult max_eigvec(const CMatrix& matrix, const EigOptions& options) {
  const std::size_t d = matrix.rows();
  if (d == 0 || matrix.cols() != d) {
    throw DimensionError("max_eigvec: expected a non-empty square matrix");
  }
  if (!(options.tol > 0.0)) throw InvalidInput("max_eigvec: tol must be positive");
  require_finite(matrix.data(), "max_eigvec");
  const std::size_t max_iter = options.max_iter.value_or(10 * d + 500);

  if (d == 1) {
    return EigResult{matrix(0, 0).real(), ComplexVec{Complex{1.0, 0.0}}, 0, 0.0};
  }

  double sigma = 0.0;
  std::size_t start = 0;
  for (std::size_t u = 0; u < d; ++u) {
    double row_sum = 0.0;
    for (std::size_t v = 0; v < d; ++v) row_sum += std::abs(matrix(u, v));
    sigma = std::max(sigma, row_sum);
    if (matrix(u, u).real() > matrix(start, start).real()) start = u;
  }

  ComplexVec v(d, Complex{1.0, 1.0} * (1e-3 / std::sqrt(2.0 * static_cast<double>(d))));
  v[start] += 1.0;
  normalize(v);
  canonicalize_phase(v);

  if (sigma == 0.0) {
    // zero matrix: every unit vector is an eigenvector of eigenvalue 0
    return EigResult{0.0, v, 0, 0.0};
  }

  CMatrix power = matrix;
  for (std::size_t u = 0; u < d; ++u) power(u, u) += sigma;
  for (int s = 0; s < kSquarings; ++s) power = square_hermitian(power);

  const double floor = 1e3 * std::numeric_limits<double>::epsilon() * sigma;
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    ComplexVec next = multiply(power, v);
    normalize(next);
    canonicalize_phase(next);
    const double change = dist(next, v);
    v = std::move(next);

    const ComplexVec mv = multiply(matrix, v);
    const double tau = inner(v, mv).real();
    double res_sq = 0.0;
    for (std::size_t j = 0; j < d; ++j) res_sq += std::norm(mv[j] - tau * v[j]);
    residual = std::sqrt(res_sq);

    if (residual <= options.tol * std::max(1.0, std::abs(tau)) &&
        (change < options.tol || residual <= floor)) {
      return EigResult{tau, std::move(v), iter, residual};
    }
  }
  throw NonConvergence("max_eigvec: no convergence after " + std::to_string(max_iter) +
                           " iterations (residual " + std::to_string(residual) + ")",
                       std::move(v), residual);
}

}  // namespace gesp
