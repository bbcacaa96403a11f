#pragma once

#include <cstddef>
#include <string_view>

#include "gesp/eigensolver.hpp"
#include "gesp/gesp_init.hpp"
#include "gesp/measurement.hpp"

namespace gesp {

enum class BaselineKind { esp, diag_two_step, truncated_power };

std::string_view to_string(BaselineKind kind);
BaselineKind parse_baseline_kind(std::string_view name);

/// Single-index exponential spectral pursuit: gesp with p = 1.
InitEstimate esp_init(const MeasurementSet& meas, std::size_t k, const EigOptions& eig = {});

/// Two-step initializer on the quadratic spectrum: S = top-k of its diagonal,
/// z = top eigenvector of its S-block scaled to ||z||^2 = lambda^2.
/// Reports s0 = support = S and p_used = k.
InitEstimate diag_two_step_init(const MeasurementSet& meas, std::size_t k,
                                const EigOptions& eig = {});

/// Truncated power method on the exponential spectrum, started from the
/// two-step direction. Each round keeps the k largest-modulus entries of Z v
/// and renormalizes; stops after `iters` rounds or once successive iterates
/// are within 1e-8 modulo phase. s0 is the two-step support.
InitEstimate truncated_power_init(const MeasurementSet& meas, std::size_t k,
                                  std::size_t iters = 50, const EigOptions& eig = {});

}  // namespace gesp
