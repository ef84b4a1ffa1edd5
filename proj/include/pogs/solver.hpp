#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pogs/pattern.hpp"
#include "pogs/penalty.hpp"

namespace pogs {

/// Where a sits relative to the convexity bound 1 / (K1 lambda).
enum class ConvexityStatus { Strict, Boundary, Violated };

std::string_view to_string(ConvexityStatus status) noexcept;

struct SolverConfig {
  double lambda = 1.0;
  Penalty penalty;
  GroupPattern pattern = GroupPattern::contiguous(1);
  int max_iters = 200;
  double tol = 1e-6;
  double support_eps = 1e-10;

  /// Config with a = safety / (K1 lambda) for the given family (a = 0 for Abs).
  static SolverConfig with_max_nonconvexity(double lambda, PenaltyFamily family,
                                            GroupPattern pattern, double safety = 0.99);
};

/// Throws Error(domain) on lambda <= 0, max_iters < 1, tol <= 0, eps < 0 or a < 0.
void validate(const SolverConfig& cfg);

ConvexityStatus convexity_status(const SolverConfig& cfg) noexcept;

struct DenoiseResult {
  std::vector<double> x;
  int iters = 0;
  /// Objective at the starting point followed by one entry per sweep.
  std::vector<double> objective_history;
  bool converged = false;
  ConvexityStatus convexity = ConvexityStatus::Strict;
  std::vector<std::string> warnings;
};

/// [sum_k b_k x_{n+k}^2]^{1/2}; samples outside [0, N) read as zero.
double bnorm(std::span<const double> x, const GroupPattern& pattern, long n) noexcept;

/// 1/2 ||y - x||^2 + lambda * sum_{n=0}^{N-1} phi(bnorm(x, b, n); a).
double objective(std::span<const double> y, std::span<const double> x, const SolverConfig& cfg);

/// Minimizes the binary-weighted OGS objective by majorization-minimization,
/// starting from x = y.
///
/// Each sweep visits the support S = {n : |x_n| > eps} in index order and
/// updates samples in place with x_n = y_n / (1 + lambda r_n), where
/// r_n = sum_j b_j / psi(bnorm(x, b, n - j)). Samples that leave S are
/// frozen and zeroed in the returned estimate. Iteration stops when the
/// max-norm change relative to max |x| falls below cfg.tol.
///
/// Throws Error(non_finite) if y contains NaN or Inf, Error(domain) on an
/// invalid config or when y is shorter than the stored pattern.
DenoiseResult denoise(std::span<const double> y, const SolverConfig& cfg);

/// Same iteration from a caller-supplied start. The initial support is
/// {n : x0_n != 0}; x0 must be finite and the same length as y.
DenoiseResult denoise(std::span<const double> y, const SolverConfig& cfg,
                      std::span<const double> x0);

}  // namespace pogs
