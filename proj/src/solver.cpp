#include "pogs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pogs/error.hpp"

namespace pogs {

std::string_view to_string(ConvexityStatus status) noexcept {
  switch (status) {
    case ConvexityStatus::Strict: return "strict";
    case ConvexityStatus::Boundary: return "boundary";
    case ConvexityStatus::Violated: return "violated";
  }
  return "unknown";
}

SolverConfig SolverConfig::with_max_nonconvexity(double lambda, PenaltyFamily family,
                                                 GroupPattern pattern, double safety) {
  SolverConfig cfg;
  cfg.lambda = lambda;
  cfg.penalty.family = family;
  cfg.penalty.a =
      family == PenaltyFamily::Abs ? 0.0 : max_noncvx_a(pattern.k1(), lambda, safety);
  cfg.pattern = std::move(pattern);
  return cfg;
}

void validate(const SolverConfig& cfg) {
  if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda))
    throw Error(Errc::domain, "solver: lambda must be positive and finite");
  if (cfg.max_iters < 1) throw Error(Errc::domain, "solver: max_iters must be >= 1");
  if (!(cfg.tol > 0.0)) throw Error(Errc::domain, "solver: tol must be positive");
  if (!(cfg.support_eps >= 0.0)) throw Error(Errc::domain, "solver: support_eps must be >= 0");
  if (!(cfg.penalty.a >= 0.0) || !std::isfinite(cfg.penalty.a))
    throw Error(Errc::domain, "solver: penalty parameter a must be finite and >= 0");
}

ConvexityStatus convexity_status(const SolverConfig& cfg) noexcept {
  const double a = cfg.penalty.family == PenaltyFamily::Abs ? 0.0 : cfg.penalty.a;
  const double product = a * cfg.pattern.k1() * cfg.lambda;
  if (product < 1.0) return ConvexityStatus::Strict;
  if (product == 1.0) return ConvexityStatus::Boundary;
  return ConvexityStatus::Violated;
}

double bnorm(std::span<const double> x, const GroupPattern& pattern, long n) noexcept {
  const long size = static_cast<long>(x.size());
  double sum = 0.0;
  for (int k : pattern.ones()) {
    const long idx = n + k;
    if (idx < 0) continue;
    if (idx >= size) break;
    sum += x[idx] * x[idx];
  }
  return std::sqrt(sum);
}

namespace {

void check_lengths(std::span<const double> y, const GroupPattern& pattern) {
  if (y.size() < static_cast<std::size_t>(pattern.length())) {
    std::ostringstream msg;
    msg << "signal length " << y.size() << " is shorter than the stored pattern length "
        << pattern.length();
    throw Error(Errc::domain, msg.str());
  }
}

void check_finite(std::span<const double> v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      std::ostringstream msg;
      msg << what << " contains a non-finite value at index " << i;
      throw Error(Errc::non_finite, msg.str());
    }
  }
}

}  // namespace

double objective(std::span<const double> y, std::span<const double> x, const SolverConfig& cfg) {
  if (y.size() != x.size()) throw Error(Errc::domain, "objective: y and x lengths differ");
  check_lengths(y, cfg.pattern);
  double fidelity = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y[i] - x[i];
    fidelity += d * d;
  }
  double reg = 0.0;
  const long n = static_cast<long>(x.size());
  for (long g = 0; g < n; ++g) reg += phi(cfg.penalty, bnorm(x, cfg.pattern, g));
  return 0.5 * fidelity + cfg.lambda * reg;
}

DenoiseResult denoise(std::span<const double> y, const SolverConfig& cfg) {
  return denoise(y, cfg, y);
}

DenoiseResult denoise(std::span<const double> y, const SolverConfig& cfg,
                      std::span<const double> x0) {
  validate(cfg);
  check_finite(y, "input signal");
  check_finite(x0, "initial estimate");
  if (x0.size() != y.size()) throw Error(Errc::domain, "denoise: x0 and y lengths differ");
  check_lengths(y, cfg.pattern);

  DenoiseResult result;
  result.convexity = convexity_status(cfg);
  if (result.convexity == ConvexityStatus::Violated) {
    std::ostringstream msg;
    msg << "a = " << cfg.penalty.a << " exceeds 1/(K1 lambda) = "
        << 1.0 / (cfg.pattern.k1() * cfg.lambda) << "; the objective may be non-convex";
    result.warnings.push_back(msg.str());
  }

  const long size = static_cast<long>(y.size());
  const std::span<const int> ones = cfg.pattern.ones();
  const double lambda = cfg.lambda;
  std::vector<double> x(x0.begin(), x0.end());

  std::vector<long> support;
  for (long n = 0; n < size; ++n) {
    if (x[n] != 0.0) support.push_back(n);
  }
  result.objective_history.push_back(objective(y, x, cfg));
  if (support.empty()) {
    result.converged = true;
    result.x = std::move(x);
    return result;
  }

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    double max_prev = 0.0;
    for (long n : support) max_prev = std::max(max_prev, std::fabs(x[n]));

    double max_change = 0.0;
    for (long n : support) {
      double r = 0.0;
      for (int j : ones) {
        const long g = n - j;
        if (g < 0) break;
        // x_n is in the support, so every group holding it at a one has a
        // positive norm.
        r += 1.0 / psi(cfg.penalty, bnorm(x, cfg.pattern, g));
      }
      const double updated = y[n] / (1.0 + lambda * r);
      max_change = std::max(max_change, std::fabs(updated - x[n]));
      x[n] = updated;
    }
    std::erase_if(support, [&](long n) { return !(std::fabs(x[n]) > cfg.support_eps); });

    result.objective_history.push_back(objective(y, x, cfg));
    result.iters = iter;
    if (max_change / (max_prev + std::numeric_limits<double>::min()) < cfg.tol) {
      result.converged = true;
      break;
    }
    if (support.empty()) {
      result.converged = true;
      break;
    }
  }

  std::vector<double> estimate(y.size(), 0.0);
  for (long n : support) estimate[n] = x[n];
  result.x = std::move(estimate);
  return result;
}

}  // namespace pogs
