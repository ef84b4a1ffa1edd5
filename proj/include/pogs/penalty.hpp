#pragma once

#include <optional>
#include <string_view>

namespace pogs {

enum class PenaltyFamily { Abs, Log, Rat, Atan };

/// Sparsity-promoting penalty phi(x; a) with non-convexity parameter a.
///
/// Every family reduces to |x| at a = 0, and Abs ignores a altogether.
/// The MM companion psi(x) = |x| / phi'(|x|) is the denominator of the
/// quadratic majorizer used by the solver.
struct Penalty {
  PenaltyFamily family = PenaltyFamily::Atan;
  double a = 0.0;
};

std::string_view to_string(PenaltyFamily family) noexcept;
std::optional<PenaltyFamily> parse_penalty_family(std::string_view name) noexcept;

double phi(const Penalty& p, double x) noexcept;

/// psi(0) is exactly 0 for every family; callers must never divide by it
/// at a zero argument.
double psi(const Penalty& p, double x) noexcept;

/// Largest a keeping the binary-weighted OGS objective convex, scaled by
/// `safety`: safety / (k1 * lambda). With safety < 1 the bound is strict.
/// Throws Error(domain) for k1 < 1, lambda <= 0 or safety outside (0, 1].
double max_noncvx_a(long k1, double lambda, double safety = 0.99);

}  // namespace pogs
