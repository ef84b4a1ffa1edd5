#include "pogs/penalty.hpp"

#include <cmath>
#include <numbers>

#include "pogs/error.hpp"

namespace pogs {

std::string_view to_string(PenaltyFamily family) noexcept {
  switch (family) {
    case PenaltyFamily::Abs: return "abs";
    case PenaltyFamily::Log: return "log";
    case PenaltyFamily::Rat: return "rat";
    case PenaltyFamily::Atan: return "atan";
  }
  return "unknown";
}

std::optional<PenaltyFamily> parse_penalty_family(std::string_view name) noexcept {
  if (name == "abs") return PenaltyFamily::Abs;
  if (name == "log") return PenaltyFamily::Log;
  if (name == "rat") return PenaltyFamily::Rat;
  if (name == "atan") return PenaltyFamily::Atan;
  return std::nullopt;
}

double phi(const Penalty& p, double x) noexcept {
  const double ax = std::fabs(x);
  const double a = p.a;
  if (p.family == PenaltyFamily::Abs || a == 0.0) return ax;
  switch (p.family) {
    case PenaltyFamily::Log:
      return std::log1p(a * ax) / a;
    case PenaltyFamily::Rat:
      return ax / (1.0 + a * ax / 2.0);
    case PenaltyFamily::Atan:
      // atan((1 + 2a|x|)/sqrt3) - pi/6 rewritten with the atan subtraction
      // identity; the direct form cancels badly for small a|x|.
      return 2.0 / (a * std::numbers::sqrt3) *
             std::atan(std::numbers::sqrt3 * a * ax / (2.0 + a * ax));
    case PenaltyFamily::Abs:
      break;
  }
  return ax;
}

double psi(const Penalty& p, double x) noexcept {
  const double ax = std::fabs(x);
  const double a = p.family == PenaltyFamily::Abs ? 0.0 : p.a;
  switch (p.family) {
    case PenaltyFamily::Abs:
      return ax;
    case PenaltyFamily::Log:
      return ax * (1.0 + a * ax);
    case PenaltyFamily::Rat: {
      // |x| / phi'(|x|). Tabulations that drop the 1/2 here give a weight
      // whose fixed point is not a minimizer of the rat objective.
      const double s = 1.0 + a * ax / 2.0;
      return ax * s * s;
    }
    case PenaltyFamily::Atan:
      return ax * (1.0 + a * ax + a * a * ax * ax);
  }
  return ax;
}

double max_noncvx_a(long k1, double lambda, double safety) {
  if (k1 < 1) throw Error(Errc::domain, "max_noncvx_a: k1 must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw Error(Errc::domain, "max_noncvx_a: lambda must be positive and finite");
  if (!(safety > 0.0 && safety <= 1.0))
    throw Error(Errc::domain, "max_noncvx_a: safety must lie in (0, 1]");
  return safety / (static_cast<double>(k1) * lambda);
}

}  // namespace pogs
