#pragma once

// Reference implementations used only by tests. Nothing here calls into the
// library's penalty or solver code, so agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// --- hand-rolled generators -------------------------------------------------

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal(double sd = 1.0) { return std::normal_distribution<double>(0.0, sd)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }

  std::vector<double> normals(std::size_t n, double sd = 1.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = normal(sd);
    return v;
  }

  // Sparse spikes over a noise floor: the regime where shrinkage matters.
  std::vector<double> spiky(std::size_t n, double noise_sd, double spike_prob, double spike_amp) {
    std::vector<double> v(n);
    for (auto& x : v) x = normal(noise_sd) + (coin(spike_prob) ? spike_amp * (coin() ? 1 : -1) : 0.0);
    return v;
  }

  // Random binary layout of length len with a one at offset 0.
  std::vector<std::uint8_t> bits(int len, double p = 0.5) {
    std::vector<std::uint8_t> b(len);
    b[0] = 1;
    for (int i = 1; i < len; ++i) b[i] = coin(p) ? 1 : 0;
    return b;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// --- penalties, straight from the tabulated closed forms ---------------------

enum class Fam { Abs, Log, Rat, Atan };

inline double phi(Fam f, double a, double x) {
  const double t = std::fabs(x);
  if (f == Fam::Abs || a == 0.0) return t;
  switch (f) {
    case Fam::Log: return std::log(1.0 + a * t) / a;
    case Fam::Rat: return t / (1.0 + a * t / 2.0);
    case Fam::Atan:
      return 2.0 / (a * std::sqrt(3.0)) *
             (std::atan((1.0 + 2.0 * a * t) / std::sqrt(3.0)) - std::numbers::pi / 6.0);
    default: return t;
  }
}

// First and second derivatives on t > 0.
inline double dphi(Fam f, double a, double t) {
  switch (f) {
    case Fam::Abs: return 1.0;
    case Fam::Log: return 1.0 / (1.0 + a * t);
    case Fam::Rat: return 1.0 / ((1.0 + a * t / 2.0) * (1.0 + a * t / 2.0));
    case Fam::Atan: return 1.0 / (1.0 + a * t + a * a * t * t);
  }
  return 1.0;
}

inline double d2phi(Fam f, double a, double t) {
  switch (f) {
    case Fam::Abs: return 0.0;
    case Fam::Log: return -a / ((1.0 + a * t) * (1.0 + a * t));
    case Fam::Rat: {
      const double s = 1.0 + a * t / 2.0;
      return -a / (s * s * s);
    }
    case Fam::Atan: {
      const double q = 1.0 + a * t + a * a * t * t;
      return -(a + 2.0 * a * a * t) / (q * q);
    }
  }
  return 0.0;
}

// --- classic OGS iteration ------------------------------------------------------
//
// Contiguous groups of size k over x zero-extended outside [0, N), group
// starts 0..N-1. In-place sweep over the support with the same stopping rule
// and support handling as the library solver; written against the all-ones
// special case, so every group sum is a plain window sum.

struct OgsResult {
  std::vector<double> x;
  int iters = 0;
};

inline double ogs_psi(Fam f, double a, double v) {
  const double t = std::fabs(v);
  switch (f) {
    case Fam::Abs: return t;
    case Fam::Log: return t * (1.0 + a * t);
    case Fam::Rat: {
      const double s = 1.0 + a * t / 2.0;
      return t * s * s;
    }
    case Fam::Atan: return t * (1.0 + a * t + a * a * t * t);
  }
  return t;
}

inline OgsResult ogs_reference(const std::vector<double>& y, int k, double lambda, Fam f, double a,
                               int max_iters, double tol, double eps) {
  const long n = static_cast<long>(y.size());
  std::vector<double> x = y;
  std::vector<long> active;
  for (long i = 0; i < n; ++i)
    if (x[i] != 0.0) active.push_back(i);

  auto window = [&](long g) {
    double s = 0.0;
    for (long i = g; i < std::min(g + k, n); ++i) s += x[i] * x[i];
    return std::sqrt(s);
  };

  OgsResult out;
  for (int it = 1; it <= max_iters && !active.empty(); ++it) {
    double prev_max = 0.0;
    for (long i : active) prev_max = std::max(prev_max, std::fabs(x[i]));
    double change = 0.0;
    for (long i : active) {
      double r = 0.0;
      for (long g = i; g > i - k && g >= 0; --g) r += 1.0 / ogs_psi(f, a, window(g));
      const double next = y[i] / (1.0 + lambda * r);
      change = std::max(change, std::fabs(next - x[i]));
      x[i] = next;
    }
    std::vector<long> kept;
    for (long i : active)
      if (std::fabs(x[i]) > eps) kept.push_back(i);
    active.swap(kept);
    out.iters = it;
    if (change / (prev_max + std::numeric_limits<double>::min()) < tol) break;
  }
  out.x.assign(y.size(), 0.0);
  for (long i : active) out.x[i] = x[i];
  return out;
}

// --- dense smoothed-Newton minimizer -------------------------------------------
//
// Minimizes 1/2 |y - x|^2 + lambda * sum_g phi(sqrt(q_g + d^2)) with damped
// Newton on a dense Hessian, driving d from 1e-1 to 1e-10. For a inside the
// convexity bound each smoothed problem is strictly convex, and its
// minimizer tends to that of the nonsmooth objective as d -> 0.

inline std::vector<double> newton_minimize(const std::vector<double>& y,
                                           const std::vector<std::uint8_t>& b, double lambda,
                                           Fam f, double a) {
  const int n = static_cast<int>(y.size());
  std::vector<int> ones;
  for (int k = 0; k < static_cast<int>(b.size()); ++k)
    if (b[k]) ones.push_back(k);

  Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  Eigen::VectorXd x = yv;

  auto members = [&](int g) {
    std::vector<int> idx;
    for (int k : ones)
      if (g + k < n) idx.push_back(g + k);
    return idx;
  };

  for (double d = 1e-1; d >= 1e-10; d /= 10.0) {
    auto value = [&](const Eigen::VectorXd& v) {
      double s = 0.5 * (yv - v).squaredNorm();
      for (int g = 0; g < n; ++g) {
        double q = 0.0;
        for (int i : members(g)) q += v[i] * v[i];
        s += lambda * phi(f, a, std::sqrt(q + d * d));
      }
      return s;
    };
    for (int it = 0; it < 500; ++it) {
      Eigen::VectorXd grad = x - yv;
      Eigen::MatrixXd hess = Eigen::MatrixXd::Identity(n, n);
      for (int g = 0; g < n; ++g) {
        const auto idx = members(g);
        double q = 0.0;
        for (int i : idx) q += x[i] * x[i];
        const double u = std::sqrt(q + d * d);
        const double p1 = dphi(f, a, u);
        const double p2 = d2phi(f, a, u);
        const double c_outer = lambda * (p2 / (u * u) - p1 / (u * u * u));
        for (int i : idx) {
          grad[i] += lambda * p1 * x[i] / u;
          hess(i, i) += lambda * p1 / u;
          for (int j : idx) hess(i, j) += c_outer * x[i] * x[j];
        }
      }
      Eigen::VectorXd step = hess.ldlt().solve(-grad);
      const double decrement = -grad.dot(step);
      if (!(decrement > 1e-28)) break;
      double t = 1.0;
      const double f0 = value(x);
      while (t > 1e-12 && value(x + t * step) > f0 - 0.25 * t * decrement) t *= 0.5;
      x += t * step;
      if (t * step.lpNorm<Eigen::Infinity>() < 1e-15) break;
    }
  }
  return {x.data(), x.data() + n};
}

// Scalar objective 1/2 (y - x)^2 + lambda phi(x), minimized over a grid of
// spacing h. Convex when a < 1/lambda, so a coarse scan brackets the grid
// minimizer and a fine scan around it finds it exactly.
inline double scalar_grid_min(double y, double lambda, Fam f, double a, double h) {
  auto obj = [&](double x) { return 0.5 * (y - x) * (y - x) + lambda * phi(f, a, x); };
  const double lo = std::min(0.0, y);
  const double hi = std::max(0.0, y);
  const double coarse = 1000.0 * h;
  double best = lo;
  for (double x = lo; x <= hi + coarse; x += coarse)
    if (obj(std::min(x, hi)) < obj(best)) best = std::min(x, hi);
  const long steps = static_cast<long>(std::ceil(2.0 * coarse / h));
  const double start = std::max(lo, best - coarse);
  double fine = start;
  for (long i = 0; i <= steps; ++i) {
    const double x = std::min(hi, start + static_cast<double>(i) * h);
    if (obj(x) < obj(fine)) fine = x;
  }
  return fine;
}

inline double soft_threshold(double y, double t) {
  return std::copysign(std::max(std::fabs(y) - t, 0.0), y);
}

}  // namespace oracle
