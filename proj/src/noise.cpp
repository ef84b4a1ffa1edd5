#include "pogs/noise.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "pogs/error.hpp"

namespace pogs {

namespace {

// Rows m = 1..4, columns n1 = 1..4.
constexpr std::array<std::array<double, 4>, 4> kLambdaTable{{
    {3.700, 1.700, 1.150, 0.925},
    {1.700, 0.850, 0.625, 0.475},
    {1.150, 0.625, 0.450, 0.375},
    {0.925, 0.475, 0.375, 0.325},
}};

double median_inplace(std::vector<double>& v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace

double median(std::span<const double> y) {
  if (y.empty()) throw Error(Errc::domain, "median of an empty signal");
  std::vector<double> v(y.begin(), y.end());
  return median_inplace(v);
}

double estimate_sigma(std::span<const double> y) {
  if (y.empty()) throw Error(Errc::domain, "estimate_sigma: empty signal");
  const double center = median(y);
  std::vector<double> dev(y.size());
  std::transform(y.begin(), y.end(), dev.begin(),
                 [center](double v) { return std::fabs(v - center); });
  return median_inplace(dev) / 0.6745;
}

double lambda_multiplier(int m, int n1) {
  if (m < 1 || m > 4 || n1 < 1 || n1 > 4) {
    throw Error(Errc::out_of_table, "no lambda multiplier for (m = " + std::to_string(m) +
                                        ", n1 = " + std::to_string(n1) +
                                        "); the table covers 1..4 only, pass lambda explicitly");
  }
  return kLambdaTable[m - 1][n1 - 1];
}

double lambda_from_table(double sigma, int m, int n1) {
  const double r = lambda_multiplier(m, n1);
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw Error(Errc::domain, "lambda_from_table: sigma must be positive");
  return r * sigma;
}

}  // namespace pogs
