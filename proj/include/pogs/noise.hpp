#pragma once

#include <span>

namespace pogs {

/// MAD(y) / 0.6745. The median of an even-length vector is the mean of the
/// two central order statistics. Throws Error(domain) on empty input.
double estimate_sigma(std::span<const double> y);

/// Median of y; same even-length convention. Throws on empty input.
double median(std::span<const double> y);

/// Multiplier r(m, n1) for lambda = r * sigma, defined for m, n1 in 1..4.
/// Throws Error(out_of_table) outside that range.
double lambda_multiplier(int m, int n1);

/// r(m, n1) * sigma. Throws Error(domain) unless sigma > 0.
double lambda_from_table(double sigma, int m, int n1);

}  // namespace pogs
