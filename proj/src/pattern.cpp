#include "pogs/pattern.hpp"

#include <cmath>
#include <string>

#include "pogs/error.hpp"

namespace pogs {

GroupPattern::GroupPattern(std::vector<std::uint8_t> bits, int k, std::optional<int> n0,
                           std::optional<int> n1, std::optional<int> m)
    : bits_(std::move(bits)), k_(k), n0_(n0), n1_(n1), m_(m) {
  while (!bits_.empty() && bits_.back() == 0) bits_.pop_back();
  for (int i = 0; i < static_cast<int>(bits_.size()); ++i) {
    if (bits_[i] != 0) ones_.push_back(i);
  }
}

GroupPattern GroupPattern::periodic(double fs, double fault_freq, int n1, int m) {
  if (!(fs > 0.0) || !std::isfinite(fs))
    throw Error(Errc::domain, "periodic pattern: sampling rate must be positive");
  if (!(fault_freq > 0.0) || !std::isfinite(fault_freq))
    throw Error(Errc::domain, "periodic pattern: fault frequency must be positive");
  if (n1 < 1) throw Error(Errc::domain, "periodic pattern: n1 must be >= 1");
  if (m < 2) throw Error(Errc::domain, "periodic pattern: m must be >= 2");

  const double period_real = std::round(fs / fault_freq);
  if (period_real > 1e8)
    throw Error(Errc::domain, "periodic pattern: period exceeds 1e8 samples");
  const int period = static_cast<int>(period_real);
  if (n1 >= period) {
    throw Error(Errc::invalid_pattern,
                "periodic pattern: n1 = " + std::to_string(n1) +
                    " leaves no zeros in a period of " + std::to_string(period) + " samples");
  }
  const int n0 = period - n1;
  std::vector<std::uint8_t> bits;
  bits.reserve(static_cast<std::size_t>(m) * period);
  for (int rep = 0; rep < m; ++rep) {
    bits.insert(bits.end(), n1, 1);
    bits.insert(bits.end(), n0, 0);
  }
  return GroupPattern(std::move(bits), m * period, n0, n1, m);
}

GroupPattern GroupPattern::contiguous(int k) {
  if (k < 1) throw Error(Errc::domain, "contiguous pattern: group size must be >= 1");
  return GroupPattern(std::vector<std::uint8_t>(k, 1), k, 0, k, 1);
}

GroupPattern GroupPattern::explicit_bits(std::span<const std::uint8_t> bits) {
  if (bits.empty()) throw Error(Errc::invalid_pattern, "explicit pattern: no bits given");
  std::vector<std::uint8_t> b;
  b.reserve(bits.size());
  bool any = false;
  for (auto v : bits) {
    if (v > 1) throw Error(Errc::invalid_pattern, "explicit pattern: bits must be 0 or 1");
    any = any || v == 1;
    b.push_back(v);
  }
  if (!any) throw Error(Errc::invalid_pattern, "explicit pattern: at least one bit must be 1");
  const int k = static_cast<int>(b.size());
  return GroupPattern(std::move(b), k, std::nullopt, std::nullopt, std::nullopt);
}

}  // namespace pogs
