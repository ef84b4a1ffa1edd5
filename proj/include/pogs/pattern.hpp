#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pogs {

/// Binary group-weight vector b and its derived counts.
///
/// The stored bits never end in a zero: trailing zeros do not touch the
/// objective, so they are trimmed at construction. `k()` keeps the nominal
/// untrimmed length K. Periodic layouts also carry N0, N1 and M; explicit
/// layouts leave them unset.
class GroupPattern {
 public:
  /// Builds the periodic layout [1 x n1, 0 x n0] repeated m times, with the
  /// period rounded to the nearest sample. Requires m >= 2 and n1 < period.
  static GroupPattern periodic(double fs, double fault_freq, int n1, int m);

  /// All-ones group of length k (classic OGS; k = 1 is scalar shrinkage).
  static GroupPattern contiguous(int k);

  /// Arbitrary binary layout. At least one bit must be set.
  static GroupPattern explicit_bits(std::span<const std::uint8_t> bits);

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  /// Offsets k with b_k = 1, ascending.
  std::span<const int> ones() const noexcept { return ones_; }
  /// Stored (trimmed) length.
  int length() const noexcept { return static_cast<int>(bits_.size()); }
  int k() const noexcept { return k_; }
  int k1() const noexcept { return static_cast<int>(ones_.size()); }
  int k0() const noexcept { return k_ - k1(); }
  std::optional<int> n0() const noexcept { return n0_; }
  std::optional<int> n1() const noexcept { return n1_; }
  std::optional<int> m() const noexcept { return m_; }
  bool is_periodic() const noexcept { return m_.has_value() && *m_ >= 2; }

 private:
  GroupPattern(std::vector<std::uint8_t> bits, int k, std::optional<int> n0,
               std::optional<int> n1, std::optional<int> m);

  std::vector<std::uint8_t> bits_;
  std::vector<int> ones_;
  int k_ = 0;
  std::optional<int> n0_;
  std::optional<int> n1_;
  std::optional<int> m_;
};

}  // namespace pogs
