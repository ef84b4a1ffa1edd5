#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pogs/signalgen.hpp"

namespace pogs {

/// Ground-truth transient intervals over a signal of n_samples.
class TransientLabels {
 public:
  /// Throws Error(domain) unless intervals are non-empty ranges, sorted,
  /// disjoint and inside [0, n_samples).
  TransientLabels(std::vector<Interval> intervals, long n_samples);

  std::span<const Interval> intervals() const noexcept { return intervals_; }
  long n_samples() const noexcept { return n_samples_; }
  /// Per-sample ground truth: 1 inside a transient, 0 elsewhere.
  std::vector<std::uint8_t> mask() const;
  long positive_count() const noexcept;

 private:
  std::vector<Interval> intervals_;
  long n_samples_ = 0;
};

struct RocPoint {
  double false_alarm = 0.0;
  double detection = 0.0;
};

struct RocCurve {
  /// One point per threshold, thresholds descending from max|x| to 0.
  std::vector<RocPoint> points;
  std::vector<double> thresholds;
  /// Trapezoid area under the points closed by (0, 0) and (1, 1).
  double auc = 0.0;
};

double rmse(std::span<const double> x, std::span<const double> ref);

/// Any detection inside a ground-truth transient marks the whole transient
/// as detected. Samples outside every transient are left as they are.
std::vector<std::uint8_t> relabel(std::span<const std::uint8_t> detected,
                                  const TransientLabels& labels);

/// Sweeps n_thresholds uniform amplitude thresholds t from max|x| down to 0,
/// detecting {n : |x_n| > t} and relabeling before counting rates.
/// Throws Error(domain) if the labels have no positive or no negative
/// samples, the lengths differ, or n_thresholds < 2.
RocCurve roc(std::span<const double> x, const TransientLabels& labels, int n_thresholds = 256);

}  // namespace pogs
