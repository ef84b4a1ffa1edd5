#include "pogs/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "pogs/error.hpp"

namespace pogs {

TransientLabels::TransientLabels(std::vector<Interval> intervals, long n_samples)
    : intervals_(std::move(intervals)), n_samples_(n_samples) {
  if (n_samples_ < 0) throw Error(Errc::domain, "labels: n_samples must be >= 0");
  long prev_end = 0;
  for (const Interval& iv : intervals_) {
    if (iv.start < prev_end || iv.end <= iv.start || iv.end > n_samples_)
      throw Error(Errc::domain, "labels: intervals must be sorted, disjoint, non-empty and in range");
    prev_end = iv.end;
  }
}

std::vector<std::uint8_t> TransientLabels::mask() const {
  std::vector<std::uint8_t> m(n_samples_, 0);
  for (const Interval& iv : intervals_) std::fill(m.begin() + iv.start, m.begin() + iv.end, 1);
  return m;
}

long TransientLabels::positive_count() const noexcept {
  long total = 0;
  for (const Interval& iv : intervals_) total += iv.end - iv.start;
  return total;
}

double rmse(std::span<const double> x, std::span<const double> ref) {
  if (x.size() != ref.size()) throw Error(Errc::domain, "rmse: length mismatch");
  if (x.empty()) throw Error(Errc::domain, "rmse: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - ref[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(x.size()));
}

std::vector<std::uint8_t> relabel(std::span<const std::uint8_t> detected,
                                  const TransientLabels& labels) {
  if (static_cast<long>(detected.size()) != labels.n_samples())
    throw Error(Errc::domain, "relabel: mask length differs from labels");
  std::vector<std::uint8_t> out(detected.begin(), detected.end());
  for (const Interval& iv : labels.intervals()) {
    const bool hit = std::any_of(out.begin() + iv.start, out.begin() + iv.end,
                                 [](std::uint8_t v) { return v != 0; });
    if (hit) std::fill(out.begin() + iv.start, out.begin() + iv.end, 1);
  }
  return out;
}

RocCurve roc(std::span<const double> x, const TransientLabels& labels, int n_thresholds) {
  if (static_cast<long>(x.size()) != labels.n_samples())
    throw Error(Errc::domain, "roc: estimate length differs from labels");
  if (n_thresholds < 2) throw Error(Errc::domain, "roc: need at least 2 thresholds");
  const long positives = labels.positive_count();
  const long negatives = labels.n_samples() - positives;
  if (positives == 0 || negatives == 0)
    throw Error(Errc::domain, "roc: labels need both positive and negative samples");

  const std::vector<std::uint8_t> truth = labels.mask();
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::fabs(v));

  RocCurve curve;
  curve.points.reserve(n_thresholds);
  curve.thresholds.reserve(n_thresholds);
  std::vector<std::uint8_t> detected(x.size());
  for (int i = 0; i < n_thresholds; ++i) {
    const double t =
        i == n_thresholds - 1 ? 0.0 : peak * (1.0 - static_cast<double>(i) / (n_thresholds - 1));
    for (std::size_t n = 0; n < x.size(); ++n) detected[n] = std::fabs(x[n]) > t ? 1 : 0;
    const std::vector<std::uint8_t> marked = relabel(detected, labels);
    long tp = 0;
    long fp = 0;
    for (std::size_t n = 0; n < x.size(); ++n) {
      if (!marked[n]) continue;
      if (truth[n]) ++tp;
      else ++fp;
    }
    curve.thresholds.push_back(t);
    curve.points.push_back({static_cast<double>(fp) / negatives, static_cast<double>(tp) / positives});
  }

  double area = 0.0;
  RocPoint prev{0.0, 0.0};
  auto accumulate = [&](RocPoint p) {
    area += (p.false_alarm - prev.false_alarm) * 0.5 * (p.detection + prev.detection);
    prev = p;
  };
  for (const RocPoint& p : curve.points) accumulate(p);
  accumulate({1.0, 1.0});
  curve.auc = std::clamp(area, 0.0, 1.0);
  return curve;
}

}  // namespace pogs
