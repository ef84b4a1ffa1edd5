#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pogs/error.hpp"
#include "pogs/metrics.hpp"
#include "pogs/signalgen.hpp"

using namespace pogs;

namespace {

using Mask = std::vector<std::uint8_t>;

Mask mask_of(std::initializer_list<int> on, int n) {
  Mask m(n, 0);
  for (int i : on) m[i] = 1;
  return m;
}

TransientLabels random_labels(oracle::Gen& g, long n) {
  std::vector<Interval> iv;
  long pos = g.integer(0, 5);
  while (true) {
    const long len = g.integer(1, 6);
    if (pos + len > n - 2) break;
    iv.push_back({pos, pos + len});
    pos += len + g.integer(1, 8);
  }
  if (iv.empty()) iv.push_back({0, 1});
  return TransientLabels(iv, n);
}

}  // namespace

TEST(Rmse, Examples) {
  const std::vector<double> a{1, 2, 3};
  EXPECT_EQ(rmse(a, a), 0.0);
  EXPECT_NEAR(rmse(std::vector<double>{1, 2}, std::vector<double>{1, 4}), std::sqrt(2.0), 1e-15);
  EXPECT_THROW(rmse(a, std::vector<double>{1, 2}), Error);
  EXPECT_THROW(rmse(std::vector<double>{}, std::vector<double>{}), Error);
}

TEST(Rmse, PureNoiseMatchesSigma) {
  const auto s = simulate(SimConfig{});
  EXPECT_NEAR(rmse(s.noisy, s.clean), 2.5, 0.03 * 2.5);
}

TEST(Labels, Validation) {
  EXPECT_THROW(TransientLabels({{3, 2}}, 10), Error);
  EXPECT_THROW(TransientLabels({{0, 11}}, 10), Error);
  EXPECT_THROW(TransientLabels({{-1, 2}}, 10), Error);
  EXPECT_THROW(TransientLabels({{4, 6}, {1, 3}}, 10), Error);
  EXPECT_THROW(TransientLabels({{1, 4}, {3, 6}}, 10), Error);
  const TransientLabels ok({{1, 3}, {5, 6}}, 8);
  EXPECT_EQ(ok.positive_count(), 3);
  EXPECT_EQ(ok.mask(), mask_of({1, 2, 5}, 8));
}

TEST(Relabel, ClassificationRuleFigure) {
  const TransientLabels labels({{0, 2}, {4, 6}}, 8);
  EXPECT_EQ(relabel(mask_of({1, 5}, 8), labels), mask_of({0, 1, 4, 5}, 8));
  EXPECT_EQ(relabel(mask_of({0, 1}, 8), labels), mask_of({0, 1}, 8));
  EXPECT_EQ(relabel(Mask(8, 0), labels), Mask(8, 0));
  EXPECT_EQ(relabel(Mask(8, 1), labels), Mask(8, 1));
  // Detections outside every transient are left alone.
  EXPECT_EQ(relabel(mask_of({3, 7}, 8), labels), mask_of({3, 7}, 8));
}

TEST(Relabel, PropertyIdempotentAndMonotone) {
  oracle::Gen g(51);
  for (int trial = 0; trial < 300; ++trial) {
    const long n = g.integer(4, 120);
    const auto labels = random_labels(g, n);
    Mask d(n);
    for (auto& v : d) v = g.coin(0.15);
    const auto once = relabel(d, labels);
    EXPECT_EQ(relabel(once, labels), once);
    long before = 0, after = 0;
    for (long i = 0; i < n; ++i) {
      before += d[i];
      after += once[i];
      if (d[i]) {
        EXPECT_EQ(once[i], 1);
      }
    }
    EXPECT_GE(after, before);
  }
}

TEST(Roc, PerfectAndDegenerate) {
  const auto s = simulate(SimConfig{});
  const TransientLabels labels(s.transient_intervals, static_cast<long>(s.clean.size()));
  EXPECT_NEAR(roc(s.clean, labels).auc, 1.0, 1e-9);

  const std::vector<double> zeros(s.clean.size(), 0.0);
  const auto flat = roc(zeros, labels);
  EXPECT_NEAR(flat.auc, 0.5, 1e-12);
  for (const auto& p : flat.points) {
    EXPECT_EQ(p.false_alarm, 0.0);
    EXPECT_EQ(p.detection, 0.0);
  }
}

TEST(Roc, Errors) {
  const TransientLabels all({{0, 4}}, 4);
  const std::vector<double> x{1, 2, 3, 4};
  EXPECT_THROW(roc(x, all), Error);
  const TransientLabels some({{0, 2}}, 4);
  EXPECT_THROW(roc(x, some, 1), Error);
  EXPECT_THROW(roc(std::vector<double>{1, 2}, some), Error);
}

TEST(Roc, PropertySweep) {
  oracle::Gen g(52);
  for (int trial = 0; trial < 100; ++trial) {
    const long n = g.integer(8, 200);
    const auto labels = random_labels(g, n);
    std::vector<double> x(n);
    for (auto& v : x) v = g.coin(0.3) ? g.normal(2.0) : 0.0;
    x[labels.intervals()[0].start] = 1.5;  // at least one nonzero sample
    const int k = g.integer(2, 64);
    const auto c = roc(x, labels, k);
    ASSERT_EQ(c.points.size(), static_cast<std::size_t>(k));
    ASSERT_EQ(c.thresholds.size(), static_cast<std::size_t>(k));
    double max_abs = 0.0;
    for (double v : x) max_abs = std::max(max_abs, std::fabs(v));
    EXPECT_EQ(c.thresholds.front(), max_abs);
    EXPECT_EQ(c.thresholds.back(), 0.0);
    EXPECT_EQ(c.points.front().false_alarm, 0.0);
    for (std::size_t i = 1; i < c.points.size(); ++i) {
      EXPECT_LT(c.thresholds[i], c.thresholds[i - 1]);
      EXPECT_GE(c.points[i].false_alarm, c.points[i - 1].false_alarm);
      EXPECT_GE(c.points[i].detection, c.points[i - 1].detection);
    }
    for (const auto& p : c.points) {
      EXPECT_GE(p.false_alarm, 0.0);
      EXPECT_LE(p.false_alarm, 1.0);
      EXPECT_GE(p.detection, 0.0);
      EXPECT_LE(p.detection, 1.0);
    }
    EXPECT_GE(c.auc, 0.0);
    EXPECT_LE(c.auc, 1.0);

    // Nonzero on every transient: everything is detected at threshold 0.
    auto y = x;
    for (const auto& iv : labels.intervals()) y[iv.start] = 0.5;
    EXPECT_EQ(roc(y, labels, k).points.back().detection, 1.0);
  }
}
