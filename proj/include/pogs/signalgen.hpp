#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace pogs {

/// Half-open sample range [start, end).
struct Interval {
  long start = 0;
  long end = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Periodic transient train in white Gaussian noise. Defaults reproduce the
/// 1 s, 6400 Hz, 80 Hz benchmark with 50 faults from t = 0.36 s.
struct SimConfig {
  double fs = 6400.0;
  double duration = 1.0;
  double fault_freq = 80.0;
  double first_fault_time = 0.36;
  int n_faults = 50;
  int transient_len = 10;
  int max_components = 10;
  double noise_sigma = 2.5;
  std::uint64_t seed = 0;
};

struct LabeledSignal {
  std::vector<double> clean;
  std::vector<double> noisy;
  double fs = 0.0;
  std::vector<Interval> transient_intervals;
};

/// Identity of the pseudorandom generator used by simulate().
std::string_view simulation_rng_name() noexcept;

void validate(const SimConfig& cfg);

/// Sum of n_faults random multi-sine transients, scaled to unit standard
/// deviation, plus seeded Gaussian noise. Transient j starts at
/// round((first_fault_time + j / fault_freq) * fs).
///
/// Each transient draws U ~ {1..max_components} components with amplitude
/// in [0.5, 1.5], frequency in [0.1 pi, 0.9 pi] rad/sample and phase in
/// [0, 2 pi). Throws Error(domain) if the train overruns the signal or
/// consecutive transients overlap.
LabeledSignal simulate(const SimConfig& cfg);

}  // namespace pogs
