#include "pogs/signalgen.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "pogs/error.hpp"

namespace pogs {

std::string_view simulation_rng_name() noexcept {
  return "std::mt19937_64 (libstdc++ uniform_int/uniform_real/normal distributions)";
}

void validate(const SimConfig& cfg) {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(cfg.fs)) throw Error(Errc::domain, "simulate: fs must be positive");
  if (!positive(cfg.duration)) throw Error(Errc::domain, "simulate: duration must be positive");
  if (!positive(cfg.fault_freq))
    throw Error(Errc::domain, "simulate: fault frequency must be positive");
  if (!(cfg.first_fault_time >= 0.0))
    throw Error(Errc::domain, "simulate: first fault time must be >= 0");
  if (cfg.n_faults < 0) throw Error(Errc::domain, "simulate: n_faults must be >= 0");
  if (cfg.transient_len < 1) throw Error(Errc::domain, "simulate: transient_len must be >= 1");
  if (cfg.max_components < 1)
    throw Error(Errc::domain, "simulate: max_components must be >= 1");
  if (!(cfg.noise_sigma >= 0.0) || !std::isfinite(cfg.noise_sigma))
    throw Error(Errc::domain, "simulate: noise_sigma must be finite and >= 0");
  if (cfg.first_fault_time + cfg.n_faults / cfg.fault_freq > cfg.duration + 1e-12)
    throw Error(Errc::domain, "simulate: fault train extends past the signal duration");
}

LabeledSignal simulate(const SimConfig& cfg) {
  validate(cfg);
  const long n_samples = std::lround(cfg.duration * cfg.fs);

  LabeledSignal out;
  out.fs = cfg.fs;
  out.clean.assign(n_samples, 0.0);
  for (int j = 0; j < cfg.n_faults; ++j) {
    const long start = std::lround((cfg.first_fault_time + j / cfg.fault_freq) * cfg.fs);
    const long end = start + cfg.transient_len;
    if (end > n_samples)
      throw Error(Errc::domain, "simulate: transient runs past the end of the signal");
    if (!out.transient_intervals.empty() && start < out.transient_intervals.back().end)
      throw Error(Errc::domain, "simulate: consecutive transients overlap");
    out.transient_intervals.push_back({start, end});
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> n_components(1, cfg.max_components);
  std::uniform_real_distribution<double> amplitude(0.5, 1.5);
  std::uniform_real_distribution<double> omega(0.1 * std::numbers::pi, 0.9 * std::numbers::pi);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  std::vector<double> transient(cfg.transient_len);
  for (const Interval& iv : out.transient_intervals) {
    std::fill(transient.begin(), transient.end(), 0.0);
    const int u = n_components(rng);
    for (int i = 0; i < u; ++i) {
      const double amp = amplitude(rng);
      const double w = omega(rng);
      const double beta = phase(rng);
      for (int n = 0; n < cfg.transient_len; ++n) transient[n] += amp * std::sin(w * n + beta);
    }
    for (int n = 0; n < cfg.transient_len; ++n) out.clean[iv.start + n] = transient[n];
  }

  if (n_samples > 0) {
    double mean = 0.0;
    for (double v : out.clean) mean += v;
    mean /= static_cast<double>(n_samples);
    double var = 0.0;
    for (double v : out.clean) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / static_cast<double>(n_samples));
    if (sd > 0.0) {
      for (double& v : out.clean) v /= sd;
    }
  }

  std::normal_distribution<double> noise(0.0, 1.0);
  out.noisy.resize(n_samples);
  for (long n = 0; n < n_samples; ++n) out.noisy[n] = out.clean[n] + cfg.noise_sigma * noise(rng);
  return out;
}

}  // namespace pogs
