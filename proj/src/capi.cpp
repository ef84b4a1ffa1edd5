#include "pogs/pogs.h"

#include <cmath>
#include <new>
#include <string>
#include <vector>

#include "pogs/error.hpp"
#include "pogs/io.hpp"
#include "pogs/metrics.hpp"
#include "pogs/noise.hpp"
#include "pogs/pattern.hpp"
#include "pogs/penalty.hpp"
#include "pogs/signalgen.hpp"
#include "pogs/solver.hpp"
#include "pogs/spectral.hpp"

struct pogs_pattern {
  pogs::GroupPattern value;
};

struct pogs_result {
  pogs::DenoiseResult value;
};

struct pogs_simulation {
  pogs::LabeledSignal value;
  std::vector<pogs_interval> intervals;
};

struct pogs_labels {
  pogs::TransientLabels value;
  std::vector<pogs_interval> intervals;
};

struct pogs_roc {
  pogs::RocCurve value;
  std::vector<double> false_alarm;
  std::vector<double> detection;
};

struct pogs_spectrum {
  pogs::Spectrum value;
};

struct pogs_signal {
  pogs::SignalFile value;
};

namespace {

thread_local std::string g_last_error;

pogs_status to_status(pogs::Errc code) {
  switch (code) {
    case pogs::Errc::domain: return POGS_ERR_DOMAIN;
    case pogs::Errc::invalid_pattern: return POGS_ERR_INVALID_PATTERN;
    case pogs::Errc::out_of_table: return POGS_ERR_OUT_OF_TABLE;
    case pogs::Errc::parse: return POGS_ERR_PARSE;
    case pogs::Errc::missing_metadata: return POGS_ERR_MISSING_METADATA;
    case pogs::Errc::io: return POGS_ERR_IO;
    case pogs::Errc::non_finite: return POGS_ERR_NON_FINITE;
  }
  return POGS_ERR_INTERNAL;
}

pogs_status fail(pogs_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
pogs_status guarded(F&& body) noexcept {
  try {
    g_last_error.clear();
    return body();
  } catch (const pogs::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(POGS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(POGS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(POGS_ERR_INTERNAL, "unknown exception");
  }
}

#define POGS_REQUIRE(ptr)                                                   \
  do {                                                                      \
    if ((ptr) == nullptr) return fail(POGS_ERR_NULL_ARGUMENT, #ptr " is NULL"); \
  } while (0)

pogs::Penalty to_cpp(pogs_penalty p) {
  return {static_cast<pogs::PenaltyFamily>(p.family), p.a};
}

bool valid_family(pogs_penalty_family f) {
  return f >= POGS_PENALTY_ABS && f <= POGS_PENALTY_ATAN;
}

pogs::SolverConfig to_cpp(const pogs_solver_params& p, const pogs::GroupPattern& pattern) {
  if (!valid_family(p.penalty.family)) throw pogs::Error(pogs::Errc::domain, "unknown penalty family");
  pogs::SolverConfig cfg;
  cfg.lambda = p.lambda;
  cfg.penalty = to_cpp(p.penalty);
  cfg.pattern = pattern;
  cfg.max_iters = p.max_iters;
  cfg.tol = p.tol;
  cfg.support_eps = p.support_eps;
  return cfg;
}

pogs::SimConfig to_cpp(const pogs_sim_config& c) {
  pogs::SimConfig s;
  s.fs = c.fs;
  s.duration = c.duration;
  s.fault_freq = c.fault_freq;
  s.first_fault_time = c.first_fault_time;
  s.n_faults = c.n_faults;
  s.transient_len = c.transient_len;
  s.max_components = c.max_components;
  s.noise_sigma = c.noise_sigma;
  s.seed = c.seed;
  return s;
}

std::vector<pogs_interval> to_c(std::span<const pogs::Interval> intervals) {
  std::vector<pogs_interval> out;
  out.reserve(intervals.size());
  for (const auto& iv : intervals) out.push_back({iv.start, iv.end});
  return out;
}

std::span<const double> view(const double* p, size_t n) { return {p, n}; }

pogs_spectrum* wrap(pogs::Spectrum s) { return new pogs_spectrum{std::move(s)}; }

}  // namespace

extern "C" {

const char* pogs_version(void) { return "1.0.0"; }

const char* pogs_status_name(pogs_status status) {
  switch (status) {
    case POGS_OK: return "ok";
    case POGS_ERR_DOMAIN: return "domain error";
    case POGS_ERR_INVALID_PATTERN: return "invalid pattern";
    case POGS_ERR_OUT_OF_TABLE: return "out of table";
    case POGS_ERR_PARSE: return "parse error";
    case POGS_ERR_MISSING_METADATA: return "missing metadata";
    case POGS_ERR_IO: return "I/O error";
    case POGS_ERR_NON_FINITE: return "non-finite input";
    case POGS_ERR_NULL_ARGUMENT: return "null argument";
    case POGS_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case POGS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* pogs_last_error(void) { return g_last_error.c_str(); }

/* penalty */

pogs_status pogs_penalty_family_parse(const char* name, pogs_penalty_family* out) {
  POGS_REQUIRE(name);
  POGS_REQUIRE(out);
  const auto family = pogs::parse_penalty_family(name);
  if (!family) return fail(POGS_ERR_DOMAIN, std::string("unknown penalty '") + name + "'");
  *out = static_cast<pogs_penalty_family>(*family);
  g_last_error.clear();
  return POGS_OK;
}

const char* pogs_penalty_family_name(pogs_penalty_family family) {
  if (!valid_family(family)) return "unknown";
  return pogs::to_string(static_cast<pogs::PenaltyFamily>(family)).data();
}

pogs_status pogs_penalty_phi(pogs_penalty penalty, double x, double* out) {
  POGS_REQUIRE(out);
  return guarded([&] {
    if (!valid_family(penalty.family) || !(penalty.a >= 0.0))
      throw pogs::Error(pogs::Errc::domain, "penalty needs a known family and a >= 0");
    *out = pogs::phi(to_cpp(penalty), x);
    return POGS_OK;
  });
}

pogs_status pogs_penalty_psi(pogs_penalty penalty, double x, double* out) {
  POGS_REQUIRE(out);
  return guarded([&] {
    if (!valid_family(penalty.family) || !(penalty.a >= 0.0))
      throw pogs::Error(pogs::Errc::domain, "penalty needs a known family and a >= 0");
    *out = pogs::psi(to_cpp(penalty), x);
    return POGS_OK;
  });
}

pogs_status pogs_max_noncvx_a(int64_t k1, double lambda, double safety, double* out) {
  POGS_REQUIRE(out);
  return guarded([&] {
    *out = pogs::max_noncvx_a(static_cast<long>(k1), lambda, safety);
    return POGS_OK;
  });
}

/* pattern */

pogs_status pogs_pattern_periodic(double fs, double fault_freq, int32_t n1, int32_t m,
                                  pogs_pattern** out) {
  POGS_REQUIRE(out);
  return guarded([&] {
    *out = new pogs_pattern{pogs::GroupPattern::periodic(fs, fault_freq, n1, m)};
    return POGS_OK;
  });
}

pogs_status pogs_pattern_contiguous(int32_t k, pogs_pattern** out) {
  POGS_REQUIRE(out);
  return guarded([&] {
    *out = new pogs_pattern{pogs::GroupPattern::contiguous(k)};
    return POGS_OK;
  });
}

pogs_status pogs_pattern_explicit(const uint8_t* bits, size_t count, pogs_pattern** out) {
  POGS_REQUIRE(out);
  if (count > 0) POGS_REQUIRE(bits);
  return guarded([&] {
    *out = new pogs_pattern{pogs::GroupPattern::explicit_bits({bits, count})};
    return POGS_OK;
  });
}

void pogs_pattern_free(pogs_pattern* pattern) { delete pattern; }

pogs_status pogs_pattern_get_info(const pogs_pattern* pattern, pogs_pattern_info* out) {
  POGS_REQUIRE(pattern);
  POGS_REQUIRE(out);
  const auto& p = pattern->value;
  out->length = static_cast<size_t>(p.length());
  out->k = p.k();
  out->k1 = p.k1();
  out->periodic = p.is_periodic() ? 1 : 0;
  out->n0 = p.n0().value_or(-1);
  out->n1 = p.n1().value_or(-1);
  out->m = p.m().value_or(-1);
  g_last_error.clear();
  return POGS_OK;
}

pogs_status pogs_pattern_get_bits(const pogs_pattern* pattern, uint8_t* buffer, size_t capacity,
                                  size_t* count) {
  POGS_REQUIRE(pattern);
  POGS_REQUIRE(count);
  const auto bits = pattern->value.bits();
  *count = bits.size();
  if (capacity < bits.size()) return fail(POGS_ERR_BUFFER_TOO_SMALL, "pattern buffer too small");
  if (!bits.empty()) POGS_REQUIRE(buffer);
  std::copy(bits.begin(), bits.end(), buffer);
  g_last_error.clear();
  return POGS_OK;
}

/* solver */

pogs_solver_params pogs_solver_params_default(void) {
  const pogs::SolverConfig d;
  pogs_solver_params p;
  p.lambda = d.lambda;
  p.penalty.family = POGS_PENALTY_ATAN;
  p.penalty.a = 0.0;
  p.max_iters = d.max_iters;
  p.tol = d.tol;
  p.support_eps = d.support_eps;
  return p;
}

pogs_status pogs_convexity_check(const pogs_solver_params* params, const pogs_pattern* pattern,
                                 pogs_convexity* out) {
  POGS_REQUIRE(params);
  POGS_REQUIRE(pattern);
  POGS_REQUIRE(out);
  return guarded([&] {
    *out = static_cast<pogs_convexity>(pogs::convexity_status(to_cpp(*params, pattern->value)));
    return POGS_OK;
  });
}

const char* pogs_convexity_name(pogs_convexity status) {
  if (status < POGS_CONVEXITY_STRICT || status > POGS_CONVEXITY_VIOLATED) return "unknown";
  return pogs::to_string(static_cast<pogs::ConvexityStatus>(status)).data();
}

pogs_status pogs_bnorm(const double* x, size_t n, const pogs_pattern* pattern, int64_t start,
                       double* out) {
  if (n > 0) POGS_REQUIRE(x);
  POGS_REQUIRE(pattern);
  POGS_REQUIRE(out);
  return guarded([&] {
    *out = pogs::bnorm(view(x, n), pattern->value, static_cast<long>(start));
    return POGS_OK;
  });
}

pogs_status pogs_objective(const double* y, const double* x, size_t n, const pogs_pattern* pattern,
                           const pogs_solver_params* params, double* out) {
  if (n > 0) {
    POGS_REQUIRE(y);
    POGS_REQUIRE(x);
  }
  POGS_REQUIRE(pattern);
  POGS_REQUIRE(params);
  POGS_REQUIRE(out);
  return guarded([&] {
    *out = pogs::objective(view(y, n), view(x, n), to_cpp(*params, pattern->value));
    return POGS_OK;
  });
}

pogs_status pogs_denoise(const double* y, size_t n, const pogs_pattern* pattern,
                         const pogs_solver_params* params, pogs_result** out) {
  return pogs_denoise_from(y, y, n, pattern, params, out);
}

pogs_status pogs_denoise_from(const double* y, const double* x0, size_t n,
                              const pogs_pattern* pattern, const pogs_solver_params* params,
                              pogs_result** out) {
  if (n > 0) {
    POGS_REQUIRE(y);
    POGS_REQUIRE(x0);
  }
  POGS_REQUIRE(pattern);
  POGS_REQUIRE(params);
  POGS_REQUIRE(out);
  return guarded([&] {
    const auto cfg = to_cpp(*params, pattern->value);
    *out = new pogs_result{pogs::denoise(view(y, n), cfg, view(x0, n))};
    return POGS_OK;
  });
}

void pogs_result_free(pogs_result* result) { delete result; }
size_t pogs_result_size(const pogs_result* r) { return r ? r->value.x.size() : 0; }
const double* pogs_result_estimate(const pogs_result* r) { return r ? r->value.x.data() : nullptr; }
int32_t pogs_result_iterations(const pogs_result* r) { return r ? r->value.iters : 0; }
int32_t pogs_result_converged(const pogs_result* r) { return r && r->value.converged ? 1 : 0; }
size_t pogs_result_history_size(const pogs_result* r) {
  return r ? r->value.objective_history.size() : 0;
}
const double* pogs_result_history(const pogs_result* r) {
  return r ? r->value.objective_history.data() : nullptr;
}
pogs_convexity pogs_result_convexity(const pogs_result* r) {
  return r ? static_cast<pogs_convexity>(r->value.convexity) : POGS_CONVEXITY_VIOLATED;
}
size_t pogs_result_warning_count(const pogs_result* r) { return r ? r->value.warnings.size() : 0; }
const char* pogs_result_warning(const pogs_result* r, size_t index) {
  if (!r || index >= r->value.warnings.size()) return nullptr;
  return r->value.warnings[index].c_str();
}

/* simulation */

pogs_sim_config pogs_sim_config_default(void) {
  const pogs::SimConfig d;
  pogs_sim_config c;
  c.fs = d.fs;
  c.duration = d.duration;
  c.fault_freq = d.fault_freq;
  c.first_fault_time = d.first_fault_time;
  c.n_faults = d.n_faults;
  c.transient_len = d.transient_len;
  c.max_components = d.max_components;
  c.noise_sigma = d.noise_sigma;
  c.seed = d.seed;
  return c;
}

const char* pogs_sim_rng_name(void) { return pogs::simulation_rng_name().data(); }

pogs_status pogs_simulate(const pogs_sim_config* config, pogs_simulation** out) {
  POGS_REQUIRE(config);
  POGS_REQUIRE(out);
  return guarded([&] {
    auto sim = pogs::simulate(to_cpp(*config));
    auto intervals = to_c(sim.transient_intervals);
    *out = new pogs_simulation{std::move(sim), std::move(intervals)};
    return POGS_OK;
  });
}

void pogs_simulation_free(pogs_simulation* sim) { delete sim; }
size_t pogs_simulation_size(const pogs_simulation* s) { return s ? s->value.clean.size() : 0; }
const double* pogs_simulation_clean(const pogs_simulation* s) {
  return s ? s->value.clean.data() : nullptr;
}
const double* pogs_simulation_noisy(const pogs_simulation* s) {
  return s ? s->value.noisy.data() : nullptr;
}
size_t pogs_simulation_interval_count(const pogs_simulation* s) {
  return s ? s->intervals.size() : 0;
}
const pogs_interval* pogs_simulation_intervals(const pogs_simulation* s) {
  return s ? s->intervals.data() : nullptr;
}

/* noise */

pogs_status pogs_estimate_sigma(const double* y, size_t n, double* out) {
  if (n > 0) POGS_REQUIRE(y);
  POGS_REQUIRE(out);
  return guarded([&] {
    *out = pogs::estimate_sigma(view(y, n));
    return POGS_OK;
  });
}

pogs_status pogs_lambda_multiplier(int32_t m, int32_t n1, double* out) {
  POGS_REQUIRE(out);
  return guarded([&] {
    *out = pogs::lambda_multiplier(m, n1);
    return POGS_OK;
  });
}

pogs_status pogs_lambda_from_table(double sigma, int32_t m, int32_t n1, double* out) {
  POGS_REQUIRE(out);
  return guarded([&] {
    *out = pogs::lambda_from_table(sigma, m, n1);
    return POGS_OK;
  });
}

/* metrics */

pogs_status pogs_labels_create(const pogs_interval* intervals, size_t count, int64_t n_samples,
                               pogs_labels** out) {
  if (count > 0) POGS_REQUIRE(intervals);
  POGS_REQUIRE(out);
  return guarded([&] {
    std::vector<pogs::Interval> ivs;
    ivs.reserve(count);
    for (size_t i = 0; i < count; ++i)
      ivs.push_back({static_cast<long>(intervals[i].start), static_cast<long>(intervals[i].end)});
    pogs::TransientLabels labels(std::move(ivs), static_cast<long>(n_samples));
    auto c = to_c(labels.intervals());
    *out = new pogs_labels{std::move(labels), std::move(c)};
    return POGS_OK;
  });
}

void pogs_labels_free(pogs_labels* labels) { delete labels; }
int64_t pogs_labels_n_samples(const pogs_labels* l) { return l ? l->value.n_samples() : 0; }
size_t pogs_labels_interval_count(const pogs_labels* l) { return l ? l->intervals.size() : 0; }
const pogs_interval* pogs_labels_intervals(const pogs_labels* l) {
  return l ? l->intervals.data() : nullptr;
}

pogs_status pogs_rmse(const double* x, const double* ref, size_t n, double* out) {
  if (n > 0) {
    POGS_REQUIRE(x);
    POGS_REQUIRE(ref);
  }
  POGS_REQUIRE(out);
  return guarded([&] {
    *out = pogs::rmse(view(x, n), view(ref, n));
    return POGS_OK;
  });
}

pogs_status pogs_relabel(const uint8_t* detected, size_t n, const pogs_labels* labels,
                         uint8_t* out) {
  if (n > 0) {
    POGS_REQUIRE(detected);
    POGS_REQUIRE(out);
  }
  POGS_REQUIRE(labels);
  return guarded([&] {
    const auto marked = pogs::relabel({detected, n}, labels->value);
    std::copy(marked.begin(), marked.end(), out);
    return POGS_OK;
  });
}

pogs_status pogs_roc_compute(const double* x, size_t n, const pogs_labels* labels,
                             int32_t n_thresholds, pogs_roc** out) {
  if (n > 0) POGS_REQUIRE(x);
  POGS_REQUIRE(labels);
  POGS_REQUIRE(out);
  return guarded([&] {
    auto curve = pogs::roc(view(x, n), labels->value, n_thresholds);
    std::vector<double> fa;
    std::vector<double> det;
    for (const auto& p : curve.points) {
      fa.push_back(p.false_alarm);
      det.push_back(p.detection);
    }
    *out = new pogs_roc{std::move(curve), std::move(fa), std::move(det)};
    return POGS_OK;
  });
}

void pogs_roc_free(pogs_roc* roc) { delete roc; }
size_t pogs_roc_size(const pogs_roc* r) { return r ? r->value.thresholds.size() : 0; }
const double* pogs_roc_thresholds(const pogs_roc* r) {
  return r ? r->value.thresholds.data() : nullptr;
}
const double* pogs_roc_false_alarm(const pogs_roc* r) { return r ? r->false_alarm.data() : nullptr; }
const double* pogs_roc_detection(const pogs_roc* r) { return r ? r->detection.data() : nullptr; }
double pogs_roc_auc(const pogs_roc* r) { return r ? r->value.auc : std::nan(""); }

/* spectra */

pogs_status pogs_magnitude_spectrum(const double* y, size_t n, double fs, pogs_spectrum** out) {
  if (n > 0) POGS_REQUIRE(y);
  POGS_REQUIRE(out);
  return guarded([&] {
    *out = wrap(pogs::magnitude_spectrum(view(y, n), fs));
    return POGS_OK;
  });
}

pogs_status pogs_envelope_spectrum(const double* y, size_t n, double fs, pogs_spectrum** out) {
  if (n > 0) POGS_REQUIRE(y);
  POGS_REQUIRE(out);
  return guarded([&] {
    *out = wrap(pogs::envelope_spectrum(view(y, n), fs));
    return POGS_OK;
  });
}

void pogs_spectrum_free(pogs_spectrum* spectrum) { delete spectrum; }
size_t pogs_spectrum_size(const pogs_spectrum* s) { return s ? s->value.mags.size() : 0; }
const double* pogs_spectrum_freqs(const pogs_spectrum* s) {
  return s ? s->value.freqs.data() : nullptr;
}
const double* pogs_spectrum_mags(const pogs_spectrum* s) {
  return s ? s->value.mags.data() : nullptr;
}

pogs_status pogs_spectrum_smoothed(const pogs_spectrum* spectrum, int32_t width, double* out) {
  POGS_REQUIRE(spectrum);
  if (!spectrum->value.mags.empty()) POGS_REQUIRE(out);
  return guarded([&] {
    const auto smoothed = pogs::smooth(spectrum->value.mags, width);
    std::copy(smoothed.begin(), smoothed.end(), out);
    return POGS_OK;
  });
}

pogs_status pogs_fault_frequencies(double shaft_freq, const pogs_bearing_orders* orders,
                                   pogs_bearing_orders* out_hz) {
  POGS_REQUIRE(orders);
  POGS_REQUIRE(out_hz);
  return guarded([&] {
    const auto hz =
        pogs::fault_frequencies(shaft_freq, {orders->ftf, orders->bpfo, orders->bpfi, orders->bsf});
    *out_hz = {hz.ftf, hz.bpfo, hz.bpfi, hz.bsf};
    return POGS_OK;
  });
}

/* files */

pogs_status pogs_signal_read(const char* path, double fs_override, pogs_signal** out) {
  POGS_REQUIRE(path);
  POGS_REQUIRE(out);
  return guarded([&] {
    std::optional<double> fs;
    if (fs_override > 0.0) fs = fs_override;
    *out = new pogs_signal{pogs::read_signal(std::filesystem::path(path), fs)};
    return POGS_OK;
  });
}

void pogs_signal_free(pogs_signal* signal) { delete signal; }
size_t pogs_signal_size(const pogs_signal* s) { return s ? s->value.samples.size() : 0; }
const double* pogs_signal_samples(const pogs_signal* s) {
  return s ? s->value.samples.data() : nullptr;
}
double pogs_signal_fs(const pogs_signal* s) { return s ? s->value.fs : std::nan(""); }
const char* pogs_signal_channel(const pogs_signal* s) {
  return s && s->value.channel_name ? s->value.channel_name->c_str() : nullptr;
}

pogs_status pogs_signal_write(const char* path, const double* samples, size_t n, double fs,
                              const char* channel) {
  POGS_REQUIRE(path);
  if (n > 0) POGS_REQUIRE(samples);
  return guarded([&] {
    pogs::SignalFile file;
    file.samples.assign(samples, samples + n);
    file.fs = fs;
    if (channel != nullptr) file.channel_name = channel;
    pogs::write_signal(std::filesystem::path(path), file);
    return POGS_OK;
  });
}

pogs_status pogs_labels_read(const char* path, pogs_labels** out, double* fs) {
  POGS_REQUIRE(path);
  POGS_REQUIRE(out);
  return guarded([&] {
    const auto file = pogs::read_labels(std::filesystem::path(path));
    auto labels = file.labels();
    auto c = to_c(labels.intervals());
    *out = new pogs_labels{std::move(labels), std::move(c)};
    if (fs != nullptr) *fs = file.fs;
    return POGS_OK;
  });
}

pogs_status pogs_labels_write_simulation(const char* path, const pogs_simulation* sim,
                                         const pogs_sim_config* config) {
  POGS_REQUIRE(path);
  POGS_REQUIRE(sim);
  return guarded([&] {
    pogs::LabelsFile file;
    file.intervals = sim->value.transient_intervals;
    file.n_samples = static_cast<long>(sim->value.clean.size());
    file.fs = sim->value.fs;
    if (config != nullptr) {
      file.sim_config = to_cpp(*config);
      file.rng = std::string(pogs::simulation_rng_name());
    }
    pogs::write_labels(std::filesystem::path(path), file);
    return POGS_OK;
  });
}

}  // extern "C"
