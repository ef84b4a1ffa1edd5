// pogs command line front end. Talks to the library only through the C API.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pogs/pogs.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;
constexpr int kSchemaVersion = 1;

struct CliFailure {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, std::string message) { throw CliFailure{code, std::move(message)}; }

// Domain errors come from flag values when `domain_code` is kExitUsage and
// from input data otherwise.
void check(pogs_status status, int domain_code = kExitData) {
  if (status == POGS_OK) return;
  int code = 1;
  switch (status) {
    case POGS_ERR_NON_FINITE: code = kExitNumerical; break;
    case POGS_ERR_PARSE:
    case POGS_ERR_IO:
    case POGS_ERR_MISSING_METADATA: code = kExitData; break;
    case POGS_ERR_INVALID_PATTERN:
    case POGS_ERR_OUT_OF_TABLE: code = kExitUsage; break;
    case POGS_ERR_DOMAIN: code = domain_code; break;
    default: code = 1; break;
  }
  fail(code, std::string(pogs_status_name(status)) + ": " + pogs_last_error());
}

template <class T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const noexcept { Free(p); }
};
template <class T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, HandleDeleter<T, Free>>;

using PatternHandle = Handle<pogs_pattern, pogs_pattern_free>;
using ResultHandle = Handle<pogs_result, pogs_result_free>;
using SignalHandle = Handle<pogs_signal, pogs_signal_free>;
using SimHandle = Handle<pogs_simulation, pogs_simulation_free>;
using LabelsHandle = Handle<pogs_labels, pogs_labels_free>;
using RocHandle = Handle<pogs_roc, pogs_roc_free>;
using SpectrumHandle = Handle<pogs_spectrum, pogs_spectrum_free>;

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(kExitData, "cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) fail(kExitData, "failed writing " + path);
}

struct Global {
  bool quiet = false;
  std::string report_path;
  std::vector<std::string> argv;
};

void warn(const Global& g, const std::string& message) {
  if (!g.quiet) std::cerr << "pogs: warning: " << message << "\n";
}

ordered_json new_report(const Global& g, const std::string& command) {
  ordered_json r;
  r["schema_version"] = kSchemaVersion;
  r["command"] = command;
  r["argv"] = g.argv;
  return r;
}

void emit_report(const Global& g, const ordered_json& report) {
  const std::string text = report.dump(2) + "\n";
  if (g.report_path.empty()) {
    std::cout << text;
  } else {
    write_file(g.report_path, text);
  }
}

SignalHandle read_signal(const std::string& path, std::optional<double> fs) {
  pogs_signal* raw = nullptr;
  check(pogs_signal_read(path.c_str(), fs.value_or(0.0), &raw));
  return SignalHandle(raw);
}

std::vector<double> samples_of(const pogs_signal* s) {
  const double* p = pogs_signal_samples(s);
  return std::vector<double>(p, p + pogs_signal_size(s));
}

// ---- pattern flags -------------------------------------------------------

struct PatternFlags {
  std::vector<double> fault_freqs;
  int n1 = 2;
  int m = 4;
  int group_size = 0;
  std::string bits;
};

struct BuiltPattern {
  PatternHandle handle;
  pogs_pattern_info info{};
  std::string mode;
  std::optional<double> fault_freq;
};

std::string pattern_bits(const pogs_pattern* p) {
  size_t count = 0;
  pogs_pattern_get_bits(p, nullptr, 0, &count);
  std::vector<uint8_t> bits(count);
  check(pogs_pattern_get_bits(p, bits.data(), bits.size(), &count));
  std::string s;
  s.reserve(count);
  for (uint8_t b : bits) s += b ? '1' : '0';
  return s;
}

BuiltPattern build_pattern(const PatternFlags& f, std::optional<double> fault_freq, double fs) {
  BuiltPattern out;
  pogs_pattern* raw = nullptr;
  if (fault_freq) {
    check(pogs_pattern_periodic(fs, *fault_freq, f.n1, f.m, &raw), kExitUsage);
    out.mode = "periodic";
    out.fault_freq = fault_freq;
  } else if (f.group_size > 0) {
    check(pogs_pattern_contiguous(f.group_size, &raw), kExitUsage);
    out.mode = "contiguous";
  } else if (!f.bits.empty()) {
    std::vector<uint8_t> bits;
    for (char c : f.bits) {
      if (c != '0' && c != '1') fail(kExitUsage, "--pattern takes a string of 0 and 1");
      bits.push_back(c == '1' ? 1 : 0);
    }
    check(pogs_pattern_explicit(bits.data(), bits.size(), &raw), kExitUsage);
    out.mode = "explicit";
  } else {
    fail(kExitUsage, "choose a pattern: --fault-freq, --group-size or --pattern");
  }
  out.handle.reset(raw);
  check(pogs_pattern_get_info(raw, &out.info));
  return out;
}

ordered_json pattern_json(const BuiltPattern& p, double fs) {
  ordered_json j;
  j["mode"] = p.mode;
  if (p.fault_freq) {
    j["fault_freq_hz"] = *p.fault_freq;
    j["fs_hz"] = fs;
  }
  j["bits"] = pattern_bits(p.handle.get());
  j["stored_length"] = p.info.length;
  j["k"] = p.info.k;
  j["k1"] = p.info.k1;
  j["k0"] = p.info.k - p.info.k1;
  if (p.info.periodic) {
    j["n0"] = p.info.n0;
    j["n1"] = p.info.n1;
    j["m"] = p.info.m;
    j["period_samples"] = p.info.n0 + p.info.n1;
  }
  return j;
}

// ---- solver flags --------------------------------------------------------

struct SolveFlags {
  std::optional<double> lambda;
  bool auto_lambda = false;
  std::optional<double> sigma;
  std::string penalty = "atan";
  std::optional<double> a;
  double safety = 0.99;
  int max_iters = 200;
  double tol = 1e-6;
  double support_eps = 1e-10;
  bool strict = false;
};

struct ResolvedLambda {
  double lambda = 0.0;
  ordered_json provenance;
};

ResolvedLambda resolve_lambda(const SolveFlags& f, const BuiltPattern& pattern,
                              const std::vector<double>& y) {
  ResolvedLambda out;
  if (f.lambda) {
    if (!(*f.lambda > 0.0) || !std::isfinite(*f.lambda))
      fail(kExitUsage, "--lambda must be positive");
    out.lambda = *f.lambda;
    out.provenance = {{"source", "explicit"}};
    return out;
  }
  if (!f.auto_lambda) fail(kExitUsage, "give --lambda or --auto-lambda");
  int m = 0;
  int n1 = 0;
  if (pattern.info.m > 0 && pattern.info.n1 > 0) {
    m = pattern.info.m;
    n1 = pattern.info.n1;
  } else {
    fail(kExitUsage, "--auto-lambda needs a periodic or contiguous pattern; pass --lambda");
  }
  double sigma = 0.0;
  std::string sigma_source;
  if (f.sigma) {
    sigma = *f.sigma;
    sigma_source = "explicit";
  } else {
    check(pogs_estimate_sigma(y.data(), y.size(), &sigma));
    sigma_source = "mad";
  }
  double r = 0.0;
  check(pogs_lambda_multiplier(m, n1, &r), kExitUsage);
  check(pogs_lambda_from_table(sigma, m, n1, &out.lambda), kExitData);
  out.provenance = {{"source", "table"},
                    {"sigma", sigma},
                    {"sigma_source", sigma_source},
                    {"table_m", m},
                    {"table_n1", n1},
                    {"multiplier", r}};
  return out;
}

struct Solved {
  ResultHandle result;
  pogs_solver_params params{};
  ordered_json report;
};

Solved solve(const Global& g, const SolveFlags& f, const BuiltPattern& pattern,
             const std::vector<double>& y, double fs) {
  pogs_penalty_family family{};
  check(pogs_penalty_family_parse(f.penalty.c_str(), &family), kExitUsage);
  const ResolvedLambda lam = resolve_lambda(f, pattern, y);

  Solved out;
  out.params = pogs_solver_params_default();
  out.params.lambda = lam.lambda;
  out.params.penalty.family = family;
  out.params.max_iters = f.max_iters;
  out.params.tol = f.tol;
  out.params.support_eps = f.support_eps;
  std::string a_source;
  if (family == POGS_PENALTY_ABS) {
    out.params.penalty.a = 0.0;
    a_source = "abs";
  } else if (f.a) {
    out.params.penalty.a = *f.a;
    a_source = "explicit";
  } else {
    check(pogs_max_noncvx_a(pattern.info.k1, lam.lambda, f.safety, &out.params.penalty.a),
          kExitUsage);
    a_source = "max_noncvx";
  }
  if (out.params.max_iters < 1 || !(out.params.tol > 0.0) || !(out.params.support_eps >= 0.0) ||
      !(out.params.penalty.a >= 0.0))
    fail(kExitUsage, "invalid solver settings (max-iters >= 1, tol > 0, support-eps >= 0, a >= 0)");

  pogs_result* raw = nullptr;
  check(pogs_denoise(y.data(), y.size(), pattern.handle.get(), &out.params, &raw));
  out.result.reset(raw);
  const pogs_result* r = raw;
  for (size_t i = 0; i < pogs_result_warning_count(r); ++i) warn(g, pogs_result_warning(r, i));

  const double* hist = pogs_result_history(r);
  const size_t hist_n = pogs_result_history_size(r);
  ordered_json params;
  params["lambda"] = lam.lambda;
  params["lambda_resolution"] = lam.provenance;
  params["penalty"] = pogs_penalty_family_name(family);
  params["a"] = out.params.penalty.a;
  params["a_source"] = a_source;
  if (a_source == "max_noncvx") params["safety"] = f.safety;
  params["convexity_bound_a"] = 1.0 / (pattern.info.k1 * lam.lambda);
  params["max_iters"] = out.params.max_iters;
  params["tol"] = out.params.tol;
  params["support_eps"] = out.params.support_eps;
  params["pattern"] = pattern_json(pattern, fs);

  ordered_json solver;
  solver["iterations"] = pogs_result_iterations(r);
  solver["converged"] = pogs_result_converged(r) != 0;
  solver["initial_objective"] = hist_n ? hist[0] : 0.0;
  solver["final_objective"] = hist_n ? hist[hist_n - 1] : 0.0;
  solver["convexity_status"] = pogs_convexity_name(pogs_result_convexity(r));
  ordered_json warnings = ordered_json::array();
  for (size_t i = 0; i < pogs_result_warning_count(r); ++i)
    warnings.push_back(pogs_result_warning(r, i));
  solver["warnings"] = warnings;

  out.report["parameters"] = params;
  out.report["solver"] = solver;
  return out;
}

void enforce_strict(const SolveFlags& f, const pogs_result* r) {
  if (f.strict && !pogs_result_converged(r))
    fail(kExitNumerical, "solver did not converge within " + std::to_string(f.max_iters) +
                             " iterations (--strict)");
}

void add_solve_options(CLI::App* cmd, SolveFlags& f) {
  auto* lam = cmd->add_option("--lambda", f.lambda, "Regularization weight (> 0)");
  auto* autol = cmd->add_flag("--auto-lambda", f.auto_lambda,
                              "lambda = r(m, n1) * sigma from the built-in table");
  lam->excludes(autol);
  autol->excludes(lam);
  cmd->add_option("--sigma", f.sigma, "Noise level for --auto-lambda (default: MAD estimate)")
      ->needs(autol);
  cmd->add_option("--penalty", f.penalty, "Penalty family")
      ->check(CLI::IsMember({"abs", "log", "rat", "atan"}))
      ->capture_default_str();
  cmd->add_option("--a", f.a, "Non-convexity parameter (default: safety / (K1 lambda))");
  cmd->add_option("--safety", f.safety, "Fraction of the convexity bound used for a")
      ->capture_default_str();
  cmd->add_option("--max-iters", f.max_iters)->capture_default_str();
  cmd->add_option("--tol", f.tol, "Relative max-norm change stopping threshold")
      ->capture_default_str();
  cmd->add_option("--support-eps", f.support_eps)->capture_default_str();
  cmd->add_flag("--strict", f.strict, "Exit 4 if the solver hits --max-iters");
}

// ---- subcommands -----------------------------------------------------------

int run_simulate(const Global& g, const pogs_sim_config& cfg, const std::string& clean_path,
                 const std::string& noisy_path, const std::string& labels_path) {
  pogs_simulation* raw = nullptr;
  check(pogs_simulate(&cfg, &raw), kExitUsage);
  SimHandle sim(raw);
  const size_t n = pogs_simulation_size(raw);
  check(pogs_signal_write(clean_path.c_str(), pogs_simulation_clean(raw), n, cfg.fs, "clean"));
  check(pogs_signal_write(noisy_path.c_str(), pogs_simulation_noisy(raw), n, cfg.fs, "noisy"));
  check(pogs_labels_write_simulation(labels_path.c_str(), raw, &cfg));

  ordered_json r = new_report(g, "simulate");
  r["parameters"] = {{"fs", cfg.fs},
                     {"duration", cfg.duration},
                     {"fault_freq", cfg.fault_freq},
                     {"first_fault_time", cfg.first_fault_time},
                     {"n_faults", cfg.n_faults},
                     {"transient_len", cfg.transient_len},
                     {"max_components", cfg.max_components},
                     {"noise_sigma", cfg.noise_sigma},
                     {"seed", cfg.seed},
                     {"rng", pogs_sim_rng_name()}};
  r["outputs"] = {{"clean", clean_path},
                  {"noisy", noisy_path},
                  {"labels", labels_path},
                  {"n_samples", n},
                  {"n_intervals", pogs_simulation_interval_count(raw)}};
  emit_report(g, r);
  return kExitOk;
}

int run_denoise(const Global& g, const std::string& input, const std::string& output,
                std::optional<double> fs_flag, const PatternFlags& pf, const SolveFlags& sf) {
  if (pf.fault_freqs.size() > 1) fail(kExitUsage, "denoise takes one --fault-freq; see compound");
  SignalHandle signal = read_signal(input, fs_flag);
  const double fs = pogs_signal_fs(signal.get());
  const std::vector<double> y = samples_of(signal.get());
  std::optional<double> ff;
  if (!pf.fault_freqs.empty()) ff = pf.fault_freqs.front();
  BuiltPattern pattern = build_pattern(pf, ff, fs);
  Solved s = solve(g, sf, pattern, y, fs);

  check(pogs_signal_write(output.c_str(), pogs_result_estimate(s.result.get()),
                          pogs_result_size(s.result.get()), fs, "denoised"));
  ordered_json r = new_report(g, "denoise");
  r["input"] = {{"path", input}, {"n_samples", y.size()}, {"fs", fs}};
  r["parameters"] = s.report["parameters"];
  r["solver"] = s.report["solver"];
  r["outputs"] = {{"estimate", output}};
  emit_report(g, r);
  enforce_strict(sf, s.result.get());
  return kExitOk;
}

std::vector<double> smoothed(const pogs_spectrum* s, int width) {
  std::vector<double> out(pogs_spectrum_size(s));
  check(pogs_spectrum_smoothed(s, width, out.data()), kExitUsage);
  return out;
}

std::string spectrum_csv(const pogs_spectrum* s, int width) {
  const double* f = pogs_spectrum_freqs(s);
  const double* m = pogs_spectrum_mags(s);
  const std::vector<double> sm = smoothed(s, width);
  std::string text = "freq_hz,magnitude,smoothed\n";
  for (size_t i = 0; i < sm.size(); ++i) {
    text += shortest(f[i]);
    text += ',';
    text += shortest(m[i]);
    text += ',';
    text += shortest(sm[i]);
    text += '\n';
  }
  return text;
}

SpectrumHandle compute_spectrum(const std::vector<double>& y, double fs, const std::string& mode) {
  pogs_spectrum* raw = nullptr;
  if (mode == "fourier") {
    check(pogs_magnitude_spectrum(y.data(), y.size(), fs, &raw));
  } else {
    check(pogs_envelope_spectrum(y.data(), y.size(), fs, &raw));
  }
  return SpectrumHandle(raw);
}

// Largest magnitude within +-1 bin of `freq`.
ordered_json peak_near(const pogs_spectrum* s, double freq) {
  const size_t n = pogs_spectrum_size(s);
  const double* f = pogs_spectrum_freqs(s);
  const double* m = pogs_spectrum_mags(s);
  if (n < 2) return nullptr;
  const double step = f[1] - f[0];
  const long centre = std::lround(freq / step);
  long best = -1;
  for (long k = centre - 1; k <= centre + 1; ++k) {
    if (k < 0 || k >= static_cast<long>(n)) continue;
    if (best < 0 || m[k] > m[best]) best = k;
  }
  if (best < 0) return nullptr;
  return {{"freq_hz", f[best]}, {"magnitude", m[best]}};
}

int run_compound(const Global& g, const std::string& input, const std::string& out_dir,
                 std::optional<double> fs_flag, const PatternFlags& pf, const SolveFlags& sf,
                 int smooth_width) {
  if (pf.fault_freqs.empty()) fail(kExitUsage, "compound needs at least one --fault-freq");
  if (pf.group_size > 0 || !pf.bits.empty())
    fail(kExitUsage, "compound builds periodic patterns from --fault-freq only");
  SignalHandle signal = read_signal(input, fs_flag);
  const double fs = pogs_signal_fs(signal.get());
  const std::vector<double> y = samples_of(signal.get());
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(kExitData, "cannot create " + out_dir + ": " + ec.message());

  ordered_json r = new_report(g, "compound");
  r["input"] = {{"path", input}, {"n_samples", y.size()}, {"fs", fs}};
  ordered_json runs = ordered_json::array();
  bool all_converged = true;
  for (double ff : pf.fault_freqs) {
    BuiltPattern pattern = build_pattern(pf, ff, fs);
    Solved s = solve(g, sf, pattern, y, fs);
    const pogs_result* res = s.result.get();
    all_converged = all_converged && pogs_result_converged(res);
    const std::string tag = shortest(ff) + "Hz";
    const std::string est_path = (std::filesystem::path(out_dir) / ("denoised_" + tag + ".csv")).string();
    const std::string spec_path = (std::filesystem::path(out_dir) / ("envelope_" + tag + ".csv")).string();
    check(pogs_signal_write(est_path.c_str(), pogs_result_estimate(res), pogs_result_size(res), fs,
                            ("denoised_" + tag).c_str()));
    const std::vector<double> x(pogs_result_estimate(res),
                                pogs_result_estimate(res) + pogs_result_size(res));
    SpectrumHandle spec = compute_spectrum(x, fs, "envelope");
    write_file(spec_path, spectrum_csv(spec.get(), smooth_width));

    ordered_json run;
    run["fault_freq_hz"] = ff;
    run["parameters"] = s.report["parameters"];
    run["solver"] = s.report["solver"];
    run["envelope_peak_near_fault_freq"] = peak_near(spec.get(), ff);
    run["outputs"] = {{"estimate", est_path}, {"envelope_spectrum", spec_path}};
    runs.push_back(run);
  }
  r["runs"] = runs;
  r["smooth_width"] = smooth_width;
  emit_report(g, r);
  if (sf.strict && !all_converged)
    fail(kExitNumerical, "a compound run did not converge within --max-iters (--strict)");
  return kExitOk;
}

int run_estimate_noise(const Global& g, const std::string& input, std::optional<double> fs_flag,
                       std::optional<int> m, std::optional<int> n1) {
  if (m.has_value() != n1.has_value()) fail(kExitUsage, "--m and --n1 go together");
  SignalHandle signal = read_signal(input, fs_flag);
  const std::vector<double> y = samples_of(signal.get());
  double sigma = 0.0;
  check(pogs_estimate_sigma(y.data(), y.size(), &sigma));
  ordered_json r = new_report(g, "estimate-noise");
  r["input"] = {{"path", input}, {"n_samples", y.size()}, {"fs", pogs_signal_fs(signal.get())}};
  r["sigma"] = sigma;
  if (m) {
    double mult = 0.0;
    double lambda = 0.0;
    check(pogs_lambda_multiplier(*m, *n1, &mult), kExitUsage);
    check(pogs_lambda_from_table(sigma, *m, *n1, &lambda));
    r["m"] = *m;
    r["n1"] = *n1;
    r["multiplier"] = mult;
    r["lambda"] = lambda;
  }
  emit_report(g, r);
  return kExitOk;
}

int run_evaluate(const Global& g, const std::string& est_path, const std::string& clean_path,
                 const std::string& labels_path, const std::string& out_path, int n_thresholds) {
  pogs_labels* lraw = nullptr;
  double labels_fs = 0.0;
  check(pogs_labels_read(labels_path.c_str(), &lraw, &labels_fs));
  LabelsHandle labels(lraw);
  SignalHandle est = read_signal(est_path, labels_fs > 0.0 ? std::optional(labels_fs) : std::nullopt);
  SignalHandle clean = read_signal(clean_path, labels_fs > 0.0 ? std::optional(labels_fs) : std::nullopt);
  const std::vector<double> x = samples_of(est.get());
  const std::vector<double> ref = samples_of(clean.get());

  if (n_thresholds < 2) fail(kExitUsage, "--n-thresholds must be >= 2");
  if (x.size() != ref.size()) fail(kExitData, "estimate and clean signals differ in length");
  double err = 0.0;
  check(pogs_rmse(x.data(), ref.data(), x.size(), &err));
  pogs_roc* rraw = nullptr;
  check(pogs_roc_compute(x.data(), x.size(), labels.get(), n_thresholds, &rraw));
  RocHandle roc(rraw);

  const size_t np = pogs_roc_size(rraw);
  const double* th = pogs_roc_thresholds(rraw);
  const double* fa = pogs_roc_false_alarm(rraw);
  const double* det = pogs_roc_detection(rraw);
  ordered_json eval;
  eval["schema_version"] = kSchemaVersion;
  eval["rmse"] = err;
  eval["auc"] = pogs_roc_auc(rraw);
  eval["n_thresholds"] = n_thresholds;
  eval["roc"] = {{"threshold", std::vector<double>(th, th + np)},
                 {"false_alarm_prob", std::vector<double>(fa, fa + np)},
                 {"detection_prob", std::vector<double>(det, det + np)}};
  if (!out_path.empty()) write_file(out_path, eval.dump(2) + "\n");

  ordered_json r = new_report(g, "evaluate");
  r["inputs"] = {{"estimate", est_path}, {"clean", clean_path}, {"labels", labels_path}};
  r["metrics"] = {{"rmse", err}, {"auc", pogs_roc_auc(rraw)}, {"n_thresholds", n_thresholds}};
  if (!out_path.empty()) r["outputs"] = {{"evaluation", out_path}};
  emit_report(g, r);
  return kExitOk;
}

int run_spectrum(const Global& g, const std::string& input, std::optional<double> fs_flag,
                 const std::string& mode, const std::string& out_path, int smooth_width) {
  SignalHandle signal = read_signal(input, fs_flag);
  const double fs = pogs_signal_fs(signal.get());
  const std::vector<double> y = samples_of(signal.get());
  SpectrumHandle spec = compute_spectrum(y, fs, mode);
  write_file(out_path, spectrum_csv(spec.get(), smooth_width));

  const size_t n = pogs_spectrum_size(spec.get());
  const double* f = pogs_spectrum_freqs(spec.get());
  const double* m = pogs_spectrum_mags(spec.get());
  size_t peak = n > 1 ? 1 : 0;
  for (size_t k = 1; k < n; ++k) {
    if (m[k] > m[peak]) peak = k;
  }
  ordered_json r = new_report(g, "spectrum");
  r["input"] = {{"path", input}, {"n_samples", y.size()}, {"fs", fs}};
  r["parameters"] = {{"mode", mode}, {"smooth_width", smooth_width}};
  r["bins"] = n;
  r["resolution_hz"] = fs / static_cast<double>(y.size());
  if (n > 0) r["peak_excluding_dc"] = {{"freq_hz", f[peak]}, {"magnitude", m[peak]}};
  r["outputs"] = {{"spectrum", out_path}};
  emit_report(g, r);
  return kExitOk;
}

pogs_bearing_orders parse_orders(const std::string& text) {
  pogs_bearing_orders o{0, 0, 0, 0};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) fail(kExitUsage, "--orders expects name=value pairs");
    const std::string key = item.substr(0, eq);
    double v = 0.0;
    const std::string value = item.substr(eq + 1);
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
      fail(kExitUsage, "--orders: bad number '" + value + "'");
    if (key == "ftf") o.ftf = v;
    else if (key == "bpfo") o.bpfo = v;
    else if (key == "bpfi") o.bpfi = v;
    else if (key == "bsf") o.bsf = v;
    else fail(kExitUsage, "--orders: unknown order '" + key + "'");
  }
  return o;
}

int run_fault_freqs(const Global& g, std::optional<double> rpm, std::optional<double> shaft_hz,
                    const std::string& orders_text) {
  if (rpm.has_value() == shaft_hz.has_value()) fail(kExitUsage, "give exactly one of --rpm, --shaft-hz");
  const double shaft = rpm ? *rpm / 60.0 : *shaft_hz;
  const pogs_bearing_orders orders = parse_orders(orders_text);
  pogs_bearing_orders hz{};
  check(pogs_fault_frequencies(shaft, &orders, &hz), kExitUsage);
  ordered_json r = new_report(g, "fault-freqs");
  r["shaft_hz"] = shaft;
  r["orders"] = {{"ftf", orders.ftf}, {"bpfo", orders.bpfo}, {"bpfi", orders.bpfi}, {"bsf", orders.bsf}};
  r["frequencies_hz"] = {{"ftf", hz.ftf}, {"bpfo", hz.bpfo}, {"bpfi", hz.bpfi}, {"bsf", hz.bsf}};
  emit_report(g, r);
  return kExitOk;
}

void add_pattern_options(CLI::App* cmd, PatternFlags& pf, bool allow_multiple) {
  auto* ff = cmd->add_option("--fault-freq", pf.fault_freqs, "Fault frequency in Hz (periodic pattern)");
  if (!allow_multiple) ff->expected(1);
  auto* n1 = cmd->add_option("--n1", pf.n1, "Ones per period")->capture_default_str();
  auto* m = cmd->add_option("--m", pf.m, "Periods per group")->capture_default_str();
  n1->needs(ff);
  m->needs(ff);
  if (!allow_multiple) {
    auto* gs = cmd->add_option("--group-size", pf.group_size, "Contiguous group size K");
    auto* bits = cmd->add_option("--pattern", pf.bits, "Explicit binary pattern, e.g. 110011");
    ff->excludes(gs)->excludes(bits);
    gs->excludes(ff)->excludes(bits);
    bits->excludes(ff)->excludes(gs);
  }
}

}  // namespace

int main(int argc, char** argv) {
  Global g;
  for (int i = 1; i < argc; ++i) g.argv.emplace_back(argv[i]);

  CLI::App app{"pogs: periodic group-sparse denoising of vibration signals"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--quiet", g.quiet, "Suppress warnings on stderr");
  app.add_option("--report", g.report_path, "Write the JSON run report here instead of stdout");
  app.set_version_flag("--version", pogs_version());

  // simulate
  pogs_sim_config sim = pogs_sim_config_default();
  std::string out_clean = "clean.csv", out_noisy = "noisy.csv", out_labels = "labels.json";
  auto* c_sim = app.add_subcommand("simulate", "Generate a labelled periodic transient signal");
  c_sim->add_option("--seed", sim.seed)->capture_default_str();
  c_sim->add_option("--fs", sim.fs)->capture_default_str();
  c_sim->add_option("--duration", sim.duration)->capture_default_str();
  c_sim->add_option("--fault-freq", sim.fault_freq)->capture_default_str();
  c_sim->add_option("--first-fault-time", sim.first_fault_time)->capture_default_str();
  c_sim->add_option("--n-faults", sim.n_faults)->capture_default_str();
  c_sim->add_option("--transient-len", sim.transient_len)->capture_default_str();
  c_sim->add_option("--max-components", sim.max_components)->capture_default_str();
  c_sim->add_option("--noise-sigma", sim.noise_sigma)->capture_default_str();
  c_sim->add_option("--out-clean", out_clean)->capture_default_str();
  c_sim->add_option("--out-noisy", out_noisy)->capture_default_str();
  c_sim->add_option("--out-labels", out_labels)->capture_default_str();

  // denoise
  std::string d_input, d_output;
  std::optional<double> d_fs;
  PatternFlags d_pattern;
  SolveFlags d_solve;
  auto* c_den = app.add_subcommand("denoise", "Denoise one signal with a single group pattern");
  c_den->add_option("--input", d_input)->required();
  c_den->add_option("--output", d_output)->required();
  c_den->add_option("--fs", d_fs, "Sampling rate (overrides the file header)");
  add_pattern_options(c_den, d_pattern, false);
  add_solve_options(c_den, d_solve);

  // compound
  std::string k_input, k_outdir = ".";
  std::optional<double> k_fs;
  PatternFlags k_pattern;
  SolveFlags k_solve;
  int k_smooth = 5;
  auto* c_cmp = app.add_subcommand("compound", "One periodic denoise per fault frequency");
  c_cmp->add_option("--input", k_input)->required();
  c_cmp->add_option("--out-dir", k_outdir)->capture_default_str();
  c_cmp->add_option("--fs", k_fs, "Sampling rate (overrides the file header)");
  add_pattern_options(c_cmp, k_pattern, true);
  add_solve_options(c_cmp, k_solve);
  c_cmp->add_option("--smooth-width", k_smooth)->capture_default_str();

  // estimate-noise
  std::string e_input;
  std::optional<double> e_fs;
  std::optional<int> e_m, e_n1;
  auto* c_est = app.add_subcommand("estimate-noise", "MAD noise estimate and table lambda");
  c_est->add_option("--input", e_input)->required();
  c_est->add_option("--fs", e_fs);
  c_est->add_option("--m", e_m);
  c_est->add_option("--n1", e_n1);

  // evaluate
  std::string v_est, v_clean, v_labels, v_out;
  int v_thresholds = 256;
  auto* c_eval = app.add_subcommand("evaluate", "RMSE and transient-level ROC against ground truth");
  c_eval->add_option("--estimate", v_est)->required();
  c_eval->add_option("--clean", v_clean)->required();
  c_eval->add_option("--labels", v_labels)->required();
  c_eval->add_option("--out", v_out, "Evaluation report with the full ROC curve");
  c_eval->add_option("--n-thresholds", v_thresholds)->capture_default_str();

  // spectrum
  std::string s_input, s_mode = "envelope", s_out;
  std::optional<double> s_fs;
  int s_smooth = 5;
  auto* c_spec = app.add_subcommand("spectrum", "Fourier or Hilbert envelope spectrum as CSV");
  c_spec->add_option("--input", s_input)->required();
  c_spec->add_option("--fs", s_fs);
  c_spec->add_option("--mode", s_mode)
      ->check(CLI::IsMember({"fourier", "envelope"}))
      ->capture_default_str();
  c_spec->add_option("--out", s_out)->required();
  c_spec->add_option("--smooth-width", s_smooth)->capture_default_str();

  // fault-freqs
  std::optional<double> f_rpm, f_shaft;
  std::string f_orders;
  auto* c_ff = app.add_subcommand("fault-freqs", "Bearing defect frequencies from shaft speed");
  c_ff->add_option("--rpm", f_rpm);
  c_ff->add_option("--shaft-hz", f_shaft);
  c_ff->add_option("--orders", f_orders, "e.g. ftf=0.384,bpfo=3.066,bpfi=4.932,bsf=2.03")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c_sim) return run_simulate(g, sim, out_clean, out_noisy, out_labels);
    if (*c_den) return run_denoise(g, d_input, d_output, d_fs, d_pattern, d_solve);
    if (*c_cmp) return run_compound(g, k_input, k_outdir, k_fs, k_pattern, k_solve, k_smooth);
    if (*c_est) return run_estimate_noise(g, e_input, e_fs, e_m, e_n1);
    if (*c_eval) return run_evaluate(g, v_est, v_clean, v_labels, v_out, v_thresholds);
    if (*c_spec) return run_spectrum(g, s_input, s_fs, s_mode, s_out, s_smooth);
    if (*c_ff) return run_fault_freqs(g, f_rpm, f_shaft, f_orders);
  } catch (const CliFailure& f) {
    std::cerr << "pogs: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "pogs: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
