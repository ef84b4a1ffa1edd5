#include "pogs/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numeric>

#include "pogs/error.hpp"

namespace pogs {

namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

ComplexBuffer make_buffer(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) throw std::bad_alloc();
  return ComplexBuffer(p);
}

class Dft {
 public:
  Dft(std::size_t n, int sign) : n_(n), in_(make_buffer(n)), out_(make_buffer(n)) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), in_.get(), out_.get(), sign, FFTW_ESTIMATE);
  }
  ~Dft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  fftw_complex* in() noexcept { return in_.get(); }
  const fftw_complex* out() const noexcept { return out_.get(); }
  void execute() noexcept { fftw_execute(plan_); }
  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_;
  ComplexBuffer in_;
  ComplexBuffer out_;
  fftw_plan plan_ = nullptr;
};

void check_input(std::span<const double> y, double fs, std::size_t min_len, const char* what) {
  if (y.size() < min_len) throw Error(Errc::domain, std::string(what) + ": signal too short");
  if (!(fs > 0.0) || !std::isfinite(fs))
    throw Error(Errc::domain, std::string(what) + ": fs must be positive");
}

}  // namespace

Spectrum magnitude_spectrum(std::span<const double> y, double fs) {
  check_input(y, fs, 2, "magnitude_spectrum");
  const std::size_t n = y.size();
  Dft dft(n, FFTW_FORWARD);
  for (std::size_t i = 0; i < n; ++i) {
    dft.in()[i][0] = y[i];
    dft.in()[i][1] = 0.0;
  }
  dft.execute();

  const std::size_t bins = n / 2 + 1;
  Spectrum s;
  s.freqs.resize(bins);
  s.mags.resize(bins);
  const double dn = static_cast<double>(n);
  for (std::size_t k = 0; k < bins; ++k) {
    const double mag = std::hypot(dft.out()[k][0], dft.out()[k][1]);
    const bool edge = k == 0 || (n % 2 == 0 && k == n / 2);
    s.freqs[k] = static_cast<double>(k) * fs / dn;
    s.mags[k] = mag * (edge ? 1.0 : 2.0) / dn;
  }
  return s;
}

std::vector<double> envelope(std::span<const double> y) {
  if (y.empty()) throw Error(Errc::domain, "envelope: empty signal");
  const std::size_t n = y.size();
  Dft forward(n, FFTW_FORWARD);
  for (std::size_t i = 0; i < n; ++i) {
    forward.in()[i][0] = y[i];
    forward.in()[i][1] = 0.0;
  }
  forward.execute();

  // Keep DC (and Nyquist), double positive frequencies, drop negative ones.
  Dft inverse(n, FFTW_BACKWARD);
  for (std::size_t k = 0; k < n; ++k) {
    double gain = 0.0;
    if (k == 0 || (n % 2 == 0 && k == n / 2)) gain = 1.0;
    else if (k < (n + 1) / 2) gain = 2.0;
    inverse.in()[k][0] = gain * forward.out()[k][0];
    inverse.in()[k][1] = gain * forward.out()[k][1];
  }
  inverse.execute();

  std::vector<double> env(n);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    env[i] = std::hypot(inverse.out()[i][0], inverse.out()[i][1]) / dn;
  return env;
}

Spectrum envelope_spectrum(std::span<const double> y, double fs) {
  check_input(y, fs, 4, "envelope_spectrum");
  std::vector<double> env = envelope(y);
  const double mean = std::accumulate(env.begin(), env.end(), 0.0) / static_cast<double>(env.size());
  for (double& v : env) v -= mean;
  return magnitude_spectrum(env, fs);
}

std::vector<double> smooth(std::span<const double> mags, int width) {
  if (width < 1) throw Error(Errc::domain, "smooth: width must be >= 1");
  const long n = static_cast<long>(mags.size());
  const long half = width / 2;
  std::vector<double> out(mags.size());
  for (long i = 0; i < n; ++i) {
    const long lo = std::max(0L, i - half);
    const long hi = std::min(n - 1, i - half + width - 1);
    double sum = 0.0;
    for (long j = lo; j <= hi; ++j) sum += mags[j];
    out[i] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

BearingOrders fault_frequencies(double shaft_freq, const BearingOrders& orders) {
  if (!(shaft_freq > 0.0) || !std::isfinite(shaft_freq))
    throw Error(Errc::domain, "fault_frequencies: shaft frequency must be positive");
  for (double o : {orders.ftf, orders.bpfo, orders.bpfi, orders.bsf}) {
    if (!(o > 0.0) || !std::isfinite(o))
      throw Error(Errc::domain, "fault_frequencies: bearing orders must be positive");
  }
  return {orders.ftf * shaft_freq, orders.bpfo * shaft_freq, orders.bpfi * shaft_freq,
          orders.bsf * shaft_freq};
}

}  // namespace pogs
