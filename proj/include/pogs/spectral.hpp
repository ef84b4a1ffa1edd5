#pragma once

#include <span>
#include <vector>

namespace pogs {

/// One-sided spectrum on bins 0 .. floor(N/2), spaced fs / N.
struct Spectrum {
  std::vector<double> freqs;
  std::vector<double> mags;
};

/// |DFT| scaled by 2/N, except DC and (for even N) Nyquist scaled by 1/N,
/// so a bin-centred sine of amplitude A reads A. Requires N >= 2.
Spectrum magnitude_spectrum(std::span<const double> y, double fs);

/// Modulus of the analytic signal (frequency-domain Hilbert transform).
/// Requires N >= 1.
std::vector<double> envelope(std::span<const double> y);

/// magnitude_spectrum of the mean-removed envelope. Requires N >= 4.
Spectrum envelope_spectrum(std::span<const double> y, double fs);

/// Centred moving average over `width` bins, truncated at the edges.
std::vector<double> smooth(std::span<const double> mags, int width = 5);

struct BearingOrders {
  double ftf = 0.0;
  double bpfo = 0.0;
  double bpfi = 0.0;
  double bsf = 0.0;
};

/// Characteristic defect frequencies in Hz: each order times the shaft rate.
/// Throws Error(domain) unless shaft_freq > 0 and all orders are positive.
BearingOrders fault_frequencies(double shaft_freq, const BearingOrders& orders);

}  // namespace pogs
