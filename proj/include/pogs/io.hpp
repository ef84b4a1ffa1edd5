#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pogs/metrics.hpp"
#include "pogs/signalgen.hpp"

namespace pogs {

inline constexpr int kSchemaVersion = 1;

/// Single-column CSV signal with an optional `# fs=<Hz>` header line.
struct SignalFile {
  std::vector<double> samples;
  double fs = 0.0;
  std::optional<std::string> channel_name;
};

/// Shortest decimal text that parses back to exactly `v`; locale independent.
std::string format_double(double v);

/// Blank lines are skipped; `#` lines carry `key=value` metadata (fs, channel).
/// fs_override wins over the header. Throws Error(parse) with the line number
/// on a bad line and Error(missing_metadata) when no fs is available.
SignalFile read_signal(std::istream& in, std::optional<double> fs_override = std::nullopt);
SignalFile read_signal(const std::filesystem::path& path,
                       std::optional<double> fs_override = std::nullopt);

/// Throws Error(domain) on a non-finite sample or fs, Error(io) on write failure.
void write_signal(std::ostream& out, const SignalFile& signal);
void write_signal(const std::filesystem::path& path, const SignalFile& signal);

/// Ground truth written next to a simulated signal.
struct LabelsFile {
  std::vector<Interval> intervals;
  long n_samples = 0;
  double fs = 0.0;
  std::optional<SimConfig> sim_config;
  std::optional<std::string> rng;

  TransientLabels labels() const { return TransientLabels(intervals, n_samples); }
};

std::string labels_to_json(const LabelsFile& labels);
/// Rejects unknown fields, a missing or different schema_version, and
/// invalid intervals with Error(parse).
LabelsFile labels_from_json(const std::string& text);

LabelsFile read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, const LabelsFile& labels);

/// Writes `text` to `path`, throwing Error(io) on failure.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace pogs
