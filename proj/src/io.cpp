#include "pogs/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "pogs/error.hpp"

namespace pogs {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view text) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& why) {
  throw Error(Errc::parse, "line " + std::to_string(line) + ": " + why);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error(Errc::domain, "format_double: conversion failed");
  return std::string(buf, ptr);
}

SignalFile read_signal(std::istream& in, std::optional<double> fs_override) {
  SignalFile out;
  std::optional<double> header_fs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      std::istringstream tokens{std::string(text.substr(1))};
      std::string token;
      while (tokens >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "fs") {
          const auto fs = parse_number(value);
          if (!fs || !(*fs > 0.0) || !std::isfinite(*fs)) parse_error(line_no, "invalid fs value '" + value + "'");
          header_fs = fs;
        } else if (key == "channel") {
          out.channel_name = value;
        }
      }
      continue;
    }
    const auto v = parse_number(text);
    if (!v) parse_error(line_no, "expected a number, got '" + std::string(text) + "'");
    // Well-formed but unusable: reported apart from syntax errors so callers
    // can treat it as a numerical failure.
    if (!std::isfinite(*v))
      throw Error(Errc::non_finite, "line " + std::to_string(line_no) + ": non-finite sample");
    out.samples.push_back(*v);
  }
  if (in.bad()) throw Error(Errc::io, "read_signal: stream error");

  if (fs_override) {
    if (!(*fs_override > 0.0) || !std::isfinite(*fs_override))
      throw Error(Errc::domain, "read_signal: fs override must be positive");
    out.fs = *fs_override;
  } else if (header_fs) {
    out.fs = *header_fs;
  } else {
    throw Error(Errc::missing_metadata,
                "read_signal: no sampling rate in the file header and none supplied");
  }
  return out;
}

SignalFile read_signal(const std::filesystem::path& path, std::optional<double> fs_override) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  try {
    return read_signal(in, fs_override);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_signal(std::ostream& out, const SignalFile& signal) {
  if (!(signal.fs > 0.0) || !std::isfinite(signal.fs))
    throw Error(Errc::domain, "write_signal: fs must be positive");
  for (std::size_t i = 0; i < signal.samples.size(); ++i) {
    if (!std::isfinite(signal.samples[i]))
      throw Error(Errc::domain, "write_signal: non-finite sample at index " + std::to_string(i));
  }
  std::string text = "# fs=" + format_double(signal.fs) + "\n";
  if (signal.channel_name) text += "# channel=" + *signal.channel_name + "\n";
  for (double v : signal.samples) {
    text += format_double(v);
    text += '\n';
  }
  out << text;
  if (!out) throw Error(Errc::io, "write_signal: stream error");
}

void write_signal(const std::filesystem::path& path, const SignalFile& signal) {
  std::ostringstream buf;
  write_signal(buf, signal);
  write_text(path, buf.str());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(Errc::io, "failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

json sim_config_to_json(const SimConfig& c) {
  return json{{"fs", c.fs},
              {"duration", c.duration},
              {"fault_freq", c.fault_freq},
              {"first_fault_time", c.first_fault_time},
              {"n_faults", c.n_faults},
              {"transient_len", c.transient_len},
              {"max_components", c.max_components},
              {"noise_sigma", c.noise_sigma},
              {"seed", c.seed}};
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
  const std::set<std::string> names(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!names.contains(item.key()))
      throw Error(Errc::parse, std::string(where) + ": unknown field '" + item.key() + "'");
  }
}

SimConfig sim_config_from_json(const json& j) {
  reject_unknown(j,
                 {"fs", "duration", "fault_freq", "first_fault_time", "n_faults", "transient_len",
                  "max_components", "noise_sigma", "seed"},
                 "sim_config");
  SimConfig c;
  c.fs = j.at("fs").get<double>();
  c.duration = j.at("duration").get<double>();
  c.fault_freq = j.at("fault_freq").get<double>();
  c.first_fault_time = j.at("first_fault_time").get<double>();
  c.n_faults = j.at("n_faults").get<int>();
  c.transient_len = j.at("transient_len").get<int>();
  c.max_components = j.at("max_components").get<int>();
  c.noise_sigma = j.at("noise_sigma").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

}  // namespace

std::string labels_to_json(const LabelsFile& labels) {
  json intervals = json::array();
  for (const Interval& iv : labels.intervals) intervals.push_back({iv.start, iv.end});
  json j{{"schema_version", kSchemaVersion},
         {"n_samples", labels.n_samples},
         {"fs", labels.fs},
         {"transient_intervals", std::move(intervals)}};
  if (labels.sim_config) j["sim_config"] = sim_config_to_json(*labels.sim_config);
  if (labels.rng) j["rng"] = *labels.rng;
  return j.dump(2) + "\n";
}

LabelsFile labels_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw Error(Errc::parse, "labels: top level must be an object");
    reject_unknown(j, {"schema_version", "n_samples", "fs", "transient_intervals", "sim_config", "rng"},
                   "labels");
    if (j.at("schema_version").get<int>() != kSchemaVersion)
      throw Error(Errc::parse, "labels: unsupported schema_version");
    LabelsFile out;
    out.n_samples = j.at("n_samples").get<long>();
    out.fs = j.at("fs").get<double>();
    for (const auto& pair : j.at("transient_intervals")) {
      if (!pair.is_array() || pair.size() != 2)
        throw Error(Errc::parse, "labels: each interval must be a [start, end] pair");
      out.intervals.push_back({pair[0].get<long>(), pair[1].get<long>()});
    }
    if (j.contains("sim_config")) out.sim_config = sim_config_from_json(j["sim_config"]);
    if (j.contains("rng")) out.rng = j["rng"].get<std::string>();
    out.labels();  // validates the intervals
    return out;
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string("labels: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::parse) throw;
    throw Error(Errc::parse, std::string("labels: ") + e.what());
  }
}

LabelsFile read_labels(const std::filesystem::path& path) {
  try {
    return labels_from_json(read_text(path));
  } catch (const Error& e) {
    if (e.code() == Errc::io) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_labels(const std::filesystem::path& path, const LabelsFile& labels) {
  write_text(path, labels_to_json(labels));
}

}  // namespace pogs
