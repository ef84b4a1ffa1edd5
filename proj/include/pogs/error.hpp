#pragma once

#include <stdexcept>
#include <string>

namespace pogs {

enum class Errc {
  domain,
  invalid_pattern,
  out_of_table,
  parse,
  missing_metadata,
  io,
  // Non-finite input samples. A domain error, kept distinct so callers can
  // report it as a numerical failure.
  non_finite,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace pogs
