#include "pogs/error.hpp"

namespace pogs {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::domain: return "domain error";
    case Errc::invalid_pattern: return "invalid pattern";
    case Errc::out_of_table: return "out of table";
    case Errc::parse: return "parse error";
    case Errc::missing_metadata: return "missing metadata";
    case Errc::io: return "I/O error";
    case Errc::non_finite: return "non-finite input";
  }
  return "unknown error";
}

}  // namespace pogs
