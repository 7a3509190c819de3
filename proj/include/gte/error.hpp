#ifndef GTE_ERROR_HPP
#define GTE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gte {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input files (bad tag, bad field, truncated payload).
struct ParseError : Error {
  using Error::Error;
};

// Structurally invalid data (dangling edge, duplicate id, out-of-extent
// vertex, non-binary truth tensor, encoding cell collision).
struct ValidationError : Error {
  using Error::Error;
};

// Invalid configuration values (non-positive d, bad threshold, unknown
// sweep axis).
struct ConfigError : Error {
  using Error::Error;
};

// Filesystem-level failures.
struct IoError : Error {
  using Error::Error;
};

}  // namespace gte

#endif
