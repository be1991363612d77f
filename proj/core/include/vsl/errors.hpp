#pragma once

#include <stdexcept>

namespace vsl {

// Invalid arguments are reported with std::invalid_argument throughout.

/// File could not be opened, read, decoded or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data is structurally valid but inconsistent (bad manifest lines,
/// id mismatches between prediction and gold files, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vsl
