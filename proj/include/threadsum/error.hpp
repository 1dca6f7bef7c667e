#pragma once

#include <stdexcept>
#include <string>

namespace threadsum {

/// Bad input data (malformed files, missing records). The CLI maps this to
/// exit code 2; std::invalid_argument from API misuse maps to 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace threadsum
