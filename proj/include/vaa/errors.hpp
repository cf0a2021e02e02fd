#pragma once

#include <stdexcept>
#include <string>

namespace vaa {

/// Malformed scenario, trajectory file or command-line configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A simulation produced non-finite or otherwise unusable state.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vaa
