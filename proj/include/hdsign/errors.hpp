#pragma once

#include <stdexcept>
#include <string>

namespace hdsign {

// Malformed data or request. The CLI maps these to exit code 1.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class invalid_parameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A column with zero sample variance cannot be standardized.
class degenerate_column : public invalid_input {
 public:
  using invalid_input::invalid_input;
};

// Too few observations for the requested estimator mode.
class insufficient_sample : public invalid_input {
 public:
  using invalid_input::invalid_input;
};

// Non-finite iterate, failed factorization, or similar breakdown.
// The CLI maps this to exit code 2.
class numerical_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hdsign
