#pragma once

#include <stdexcept>

namespace kmsent {

/// Argument outside the mathematical domain of an operation (w < m, p0 = 0, t <= 0, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inconsistent inputs, e.g. functionals with different profiles or orders.
class configuration_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Spectral grid too coarse for the requested tolerance.
class resolution_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class unsupported_order_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A sequence that should approach its limit moved away from it.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kmsent
