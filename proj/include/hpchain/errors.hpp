#pragma once

#include <stdexcept>
#include <string>

namespace hpchain {

// Raised when a numerical procedure cannot reach its requested accuracy.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const { return achieved_error_; }

 private:
  double achieved_error_;
};

// Raised when a request would exceed a hard size limit (ED sector, node budget).
class CostGuardError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hpchain
