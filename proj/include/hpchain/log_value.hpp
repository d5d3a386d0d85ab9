#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hpchain {

// A real number stored as sign and ln|value|. Zero has sign 0.
struct LogValue {
  int sign = 0;
  double ln_magnitude = -std::numeric_limits<double>::infinity();

  static LogValue zero() { return {}; }
  static LogValue one() { return {1, 0.0}; }

  static LogValue from_log(double ln_magnitude, int sign = 1) {
    if (sign == 0 || ln_magnitude == -std::numeric_limits<double>::infinity()) return {};
    return {sign > 0 ? 1 : -1, ln_magnitude};
  }

  static LogValue from_value(double v) {
    if (v == 0.0) return {};
    return {v > 0 ? 1 : -1, std::log(std::fabs(v))};
  }

  bool is_zero() const { return sign == 0; }
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(ln_magnitude); }
  LogValue abs() const { return sign == 0 ? LogValue{} : LogValue{1, ln_magnitude}; }

  LogValue pow(int k) const {
    if (k == 0) return one();
    if (sign == 0) return {};
    return {(sign < 0 && k % 2 != 0) ? -1 : 1, k * ln_magnitude};
  }

  friend LogValue operator*(LogValue a, LogValue b) {
    if (a.sign == 0 || b.sign == 0) return {};
    return {a.sign * b.sign, a.ln_magnitude + b.ln_magnitude};
  }

  friend LogValue operator/(LogValue a, LogValue b) {
    if (b.sign == 0) throw std::domain_error("LogValue: division by zero");
    if (a.sign == 0) return {};
    return {a.sign * b.sign, a.ln_magnitude - b.ln_magnitude};
  }
};

}  // namespace hpchain
