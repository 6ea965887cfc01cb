#pragma once

#include <compare>
#include <limits>
#include <string>

namespace roundness {

/// An exponent in [0, qmax] or the sentinel INFINITE (stored as +inf so the
/// natural ordering puts it above every finite value).
class ExtendedExponent {
 public:
  constexpr ExtendedExponent() = default;
  constexpr explicit ExtendedExponent(double v) : value_(v) {}
  static constexpr ExtendedExponent infinite() {
    return ExtendedExponent(std::numeric_limits<double>::infinity());
  }

  constexpr bool is_infinite() const { return value_ == std::numeric_limits<double>::infinity(); }
  constexpr double value() const { return value_; }

  friend constexpr auto operator<=>(ExtendedExponent, ExtendedExponent) = default;

 private:
  double value_ = std::numeric_limits<double>::infinity();
};

std::string to_string(ExtendedExponent e);

}  // namespace roundness
