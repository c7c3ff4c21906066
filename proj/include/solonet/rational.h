// Exact rational arithmetic for note durations.

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace solonet {

/// Rational number kept in lowest terms, denominator > 0.
///
/// Durations are measured in whole notes, so equality of two durations is
/// exact regardless of the divisions value they were parsed from
/// (2/divisions=2 and 4/divisions=4 both normalize to 1/4).
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
  }
  explicit Rational(std::int64_t num) : num_(num), den_(1) {}

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool isPositive() const { return num_ > 0; }
  bool isZero() const { return num_ == 0; }

  Rational operator+(const Rational& other) const {
    return Rational(num_ * other.den_ + other.num_ * den_, den_ * other.den_);
  }
  Rational operator-(const Rational& other) const {
    return Rational(num_ * other.den_ - other.num_ * den_, den_ * other.den_);
  }
  Rational operator*(const Rational& other) const {
    return Rational(num_ * other.num_, den_ * other.den_);
  }
  Rational operator/(const Rational& other) const {
    if (other.num_ == 0) throw std::invalid_argument("Rational: division by zero");
    return Rational(num_ * other.den_, den_ * other.num_);
  }

  bool operator==(const Rational& other) const {
    return num_ == other.num_ && den_ == other.den_;
  }
  bool operator!=(const Rational& other) const { return !(*this == other); }
  bool operator<(const Rational& other) const {
    return num_ * other.den_ < other.num_ * den_;
  }
  bool operator<=(const Rational& other) const { return !(other < *this); }
  bool operator>(const Rational& other) const { return other < *this; }
  bool operator>=(const Rational& other) const { return !(*this < other); }

  double toDouble() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// Canonical "num/den" form, e.g. "1/4", "3/8", "2/1".
  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace solonet
