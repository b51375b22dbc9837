#pragma once

#include <cstdint>

#include "lllshift/rational.hpp"

namespace lllshift {

/// A nonnegative lower bound mantissa * 2^exponent with a bounded number of
/// significant bits. Every operation truncates toward zero, so a LowerBound
/// built from exact inputs never exceeds the exact value it approximates.
class LowerBound {
 public:
  static constexpr unsigned kPrecisionBits = 256;

  LowerBound() = default;

  /// Largest representable value <= q. Throws UsageError for q < 0.
  static LowerBound from_rational(const Rational& q);
  static LowerBound one();

  LowerBound operator*(const LowerBound& other) const;
  LowerBound pow(std::uint64_t exponent) const;

  bool is_zero() const noexcept { return mantissa_ == 0; }
  /// The exact value of the bound as a rational.
  Rational exact() const;
  double approx() const;

  friend bool operator<=(const Rational& q, const LowerBound& b) { return q <= b.exact(); }
  friend bool operator<(const Rational& q, const LowerBound& b) { return q < b.exact(); }

 private:
  LowerBound(BigInt mantissa, std::int64_t exponent);
  void normalize();

  BigInt mantissa_ = 0;
  std::int64_t exponent_ = 0;
};

}  // namespace lllshift
