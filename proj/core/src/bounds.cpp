#include "lllshift/bounds.hpp"

#include <cmath>

#include "lllshift/errors.hpp"

namespace lllshift {

LowerBound::LowerBound(BigInt mantissa, std::int64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  normalize();
}

void LowerBound::normalize() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  const auto bits = static_cast<std::int64_t>(boost::multiprecision::msb(mantissa_)) + 1;
  if (bits > static_cast<std::int64_t>(kPrecisionBits)) {
    const auto excess = bits - static_cast<std::int64_t>(kPrecisionBits);
    mantissa_ >>= static_cast<unsigned>(excess);
    exponent_ += excess;
  }
}

LowerBound LowerBound::from_rational(const Rational& q) {
  if (q < 0) throw UsageError("LowerBound requires a nonnegative value");
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (num == 0) return {};
  const auto shift = static_cast<std::int64_t>(kPrecisionBits) +
                     static_cast<std::int64_t>(boost::multiprecision::msb(den)) -
                     static_cast<std::int64_t>(boost::multiprecision::msb(num)) + 1;
  if (shift >= 0) {
    return LowerBound((num << static_cast<unsigned>(shift)) / den, -shift);
  }
  return LowerBound(num / (den << static_cast<unsigned>(-shift)), -shift);
}

LowerBound LowerBound::one() { return LowerBound(BigInt(1), 0); }

LowerBound LowerBound::operator*(const LowerBound& other) const {
  return LowerBound(mantissa_ * other.mantissa_, exponent_ + other.exponent_);
}

LowerBound LowerBound::pow(std::uint64_t exponent) const {
  LowerBound result = one();
  LowerBound base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Rational LowerBound::exact() const {
  if (exponent_ >= 0) return Rational(mantissa_ << static_cast<unsigned>(exponent_));
  return Rational(mantissa_, pow2(static_cast<std::uint64_t>(-exponent_)));
}

double LowerBound::approx() const {
  if (mantissa_ == 0) return 0.0;
  const auto bits = static_cast<std::int64_t>(boost::multiprecision::msb(mantissa_)) + 1;
  const auto drop = bits > 60 ? bits - 60 : 0;
  const double head = static_cast<double>(static_cast<std::uint64_t>(mantissa_ >> static_cast<unsigned>(drop)));
  return std::ldexp(head, static_cast<int>(exponent_ + drop));
}

}  // namespace lllshift
