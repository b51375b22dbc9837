#include "lllshift/rational.hpp"

#include "lllshift/errors.hpp"

namespace lllshift {
namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::string format_scaled(BigInt scaled, unsigned digits) {
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string s = scaled.str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out = s.substr(0, s.size() - digits);
  std::string frac = s.substr(s.size() - digits);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (!frac.empty()) out += "." + frac;
  if (negative && out != "0") out.insert(0, "-");
  return out;
}

std::string to_decimal(const Rational& q, unsigned digits, bool round_up) {
  const BigInt scale = boost::multiprecision::pow(BigInt(10), digits);
  const BigInt num = boost::multiprecision::numerator(q) * scale;
  const BigInt den = boost::multiprecision::denominator(q);
  BigInt scaled = floor_div(num, den);
  if (round_up && scaled * den != num) ++scaled;
  return format_scaled(scaled, digits);
}

}  // namespace

Rational rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw UsageError("zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

Rational pow(const Rational& base, std::uint64_t exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

BigInt pow2(std::uint64_t exponent) {
  BigInt r = 1;
  r <<= static_cast<unsigned>(exponent);
  return r;
}

std::string to_decimal_floor(const Rational& q, unsigned digits) { return to_decimal(q, digits, false); }
std::string to_decimal_ceil(const Rational& q, unsigned digits) { return to_decimal(q, digits, true); }

namespace {

// cpp_int treats a leading 0 as an octal prefix.
BigInt decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  if (digits.empty()) return BigInt(0);
  return BigInt(std::string(digits));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number");
  const auto bad = [&] { return ParseError("not a decimal rational: '" + std::string(text) + "'"); };
  const auto digits_only = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    const bool neg = !num.empty() && num.front() == '-';
    if (neg) num.remove_prefix(1);
    if (!digits_only(num) || !digits_only(den)) throw bad();
    const BigInt d = decimal_integer(den);
    if (d == 0) throw bad();
    Rational q(decimal_integer(num), d);
    return neg ? Rational(-q) : q;
  }
  std::string_view body = text;
  const bool neg = body.front() == '-';
  if (neg) body.remove_prefix(1);
  const auto dot = body.find('.');
  std::string_view whole = body.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw bad();
  if (!whole.empty() && !digits_only(whole)) throw bad();
  if (dot != std::string_view::npos && !digits_only(frac)) throw bad();
  const std::string digits = std::string(whole) + std::string(frac);
  Rational q(decimal_integer(digits), boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size())));
  return neg ? Rational(-q) : q;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace lllshift
