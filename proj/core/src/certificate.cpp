#include "lllshift/certificate.hpp"

#include <algorithm>
#include <set>

#include "lllshift/errors.hpp"

namespace lllshift {
namespace {

BigInt bad_set_size(const SupportSet& support, const BadSet& bad) {
  if (const auto* count = std::get_if<BadCount>(&bad)) return count->value;
  const auto& patterns = std::get<std::vector<Pattern>>(bad);
  std::set<Pattern> distinct;
  for (const auto& phi : patterns) {
    if (phi.support() != support) throw InvalidInstance("bad pattern domain differs from its support");
    distinct.insert(phi);
  }
  return BigInt(distinct.size());
}

Rational lower_decimal(const Rational& q) { return parse_rational(to_decimal_floor(q, 30)); }

}  // namespace

bool verify_general_instance(const FiniteInstance& instance) {
  std::vector<std::pair<const SupportSet*, BigInt>> domain;
  for (const auto& [support, bad] : instance.bad_sets) {
    BigInt size = bad_set_size(support, bad);
    if (size > 0) domain.emplace_back(&support, std::move(size));
  }
  std::vector<Rational> weights;
  weights.reserve(domain.size());
  for (const auto& [support, size] : domain) {
    const auto it = instance.p.find(*support);
    if (it == instance.p.end()) throw InvalidInstance("missing weight p(S) for a support in dom(B)");
    if (it->second < 0 || it->second >= 1) throw InvalidInstance("weights must lie in [0, 1)");
    weights.push_back(it->second);
  }

  for (std::size_t i = 0; i < domain.size(); ++i) {
    const auto& [support, size] = domain[i];
    const Rational lhs(size, pow2(support->size()));
    // Group the neighbour factors by weight; the product is then a handful of powers.
    std::map<Rational, std::uint64_t> multiplicity;
    for (std::size_t j = 0; j < domain.size(); ++j) {
      if (support->intersects(*domain[j].first)) ++multiplicity[weights[j]];
    }
    Rational rhs = weights[i] / (1 - weights[i]);
    for (const auto& [q, count] : multiplicity) rhs *= pow(1 - q, count);
    if (lhs > rhs) return false;
  }
  return true;
}

Rational e_lower() { return Rational(BigInt(27182818284LL), BigInt(10000000000LL)); }
Rational e_upper() { return Rational(BigInt(27182818285LL), BigInt(10000000000LL)); }

LowerBound product_tail_lower_bound(const Rational& a, std::uint64_t M, ExponentForm form, std::uint64_t T) {
  if (a <= 0 || a >= 1) throw UsageError("product_tail_lower_bound: need 0 < a < 1");
  if (T <= M) throw UsageError("product_tail_lower_bound: truncation T must exceed M");
  const std::uint64_t c = form.coefficient;
  LowerBound acc = LowerBound::one();
  Rational a_pow = pow(a, M + 1);
  for (std::uint64_t j = M + 1; j <= T; ++j) {
    acc = acc * LowerBound::from_rational(1 - a_pow).pow(c * j);
    a_pow *= a;
  }
  // a_pow = a^(T+1). sum_{j > T} j a^j = a^(T+1) ((T+1)(1-a) + a) / (1-a)^2.
  const Rational one_minus_a = 1 - a;
  const Rational weighted_sum = a_pow * (Rational(T + 1) * one_minus_a + a) / (one_minus_a * one_minus_a);
  const Rational deficit = Rational(c) * weighted_sum / (1 - a_pow);
  const Rational tail = deficit >= 1 ? Rational(0) : Rational(1 - deficit);
  return acc * LowerBound::from_rational(tail);
}

std::uint64_t default_truncation(const Rational& a, std::uint64_t M) {
  if (a <= 0 || a >= 1) throw UsageError("default_truncation: need 0 < a < 1");
  const Rational inv = 1 / (1 - a);
  BigInt ceil_inv = boost::multiprecision::numerator(inv) / boost::multiprecision::denominator(inv);
  if (ceil_inv * boost::multiprecision::denominator(inv) != boost::multiprecision::numerator(inv)) ++ceil_inv;
  return std::max<std::uint64_t>(200, M + 100 * ceil_inv.convert_to<std::uint64_t>());
}

bool occurrence_threshold_holds(std::uint64_t k, std::uint64_t N) {
  const Rational miss = 1 - Rational(BigInt(1), pow2(k));
  const Rational lhs = pow(miss, N) * e_upper() * Rational(k * k * N * N);
  return lhs < 1;
}

std::uint64_t find_N(std::uint64_t k) {
  if (k == 0) throw UsageError("find_N: k must be positive");
  std::uint64_t N = 1;
  while (!occurrence_threshold_holds(k, N)) ++N;
  return N;
}

Rational occurrence_weight(std::uint64_t k, std::uint64_t N) { return Rational(BigInt(1), BigInt(k * k * N * N)); }

Rational b_value(const Rational& a, std::uint64_t k, std::uint64_t N) {
  return a * pow(1 - occurrence_weight(k, N), 2 * k * N);
}

Rational choose_a(std::uint64_t k, std::uint64_t N) {
  const Rational correction = pow(1 - occurrence_weight(k, N), 2 * k * N);
  for (int j = 60; j <= 99; ++j) {
    const Rational a = rational(j, 100);
    if (a * correction > Rational(1, 2)) return a;
  }
  throw InfeasibleError("no a in {0.60, ..., 0.99} gives b > 1/2 for k=" + std::to_string(k) +
                        ", N=" + std::to_string(N));
}

bool occurrence_condition(std::uint64_t k, std::uint64_t N, const Rational& a, std::uint64_t M, std::uint64_t T) {
  const Rational lhs = pow(1 - Rational(BigInt(1), pow2(k)), N);
  const Rational p0 = occurrence_weight(k, N);
  const LowerBound self = LowerBound::from_rational(p0) * LowerBound::from_rational(1 - p0).pow(k * k * N * N - 1);
  const LowerBound rhs = self * product_tail_lower_bound(a, M, ExponentForm::occurrence(k, N), T);
  return lhs <= rhs;
}

bool period_condition(const Rational& b, const Rational& a, std::uint64_t M, std::uint64_t T) {
  const LowerBound lhs = LowerBound::from_rational(b) * product_tail_lower_bound(a, M, ExponentForm::period(), T);
  return Rational(1, 2) <= lhs;
}

std::uint64_t find_M(std::uint64_t k, std::uint64_t N, const Rational& a) {
  const Rational b = lower_decimal(b_value(a, k, N));
  const auto holds = [&](std::uint64_t M) {
    const std::uint64_t T = default_truncation(a, M);
    return occurrence_condition(k, N, a, M, T) && period_condition(b, a, M, T);
  };
  std::uint64_t hi = 1;
  while (!holds(hi)) {
    if (hi > (std::uint64_t{1} << 24)) throw InfeasibleError("find_M: no M found below 2^24");
    hi *= 2;
  }
  std::uint64_t lo = hi / 2;  // fails (or 0, which is never tried)
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (holds(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

ParameterCertificate ParameterCertificate::with_N(std::uint64_t new_N) const {
  ParameterCertificate c = *this;
  c.N = new_N;
  c.p0 = occurrence_weight(k, new_N);
  c.b_lower = lower_decimal(b_value(a, k, new_N));
  return c;
}

ParameterCertificate ParameterCertificate::with_M(std::uint64_t new_M) const {
  ParameterCertificate c = *this;
  c.M = new_M;
  if (c.T <= new_M) c.T = default_truncation(a, new_M);
  return c;
}

ParameterCertificate derive_certificate(std::uint64_t k) {
  ParameterCertificate c;
  c.k = k;
  c.N = find_N(k);
  c.a = choose_a(k, c.N);
  c.b_lower = lower_decimal(b_value(c.a, k, c.N));
  c.M = find_M(k, c.N, c.a);
  c.p0 = occurrence_weight(k, c.N);
  c.T = default_truncation(c.a, c.M);
  return c;
}

CertificateCheck check_certificate(const ParameterCertificate& cert) {
  CertificateCheck check;
  check.well_formed = cert.k >= 1 && cert.N >= 1 && cert.a > 0 && cert.a < 1 && cert.T > cert.M &&
                      cert.p0 == occurrence_weight(cert.k, cert.N) && cert.p0 < 1 &&
                      cert.b_lower <= b_value(cert.a, cert.k, cert.N);
  if (!check.well_formed) return check;
  check.b_exceeds_half = cert.b_lower > Rational(1, 2);
  check.occurrence_ok = occurrence_condition(cert.k, cert.N, cert.a, cert.M, cert.T);
  check.period_ok = period_condition(cert.b_lower, cert.a, cert.M, cert.T);
  return check;
}

bool verify_certificate(const ParameterCertificate& cert) { return check_certificate(cert).verified(); }

std::uint64_t degree_bound(std::uint64_t size_Fn, std::uint64_t size_Fm) { return size_Fn * size_Fm; }

Rational constraint_weight(const Family& family, const ParameterCertificate& cert) {
  if (std::holds_alternative<OccurrenceFamily>(family)) return cert.p0;
  const auto& period = std::get<PeriodFamily>(family);
  return pow(cert.a, period.n + period.M);
}

FiniteInstance window_subinstance(const Instance& instance, const Window& window, const ParameterCertificate& cert) {
  for (const auto& family : instance.families()) {
    if (const auto* occ = std::get_if<OccurrenceFamily>(&family)) {
      if (occ->k != cert.k || occ->N != cert.N) throw UsageError("occurrence family does not match the certificate");
    } else if (std::get<PeriodFamily>(family).M != cert.M) {
      throw UsageError("period family does not match the certificate");
    }
  }
  FiniteInstance out;
  for (const auto& c : constraints_in_window(window, instance)) {
    const Family& family = instance.family(c.family);
    SupportSet support = constraint_support(instance, c);
    const Rational prob = family_probability(family);
    const BigInt count = boost::multiprecision::numerator(prob * Rational(pow2(support.size())));
    if (out.bad_sets.count(support) > 0) throw UsageError("two constraint families share a support");
    out.p.emplace(support, constraint_weight(family, cert));
    out.bad_sets.emplace(std::move(support), BadCount{count});
  }
  return out;
}

}  // namespace lllshift
