#pragma once

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "lllshift/bounds.hpp"
#include "lllshift/instance.hpp"
#include "lllshift/pattern.hpp"
#include "lllshift/rational.hpp"
#include "lllshift/window.hpp"

namespace lllshift {

// ---------------------------------------------------------------------------
// General finite instances
// ---------------------------------------------------------------------------

/// |B_S| given without listing the patterns (for families too large to enumerate).
struct BadCount {
  BigInt value;
};

/// B_S either listed explicitly or given by its exact size.
using BadSet = std::variant<std::vector<Pattern>, BadCount>;

/// A finite instance B together with a candidate weight function p on dom(B).
struct FiniteInstance {
  std::map<SupportSet, BadSet> bad_sets;
  std::map<SupportSet, Rational> p;
};

/// Checks, in exact arithmetic, that for every S in dom(B)
///
///   |B_S| / 2^|S|  <=  p(S) / (1 - p(S)) * prod_{S' in dom(B), S' meets S} (1 - p(S')),
///
/// where the product includes S' = S. Supports with an empty bad set are not
/// part of dom(B). Throws InvalidInstance when a weight is missing or outside
/// [0, 1), or when a listed pattern's domain differs from its support.
bool verify_general_instance(const FiniteInstance& instance);

// ---------------------------------------------------------------------------
// The parameter scheme (k, N, a, b, M, p)
// ---------------------------------------------------------------------------

/// Rational sandwich e_lower < e < e_upper.
Rational e_lower();
Rational e_upper();

/// Coefficient c in prod_{j > M} (1 - a^j)^(c j). The occurrence form has
/// c = 2kN (products over period neighbours of an F0 translate), the period
/// form has c = 4 (the per-unit factor of the period inequality).
struct ExponentForm {
  std::uint64_t coefficient = 4;

  static ExponentForm occurrence(std::uint64_t k, std::uint64_t N) { return {2 * k * N}; }
  static ExponentForm period() { return {4}; }
};

/// Rigorous lower bound on prod_{j = M+1}^inf (1 - a^j)^(c j).
///
/// Factors with j <= T are evaluated with truncating arithmetic. The tail is
/// bounded through -ln(1 - x) <= x / (1 - x) and the closed form of
/// sum_{j > T} j a^j, giving tail >= exp(-D) >= 1 - D. Throws UsageError
/// unless 0 < a < 1 and T > M.
LowerBound product_tail_lower_bound(const Rational& a, std::uint64_t M, ExponentForm form, std::uint64_t T);

/// Default truncation index max(200, M + 100 * ceil(1 / (1 - a))).
std::uint64_t default_truncation(const Rational& a, std::uint64_t M);

/// True iff (1 - 2^-k)^N < 1 / (e k^2 N^2), using e < e_upper().
bool occurrence_threshold_holds(std::uint64_t k, std::uint64_t N);

/// Smallest N >= 1 satisfying occurrence_threshold_holds.
std::uint64_t find_N(std::uint64_t k);

/// p0 = 1 / (k^2 N^2), the weight of every F0 translate.
Rational occurrence_weight(std::uint64_t k, std::uint64_t N);

/// b(a) = a * (1 - p0)^(2kN), evaluated exactly.
Rational b_value(const Rational& a, std::uint64_t k, std::uint64_t N);

/// Smallest a on the grid 0.60, 0.61, ..., 0.99 with b(a) > 1/2.
/// Throws InfeasibleError if the grid has no such point.
Rational choose_a(std::uint64_t k, std::uint64_t N);

/// (1 - 2^-k)^N <= p0 (1 - p0)^(k^2 N^2 - 1) * prod_{j > M} (1 - a^j)^(2kN j).
bool occurrence_condition(std::uint64_t k, std::uint64_t N, const Rational& a, std::uint64_t M, std::uint64_t T);

/// b * prod_{j > M} (1 - a^j)^(4j) >= 1/2, which gives the period inequality
/// for every n >= 1 at once (its right side is the (n+M)-th power of this factor).
bool period_condition(const Rational& b, const Rational& a, std::uint64_t M, std::uint64_t T);

/// Smallest M >= 1 (doubling, then bisection) for which both conditions hold
/// at the default truncation.
std::uint64_t find_M(std::uint64_t k, std::uint64_t N, const Rational& a);

struct ParameterCertificate {
  std::uint64_t k = 0;
  std::uint64_t N = 0;
  Rational a;
  Rational b_lower;  // lower bound on b(a), rounded to a short decimal
  std::uint64_t M = 0;
  Rational p0;
  std::uint64_t T = 0;

  /// Copy with N replaced and the N-dependent fields (p0, b_lower) recomputed.
  ParameterCertificate with_N(std::uint64_t new_N) const;
  /// Copy with M replaced; T is kept unless it would no longer exceed M.
  ParameterCertificate with_M(std::uint64_t new_M) const;
};

/// find_N, choose_a, find_M for a pattern of size k.
ParameterCertificate derive_certificate(std::uint64_t k);

/// Per-condition verdicts of verify_certificate.
struct CertificateCheck {
  bool well_formed = false;      // ranges of k, N, a, T; p0 = 1/(k^2 N^2); b_lower <= b(a)
  bool b_exceeds_half = false;   // b_lower > 1/2
  bool occurrence_ok = false;    // occurrence inequality
  bool period_ok = false;        // b_lower * tail >= 1/2

  bool verified() const { return well_formed && b_exceeds_half && occurrence_ok && period_ok; }
};

CertificateCheck check_certificate(const ParameterCertificate& cert);
bool verify_certificate(const ParameterCertificate& cert);

/// |F_n| * |F_m|: bound on the number of translates of F_m meeting a fixed
/// translate of F_n.
std::uint64_t degree_bound(std::uint64_t size_Fn, std::uint64_t size_Fm);

/// p(S) for a translate of `family`: p0 for the occurrence family, a^(n+M) otherwise.
Rational constraint_weight(const Family& family, const ParameterCertificate& cert);

/// The finite restriction of the instance to the constraints lying inside
/// the window, with exact bad counts and weights inherited from the certificate.
FiniteInstance window_subinstance(const Instance& instance, const Window& window, const ParameterCertificate& cert);

}  // namespace lllshift
