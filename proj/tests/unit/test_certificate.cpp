#include <cmath>

#include "doctest.h"
#include "lllshift/certificate.hpp"
#include "lllshift/errors.hpp"

using namespace lllshift;

namespace {

GroupElement z(std::int64_t v) { return GroupElement::integer(v); }

double as_double(const LowerBound& b) { return b.approx(); }

FiniteInstance single_constraint(std::size_t cells, std::vector<Pattern> bad, const Rational& p, std::int64_t shift) {
  std::vector<GroupElement> s;
  for (std::size_t i = 0; i < cells; ++i) s.push_back(z(shift + static_cast<std::int64_t>(i)));
  FiniteInstance inst;
  const SupportSet support(s);
  inst.bad_sets.emplace(support, std::move(bad));
  inst.p.emplace(support, p);
  return inst;
}

}  // namespace

TEST_CASE("verify_general_instance on hand instances") {
  // |B_S| / 2^|S| = 1/4
  CHECK(verify_general_instance(single_constraint(2, {Pattern{{z(0), 0}, {z(1), 0}}}, rational(1, 2), 0)));
  // 3/4 > 1/2
  CHECK_FALSE(verify_general_instance(single_constraint(
      2, {Pattern{{z(0), 0}, {z(1), 0}}, Pattern{{z(0), 1}, {z(1), 0}}, Pattern{{z(0), 0}, {z(1), 1}}}, rational(1, 2),
      0)));

  FiniteInstance two = single_constraint(2, {Pattern{{z(0), 0}, {z(1), 0}}}, rational(1, 2), 0);
  FiniteInstance other = single_constraint(2, {Pattern{{z(5), 1}, {z(6), 1}}}, rational(1, 2), 5);
  two.bad_sets.merge(other.bad_sets);
  two.p.merge(other.p);
  CHECK(verify_general_instance(two));

  // Overlapping 3-cell supports with ratio 1/8 each: 1/8 <= 1/2 * (1 - 1/2).
  FiniteInstance overlap = single_constraint(3, {Pattern{{z(0), 0}, {z(1), 0}, {z(2), 0}}}, rational(1, 2), 0);
  FiniteInstance shifted = single_constraint(3, {Pattern{{z(2), 1}, {z(3), 1}, {z(4), 1}}}, rational(1, 2), 2);
  overlap.bad_sets.merge(shifted.bad_sets);
  overlap.p.merge(shifted.p);
  CHECK(verify_general_instance(overlap));
  // Same with the count form of B_S.
  FiniteInstance counted;
  for (const auto& [s, p] : overlap.p) {
    counted.bad_sets.emplace(s, BadCount{1});
    counted.p.emplace(s, p);
  }
  CHECK(verify_general_instance(counted));
  for (auto& [s, p] : counted.p) p = rational(1, 7);
  CHECK_FALSE(verify_general_instance(counted));
}

TEST_CASE("verify_general_instance rejects malformed input") {
  FiniteInstance bad = single_constraint(2, {Pattern{{z(7), 0}}}, rational(1, 2), 0);
  CHECK_THROWS_AS(verify_general_instance(bad), InvalidInstance);
  FiniteInstance p_range = single_constraint(1, {Pattern{{z(0), 0}}}, rational(3, 2), 0);
  CHECK_THROWS_AS(verify_general_instance(p_range), InvalidInstance);
}

TEST_CASE("e sandwich") {
  CHECK(e_lower() < e_upper());
  CHECK(to_double(e_lower()) < std::exp(1.0));
  CHECK(to_double(e_upper()) > std::exp(1.0));
}

TEST_CASE("find_N") {
  CHECK(find_N(1) == 8);
  CHECK_FALSE(occurrence_threshold_holds(1, 7));
  CHECK(occurrence_threshold_holds(1, 8));
  // Frozen from the mpmath oracle scan.
  CHECK(find_N(2) == 33);
  CHECK(find_N(3) == 92);
  for (std::uint64_t k = 1; k <= 4; ++k) {
    const std::uint64_t N = find_N(k);
    CHECK(occurrence_threshold_holds(k, N));
    CHECK_FALSE(occurrence_threshold_holds(k, N - 1));
  }
}

TEST_CASE("choose_a and b") {
  CHECK(choose_a(1, 8) == rational(65, 100));
  CHECK(choose_a(2, 33) == rational(60, 100));
  CHECK(choose_a(3, 92) == rational(60, 100));
  CHECK(to_double(b_value(rational(65, 100), 1, 8)) == doctest::Approx(0.50522236111321835686).epsilon(1e-15));
  CHECK(to_double(b_value(rational(60, 100), 2, 33)) == doctest::Approx(0.58208887721939944993).epsilon(1e-15));
  CHECK(to_double(b_value(rational(60, 100), 3, 92)) == doctest::Approx(0.59566786059200859049).epsilon(1e-15));
  CHECK(b_value(rational(1, 2), 1, 8) < rational(1, 2));
  CHECK(b_value(rational(64, 100), 1, 8) < rational(1, 2));
}

TEST_CASE("product_tail_lower_bound against the oracle") {
  struct Row {
    Rational a;
    std::uint64_t M;
    double c4, c16;
  };
  const Row rows[] = {
      {rational(65, 100), 23, 0.99048469633043802566, 0.96247859344238183698},
      {rational(1, 2), 5, 0.41513174058305670122, 0.029699132339567761257},
  };
  for (const Row& r : rows) {
    const std::uint64_t T = default_truncation(r.a, r.M);
    const double c4 = as_double(product_tail_lower_bound(r.a, r.M, ExponentForm{4}, T));
    const double c16 = as_double(product_tail_lower_bound(r.a, r.M, ExponentForm{16}, T));
    CHECK(c4 <= r.c4);
    CHECK(c4 >= r.c4 - 1e-9);
    CHECK(c16 <= r.c16);
    CHECK(c16 >= r.c16 - 1e-9);
  }
}

TEST_CASE("product_tail_lower_bound limits and monotonicity") {
  CHECK(as_double(product_tail_lower_bound(rational(1, 1000000), 0, ExponentForm{4}, 50)) ==
        doctest::Approx(1.0).epsilon(1e-4));
  for (const Rational& a : {rational(1, 2), rational(65, 100), rational(9, 10)}) {
    for (std::uint64_t T : {60, 120, 300}) {
      // Monotone up to the 256-bit working precision once both truncations have converged.
      const auto lo = product_tail_lower_bound(a, 3, ExponentForm{4}, T).exact();
      const auto hi = product_tail_lower_bound(a, 3, ExponentForm{4}, T + 10).exact();
      CHECK(lo * (1 - Rational(1, pow2(200))) <= hi);
    }
  }
}

TEST_CASE("find_M is minimal and monotone in a on samples") {
  const std::uint64_t M = find_M(1, 8, rational(65, 100));
  CHECK(M == 23);
  const Rational b = parse_rational(to_decimal_floor(b_value(rational(65, 100), 1, 8), 30));
  CHECK(occurrence_condition(1, 8, rational(65, 100), M, default_truncation(rational(65, 100), M)));
  CHECK(period_condition(b, rational(65, 100), M, default_truncation(rational(65, 100), M)));
  CHECK_FALSE(period_condition(b, rational(65, 100), M - 1, default_truncation(rational(65, 100), M - 1)));
  CHECK(find_M(2, 33, rational(60, 100)) == 21);
  CHECK(find_M(3, 92, rational(60, 100)) == 26);
  CHECK(find_M(1, 8, rational(70, 100)) >= M);
  CHECK(find_M(2, 33, rational(70, 100)) >= 21);
}

TEST_CASE("certificates") {
  const ParameterCertificate cert = derive_certificate(1);
  CHECK(cert.N == 8);
  CHECK(cert.a == rational(65, 100));
  CHECK(cert.M == 23);
  CHECK(cert.p0 == rational(1, 64));
  CHECK(verify_certificate(cert));
  CHECK_FALSE(verify_certificate(cert.with_M(0)));
  CHECK_FALSE(verify_certificate(cert.with_N(7)));
  const CertificateCheck c = check_certificate(cert.with_M(0));
  CHECK(c.well_formed);
  CHECK_FALSE(c.period_ok);

  ParameterCertificate lying = cert;
  lying.b_lower = rational(51, 100);  // above the true b
  CHECK_FALSE(check_certificate(lying).well_formed);
  ParameterCertificate wrong_p0 = cert;
  wrong_p0.p0 = rational(1, 2);
  CHECK_FALSE(verify_certificate(wrong_p0));
}

TEST_CASE("degree bound and exact intersecting translate counts on Z") {
  CHECK(degree_bound(8, 48) == 384);
  const Instance inst = Instance::build(GroupKind::Z, Pattern{{z(0), 1}}, 8, 0, 5);
  for (const auto* fn : inst.periods()) {
    for (const auto* fm : inst.periods()) {
      std::uint64_t count = 0;
      for (std::int64_t g = -200; g <= 200; ++g) {
        if (fn->Fn.intersects(translate_support(fm->Fn, z(g)))) ++count;
      }
      CHECK(count <= degree_bound(fn->Fn.size(), fm->Fn.size()));
    }
  }
  // Two intervals of lengths 4 and 6 meet in exactly 4 + 6 - 1 translates.
  const SupportSet a{z(0), z(1), z(2), z(3)};
  const SupportSet b{z(0), z(1), z(2), z(3), z(4), z(5)};
  std::uint64_t count = 0;
  for (std::int64_t g = -20; g <= 20; ++g) count += a.intersects(translate_support(b, z(g))) ? 1 : 0;
  CHECK(count == 9);
}

TEST_CASE("constraint weights") {
  const ParameterCertificate cert = derive_certificate(1);
  const Instance inst = Instance::build(GroupKind::Z, Pattern{{z(0), 1}}, cert.N, cert.M, 2);
  CHECK(constraint_weight(inst.family(0), cert) == rational(1, 64));
  CHECK(constraint_weight(inst.family(1), cert) == pow(cert.a, 24));
  CHECK(constraint_weight(inst.family(2), cert) == pow(cert.a, 25));
}

TEST_CASE("window_subinstance of a certified instance is a correct instance") {
  const ParameterCertificate cert = derive_certificate(1);
  const Instance inst = Instance::build(GroupKind::Z, Pattern{{z(0), 1}}, cert.N, cert.M, 2);
  const FiniteInstance sub = window_subinstance(inst, Window::ball(GroupKind::Z, 30), cert);
  CHECK(sub.p.size() == constraints_in_window(Window::ball(GroupKind::Z, 30), inst).size());
  CHECK(verify_general_instance(sub));
}
