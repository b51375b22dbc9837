#include <random>

#include "doctest.h"
#include "lllshift/errors.hpp"
#include "lllshift/pattern.hpp"
#include "lllshift/window.hpp"

using namespace lllshift;

namespace {

GroupElement z(std::int64_t v) { return GroupElement::integer(v); }

std::shared_ptr<const Window> interval(std::int64_t lo, std::int64_t hi) {
  return std::make_shared<const Window>(Window::interval(lo, hi));
}

}  // namespace

TEST_CASE("pattern validation") {
  CHECK_THROWS_AS(Pattern(std::vector<Pattern::Entry>{}), UsageError);
  CHECK_THROWS_AS((Pattern{{z(0), 1}, {z(0), 0}}), UsageError);
  CHECK_THROWS_AS((Pattern{{z(0), 2}}), UsageError);
  CHECK_THROWS_AS((Pattern{{z(0), 1}, {GroupElement::word("a"), 1}}), UsageError);
  const Pattern p{{z(3), 1}, {z(-1), 0}};
  CHECK(p.entries().front().first == z(-1));
  CHECK(p.at(z(3)) == 1);
  CHECK_THROWS_AS(p.at(z(0)), UsageError);
}

TEST_CASE("translate_pattern") {
  const Pattern phi{{z(0), 1}};
  CHECK(translate_pattern(z(0), phi) == phi);
  CHECK(translate_pattern(z(1), phi) == Pattern{{z(-1), 1}});
}

TEST_CASE("translate_pattern is a left action") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(0, 5), letter(0, 3), bit(0, 1);
  const auto word = [&] {
    std::string w;
    for (int i = len(rng); i > 0; --i) w += "aAbB"[letter(rng)];
    return GroupElement::word(w);
  };
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Pattern::Entry> entries;
    for (int i = 0; i < 4; ++i) entries.emplace_back(word(), static_cast<Bit>(bit(rng)));
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const auto& x, const auto& y) { return x.first == y.first; }),
                  entries.end());
    const Pattern phi(entries);
    const GroupElement g = word(), d = word();
    REQUIRE(translate_pattern(mul(g, d), phi) == translate_pattern(g, translate_pattern(d, phi)));
    for (const auto& [x, b] : translate_pattern(g, phi)) REQUIRE(phi.at(mul(x, g)) == b);
  }
}

TEST_CASE("translate_support") {
  CHECK(translate_support(SupportSet{z(0), z(1)}, z(3)) == SupportSet{z(3), z(4)});
  const SupportSet s{z(-2), z(5)};
  CHECK(translate_support(s, z(0)) == s);
  CHECK(translate_support(SupportSet{GroupElement::word(""), GroupElement::word("a")}, GroupElement::word("b")) ==
        SupportSet{GroupElement::word("b"), GroupElement::word("ab")});
  // right multiplication: S(gh) = (Sg)h
  const GroupElement g = GroupElement::word("aB"), h = GroupElement::word("ba");
  const SupportSet f{GroupElement::word("a"), GroupElement::word("bb")};
  CHECK(translate_support(f, mul(g, h)) == translate_support(translate_support(f, g), h));
}

TEST_CASE("support sets") {
  CHECK_THROWS_AS(SupportSet(std::vector<GroupElement>{}), UsageError);
  const SupportSet s{z(2), z(0), z(2)};
  CHECK(s.size() == 2);
  CHECK(s.contains(z(0)));
  CHECK(s.intersects(SupportSet{z(2), z(9)}));
  CHECK_FALSE(s.intersects(SupportSet{z(1)}));
  CHECK(diameter(SupportSet{z(-3), z(4)}) == 7);
  CHECK(diameter(SupportSet{GroupElement::lattice(0, 0), GroupElement::lattice(2, -1)}) == 2);
}

TEST_CASE("matches") {
  const auto w = interval(-2, 2);
  const WindowAssignment zeros(w);
  CHECK(matches(zeros, Pattern{{z(0), 0}}));
  CHECK_FALSE(matches(zeros, Pattern{{z(0), 1}}));
  const WindowAssignment f(interval(0, 4), {0, 1, 0, 1, 0});
  CHECK(matches(f, Pattern{{z(1), 1}, {z(3), 1}}));
  CHECK_FALSE(matches(f, Pattern{{z(1), 1}, {z(2), 1}}));
  CHECK_THROWS_AS(matches(f, Pattern{{z(5), 0}}), UsageError);
}
