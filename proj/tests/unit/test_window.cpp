#include "doctest.h"
#include "lllshift/errors.hpp"
#include "lllshift/window.hpp"

using namespace lllshift;

TEST_CASE("window shapes") {
  const Window z = Window::interval(-3, 4);
  CHECK(z.size() == 8);
  CHECK(z.index_of(GroupElement::integer(-3)) == 0U);
  CHECK_FALSE(z.contains(GroupElement::integer(5)));

  const Window b = Window::box(0, 3, -1, 1);
  CHECK(b.size() == 12);
  CHECK(b.width() == 4);
  CHECK(b.height() == 3);
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.index_of(b.element(i)) == i);

  const Window f = Window::ball(GroupKind::F2, 3);
  CHECK(f.size() == 53);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(f.index_of(f.element(i)) == i);
  CHECK_FALSE(f.contains(GroupElement::word("abab")));
}

TEST_CASE("window parsing") {
  CHECK(Window::parse(GroupKind::Z, "box:-2..5") == Window::interval(-2, 5));
  CHECK(Window::parse(GroupKind::Z2, "box:0..63,0..63").size() == 4096);
  CHECK(Window::parse(GroupKind::Z, "ball:10").size() == 21);
  CHECK(Window::parse(GroupKind::F2, "ball:2") == Window::ball(GroupKind::F2, 2));
  CHECK_THROWS(Window::parse(GroupKind::Z, "box:3..1"));
  CHECK_THROWS(Window::parse(GroupKind::F2, "box:0..3"));
  CHECK_THROWS(Window::parse(GroupKind::Z, "circle:3"));
  const Window w = Window::box(-1, 2, 0, 3);
  CHECK(Window::parse(GroupKind::Z2, w.to_string()) == w);
}

TEST_CASE("interior cells") {
  const Window w = Window::interval(0, 10);
  CHECK(w.is_interior(GroupElement::integer(5), 5));
  CHECK_FALSE(w.is_interior(GroupElement::integer(4), 5));
  const Window f = Window::ball(GroupKind::F2, 3);
  CHECK(f.is_interior(identity(GroupKind::F2), 3));
  CHECK_FALSE(f.is_interior(GroupElement::word("a"), 3));
}

TEST_CASE("assignments") {
  auto w = std::make_shared<const Window>(Window::interval(0, 3));
  WindowAssignment f(w);
  f.set(GroupElement::integer(2), 1);
  CHECK(f.bits() == std::vector<Bit>{0, 0, 1, 0});
  CHECK_THROWS_AS(f.at(GroupElement::integer(4)), UsageError);
  CHECK_THROWS(WindowAssignment(w, {0, 1}));
}
