#include "lllshift/window.hpp"

#include <algorithm>
#include <charconv>

#include "lllshift/errors.hpp"

namespace lllshift {
namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("bad integer in window spec: '" + std::string(s) + "'");
  }
  return v;
}

std::pair<std::int64_t, std::int64_t> parse_range(std::string_view s) {
  const auto dots = s.find("..");
  if (dots == std::string_view::npos) throw ParseError("window range must be 'lo..hi': '" + std::string(s) + "'");
  const auto lo = parse_int(s.substr(0, dots));
  const auto hi = parse_int(s.substr(dots + 2));
  if (lo > hi) throw ParseError("empty window range '" + std::string(s) + "'");
  return {lo, hi};
}

}  // namespace

Window Window::interval(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw UsageError("empty interval window");
  Window w;
  w.kind_ = GroupKind::Z;
  w.lo_x_ = lo;
  w.hi_x_ = hi;
  w.elements_.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (auto x = lo; x <= hi; ++x) w.elements_.push_back(GroupElement::integer(x));
  return w;
}

Window Window::box(std::int64_t x0, std::int64_t x1, std::int64_t y0, std::int64_t y1) {
  if (x0 > x1 || y0 > y1) throw UsageError("empty box window");
  Window w;
  w.kind_ = GroupKind::Z2;
  w.lo_x_ = x0;
  w.hi_x_ = x1;
  w.lo_y_ = y0;
  w.hi_y_ = y1;
  w.elements_.reserve(static_cast<std::size_t>((x1 - x0 + 1) * (y1 - y0 + 1)));
  for (auto y = y0; y <= y1; ++y) {
    for (auto x = x0; x <= x1; ++x) w.elements_.push_back(GroupElement::lattice(x, y));
  }
  return w;
}

Window Window::ball(GroupKind kind, std::uint64_t radius) {
  const auto r = static_cast<std::int64_t>(radius);
  switch (kind) {
    case GroupKind::Z: return interval(-r, r);
    case GroupKind::Z2: return box(-r, r, -r, r);
    case GroupKind::F2: {
      Window w;
      w.kind_ = GroupKind::F2;
      w.radius_ = radius;
      w.elements_ = lllshift::ball(GroupKind::F2, radius);
      return w;
    }
  }
  throw UsageError("unknown group");
}

Window Window::parse(GroupKind kind, std::string_view spec) {
  if (spec.starts_with("ball:")) {
    const auto r = parse_int(spec.substr(5));
    if (r < 0) throw ParseError("negative window radius");
    return ball(kind, static_cast<std::uint64_t>(r));
  }
  if (!spec.starts_with("box:")) throw ParseError("window spec must start with 'box:' or 'ball:'");
  spec.remove_prefix(4);
  switch (kind) {
    case GroupKind::Z: {
      const auto [lo, hi] = parse_range(spec);
      return interval(lo, hi);
    }
    case GroupKind::Z2: {
      const auto comma = spec.find(',');
      if (comma == std::string_view::npos) throw ParseError("Z2 box must be 'x0..x1,y0..y1'");
      const auto [x0, x1] = parse_range(spec.substr(0, comma));
      const auto [y0, y1] = parse_range(spec.substr(comma + 1));
      return box(x0, x1, y0, y1);
    }
    case GroupKind::F2: throw ParseError("F2 windows are balls ('ball:R')");
  }
  throw ParseError("unknown group");
}

std::optional<std::size_t> Window::index_of(const GroupElement& g) const {
  if (g.kind() != kind_) throw UsageError("element and window belong to different groups");
  switch (kind_) {
    case GroupKind::Z:
      if (g.x() < lo_x_ || g.x() > hi_x_) return std::nullopt;
      return static_cast<std::size_t>(g.x() - lo_x_);
    case GroupKind::Z2:
      if (g.x() < lo_x_ || g.x() > hi_x_ || g.y() < lo_y_ || g.y() > hi_y_) return std::nullopt;
      return static_cast<std::size_t>((g.y() - lo_y_) * width() + (g.x() - lo_x_));
    case GroupKind::F2: {
      if (g.letters().size() > radius_) return std::nullopt;
      return static_cast<std::size_t>(enumeration_rank(g));
    }
  }
  return std::nullopt;
}

bool Window::contains(const SupportSet& s) const {
  return std::all_of(s.begin(), s.end(), [this](const GroupElement& g) { return contains(g); });
}

bool Window::is_interior(const GroupElement& g, std::uint64_t margin) const {
  if (g.kind() != kind_) throw UsageError("element and window belong to different groups");
  const auto m = static_cast<std::int64_t>(margin);
  switch (kind_) {
    case GroupKind::Z: return g.x() - m >= lo_x_ && g.x() + m <= hi_x_;
    case GroupKind::Z2:
      return g.x() - m >= lo_x_ && g.x() + m <= hi_x_ && g.y() - m >= lo_y_ && g.y() + m <= hi_y_;
    case GroupKind::F2: return g.letters().size() + margin <= radius_;
  }
  return false;
}

std::string Window::to_string() const {
  switch (kind_) {
    case GroupKind::Z: return "box:" + std::to_string(lo_x_) + ".." + std::to_string(hi_x_);
    case GroupKind::Z2:
      return "box:" + std::to_string(lo_x_) + ".." + std::to_string(hi_x_) + "," + std::to_string(lo_y_) +
             ".." + std::to_string(hi_y_);
    case GroupKind::F2: return "ball:" + std::to_string(radius_);
  }
  return {};
}

WindowAssignment::WindowAssignment(std::shared_ptr<const Window> window)
    : window_(std::move(window)), bits_(window_->size(), 0) {}

WindowAssignment::WindowAssignment(std::shared_ptr<const Window> window, std::vector<Bit> bits)
    : window_(std::move(window)), bits_(std::move(bits)) {
  if (bits_.size() != window_->size()) throw UsageError("assignment size does not match window size");
  for (Bit b : bits_) {
    if (b > 1) throw UsageError("assignment bits must be 0 or 1");
  }
}

Bit WindowAssignment::at(const GroupElement& g) const {
  const auto i = window_->index_of(g);
  if (!i) throw UsageError("element " + g.to_string() + " is outside the window");
  return bits_[*i];
}

void WindowAssignment::set(const GroupElement& g, Bit b) {
  const auto i = window_->index_of(g);
  if (!i) throw UsageError("element " + g.to_string() + " is outside the window");
  bits_[*i] = b;
}

bool matches(const WindowAssignment& f, const Pattern& phi) {
  for (const auto& entry : phi) {
    if (!f.window().contains(entry.first)) {
      throw UsageError("pattern support escapes the window at " + entry.first.to_string());
    }
  }
  return std::all_of(phi.begin(), phi.end(), [&f](const Pattern::Entry& e) { return f.at(e.first) == e.second; });
}

}  // namespace lllshift
