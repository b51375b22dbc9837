#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lllshift/group.hpp"
#include "lllshift/pattern.hpp"

namespace lllshift {

/// A finite window of the group with a fixed index order.
///
/// Z and Z^2 windows are boxes (Z^2 indexed row-major: rows by y ascending, x
/// ascending inside a row). F2 windows are balls indexed in enumeration order.
class Window {
 public:
  static Window interval(std::int64_t lo, std::int64_t hi);
  static Window box(std::int64_t x0, std::int64_t x1, std::int64_t y0, std::int64_t y1);
  /// Ball of the given radius: an interval on Z, a square on Z^2, a word ball on F2.
  static Window ball(GroupKind kind, std::uint64_t radius);
  /// Parses "box:lo..hi" (Z), "box:x0..x1,y0..y1" (Z^2) or "ball:R" (any group).
  static Window parse(GroupKind kind, std::string_view spec);

  GroupKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  const GroupElement& element(std::size_t index) const { return elements_[index]; }

  std::optional<std::size_t> index_of(const GroupElement& g) const;
  bool contains(const GroupElement& g) const { return index_of(g).has_value(); }
  bool contains(const SupportSet& s) const;

  /// True iff h*g lies in the window for every h of norm <= margin.
  bool is_interior(const GroupElement& g, std::uint64_t margin) const;

  /// Z^2 only: grid width and height.
  std::int64_t width() const noexcept { return hi_x_ - lo_x_ + 1; }
  std::int64_t height() const noexcept { return hi_y_ - lo_y_ + 1; }

  std::string to_string() const;

  bool operator==(const Window& other) const {
    return kind_ == other.kind_ && lo_x_ == other.lo_x_ && hi_x_ == other.hi_x_ && lo_y_ == other.lo_y_ &&
           hi_y_ == other.hi_y_ && radius_ == other.radius_;
  }

 private:
  Window() = default;

  GroupKind kind_ = GroupKind::Z;
  std::int64_t lo_x_ = 0, hi_x_ = 0, lo_y_ = 0, hi_y_ = 0;
  std::uint64_t radius_ = 0;  // F2 only
  std::vector<GroupElement> elements_;
};

/// A {0,1}-assignment of every cell of a window.
class WindowAssignment {
 public:
  explicit WindowAssignment(std::shared_ptr<const Window> window);
  WindowAssignment(std::shared_ptr<const Window> window, std::vector<Bit> bits);

  const Window& window() const noexcept { return *window_; }
  const std::shared_ptr<const Window>& window_ptr() const noexcept { return window_; }
  std::size_t size() const noexcept { return bits_.size(); }

  /// Bit at a group element; throws UsageError outside the window.
  Bit at(const GroupElement& g) const;
  void set(const GroupElement& g, Bit b);
  Bit bit(std::size_t index) const { return bits_[index]; }
  void set_bit(std::size_t index, Bit b) { bits_[index] = b; }
  const std::vector<Bit>& bits() const noexcept { return bits_; }

  bool operator==(const WindowAssignment& other) const {
    return *window_ == *other.window_ && bits_ == other.bits_;
  }

 private:
  std::shared_ptr<const Window> window_;
  std::vector<Bit> bits_;
};

/// Cylinder membership f in U_phi restricted to the window. Throws UsageError
/// when dom(phi) is not inside the window.
bool matches(const WindowAssignment& f, const Pattern& phi);

}  // namespace lllshift
