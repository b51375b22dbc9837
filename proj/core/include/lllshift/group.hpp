#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lllshift {

/// The concrete countable groups shipped with the library.
enum class GroupKind { Z, Z2, F2 };

std::string_view to_string(GroupKind kind);
GroupKind parse_group_kind(std::string_view text);

/// An element of Z, Z^2 or the free group F2 in canonical form.
///
/// Z uses x(); Z^2 uses (x(), y()); F2 stores a freely reduced word over the
/// letters a, A, b, B where capitals are inverses. Equality is encoding
/// equality; the ordering is structural and only meant for ordered containers.
/// Use enumeration_rank() for the canonical group enumeration order.
class GroupElement {
 public:
  GroupElement() = default;

  static GroupElement integer(std::int64_t value);
  static GroupElement lattice(std::int64_t x, std::int64_t y);
  /// Freely reduces `letters`; throws UsageError on characters outside {a,A,b,B}.
  static GroupElement word(std::string_view letters);

  GroupKind kind() const noexcept { return kind_; }
  std::int64_t x() const noexcept { return x_; }
  std::int64_t y() const noexcept { return y_; }
  const std::string& letters() const noexcept { return word_; }

  bool is_identity() const noexcept { return x_ == 0 && y_ == 0 && word_.empty(); }

  /// Text encoding: decimal for Z, "x,y" for Z^2, reduced word or "e" for F2.
  std::string to_string() const;

  auto operator<=>(const GroupElement&) const = default;

 private:
  GroupKind kind_ = GroupKind::Z;
  std::int64_t x_ = 0;
  std::int64_t y_ = 0;
  std::string word_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

GroupElement identity(GroupKind kind);

/// Group product g*h. Throws UsageError when the operands belong to different groups.
GroupElement mul(const GroupElement& g, const GroupElement& h);
GroupElement inv(const GroupElement& g);

/// Word norm: |x| on Z, max-norm on Z^2, reduced length on F2.
std::uint64_t norm(const GroupElement& g);

/// Position of `g` in the fixed enumeration: identity is 0, gamma_n is n.
///
/// Z: 0, 1, -1, 2, -2, ...
/// Z^2: by max-norm shell; inside shell r counterclockwise starting at (r, 0).
/// F2: by word length, then lexicographic with a < A < b < B.
std::uint64_t enumeration_rank(const GroupElement& g);

/// Inverse of enumeration_rank.
GroupElement element_at_rank(GroupKind kind, std::uint64_t rank);

/// gamma_n, the n-th non-identity element (n >= 1). Throws UsageError for n = 0.
GroupElement enumerate_nonidentity(GroupKind kind, std::uint64_t n);

/// Number of elements of norm <= radius.
std::uint64_t ball_size(GroupKind kind, std::uint64_t radius);

/// All elements of norm <= radius, in enumeration order.
std::vector<GroupElement> ball(GroupKind kind, std::uint64_t radius);

/// Parses the text encoding produced by GroupElement::to_string().
GroupElement parse_element(GroupKind kind, std::string_view text);

}  // namespace lllshift
