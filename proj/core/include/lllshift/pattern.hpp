#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "lllshift/group.hpp"

namespace lllshift {

using Bit = std::uint8_t;

/// A nonempty finite set of group elements, stored sorted and duplicate-free.
class SupportSet {
 public:
  SupportSet() = default;
  /// Deduplicates; throws UsageError if `elements` is empty or mixes groups.
  explicit SupportSet(std::vector<GroupElement> elements);
  SupportSet(std::initializer_list<GroupElement> elements)
      : SupportSet(std::vector<GroupElement>(elements)) {}

  GroupKind kind() const { return elements_.front().kind(); }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  bool contains(const GroupElement& g) const;
  bool intersects(const SupportSet& other) const;

  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  auto operator<=>(const SupportSet&) const = default;

 private:
  std::vector<GroupElement> elements_;
};

/// Right translate S*gamma (the translation used for constraint supports).
SupportSet translate_support(const SupportSet& support, const GroupElement& gamma);

/// max |x y^-1| over x, y in the support (right-invariant word metric).
std::uint64_t diameter(const SupportSet& support);

/// A finite partial function from group elements to {0,1} with nonempty domain.
class Pattern {
 public:
  using Entry = std::pair<GroupElement, Bit>;

  Pattern() = default;
  /// Throws UsageError on an empty entry list, duplicate keys, mixed groups or bits > 1.
  explicit Pattern(std::vector<Entry> entries);
  Pattern(std::initializer_list<Entry> entries) : Pattern(std::vector<Entry>(entries)) {}

  GroupKind kind() const { return entries_.front().first.kind(); }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  SupportSet support() const;
  /// Value at `g`; throws UsageError if g is outside the domain.
  Bit at(const GroupElement& g) const;

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  auto operator<=>(const Pattern&) const = default;

 private:
  std::vector<Entry> entries_;  // sorted by element
};

/// The shift action on patterns: dom(gamma . phi) = dom(phi) gamma^-1 and
/// (gamma . phi)(delta) = phi(delta gamma).
Pattern translate_pattern(const GroupElement& gamma, const Pattern& phi);

}  // namespace lllshift
