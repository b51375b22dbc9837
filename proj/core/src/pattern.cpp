#include "lllshift/pattern.hpp"

#include <algorithm>

#include "lllshift/errors.hpp"

namespace lllshift {

SupportSet::SupportSet(std::vector<GroupElement> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw UsageError("support set must be nonempty");
  const GroupKind k = elements_.front().kind();
  for (const auto& g : elements_) {
    if (g.kind() != k) throw UsageError("support set mixes groups");
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool SupportSet::contains(const GroupElement& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

bool SupportSet::intersects(const SupportSet& other) const {
  auto i = elements_.begin();
  auto j = other.elements_.begin();
  while (i != elements_.end() && j != other.elements_.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

SupportSet translate_support(const SupportSet& support, const GroupElement& gamma) {
  std::vector<GroupElement> out;
  out.reserve(support.size());
  for (const auto& s : support) out.push_back(mul(s, gamma));
  return SupportSet(std::move(out));
}

std::uint64_t diameter(const SupportSet& support) {
  std::uint64_t best = 0;
  for (const auto& x : support) {
    for (const auto& y : support) best = std::max(best, norm(mul(x, inv(y))));
  }
  return best;
}

Pattern::Pattern(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw UsageError("pattern must have a nonempty domain");
  const GroupKind k = entries_.front().first.kind();
  for (const auto& [g, bit] : entries_) {
    if (g.kind() != k) throw UsageError("pattern mixes groups");
    if (bit > 1) throw UsageError("pattern values must be 0 or 1");
  }
  std::sort(entries_.begin(), entries_.end());
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i - 1].first == entries_[i].first) {
      throw UsageError("pattern has duplicate element " + entries_[i].first.to_string());
    }
  }
}

SupportSet Pattern::support() const {
  std::vector<GroupElement> v;
  v.reserve(entries_.size());
  for (const auto& e : entries_) v.push_back(e.first);
  return SupportSet(std::move(v));
}

Bit Pattern::at(const GroupElement& g) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), g,
                             [](const Entry& e, const GroupElement& key) { return e.first < key; });
  if (it == entries_.end() || it->first != g) {
    throw UsageError("element " + g.to_string() + " is outside the pattern domain");
  }
  return it->second;
}

Pattern translate_pattern(const GroupElement& gamma, const Pattern& phi) {
  const GroupElement gamma_inv = inv(gamma);
  std::vector<Pattern::Entry> out;
  out.reserve(phi.size());
  for (const auto& [sigma, bit] : phi) out.emplace_back(mul(sigma, gamma_inv), bit);
  return Pattern(std::move(out));
}

}  // namespace lllshift
