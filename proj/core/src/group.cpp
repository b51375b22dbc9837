#include "lllshift/group.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>

#include "lllshift/errors.hpp"

namespace lllshift {
namespace {

constexpr std::string_view kLetters = "aAbB";

int letter_index(char c) {
  switch (c) {
    case 'a': return 0;
    case 'A': return 1;
    case 'b': return 2;
    case 'B': return 3;
    default: return -1;
  }
}

constexpr int inverse_letter(int i) { return i ^ 1; }

std::uint64_t pow3(std::uint64_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

// Counterclockwise walk around the max-norm shell of radius r, starting at (r, 0).
std::pair<std::int64_t, std::int64_t> shell_point(std::int64_t r, std::int64_t idx) {
  if (idx <= r) return {r, idx};
  if (idx <= 3 * r) return {r - (idx - r), r};
  if (idx <= 5 * r) return {-r, r - (idx - 3 * r)};
  if (idx <= 7 * r) return {-r + (idx - 5 * r), -r};
  return {r, -r + (idx - 7 * r)};
}

std::int64_t shell_index(std::int64_t x, std::int64_t y, std::int64_t r) {
  if (x == r && y >= 0) return y;
  if (y == r) return r + (r - x);
  if (x == -r) return 3 * r + (r - y);
  if (y == -r) return 5 * r + (x + r);
  return 7 * r + (y + r);
}

void require_same_group(const GroupElement& g, const GroupElement& h) {
  if (g.kind() != h.kind()) {
    throw UsageError("group elements from different groups: " + std::string(to_string(g.kind())) +
                     " and " + std::string(to_string(h.kind())));
  }
}

}  // namespace

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Z: return "Z";
    case GroupKind::Z2: return "Z2";
    case GroupKind::F2: return "F2";
  }
  return "?";
}

GroupKind parse_group_kind(std::string_view text) {
  text = trim(text);
  if (text == "Z") return GroupKind::Z;
  if (text == "Z2") return GroupKind::Z2;
  if (text == "F2") return GroupKind::F2;
  throw ParseError("unknown group '" + std::string(text) + "' (expected Z, Z2 or F2)");
}

GroupElement GroupElement::integer(std::int64_t value) {
  GroupElement g;
  g.kind_ = GroupKind::Z;
  g.x_ = value;
  return g;
}

GroupElement GroupElement::lattice(std::int64_t x, std::int64_t y) {
  GroupElement g;
  g.kind_ = GroupKind::Z2;
  g.x_ = x;
  g.y_ = y;
  return g;
}

GroupElement GroupElement::word(std::string_view letters) {
  GroupElement g;
  g.kind_ = GroupKind::F2;
  g.word_.reserve(letters.size());
  for (char c : letters) {
    const int i = letter_index(c);
    if (i < 0) throw UsageError(std::string("invalid free group letter '") + c + "'");
    if (!g.word_.empty() && letter_index(g.word_.back()) == inverse_letter(i)) {
      g.word_.pop_back();
    } else {
      g.word_.push_back(c);
    }
  }
  return g;
}

std::string GroupElement::to_string() const {
  switch (kind_) {
    case GroupKind::Z: return std::to_string(x_);
    case GroupKind::Z2: return std::to_string(x_) + "," + std::to_string(y_);
    case GroupKind::F2: return word_.empty() ? std::string("e") : word_;
  }
  return {};
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  std::size_t h = static_cast<std::size_t>(g.kind());
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(std::hash<std::int64_t>{}(g.x()));
  mix(std::hash<std::int64_t>{}(g.y()));
  if (!g.letters().empty()) mix(std::hash<std::string>{}(g.letters()));
  return h;
}

GroupElement identity(GroupKind kind) {
  switch (kind) {
    case GroupKind::Z: return GroupElement::integer(0);
    case GroupKind::Z2: return GroupElement::lattice(0, 0);
    case GroupKind::F2: return GroupElement::word("");
  }
  return {};
}

GroupElement mul(const GroupElement& g, const GroupElement& h) {
  require_same_group(g, h);
  switch (g.kind()) {
    case GroupKind::Z: return GroupElement::integer(g.x() + h.x());
    case GroupKind::Z2: return GroupElement::lattice(g.x() + h.x(), g.y() + h.y());
    case GroupKind::F2: {
      const std::string& u = g.letters();
      const std::string& v = h.letters();
      std::size_t cancel = 0;
      while (cancel < u.size() && cancel < v.size() &&
             letter_index(u[u.size() - 1 - cancel]) == inverse_letter(letter_index(v[cancel]))) {
        ++cancel;
      }
      std::string w;
      w.reserve(u.size() + v.size() - 2 * cancel);
      w.append(u, 0, u.size() - cancel);
      w.append(v, cancel, std::string::npos);
      return GroupElement::word(w);
    }
  }
  return {};
}

GroupElement inv(const GroupElement& g) {
  switch (g.kind()) {
    case GroupKind::Z: return GroupElement::integer(-g.x());
    case GroupKind::Z2: return GroupElement::lattice(-g.x(), -g.y());
    case GroupKind::F2: {
      std::string w(g.letters().rbegin(), g.letters().rend());
      for (char& c : w) c = kLetters[static_cast<std::size_t>(inverse_letter(letter_index(c)))];
      return GroupElement::word(w);
    }
  }
  return {};
}

std::uint64_t norm(const GroupElement& g) {
  switch (g.kind()) {
    case GroupKind::Z: return static_cast<std::uint64_t>(std::llabs(g.x()));
    case GroupKind::Z2:
      return static_cast<std::uint64_t>(std::max(std::llabs(g.x()), std::llabs(g.y())));
    case GroupKind::F2: return g.letters().size();
  }
  return 0;
}

std::uint64_t ball_size(GroupKind kind, std::uint64_t radius) {
  switch (kind) {
    case GroupKind::Z: return 2 * radius + 1;
    case GroupKind::Z2: return (2 * radius + 1) * (2 * radius + 1);
    case GroupKind::F2: return 1 + 2 * (pow3(radius) - 1);
  }
  return 0;
}

std::uint64_t enumeration_rank(const GroupElement& g) {
  switch (g.kind()) {
    case GroupKind::Z: {
      const std::int64_t x = g.x();
      if (x == 0) return 0;
      return x > 0 ? static_cast<std::uint64_t>(2 * x - 1) : static_cast<std::uint64_t>(-2 * x);
    }
    case GroupKind::Z2: {
      const auto r = static_cast<std::int64_t>(norm(g));
      if (r == 0) return 0;
      return static_cast<std::uint64_t>((2 * r - 1) * (2 * r - 1) + shell_index(g.x(), g.y(), r));
    }
    case GroupKind::F2: {
      const std::string& w = g.letters();
      const std::uint64_t len = w.size();
      if (len == 0) return 0;
      std::uint64_t rank = ball_size(GroupKind::F2, len - 1);
      int prev = -1;
      for (std::uint64_t i = 0; i < len; ++i) {
        const int cur = letter_index(w[i]);
        int smaller = cur;
        if (prev >= 0 && inverse_letter(prev) < cur) --smaller;
        rank += static_cast<std::uint64_t>(smaller) * pow3(len - 1 - i);
        prev = cur;
      }
      return rank;
    }
  }
  return 0;
}

GroupElement element_at_rank(GroupKind kind, std::uint64_t rank) {
  switch (kind) {
    case GroupKind::Z: {
      if (rank == 0) return GroupElement::integer(0);
      const auto half = static_cast<std::int64_t>((rank + 1) / 2);
      return GroupElement::integer(rank % 2 == 1 ? half : -half);
    }
    case GroupKind::Z2: {
      if (rank == 0) return GroupElement::lattice(0, 0);
      std::int64_t r = 1;
      while (static_cast<std::uint64_t>((2 * r + 1) * (2 * r + 1)) <= rank) ++r;
      const auto [x, y] = shell_point(r, static_cast<std::int64_t>(rank) - (2 * r - 1) * (2 * r - 1));
      return GroupElement::lattice(x, y);
    }
    case GroupKind::F2: {
      if (rank == 0) return GroupElement::word("");
      std::uint64_t len = 1;
      while (ball_size(GroupKind::F2, len) <= rank) ++len;
      std::uint64_t rest = rank - ball_size(GroupKind::F2, len - 1);
      std::string w;
      int prev = -1;
      for (std::uint64_t i = 0; i < len; ++i) {
        const std::uint64_t block = pow3(len - 1 - i);
        auto q = static_cast<int>(rest / block);
        rest %= block;
        if (prev >= 0 && q >= inverse_letter(prev)) ++q;
        w.push_back(kLetters[static_cast<std::size_t>(q)]);
        prev = q;
      }
      return GroupElement::word(w);
    }
  }
  return {};
}

GroupElement enumerate_nonidentity(GroupKind kind, std::uint64_t n) {
  if (n == 0) throw UsageError("enumerate_nonidentity: numbering starts at 1");
  return element_at_rank(kind, n);
}

std::vector<GroupElement> ball(GroupKind kind, std::uint64_t radius) {
  const std::uint64_t size = ball_size(kind, radius);
  std::vector<GroupElement> out;
  out.reserve(size);
  for (std::uint64_t r = 0; r < size; ++r) out.push_back(element_at_rank(kind, r));
  return out;
}

GroupElement parse_element(GroupKind kind, std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty group element");
  switch (kind) {
    case GroupKind::Z: return GroupElement::integer(parse_int(text));
    case GroupKind::Z2: {
      const auto comma = text.find(',');
      if (comma == std::string_view::npos) {
        throw ParseError("Z2 element must be 'x,y': '" + std::string(text) + "'");
      }
      return GroupElement::lattice(parse_int(text.substr(0, comma)), parse_int(text.substr(comma + 1)));
    }
    case GroupKind::F2: {
      if (text == "e") return GroupElement::word("");
      for (char c : text) {
        if (letter_index(c) < 0) throw ParseError("invalid F2 word '" + std::string(text) + "'");
      }
      return GroupElement::word(text);
    }
  }
  return {};
}

}  // namespace lllshift
