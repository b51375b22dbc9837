#include "lllshift/instance.hpp"

#include <algorithm>
#include <unordered_set>

#include "lllshift/errors.hpp"

namespace lllshift {
namespace {

using ElementSet = std::unordered_set<GroupElement, GroupElementHash>;

void require_inside(const WindowAssignment& f, const SupportSet& support) {
  if (!f.window().contains(support)) throw UsageError("constraint support escapes the window");
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

OccurrenceFamily make_occurrence_family(const Pattern& psi, std::vector<GroupElement> D0) {
  if (psi.empty()) throw UsageError("psi must be nonempty");
  if (D0.empty()) throw UsageError("D0 must be nonempty");
  const SupportSet dom = psi.support();
  ElementSet used;
  std::vector<GroupElement> cells;
  for (const auto& delta : D0) {
    for (const auto& sigma : dom) {
      const GroupElement cell = mul(sigma, delta);
      if (!used.insert(cell).second) {
        throw UsageError("translates of dom(psi) by D0 overlap at " + cell.to_string());
      }
      cells.push_back(cell);
    }
  }
  OccurrenceFamily fam;
  fam.psi = psi;
  fam.k = psi.size();
  fam.N = D0.size();
  fam.D0 = std::move(D0);
  fam.F0 = SupportSet(std::move(cells));
  return fam;
}

PeriodFamily make_period_family(GroupKind kind, std::uint64_t n, std::uint64_t M, std::vector<GroupElement> Dn) {
  const GroupElement gamma = enumerate_nonidentity(kind, n);
  if (Dn.size() != n + M) throw UsageError("period family D" + std::to_string(n) + " must have n+M elements");
  ElementSet base(Dn.begin(), Dn.end());
  if (base.size() != Dn.size()) throw UsageError("period family offsets repeat");
  std::vector<GroupElement> cells = Dn;
  for (const auto& delta : Dn) {
    GroupElement shifted = mul(delta, gamma);
    if (base.count(shifted) > 0) {
      throw UsageError("D" + std::to_string(n) + " meets its gamma_n translate at " + shifted.to_string());
    }
    cells.push_back(std::move(shifted));
  }
  PeriodFamily fam;
  fam.n = n;
  fam.gamma = gamma;
  fam.M = M;
  fam.Dn = std::move(Dn);
  fam.Fn = SupportSet(std::move(cells));
  return fam;
}

OccurrenceFamily build_D0(GroupKind kind, const Pattern& psi, std::size_t N) {
  if (N == 0) throw UsageError("build_D0: N must be positive");
  if (psi.empty()) throw UsageError("build_D0: psi must be nonempty");
  if (psi.kind() != kind) throw UsageError("build_D0: psi belongs to another group");
  const SupportSet dom = psi.support();
  ElementSet used;
  std::vector<GroupElement> D0;
  for (std::uint64_t rank = 0; D0.size() < N; ++rank) {
    const GroupElement delta = element_at_rank(kind, rank);
    std::vector<GroupElement> cells;
    bool free = true;
    for (const auto& sigma : dom) {
      cells.push_back(mul(sigma, delta));
      if (used.count(cells.back()) > 0) {
        free = false;
        break;
      }
    }
    if (!free) continue;
    used.insert(cells.begin(), cells.end());
    D0.push_back(delta);
  }
  return make_occurrence_family(psi, std::move(D0));
}

PeriodFamily build_Dn(GroupKind kind, std::uint64_t n, std::uint64_t M) {
  const GroupElement gamma = enumerate_nonidentity(kind, n);
  ElementSet chosen;
  ElementSet shifted;
  std::vector<GroupElement> Dn;
  for (std::uint64_t rank = 0; Dn.size() < n + M; ++rank) {
    GroupElement delta = element_at_rank(kind, rank);
    GroupElement image = mul(delta, gamma);
    if (shifted.count(delta) > 0 || chosen.count(image) > 0) continue;
    chosen.insert(delta);
    shifted.insert(std::move(image));
    Dn.push_back(std::move(delta));
  }
  return make_period_family(kind, n, M, std::move(Dn));
}

const SupportSet& base_support(const Family& family) {
  return std::visit(Overloaded{[](const OccurrenceFamily& f) -> const SupportSet& { return f.F0; },
                               [](const PeriodFamily& f) -> const SupportSet& { return f.Fn; }},
                    family);
}

bool is_bad_occurrence(const WindowAssignment& f, const OccurrenceFamily& family, const GroupElement& gamma) {
  require_inside(f, translate_support(family.F0, gamma));
  for (const auto& delta : family.D0) {
    const GroupElement offset = mul(delta, gamma);
    const bool occurs = std::all_of(family.psi.begin(), family.psi.end(), [&](const Pattern::Entry& e) {
      return f.at(mul(e.first, offset)) == e.second;
    });
    if (occurs) return false;
  }
  return true;
}

bool is_bad_period(const WindowAssignment& f, const PeriodFamily& family, const GroupElement& gamma) {
  require_inside(f, translate_support(family.Fn, gamma));
  const GroupElement shifted = mul(family.gamma, gamma);
  return std::all_of(family.Dn.begin(), family.Dn.end(), [&](const GroupElement& delta) {
    return f.at(mul(delta, gamma)) == f.at(mul(delta, shifted));
  });
}

Rational family_probability(const OccurrenceFamily& family) {
  const BigInt misses = boost::multiprecision::pow(pow2(family.k) - 1, static_cast<unsigned>(family.N));
  return Rational(misses, pow2(family.k * family.N));
}

Rational family_probability(const PeriodFamily& family) { return Rational(BigInt(1), pow2(family.n + family.M)); }

Rational family_probability(const Family& family) {
  return std::visit([](const auto& f) { return family_probability(f); }, family);
}

Instance::Instance(GroupKind kind, std::optional<OccurrenceFamily> occurrence, std::vector<PeriodFamily> periods)
    : kind_(kind) {
  if (occurrence) {
    if (occurrence->psi.kind() != kind) throw UsageError("occurrence family belongs to another group");
    families_.emplace_back(std::move(*occurrence));
  }
  for (auto& p : periods) {
    if (p.gamma.kind() != kind) throw UsageError("period family belongs to another group");
    families_.emplace_back(std::move(p));
  }
}

Instance Instance::build(GroupKind kind, const std::optional<Pattern>& psi, std::size_t N, std::uint64_t M,
                         std::uint64_t n_max) {
  std::optional<OccurrenceFamily> occ;
  if (psi) occ = build_D0(kind, *psi, N);
  std::vector<PeriodFamily> periods;
  for (std::uint64_t n = 1; n <= n_max; ++n) periods.push_back(build_Dn(kind, n, M));
  return Instance(kind, std::move(occ), std::move(periods));
}

const OccurrenceFamily* Instance::occurrence() const {
  if (families_.empty()) return nullptr;
  return std::get_if<OccurrenceFamily>(&families_.front());
}

std::vector<const PeriodFamily*> Instance::periods() const {
  std::vector<const PeriodFamily*> out;
  for (const auto& f : families_) {
    if (const auto* p = std::get_if<PeriodFamily>(&f)) out.push_back(p);
  }
  return out;
}

std::uint64_t Instance::n_max() const {
  std::uint64_t best = 0;
  for (const auto* p : periods()) best = std::max(best, p->n);
  return best;
}

Instance Instance::truncated(std::uint64_t n_max) const {
  std::optional<OccurrenceFamily> occ;
  if (const auto* o = occurrence()) occ = *o;
  std::vector<PeriodFamily> kept;
  for (const auto* p : periods()) {
    if (p->n <= n_max) kept.push_back(*p);
  }
  return Instance(kind_, std::move(occ), std::move(kept));
}

SupportSet constraint_support(const Instance& instance, const ConstraintInstance& c) {
  return translate_support(base_support(instance.family(c.family)), c.translate);
}

bool is_bad(const WindowAssignment& f, const Instance& instance, const ConstraintInstance& c) {
  return std::visit(Overloaded{[&](const OccurrenceFamily& fam) { return is_bad_occurrence(f, fam, c.translate); },
                               [&](const PeriodFamily& fam) { return is_bad_period(f, fam, c.translate); }},
                    instance.family(c.family));
}

std::vector<ConstraintInstance> constraints_in_window(const Window& window, const Instance& instance) {
  if (window.kind() != instance.kind()) throw UsageError("window and instance belong to different groups");
  std::vector<ConstraintInstance> out;
  for (std::size_t i = 0; i < instance.families().size(); ++i) {
    const SupportSet& support = base_support(instance.family(i));
    const GroupElement anchor_inv = inv(support.elements().front());
    std::vector<std::pair<std::uint64_t, GroupElement>> found;
    for (const auto& w : window.elements()) {
      GroupElement gamma = mul(anchor_inv, w);
      const bool inside = std::all_of(support.begin(), support.end(),
                                      [&](const GroupElement& s) { return window.contains(mul(s, gamma)); });
      if (inside) found.emplace_back(enumeration_rank(gamma), std::move(gamma));
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [rank, gamma] : found) out.push_back(ConstraintInstance{i, std::move(gamma)});
  }
  return out;
}

}  // namespace lllshift
