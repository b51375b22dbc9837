#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "lllshift/group.hpp"
#include "lllshift/pattern.hpp"
#include "lllshift/rational.hpp"
#include "lllshift/window.hpp"

namespace lllshift {

/// The psi-occurrence family: the bad event on F0 gamma is "psi occurs at no
/// offset of D0". Avoiding it everywhere forces psi to appear near every cell.
struct OccurrenceFamily {
  Pattern psi;
  std::size_t k = 0;  // |dom(psi)|
  std::size_t N = 0;  // |D0|
  std::vector<GroupElement> D0;
  SupportSet F0;      // dom(psi) D0
};

/// The n-th period-breaking family: the bad event on Fn gamma is "f agrees
/// with its gamma_n shift on every cell of Dn gamma".
struct PeriodFamily {
  std::uint64_t n = 0;
  GroupElement gamma;  // gamma_n
  std::uint64_t M = 0;
  std::vector<GroupElement> Dn;  // |Dn| = n + M, Dn and Dn gamma_n disjoint
  SupportSet Fn;                 // Dn u Dn gamma_n
};

using Family = std::variant<OccurrenceFamily, PeriodFamily>;

/// Greedy scan in enumeration order (identity first): accept delta when
/// dom(psi) delta misses every previously accepted translate.
OccurrenceFamily build_D0(GroupKind kind, const Pattern& psi, std::size_t N);

/// Greedy scan in enumeration order keeping Dn and Dn gamma_n disjoint, until
/// |Dn| = n + M. M = 0 is accepted for toy instances.
PeriodFamily build_Dn(GroupKind kind, std::uint64_t n, std::uint64_t M);

/// Reassemble families from explicit offset lists, checking the disjointness invariants.
OccurrenceFamily make_occurrence_family(const Pattern& psi, std::vector<GroupElement> D0);
PeriodFamily make_period_family(GroupKind kind, std::uint64_t n, std::uint64_t M, std::vector<GroupElement> Dn);

const SupportSet& base_support(const Family& family);

/// True iff psi occurs at no delta in D0 within the translate F0 gamma.
bool is_bad_occurrence(const WindowAssignment& f, const OccurrenceFamily& family, const GroupElement& gamma);
/// True iff f(delta gamma) = f(delta gamma_n gamma) for every delta in Dn.
bool is_bad_period(const WindowAssignment& f, const PeriodFamily& family, const GroupElement& gamma);

/// Exact fraction of bad assignments of the base support:
/// (2^k - 1)^N / 2^(kN), respectively 2^-(n+M).
Rational family_probability(const OccurrenceFamily& family);
Rational family_probability(const PeriodFamily& family);
Rational family_probability(const Family& family);

/// The invariant instance B0 u B1 u ... u B_{n_max}, stored as its base families.
class Instance {
 public:
  Instance(GroupKind kind, std::optional<OccurrenceFamily> occurrence, std::vector<PeriodFamily> periods);

  /// psi may be absent (period-only instance); periods are built for n = 1..n_max.
  static Instance build(GroupKind kind, const std::optional<Pattern>& psi, std::size_t N, std::uint64_t M,
                        std::uint64_t n_max);

  GroupKind kind() const noexcept { return kind_; }
  /// Occurrence family first when present, then the period families in order.
  const std::vector<Family>& families() const noexcept { return families_; }
  const Family& family(std::size_t index) const { return families_.at(index); }
  const OccurrenceFamily* occurrence() const;
  std::vector<const PeriodFamily*> periods() const;
  /// Largest n among the period families (0 if none).
  std::uint64_t n_max() const;

  /// Copy keeping only period families with n <= n_max.
  Instance truncated(std::uint64_t n_max) const;

 private:
  GroupKind kind_;
  std::vector<Family> families_;
};

/// One element of dom(B): a base family together with a right translate.
struct ConstraintInstance {
  std::size_t family = 0;
  GroupElement translate;

  auto operator<=>(const ConstraintInstance&) const = default;
};

SupportSet constraint_support(const Instance& instance, const ConstraintInstance& c);
bool is_bad(const WindowAssignment& f, const Instance& instance, const ConstraintInstance& c);

/// Every (family, gamma) whose support (base support) gamma lies inside the
/// window, ordered by family index and then by enumeration rank of gamma.
std::vector<ConstraintInstance> constraints_in_window(const Window& window, const Instance& instance);

}  // namespace lllshift
