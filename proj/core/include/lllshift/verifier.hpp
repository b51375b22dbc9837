#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lllshift/instance.hpp"
#include "lllshift/pattern.hpp"
#include "lllshift/solver.hpp"
#include "lllshift/window.hpp"

namespace lllshift {

// Checks here re-derive every constraint from psi, D0, Dn and gamma_n using
// plain group arithmetic; they share nothing with the solver's compiled
// predicates.

struct FreenessFailure {
  std::uint64_t n = 0;
  GroupElement translate;

  bool operator==(const FreenessFailure&) const = default;
};

struct VerificationCounts {
  std::uint64_t occurrence_checked = 0;
  std::uint64_t period_checked = 0;
};

struct VerificationReport {
  std::vector<ConstraintInstance> violated;
  std::vector<FreenessFailure> freeness_failures;
  std::vector<GroupElement> psi_missing;
  VerificationCounts checked;

  bool clean() const { return violated.empty() && freeness_failures.empty() && psi_missing.empty(); }
};

/// Right translates gamma with support * gamma inside the window, in enumeration order.
std::vector<GroupElement> contained_translates(const Window& window, const SupportSet& support);

/// Re-evaluates every constraint (period families with n <= n_max) fully
/// contained in the window and lists the violated ones. Only `violated` and
/// `checked` are filled.
VerificationReport verify_solution(const WindowAssignment& f, const Instance& instance, std::uint64_t n_max);

/// Translates of Fn (n <= n_max) on which f is gamma_n-periodic.
std::vector<FreenessFailure> freeness_report(const WindowAssignment& f, const Instance& instance,
                                             std::uint64_t n_max);

/// Translates of F0 on which psi occurs at no offset of D0.
std::vector<GroupElement> psi_occurrence_report(const WindowAssignment& f, const OccurrenceFamily& family);

/// verify_solution plus the freeness and psi-occurrence reports.
VerificationReport full_report(const WindowAssignment& f, const Instance& instance, std::uint64_t n_max);

// ---------------------------------------------------------------------------
// Empirical cylinder frequencies (heuristic stand-in for an invariant measure)
// ---------------------------------------------------------------------------

struct FrequencyEstimate {
  Pattern pattern;
  GroupElement location;
  std::uint64_t runs = 0;       // attempted solves
  std::uint64_t successes = 0;  // solves that finished within budget
  std::uint64_t hits = 0;       // successes matching the pattern at the location
  double frequency = 0.0;       // hits / successes
  double half_width = 0.0;      // 95% normal-approximation half-width

  std::uint64_t failures() const { return runs - successes; }
};

struct MeasureOptions {
  /// Minimum distance of measured cells from the window boundary; defaults to
  /// the largest base-support diameter of the instance.
  std::optional<std::uint64_t> margin;
  std::uint64_t max_resamples = 1'000'000;
  /// Worker threads for the independent runs (0 = hardware concurrency).
  unsigned threads = 0;
};

std::uint64_t default_margin(const Instance& instance);

/// Fraction of successful runs (seeds base_seed .. base_seed + runs - 1) whose
/// output matches `pattern` translated to dom(pattern) * location.
/// Throws UsageError for runs = 0 or a location closer to the boundary than the margin.
FrequencyEstimate estimate_frequency(const Pattern& pattern, const GroupElement& location,
                                     const WindowProblem& problem, std::uint64_t runs, std::uint64_t base_seed,
                                     const MeasureOptions& options = {});

/// Heuristic translation-invariance check of empirical cylinder frequencies.
struct InvarianceResult {
  bool pass = false;
  FrequencyEstimate first;
  FrequencyEstimate second;
  double difference = 0.0;
  double tolerance = 0.0;
};

/// Both locations are measured on the same runs. Passes iff
/// |freq1 - freq2| <= tol + half_width1 + half_width2.
InvarianceResult invariance_check(const Pattern& pattern, const GroupElement& loc1, const GroupElement& loc2,
                                  const WindowProblem& problem, std::uint64_t runs, std::uint64_t base_seed,
                                  double tol, const MeasureOptions& options = {});

/// 1.96 * sqrt(p (1 - p) / n), zero for n = 0.
double binomial_half_width(std::uint64_t hits, std::uint64_t n);

}  // namespace lllshift
