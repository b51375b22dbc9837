#include "lllshift/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "lllshift/errors.hpp"

namespace lllshift {
namespace {

Bit value_at(const WindowAssignment& f, const GroupElement& g) {
  const auto i = f.window().index_of(g);
  if (!i) throw UsageError("verifier: cell " + g.to_string() + " outside the window");
  return f.bit(*i);
}

bool psi_occurs_somewhere(const WindowAssignment& f, const OccurrenceFamily& fam, const GroupElement& gamma) {
  for (const auto& delta : fam.D0) {
    bool all = true;
    for (const auto& [sigma, bit] : fam.psi) {
      if (value_at(f, mul(mul(sigma, delta), gamma)) != bit) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool periodic_on(const WindowAssignment& f, const PeriodFamily& fam, const GroupElement& gamma) {
  const GroupElement gamma_n = enumerate_nonidentity(f.window().kind(), fam.n);
  if (gamma_n != fam.gamma) throw UsageError("period family stores a gamma_n different from the enumeration");
  for (const auto& delta : fam.Dn) {
    if (value_at(f, mul(delta, gamma)) != value_at(f, mul(mul(delta, gamma_n), gamma))) return false;
  }
  return true;
}

struct Tally {
  std::uint64_t successes = 0;
  std::vector<std::uint64_t> hits;
};

FrequencyEstimate make_estimate(const Pattern& pattern, const GroupElement& location, std::uint64_t runs,
                                std::uint64_t successes, std::uint64_t hits) {
  FrequencyEstimate e;
  e.pattern = pattern;
  e.location = location;
  e.runs = runs;
  e.successes = successes;
  e.hits = hits;
  e.frequency = successes == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(successes);
  e.half_width = binomial_half_width(hits, successes);
  return e;
}

// Solve once per seed and count matches of every requested placement.
Tally run_batch(const std::vector<std::vector<std::pair<std::size_t, Bit>>>& placements, const WindowProblem& problem,
                std::uint64_t runs, std::uint64_t base_seed, const MeasureOptions& options) {
  unsigned threads = options.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, runs));
  std::vector<Tally> partial(threads, Tally{0, std::vector<std::uint64_t>(placements.size(), 0)});
  auto work = [&](unsigned t) {
    for (std::uint64_t r = t; r < runs; r += threads) {
      const SolveReport report = problem.solve(base_seed + r, options.max_resamples);
      if (!report.solved()) continue;
      ++partial[t].successes;
      for (std::size_t p = 0; p < placements.size(); ++p) {
        const bool hit = std::all_of(placements[p].begin(), placements[p].end(), [&](const auto& cell) {
          return report.assignment.bit(cell.first) == cell.second;
        });
        if (hit) ++partial[t].hits[p];
      }
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  Tally total{0, std::vector<std::uint64_t>(placements.size(), 0)};
  for (const auto& t : partial) {
    total.successes += t.successes;
    for (std::size_t p = 0; p < placements.size(); ++p) total.hits[p] += t.hits[p];
  }
  return total;
}

std::vector<std::pair<std::size_t, Bit>> place(const Pattern& pattern, const GroupElement& location,
                                               const Window& window, std::uint64_t margin) {
  std::vector<std::pair<std::size_t, Bit>> cells;
  for (const auto& [sigma, bit] : pattern) {
    const GroupElement cell = mul(sigma, location);
    if (!window.is_interior(cell, margin)) {
      throw UsageError("cell " + cell.to_string() + " is within " + std::to_string(margin) +
                       " of the window boundary");
    }
    cells.emplace_back(*window.index_of(cell), bit);
  }
  return cells;
}

}  // namespace

std::vector<GroupElement> contained_translates(const Window& window, const SupportSet& support) {
  const GroupElement anchor_inv = inv(support.elements().back());
  std::vector<std::pair<std::uint64_t, GroupElement>> found;
  for (const auto& w : window.elements()) {
    GroupElement gamma = mul(anchor_inv, w);
    bool inside = true;
    for (const auto& s : support) {
      if (!window.contains(mul(s, gamma))) {
        inside = false;
        break;
      }
    }
    if (inside) found.emplace_back(enumeration_rank(gamma), std::move(gamma));
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<GroupElement> out;
  out.reserve(found.size());
  for (auto& entry : found) out.push_back(std::move(entry.second));
  return out;
}

VerificationReport verify_solution(const WindowAssignment& f, const Instance& instance, std::uint64_t n_max) {
  if (f.window().kind() != instance.kind()) throw UsageError("assignment and instance belong to different groups");
  VerificationReport report;
  for (std::size_t i = 0; i < instance.families().size(); ++i) {
    const Family& family = instance.family(i);
    if (const auto* occ = std::get_if<OccurrenceFamily>(&family)) {
      for (auto& gamma : contained_translates(f.window(), occ->F0)) {
        ++report.checked.occurrence_checked;
        if (!psi_occurs_somewhere(f, *occ, gamma)) report.violated.push_back({i, std::move(gamma)});
      }
      continue;
    }
    const auto& period = std::get<PeriodFamily>(family);
    if (period.n > n_max) continue;
    for (auto& gamma : contained_translates(f.window(), period.Fn)) {
      ++report.checked.period_checked;
      if (periodic_on(f, period, gamma)) report.violated.push_back({i, std::move(gamma)});
    }
  }
  return report;
}

std::vector<FreenessFailure> freeness_report(const WindowAssignment& f, const Instance& instance,
                                             std::uint64_t n_max) {
  std::vector<FreenessFailure> failures;
  for (const auto* period : instance.periods()) {
    if (period->n > n_max) continue;
    for (auto& gamma : contained_translates(f.window(), period->Fn)) {
      if (periodic_on(f, *period, gamma)) failures.push_back({period->n, std::move(gamma)});
    }
  }
  return failures;
}

std::vector<GroupElement> psi_occurrence_report(const WindowAssignment& f, const OccurrenceFamily& family) {
  std::vector<GroupElement> missing;
  for (auto& gamma : contained_translates(f.window(), family.F0)) {
    if (!psi_occurs_somewhere(f, family, gamma)) missing.push_back(std::move(gamma));
  }
  return missing;
}

VerificationReport full_report(const WindowAssignment& f, const Instance& instance, std::uint64_t n_max) {
  VerificationReport report = verify_solution(f, instance, n_max);
  report.freeness_failures = freeness_report(f, instance, n_max);
  if (const auto* occ = instance.occurrence()) report.psi_missing = psi_occurrence_report(f, *occ);
  return report;
}

double binomial_half_width(std::uint64_t hits, std::uint64_t n) {
  if (n == 0) return 0.0;
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

std::uint64_t default_margin(const Instance& instance) {
  std::uint64_t margin = 0;
  for (const auto& family : instance.families()) margin = std::max(margin, diameter(base_support(family)));
  return margin;
}

FrequencyEstimate estimate_frequency(const Pattern& pattern, const GroupElement& location,
                                     const WindowProblem& problem, std::uint64_t runs, std::uint64_t base_seed,
                                     const MeasureOptions& options) {
  if (runs == 0) throw UsageError("estimate_frequency: runs must be positive");
  const std::uint64_t margin = options.margin.value_or(default_margin(problem.instance()));
  const auto cells = place(pattern, location, problem.window(), margin);
  const Tally tally = run_batch({cells}, problem, runs, base_seed, options);
  return make_estimate(pattern, location, runs, tally.successes, tally.hits[0]);
}

InvarianceResult invariance_check(const Pattern& pattern, const GroupElement& loc1, const GroupElement& loc2,
                                  const WindowProblem& problem, std::uint64_t runs, std::uint64_t base_seed,
                                  double tol, const MeasureOptions& options) {
  if (runs == 0) throw UsageError("invariance_check: runs must be positive");
  const std::uint64_t margin = options.margin.value_or(default_margin(problem.instance()));
  const auto first = place(pattern, loc1, problem.window(), margin);
  const auto second = place(pattern, loc2, problem.window(), margin);
  const Tally tally = run_batch({first, second}, problem, runs, base_seed, options);
  InvarianceResult result;
  result.first = make_estimate(pattern, loc1, runs, tally.successes, tally.hits[0]);
  result.second = make_estimate(pattern, loc2, runs, tally.successes, tally.hits[1]);
  result.difference = std::abs(result.first.frequency - result.second.frequency);
  result.tolerance = tol;
  result.pass = result.difference <= tol + result.first.half_width + result.second.half_width;
  return result;
}

}  // namespace lllshift
