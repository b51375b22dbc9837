#include "lllshift/solver.hpp"

#include <algorithm>
#include <set>

#include "lllshift/errors.hpp"

namespace lllshift {

std::uint64_t cell_key(const GroupElement& g) {
  switch (g.kind()) {
    case GroupKind::Z: return splitmix64(static_cast<std::uint64_t>(g.x()));
    case GroupKind::Z2:
      return splitmix64(splitmix64(static_cast<std::uint64_t>(g.x())) ^
                        (static_cast<std::uint64_t>(g.y()) * 0xc2b2ae3d27d4eb4fULL));
    case GroupKind::F2: {
      std::uint64_t h = 0xcbf29ce484222325ULL;
      for (unsigned char c : g.letters()) {
        h ^= c;
        h *= 0x100000001b3ULL;
      }
      return splitmix64(h ^ 0xf2f2f2f2ULL);
    }
  }
  return 0;
}

Bit cell_bit(std::uint64_t seed, std::uint64_t key, std::uint64_t epoch) {
  const std::uint64_t h = splitmix64(splitmix64(seed) ^ splitmix64(key + epoch * 0xd1b54a32d192ed03ULL));
  return static_cast<Bit>(h >> 63U);
}

ResampleStream::ResampleStream(std::uint64_t seed, const Window& window)
    : seed_(seed), epochs_(window.size(), 0) {
  keys_.reserve(window.size());
  for (const auto& g : window.elements()) keys_.push_back(cell_key(g));
}

WindowAssignment initialize(std::shared_ptr<const Window> window, std::uint64_t seed) {
  if (window->size() == 0) throw UsageError("initialize: empty window");
  const ResampleStream stream(seed, *window);
  std::vector<Bit> bits(window->size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = stream.initial(i);
  return WindowAssignment(std::move(window), std::move(bits));
}

std::optional<std::size_t> find_violated(const WindowAssignment& f, const Instance& instance,
                                         std::span<const ConstraintInstance> constraints) {
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (is_bad(f, instance, constraints[i])) return i;
  }
  return std::nullopt;
}

void resample(WindowAssignment& f, const Instance& instance, const ConstraintInstance& c, ResampleStream& stream) {
  const SupportSet support = constraint_support(instance, c);
  std::vector<std::size_t> cells;
  for (const auto& g : support) {
    const auto i = f.window().index_of(g);
    if (!i) throw UsageError("resample: constraint support escapes the window");
    cells.push_back(*i);
  }
  std::sort(cells.begin(), cells.end());
  for (std::size_t i : cells) f.set_bit(i, stream.draw(i));
}

WindowProblem::WindowProblem(std::shared_ptr<const Window> window, const Instance& instance)
    : window_(std::move(window)), instance_(instance), constraints_(constraints_in_window(*window_, instance_)) {
  const Window& w = *window_;
  const auto index = [&w](const GroupElement& g) { return static_cast<std::uint32_t>(*w.index_of(g)); };

  compiled_.reserve(constraints_.size());
  for (const auto& c : constraints_) {
    Compiled entry;
    entry.check_begin = static_cast<std::uint32_t>(checks_.size());
    std::vector<std::uint32_t> cells;
    if (const auto* occ = std::get_if<OccurrenceFamily>(&instance_.family(c.family))) {
      entry.occurrence = true;
      entry.group = static_cast<std::uint32_t>(occ->k);
      for (const auto& delta : occ->D0) {
        const GroupElement offset = mul(delta, c.translate);
        for (const auto& [sigma, bit] : occ->psi) {
          const std::uint32_t cell = index(mul(sigma, offset));
          checks_.emplace_back(cell, bit);
          cells.push_back(cell);
        }
      }
    } else {
      const auto& period = std::get<PeriodFamily>(instance_.family(c.family));
      const GroupElement shifted = mul(period.gamma, c.translate);
      for (const auto& delta : period.Dn) {
        const std::uint32_t lhs = index(mul(delta, c.translate));
        const std::uint32_t rhs = index(mul(delta, shifted));
        checks_.emplace_back(lhs, rhs);
        cells.push_back(lhs);
        cells.push_back(rhs);
      }
    }
    entry.check_end = static_cast<std::uint32_t>(checks_.size());
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    entry.support_begin = static_cast<std::uint32_t>(supports_.size());
    supports_.insert(supports_.end(), cells.begin(), cells.end());
    entry.support_end = static_cast<std::uint32_t>(supports_.size());
    compiled_.push_back(entry);
  }

  // Cell -> constraints touching it (CSR layout).
  std::vector<std::uint32_t> degree(w.size() + 1, 0);
  for (std::uint32_t cell : supports_) ++degree[cell + 1];
  for (std::size_t i = 1; i < degree.size(); ++i) degree[i] += degree[i - 1];
  adjacency_begin_ = degree;
  adjacency_.resize(supports_.size());
  std::vector<std::uint32_t> fill = degree;
  for (std::size_t c = 0; c < compiled_.size(); ++c) {
    for (std::uint32_t s = compiled_[c].support_begin; s < compiled_[c].support_end; ++s) {
      adjacency_[fill[supports_[s]]++] = static_cast<std::uint32_t>(c);
    }
  }
}

std::span<const std::uint32_t> WindowProblem::support(std::size_t c) const {
  const Compiled& e = compiled_.at(c);
  return {supports_.data() + e.support_begin, supports_.data() + e.support_end};
}

bool WindowProblem::violated(std::span<const Bit> bits, std::size_t c) const {
  const Compiled& e = compiled_[c];
  if (e.occurrence) {
    for (std::uint32_t g = e.check_begin; g < e.check_end; g += e.group) {
      bool occurs = true;
      for (std::uint32_t i = g; i < g + e.group; ++i) {
        if (bits[checks_[i].first] != checks_[i].second) {
          occurs = false;
          break;
        }
      }
      if (occurs) return false;
    }
    return true;
  }
  for (std::uint32_t i = e.check_begin; i < e.check_end; ++i) {
    if (bits[checks_[i].first] != bits[checks_[i].second]) return false;
  }
  return true;
}

std::optional<std::size_t> WindowProblem::first_violated(std::span<const Bit> bits) const {
  for (std::size_t c = 0; c < compiled_.size(); ++c) {
    if (violated(bits, c)) return c;
  }
  return std::nullopt;
}

SolveReport WindowProblem::solve(std::uint64_t seed, std::uint64_t max_resamples) const {
  ResampleStream stream(seed, *window_);
  std::vector<Bit> bits(window_->size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = stream.initial(i);

  std::set<std::uint32_t> open;
  for (std::size_t c = 0; c < compiled_.size(); ++c) {
    if (violated(bits, c)) open.insert(static_cast<std::uint32_t>(c));
  }

  SolveReport report{SolveStatus::Solved, WindowAssignment(window_), 0, {}};
  std::vector<std::uint64_t> stamp(compiled_.size(), 0);
  std::uint64_t round = 0;
  while (!open.empty()) {
    if (report.resample_count >= max_resamples) {
      report.status = SolveStatus::MaxResamplesExceeded;
      break;
    }
    const std::uint32_t c = *open.begin();
    const auto cells = support(c);
    for (std::uint32_t cell : cells) bits[cell] = stream.draw(cell);
    ++report.resample_count;
    ++report.histogram[c];

    ++round;
    for (std::uint32_t cell : cells) {
      for (std::uint32_t a = adjacency_begin_[cell]; a < adjacency_begin_[cell + 1]; ++a) {
        const std::uint32_t d = adjacency_[a];
        if (stamp[d] == round) continue;
        stamp[d] = round;
        if (violated(bits, d)) {
          open.insert(d);
        } else {
          open.erase(d);
        }
      }
    }
  }
  report.assignment = WindowAssignment(window_, std::move(bits));
  return report;
}

SolveReport solve(std::shared_ptr<const Window> window, const Instance& instance, const SolverConfig& config) {
  const WindowProblem problem(std::move(window), instance.truncated(config.n_max));
  return problem.solve(config.seed, config.max_resamples);
}

std::vector<std::uint32_t> brute_force_solution_masks(const Window& window, const Instance& instance,
                                                      std::span<const ConstraintInstance> constraints) {
  if (window.size() > kBruteForceMaxCells) {
    throw UsageError("brute force refused: window has " + std::to_string(window.size()) + " cells (max 25)");
  }
  const auto bit_of = [&window](const GroupElement& g) -> std::uint32_t {
    const auto i = window.index_of(g);
    if (!i) throw UsageError("brute force: constraint support escapes the window");
    return std::uint32_t{1} << *i;
  };

  // Occurrence constraint: list of (mask, value) per offset; bad iff no offset matches.
  // Period constraint: list of (bit, bit) pairs; bad iff every pair agrees.
  struct MaskConstraint {
    bool occurrence;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> terms;
  };
  std::vector<MaskConstraint> masks;
  for (const auto& c : constraints) {
    const Family& family = instance.family(c.family);
    MaskConstraint m{std::holds_alternative<OccurrenceFamily>(family), {}};
    if (m.occurrence) {
      const auto& occ = std::get<OccurrenceFamily>(family);
      for (const auto& delta : occ.D0) {
        std::uint32_t mask = 0, value = 0;
        for (const auto& [sigma, bit] : occ.psi) {
          const std::uint32_t b = bit_of(mul(mul(sigma, delta), c.translate));
          mask |= b;
          if (bit) value |= b;
        }
        m.terms.emplace_back(mask, value);
      }
    } else {
      const auto& period = std::get<PeriodFamily>(family);
      for (const auto& delta : period.Dn) {
        const GroupElement cell = mul(delta, c.translate);
        m.terms.emplace_back(bit_of(cell), bit_of(mul(mul(delta, period.gamma), c.translate)));
      }
    }
    masks.push_back(std::move(m));
  }

  std::vector<std::uint32_t> solutions;
  const std::uint64_t total = std::uint64_t{1} << window.size();
  for (std::uint64_t raw = 0; raw < total; ++raw) {
    const auto x = static_cast<std::uint32_t>(raw);
    const bool ok = std::none_of(masks.begin(), masks.end(), [x](const MaskConstraint& m) {
      if (m.occurrence) {
        return std::none_of(m.terms.begin(), m.terms.end(),
                            [x](const auto& t) { return (x & t.first) == t.second; });
      }
      return std::all_of(m.terms.begin(), m.terms.end(),
                         [x](const auto& t) { return ((x & t.first) != 0) == ((x & t.second) != 0); });
    });
    if (ok) solutions.push_back(x);
  }
  return solutions;
}

std::vector<WindowAssignment> brute_force_solutions(std::shared_ptr<const Window> window, const Instance& instance,
                                                    std::span<const ConstraintInstance> constraints) {
  std::vector<WindowAssignment> out;
  for (std::uint32_t mask : brute_force_solution_masks(*window, instance, constraints)) {
    std::vector<Bit> bits(window->size());
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = static_cast<Bit>((mask >> i) & 1U);
    out.emplace_back(window, std::move(bits));
  }
  return out;
}

std::uint32_t to_mask(const WindowAssignment& f) {
  if (f.size() > 32) throw UsageError("to_mask: window larger than 32 cells");
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < f.size(); ++i) mask |= static_cast<std::uint32_t>(f.bit(i)) << i;
  return mask;
}

}  // namespace lllshift
