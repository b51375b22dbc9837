#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lllshift/instance.hpp"
#include "lllshift/random.hpp"
#include "lllshift/window.hpp"

namespace lllshift {

struct SolverConfig {
  std::uint64_t n_max = 1;
  std::uint64_t max_resamples = 1'000'000;
  std::uint64_t seed = 0;
};

enum class SolveStatus { Solved, MaxResamplesExceeded };

/// Outcome of a Moser-Tardos run. On MaxResamplesExceeded the assignment and
/// histogram describe the state when the budget ran out.
struct SolveReport {
  SolveStatus status = SolveStatus::Solved;
  WindowAssignment assignment;
  std::uint64_t resample_count = 0;
  std::map<std::size_t, std::uint64_t> histogram;  // constraint index -> resamples

  bool solved() const noexcept { return status == SolveStatus::Solved; }
};

/// iid uniform bits, one per cell, keyed by (seed, cell).
WindowAssignment initialize(std::shared_ptr<const Window> window, std::uint64_t seed);

/// Index of the first violated constraint of `constraints`, if any.
std::optional<std::size_t> find_violated(const WindowAssignment& f, const Instance& instance,
                                         std::span<const ConstraintInstance> constraints);

/// Redraws the bits of the constraint's support from the stream.
void resample(WindowAssignment& f, const Instance& instance, const ConstraintInstance& c, ResampleStream& stream);

/// The constraints of an instance inside one window, compiled to cell indices
/// so that many runs (seeds) can share the setup.
class WindowProblem {
 public:
  WindowProblem(std::shared_ptr<const Window> window, const Instance& instance);

  const Window& window() const noexcept { return *window_; }
  const std::shared_ptr<const Window>& window_ptr() const noexcept { return window_; }
  const Instance& instance() const noexcept { return instance_; }
  const std::vector<ConstraintInstance>& constraints() const noexcept { return constraints_; }
  std::size_t constraint_count() const noexcept { return constraints_.size(); }

  /// Window indices of the support of constraint `c`, ascending.
  std::span<const std::uint32_t> support(std::size_t c) const;
  bool violated(std::span<const Bit> bits, std::size_t c) const;
  std::optional<std::size_t> first_violated(std::span<const Bit> bits) const;

  /// Moser-Tardos: initialize from the seed, then resample the first violated
  /// constraint (in constraints() order) until none is left or the budget is spent.
  SolveReport solve(std::uint64_t seed, std::uint64_t max_resamples = 1'000'000) const;

 private:
  struct Compiled {
    bool occurrence = false;
    std::uint32_t group = 0;  // occurrence: checks per offset (k)
    std::uint32_t check_begin = 0, check_end = 0;
    std::uint32_t support_begin = 0, support_end = 0;
  };

  std::shared_ptr<const Window> window_;
  Instance instance_;
  std::vector<ConstraintInstance> constraints_;
  std::vector<Compiled> compiled_;
  // Occurrence: (cell, expected bit). Period: (cell, partner cell).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> checks_;
  std::vector<std::uint32_t> supports_;
  std::vector<std::uint32_t> adjacency_begin_;
  std::vector<std::uint32_t> adjacency_;
};

/// Runs Moser-Tardos on the constraints of `instance` (truncated to
/// config.n_max) lying inside the window.
SolveReport solve(std::shared_ptr<const Window> window, const Instance& instance, const SolverConfig& config);

/// Largest window brute_force_solutions accepts.
inline constexpr std::size_t kBruteForceMaxCells = 25;

/// All assignments of the window violating none of `constraints`, encoded as
/// bit masks (bit i = cell i). Exhaustive; throws UsageError above 25 cells.
std::vector<std::uint32_t> brute_force_solution_masks(const Window& window, const Instance& instance,
                                                      std::span<const ConstraintInstance> constraints);
std::vector<WindowAssignment> brute_force_solutions(std::shared_ptr<const Window> window, const Instance& instance,
                                                    std::span<const ConstraintInstance> constraints);

std::uint32_t to_mask(const WindowAssignment& f);

}  // namespace lllshift
