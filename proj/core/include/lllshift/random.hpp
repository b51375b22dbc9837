#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lllshift/group.hpp"
#include "lllshift/pattern.hpp"
#include "lllshift/window.hpp"

namespace lllshift {

/// SplitMix64 finalizer; used as a keyed, counter-based bit source.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

/// Platform-independent 64-bit key of a group element.
std::uint64_t cell_key(const GroupElement& g);

/// The bit drawn for a cell at a given resample epoch (epoch 0 = initialization).
Bit cell_bit(std::uint64_t seed, std::uint64_t key, std::uint64_t epoch);

/// Pseudorandom bits keyed by (seed, cell, epoch). Each cell keeps its own
/// epoch counter, so the bits a cell receives depend only on the seed and on
/// how often that cell was resampled, never on iteration order.
class ResampleStream {
 public:
  ResampleStream(std::uint64_t seed, const Window& window);

  std::uint64_t seed() const noexcept { return seed_; }
  Bit initial(std::size_t index) const { return cell_bit(seed_, keys_[index], 0); }
  /// Advances the cell's epoch and returns the fresh bit.
  Bit draw(std::size_t index) { return cell_bit(seed_, keys_[index], ++epochs_[index]); }
  std::uint64_t epoch(std::size_t index) const { return epochs_[index]; }

 private:
  std::uint64_t seed_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint64_t> epochs_;
};

}  // namespace lllshift
