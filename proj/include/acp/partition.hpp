#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "acp/program.hpp"
#include "acp/rng.hpp"

namespace acp {

/// k disjoint index blocks covering 0..n-1, sizes within one of each other.
struct Partition {
  std::size_t k = 0;
  std::vector<std::vector<std::size_t>> blocks;
};

using ConstraintPartition = Partition;

/// Shuffle 0..n-1 and cut into k chunks; the first n % k chunks get one extra.
Partition balanced_split(std::size_t n, std::size_t k, Rng& rng);

/// Requires 1 <= k <= number of constraints.
ConstraintPartition partition_constraints(const IntegerProgram& p, std::size_t k, Rng& rng);

/// Same split over variable indices (the LNS neighbourhoods).
Partition partition_variables(const IntegerProgram& p, std::size_t k, Rng& rng);

/// Uniform block choice that never returns the previous pick while k > 1.
class BlockSelector {
 public:
  std::size_t select(const Partition& partition, Rng& rng);
  std::optional<std::size_t> previous() const { return previous_; }
  void reset() { previous_.reset(); }

 private:
  std::optional<std::size_t> previous_;
};

/// Variables touched by the block's constraints, plus every variable that
/// appears in no constraint at all. Sorted ascending.
std::vector<std::size_t> free_variables(const IntegerProgram& p, const ConstraintPartition& partition,
                                        std::size_t block);

/// Sorted complement of `free` within 0..n-1. `free` must be sorted.
std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& free);

}  // namespace acp
