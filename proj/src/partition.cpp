#include "acp/partition.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace acp {

Partition balanced_split(std::size_t n, std::size_t k, Rng& rng) {
  if (k < 1 || k > std::max<std::size_t>(n, 1))
    throw ContractError("partition: k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));

  Partition out;
  out.k = k;
  out.blocks.resize(k);
  const std::size_t base = n / k, extra = n % k;
  std::size_t pos = 0;
  for (std::size_t b = 0; b < k; ++b) {
    const std::size_t len = base + (b < extra ? 1 : 0);
    out.blocks[b].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                         order.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return out;
}

ConstraintPartition partition_constraints(const IntegerProgram& p, std::size_t k, Rng& rng) {
  if (p.num_constraints() == 0) throw ContractError("partition_constraints: program has no constraints");
  return balanced_split(p.num_constraints(), k, rng);
}

Partition partition_variables(const IntegerProgram& p, std::size_t k, Rng& rng) {
  if (p.num_variables() == 0) throw ContractError("partition_variables: program has no variables");
  return balanced_split(p.num_variables(), k, rng);
}

std::size_t BlockSelector::select(const Partition& partition, Rng& rng) {
  if (partition.k == 0) throw ContractError("select_block: empty partition");
  std::size_t b = rng.below(partition.k);
  if (partition.k > 1)
    while (previous_ && b == *previous_) b = rng.below(partition.k);
  previous_ = b;
  return b;
}

std::vector<std::size_t> free_variables(const IntegerProgram& p, const ConstraintPartition& partition,
                                        std::size_t block) {
  if (block >= partition.blocks.size()) throw ContractError("free_variables: block index out of range");
  std::vector<char> mark(p.num_variables(), 0);
  for (std::size_t i : partition.blocks[block])
    for (const Term& t : p.constraint(i).terms) mark[t.var] = 1;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < mark.size(); ++j)
    if (mark[j] || p.constraints_of(j).empty()) out.push_back(j);
  return out;
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& free) {
  std::vector<std::size_t> out;
  out.reserve(n - std::min(n, free.size()));
  std::size_t f = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (f < free.size() && free[f] == j)
      ++f;
    else
      out.push_back(j);
  }
  return out;
}

}  // namespace acp
