#include "probvar/sigma.hpp"

#include <numeric>
#include <optional>
#include <string>

namespace probvar {

Partition::Partition(ProbabilitySpace space, std::vector<Event> blocks,
                     std::vector<double> block_probs)
    : space_(std::move(space)),
      blocks_(std::move(blocks)),
      block_probs_(std::move(block_probs)) {}

Partition Partition::make(const ProbabilitySpace& space,
                          std::vector<Event> blocks) {
  Event seen = space.empty_event();
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    require_same_space(space, blocks[j].space(), "make_partition");
    if (!intersection(seen, blocks[j]).empty()) {
      throw NotDisjoint("block " + std::to_string(j) +
                        " overlaps an earlier block");
    }
    seen = union_of(seen, blocks[j]);
  }
  if (!seen.full()) {
    throw NotCovering("blocks cover " + std::to_string(seen.count()) +
                      " of " + std::to_string(space.size()) + " outcomes");
  }
  std::vector<double> probs;
  probs.reserve(blocks.size());
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const double pj = space.prob(blocks[j]);
    if (pj <= 0.0) {
      throw ZeroMassBlock("block " + std::to_string(j) +
                          " has probability 0; every block needs positive mass");
    }
    probs.push_back(pj);
  }
  return Partition(space, std::move(blocks), std::move(probs));
}

SigmaAlgebra::SigmaAlgebra(Partition partition)
    : partition_(std::move(partition)) {}

SigmaAlgebra SigmaAlgebra::generate(Partition partition) {
  SigmaAlgebra sigma(std::move(partition));
  const std::size_t n_blocks = sigma.partition_.block_count();
  if (n_blocks <= kEnumerationLimit) {
    const std::uint32_t count = std::uint32_t{1} << n_blocks;
    sigma.member_masks_.resize(count);
    std::iota(sigma.member_masks_.begin(), sigma.member_masks_.end(), 0u);
  }
  return sigma;
}

std::size_t SigmaAlgebra::member_count() const {
  if (!enumerated()) {
    throw IndexOutOfRange("sigma-algebra with " +
                          std::to_string(block_count()) +
                          " blocks is not enumerated (limit 20)");
  }
  return member_masks_.size();
}

Event SigmaAlgebra::member_from_mask(std::uint32_t mask) const {
  Event e = partition_.space().empty_event();
  for (std::size_t j = 0; j < block_count(); ++j) {
    if (mask >> j & 1) e = union_of(e, partition_.block(j));
  }
  return e;
}

std::vector<Event> SigmaAlgebra::members() const {
  std::vector<Event> out;
  out.reserve(member_count());
  for (std::uint32_t mask : member_masks_) out.push_back(member_from_mask(mask));
  return out;
}

bool SigmaAlgebra::contains(const Event& e) const {
  require_same_space(partition_.space(), e.space(), "contains");
  for (std::size_t j = 0; j < block_count(); ++j) {
    const Event inter = intersection(e, partition_.block(j));
    if (!inter.empty() && inter != partition_.block(j)) return false;
  }
  return true;
}

namespace {

// Common value of x on the positive-mass outcomes of a block; exact
// comparison, since a per-block-constant variable stores one double per
// block. nullopt if two such outcomes disagree.
std::optional<double> block_value(const RandomVariable& x, const Event& block) {
  std::optional<double> value;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!block.contains(i) || !x.space().positive_mass(i)) continue;
    if (!value) {
      value = x[i];
    } else if (*value != x[i]) {
      return std::nullopt;
    }
  }
  return value;
}

}  // namespace

bool SigmaAlgebra::is_measurable(const RandomVariable& x) const {
  require_same_space(partition_.space(), x.space(), "is_measurable");
  for (std::size_t j = 0; j < block_count(); ++j) {
    if (!block_value(x, partition_.block(j))) return false;
  }
  return true;
}

std::vector<double> SigmaAlgebra::coefficients(const RandomVariable& x) const {
  require_same_space(partition_.space(), x.space(), "coefficients");
  std::vector<double> out;
  out.reserve(block_count());
  for (std::size_t j = 0; j < block_count(); ++j) {
    const auto value = block_value(x, partition_.block(j));
    if (!value) {
      throw NotMeasurable("variable is not constant on block " +
                          std::to_string(j));
    }
    out.push_back(*value);
  }
  return out;
}

}  // namespace probvar
