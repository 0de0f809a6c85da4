// Partitions of the outcome set and the sigma-algebra they generate. Every
// member of the generated algebra is a union of blocks, so membership and
// measurability reduce to per-block tests and never require materializing
// the 2^N member list; the list is still enumerated for N <= 20.
#pragma once

#include <cstdint>
#include <vector>

#include "probvar/lp.hpp"
#include "probvar/space.hpp"

namespace probvar {

/// Pairwise-disjoint positive-mass cover of the outcome set. Block order is
/// the construction order and fixes coefficient indexing downstream.
class Partition {
 public:
  static Partition make(const ProbabilitySpace& space, std::vector<Event> blocks);

  const ProbabilitySpace& space() const { return space_; }
  std::size_t block_count() const { return blocks_.size(); }
  const Event& block(std::size_t j) const { return blocks_[j]; }
  const std::vector<Event>& blocks() const { return blocks_; }
  double block_prob(std::size_t j) const { return block_probs_[j]; }
  const std::vector<double>& block_probs() const { return block_probs_; }

 private:
  Partition(ProbabilitySpace space, std::vector<Event> blocks,
            std::vector<double> block_probs);

  ProbabilitySpace space_;
  std::vector<Event> blocks_;
  std::vector<double> block_probs_;
};

/// Members enumerated as block-index masks when N <= 20.
inline constexpr std::size_t kEnumerationLimit = 20;

class SigmaAlgebra {
 public:
  /// The sigma-algebra generated by a partition: all unions of blocks.
  static SigmaAlgebra generate(Partition partition);

  const Partition& partition() const { return partition_; }
  std::size_t block_count() const { return partition_.block_count(); }

  bool enumerated() const { return !member_masks_.empty(); }
  std::size_t member_count() const;
  /// Builds the member event for a block-index mask.
  Event member_from_mask(std::uint32_t mask) const;
  /// Materializes all members (enumerated algebras only).
  std::vector<Event> members() const;
  const std::vector<std::uint32_t>& member_masks() const { return member_masks_; }

  /// True iff e intersects every block in either the empty set or the whole
  /// block, i.e. e is a union of blocks.
  bool contains(const Event& e) const;

  /// True iff x is constant on each block, comparing only outcomes of
  /// positive weight.
  bool is_measurable(const RandomVariable& x) const;

  /// The per-block values of a measurable x, read off the positive-mass
  /// outcomes. Throws NotMeasurable otherwise.
  std::vector<double> coefficients(const RandomVariable& x) const;

 private:
  explicit SigmaAlgebra(Partition partition);

  Partition partition_;
  std::vector<std::uint32_t> member_masks_;  // empty when N > 20
};

}  // namespace probvar
