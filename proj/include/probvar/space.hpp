// Finite probability spaces and events. A space is an immutable weight
// vector summing to one; an event is a subset of outcome indices bound to
// its space. All operations are pure.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "probvar/errors.hpp"

namespace probvar {

class Event;

class ProbabilitySpace {
 public:
  /// Validates and normalizes a weight vector. Weights whose sum is within
  /// 1e-9 of 1 are divided by the sum; a larger deviation is a hard error.
  static ProbabilitySpace make(std::vector<double> weights,
                               std::vector<std::string> labels = {});

  std::size_t size() const { return data_->weights.size(); }
  double weight(std::size_t i) const;
  const std::vector<double>& weights() const { return data_->weights; }
  const std::vector<std::string>& labels() const { return data_->labels; }
  bool positive_mass(std::size_t i) const { return weight(i) > 0.0; }

  /// Builds an event from outcome indices (set semantics, duplicates folded).
  Event make_event(const std::vector<std::size_t>& indices) const;
  Event empty_event() const;
  Event full_event() const;

  /// P(e): sum of member weights. P(emptyset) and P(full set) are pinned to
  /// 0 and 1 so the measure axioms hold exactly.
  double prob(const Event& e) const;

  /// P(a|b) = P(a n b) / P(b); requires P(b) > 0.
  double cond_prob(const Event& a, const Event& b) const;

  /// Two spaces are interchangeable iff their weight vectors are identical.
  bool same_as(const ProbabilitySpace& other) const;

 private:
  struct Data {
    std::vector<double> weights;
    std::vector<std::string> labels;
  };

  explicit ProbabilitySpace(std::shared_ptr<const Data> data)
      : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;

  friend class Event;
};

/// Subset of outcome indices, stored as a bitset, bound to one space.
class Event {
 public:
  const ProbabilitySpace& space() const { return space_; }
  std::size_t space_size() const { return space_.size(); }

  bool contains(std::size_t i) const;
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool full() const { return count() == space_size(); }
  std::vector<std::size_t> members() const;

  Event complement() const;
  bool subset_of(const Event& other) const;
  bool operator==(const Event& other) const;
  bool operator!=(const Event& other) const { return !(*this == other); }

  friend Event union_of(const Event& a, const Event& b);
  friend Event intersection(const Event& a, const Event& b);
  friend Event operator|(const Event& a, const Event& b) { return union_of(a, b); }
  friend Event operator&(const Event& a, const Event& b) { return intersection(a, b); }

 private:
  Event(ProbabilitySpace space, std::vector<std::uint64_t> bits)
      : space_(std::move(space)), bits_(std::move(bits)) {}

  static std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

  ProbabilitySpace space_;
  std::vector<std::uint64_t> bits_;

  friend class ProbabilitySpace;
};

Event complement(const Event& e);
Event union_of(const Event& a, const Event& b);
Event intersection(const Event& a, const Event& b);

/// Throws SpaceMismatch unless both arguments live on the same space.
void require_same_space(const ProbabilitySpace& a, const ProbabilitySpace& b,
                        const char* where);

}  // namespace probvar
