#include "probvar/space.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace probvar {

namespace {
constexpr double kNormalizationTol = 1e-9;
}

ProbabilitySpace ProbabilitySpace::make(std::vector<double> weights,
                                        std::vector<std::string> labels) {
  if (weights.empty()) {
    throw Empty("a probability space needs at least one outcome");
  }
  if (!labels.empty() && labels.size() != weights.size()) {
    throw LengthMismatch("got " + std::to_string(labels.size()) +
                         " labels for " + std::to_string(weights.size()) +
                         " outcomes");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!std::isfinite(w)) {
      throw NonFiniteValue("weight " + std::to_string(i) + " is not finite");
    }
    if (w < 0.0) {
      std::ostringstream msg;
      msg << "weight " << i << " is " << w;
      throw NegativeWeight(msg.str());
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kNormalizationTol) {
    std::ostringstream msg;
    msg << "weights sum to " << sum << "; expected 1 within 1e-9";
    throw NotNormalized(msg.str());
  }
  if (sum != 1.0) {
    for (double& w : weights) w /= sum;
  }
  auto data = std::make_shared<Data>();
  data->weights = std::move(weights);
  data->labels = std::move(labels);
  return ProbabilitySpace(std::move(data));
}

double ProbabilitySpace::weight(std::size_t i) const {
  if (i >= size()) {
    throw IndexOutOfRange("outcome " + std::to_string(i) + " in a space of " +
                          std::to_string(size()) + " outcomes");
  }
  return data_->weights[i];
}

Event ProbabilitySpace::make_event(const std::vector<std::size_t>& indices) const {
  std::vector<std::uint64_t> bits(Event::word_count(size()), 0);
  for (std::size_t i : indices) {
    if (i >= size()) {
      throw IndexOutOfRange("outcome " + std::to_string(i) +
                            " in a space of " + std::to_string(size()) +
                            " outcomes");
    }
    bits[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return Event(*this, std::move(bits));
}

Event ProbabilitySpace::empty_event() const {
  return Event(*this, std::vector<std::uint64_t>(Event::word_count(size()), 0));
}

Event ProbabilitySpace::full_event() const {
  return empty_event().complement();
}

double ProbabilitySpace::prob(const Event& e) const {
  require_same_space(*this, e.space(), "prob");
  const std::size_t c = e.count();
  if (c == 0) return 0.0;
  if (c == size()) return 1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (e.contains(i)) sum += data_->weights[i];
  }
  return sum;
}

double ProbabilitySpace::cond_prob(const Event& a, const Event& b) const {
  require_same_space(*this, a.space(), "cond_prob");
  require_same_space(*this, b.space(), "cond_prob");
  const double pb = prob(b);
  if (pb <= 0.0) {
    throw ZeroConditioningEvent("conditioning event has probability 0");
  }
  return prob(intersection(a, b)) / pb;
}

bool ProbabilitySpace::same_as(const ProbabilitySpace& other) const {
  if (data_ == other.data_) return true;
  return data_->weights == other.data_->weights;
}

bool Event::contains(std::size_t i) const {
  if (i >= space_size()) return false;
  return (bits_[i / 64] >> (i % 64)) & 1;
}

std::size_t Event::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<std::size_t> Event::members() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (std::size_t i = 0; i < space_size(); ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

Event Event::complement() const {
  std::vector<std::uint64_t> bits(bits_.size());
  for (std::size_t w = 0; w < bits_.size(); ++w) bits[w] = ~bits_[w];
  // mask off padding above outcome n-1
  const std::size_t tail = space_size() % 64;
  if (tail != 0 && !bits.empty()) {
    bits.back() &= (std::uint64_t{1} << tail) - 1;
  }
  return Event(space_, std::move(bits));
}

bool Event::subset_of(const Event& other) const {
  require_same_space(space_, other.space_, "subset_of");
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    if (bits_[w] & ~other.bits_[w]) return false;
  }
  return true;
}

bool Event::operator==(const Event& other) const {
  return space_.same_as(other.space_) && bits_ == other.bits_;
}

Event union_of(const Event& a, const Event& b) {
  require_same_space(a.space_, b.space_, "union_of");
  std::vector<std::uint64_t> bits(a.bits_.size());
  for (std::size_t w = 0; w < bits.size(); ++w) bits[w] = a.bits_[w] | b.bits_[w];
  return Event(a.space_, std::move(bits));
}

Event intersection(const Event& a, const Event& b) {
  require_same_space(a.space_, b.space_, "intersection");
  std::vector<std::uint64_t> bits(a.bits_.size());
  for (std::size_t w = 0; w < bits.size(); ++w) bits[w] = a.bits_[w] & b.bits_[w];
  return Event(a.space_, std::move(bits));
}

Event complement(const Event& e) { return e.complement(); }

void require_same_space(const ProbabilitySpace& a, const ProbabilitySpace& b,
                        const char* where) {
  if (!a.same_as(b)) {
    throw SpaceMismatch(std::string(where) +
                        " got arguments bound to different spaces");
  }
}

}  // namespace probvar
