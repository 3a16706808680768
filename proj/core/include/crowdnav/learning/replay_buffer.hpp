#pragma once

#include <cstddef>
#include <vector>

#include "crowdnav/learning/value_net.hpp"
#include "crowdnav/random.hpp"

namespace crowdnav {

/// Bounded FIFO experience store.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Experience e);
  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }

  /// Oldest surviving item is at(0).
  const Experience& at(std::size_t i) const;

  /// Uniform draws with replacement; fewer than `n` only if the buffer is smaller.
  std::vector<const Experience*> sample(std::size_t n, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // next slot to overwrite once full
  std::vector<Experience> items_;
};

}  // namespace crowdnav
