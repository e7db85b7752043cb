#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "entdist/error.hpp"

namespace entdist {

/// Binary min-heap over dense ids 0..n-1 with decrease-key. Keys are ordered
/// by (key, id) so extraction order is fully deterministic. Every key
/// comparison is counted.
class IndexedMinHeap {
 public:
  explicit IndexedMinHeap(std::size_t n) : pos_(n, kAbsent), key_(n, 0.0) {}

  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }
  bool contains(std::size_t id) const { return pos_.at(id) != kAbsent; }
  std::uint64_t comparisons() const noexcept { return comparisons_; }

  /// Insert `id` or lower its key. Raising a key is rejected.
  void push_or_decrease(std::size_t id, double key) {
    if (pos_.at(id) == kAbsent) {
      pos_[id] = heap_.size();
      heap_.push_back(id);
      key_[id] = key;
      sift_up(pos_[id]);
      return;
    }
    if (key > key_[id]) throw InvariantViolation("IndexedMinHeap: key increase");
    key_[id] = key;
    sift_up(pos_[id]);
  }

  std::size_t top() const { return heap_.front(); }

  std::size_t pop() {
    const std::size_t id = heap_.front();
    swap_slots(0, heap_.size() - 1);
    heap_.pop_back();
    pos_[id] = kAbsent;
    if (!heap_.empty()) sift_down(0);
    return id;
  }

 private:
  static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

  bool less(std::size_t a, std::size_t b) {
    ++comparisons_;
    if (key_[a] != key_[b]) return key_[a] < key_[b];
    return a < b;
  }

  void swap_slots(std::size_t i, std::size_t j) {
    std::swap(heap_[i], heap_[j]);
    pos_[heap_[i]] = i;
    pos_[heap_[j]] = j;
  }

  void sift_up(std::size_t i) {
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (!less(heap_[i], heap_[parent])) break;
      swap_slots(i, parent);
      i = parent;
    }
  }

  void sift_down(std::size_t i) {
    const std::size_t n = heap_.size();
    for (;;) {
      std::size_t best = i;
      const std::size_t l = 2 * i + 1;
      const std::size_t r = l + 1;
      if (l < n && less(heap_[l], heap_[best])) best = l;
      if (r < n && less(heap_[r], heap_[best])) best = r;
      if (best == i) return;
      swap_slots(i, best);
      i = best;
    }
  }

  std::vector<std::size_t> heap_;
  std::vector<std::size_t> pos_;
  std::vector<double> key_;
  std::uint64_t comparisons_ = 0;
};

}  // namespace entdist
