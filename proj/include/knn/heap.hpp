#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "knn/types.hpp"

namespace knn {

// One k-NN candidate. Ordered lexicographically by (distance, index) so that
// equal distances break toward the smaller index; the order is total and
// every container in the system agrees on it.
struct Neighbor {
    dist_t distance;
    std::uint32_t index;
};

constexpr bool operator<(const Neighbor& a, const Neighbor& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.index < b.index;
}
constexpr bool operator==(const Neighbor& a, const Neighbor& b) {
    return a.distance == b.distance && a.index == b.index;
}

// Bounded max-heap keeping the smallest `capacity` candidates pushed so far.
// Once full, the root is the current k-th smallest and acts as the admission
// threshold: a push evicts the root only when the candidate orders below it.
class NeighborHeap {
public:
    explicit NeighborHeap(std::uint32_t capacity);

    std::uint32_t capacity() const { return capacity_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(entries_.size()); }
    bool empty() const { return entries_.empty(); }
    bool full() const { return entries_.size() == capacity_; }

    // Largest stored candidate. Precondition: !empty().
    const Neighbor& root() const { return entries_.front(); }

    bool would_accept(const Neighbor& c) const {
        return !full() || c < entries_.front();
    }

    // Returns true when the candidate was stored (possibly evicting the root).
    bool push(const Neighbor& c);

    // Empties the heap and returns its contents ascending by (distance, index).
    std::vector<Neighbor> drain_sorted();

private:
    void sift_up(std::size_t i);
    void sift_down(std::size_t i, std::size_t limit);

    std::uint32_t capacity_;
    std::vector<Neighbor> entries_;
};

// One row's final answer: the query index and its neighbors in ascending
// (distance, index) order, self excluded.
struct NeighborList {
    std::uint32_t query = 0;
    std::vector<Neighbor> neighbors;
};

// A lane's private bank of per-row heaps plus the synchronization attached to
// them: one flush mutex per heap, and a relaxed "root hint" read lock-free by
// the scan-side filter. The hint is +inf until the heap fills and thereafter
// trails the true root, which only decreases; a stale hint therefore admits
// candidates it could have rejected but never rejects one that belongs.
class HeapStore {
public:
    // Each heap holds at most min(k, n - 1) entries: a row has only n - 1
    // possible neighbors.
    HeapStore(std::uint32_t n, std::uint32_t k);

    std::uint32_t rows() const { return static_cast<std::uint32_t>(heaps_.size()); }
    std::uint32_t k() const { return k_; }

    NeighborHeap& heap(std::uint32_t row) { return heaps_[row]; }
    const NeighborHeap& heap(std::uint32_t row) const { return heaps_[row]; }

    std::mutex& flush_mutex(std::uint32_t row) { return mutexes_[row]; }

    dist_t root_hint(std::uint32_t row) const {
        return root_hints_[row].load(std::memory_order_relaxed);
    }

    // Publishes the current admission threshold. Call under the flush mutex
    // after pushing, so the hint never runs ahead of the heap.
    void refresh_root_hint(std::uint32_t row);

private:
    std::uint32_t k_;
    std::vector<NeighborHeap> heaps_;
    std::unique_ptr<std::mutex[]> mutexes_;
    std::unique_ptr<std::atomic<dist_t>[]> root_hints_;
};

}  // namespace knn
