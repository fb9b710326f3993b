#include "knn/heap.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "knn/errors.hpp"

namespace knn {

NeighborHeap::NeighborHeap(std::uint32_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) {
        throw ConfigError("heap capacity must be at least 1");
    }
    entries_.reserve(capacity_);
}

bool NeighborHeap::push(const Neighbor& c) {
    if (entries_.size() < capacity_) {
        entries_.push_back(c);
        sift_up(entries_.size() - 1);
        return true;
    }
    if (c < entries_[0]) {
        entries_[0] = c;
        sift_down(0, entries_.size());
        return true;
    }
    return false;
}

std::vector<Neighbor> NeighborHeap::drain_sorted() {
    // In-place heapsort: repeatedly swap the max to the back, leaving the
    // array ascending.
    for (std::size_t m = entries_.size(); m > 1; --m) {
        std::swap(entries_[0], entries_[m - 1]);
        sift_down(0, m - 1);
    }
    std::vector<Neighbor> out = std::move(entries_);
    entries_ = {};
    return out;
}

void NeighborHeap::sift_up(std::size_t i) {
    while (i > 0) {
        const std::size_t parent = (i - 1) / 2;
        if (!(entries_[parent] < entries_[i])) break;
        std::swap(entries_[parent], entries_[i]);
        i = parent;
    }
}

void NeighborHeap::sift_down(std::size_t i, std::size_t limit) {
    for (;;) {
        const std::size_t left = 2 * i + 1;
        if (left >= limit) break;
        std::size_t largest = left;
        const std::size_t right = left + 1;
        if (right < limit && entries_[largest] < entries_[right]) largest = right;
        if (!(entries_[i] < entries_[largest])) break;
        std::swap(entries_[i], entries_[largest]);
        i = largest;
    }
}

HeapStore::HeapStore(std::uint32_t n, std::uint32_t k) : k_(k) {
    if (n < 2) throw ConfigError("heap store needs at least 2 rows");
    if (k < 1) throw ConfigError("k must be at least 1");
    const std::uint32_t capacity = std::min(k, n - 1);
    heaps_.assign(n, NeighborHeap(capacity));
    mutexes_ = std::make_unique<std::mutex[]>(n);
    root_hints_ = std::make_unique<std::atomic<dist_t>[]>(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        root_hints_[i].store(std::numeric_limits<dist_t>::infinity(),
                             std::memory_order_relaxed);
    }
}

void HeapStore::refresh_root_hint(std::uint32_t row) {
    const NeighborHeap& h = heaps_[row];
    const dist_t hint =
        h.full() ? h.root().distance : std::numeric_limits<dist_t>::infinity();
    root_hints_[row].store(hint, std::memory_order_relaxed);
}

}  // namespace knn
