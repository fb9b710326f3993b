#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "knn/heap.hpp"

namespace knn {

// Drains each partial heap and k-way merges the sorted runs into one
// ascending list of at most k neighbors. The same index arriving from two
// partials means the schedule double-covered a pair; that throws
// ConsistencyError. Null partials are skipped.
NeighborList merge_row(std::uint32_t query, std::span<NeighborHeap* const> partials,
                       std::uint32_t k);

// Merges row by row across all lane stores. Single-threaded; the merge is a
// negligible tail next to the distance scan.
std::vector<NeighborList> merge_all(std::span<HeapStore> stores, std::uint32_t k);

}  // namespace knn
