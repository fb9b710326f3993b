#pragma once

#include <cstdint>
#include <vector>

#include "knn/dataset.hpp"
#include "knn/distance.hpp"
#include "knn/heap.hpp"

namespace knn {

struct OracleResult {
    std::vector<NeighborList> lists;
    std::uint64_t pair_evaluations = 0;
    double seconds = 0;  // fold plus selection, validation excluded
};

// Reference solver: one thread, no tiling, no buffering. Walks x from 1 to
// n-1, y from 0 to x-1, folds each pair once with the plain sequential fold,
// and pushes the result into both endpoint heaps. The engine must reproduce
// its output bit for bit.
OracleResult brute_force_knn(const Dataset& ds, const CumulativeDistance& f,
                             std::uint32_t k);

}  // namespace knn
