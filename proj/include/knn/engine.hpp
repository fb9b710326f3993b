#pragma once

#include <cstdint>
#include <vector>

#include "knn/dataset.hpp"
#include "knn/distance.hpp"
#include "knn/heap.hpp"
#include "knn/schedule.hpp"
#include "knn/select.hpp"

namespace knn {

struct EngineOptions {
    std::uint32_t k = 100;
    std::uint32_t n_lanes = 1;
    std::uint32_t gsize = 0;  // 0 picks auto_gsize(n, bsize)
    std::uint32_t bsize = kDefaultBsize;
    std::uint32_t c1 = kDefaultC1;
    std::uint32_t c2 = kDefaultC2;
    std::uint32_t buf_size = kDefaultBufSize;
    std::uint32_t workers = 1;  // scan threads per lane
};

struct EngineResult {
    std::vector<NeighborList> lists;
    GridPlan plan;
    std::uint64_t pair_evaluations = 0;
    SelectStats select_stats;
    double seconds = 0;  // compute and merge, I/O and validation excluded
};

// Full pipeline: plan the grid, run one thread per lane over that lane's work
// items (distance tile, then buffered selection into the lane's private
// store), and k-way merge the per-lane partials. Output is independent of
// n_lanes, workers, buf_size, and the tiling, bit for bit.
EngineResult solve_knn(const Dataset& ds, const CumulativeDistance& f,
                       const EngineOptions& opt);

}  // namespace knn
