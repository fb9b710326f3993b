#pragma once

#include <cstdint>
#include <vector>

#include "knn/types.hpp"

namespace knn {

// Decomposition of the n x n pair matrix: square grids of side gsize, row
// blocks of bsize rows inside a grid, column stripes of c1, coordinate chunks
// of c2. Only the upper triangle (x > y) is ever computed.
struct GridPlan {
    std::uint32_t n = 0;
    std::uint32_t gsize = 0;
    std::uint32_t bsize = 0;
    std::uint32_t c1 = 0;
    std::uint32_t c2 = 0;
    std::uint32_t n_lanes = 0;
    std::uint32_t n_grids = 0;
};

inline constexpr std::uint32_t kDefaultBsize = 64;
inline constexpr std::uint32_t kDefaultC1 = 32;
inline constexpr std::uint32_t kDefaultC2 = 32;
inline constexpr std::uint32_t kDefaultBufSize = 16;

// Validates the tiling parameters and derives n_grids = floor((n-1)/gsize)+1.
// Throws ConfigError naming the violated constraint.
GridPlan make_plan(std::uint32_t n, std::uint32_t gsize, std::uint32_t bsize,
                   std::uint32_t c1, std::uint32_t c2, std::uint32_t n_lanes);

// Default grid side when the caller does not pin one: round n up to a
// multiple of bsize, clamp to [bsize, 4096].
std::uint32_t auto_gsize(std::uint32_t n, std::uint32_t bsize);

// Boustrophedon assignment of grid rows to lanes: forward across one band of
// n_lanes rows, backward across the next, so early (long) and late (short)
// triangle rows pair up and per-lane work stays balanced.
std::uint32_t lane_of_row(std::uint32_t grid_row, std::uint32_t n_lanes);

// One grid cell of the upper triangle. Ranges are clipped to [0, n), so edge
// cells are ragged. Diagonal cells own only their x > y half.
struct WorkItem {
    std::uint32_t grid_x = 0;
    std::uint32_t grid_y = 0;
    bool diagonal = false;
    IndexRange x_range;
    IndexRange y_range;
};

// Cells (X, Y) with X >= Y and lane_of_row(Y) == lane, ordered row-major:
// Y ascending, X ascending within a row. Every triangle cell appears in
// exactly one lane's list.
std::vector<WorkItem> work_items_for_lane(const GridPlan& plan, std::uint32_t lane);

}  // namespace knn
