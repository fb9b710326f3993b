#include "knn/schedule.hpp"

#include <algorithm>
#include <string>

#include "knn/errors.hpp"

namespace knn {

GridPlan make_plan(std::uint32_t n, std::uint32_t gsize, std::uint32_t bsize,
                   std::uint32_t c1, std::uint32_t c2, std::uint32_t n_lanes) {
    if (n < 2) throw ConfigError("n must be at least 2, got " + std::to_string(n));
    if (gsize < 1) throw ConfigError("gsize must be at least 1");
    if (bsize < 1) throw ConfigError("bsize must be at least 1");
    if (bsize > gsize) {
        throw ConfigError("bsize (" + std::to_string(bsize) + ") must not exceed gsize (" +
                          std::to_string(gsize) + ")");
    }
    if (c1 < 1) throw ConfigError("c1 must be at least 1");
    if (c2 < 1) throw ConfigError("c2 must be at least 1");
    if (n_lanes < 1) throw ConfigError("n_lanes must be at least 1");

    GridPlan plan;
    plan.n = n;
    plan.gsize = gsize;
    plan.bsize = bsize;
    plan.c1 = c1;
    plan.c2 = c2;
    plan.n_lanes = n_lanes;
    plan.n_grids = (n - 1) / gsize + 1;
    return plan;
}

std::uint32_t auto_gsize(std::uint32_t n, std::uint32_t bsize) {
    const std::uint64_t rounded = (std::uint64_t(n) + bsize - 1) / bsize * bsize;
    const std::uint64_t capped = std::min<std::uint64_t>(rounded, 4096);
    return static_cast<std::uint32_t>(std::max<std::uint64_t>(capped, bsize));
}

std::uint32_t lane_of_row(std::uint32_t grid_row, std::uint32_t n_lanes) {
    const std::uint32_t band = 2 * n_lanes;
    const std::uint32_t r = grid_row % band;
    return r < n_lanes ? r : band - 1 - r;
}

namespace {

IndexRange clip_grid(std::uint32_t g, const GridPlan& plan) {
    const std::uint64_t begin = std::uint64_t(g) * plan.gsize;
    const std::uint64_t end = std::min<std::uint64_t>(begin + plan.gsize, plan.n);
    return {static_cast<std::uint32_t>(begin), static_cast<std::uint32_t>(end)};
}

}  // namespace

std::vector<WorkItem> work_items_for_lane(const GridPlan& plan, std::uint32_t lane) {
    if (lane >= plan.n_lanes) {
        throw ConfigError("lane " + std::to_string(lane) + " out of range, plan has " +
                          std::to_string(plan.n_lanes) + " lanes");
    }
    std::vector<WorkItem> items;
    for (std::uint32_t gy = 0; gy < plan.n_grids; ++gy) {
        if (lane_of_row(gy, plan.n_lanes) != lane) continue;
        for (std::uint32_t gx = gy; gx < plan.n_grids; ++gx) {
            WorkItem item;
            item.grid_x = gx;
            item.grid_y = gy;
            item.diagonal = gx == gy;
            item.x_range = clip_grid(gx, plan);
            item.y_range = clip_grid(gy, plan);
            items.push_back(item);
        }
    }
    return items;
}

}  // namespace knn
