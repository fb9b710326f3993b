#include "knn/dist_kernel.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "knn/errors.hpp"

namespace knn {

void DistanceTile::reset(const WorkItem& item) {
    x_ = item.x_range;
    y_ = item.y_range;
    diagonal_ = item.diagonal;
    width_ = x_.size();
    height_ = y_.size();
    values_.resize(std::size_t(width_) * height_);
}

std::uint64_t DistanceTile::set_count() const {
    if (!diagonal_) return std::uint64_t(width_) * height_;
    std::uint64_t total = 0;
    for (std::uint32_t r = 0; r < height_; ++r) {
        const std::uint32_t cb = col_begin_for_row(r);
        if (cb < width_) total += width_ - cb;
    }
    return total;
}

void DistanceTile::fill(dist_t v) {
    std::fill(values_.begin(), values_.end(), v);
}

namespace {

// Blocked evaluation of one tile. Rows of the tile are processed bsize at a
// time, columns c1 at a time, coordinates c2 at a time. Both vector slices
// are staged compact (columns coordinate-major so the c loop walks
// contiguous memory), then each coordinate adds its step into a dist_t
// accumulator per pair. Per pair that is still step 0, 1, ..., d-1 in order,
// so regrouping changes nothing in the result.
template <typename Metric>
void fill_tile(const Dataset& ds, Metric m, const WorkItem& item, const GridPlan& plan,
               std::uint64_t& eval_count, DistanceTile& tile) {
    const std::uint32_t d = ds.dim();
    const std::uint32_t w = tile.width();
    const std::uint32_t h = tile.height();
    const std::uint32_t x0 = item.x_range.begin;
    const std::uint32_t y0 = item.y_range.begin;

    const std::uint32_t bs = std::min(plan.bsize, h);
    const std::uint32_t c1 = std::min(plan.c1, w);
    const std::uint32_t c2 = std::min(plan.c2, d);

    std::vector<dist_t> acc(std::size_t(bs) * c1);
    std::vector<float> col_stage(std::size_t(c2) * c1);  // [coord][column]
    std::vector<float> row_stage(std::size_t(bs) * c2);  // [row][coord]
    std::uint64_t pairs = 0;

    for (std::uint32_t r0 = 0; r0 < h; r0 += bs) {
        const std::uint32_t bh = std::min(bs, h - r0);
        for (std::uint32_t s0 = 0; s0 < w; s0 += c1) {
            const std::uint32_t cw = std::min(c1, w - s0);
            // col_begin grows with the row, so the block's first row decides
            // whether any of this stripe is needed.
            if (tile.col_begin_for_row(r0) >= s0 + cw) continue;

            for (std::uint32_t r = 0; r < bh; ++r) {
                dist_t* arow = &acc[std::size_t(r) * c1];
                for (std::uint32_t c = 0; c < cw; ++c) arow[c] = m.initial();
            }

            for (std::uint32_t j0 = 0; j0 < d; j0 += c2) {
                const std::uint32_t cl = std::min(c2, d - j0);
                for (std::uint32_t c = 0; c < cw; ++c) {
                    const float* src = ds.row_data(x0 + s0 + c) + j0;
                    for (std::uint32_t j = 0; j < cl; ++j) {
                        col_stage[std::size_t(j) * cw + c] = m.stage(src[j]);
                    }
                }
                for (std::uint32_t r = 0; r < bh; ++r) {
                    const float* src = ds.row_data(y0 + r0 + r) + j0;
                    float* dst = &row_stage[std::size_t(r) * c2];
                    for (std::uint32_t j = 0; j < cl; ++j) dst[j] = m.stage(src[j]);
                }
                for (std::uint32_t r = 0; r < bh; ++r) {
                    const std::uint32_t cb = tile.col_begin_for_row(r0 + r);
                    const std::uint32_t cs = cb > s0 ? std::min(cb - s0, cw) : 0;
                    if (cs >= cw) continue;
                    dist_t* arow = &acc[std::size_t(r) * c1];
                    const float* rrow = &row_stage[std::size_t(r) * c2];
                    for (std::uint32_t j = 0; j < cl; ++j) {
                        const float sv = rrow[j];
                        const float* scol = &col_stage[std::size_t(j) * cw];
                        for (std::uint32_t c = cs; c < cw; ++c) {
                            arow[c] = m.step_staged(scol[c], sv, arow[c]);
                        }
                    }
                }
            }

            for (std::uint32_t r = 0; r < bh; ++r) {
                const std::uint32_t cb = tile.col_begin_for_row(r0 + r);
                const std::uint32_t cs = cb > s0 ? std::min(cb - s0, cw) : 0;
                if (cs >= cw) continue;
                const dist_t* arow = &acc[std::size_t(r) * c1];
                for (std::uint32_t c = cs; c < cw; ++c) {
                    tile.value(r0 + r, s0 + c) = m.finalize(arow[c]);
                }
                pairs += cw - cs;
            }
        }
    }
    eval_count += pairs;
}

}  // namespace

void calc_distances(const Dataset& ds, const CumulativeDistance& f,
                    const WorkItem& item, const GridPlan& plan,
                    std::uint64_t& eval_count, DistanceTile& tile) {
    if (item.x_range.empty() || item.y_range.empty() || item.x_range.end > ds.size() ||
        item.y_range.end > ds.size()) {
        throw ConsistencyError("work item (" + std::to_string(item.grid_x) + ", " +
                               std::to_string(item.grid_y) +
                               ") has ranges outside the dataset");
    }
    if (item.diagonal && item.x_range != item.y_range) {
        throw ConsistencyError("diagonal work item with mismatched ranges");
    }
    validate_rows(f, ds, item.y_range.begin, item.y_range.end);
    validate_rows(f, ds, item.x_range.begin, item.x_range.end);

    tile.reset(item);
    dispatch_metric(f, [&](auto m) {
        fill_tile(ds, m, item, plan, eval_count, tile);
    });
}

}  // namespace knn
