#pragma once

#include <cstdint>
#include <vector>

#include "knn/dataset.hpp"
#include "knn/distance.hpp"
#include "knn/schedule.hpp"
#include "knn/types.hpp"

namespace knn {

// Dense distance buffer for one work item, reused across items. Entry
// (row r, col c) holds the distance between vectors y_begin + r and
// x_begin + c. For diagonal items only entries with x > y are set; the rest
// are left untouched and must not be read.
class DistanceTile {
public:
    void reset(const WorkItem& item);

    std::uint32_t width() const { return width_; }
    std::uint32_t height() const { return height_; }
    std::uint32_t x_begin() const { return x_.begin; }
    std::uint32_t y_begin() const { return y_.begin; }
    bool diagonal() const { return diagonal_; }

    // First set column of row r (clamped to width when the row is empty).
    std::uint32_t col_begin_for_row(std::uint32_t r) const {
        if (!diagonal_) return 0;
        const std::uint32_t y = y_.begin + r;
        return y + 1 > x_.begin ? y + 1 - x_.begin : 0;
    }
    // One past the last set row of column c.
    std::uint32_t row_end_for_col(std::uint32_t c) const {
        if (!diagonal_) return height_;
        const std::uint32_t x = x_.begin + c;
        return x > y_.begin ? std::min(x - y_.begin, height_) : 0;
    }

    std::uint64_t set_count() const;

    dist_t value(std::uint32_t r, std::uint32_t c) const {
        return values_[std::size_t(r) * width_ + c];
    }
    dist_t& value(std::uint32_t r, std::uint32_t c) {
        return values_[std::size_t(r) * width_ + c];
    }
    const dist_t* row_data(std::uint32_t r) const {
        return values_.data() + std::size_t(r) * width_;
    }

    // Overwrites the whole buffer, set entries included. Test scaffolding.
    void fill(dist_t v);

private:
    IndexRange x_;
    IndexRange y_;
    std::uint32_t width_ = 0;
    std::uint32_t height_ = 0;
    bool diagonal_ = false;
    std::vector<dist_t> values_;
};

// Fills `tile` with every pair distance the item owns and adds the number of
// evaluated pairs to `eval_count`. Iteration is blocked by plan.bsize rows,
// plan.c1 columns, and plan.c2 coordinates; per pair the coordinate fold
// still runs 0..d-1 in order, so values match the plain fold bit for bit.
void calc_distances(const Dataset& ds, const CumulativeDistance& f,
                    const WorkItem& item, const GridPlan& plan,
                    std::uint64_t& eval_count, DistanceTile& tile);

}  // namespace knn
