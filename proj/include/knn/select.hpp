#pragma once

#include <cstdint>

#include "knn/dist_kernel.hpp"
#include "knn/heap.hpp"

namespace knn {

// Indices offset, offset + stride, ... below length. Workers share a line of
// a tile by striding: worker w of W visits every W-th element.
class StridedRange {
public:
    StridedRange(std::uint32_t length, std::uint32_t stride, std::uint32_t offset)
        : length_(length), stride_(stride), offset_(offset) {}

    class iterator {
    public:
        iterator(std::uint64_t pos, std::uint32_t stride) : pos_(pos), stride_(stride) {}
        std::uint32_t operator*() const { return static_cast<std::uint32_t>(pos_); }
        iterator& operator++() {
            pos_ += stride_;
            return *this;
        }
        bool operator!=(const iterator& other) const { return pos_ != other.pos_; }

    private:
        std::uint64_t pos_;
        std::uint32_t stride_;
    };

    iterator begin() const { return {offset_, stride_}; }
    iterator end() const { return {offset_ + std::uint64_t(stride_) * count(), stride_}; }

    std::uint32_t count() const {
        if (offset_ >= length_) return 0;
        return (length_ - offset_ - 1) / stride_ + 1;
    }

private:
    std::uint32_t length_;
    std::uint32_t stride_;
    std::uint32_t offset_;
};

StridedRange strided_partition(std::uint32_t line_length, std::uint32_t workers,
                               std::uint32_t worker_id);

struct SelectStats {
    std::uint64_t offered = 0;       // candidates scanned
    std::uint64_t buffered = 0;      // candidates that passed the root filter
    std::uint64_t flush_pushes = 0;  // candidates stored at flush time

    SelectStats& operator+=(const SelectStats& o) {
        offered += o.offered;
        buffered += o.buffered;
        flush_pushes += o.flush_pushes;
        return *this;
    }
};

// Feeds every set tile entry to the store twice: scanning row r offers
// (value, x) to heap y, scanning column c offers (value, y) to heap x, so one
// computed triangle serves both endpoints. Candidates pass a lock-free root
// filter, collect in a per-worker buffer of buf_size, and are re-checked
// under the target heap's flush mutex before insertion.
SelectStats k_smallest_push(const DistanceTile& tile, HeapStore& store,
                            std::uint32_t buf_size, std::uint32_t workers);

}  // namespace knn
