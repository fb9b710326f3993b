#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace knn {

// n vectors of dimension d, dense row-major, immutable after construction.
// The constructor rejects n < 2, d < 1, a value buffer of the wrong length,
// and any non-finite coordinate.
class Dataset {
public:
    Dataset(std::uint32_t n, std::uint32_t d, std::vector<float> values);

    std::uint32_t size() const { return n_; }
    std::uint32_t dim() const { return d_; }

    std::span<const float> row(std::uint32_t i) const {
        return {values_.data() + std::size_t(i) * d_, d_};
    }
    const float* row_data(std::uint32_t i) const {
        return values_.data() + std::size_t(i) * d_;
    }
    float at(std::uint32_t i, std::uint32_t j) const {
        return values_[std::size_t(i) * d_ + j];
    }
    std::span<const float> values() const { return values_; }

private:
    std::uint32_t n_;
    std::uint32_t d_;
    std::vector<float> values_;
};

}  // namespace knn
