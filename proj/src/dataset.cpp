#include "knn/dataset.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "knn/errors.hpp"

namespace knn {

Dataset::Dataset(std::uint32_t n, std::uint32_t d, std::vector<float> values)
    : n_(n), d_(d), values_(std::move(values)) {
    if (n_ < 2) {
        throw ValidationError("dataset needs at least 2 vectors, got " + std::to_string(n_));
    }
    if (d_ < 1) {
        throw ValidationError("dataset dimension must be at least 1");
    }
    const std::size_t expect = std::size_t(n_) * d_;
    if (values_.size() != expect) {
        throw ValidationError("dataset value buffer holds " + std::to_string(values_.size()) +
                              " floats, expected " + std::to_string(expect));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ValidationError("non-finite coordinate " + std::to_string(i % d_) +
                                  " in vector " + std::to_string(i / d_));
        }
    }
}

}  // namespace knn
