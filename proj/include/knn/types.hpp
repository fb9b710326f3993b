#pragma once

#include <cstdint>

namespace knn {

// Distance/accumulator precision. Coordinates are always single precision;
// build with KNN_DOUBLE_ACCUM to accumulate and store distances in double.
#if defined(KNN_DOUBLE_ACCUM)
using dist_t = double;
#else
using dist_t = float;
#endif

// Half-open index interval [begin, end).
struct IndexRange {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;

    std::uint32_t size() const { return end - begin; }
    bool empty() const { return begin >= end; }
    bool operator==(const IndexRange&) const = default;
};

}  // namespace knn
