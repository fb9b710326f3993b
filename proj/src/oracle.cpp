#include "knn/oracle.hpp"

#include <algorithm>
#include <chrono>

#include "knn/errors.hpp"

namespace knn {

OracleResult brute_force_knn(const Dataset& ds, const CumulativeDistance& f,
                             std::uint32_t k) {
    if (k < 1) throw ConfigError("k must be at least 1");
    validate_dataset(f, ds);

    const std::uint32_t n = ds.size();
    const std::uint32_t d = ds.dim();

    const auto t0 = std::chrono::steady_clock::now();

    std::vector<NeighborHeap> heaps(n, NeighborHeap(std::min(k, n - 1)));
    std::uint64_t pairs = 0;
    dispatch_metric(f, [&](auto m) {
        for (std::uint32_t x = 1; x < n; ++x) {
            const float* vx = ds.row_data(x);
            for (std::uint32_t y = 0; y < x; ++y) {
                const dist_t dist = fold_distance(m, vx, ds.row_data(y), d);
                heaps[y].push({dist, x});
                heaps[x].push({dist, y});
                ++pairs;
            }
        }
    });

    OracleResult result;
    result.lists.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        result.lists.push_back({i, heaps[i].drain_sorted()});
    }
    result.pair_evaluations = pairs;
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace knn
