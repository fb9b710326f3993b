#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "knn/dataset.hpp"
#include "knn/distance.hpp"
#include "knn/errors.hpp"
#include "knn/oracle.hpp"
#include "knn/rng.hpp"

using knn::Dataset;
using knn::Neighbor;

namespace {

Dataset random_dataset(knn::SplitMix64& rng, std::uint32_t n, std::uint32_t d) {
    std::vector<float> values(std::size_t(n) * d);
    for (float& v : values) v = rng.next_unit_float();
    return Dataset(n, d, std::move(values));
}

// Flat quadratic reference built on the checked public evaluation only.
std::vector<std::vector<Neighbor>> sort_reference(const Dataset& ds,
                                                  const knn::CumulativeDistance& f,
                                                  std::uint32_t k) {
    std::vector<std::vector<Neighbor>> lists(ds.size());
    for (std::uint32_t i = 0; i < ds.size(); ++i) {
        for (std::uint32_t j = 0; j < ds.size(); ++j) {
            if (i == j) continue;
            // Higher index first: the same argument convention everywhere.
            const auto [u, v] = i > j ? std::pair{i, j} : std::pair{j, i};
            knn::dist_t dist = knn::distance(f, ds.row(u), ds.row(v));
            lists[i].push_back({dist, j});
        }
        std::sort(lists[i].begin(), lists[i].end());
        if (lists[i].size() > k) lists[i].resize(k);
    }
    return lists;
}

}  // namespace

TEST_CASE("two vectors are each other's only neighbor") {
    const Dataset ds(2, 2, {1.0f, 0.0f, 0.0f, 1.0f});
    const auto result = knn::brute_force_knn(ds, knn::hellinger(), 1);
    REQUIRE(result.lists.size() == 2);
    CHECK(result.lists[0].query == 0);
    CHECK(result.lists[0].neighbors == std::vector<Neighbor>{{2.0f, 1}});
    CHECK(result.lists[1].neighbors == std::vector<Neighbor>{{2.0f, 0}});
    CHECK(result.pair_evaluations == 1);
}

TEST_CASE("five points on a line rank by euclidean gap") {
    // Positions 0, 1, 2, 4, 8 in one dimension, squared distances are exact
    // small integers.
    const Dataset ds(5, 1, {0.0f, 1.0f, 2.0f, 4.0f, 8.0f});
    const auto result = knn::brute_force_knn(ds, knn::squared_euclidean(), 2);
    CHECK(result.lists[0].neighbors == std::vector<Neighbor>{{1.0f, 1}, {4.0f, 2}});
    CHECK(result.lists[1].neighbors == std::vector<Neighbor>{{1.0f, 0}, {1.0f, 2}});
    CHECK(result.lists[2].neighbors == std::vector<Neighbor>{{1.0f, 1}, {4.0f, 0}});
    CHECK(result.lists[3].neighbors == std::vector<Neighbor>{{4.0f, 2}, {9.0f, 1}});
    CHECK(result.lists[4].neighbors == std::vector<Neighbor>{{16.0f, 3}, {36.0f, 2}});
    CHECK(result.pair_evaluations == 10);
}

TEST_CASE("oracle equals the flat sort reference") {
    knn::SplitMix64 rng(51);
    for (int trial = 0; trial < 12; ++trial) {
        const std::uint32_t n = 2 + std::uint32_t(rng.next() % 60);
        const std::uint32_t d = 1 + std::uint32_t(rng.next() % 10);
        const std::uint32_t k = 1 + std::uint32_t(rng.next() % (n + 4));
        const Dataset ds = random_dataset(rng, n, d);
        const knn::CumulativeDistance f =
            trial % 2 == 0 ? knn::hellinger() : knn::squared_euclidean();
        const auto result = knn::brute_force_knn(ds, f, k);
        const auto expect = sort_reference(ds, f, k);
        REQUIRE(result.lists.size() == n);
        for (std::uint32_t i = 0; i < n; ++i) {
            CHECK(result.lists[i].query == i);
            CHECK(result.lists[i].neighbors == expect[i]);
        }
        CHECK(result.pair_evaluations == std::uint64_t(n) * (n - 1) / 2);
    }
}

TEST_CASE("k greater than n - 1 yields full rows of n - 1 neighbors") {
    knn::SplitMix64 rng(52);
    const Dataset ds = random_dataset(rng, 6, 3);
    const auto result = knn::brute_force_knn(ds, knn::hellinger(), 100);
    for (const auto& list : result.lists) CHECK(list.neighbors.size() == 5);
}

TEST_CASE("oracle validates inputs") {
    knn::SplitMix64 rng(53);
    const Dataset ds = random_dataset(rng, 4, 2);
    CHECK_THROWS_AS(knn::brute_force_knn(ds, knn::hellinger(), 0), knn::ConfigError);
    const Dataset bad(2, 1, {0.5f, -0.5f});
    CHECK_THROWS_AS(knn::brute_force_knn(bad, knn::hellinger(), 1), knn::ValidationError);
}
