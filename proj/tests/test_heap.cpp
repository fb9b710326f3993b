#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <limits>
#include <vector>

#include "knn/errors.hpp"
#include "knn/heap.hpp"
#include "knn/rng.hpp"

using knn::Neighbor;
using knn::NeighborHeap;

namespace {

std::vector<Neighbor> k_smallest_by_sort(std::vector<Neighbor> all, std::uint32_t k) {
    std::sort(all.begin(), all.end());
    if (all.size() > k) all.resize(k);
    return all;
}

std::vector<Neighbor> random_stream(knn::SplitMix64& rng, std::uint32_t count,
                                    bool force_ties) {
    std::vector<Neighbor> stream;
    stream.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        float dist = rng.next_unit_float();
        if (force_ties) dist = float(rng.next() % 8) / 8.0f;
        stream.push_back({dist, i});
    }
    return stream;
}

}  // namespace

TEST_CASE("ordering is lexicographic on (distance, index)") {
    CHECK(Neighbor{1.0f, 5} < Neighbor{2.0f, 1});
    CHECK(Neighbor{1.0f, 1} < Neighbor{1.0f, 2});
    CHECK_FALSE(Neighbor{1.0f, 2} < Neighbor{1.0f, 2});
    CHECK(Neighbor{1.0f, 2} == Neighbor{1.0f, 2});
}

TEST_CASE("zero capacity is rejected") {
    CHECK_THROWS_AS(NeighborHeap(0), knn::ConfigError);
}

TEST_CASE("push below capacity always stores") {
    NeighborHeap h(3);
    CHECK(h.empty());
    CHECK(h.push({5.0f, 7}));
    CHECK(h.size() == 1);
    CHECK(h.root() == Neighbor{5.0f, 7});
    CHECK(h.push({1.0f, 2}));
    CHECK(h.push({3.0f, 4}));
    CHECK(h.full());
    CHECK(h.root() == Neighbor{5.0f, 7});
}

TEST_CASE("full heap rejects candidates not below the root") {
    NeighborHeap h(1);
    CHECK(h.push({5.0f, 7}));
    CHECK_FALSE(h.push({6.0f, 2}));
    CHECK(h.root() == Neighbor{5.0f, 7});
    CHECK(h.push({4.0f, 9}));
    CHECK(h.root() == Neighbor{4.0f, 9});
}

TEST_CASE("equal distances break toward the smaller index") {
    NeighborHeap h(2);
    h.push({1.0f, 4});
    h.push({1.0f, 9});
    // (1.0, 9) is the root; an equal distance with smaller index evicts it.
    CHECK_FALSE(h.push({1.0f, 9}));
    CHECK(h.push({1.0f, 3}));
    const std::vector<Neighbor> out = h.drain_sorted();
    REQUIRE(out.size() == 2);
    CHECK(out[0] == Neighbor{1.0f, 3});
    CHECK(out[1] == Neighbor{1.0f, 4});
}

TEST_CASE("would_accept agrees with push") {
    knn::SplitMix64 rng(11);
    NeighborHeap h(16);
    for (std::uint32_t i = 0; i < 500; ++i) {
        const Neighbor c{rng.next_unit_float(), i};
        const bool predicted = h.would_accept(c);
        CHECK(h.push(c) == predicted);
    }
}

TEST_CASE("root equals the k-th smallest pushed so far once full") {
    knn::SplitMix64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint32_t k = 1 + std::uint32_t(rng.next() % 12);
        NeighborHeap h(k);
        std::vector<Neighbor> seen;
        const auto stream = random_stream(rng, 120, trial % 2 == 0);
        for (const Neighbor& c : stream) {
            h.push(c);
            seen.push_back(c);
            if (h.full()) {
                std::vector<Neighbor> sorted = seen;
                std::sort(sorted.begin(), sorted.end());
                CHECK(h.root() == sorted[k - 1]);
            }
        }
    }
}

TEST_CASE("thousand-candidate stream matches the sort oracle") {
    knn::SplitMix64 rng(42);
    const auto stream = random_stream(rng, 1000, false);
    NeighborHeap h(10);
    for (const Neighbor& c : stream) h.push(c);
    CHECK(h.drain_sorted() == k_smallest_by_sort(stream, 10));
}

TEST_CASE("drain_sorted returns ascending order and empties the heap") {
    NeighborHeap h(4);
    h.push({2.0f, 1});
    h.push({1.0f, 5});
    const std::vector<Neighbor> out = h.drain_sorted();
    REQUIRE(out.size() == 2);
    CHECK(out[0] == Neighbor{1.0f, 5});
    CHECK(out[1] == Neighbor{2.0f, 1});
    CHECK(h.empty());
    CHECK(h.drain_sorted().empty());
}

TEST_CASE("drain_sorted keeps tied distances ordered by index") {
    NeighborHeap h(5);
    h.push({1.0f, 9});
    h.push({1.0f, 2});
    h.push({0.5f, 7});
    h.push({1.0f, 4});
    const std::vector<Neighbor> out = h.drain_sorted();
    REQUIRE(out.size() == 4);
    CHECK(out[0] == Neighbor{0.5f, 7});
    CHECK(out[1] == Neighbor{1.0f, 2});
    CHECK(out[2] == Neighbor{1.0f, 4});
    CHECK(out[3] == Neighbor{1.0f, 9});
}

TEST_CASE("heap store caps capacity at n - 1 and starts hints at infinity") {
    knn::HeapStore store(4, 100);
    CHECK(store.rows() == 4);
    CHECK(store.k() == 100);
    CHECK(store.heap(0).capacity() == 3);
    CHECK(store.root_hint(2) == std::numeric_limits<knn::dist_t>::infinity());

    store.heap(1).push({0.5f, 0});
    store.refresh_root_hint(1);
    // Not full yet: the hint must stay wide open.
    CHECK(store.root_hint(1) == std::numeric_limits<knn::dist_t>::infinity());

    store.heap(1).push({0.25f, 2});
    store.heap(1).push({0.75f, 3});
    store.refresh_root_hint(1);
    CHECK(store.root_hint(1) == 0.75f);
}
