#include "knn/merge.hpp"

#include <algorithm>
#include <string>

#include "knn/errors.hpp"

namespace knn {

NeighborList merge_row(std::uint32_t query, std::span<NeighborHeap* const> partials,
                       std::uint32_t k) {
    if (k < 1) throw ConfigError("k must be at least 1");

    std::vector<std::vector<Neighbor>> runs;
    std::size_t total = 0;
    for (NeighborHeap* h : partials) {
        if (!h || h->empty()) continue;
        runs.push_back(h->drain_sorted());
        total += runs.back().size();
    }

    {
        std::vector<std::uint32_t> indices;
        indices.reserve(total);
        for (const auto& run : runs) {
            for (const Neighbor& c : run) indices.push_back(c.index);
        }
        std::sort(indices.begin(), indices.end());
        const auto dup = std::adjacent_find(indices.begin(), indices.end());
        if (dup != indices.end()) {
            throw ConsistencyError("query " + std::to_string(query) + ": neighbor " +
                                   std::to_string(*dup) +
                                   " arrived from more than one partial");
        }
    }

    NeighborList out;
    out.query = query;
    const std::size_t take = std::min<std::size_t>(k, total);
    out.neighbors.reserve(take);

    // K-way merge by linear scan over the run heads; the run count is the
    // lane count, which is small.
    std::vector<std::size_t> head(runs.size(), 0);
    for (std::size_t picked = 0; picked < take; ++picked) {
        std::size_t best = runs.size();
        for (std::size_t i = 0; i < runs.size(); ++i) {
            if (head[i] >= runs[i].size()) continue;
            if (best == runs.size() || runs[i][head[i]] < runs[best][head[best]]) {
                best = i;
            }
        }
        out.neighbors.push_back(runs[best][head[best]]);
        ++head[best];
    }
    return out;
}

std::vector<NeighborList> merge_all(std::span<HeapStore> stores, std::uint32_t k) {
    if (stores.empty()) throw ConfigError("merge needs at least one heap store");
    const std::uint32_t n = stores.front().rows();
    for (const HeapStore& s : stores) {
        if (s.rows() != n) {
            throw ConsistencyError("heap stores disagree on the row count");
        }
    }

    std::vector<NeighborList> lists;
    lists.reserve(n);
    std::vector<NeighborHeap*> partials(stores.size());
    for (std::uint32_t row = 0; row < n; ++row) {
        for (std::size_t i = 0; i < stores.size(); ++i) {
            partials[i] = &stores[i].heap(row);
        }
        lists.push_back(merge_row(row, partials, k));
    }
    return lists;
}

}  // namespace knn
