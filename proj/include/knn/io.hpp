#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "knn/dataset.hpp"
#include "knn/heap.hpp"
#include "knn/rng.hpp"

namespace knn {

// Dataset file: "KNNV", u32 version, u32 n, u32 d, then n*d float32 values
// row-major. All integers and floats little-endian.
inline constexpr std::uint32_t kFormatVersion = 1;

// Neighbor file (binary flavor): "KNNR", u32 version, u32 n, u32 k, then per
// row k pairs of (u32 index, float32 distance) ascending.

// n x d uniform [0, 1) values from SplitMix64(seed), row-major order.
Dataset generate_dataset(std::uint32_t n, std::uint32_t d, std::uint64_t seed);

Dataset load_dataset(const std::filesystem::path& path);
void save_dataset(const Dataset& ds, const std::filesystem::path& path);

// One line per query: "<query>\t<index>:<distance>\t..." with distances
// printed as %.9g, which round-trips float exactly.
void write_neighbors_text(std::span<const NeighborList> lists,
                          const std::filesystem::path& path);
void write_neighbors_binary(std::span<const NeighborList> lists,
                            const std::filesystem::path& path);

}  // namespace knn
