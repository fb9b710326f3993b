#include "knn/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include "knn/errors.hpp"

namespace knn {

namespace {

constexpr char kDatasetMagic[4] = {'K', 'N', 'N', 'V'};
constexpr char kNeighborsMagic[4] = {'K', 'N', 'N', 'R'};

std::uint32_t get_u32le(const char* p) {
    const auto* b = reinterpret_cast<const unsigned char*>(p);
    return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
           std::uint32_t(b[3]) << 24;
}

void put_u32le(std::string& out, std::uint32_t v) {
    out.push_back(char(v & 0xff));
    out.push_back(char(v >> 8 & 0xff));
    out.push_back(char(v >> 16 & 0xff));
    out.push_back(char(v >> 24 & 0xff));
}

void put_f32le(std::string& out, float v) {
    put_u32le(out, std::bit_cast<std::uint32_t>(v));
}

std::vector<char> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    in.seekg(0, std::ios::end);
    const std::streamoff size = in.tellg();
    in.seekg(0, std::ios::beg);
    std::vector<char> buf(static_cast<std::size_t>(size));
    if (size > 0) in.read(buf.data(), size);
    if (!in) throw IoError("failed to read '" + path.string() + "'");
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoError("failed to write '" + path.string() + "'");
}

}  // namespace

Dataset generate_dataset(std::uint32_t n, std::uint32_t d, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<float> values(std::size_t(n) * d);
    for (float& v : values) v = rng.next_unit_float();
    return Dataset(n, d, std::move(values));
}

Dataset load_dataset(const std::filesystem::path& path) {
    const std::vector<char> buf = read_file(path);
    if (buf.size() < 16) {
        throw IoError("'" + path.string() + "' is too short to hold a dataset header");
    }
    if (std::memcmp(buf.data(), kDatasetMagic, 4) != 0) {
        throw IoError("'" + path.string() + "' is not a dataset file (bad magic)");
    }
    const std::uint32_t version = get_u32le(buf.data() + 4);
    if (version != kFormatVersion) {
        throw IoError("'" + path.string() + "' has unsupported format version " +
                      std::to_string(version));
    }
    const std::uint32_t n = get_u32le(buf.data() + 8);
    const std::uint32_t d = get_u32le(buf.data() + 12);
    const std::size_t expect = 16 + std::size_t(n) * d * 4;
    if (buf.size() != expect) {
        throw IoError("'" + path.string() + "' holds " + std::to_string(buf.size()) +
                      " bytes but the header implies " + std::to_string(expect));
    }
    std::vector<float> values(std::size_t(n) * d);
    if constexpr (std::endian::native == std::endian::little) {
        std::memcpy(values.data(), buf.data() + 16, values.size() * 4);
    } else {
        for (std::size_t i = 0; i < values.size(); ++i) {
            values[i] = std::bit_cast<float>(get_u32le(buf.data() + 16 + i * 4));
        }
    }
    try {
        return Dataset(n, d, std::move(values));
    } catch (const ValidationError& e) {
        throw ValidationError("'" + path.string() + "': " + e.what());
    }
}

void save_dataset(const Dataset& ds, const std::filesystem::path& path) {
    std::string bytes;
    bytes.reserve(16 + ds.values().size() * 4);
    bytes.append(kDatasetMagic, 4);
    put_u32le(bytes, kFormatVersion);
    put_u32le(bytes, ds.size());
    put_u32le(bytes, ds.dim());
    if constexpr (std::endian::native == std::endian::little) {
        bytes.append(reinterpret_cast<const char*>(ds.values().data()),
                     ds.values().size() * 4);
    } else {
        for (float v : ds.values()) put_f32le(bytes, v);
    }
    write_file(path, bytes);
}

void write_neighbors_text(std::span<const NeighborList> lists,
                          const std::filesystem::path& path) {
    std::string out;
    char item[48];
    for (const NeighborList& list : lists) {
        out += std::to_string(list.query);
        for (const Neighbor& c : list.neighbors) {
            // %.9g round-trips a float exactly.
            std::snprintf(item, sizeof item, "\t%u:%.9g", c.index, double(c.distance));
            out += item;
        }
        out += '\n';
    }
    write_file(path, out);
}

void write_neighbors_binary(std::span<const NeighborList> lists,
                            const std::filesystem::path& path) {
    const std::size_t k = lists.empty() ? 0 : lists.front().neighbors.size();
    for (const NeighborList& list : lists) {
        if (list.neighbors.size() != k) {
            throw ConsistencyError("rows disagree on the neighbor count");
        }
    }
    std::string bytes;
    bytes.reserve(16 + lists.size() * k * 8);
    bytes.append(kNeighborsMagic, 4);
    put_u32le(bytes, kFormatVersion);
    put_u32le(bytes, static_cast<std::uint32_t>(lists.size()));
    put_u32le(bytes, static_cast<std::uint32_t>(k));
    for (const NeighborList& list : lists) {
        for (const Neighbor& c : list.neighbors) {
            put_u32le(bytes, c.index);
            put_f32le(bytes, float(c.distance));
        }
    }
    write_file(path, bytes);
}

}  // namespace knn
