#include "knn/distance.hpp"

#include <map>
#include <mutex>
#include <string>

#include "knn/errors.hpp"
#include "knn/rng.hpp"

namespace knn {

CumulativeDistance hellinger() {
    CumulativeDistance f;
    f.name = "hellinger";
    f.initial = 0;
    f.step = +[](float u, float v, dist_t acc) { return metrics::Hellinger{}.step(u, v, acc); };
    f.finalize = nullptr;
    f.coord_valid = +[](float x) { return x >= 0.0f; };
    f.kind = MetricKind::hellinger;
    return f;
}

CumulativeDistance squared_euclidean() {
    CumulativeDistance f;
    f.name = "sqeuclidean";
    f.initial = 0;
    f.step = +[](float u, float v, dist_t acc) {
        return metrics::SquaredEuclidean{}.step(u, v, acc);
    };
    f.finalize = nullptr;
    f.coord_valid = nullptr;
    f.kind = MetricKind::sqeuclidean;
    return f;
}

void validate_vector(const CumulativeDistance& f, std::span<const float> v,
                     std::uint32_t vector_id) {
    if (!f.coord_valid) return;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (!f.coord_valid(v[j])) {
            throw ValidationError("coordinate " + std::to_string(j) + " of vector " +
                                  std::to_string(vector_id) + " (value " +
                                  std::to_string(v[j]) + ") is outside the domain of " +
                                  f.name);
        }
    }
}

void validate_rows(const CumulativeDistance& f, const Dataset& ds,
                   std::uint32_t row_begin, std::uint32_t row_end) {
    if (!f.coord_valid) return;
    for (std::uint32_t i = row_begin; i < row_end; ++i) {
        validate_vector(f, ds.row(i), i);
    }
}

void validate_dataset(const CumulativeDistance& f, const Dataset& ds) {
    validate_rows(f, ds, 0, ds.size());
}

dist_t distance(const CumulativeDistance& f, std::span<const float> u,
                std::span<const float> v) {
    if (u.size() != v.size()) {
        throw ValidationError("dimension mismatch: " + std::to_string(u.size()) + " vs " +
                              std::to_string(v.size()));
    }
    if (f.coord_valid) {
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (!f.coord_valid(u[j])) {
                throw ValidationError("coordinate " + std::to_string(j) +
                                      " of the first vector (value " + std::to_string(u[j]) +
                                      ") is outside the domain of " + f.name);
            }
            if (!f.coord_valid(v[j])) {
                throw ValidationError("coordinate " + std::to_string(j) +
                                      " of the second vector (value " + std::to_string(v[j]) +
                                      ") is outside the domain of " + f.name);
            }
        }
    }
    const auto d = static_cast<std::uint32_t>(u.size());
    return dispatch_metric(
        f, [&](auto m) { return fold_distance(m, u.data(), v.data(), d); });
}

namespace {

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::string, CumulativeDistance, std::less<>>& registry() {
    static std::map<std::string, CumulativeDistance, std::less<>> reg = [] {
        std::map<std::string, CumulativeDistance, std::less<>> r;
        CumulativeDistance h = hellinger();
        CumulativeDistance s = squared_euclidean();
        r.emplace(h.name, std::move(h));
        r.emplace(s.name, std::move(s));
        return r;
    }();
    return reg;
}

// Sample a coordinate the functor's domain accepts. Uniform [0, 1) satisfies
// both built-ins; for odd custom domains keep widening the search.
float probe_coordinate(const CumulativeDistance& f, SplitMix64& rng) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        float x = rng.next_unit_float();
        if (attempt >= 64) x = x * 2000.0f - 1000.0f;
        if (!f.coord_valid || f.coord_valid(x)) return x;
    }
    throw ConfigError("cannot sample coordinates inside the domain of '" + f.name +
                      "' to probe symmetry");
}

void probe_symmetry(const CumulativeDistance& f) {
    SplitMix64 rng(0x5ca1ab1e0ddba11ull);
    constexpr std::uint32_t kTrials = 32;
    constexpr std::uint32_t kDim = 8;
    float u[kDim];
    float v[kDim];
    for (std::uint32_t t = 0; t < kTrials; ++t) {
        for (std::uint32_t j = 0; j < kDim; ++j) {
            u[j] = probe_coordinate(f, rng);
            v[j] = probe_coordinate(f, rng);
        }
        const auto eval = [&](const float* a, const float* b) {
            return dispatch_metric(f, [&](auto m) { return fold_distance(m, a, b, kDim); });
        };
        if (eval(u, v) != eval(v, u)) {
            throw ConfigError("distance functor '" + f.name +
                              "' is not symmetric: fold(u, v) != fold(v, u) on a random probe");
        }
    }
}

}  // namespace

const CumulativeDistance& register_distance(const CumulativeDistance& f) {
    if (f.name.empty()) throw ConfigError("distance functor needs a name");
    if (!f.step) throw ConfigError("distance functor '" + f.name + "' has no step function");
    probe_symmetry(f);
    std::scoped_lock lock(registry_mutex());
    auto [it, inserted] = registry().emplace(f.name, f);
    if (!inserted) {
        throw ConfigError("distance functor '" + f.name + "' is already registered");
    }
    return it->second;
}

const CumulativeDistance& distance_by_name(std::string_view name) {
    std::scoped_lock lock(registry_mutex());
    const auto& reg = registry();
    auto it = reg.find(name);
    if (it == reg.end()) {
        std::string known;
        for (const auto& entry : reg) {
            if (!known.empty()) known += ", ";
            known += entry.first;
        }
        throw ConfigError("unknown distance '" + std::string(name) + "'; registered: " + known);
    }
    return it->second;
}

std::vector<std::string> distance_names() {
    std::scoped_lock lock(registry_mutex());
    std::vector<std::string> names;
    for (const auto& entry : registry()) names.push_back(entry.first);
    return names;
}

}  // namespace knn
