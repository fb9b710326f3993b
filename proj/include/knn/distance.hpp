#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "knn/dataset.hpp"
#include "knn/types.hpp"

namespace knn {

// Tag used to pick a statically typed kernel for the built-in functors.
// Registered custom functors run through their function pointers instead.
enum class MetricKind : std::uint8_t { hellinger, sqeuclidean, custom };

using StepFn = dist_t (*)(float u, float v, dist_t acc);
using FinalizeFn = dist_t (*)(dist_t acc);
using CoordPredicate = bool (*)(float value);

// A distance expressed as a per-coordinate fold: start from `initial`,
// apply `step` for coordinates 0..d-1 in order, then `finalize`.
// `coord_valid`, when set, is the domain each coordinate must satisfy.
struct CumulativeDistance {
    std::string name;
    dist_t initial = 0;
    StepFn step = nullptr;
    FinalizeFn finalize = nullptr;        // null means identity
    CoordPredicate coord_valid = nullptr; // null means unconstrained
    MetricKind kind = MetricKind::custom;
};

namespace metrics {

// Squared Hellinger-style divergence: sum of (sqrt(u) - sqrt(v))^2.
// Defined for non-negative coordinates only. Staging applies the sqrt up
// front; since IEEE sqrt is correctly rounded, step over raw values and
// step_staged over staged values produce identical bits.
struct Hellinger {
    static constexpr MetricKind kind = MetricKind::hellinger;
    dist_t initial() const { return dist_t(0); }
    dist_t step(float u, float v, dist_t acc) const {
        return step_staged(std::sqrt(u), std::sqrt(v), acc);
    }
    float stage(float x) const { return std::sqrt(x); }
    dist_t step_staged(float su, float sv, dist_t acc) const {
        const float t = su - sv;
        return acc + dist_t(t) * dist_t(t);
    }
    dist_t finalize(dist_t acc) const { return acc; }
};

struct SquaredEuclidean {
    static constexpr MetricKind kind = MetricKind::sqeuclidean;
    dist_t initial() const { return dist_t(0); }
    dist_t step(float u, float v, dist_t acc) const { return step_staged(u, v, acc); }
    float stage(float x) const { return x; }
    dist_t step_staged(float u, float v, dist_t acc) const {
        const float t = u - v;
        return acc + dist_t(t) * dist_t(t);
    }
    dist_t finalize(dist_t acc) const { return acc; }
};

// Adapter that runs a registered functor through its function pointers.
struct Erased {
    dist_t init;
    StepFn step_fn;
    FinalizeFn finalize_fn;
    dist_t initial() const { return init; }
    dist_t step(float u, float v, dist_t acc) const { return step_fn(u, v, acc); }
    float stage(float x) const { return x; }
    dist_t step_staged(float u, float v, dist_t acc) const { return step_fn(u, v, acc); }
    dist_t finalize(dist_t acc) const { return finalize_fn ? finalize_fn(acc) : acc; }
};

}  // namespace metrics

// Invokes `fn` with a statically typed metric object matching `f`.
template <typename Fn>
decltype(auto) dispatch_metric(const CumulativeDistance& f, Fn&& fn) {
    switch (f.kind) {
    case MetricKind::hellinger:
        return fn(metrics::Hellinger{});
    case MetricKind::sqeuclidean:
        return fn(metrics::SquaredEuclidean{});
    case MetricKind::custom:
        break;
    }
    return fn(metrics::Erased{f.initial, f.step, f.finalize});
}

// The one fold every code path reduces to: coordinates 0..d-1, in order.
// Chunked kernels regroup the iteration but replay this exact sequence per
// pair, so results are bit-identical across paths.
template <typename Metric>
dist_t fold_distance(const Metric& m, const float* u, const float* v, std::uint32_t d) {
    dist_t acc = m.initial();
    for (std::uint32_t j = 0; j < d; ++j) {
        acc = m.step(u[j], v[j], acc);
    }
    return m.finalize(acc);
}

CumulativeDistance hellinger();
CumulativeDistance squared_euclidean();

// Checked evaluation: dimension match and per-coordinate domain, then the fold.
dist_t distance(const CumulativeDistance& f, std::span<const float> u,
                std::span<const float> v);

// Throws ValidationError naming the vector and coordinate on a domain violation.
void validate_vector(const CumulativeDistance& f, std::span<const float> v,
                     std::uint32_t vector_id);
void validate_rows(const CumulativeDistance& f, const Dataset& ds,
                   std::uint32_t row_begin, std::uint32_t row_end);
void validate_dataset(const CumulativeDistance& f, const Dataset& ds);

// Registry. Registration rejects empty or duplicate names, a null step, and
// functors that fail a randomized symmetry probe.
const CumulativeDistance& register_distance(const CumulativeDistance& f);
const CumulativeDistance& distance_by_name(std::string_view name);
std::vector<std::string> distance_names();

}  // namespace knn
