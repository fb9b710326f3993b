#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "knn/distance.hpp"
#include "knn/errors.hpp"
#include "knn/rng.hpp"

using knn::CumulativeDistance;
using knn::dist_t;

namespace {

// Independent double-precision reference for the squared-Hellinger form.
double hellinger_ref(const std::vector<float>& u, const std::vector<float>& v) {
    double acc = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double t = std::sqrt(double(u[j])) - std::sqrt(double(v[j]));
        acc += t * t;
    }
    return acc;
}

double sqeuclidean_ref(const std::vector<float>& u, const std::vector<float>& v) {
    double acc = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double t = double(u[j]) - double(v[j]);
        acc += t * t;
    }
    return acc;
}

std::vector<float> random_vector(knn::SplitMix64& rng, std::uint32_t d) {
    std::vector<float> v(d);
    for (float& x : v) x = rng.next_unit_float();
    return v;
}

}  // namespace

TEST_CASE("hellinger single steps") {
    const knn::metrics::Hellinger m;
    CHECK(m.step(1.0f, 0.0f, 0) == dist_t(1));
    CHECK(m.step(4.0f, 1.0f, 0) == dist_t(1));
    CHECK(m.step(0.0f, 0.0f, 0) == dist_t(0));
    CHECK(m.step(2.0f, 2.0f, 5.0f) == dist_t(5));
}

TEST_CASE("hellinger on small vectors") {
    const CumulativeDistance f = knn::hellinger();
    CHECK(knn::distance(f, std::vector<float>{1, 0}, std::vector<float>{0, 1}) == dist_t(2));
    CHECK(knn::distance(f, std::vector<float>{0.5f, 0.5f}, std::vector<float>{0.5f, 0.5f}) ==
          dist_t(0));
    const std::vector<float> u{0.25f, 0.75f};
    const std::vector<float> v{0.5f, 0.5f};
    CHECK(double(knn::distance(f, u, v)) ==
          doctest::Approx(hellinger_ref(u, v)).epsilon(1e-6));
}

TEST_CASE("hellinger matches the double reference on random vectors") {
    const CumulativeDistance f = knn::hellinger();
    knn::SplitMix64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint32_t d = 1 + std::uint32_t(rng.next() % 64);
        const auto u = random_vector(rng, d);
        const auto v = random_vector(rng, d);
        CHECK(double(knn::distance(f, u, v)) ==
              doctest::Approx(hellinger_ref(u, v)).epsilon(1e-5));
    }
}

TEST_CASE("squared euclidean basics and random reference") {
    const CumulativeDistance f = knn::squared_euclidean();
    CHECK(knn::distance(f, std::vector<float>{3, 0}, std::vector<float>{0, 4}) == dist_t(25));
    CHECK(knn::distance(f, std::vector<float>{1, 2, 3}, std::vector<float>{1, 2, 3}) ==
          dist_t(0));
    knn::SplitMix64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint32_t d = 1 + std::uint32_t(rng.next() % 64);
        const auto u = random_vector(rng, d);
        const auto v = random_vector(rng, d);
        CHECK(double(knn::distance(f, u, v)) ==
              doctest::Approx(sqeuclidean_ref(u, v)).epsilon(1e-5));
    }
}

TEST_CASE("registered functors evaluate symmetrically, bit for bit") {
    knn::SplitMix64 rng(5);
    for (const char* name : {"hellinger", "sqeuclidean"}) {
        const CumulativeDistance& f = knn::distance_by_name(name);
        for (int trial = 0; trial < 100; ++trial) {
            const std::uint32_t d = 1 + std::uint32_t(rng.next() % 32);
            const auto u = random_vector(rng, d);
            const auto v = random_vector(rng, d);
            CHECK(knn::distance(f, u, v) == knn::distance(f, v, u));
        }
    }
}

TEST_CASE("hellinger rejects negative coordinates, naming the offender") {
    const CumulativeDistance f = knn::hellinger();
    const std::vector<float> ok{0.5f, 0.5f};
    const std::vector<float> bad{0.5f, -0.25f};
    CHECK_THROWS_AS(knn::distance(f, ok, bad), knn::ValidationError);
    try {
        knn::distance(f, bad, ok);
        FAIL("expected ValidationError");
    } catch (const knn::ValidationError& e) {
        const std::string what = e.what();
        CHECK(what.find("coordinate 1") != std::string::npos);
        CHECK(what.find("first") != std::string::npos);
    }
}

TEST_CASE("dimension mismatch is rejected") {
    const CumulativeDistance f = knn::squared_euclidean();
    CHECK_THROWS_AS(knn::distance(f, std::vector<float>{1, 2}, std::vector<float>{1}),
                    knn::ValidationError);
}

TEST_CASE("lookup by name") {
    CHECK(knn::distance_by_name("hellinger").kind == knn::MetricKind::hellinger);
    CHECK(knn::distance_by_name("sqeuclidean").kind == knn::MetricKind::sqeuclidean);
    CHECK_THROWS_AS(knn::distance_by_name("cosine"), knn::ConfigError);
    const auto names = knn::distance_names();
    CHECK(std::find(names.begin(), names.end(), "hellinger") != names.end());
    CHECK(std::find(names.begin(), names.end(), "sqeuclidean") != names.end());
}

TEST_CASE("registration accepts a symmetric custom functor") {
    CumulativeDistance f;
    f.name = "manhattan_test";
    f.initial = 0;
    f.step = +[](float u, float v, dist_t acc) { return acc + dist_t(std::fabs(u - v)); };
    const CumulativeDistance& stored = knn::register_distance(f);
    CHECK(stored.name == "manhattan_test");
    CHECK(knn::distance(knn::distance_by_name("manhattan_test"), std::vector<float>{1, 5},
                        std::vector<float>{4, 3}) == dist_t(5));
    // Same name again is a conflict.
    CHECK_THROWS_AS(knn::register_distance(f), knn::ConfigError);
}

TEST_CASE("registration rejects an asymmetric functor") {
    CumulativeDistance f;
    f.name = "lopsided_test";
    f.initial = 0;
    f.step = +[](float u, float v, dist_t acc) { return acc + dist_t(u - 2.0f * v); };
    CHECK_THROWS_AS(knn::register_distance(f), knn::ConfigError);
    CHECK_THROWS_AS(knn::distance_by_name("lopsided_test"), knn::ConfigError);
}

TEST_CASE("registration rejects unnamed or stepless functors") {
    CumulativeDistance f;
    f.initial = 0;
    f.step = +[](float, float, dist_t acc) { return acc; };
    CHECK_THROWS_AS(knn::register_distance(f), knn::ConfigError);
    f.name = "no_step_test";
    f.step = nullptr;
    CHECK_THROWS_AS(knn::register_distance(f), knn::ConfigError);
}

TEST_CASE("finalize runs after the fold") {
    CumulativeDistance f;
    f.name = "root_of_squares_test";
    f.initial = 0;
    f.step = +[](float u, float v, dist_t acc) {
        const float t = u - v;
        return acc + dist_t(t) * dist_t(t);
    };
    f.finalize = +[](dist_t acc) { return dist_t(std::sqrt(acc)); };
    const CumulativeDistance& stored = knn::register_distance(f);
    CHECK(knn::distance(stored, std::vector<float>{3, 0}, std::vector<float>{0, 4}) ==
          dist_t(5));
}

TEST_CASE("validate_dataset reports the offending vector") {
    const CumulativeDistance f = knn::hellinger();
    const knn::Dataset ds(2, 2, {0.5f, 0.5f, 0.25f, -1.0f});
    try {
        knn::validate_dataset(f, ds);
        FAIL("expected ValidationError");
    } catch (const knn::ValidationError& e) {
        const std::string what = e.what();
        CHECK(what.find("vector 1") != std::string::npos);
        CHECK(what.find("coordinate 1") != std::string::npos);
    }
}
