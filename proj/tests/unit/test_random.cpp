#include "spike_esn/error.hpp"
#include "spike_esn/random.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace spike_esn;

TEST_CASE("splitmix64 reference values") {
    // First output of the reference generator started from state 0.
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("fnv1a64 reference values") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("substreams depend on seed, name and index") {
    Substreams s(7);
    CHECK(s.engine("encoder/train", 3)() == s.engine("encoder/train", 3)());
    CHECK(s.engine("encoder/train", 3)() != s.engine("encoder/train", 4)());
    CHECK(s.engine("encoder/train", 3)() != s.engine("encoder/test", 3)());
    CHECK(Substreams(8).engine("reservoir")() != s.engine("reservoir")());
}

TEST_CASE("mt19937_64 is the standard engine") {
    Engine e(5489u);
    for (int i = 0; i < 9999; ++i) e();
    CHECK(e() == 9981545732273789042ULL);
}

TEST_CASE("uniform01 stays in [0, 1) and is roughly flat") {
    Engine rng(1);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        double u = uniform01(rng);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::fabs(sum / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("standard_normal moments") {
    Engine rng(2);
    const int n = 100000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double z = standard_normal(rng);
        s += z;
        s2 += z * z;
    }
    const double mean = s / n;
    CHECK(std::fabs(mean) < 4.0 / std::sqrt(n));
    CHECK(std::fabs(s2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("poisson sampler edge cases") {
    Engine rng(3);
    CHECK(sample_poisson(rng, 0.0) == 0);
    CHECK_THROWS_AS(sample_poisson(rng, -1.0), Error);
}

TEST_CASE("poisson pmf matches at small mean") {
    Engine rng(4);
    const double m = 2.5;
    const int n = 200000;
    std::vector<int> counts(30, 0);
    for (int i = 0; i < n; ++i) {
        auto k = sample_poisson(rng, m);
        if (k < counts.size()) ++counts[k];
    }
    double p = std::exp(-m);
    for (int k = 0; k < 8; ++k) {
        const double se = std::sqrt(p * (1 - p) / n);
        CAPTURE(k);
        CHECK(std::fabs(counts[k] / double(n) - p) < 4.0 * se);
        p *= m / (k + 1);
    }
}

TEST_CASE("poisson sampler at large means keeps mean and variance") {
    for (double m : {100.0, 750.0, 5000.0}) {
        Engine rng(static_cast<std::uint64_t>(m));
        const int n = 20000;
        double s = 0.0, s2 = 0.0;
        for (int i = 0; i < n; ++i) {
            double k = static_cast<double>(sample_poisson(rng, m));
            s += k;
            s2 += k * k;
        }
        const double mean = s / n;
        const double var = (s2 - n * mean * mean) / (n - 1);
        CAPTURE(m);
        CHECK(std::fabs(mean - m) < 4.0 * std::sqrt(m / n));
        CHECK(std::fabs(var - m) < 4.0 * std::sqrt((m + 2 * m * m) / n));
    }
}
