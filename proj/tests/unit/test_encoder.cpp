#include "spike_esn/encoder.hpp"
#include "spike_esn/error.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace spike_esn;

namespace {

// Exact values from the 0 -> 1 mapped Poisson law (pmf convolution).
constexpr double count_mean_100_of_100 = 0.5265621985300282;
constexpr double count_mean_1_of_100 = 73.10413976432481;
constexpr double mapped_mean_1 = 1.3678794411714423;  // 1 + 1/e
constexpr double mapped_var_1 = 0.4967852755919455;

EncoderParams params(std::size_t n_sam = 100) {
    EncoderParams p;
    p.n_sam = n_sam;
    p.norm = {0.0, 1.0};
    p.seed = 9;
    return p;
}

struct Moments {
    double mean = 0, var = 0;
    std::size_t n = 0;
    double se() const { return std::sqrt(var / static_cast<double>(n)); }
};

template <class F>
Moments moments(std::size_t n, F&& draw) {
    double s = 0, s2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = draw(i);
        s += v;
        s2 += v * v;
    }
    Moments m;
    m.n = n;
    m.mean = s / static_cast<double>(n);
    m.var = (s2 - static_cast<double>(n) * m.mean * m.mean) / static_cast<double>(n - 1);
    return m;
}

}  // namespace

TEST_CASE("mean_interval endpoints and clamp") {
    auto p = params();
    CHECK(mean_interval(0.0, p) == 100.0);
    CHECK(mean_interval(1.0, p) == 1.0);
    CHECK(mean_interval(0.5, p) == 50.0);
    CHECK(mean_interval(2.0, p) == 1.0);
    CHECK(mean_interval(-3.0, p) == 100.0);
    double prev = mean_interval(0.0, p);
    for (int i = 1; i <= 100; ++i) {
        double h = mean_interval(i / 100.0, p);
        CHECK(h <= prev);
        CHECK(h >= 1.0);
        prev = h;
    }
}

TEST_CASE("sample_intervals respects the budget") {
    Engine rng(1);
    for (double mean : {1.0, 3.0, 17.5, 100.0}) {
        for (int rep = 0; rep < 200; ++rep) {
            auto iv = sample_intervals(mean, 100, rng);
            std::size_t total = 0;
            for (auto k : iv) {
                REQUIRE(k >= 1);
                total += k;
            }
            REQUIRE(total <= 100);
        }
    }
}

TEST_CASE("sample_intervals is deterministic per seed") {
    Engine a(77), b(77);
    CHECK(sample_intervals(5.0, 100, a) == sample_intervals(5.0, 100, b));
}

TEST_CASE("interval count at mean = n_sam") {
    Engine rng(2024);
    auto m = moments(100000, [&](std::size_t) { return static_cast<double>(sample_intervals(100.0, 100, rng).size()); });
    CHECK(std::fabs(m.mean - count_mean_100_of_100) < 3.0 * m.se());
}

TEST_CASE("interval count at mean 1") {
    Engine rng(2025);
    auto m = moments(20000, [&](std::size_t) { return static_cast<double>(sample_intervals(1.0, 100, rng).size()); });
    CHECK(std::fabs(m.mean - count_mean_1_of_100) < 3.0 * m.se());
}

TEST_CASE("zero-mapped Poisson(1) draws") {
    // The first interval of a 100-wide budget is never cut at mean 1, so it is
    // an unconditioned draw.
    Engine rng(2026);
    auto m = moments(100000, [&](std::size_t) { return static_cast<double>(sample_intervals(1.0, 100, rng).front()); });
    CHECK(std::fabs(m.mean - mapped_mean_1) < 3.0 * std::sqrt(mapped_var_1 / 100000.0));
    CHECK(std::fabs(m.var - mapped_var_1) < 0.02);
}

TEST_CASE("intervals_to_train") {
    std::vector<std::size_t> iv{2, 3, 1};
    auto t = intervals_to_train(iv, 8);
    CHECK(t.bits == std::vector<std::uint8_t>{0, 1, 0, 0, 1, 1, 0, 0});
    CHECK(t.times == std::vector<std::size_t>{2, 5, 6});

    auto empty = intervals_to_train(std::vector<std::size_t>{}, 8);
    CHECK(empty.count() == 0);
    CHECK(empty.bits == std::vector<std::uint8_t>(8, 0));

    auto last = intervals_to_train(std::vector<std::size_t>{8}, 8);
    CHECK(last.times == std::vector<std::size_t>{8});

    CHECK_THROWS_AS(intervals_to_train(std::vector<std::size_t>{0, 2}, 8), Error);
    CHECK_THROWS_AS(intervals_to_train(std::vector<std::size_t>{5, 4}, 8), Error);
}

TEST_CASE("encode at the range ends") {
    auto p = params();
    Engine rng(31);
    auto dense = moments(100000, [&](std::size_t) { return static_cast<double>(encode(1.0, p, rng).count()); });
    CHECK(dense.mean > 0.6 * 100);
    auto sparse = moments(100000, [&](std::size_t) { return static_cast<double>(encode(0.0, p, rng).count()); });
    CHECK(sparse.mean <= 1.2);
}

TEST_CASE("encode is deterministic and orders spikes") {
    auto p = params();
    auto a = encoder_stream(p, streams::encoder_train, 4);
    auto b = encoder_stream(p, streams::encoder_train, 4);
    auto ta = encode(0.7, p, a);
    auto tb = encode(0.7, p, b);
    CHECK(ta.bits == tb.bits);
    CHECK(ta.times == tb.times);
    for (std::size_t i = 1; i < ta.times.size(); ++i) CHECK(ta.times[i] > ta.times[i - 1]);
}

TEST_CASE("spike rate grows with u") {
    auto p = params();
    double prev = -1.0;
    int inversions = 0;
    for (int g = 0; g < 10; ++g) {
        const double u = g / 9.0;
        auto m = moments(10000, [&](std::size_t i) {
            auto rng = encoder_stream(p, streams::encoder_train, g * 10000 + i);
            return static_cast<double>(encode(u, p, rng).count());
        });
        if (m.mean < prev) ++inversions;
        prev = m.mean;
    }
    CHECK(inversions <= 1);
}

TEST_CASE("encoder params validation") {
    auto p = params();
    p.n_sam = 0;
    CHECK_THROWS_AS(p.validate(), Error);
    p = params();
    p.psi = 0.0;
    CHECK_THROWS_AS(p.validate(), Error);
    p = params();
    p.norm = {1.0, 1.0};
    CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("current kernel worked example") {
    auto t = intervals_to_train(std::vector<std::size_t>{2, 3}, 8);
    auto c = current_sequence(t, 5000.0);
    CHECK(c.currents[4] == doctest::Approx(1.99940017996400539935).epsilon(1e-15));
    CHECK(c.currents[0] == 0.0);
    CHECK(c.currents[1] == 1.0);
}

TEST_CASE("current kernel edge cases") {
    auto zero = current_sequence(intervals_to_train(std::vector<std::size_t>{}, 20), 5.0);
    CHECK(zero.currents == std::vector<double>(20, 0.0));
    auto one = current_sequence(intervals_to_train(std::vector<std::size_t>{1}, 50), 1e9);
    for (double v : one.currents) CHECK(v == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("current kernel matches direct evaluation") {
    Engine rng(5);
    for (double psi : {0.5, 5.0, 5000.0, 1e9}) {
        CurrentKernel kernel(64, psi);
        for (int rep = 0; rep < 50; ++rep) {
            auto train = encode(uniform01(rng), params(64), rng);
            auto fast = kernel(train);
            auto ref = oracle::current(std::vector<unsigned char>(train.bits.begin(), train.bits.end()), psi);
            for (std::size_t i = 0; i < ref.size(); ++i)
                REQUIRE(std::fabs(fast.currents[i] - ref[i]) <= 1e-12 * std::max(1.0, std::fabs(ref[i])));
            CHECK(current_sequence(train.bits, psi).currents == fast.currents);
        }
    }
}
