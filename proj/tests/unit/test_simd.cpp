#include "spike_esn/error.hpp"
#include "spike_esn/random.hpp"
#include "spike_esn/simd.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace spike_esn;

namespace {

std::vector<double> random_vec(Engine& rng, std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform(rng, -1.0, 1.0);
    return v;
}

// Guard against vector variants dropping the tail or the first lane.
const std::size_t lengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 100, 101, 257};

}  // namespace

TEST_CASE("scalar table is always available and first") {
    auto isas = simd::available_isas();
    REQUIRE(!isas.empty());
    CHECK(isas.front() == simd::Isa::scalar);
    CHECK(simd::kernels_for(simd::Isa::scalar) == &simd::scalar_kernels());
}

TEST_CASE("isa names round-trip") {
    for (auto isa : {simd::Isa::scalar, simd::Isa::avx2, simd::Isa::neon})
        CHECK(simd::parse_isa(simd::to_string(isa)) == isa);
    CHECK_THROWS_AS(simd::parse_isa("sse9"), Error);
}

TEST_CASE("vector kernels agree with the scalar reference") {
    const auto& ref = simd::scalar_kernels();
    Engine rng(42);
    for (auto isa : simd::available_isas()) {
        const auto* k = simd::kernels_for(isa);
        REQUIRE(k != nullptr);
        CAPTURE(simd::to_string(isa));
        for (std::size_t n : lengths) {
            CAPTURE(n);
            auto a = random_vec(rng, n);
            auto b = random_vec(rng, n);
            const double tol = 1e-13 * (1.0 + static_cast<double>(n));
            CHECK(std::fabs(k->dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <= tol);
            CHECK(std::fabs(k->sum_abs(a.data(), n) - ref.sum_abs(a.data(), n)) <= tol);

            auto d1 = a, d2 = a;
            k->add_into(d1.data(), b.data(), n);
            ref.add_into(d2.data(), b.data(), n);
            CHECK(d1 == d2);

            for (std::size_t rows : {std::size_t{1}, std::size_t{3}, std::size_t{13}}) {
                auto m = random_vec(rng, rows * n);
                std::vector<double> y1(rows), y2(rows), z1(rows, 0.5), z2(rows, 0.5);
                k->gemv(m.data(), rows, n, a.data(), y1.data());
                ref.gemv(m.data(), rows, n, a.data(), y2.data());
                k->gemv_add(m.data(), rows, n, a.data(), z1.data());
                ref.gemv_add(m.data(), rows, n, a.data(), z2.data());
                for (std::size_t r = 0; r < rows; ++r) {
                    CHECK(std::fabs(y1[r] - y2[r]) <= tol);
                    CHECK(std::fabs(z1[r] - z2[r]) <= tol);
                }
            }
        }
    }
}

TEST_CASE("scalar dot is the plain left-to-right sum") {
    std::vector<double> a{1.0, 1e16, -1e16, 3.0};
    std::vector<double> b{1.0, 1.0, 1.0, 1.0};
    double expect = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) expect += a[i] * b[i];
    CHECK(simd::scalar_kernels().dot(a.data(), b.data(), a.size()) == expect);
}

TEST_CASE("active isa can be pinned and restored") {
    const auto before = simd::active_isa();
    simd::set_active_isa(simd::Isa::scalar);
    CHECK(simd::active().isa == simd::Isa::scalar);
    simd::set_active_isa(before);
    CHECK(simd::active_isa() == before);
}

TEST_CASE("pinning an unavailable isa throws") {
    for (auto isa : {simd::Isa::avx2, simd::Isa::neon}) {
        if (simd::kernels_for(isa) == nullptr) CHECK_THROWS_AS(simd::set_active_isa(isa), Error);
    }
}

TEST_CASE("span wrappers check dimensions") {
    std::vector<double> a(3), b(4), y(2);
    CHECK_THROWS_AS(simd::dot(a, b), Error);
    CHECK_THROWS_AS(simd::add_into(a, b), Error);
    CHECK_THROWS_AS(simd::gemv(b, 2, 2, a, y), Error);
    std::vector<double> m{1, 2, 3, 4}, x{1, 1};
    simd::gemv(m, 2, 2, x, y);
    CHECK(y == std::vector<double>{3, 7});
    simd::gemv_add(m, 2, 2, x, y);
    CHECK(y == std::vector<double>{6, 14});
}
