#include "spike_esn/random.hpp"

#include "spike_esn/error.hpp"

#include <cmath>
#include <numbers>

namespace spike_esn {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed ^ fnv1a64(stream)) + index);
}

double uniform01(Engine& rng) noexcept {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(Engine& rng, double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform01(rng);
}

double standard_normal(Engine& rng) noexcept {
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

constexpr double kInversionLimit = 500.0;

std::uint64_t poisson_inversion(Engine& rng, double mean) {
    const double u = uniform01(rng);
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    // The tail guard stops at the point where the pmf has underflowed; cdf
    // then differs from 1 only by rounding.
    while (u > cdf && p > 0.0) {
        ++k;
        p *= mean / static_cast<double>(k);
        cdf += p;
    }
    return k;
}

}  // namespace

std::uint64_t sample_poisson(Engine& rng, double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw Error(Errc::invalid_argument, "poisson mean must be finite and nonnegative");
    }
    if (mean == 0.0) return 0;
    if (mean <= kInversionLimit) return poisson_inversion(rng, mean);
    const double half = 0.5 * mean;
    return sample_poisson(rng, half) + sample_poisson(rng, mean - half);
}

}  // namespace spike_esn
