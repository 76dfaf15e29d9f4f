#pragma once

// Seeded random streams.
//
// Every random draw in the library comes from a std::mt19937_64 engine whose
// seed is derived from (user seed, stream name, index):
//
//     key  = FNV-1a-64(stream name)
//     seed = splitmix64(splitmix64(user_seed ^ key) + index)
//
// Both the engine and the derivation are fully specified, and the variate
// transforms below are written out here instead of using the
// implementation-defined <random> distributions, so a given seed produces the
// same numbers with any standard library.

#include <cstdint>
#include <random>
#include <string_view>

namespace spike_esn {

using Engine = std::mt19937_64;

namespace streams {
inline constexpr std::string_view encoder_train = "encoder/train";
inline constexpr std::string_view encoder_test = "encoder/test";
inline constexpr std::string_view reservoir = "reservoir";
inline constexpr std::string_view input_weights = "input";
inline constexpr std::string_view data = "data";
}  // namespace streams

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0) noexcept;

/// Factory for named, indexed substreams of one user seed.
class Substreams {
public:
    explicit Substreams(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }
    Engine engine(std::string_view stream, std::uint64_t index = 0) const {
        return Engine(derive_seed(seed_, stream, index));
    }

private:
    std::uint64_t seed_;
};

/// Uniform on [0, 1) with 53 random bits.
double uniform01(Engine& rng) noexcept;
/// Uniform on [lo, hi).
double uniform(Engine& rng, double lo, double hi) noexcept;
/// Standard normal via Box-Muller (one variate per call, the sine half is discarded).
double standard_normal(Engine& rng) noexcept;

/// Poisson(mean) variate by CDF inversion. Means above 500 are split into
/// independent halves so exp(-mean) never underflows; the sum of independent
/// Poisson variates is Poisson, so the result is exact in distribution.
std::uint64_t sample_poisson(Engine& rng, double mean);

}  // namespace spike_esn
