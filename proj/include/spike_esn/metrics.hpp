#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace spike_esn {

/// Targets with |y| <= this are left out of MAPE.
inline constexpr double default_mape_eps = 1e-8;

/// sqrt(sum (p - y)^2 / n).
double rmse(std::span<const double> pred, std::span<const double> target);

struct MapeResult {
    double value = 0.0;
    /// Points skipped because |y| <= eps.
    std::size_t excluded = 0;
};

/// sum |(p - y) / y| / n over the points with |y| > eps.
MapeResult mape(std::span<const double> pred, std::span<const double> target, double eps = default_mape_eps);

struct EvalReport {
    std::string model;
    std::size_t step = 0;
    double rmse = 0.0;
    double mape = 0.0;
    std::size_t n = 0;
    std::size_t excluded = 0;
    std::uint64_t seed = 0;
};

EvalReport score(std::string model, std::size_t step, std::uint64_t seed, std::span<const double> pred,
                 std::span<const double> target, double eps = default_mape_eps);

}  // namespace spike_esn
