#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace spike_esn {

/// A univariate, finite, nonempty sequence with optional row labels.
struct Series {
    std::string name;
    std::vector<double> values;
    /// Either empty or one label per value (e.g. a timestamp column).
    std::vector<std::string> labels;

    std::size_t size() const noexcept { return values.size(); }
    /// Throws Error(invalid_argument) when empty, non-finite or mislabelled.
    void validate() const;
    /// Contiguous sub-range [first, first + count), labels included.
    Series slice(std::size_t first, std::size_t count) const;
};

Series make_series(std::string name, std::vector<double> values);

/// Observed input range used by the spike encoder.
struct NormParams {
    double u_min = 0.0;
    double u_max = 1.0;

    double range() const noexcept { return u_max - u_min; }
    /// (u - u_min) / (u_max - u_min); not clamped.
    double normalize(double u) const noexcept { return (u - u_min) / range(); }
    void validate() const;
};

/// Exact min/max of the values. Needs at least two values and max > min.
NormParams fit_normalizer(std::span<const double> values);
inline NormParams fit_normalizer(const Series& series) { return fit_normalizer(series.values); }

/// Pairs (z[i], z[i + step]).
struct SupervisedSet {
    std::vector<double> inputs;
    std::vector<double> targets;
    std::size_t step = 1;

    std::size_t size() const noexcept { return inputs.size(); }
    SupervisedSet slice(std::size_t first, std::size_t count) const;
};

SupervisedSet make_supervised(const Series& series, std::size_t step);
/// Inverse of make_supervised: inputs followed by the last `step` targets.
/// Needs step <= |targets|, i.e. 2 * step <= series length.
std::vector<double> unshift(const SupervisedSet& set);

/// Segment lengths of a washout / train / test split.
struct SplitPlan {
    std::size_t washout = 0;
    std::size_t train = 0;
    std::size_t test = 0;

    std::size_t train_begin() const noexcept { return washout; }
    std::size_t test_begin() const noexcept { return washout + train; }
};

/// train = floor((n - washout) * train_fraction), test = the rest.
/// Requires train >= 2 and test >= 1.
SplitPlan plan_split(std::size_t n, std::size_t washout, double train_fraction);

struct SupervisedSplit {
    SupervisedSet washout;
    SupervisedSet train;
    SupervisedSet test;
};

SupervisedSplit split(const SupervisedSet& set, std::size_t washout, double train_fraction);

/// Column selector: header name, or zero-based index. A name made only of
/// digits that matches no header cell is taken as an index.
using ColumnRef = std::variant<std::string, std::size_t>;

/// Reads one numeric column of a headed CSV file. Lines starting with '#'
/// and blank lines are skipped. When `label_column` is given, its raw text is
/// kept as the series labels.
Series load_csv(const std::filesystem::path& path, const ColumnRef& column,
                const ColumnRef* label_column = nullptr);

enum class SyntheticKind { mackey_glass, narma10, sine_mix };

std::string_view to_string(SyntheticKind kind) noexcept;
/// Throws Error(unknown_kind).
SyntheticKind parse_synthetic_kind(std::string_view name);

namespace synthetic {
// Mackey-Glass, Euler step 1:
//   x[t+1] = x[t] + beta * x[t-delay] / (1 + x[t-delay]^power) - gamma * x[t]
inline constexpr double mg_beta = 0.2;
inline constexpr double mg_gamma = 0.1;
inline constexpr double mg_power = 10.0;
inline constexpr std::size_t mg_delay = 17;
inline constexpr double mg_initial = 1.2;
/// Initial history is mg_initial + U(-mg_jitter, mg_jitter) per seed.
inline constexpr double mg_jitter = 0.05;
inline constexpr std::size_t mg_discard = 500;

// NARMA10 driven by u ~ U[0, 0.5):
//   y[t+1] = 0.3 y[t] + 0.05 y[t] sum_{i<10} y[t-i] + 1.5 u[t-9] u[t] + 0.1
inline constexpr std::size_t narma_order = 10;
inline constexpr double narma_warm_start = 0.1;

// sine_mix: sin(w1 t) + 0.5 sin(w2 t) + noise_sd * N(0,1), w2 / w1 = sqrt(2).
inline constexpr double sine_w1 = 0.2;
inline constexpr double sine_w2 = 0.2 * 1.4142135623730951;
inline constexpr double sine_amp2 = 0.5;
inline constexpr double sine_noise_sd = 0.05;
}  // namespace synthetic

/// Deterministic in (kind, length, seed).
Series gen_synthetic(SyntheticKind kind, std::size_t length, std::uint64_t seed);

}  // namespace spike_esn
