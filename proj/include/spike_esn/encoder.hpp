#pragma once

// Poisson spike input layer.
//
// A scalar u becomes a binary train of n_sam sampling positions:
//
//   1. mean interval  h = n_sam * (u_max - u) / (u_max - u_min), clamped to [1, n_sam]
//   2. intervals      k_1, k_2, ... ~ Poisson(h), a draw of 0 counts as 1,
//                     kept while k_1 + ... + k_j <= n_sam
//   3. spikes         at every cumulative sum k_1 + ... + k_j (1-based)
//
// Large inputs give short intervals and dense trains. The train is then turned
// into a synaptic current sequence by the causal exponential kernel
//
//   I(t) = sum over spikes s <= t of exp(-(t - s) / psi),   t = 1..n_sam.

#include "spike_esn/random.hpp"
#include "spike_esn/timeseries.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spike_esn {

struct EncoderParams {
    std::size_t n_sam = 100;
    NormParams norm;
    /// Synaptic time constant, in sampling positions.
    double psi = 5000.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SpikeTrain {
    std::vector<std::uint8_t> bits;
    /// Spike positions, 1-based, strictly increasing.
    std::vector<std::size_t> times;

    std::size_t n_sam() const noexcept { return bits.size(); }
    std::size_t count() const noexcept { return times.size(); }
};

struct CurrentSeq {
    std::vector<double> currents;
};

double mean_interval(double u, const EncoderParams& params);

/// Draws intervals until the next one would push the running sum past n_sam.
/// May return an empty list.
std::vector<std::size_t> sample_intervals(double mean, std::size_t n_sam, Engine& rng);

/// Throws Error(invalid_argument) on a zero interval or an overlong total.
SpikeTrain intervals_to_train(std::span<const std::size_t> intervals, std::size_t n_sam);

SpikeTrain encode(double u, const EncoderParams& params, Engine& rng);

/// Engine for the encoding of input number `index` in `stream`; independent of
/// the order in which inputs are encoded.
Engine encoder_stream(const EncoderParams& params, std::string_view stream, std::uint64_t index);

/// Precomputed exp(-k / psi) for k = 0..n_sam-1; each spike adds a shifted
/// copy of the table onto the output.
class CurrentKernel {
public:
    CurrentKernel(std::size_t n_sam, double psi);

    std::size_t n_sam() const noexcept { return decay_.size(); }
    double psi() const noexcept { return psi_; }
    std::span<const double> decay() const noexcept { return decay_; }

    /// Overwrites `out` (length n_sam) with the current of the given spike positions.
    void apply(std::span<const std::size_t> times, std::span<double> out) const;
    CurrentSeq operator()(const SpikeTrain& train) const;

private:
    double psi_;
    std::vector<double> decay_;
};

CurrentSeq current_sequence(const SpikeTrain& train, double psi);
/// Same result computed from the 0/1 vector alone.
CurrentSeq current_sequence(std::span<const std::uint8_t> bits, double psi);

}  // namespace spike_esn
