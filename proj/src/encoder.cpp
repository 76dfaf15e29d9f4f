#include "spike_esn/encoder.hpp"

#include "spike_esn/error.hpp"
#include "spike_esn/simd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spike_esn {

void EncoderParams::validate() const {
    if (n_sam < 1) throw Error(Errc::invalid_argument, "n_sam must be at least 1");
    if (!(psi > 0.0) || !std::isfinite(psi)) throw Error(Errc::invalid_argument, "psi must be positive and finite");
    norm.validate();
}

double mean_interval(double u, const EncoderParams& params) {
    const double n = static_cast<double>(params.n_sam);
    const double raw = n * (params.norm.u_max - u) / params.norm.range();
    if (std::isnan(raw)) return n;
    return std::clamp(raw, 1.0, n);
}

std::vector<std::size_t> sample_intervals(double mean, std::size_t n_sam, Engine& rng) {
    std::vector<std::size_t> intervals;
    std::size_t total = 0;
    while (true) {
        const std::size_t k = std::max<std::size_t>(1, sample_poisson(rng, mean));
        if (k > n_sam - total) break;
        total += k;
        intervals.push_back(k);
    }
    return intervals;
}

SpikeTrain intervals_to_train(std::span<const std::size_t> intervals, std::size_t n_sam) {
    SpikeTrain train;
    train.bits.assign(n_sam, 0);
    train.times.reserve(intervals.size());
    std::size_t pos = 0;
    for (std::size_t k : intervals) {
        if (k == 0) throw Error(Errc::invalid_argument, "spike interval must be at least 1");
        if (k > n_sam - pos) {
            throw Error(Errc::invalid_argument, "spike intervals sum past n_sam = " + std::to_string(n_sam));
        }
        pos += k;
        train.bits[pos - 1] = 1;
        train.times.push_back(pos);
    }
    return train;
}

SpikeTrain encode(double u, const EncoderParams& params, Engine& rng) {
    const auto intervals = sample_intervals(mean_interval(u, params), params.n_sam, rng);
    return intervals_to_train(intervals, params.n_sam);
}

Engine encoder_stream(const EncoderParams& params, std::string_view stream, std::uint64_t index) {
    return Substreams(params.seed).engine(stream, index);
}

CurrentKernel::CurrentKernel(std::size_t n_sam, double psi) : psi_(psi), decay_(n_sam) {
    if (!(psi > 0.0)) throw Error(Errc::invalid_argument, "psi must be positive");
    for (std::size_t k = 0; k < n_sam; ++k) decay_[k] = std::exp(-static_cast<double>(k) / psi);
}

void CurrentKernel::apply(std::span<const std::size_t> times, std::span<double> out) const {
    const std::size_t n = decay_.size();
    if (out.size() != n) throw Error(Errc::dimension_mismatch, "current buffer length differs from n_sam");
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t pos : times) {
        if (pos < 1 || pos > n) throw Error(Errc::invalid_argument, "spike position outside 1..n_sam");
        const std::size_t first = pos - 1;
        simd::add_into(out.subspan(first), std::span<const double>(decay_).first(n - first));
    }
}

CurrentSeq CurrentKernel::operator()(const SpikeTrain& train) const {
    CurrentSeq seq;
    seq.currents.resize(decay_.size());
    apply(train.times, seq.currents);
    return seq;
}

CurrentSeq current_sequence(const SpikeTrain& train, double psi) {
    return CurrentKernel(train.n_sam(), psi)(train);
}

CurrentSeq current_sequence(std::span<const std::uint8_t> bits, double psi) {
    std::vector<std::size_t> times;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != 0) times.push_back(i + 1);
    }
    CurrentSeq seq;
    seq.currents.resize(bits.size());
    CurrentKernel(bits.size(), psi).apply(times, seq.currents);
    return seq;
}

}  // namespace spike_esn
