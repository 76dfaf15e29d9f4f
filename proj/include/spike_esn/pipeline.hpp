#pragma once

#include "spike_esn/encoder.hpp"
#include "spike_esn/metrics.hpp"
#include "spike_esn/readout.hpp"
#include "spike_esn/reservoir.hpp"
#include "spike_esn/timeseries.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spike_esn {

enum class Mode {
    /// Poisson spike encoding and synaptic currents into an n_sam-wide W_in.
    spike,
    /// Plain ESN baseline: the normalized scalar drives a one-column W_in.
    esn,
};

std::string_view to_string(Mode mode) noexcept;
Mode parse_mode(std::string_view name);

struct EncoderSettings {
    std::size_t n_sam = 100;
    double psi = 5000.0;
};

struct ModelConfig {
    Mode mode = Mode::spike;
    EncoderSettings encoder;
    /// reservoir.seed is replaced by the training seed.
    ReservoirConfig reservoir;
    double mu = default_ridge_mu;
    std::size_t washout = 200;
    /// One direct readout per prediction step.
    std::vector<std::size_t> steps{1, 10, 20};
    /// Share of the post-washout points used for training by bench and sweep.
    double train_fraction = 0.8;

    void validate() const;
    std::size_t max_step() const;
    std::size_t input_width() const noexcept { return mode == Mode::spike ? encoder.n_sam : 1; }
};

struct Model {
    ModelConfig config;
    std::uint64_t seed = 0;
    NormParams norm;
    ReservoirWeights weights;
    std::map<std::size_t, Readout> readouts;

    EncoderParams encoder_params(std::uint64_t encoder_seed) const;
    const Readout& readout(std::size_t step) const;
};

/// Reservoir states of `series` under `model`, from x(0) = 0. The spike
/// encoder draws from `stream` seeded by `seed`.
StateMatrix collect_states(const Model& model, const Series& series, std::uint64_t seed, std::string_view stream,
                           std::vector<SpikeTrain>* spikes = nullptr);

struct TrainResult {
    Model model;
    /// Post-washout training states.
    StateMatrix states;
};

/// The whole series is training data: fit the normalizer, draw W_in and
/// W_res, run the reservoir, drop the washout states, then fit one ridge
/// readout per step on targets shifted by that step.
TrainResult fit(const ModelConfig& config, const Series& series, std::uint64_t seed);
Model train(const ModelConfig& config, const Series& series, std::uint64_t seed);

/// Fresh run over `series` (test encoder stream), first `washout` points
/// unscored; step s scores n = |series| - washout - s points.
std::map<std::size_t, EvalReport> evaluate(const Model& model, const Series& series, std::uint64_t seed);
/// Same, for a chosen subset of the model's steps (Error(missing_step) otherwise).
std::map<std::size_t, EvalReport> evaluate(const Model& model, const Series& series, std::uint64_t seed,
                                           std::span<const std::size_t> steps);

struct Forecast {
    /// Index of the first input with a prediction (the washout length).
    std::size_t first = 0;
    /// step -> prediction of series[i + step] made at input i, i = first..size-1.
    std::map<std::size_t, std::vector<double>> by_step;
};

Forecast forecast(const Model& model, const Series& series, std::uint64_t seed);

struct AdaptationPolicy {
    double state_low = 0.1;
    double state_high = 0.9;
    /// psi is multiplied (state too small) or divided (state too large) by this.
    double psi_step = 2.0;
    std::size_t max_rounds = 16;

    void validate() const;
};

struct AdaptResult {
    Model model;
    std::size_t rounds = 0;
    bool converged = false;
    /// psi and mean |x| of every round.
    std::vector<double> psi_trace;
    std::vector<double> state_trace;
};

/// Retrains with a rescaled psi until the mean |x| of the training states
/// falls inside [state_low, state_high] or max_rounds is reached. The
/// reservoir seed is kept across rounds.
AdaptResult adapt_psi(const ModelConfig& config, const Series& series, const AdaptationPolicy& policy,
                      std::uint64_t seed);

enum class SweepAxisKind { step, n_sam };

struct SweepAxis {
    SweepAxisKind kind = SweepAxisKind::step;
    std::vector<std::size_t> values;
};

struct SweepOptions {
    std::vector<Mode> modes{Mode::spike, Mode::esn};
    /// Worker threads; 0 picks hardware_concurrency.
    std::size_t threads = 0;
};

struct SweepRow {
    Mode mode = Mode::spike;
    std::size_t step = 0;
    std::size_t n_sam = 0;
    std::size_t seed_count = 0;
    double rmse_mean = 0.0;
    double rmse_std = 0.0;
    double mape_mean = 0.0;
    double mape_std = 0.0;
    /// Natural log of rmse_mean.
    double ln_rmse = 0.0;
};

/// Splits `series` by base.washout / base.train_fraction, then trains on the
/// washout+train part and evaluates on the test part for every (mode, axis
/// value, seed). Metrics are averaged over seeds (sample std). Rows are
/// ordered by mode, n_sam, step.
std::vector<SweepRow> sweep(const ModelConfig& base, const SweepAxis& axis, const Series& series,
                            std::span<const std::uint64_t> seeds, const SweepOptions& options = {});

/// Training and test parts used by bench and sweep.
struct TrainTestSeries {
    Series train;
    Series test;
};
TrainTestSeries split_for_benchmark(const Series& series, std::size_t washout, double train_fraction);

}  // namespace spike_esn
