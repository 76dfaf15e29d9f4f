#include "spike_esn/pipeline.hpp"

#include "spike_esn/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace spike_esn {

std::string_view to_string(Mode mode) noexcept {
    return mode == Mode::spike ? "spike" : "esn";
}

Mode parse_mode(std::string_view name) {
    if (name == "spike") return Mode::spike;
    if (name == "esn") return Mode::esn;
    throw Error(Errc::invalid_argument, "unknown mode '" + std::string(name) + "' (expected spike or esn)");
}

void ModelConfig::validate() const {
    if (encoder.n_sam < 1) throw Error(Errc::invalid_argument, "encoder.n_sam must be at least 1");
    if (!(encoder.psi > 0.0) || !std::isfinite(encoder.psi)) {
        throw Error(Errc::invalid_argument, "encoder.psi must be positive");
    }
    reservoir.validate();
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw Error(Errc::invalid_argument, "mu must be nonnegative");
    if (steps.empty()) throw Error(Errc::invalid_argument, "at least one prediction step is required");
    for (std::size_t s : steps) {
        if (s == 0) throw Error(Errc::invalid_argument, "prediction steps must be positive");
    }
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw Error(Errc::invalid_argument, "train_fraction must lie in (0, 1)");
    }
}

std::size_t ModelConfig::max_step() const {
    return steps.empty() ? 0 : *std::max_element(steps.begin(), steps.end());
}

EncoderParams Model::encoder_params(std::uint64_t encoder_seed) const {
    return EncoderParams{config.encoder.n_sam, norm, config.encoder.psi, encoder_seed};
}

const Readout& Model::readout(std::size_t step) const {
    const auto it = readouts.find(step);
    if (it == readouts.end()) {
        throw Error(Errc::missing_step, "model has no readout for step " + std::to_string(step));
    }
    return it->second;
}

StateMatrix collect_states(const Model& model, const Series& series, std::uint64_t seed, std::string_view stream,
                           std::vector<SpikeTrain>* spikes) {
    series.validate();
    if (model.config.mode == Mode::spike) {
        return run_spike(series.values, model.encoder_params(seed), model.weights, stream, spikes);
    }
    std::vector<double> drive(series.size());
    std::transform(series.values.begin(), series.values.end(), drive.begin(),
                   [&](double u) { return model.norm.normalize(u); });
    return run_esn(drive, model.weights);
}

TrainResult fit(const ModelConfig& config, const Series& series, std::uint64_t seed) {
    config.validate();
    series.validate();
    const std::size_t n = series.size();
    const std::size_t washout = config.washout;
    if (n < washout + config.max_step() + 10) {
        throw Error(Errc::insufficient_data, "training needs washout + max step + 10 = " +
                                                 std::to_string(washout + config.max_step() + 10) +
                                                 " points, got " + std::to_string(n));
    }

    TrainResult result;
    Model& model = result.model;
    model.config = config;
    model.config.reservoir.seed = seed;
    model.seed = seed;
    model.norm = fit_normalizer(series);
    model.weights = make_reservoir(model.config.reservoir, config.input_width());

    const StateMatrix all = collect_states(model, series, seed, streams::encoder_train);
    for (std::size_t step : config.steps) {
        const std::size_t count = n - washout - step;
        const auto targets = std::span<const double>(series.values).subspan(washout + step, count);
        model.readouts[step] = fit_ridge(all.slice(washout, count), targets, config.mu);
    }
    result.states = all.slice(washout, n - washout);
    return result;
}

Model train(const ModelConfig& config, const Series& series, std::uint64_t seed) {
    return fit(config, series, seed).model;
}

std::map<std::size_t, EvalReport> evaluate(const Model& model, const Series& series, std::uint64_t seed,
                                           std::span<const std::size_t> steps) {
    for (std::size_t step : steps) (void)model.readout(step);
    const std::size_t n = series.size();
    const std::size_t washout = model.config.washout;
    for (std::size_t step : steps) {
        if (n <= washout + step) {
            throw Error(Errc::insufficient_data, "evaluation series of " + std::to_string(n) +
                                                     " points leaves nothing to score at step " +
                                                     std::to_string(step));
        }
    }
    const StateMatrix states = collect_states(model, series, seed, streams::encoder_test);
    std::map<std::size_t, EvalReport> reports;
    for (std::size_t step : steps) {
        const std::size_t count = n - washout - step;
        const auto pred = predict(model.readout(step), states.slice(washout, count));
        const auto target = std::span<const double>(series.values).subspan(washout + step, count);
        reports[step] = score(std::string(to_string(model.config.mode)), step, seed, pred, target);
    }
    return reports;
}

std::map<std::size_t, EvalReport> evaluate(const Model& model, const Series& series, std::uint64_t seed) {
    return evaluate(model, series, seed, model.config.steps);
}

Forecast forecast(const Model& model, const Series& series, std::uint64_t seed) {
    const std::size_t washout = model.config.washout;
    if (series.size() <= washout) {
        throw Error(Errc::insufficient_data, "prediction input must be longer than the washout");
    }
    const StateMatrix states = collect_states(model, series, seed, streams::encoder_test);
    const StateMatrix scored = states.slice(washout, states.count() - washout);
    Forecast out;
    out.first = washout;
    for (const auto& [step, readout] : model.readouts) out.by_step[step] = predict(readout, scored);
    return out;
}

void AdaptationPolicy::validate() const {
    if (!(state_low > 0.0 && state_low < state_high && state_high < 1.0)) {
        throw Error(Errc::invalid_argument, "adaptation band needs 0 < state_low < state_high < 1");
    }
    if (!(psi_step > 1.0) || !std::isfinite(psi_step)) {
        throw Error(Errc::invalid_argument, "psi_step must be a finite multiplier above 1");
    }
    if (max_rounds < 1) throw Error(Errc::invalid_argument, "max_rounds must be at least 1");
}

AdaptResult adapt_psi(const ModelConfig& config, const Series& series, const AdaptationPolicy& policy,
                      std::uint64_t seed) {
    policy.validate();
    AdaptResult result;
    ModelConfig current = config;
    for (std::size_t round = 1; round <= policy.max_rounds; ++round) {
        TrainResult trained = fit(current, series, seed);
        const double s = trained.states.mean_abs();
        result.psi_trace.push_back(current.encoder.psi);
        result.state_trace.push_back(s);
        result.rounds = round;
        result.model = std::move(trained.model);
        if (s >= policy.state_low && s <= policy.state_high) {
            result.converged = true;
            break;
        }
        current.encoder.psi = s > policy.state_high ? current.encoder.psi / policy.psi_step
                                                    : current.encoder.psi * policy.psi_step;
    }
    return result;
}

TrainTestSeries split_for_benchmark(const Series& series, std::size_t washout, double train_fraction) {
    const SplitPlan plan = plan_split(series.size(), washout, train_fraction);
    return {series.slice(0, plan.test_begin()), series.slice(plan.test_begin(), plan.test)};
}

namespace {

struct SweepUnit {
    Mode mode;
    std::size_t n_sam;
    std::uint64_t seed;
};

template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

std::vector<SweepRow> sweep(const ModelConfig& base, const SweepAxis& axis, const Series& series,
                            std::span<const std::uint64_t> seeds, const SweepOptions& options) {
    if (axis.values.empty()) throw Error(Errc::invalid_argument, "sweep axis is empty");
    if (seeds.empty()) throw Error(Errc::invalid_argument, "sweep needs at least one seed");
    if (options.modes.empty()) throw Error(Errc::invalid_argument, "sweep needs at least one mode");
    base.validate();

    ModelConfig cfg = base;
    std::vector<std::size_t> n_sam_values{base.encoder.n_sam};
    if (axis.kind == SweepAxisKind::step) {
        cfg.steps = axis.values;
    } else {
        n_sam_values = axis.values;
    }
    cfg.validate();
    const TrainTestSeries parts = split_for_benchmark(series, cfg.washout, cfg.train_fraction);

    // The ESN pathway ignores n_sam, so it runs once per seed and its result
    // is reported against every n_sam value.
    std::vector<SweepUnit> units;
    for (Mode mode : options.modes) {
        const std::size_t distinct = mode == Mode::esn ? 1 : n_sam_values.size();
        for (std::size_t k = 0; k < distinct; ++k) {
            for (std::uint64_t seed : seeds) units.push_back({mode, n_sam_values[k], seed});
        }
    }
    std::vector<std::map<std::size_t, EvalReport>> results(units.size());
    parallel_for(units.size(), options.threads, [&](std::size_t i) {
        ModelConfig unit_cfg = cfg;
        unit_cfg.mode = units[i].mode;
        unit_cfg.encoder.n_sam = units[i].n_sam;
        const Model model = train(unit_cfg, parts.train, units[i].seed);
        results[i] = evaluate(model, parts.test, units[i].seed);
    });

    std::vector<std::size_t> steps = cfg.steps;
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    std::vector<std::size_t> n_sam_sorted = n_sam_values;
    std::sort(n_sam_sorted.begin(), n_sam_sorted.end());

    std::vector<SweepRow> rows;
    for (Mode mode : options.modes) {
        for (std::size_t n_sam : n_sam_sorted) {
            for (std::size_t step : steps) {
                std::vector<double> rmses;
                std::vector<double> mapes;
                for (std::size_t i = 0; i < units.size(); ++i) {
                    if (units[i].mode != mode) continue;
                    if (mode == Mode::spike && units[i].n_sam != n_sam) continue;
                    const EvalReport& r = results[i].at(step);
                    rmses.push_back(r.rmse);
                    mapes.push_back(r.mape);
                }
                SweepRow row;
                row.mode = mode;
                row.step = step;
                row.n_sam = n_sam;
                row.seed_count = rmses.size();
                row.rmse_mean = mean_of(rmses);
                row.rmse_std = sample_std(rmses, row.rmse_mean);
                row.mape_mean = mean_of(mapes);
                row.mape_std = sample_std(mapes, row.mape_mean);
                row.ln_rmse = std::log(row.rmse_mean);
                rows.push_back(row);
            }
        }
    }
    return rows;
}

}  // namespace spike_esn
