#include "spike_esn/cli.hpp"

#include "spike_esn/config.hpp"
#include "spike_esn/error.hpp"
#include "spike_esn/io.hpp"
#include "spike_esn/pipeline.hpp"
#include "spike_esn/serialize.hpp"
#include "spike_esn/simd.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <sstream>

namespace spike_esn::cli {

namespace fs = std::filesystem;

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
};

struct DataArgs {
    std::string data_path;
    std::string column = "1";
    std::string label_column;
    std::string kind;
    std::size_t length = 2000;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_seed) {
    cmd->add_option("-c,--config", args.config_path, "Config file (key = value, [sections])")->check(CLI::ExistingFile);
    cmd->add_option("--set", args.overrides, "Override a config key, e.g. encoder.n_sam=50");
    auto* seed = cmd->add_option("--seed", args.seed, "Seed for every random stream");
    if (needs_seed) seed->required();
    cmd->add_option("-o,--out", args.out_dir, "Output directory");
}

void add_data(CLI::App* cmd, DataArgs& args, bool allow_synthetic) {
    auto* data = cmd->add_option("--data", args.data_path, "Input CSV file")->check(CLI::ExistingFile);
    cmd->add_option("--column", args.column, "Value column: header name or zero-based index");
    cmd->add_option("--label-column", args.label_column, "Column copied into outputs as the row label");
    if (allow_synthetic) {
        auto* kind = cmd->add_option("--kind", args.kind, "Synthetic series instead of --data")
                         ->check(CLI::IsMember({"mackey_glass", "narma10", "sine_mix"}));
        cmd->add_option("--length", args.length, "Synthetic series length");
        data->excludes(kind);
        kind->excludes(data);
    } else {
        data->required();
    }
}

RunConfig resolve_config(const CommonArgs& args) {
    RunConfig config = args.config_path.empty() ? RunConfig{} : load_config(args.config_path);
    for (const auto& o : args.overrides) apply_override(config, o);
    try {
        config.validate();
    } catch (const Error& e) {
        throw Error(Errc::config, e.what());
    }
    return config;
}

Series resolve_series(const DataArgs& args, std::uint64_t seed) {
    if (!args.kind.empty()) return gen_synthetic(parse_synthetic_kind(args.kind), args.length, seed);
    if (args.data_path.empty()) throw Error(Errc::invalid_argument, "either --data or --kind is required");
    const ColumnRef label = args.label_column;
    Series s = load_csv(args.data_path, ColumnRef{args.column}, args.label_column.empty() ? nullptr : &label);
    s.validate();
    return s;
}

fs::path prepare_out(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw Error(Errc::io, "cannot create output directory '" + dir + "'");
    return p;
}

std::vector<std::size_t> parse_axis_values(std::string_view text) {
    const auto dots = text.find("..");
    if (dots == std::string_view::npos) return parse_size_list(text);
    const auto lo = parse_size_list(text.substr(0, dots));
    const auto hi = parse_size_list(text.substr(dots + 2));
    if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0]) {
        throw Error(Errc::invalid_argument, "axis range must look like 1..20");
    }
    std::vector<std::size_t> out;
    for (std::size_t v = lo[0]; v <= hi[0]; ++v) out.push_back(v);
    return out;
}

SweepAxis parse_axis(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw Error(Errc::invalid_argument, "--axis must be step=... or n_sam=...");
    const std::string_view name = text.substr(0, eq);
    SweepAxis axis;
    if (name == "step") {
        axis.kind = SweepAxisKind::step;
    } else if (name == "n_sam") {
        axis.kind = SweepAxisKind::n_sam;
    } else {
        throw Error(Errc::invalid_argument, "unknown sweep axis '" + std::string(name) + "'");
    }
    try {
        axis.values = parse_axis_values(text.substr(eq + 1));
    } catch (const Error& e) {
        throw Error(Errc::invalid_argument, std::string("--axis: ") + e.what());
    }
    return axis;
}

std::string train_log(const Model& model, const TrainResult& trained, const Series& series,
                      const std::optional<AdaptResult>& adapt) {
    std::ostringstream log;
    log << "series " << series.name << " (" << series.size() << " points)\n";
    log << "norm u_min=" << io::format_double(model.norm.u_min) << " u_max=" << io::format_double(model.norm.u_max) << "\n";
    log << "reservoir n_res=" << model.weights.n_res() << " input_width=" << model.weights.input_width()
        << " radius=" << io::format_double(model.weights.realized_radius)
        << " density=" << io::format_double(model.weights.realized_sparsity) << "\n";
    log << "training states " << trained.states.count() << ", mean |x| = " << io::format_double(trained.states.mean_abs())
        << "\n";
    for (const auto& [step, r] : model.readouts) {
        const std::size_t washout = model.config.washout;
        const std::size_t count = series.size() - washout - step;
        const auto fitted = predict(r, trained.states.slice(0, count));
        const auto target = std::span<const double>(series.values).subspan(washout + step, count);
        log << "step " << step << ": train rmse=" << io::format_double(rmse(fitted, target)) << "\n";
    }
    if (adapt) {
        log << "psi adaptation: rounds=" << adapt->rounds << " converged=" << (adapt->converged ? "yes" : "no") << "\n";
        for (std::size_t i = 0; i < adapt->psi_trace.size(); ++i) {
            log << "  round " << i + 1 << ": psi=" << io::format_double(adapt->psi_trace[i])
                << " mean|x|=" << io::format_double(adapt->state_trace[i]) << "\n";
        }
    }
    return log.str();
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spike echo state network forecasting and benchmarks", "spike-esn"};
    app.require_subcommand(1);
    std::string isa = "auto";
    app.add_option("--isa", isa, "Kernel instruction set: auto, scalar, avx2, neon");

    CommonArgs common;
    DataArgs data;

    auto* gen = app.add_subcommand("gen-data", "Write a synthetic series CSV");
    add_common(gen, common, true);
    std::string gen_kind = "mackey_glass";
    gen->add_option("--kind", gen_kind, "mackey_glass, narma10 or sine_mix");
    gen->add_option("--length", data.length, "Number of points");

    auto* train_cmd = app.add_subcommand("train", "Train a model on a CSV column");
    add_common(train_cmd, common, true);
    add_data(train_cmd, data, false);
    bool adapt = false;
    train_cmd->add_flag("--adapt-psi", adapt, "Rescale psi until the training states sit in the [adapt] band");

    std::string model_path;
    auto* predict_cmd = app.add_subcommand("predict", "Write per-step predictions for a CSV column");
    add_common(predict_cmd, common, true);
    add_data(predict_cmd, data, false);
    predict_cmd->add_option("-m,--model", model_path, "Model container")->required()->check(CLI::ExistingFile);

    auto* bench = app.add_subcommand("bench", "Train and evaluate on a washout/train/test split");
    add_common(bench, common, true);
    add_data(bench, data, true);

    auto* sweep_cmd = app.add_subcommand("sweep", "Average metrics over seeds along one axis");
    add_common(sweep_cmd, common, true);
    add_data(sweep_cmd, data, true);
    std::string axis_text = "step=1..20";
    std::size_t seed_count = 5;
    std::vector<std::string> modes{"spike", "esn"};
    std::size_t threads = 0;
    sweep_cmd->add_option("--axis", axis_text, "step=1..20 or n_sam=1,5,10,20,50,100");
    sweep_cmd->add_option("--seed-count", seed_count, "Seeds seed, seed+1, ...")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--modes", modes, "Models to run")->delimiter(',')->check(CLI::IsMember({"spike", "esn"}));
    sweep_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* export_states = app.add_subcommand("export-states", "Dump reservoir states (and spike trains)");
    add_common(export_states, common, true);
    add_data(export_states, data, false);
    export_states->add_option("-m,--model", model_path, "Model container")->required()->check(CLI::ExistingFile);
    bool with_spikes = false;
    export_states->add_flag("--spikes", with_spikes, "Also write the 0/1 spike trains");

    auto* export_weights = app.add_subcommand("export-weights", "Dump W_out, W_in and W_res");
    add_common(export_weights, common, false);
    export_weights->add_option("-m,--model", model_path, "Model container")->required()->check(CLI::ExistingFile);
    std::vector<double> thresholds{200, 300, 400};
    export_weights->add_option("--threshold", thresholds, "Count readout weights with |w| above these values")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (isa != "auto") simd::set_active_isa(simd::parse_isa(isa));
        const std::uint64_t seed = common.seed.value_or(0);

        if (gen->parsed()) {
            const RunConfig config = resolve_config(common);
            const Series s = gen_synthetic(parse_synthetic_kind(gen_kind), data.length, seed);
            const fs::path dir = prepare_out(common.out_dir);
            io::write_atomic(dir / "series.csv", series_csv(s, provenance_header("gen-data " + gen_kind, seed, config)));
            out << (dir / "series.csv").string() << "\n";
        } else if (train_cmd->parsed()) {
            RunConfig config = resolve_config(common);
            const Series s = resolve_series(data, seed);
            std::optional<AdaptResult> adapted;
            if (adapt) {
                adapted = adapt_psi(config.model, s, config.adapt, seed);
                config.model.encoder.psi = adapted->psi_trace.back();
            }
            const TrainResult trained = fit(config.model, s, seed);
            const fs::path dir = prepare_out(common.out_dir);
            save_model(trained.model, dir / "model.json");
            io::write_atomic(dir / "train.log", provenance_header("train", seed, config) +
                                                   train_log(trained.model, trained, s, adapted));
            out << (dir / "model.json").string() << "\n";
        } else if (predict_cmd->parsed()) {
            const Model model = load_model(model_path);
            RunConfig config;
            config.model = model.config;
            const Series s = resolve_series(data, seed);
            const Forecast f = forecast(model, s, seed);
            const fs::path dir = prepare_out(common.out_dir);
            io::write_atomic(dir / "predictions.csv", forecast_csv(s, f, provenance_header("predict", seed, config)));
            out << (dir / "predictions.csv").string() << "\n";
        } else if (bench->parsed()) {
            const RunConfig config = resolve_config(common);
            const Series s = resolve_series(data, seed);
            const TrainTestSeries parts = split_for_benchmark(s, config.model.washout, config.model.train_fraction);
            const Model model = train(config.model, parts.train, seed);
            const auto reports = evaluate(model, parts.test, seed);
            const fs::path dir = prepare_out(common.out_dir);
            io::write_atomic(dir / "report.json", reports_document(config, seed, reports).dump(1) + "\n");
            for (const auto& [step, r] : reports) {
                out << r.model << " step " << step << ": rmse=" << io::format_double(r.rmse)
                    << " mape=" << io::format_double(r.mape) << " n=" << r.n << "\n";
            }
        } else if (sweep_cmd->parsed()) {
            const RunConfig config = resolve_config(common);
            const Series s = resolve_series(data, seed);
            const SweepAxis axis = parse_axis(axis_text);
            std::vector<std::uint64_t> seeds;
            for (std::size_t i = 0; i < seed_count; ++i) seeds.push_back(seed + i);
            SweepOptions options;
            options.modes.clear();
            for (const auto& m : modes) options.modes.push_back(parse_mode(m));
            options.threads = threads;
            const auto rows = sweep(config.model, axis, s, seeds, options);
            const fs::path dir = prepare_out(common.out_dir);
            const std::string header = provenance_header("sweep " + axis_text, seed, config) +
                                       "# seed_count = " + std::to_string(seed_count) + "\n";
            io::write_atomic(dir / "sweep.csv", sweep_csv(rows, header));
            out << (dir / "sweep.csv").string() << " (" << rows.size() << " rows)\n";
        } else if (export_states->parsed()) {
            const Model model = load_model(model_path);
            RunConfig config;
            config.model = model.config;
            const Series s = resolve_series(data, seed);
            std::vector<SpikeTrain> trains;
            const bool record = with_spikes && model.config.mode == Mode::spike;
            const StateMatrix states = collect_states(model, s, seed, streams::encoder_test, record ? &trains : nullptr);
            const fs::path dir = prepare_out(common.out_dir);
            const std::string header = provenance_header("export-states", seed, config);
            io::write_atomic(dir / "states.csv", states_csv(states, 0, header));
            if (record) io::write_atomic(dir / "spikes.csv", spikes_csv(trains, header));
            out << (dir / "states.csv").string() << "\n";
        } else if (export_weights->parsed()) {
            const Model model = load_model(model_path);
            RunConfig config;
            config.model = model.config;
            const fs::path dir = prepare_out(common.out_dir);
            const std::string header = provenance_header("export-weights", model.seed, config);
            io::write_atomic(dir / "w_out.csv", readouts_csv(model, header));
            io::write_atomic(dir / "w_in.csv", matrix_csv(model.weights.w_in, header));
            io::write_atomic(dir / "w_res.csv", matrix_csv(model.weights.w_res, header));
            nlohmann::json summary = nlohmann::json::array();
            for (const auto& [step, r] : model.readouts) {
                for (double t : thresholds) {
                    summary.push_back({{"step", step}, {"threshold", t}, {"count", count_significant(r, t)}});
                    out << "step " << step << ": |w| > " << io::format_double(t) << ": "
                        << count_significant(r, t) << "\n";
                }
            }
            io::write_atomic(dir / "weights_summary.json",
                             nlohmann::json{{"seed", model.seed}, {"config", config_to_json(model.config)},
                                            {"significant", summary}}
                                     .dump(1) +
                                 "\n");
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace spike_esn::cli
