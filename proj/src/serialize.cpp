#include "spike_esn/serialize.hpp"

#include "spike_esn/error.hpp"
#include "spike_esn/io.hpp"

#include <sstream>

namespace spike_esn {

namespace {

nlohmann::json matrix_to_json(const Matrix& m) {
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::vector<double>(m.data(), m.data() + m.size())}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto data = j.at("data").get<std::vector<double>>();
    if (rows < 0 || cols < 0 || static_cast<std::size_t>(rows * cols) != data.size()) {
        throw Error(Errc::parse, "matrix data length does not match its shape");
    }
    Matrix m(rows, cols);
    std::copy(data.begin(), data.end(), m.data());
    return m;
}

}  // namespace

nlohmann::json model_to_json(const Model& model) {
    nlohmann::json readouts = nlohmann::json::array();
    for (const auto& [step, r] : model.readouts) {
        readouts.push_back({{"step", step}, {"mu", r.mu}, {"w_out", r.w_out}});
    }
    return {
        {"format", "spike-esn-model"},
        {"version", model_format_version},
        {"seed", model.seed},
        {"config", config_to_json(model.config)},
        {"norm", {{"u_min", model.norm.u_min}, {"u_max", model.norm.u_max}}},
        {"weights",
         {{"w_in", matrix_to_json(model.weights.w_in)},
          {"w_res", matrix_to_json(model.weights.w_res)},
          {"realized_radius", model.weights.realized_radius},
          {"realized_sparsity", model.weights.realized_sparsity}}},
        {"readouts", readouts},
    };
}

Model model_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format").get<std::string>() != "spike-esn-model") {
            throw Error(Errc::parse, "not a spike-esn model container");
        }
        const int version = j.at("version").get<int>();
        if (version != model_format_version) {
            throw Error(Errc::parse, "unsupported model version " + std::to_string(version));
        }
        Model m;
        m.seed = j.at("seed").get<std::uint64_t>();
        m.config = config_from_json(j.at("config"));
        m.norm = {j.at("norm").at("u_min").get<double>(), j.at("norm").at("u_max").get<double>()};
        m.norm.validate();
        const auto& w = j.at("weights");
        m.weights.w_in = matrix_from_json(w.at("w_in"));
        m.weights.w_res = matrix_from_json(w.at("w_res"));
        m.weights.realized_radius = w.at("realized_radius").get<double>();
        m.weights.realized_sparsity = w.at("realized_sparsity").get<double>();
        m.weights.validate();
        if (m.weights.input_width() != m.config.input_width() || m.weights.n_res() != m.config.reservoir.n_res) {
            throw Error(Errc::dimension_mismatch, "model weights do not match its config");
        }
        for (const auto& r : j.at("readouts")) {
            Readout readout{r.at("w_out").get<std::vector<double>>(), r.at("mu").get<double>()};
            if (readout.dim() != m.weights.n_res()) {
                throw Error(Errc::dimension_mismatch, "readout length differs from n_res");
            }
            m.readouts[r.at("step").get<std::size_t>()] = std::move(readout);
        }
        for (std::size_t step : m.config.steps) (void)m.readout(step);
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse, std::string("model container: ") + e.what());
    }
}

void save_model(const Model& model, const std::filesystem::path& path) {
    io::write_atomic(path, model_to_json(model).dump(1) + "\n");
}

Model load_model(const std::filesystem::path& path) {
    const std::string text = io::read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse, path.string() + ": " + e.what());
    }
    return model_from_json(j);
}

nlohmann::json report_to_json(const EvalReport& r) {
    return {{"model", r.model}, {"step", r.step}, {"rmse", r.rmse}, {"mape", r.mape},
            {"n", r.n},         {"excluded", r.excluded}, {"seed", r.seed}};
}

nlohmann::json reports_document(const RunConfig& config, std::uint64_t seed,
                                const std::map<std::size_t, EvalReport>& reports) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& [step, r] : reports) list.push_back(report_to_json(r));
    return {{"format", "spike-esn-report"}, {"version", 1}, {"seed", seed},
            {"config", config_to_json(config.model)}, {"reports", list}};
}

std::string provenance_header(std::string_view artifact, std::uint64_t seed, const RunConfig& config) {
    std::ostringstream out;
    out << "# spike-esn " << artifact << "\n# seed = " << seed << "\n";
    std::istringstream lines(format_config(config));
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty()) out << "# " << line << "\n";
    }
    return out.str();
}

std::string series_csv(const Series& series, const std::string& header) {
    std::ostringstream out;
    out << header << "index," << series.name << "\n";
    for (std::size_t i = 0; i < series.size(); ++i) out << i << "," << io::format_double(series.values[i]) << "\n";
    return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& header) {
    std::ostringstream out;
    out << header << "mode,step,n_sam,seed_count,rmse_mean,rmse_std,mape_mean,mape_std,ln_rmse\n";
    for (const SweepRow& r : rows) {
        out << to_string(r.mode) << "," << r.step << "," << r.n_sam << "," << r.seed_count << ","
            << io::format_double(r.rmse_mean) << "," << io::format_double(r.rmse_std) << ","
            << io::format_double(r.mape_mean) << "," << io::format_double(r.mape_std) << ","
            << io::format_double(r.ln_rmse) << "\n";
    }
    return out.str();
}

std::string forecast_csv(const Series& series, const Forecast& forecast, const std::string& header) {
    const bool labelled = !series.labels.empty();
    std::ostringstream out;
    out << header << "index";
    if (labelled) out << ",label";
    out << ",input";
    for (const auto& [step, values] : forecast.by_step) out << ",pred_step_" << step;
    out << "\n";
    for (std::size_t i = forecast.first; i < series.size(); ++i) {
        out << i;
        if (labelled) out << "," << series.labels[i];
        out << "," << io::format_double(series.values[i]);
        for (const auto& [step, values] : forecast.by_step) out << "," << io::format_double(values[i - forecast.first]);
        out << "\n";
    }
    return out.str();
}

std::string states_csv(const StateMatrix& states, std::size_t first_index, const std::string& header) {
    std::ostringstream out;
    out << header << "t";
    for (std::size_t i = 0; i < states.dim(); ++i) out << ",x" << i;
    out << "\n";
    for (std::size_t t = 0; t < states.count(); ++t) {
        out << first_index + t;
        for (double v : states.state(t)) out << "," << io::format_double(v);
        out << "\n";
    }
    return out.str();
}

std::string spikes_csv(const std::vector<SpikeTrain>& trains, const std::string& header) {
    std::ostringstream out;
    out << header << "t";
    const std::size_t width = trains.empty() ? 0 : trains.front().n_sam();
    for (std::size_t i = 1; i <= width; ++i) out << ",s" << i;
    out << "\n";
    for (std::size_t t = 0; t < trains.size(); ++t) {
        out << t;
        for (auto b : trains[t].bits) out << "," << static_cast<int>(b);
        out << "\n";
    }
    return out.str();
}

std::string readouts_csv(const Model& model, const std::string& header) {
    std::ostringstream out;
    out << header << "step,index,weight\n";
    for (const auto& [step, r] : model.readouts) {
        for (std::size_t i = 0; i < r.dim(); ++i) out << step << "," << i << "," << io::format_double(r.w_out[i]) << "\n";
    }
    return out.str();
}

std::string matrix_csv(const Matrix& m, const std::string& header) {
    std::ostringstream out;
    out << header << "row";
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << ",c" << c;
    out << "\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out << r;
        for (Eigen::Index c = 0; c < m.cols(); ++c) out << "," << io::format_double(m(r, c));
        out << "\n";
    }
    return out.str();
}

}  // namespace spike_esn
