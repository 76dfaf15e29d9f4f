#pragma once

// On-disk formats.
//
// Model container (JSON):
//   {"format": "spike-esn-model", "version": 1, "seed": ..., "config": {...},
//    "norm": {"u_min", "u_max"},
//    "weights": {"w_in": {"rows", "cols", "data": [row-major]}, "w_res": {...},
//                "realized_radius", "realized_sparsity"},
//    "readouts": [{"step", "mu", "w_out": [...]}, ...]}
// Doubles are written in shortest round-trip form, so load(save(m)) == m.
//
// CSV artifacts start with '#' provenance lines (seed and resolved config),
// then one header row. load_csv skips '#' lines.

#include "spike_esn/config.hpp"
#include "spike_esn/metrics.hpp"
#include "spike_esn/pipeline.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace spike_esn {

inline constexpr int model_format_version = 1;

nlohmann::json model_to_json(const Model& model);
Model model_from_json(const nlohmann::json& j);
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

nlohmann::json report_to_json(const EvalReport& report);
nlohmann::json reports_document(const RunConfig& config, std::uint64_t seed,
                                const std::map<std::size_t, EvalReport>& reports);

/// '#'-prefixed lines: artifact name, seed, and the resolved config.
std::string provenance_header(std::string_view artifact, std::uint64_t seed, const RunConfig& config);

std::string series_csv(const Series& series, const std::string& header);
std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& header);
std::string forecast_csv(const Series& series, const Forecast& forecast, const std::string& header);
/// One row per state: t, x0 .. x{n-1}; t is the input index.
std::string states_csv(const StateMatrix& states, std::size_t first_index, const std::string& header);
/// One row per input: t, s1 .. s{n_sam}.
std::string spikes_csv(const std::vector<SpikeTrain>& trains, const std::string& header);
/// step, index, weight.
std::string readouts_csv(const Model& model, const std::string& header);
/// row, c0 .. c{cols-1}.
std::string matrix_csv(const Matrix& m, const std::string& header);

}  // namespace spike_esn
