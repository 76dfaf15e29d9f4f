#pragma once

// Run configuration text format:
//
//   # comment
//   mode = spike            # spike | esn
//   mu = 1e-8
//   washout = 200
//   steps = 1,10,20
//   train_fraction = 0.8
//
//   [encoder]
//   n_sam = 100
//   psi = 5000
//
//   [reservoir]
//   n_res = 100
//   rho = 0.9
//   eta = 0.1
//   input_scale = 0.8
//
//   [adapt]
//   state_low = 0.1
//   state_high = 0.9
//   psi_step = 2
//   max_rounds = 16
//
// A key inside [section] has the path "section.key"; overrides use the same
// paths ("encoder.n_sam=50"). Unknown keys are errors. Every key is optional.

#include "spike_esn/pipeline.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace spike_esn {

struct RunConfig {
    ModelConfig model;
    AdaptationPolicy adapt;

    void validate() const;
};

/// Every accepted key path, in canonical order.
const std::vector<std::string>& config_keys();

/// Throws Error(config) naming origin, line and key path.
RunConfig parse_config(std::string_view text, std::string_view origin = "config");
RunConfig load_config(const std::filesystem::path& path);

void set_config_value(RunConfig& config, std::string_view key, std::string_view value);
/// "key=value".
void apply_override(RunConfig& config, std::string_view assignment);

/// Canonical text; parse_config(format_config(c)) == c.
std::string format_config(const RunConfig& config);

nlohmann::json config_to_json(const ModelConfig& config);
ModelConfig config_from_json(const nlohmann::json& j);

std::vector<std::size_t> parse_size_list(std::string_view text);

}  // namespace spike_esn
