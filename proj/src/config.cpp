#include "spike_esn/config.hpp"

#include "spike_esn/error.hpp"
#include "spike_esn/io.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <sstream>

namespace spike_esn {

void RunConfig::validate() const {
    model.validate();
    adapt.validate();
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view expected, std::string_view value) {
    throw Error(Errc::config, "key '" + std::string(key) + "': expected " + std::string(expected) + ", got '" +
                                  std::string(value) + "'");
}

double to_real(std::string_view key, std::string_view v) {
    double out = 0.0;
    if (!io::parse_double(v, out) || !std::isfinite(out)) bad_value(key, "a finite real", v);
    return out;
}

std::size_t to_size(std::string_view key, std::string_view v) {
    v = trim(v);
    std::size_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) bad_value(key, "a nonnegative integer", v);
    return out;
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct Field {
    std::string key;
    Setter set;
    Getter get;
};

std::string join_sizes(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

template <class T>
Field real_field(std::string key, T RunConfig::*group, double T::*member) {
    return {std::move(key), [=](RunConfig& c, std::string_view k, std::string_view v) { (c.*group).*member = to_real(k, v); },
            [=](const RunConfig& c) { return io::format_double((c.*group).*member); }};
}

template <class T>
Field size_field(std::string key, T RunConfig::*group, std::size_t T::*member) {
    return {std::move(key), [=](RunConfig& c, std::string_view k, std::string_view v) { (c.*group).*member = to_size(k, v); },
            [=](const RunConfig& c) { return std::to_string((c.*group).*member); }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        using M = ModelConfig;
        std::vector<Field> f;
        f.push_back({"mode",
                     [](RunConfig& c, std::string_view k, std::string_view v) {
                         try {
                             c.model.mode = parse_mode(trim(v));
                         } catch (const Error&) {
                             bad_value(k, "spike or esn", v);
                         }
                     },
                     [](const RunConfig& c) { return std::string(to_string(c.model.mode)); }});
        f.push_back(real_field("mu", &RunConfig::model, &M::mu));
        f.push_back(size_field("washout", &RunConfig::model, &M::washout));
        f.push_back({"steps",
                     [](RunConfig& c, std::string_view k, std::string_view v) {
                         try {
                             c.model.steps = parse_size_list(v);
                         } catch (const Error&) {
                             bad_value(k, "a comma-separated list of positive integers", v);
                         }
                     },
                     [](const RunConfig& c) { return join_sizes(c.model.steps); }});
        f.push_back(real_field("train_fraction", &RunConfig::model, &M::train_fraction));
        f.push_back({"encoder.n_sam",
                     [](RunConfig& c, std::string_view k, std::string_view v) { c.model.encoder.n_sam = to_size(k, v); },
                     [](const RunConfig& c) { return std::to_string(c.model.encoder.n_sam); }});
        f.push_back({"encoder.psi",
                     [](RunConfig& c, std::string_view k, std::string_view v) { c.model.encoder.psi = to_real(k, v); },
                     [](const RunConfig& c) { return io::format_double(c.model.encoder.psi); }});
        f.push_back({"reservoir.n_res",
                     [](RunConfig& c, std::string_view k, std::string_view v) { c.model.reservoir.n_res = to_size(k, v); },
                     [](const RunConfig& c) { return std::to_string(c.model.reservoir.n_res); }});
        f.push_back({"reservoir.rho",
                     [](RunConfig& c, std::string_view k, std::string_view v) { c.model.reservoir.rho = to_real(k, v); },
                     [](const RunConfig& c) { return io::format_double(c.model.reservoir.rho); }});
        f.push_back({"reservoir.eta",
                     [](RunConfig& c, std::string_view k, std::string_view v) { c.model.reservoir.eta = to_real(k, v); },
                     [](const RunConfig& c) { return io::format_double(c.model.reservoir.eta); }});
        f.push_back({"reservoir.input_scale",
                     [](RunConfig& c, std::string_view k, std::string_view v) {
                         c.model.reservoir.input_scale = to_real(k, v);
                     },
                     [](const RunConfig& c) { return io::format_double(c.model.reservoir.input_scale); }});
        f.push_back(real_field("adapt.state_low", &RunConfig::adapt, &AdaptationPolicy::state_low));
        f.push_back(real_field("adapt.state_high", &RunConfig::adapt, &AdaptationPolicy::state_high));
        f.push_back(real_field("adapt.psi_step", &RunConfig::adapt, &AdaptationPolicy::psi_step));
        f.push_back(size_field("adapt.max_rounds", &RunConfig::adapt, &AdaptationPolicy::max_rounds));
        return f;
    }();
    return table;
}

const Field& find_field(std::string_view key) {
    for (const Field& f : fields()) {
        if (f.key == key) return f;
    }
    throw Error(Errc::config, "unknown key '" + std::string(key) + "'");
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const Field& f : fields()) k.push_back(f.key);
        return k;
    }();
    return keys;
}

std::vector<std::size_t> parse_size_list(std::string_view text) {
    std::vector<std::size_t> out;
    for (const std::string& cell : io::split_csv_line(text)) {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size() || v == 0) {
            throw Error(Errc::parse, "expected a positive integer, got '" + cell + "'");
        }
        out.push_back(v);
    }
    return out;
}

void set_config_value(RunConfig& config, std::string_view key, std::string_view value) {
    find_field(trim(key)).set(config, trim(key), trim(value));
}

void apply_override(RunConfig& config, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw Error(Errc::config, "override '" + std::string(assignment) + "' is not key=value");
    }
    set_config_value(config, assignment.substr(0, eq), assignment.substr(eq + 1));
}

RunConfig parse_config(std::string_view text, std::string_view origin) {
    RunConfig config;
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') throw Error(Errc::config, where + "malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section != "encoder" && section != "reservoir" && section != "adapt") {
                throw Error(Errc::config, where + "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw Error(Errc::config, where + "expected key = value");
        const std::string_view name = trim(line.substr(0, eq));
        const std::string key = section.empty() ? std::string(name) : section + "." + std::string(name);
        try {
            set_config_value(config, key, line.substr(eq + 1));
        } catch (const Error& e) {
            throw Error(Errc::config, where + e.what());
        }
    }
    try {
        config.validate();
    } catch (const Error& e) {
        throw Error(Errc::config, std::string(origin) + ": " + e.what());
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    return parse_config(io::read_file(path), path.string());
}

std::string format_config(const RunConfig& config) {
    std::ostringstream out;
    std::string section;
    for (const Field& f : fields()) {
        const auto dot = f.key.find('.');
        const std::string sec = dot == std::string::npos ? "" : f.key.substr(0, dot);
        const std::string name = dot == std::string::npos ? f.key : f.key.substr(dot + 1);
        if (sec != section) {
            out << "\n[" << sec << "]\n";
            section = sec;
        }
        out << name << " = " << f.get(config) << "\n";
    }
    return out.str();
}

nlohmann::json config_to_json(const ModelConfig& c) {
    return nlohmann::json{
        {"mode", std::string(to_string(c.mode))},
        {"mu", c.mu},
        {"washout", c.washout},
        {"steps", c.steps},
        {"train_fraction", c.train_fraction},
        {"encoder", {{"n_sam", c.encoder.n_sam}, {"psi", c.encoder.psi}}},
        {"reservoir",
         {{"n_res", c.reservoir.n_res},
          {"rho", c.reservoir.rho},
          {"eta", c.reservoir.eta},
          {"input_scale", c.reservoir.input_scale},
          {"seed", c.reservoir.seed}}},
    };
}

ModelConfig config_from_json(const nlohmann::json& j) {
    try {
        ModelConfig c;
        c.mode = parse_mode(j.at("mode").get<std::string>());
        c.mu = j.at("mu").get<double>();
        c.washout = j.at("washout").get<std::size_t>();
        c.steps = j.at("steps").get<std::vector<std::size_t>>();
        c.train_fraction = j.at("train_fraction").get<double>();
        c.encoder.n_sam = j.at("encoder").at("n_sam").get<std::size_t>();
        c.encoder.psi = j.at("encoder").at("psi").get<double>();
        const auto& r = j.at("reservoir");
        c.reservoir.n_res = r.at("n_res").get<std::size_t>();
        c.reservoir.rho = r.at("rho").get<double>();
        c.reservoir.eta = r.at("eta").get<double>();
        c.reservoir.input_scale = r.at("input_scale").get<double>();
        c.reservoir.seed = r.at("seed").get<std::uint64_t>();
        c.validate();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse, std::string("model config: ") + e.what());
    }
}

}  // namespace spike_esn
