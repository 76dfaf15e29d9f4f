#include "spike_esn/error.hpp"
#include "spike_esn/random.hpp"
#include "spike_esn/timeseries.hpp"

#include <cmath>
#include <string>

namespace spike_esn {

std::string_view to_string(SyntheticKind kind) noexcept {
    switch (kind) {
        case SyntheticKind::mackey_glass: return "mackey_glass";
        case SyntheticKind::narma10: return "narma10";
        case SyntheticKind::sine_mix: return "sine_mix";
    }
    return "unknown";
}

SyntheticKind parse_synthetic_kind(std::string_view name) {
    if (name == "mackey_glass") return SyntheticKind::mackey_glass;
    if (name == "narma10") return SyntheticKind::narma10;
    if (name == "sine_mix") return SyntheticKind::sine_mix;
    throw Error(Errc::unknown_kind, "unknown synthetic series kind '" + std::string(name) + "'");
}

namespace {

std::vector<double> mackey_glass(std::size_t length, Engine& rng) {
    using namespace synthetic;
    // Ring buffer holding x[t - delay .. t].
    std::vector<double> ring(mg_delay + 1);
    for (double& v : ring) v = mg_initial + uniform(rng, -mg_jitter, mg_jitter);
    std::size_t head = mg_delay;  // index of x[t]
    std::vector<double> out;
    out.reserve(length);
    for (std::size_t t = 0; t < mg_discard + length; ++t) {
        const double x = ring[head];
        const double lagged = ring[(head + 1) % ring.size()];  // x[t - delay]
        const double next = x + mg_beta * lagged / (1.0 + std::pow(lagged, mg_power)) - mg_gamma * x;
        if (t >= mg_discard) out.push_back(x);
        head = (head + 1) % ring.size();
        ring[head] = next;
    }
    return out;
}

std::vector<double> narma10(std::size_t length, Engine& rng) {
    using namespace synthetic;
    std::vector<double> u(length);
    for (double& v : u) v = uniform(rng, 0.0, 0.5);
    std::vector<double> y(length, narma_warm_start);
    for (std::size_t t = narma_order - 1; t + 1 < length; ++t) {
        double window = 0.0;
        for (std::size_t i = 0; i < narma_order; ++i) window += y[t - i];
        y[t + 1] = 0.3 * y[t] + 0.05 * y[t] * window + 1.5 * u[t - (narma_order - 1)] * u[t] + 0.1;
    }
    return y;
}

std::vector<double> sine_mix(std::size_t length, Engine& rng) {
    using namespace synthetic;
    std::vector<double> out(length);
    for (std::size_t t = 0; t < length; ++t) {
        const double tt = static_cast<double>(t);
        out[t] = std::sin(sine_w1 * tt) + sine_amp2 * std::sin(sine_w2 * tt) + sine_noise_sd * standard_normal(rng);
    }
    return out;
}

}  // namespace

Series gen_synthetic(SyntheticKind kind, std::size_t length, std::uint64_t seed) {
    if (length == 0) throw Error(Errc::invalid_argument, "synthetic series length must be positive");
    Engine rng = Substreams(seed).engine(streams::data, static_cast<std::uint64_t>(kind));
    std::vector<double> values;
    switch (kind) {
        case SyntheticKind::mackey_glass: values = mackey_glass(length, rng); break;
        case SyntheticKind::narma10: values = narma10(length, rng); break;
        case SyntheticKind::sine_mix: values = sine_mix(length, rng); break;
    }
    return make_series(std::string(to_string(kind)), std::move(values));
}

}  // namespace spike_esn
