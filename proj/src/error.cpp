#include "spike_esn/error.hpp"

namespace spike_esn {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::io: return "io";
        case Errc::parse: return "parse";
        case Errc::config: return "config";
        case Errc::invalid_argument: return "invalid_argument";
        case Errc::degenerate_range: return "degenerate_range";
        case Errc::insufficient_data: return "insufficient_data";
        case Errc::dimension_mismatch: return "dimension_mismatch";
        case Errc::singular_system: return "singular_system";
        case Errc::non_convergence: return "non_convergence";
        case Errc::missing_step: return "missing_step";
        case Errc::unknown_kind: return "unknown_kind";
    }
    return "unknown";
}

}  // namespace spike_esn
