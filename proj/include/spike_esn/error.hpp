#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spike_esn {

/// Machine-readable error category. The CLI prints it as the first token of
/// its single-line error report.
enum class Errc {
    io,
    parse,
    config,
    invalid_argument,
    degenerate_range,
    insufficient_data,
    dimension_mismatch,
    singular_system,
    non_convergence,
    missing_step,
    unknown_kind,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Raised when an iterative solver gives up; carries its best estimate.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, double estimate)
        : Error(Errc::non_convergence, what), estimate_(estimate) {}

    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

}  // namespace spike_esn
