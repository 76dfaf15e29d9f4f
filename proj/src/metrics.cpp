#include "spike_esn/metrics.hpp"

#include "spike_esn/error.hpp"

#include <cmath>

namespace spike_esn {

namespace {

void check_pair(std::span<const double> pred, std::span<const double> target, const char* what) {
    if (pred.size() != target.size()) throw Error(Errc::dimension_mismatch, std::string(what) + ": length mismatch");
    if (pred.empty()) throw Error(Errc::insufficient_data, std::string(what) + ": empty input");
}

}  // namespace

double rmse(std::span<const double> pred, std::span<const double> target) {
    check_pair(pred, target, "rmse");
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) sum += (pred[i] - target[i]) * (pred[i] - target[i]);
    return std::sqrt(sum / static_cast<double>(pred.size()));
}

MapeResult mape(std::span<const double> pred, std::span<const double> target, double eps) {
    check_pair(pred, target, "mape");
    MapeResult r;
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (std::fabs(target[i]) <= eps) {
            ++r.excluded;
            continue;
        }
        sum += std::fabs((pred[i] - target[i]) / target[i]);
    }
    const std::size_t used = pred.size() - r.excluded;
    if (used == 0) throw Error(Errc::insufficient_data, "mape: every target is within eps of zero");
    r.value = sum / static_cast<double>(used);
    return r;
}

EvalReport score(std::string model, std::size_t step, std::uint64_t seed, std::span<const double> pred,
                 std::span<const double> target, double eps) {
    const MapeResult m = mape(pred, target, eps);
    return EvalReport{std::move(model), step, rmse(pred, target), m.value, pred.size(), m.excluded, seed};
}

}  // namespace spike_esn
