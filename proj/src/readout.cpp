#include "spike_esn/readout.hpp"

#include "spike_esn/error.hpp"
#include "spike_esn/simd.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <string>

namespace spike_esn {

namespace {

Eigen::VectorXd solve_spd(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, bool check_rank) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
    if (ldlt.info() != Eigen::Success) throw Error(Errc::singular_system, "ridge system factorization failed");
    if (check_rank) {
        const Eigen::VectorXd d = ldlt.vectorD().cwiseAbs();
        const double tol = std::numeric_limits<double>::epsilon() * static_cast<double>(a.rows()) * d.maxCoeff();
        if (d.size() == 0 || d.maxCoeff() == 0.0 || d.minCoeff() <= tol) {
            throw Error(Errc::singular_system, "ridge system is singular at mu = 0");
        }
    }
    Eigen::VectorXd x = ldlt.solve(b);
    if (!x.allFinite()) throw Error(Errc::singular_system, "ridge solve produced non-finite weights");
    return x;
}

}  // namespace

Readout fit_ridge(const StateMatrix& states, std::span<const double> targets, double mu) {
    const std::size_t t_count = states.count();
    if (t_count == 0) throw Error(Errc::insufficient_data, "fit_ridge: no states");
    if (targets.size() != t_count) {
        throw Error(Errc::dimension_mismatch, "fit_ridge: " + std::to_string(t_count) + " states but " +
                                                  std::to_string(targets.size()) + " targets");
    }
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw Error(Errc::invalid_argument, "ridge mu must be nonnegative");

    const auto xt = states.rows_view();  // T x n
    const Eigen::Map<const Eigen::VectorXd> y(targets.data(), static_cast<Eigen::Index>(t_count));
    const bool check_rank = mu == 0.0;
    Eigen::VectorXd w;
    if (t_count >= states.dim()) {
        Eigen::MatrixXd gram = xt.transpose() * xt;
        gram.diagonal().array() += mu;
        w = solve_spd(gram, xt.transpose() * y, check_rank);
    } else {
        Eigen::MatrixXd kernel = xt * xt.transpose();
        kernel.diagonal().array() += mu;
        w = xt.transpose() * solve_spd(kernel, y, check_rank);
    }
    return Readout{std::vector<double>(w.data(), w.data() + w.size()), mu};
}

std::vector<double> predict(const Readout& readout, const StateMatrix& states) {
    if (readout.dim() != states.dim()) {
        throw Error(Errc::dimension_mismatch, "predict: readout has " + std::to_string(readout.dim()) +
                                                  " weights, states have " + std::to_string(states.dim()));
    }
    std::vector<double> out(states.count());
    for (std::size_t t = 0; t < out.size(); ++t) out[t] = simd::dot(readout.w_out, states.state(t));
    return out;
}

double normal_equation_residual(const StateMatrix& states, std::span<const double> targets, const Readout& readout) {
    if (targets.size() != states.count() || readout.dim() != states.dim()) {
        throw Error(Errc::dimension_mismatch, "normal_equation_residual: shape mismatch");
    }
    const auto xt = states.rows_view();
    const Eigen::Map<const Eigen::VectorXd> y(targets.data(), static_cast<Eigen::Index>(targets.size()));
    const Eigen::Map<const Eigen::VectorXd> w(readout.w_out.data(), static_cast<Eigen::Index>(readout.dim()));
    const Eigen::VectorXd lhs = xt.transpose() * (xt * w) + readout.mu * w;
    return (lhs - xt.transpose() * y).norm();
}

double ridge_objective(const StateMatrix& states, std::span<const double> targets,
                       std::span<const double> w_out, double mu) {
    const Readout r{std::vector<double>(w_out.begin(), w_out.end()), mu};
    const auto pred = predict(r, states);
    if (pred.size() != targets.size()) throw Error(Errc::dimension_mismatch, "ridge_objective: shape mismatch");
    double loss = 0.0;
    for (std::size_t t = 0; t < pred.size(); ++t) loss += (targets[t] - pred[t]) * (targets[t] - pred[t]);
    double norm2 = 0.0;
    for (double v : w_out) norm2 += v * v;
    return loss + mu * norm2;
}

std::size_t count_significant(const Readout& readout, double threshold) {
    std::size_t n = 0;
    for (double v : readout.w_out) n += std::fabs(v) > threshold ? 1 : 0;
    return n;
}

}  // namespace spike_esn
