#include "spike_esn/reservoir.hpp"

#include "spike_esn/error.hpp"
#include "spike_esn/simd.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace spike_esn {

void ReservoirConfig::validate() const {
    if (n_res < 1) throw Error(Errc::invalid_argument, "n_res must be at least 1");
    if (!(rho > 0.0 && rho < 1.0)) throw Error(Errc::invalid_argument, "rho must lie in (0, 1)");
    if (!(eta > 0.0 && eta <= 1.0)) throw Error(Errc::invalid_argument, "eta must lie in (0, 1]");
    if (!(input_scale > 0.0) || !std::isfinite(input_scale)) {
        throw Error(Errc::invalid_argument, "input_scale must be positive");
    }
    if (eta * static_cast<double>(n_res) * static_cast<double>(n_res) < 1.0) {
        throw Error(Errc::invalid_argument, "eta * n_res^2 must be at least 1");
    }
}

void ReservoirWeights::validate() const {
    if (w_res.rows() != w_res.cols() || w_in.rows() != w_res.rows() || w_in.cols() < 1) {
        throw Error(Errc::dimension_mismatch, "reservoir weight shapes are inconsistent");
    }
}

double spectral_radius(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error(Errc::dimension_mismatch, "spectral_radius needs a square matrix");
    if (m.size() == 0) return 0.0;
    if (!m.allFinite()) throw Error(Errc::invalid_argument, "spectral_radius: non-finite entry");
    Eigen::EigenSolver<Eigen::MatrixXd> solver;
    solver.setMaxIterations(10000);
    solver.compute(Eigen::MatrixXd(m), /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NonConvergence("spectral_radius: eigenvalue iteration did not converge",
                             m.cwiseAbs().rowwise().sum().maxCoeff());
    }
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double structural_density(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return static_cast<double>((m.array() != 0.0).count()) / static_cast<double>(m.size());
}

Matrix gen_internal_weights(const ReservoirConfig& config) {
    config.validate();
    constexpr int kMaxRedraws = 8;
    const auto n = static_cast<Eigen::Index>(config.n_res);
    for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
        Engine rng = Substreams(config.seed + static_cast<std::uint64_t>(attempt)).engine(streams::reservoir);
        Matrix w(n, n);
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            const bool keep = uniform01(rng) < config.eta;
            const double value = uniform(rng, -1.0, 1.0);
            w.data()[i] = keep ? value : 0.0;
        }
        const double radius = spectral_radius(w);
        if (radius < 1e-12) continue;
        w *= config.rho / radius;
        return w;
    }
    throw Error(Errc::non_convergence, "reservoir draw stayed degenerate after " +
                                           std::to_string(kMaxRedraws) + " redraws");
}

Matrix gen_input_weights(std::size_t n_res, std::size_t width, double scale, Engine& rng) {
    Matrix w(static_cast<Eigen::Index>(n_res), static_cast<Eigen::Index>(width));
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = uniform(rng, -scale, scale);
    return w;
}

ReservoirWeights make_reservoir(const ReservoirConfig& config, std::size_t input_width) {
    config.validate();
    if (input_width < 1) throw Error(Errc::invalid_argument, "input width must be at least 1");
    ReservoirWeights w;
    Engine rng = Substreams(config.seed).engine(streams::input_weights);
    w.w_in = gen_input_weights(config.n_res, input_width, config.input_scale, rng);
    w.w_res = gen_internal_weights(config);
    w.realized_radius = spectral_radius(w.w_res);
    w.realized_sparsity = structural_density(w.w_res);
    return w;
}

StateMatrix StateMatrix::from_columns(const Eigen::MatrixXd& columns) {
    StateMatrix s(static_cast<std::size_t>(columns.rows()));
    s.reserve(static_cast<std::size_t>(columns.cols()));
    for (Eigen::Index t = 0; t < columns.cols(); ++t) {
        const Eigen::VectorXd col = columns.col(t);
        s.append(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())));
    }
    return s;
}

void StateMatrix::append(std::span<const double> x) {
    if (x.size() != dim_) throw Error(Errc::dimension_mismatch, "state length differs from reservoir size");
    data_.insert(data_.end(), x.begin(), x.end());
}

StateMatrix StateMatrix::slice(std::size_t first, std::size_t n) const {
    if (first + n > count()) throw Error(Errc::insufficient_data, "state slice out of range");
    StateMatrix out(dim_);
    out.data_.assign(data_.begin() + static_cast<std::ptrdiff_t>(first * dim_),
                     data_.begin() + static_cast<std::ptrdiff_t>((first + n) * dim_));
    return out;
}

Eigen::Map<const Matrix> StateMatrix::rows_view() const {
    return {data_.data(), static_cast<Eigen::Index>(count()), static_cast<Eigen::Index>(dim_)};
}

Eigen::MatrixXd StateMatrix::to_columns() const { return rows_view().transpose(); }

double StateMatrix::mean_abs() const {
    if (data_.empty()) return 0.0;
    return simd::sum_abs(data_) / static_cast<double>(data_.size());
}

namespace {

std::span<const double> matrix_span(const Matrix& m) {
    return {m.data(), static_cast<std::size_t>(m.size())};
}

}  // namespace

void update_state_into(std::span<const double> x_prev, std::span<const double> drive,
                       const ReservoirWeights& weights, std::span<double> out, Activation act) {
    const std::size_t n = weights.n_res();
    if (x_prev.size() != n || out.size() != n || drive.size() != weights.input_width()) {
        throw Error(Errc::dimension_mismatch,
                    "update_state: expected state " + std::to_string(n) + " and drive " +
                        std::to_string(weights.input_width()) + ", got " + std::to_string(x_prev.size()) +
                        " and " + std::to_string(drive.size()));
    }
    simd::gemv(matrix_span(weights.w_in), n, weights.input_width(), drive, out);
    simd::gemv_add(matrix_span(weights.w_res), n, n, x_prev, out);
    if (act == Activation::tanh) {
        for (double& v : out) v = std::tanh(v);
    }
}

std::vector<double> update_state(std::span<const double> x_prev, std::span<const double> drive,
                                 const ReservoirWeights& weights, Activation act) {
    std::vector<double> out(weights.n_res());
    update_state_into(x_prev, drive, weights, out, act);
    return out;
}

std::vector<CurrentSeq> encode_drives(std::span<const double> inputs, const EncoderParams& encoder,
                                      std::string_view stream) {
    encoder.validate();
    const CurrentKernel kernel(encoder.n_sam, encoder.psi);
    std::vector<CurrentSeq> drives;
    drives.reserve(inputs.size());
    for (std::size_t t = 0; t < inputs.size(); ++t) {
        Engine rng = encoder_stream(encoder, stream, t);
        drives.push_back(kernel(encode(inputs[t], encoder, rng)));
    }
    return drives;
}

namespace {

// Shared recursion: `drive_at(t)` yields the drive of step t.
template <class DriveAt>
StateMatrix run_recursion(std::size_t steps, const ReservoirWeights& weights, std::span<const double> x0,
                          DriveAt&& drive_at) {
    weights.validate();
    const std::size_t n = weights.n_res();
    std::vector<double> prev(n, 0.0);
    if (!x0.empty()) {
        if (x0.size() != n) throw Error(Errc::dimension_mismatch, "initial state length differs from n_res");
        prev.assign(x0.begin(), x0.end());
    }
    std::vector<double> next(n);
    StateMatrix states(n);
    states.reserve(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        update_state_into(prev, drive_at(t), weights, next);
        states.append(next);
        prev.swap(next);
    }
    return states;
}

}  // namespace

StateMatrix run_drives(std::span<const CurrentSeq> drives, const ReservoirWeights& weights,
                       std::span<const double> x0) {
    return run_recursion(drives.size(), weights, x0,
                         [&](std::size_t t) { return std::span<const double>(drives[t].currents); });
}

StateMatrix run_spike(std::span<const double> inputs, const EncoderParams& encoder,
                      const ReservoirWeights& weights, std::string_view stream,
                      std::vector<SpikeTrain>* spikes) {
    if (inputs.empty()) throw Error(Errc::insufficient_data, "run_spike: no inputs");
    encoder.validate();
    if (weights.input_width() != encoder.n_sam) {
        throw Error(Errc::dimension_mismatch, "W_in width " + std::to_string(weights.input_width()) +
                                                  " differs from n_sam " + std::to_string(encoder.n_sam));
    }
    const CurrentKernel kernel(encoder.n_sam, encoder.psi);
    std::vector<double> current(encoder.n_sam);
    return run_recursion(inputs.size(), weights, {}, [&](std::size_t t) {
        Engine rng = encoder_stream(encoder, stream, t);
        SpikeTrain train = encode(inputs[t], encoder, rng);
        kernel.apply(train.times, current);
        if (spikes != nullptr) spikes->push_back(std::move(train));
        return std::span<const double>(current);
    });
}

StateMatrix run_esn(std::span<const double> inputs, const ReservoirWeights& weights, std::span<const double> x0) {
    if (inputs.empty()) throw Error(Errc::insufficient_data, "run_esn: no inputs");
    if (weights.input_width() != 1) throw Error(Errc::dimension_mismatch, "plain ESN needs a one-column W_in");
    return run_recursion(inputs.size(), weights, x0, [&](std::size_t t) { return inputs.subspan(t, 1); });
}

}  // namespace spike_esn
