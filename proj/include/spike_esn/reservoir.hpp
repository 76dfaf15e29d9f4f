#pragma once

// Fixed random reservoir and its state recursion
//
//   x(t) = tanh(W_in d(t) + W_res x(t-1)),   x(0) = 0,
//
// where d(t) is the synaptic current sequence of the t-th input (spike mode)
// or the scalar input itself (plain ESN mode, W_in one column wide).

#include "spike_esn/encoder.hpp"
#include "spike_esn/random.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace spike_esn {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct ReservoirConfig {
    std::size_t n_res = 100;
    /// Target spectral radius of W_res.
    double rho = 0.9;
    /// Probability that an entry of W_res is nonzero.
    double eta = 0.1;
    /// W_in entries are uniform on [-input_scale, input_scale].
    double input_scale = 0.8;
    std::uint64_t seed = 0;

    void validate() const;
};

struct ReservoirWeights {
    Matrix w_in;   ///< n_res x input width
    Matrix w_res;  ///< n_res x n_res
    double realized_radius = 0.0;
    double realized_sparsity = 0.0;

    std::size_t n_res() const noexcept { return static_cast<std::size_t>(w_res.rows()); }
    std::size_t input_width() const noexcept { return static_cast<std::size_t>(w_in.cols()); }
    void validate() const;
};

/// Largest eigenvalue modulus, from the real Schur form (Hessenberg QR).
/// Throws NonConvergence carrying the infinity-norm bound if QR stalls.
double spectral_radius(const Matrix& m);

/// Fraction of structurally nonzero entries.
double structural_density(const Matrix& m);

/// Sparse uniform [-1, 1] draw rescaled to spectral radius rho. A draw whose
/// radius is below 1e-12 is redrawn with seed + 1, up to 8 times.
Matrix gen_internal_weights(const ReservoirConfig& config);

/// Dense uniform [-scale, scale] matrix.
Matrix gen_input_weights(std::size_t n_res, std::size_t width, double scale, Engine& rng);

/// W_in (width columns) and W_res from the config seed.
ReservoirWeights make_reservoir(const ReservoirConfig& config, std::size_t input_width);

/// Column-stacked reservoir states x(1..T); stored one state per row.
class StateMatrix {
public:
    StateMatrix() = default;
    explicit StateMatrix(std::size_t dim) : dim_(dim) {}
    /// From an n_res x T matrix whose columns are states.
    static StateMatrix from_columns(const Eigen::MatrixXd& columns);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t count() const noexcept { return dim_ == 0 ? 0 : data_.size() / dim_; }
    std::span<const double> state(std::size_t t) const {
        return std::span<const double>(data_).subspan(t * dim_, dim_);
    }
    std::span<const double> data() const noexcept { return data_; }

    void reserve(std::size_t count) { data_.reserve(count * dim_); }
    void append(std::span<const double> x);
    /// States [first, first + n).
    StateMatrix slice(std::size_t first, std::size_t n) const;
    /// T x n_res view (row t is x(t)).
    Eigen::Map<const Matrix> rows_view() const;
    /// n_res x T copy (column t is x(t)).
    Eigen::MatrixXd to_columns() const;
    /// Mean of |x_i(t)| over all entries.
    double mean_abs() const;

    bool operator==(const StateMatrix&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

enum class Activation {
    tanh,
    /// Linear probe of the matrix plumbing; not used by the models.
    identity,
};

/// out = act(W_in drive + W_res x_prev).
void update_state_into(std::span<const double> x_prev, std::span<const double> drive,
                       const ReservoirWeights& weights, std::span<double> out,
                       Activation act = Activation::tanh);

std::vector<double> update_state(std::span<const double> x_prev, std::span<const double> drive,
                                 const ReservoirWeights& weights, Activation act = Activation::tanh);

/// Current sequences of every input, each from its own substream of `stream`.
std::vector<CurrentSeq> encode_drives(std::span<const double> inputs, const EncoderParams& encoder,
                                      std::string_view stream);

/// Recursion over precomputed drives from x0 (empty = zero state).
StateMatrix run_drives(std::span<const CurrentSeq> drives, const ReservoirWeights& weights,
                       std::span<const double> x0 = {});

/// Spike pathway: encode, convert to currents, update. When `spikes` is not
/// null every train is appended to it.
StateMatrix run_spike(std::span<const double> inputs, const EncoderParams& encoder,
                      const ReservoirWeights& weights, std::string_view stream,
                      std::vector<SpikeTrain>* spikes = nullptr);

/// Plain ESN pathway: each input is the one-element drive.
StateMatrix run_esn(std::span<const double> inputs, const ReservoirWeights& weights,
                    std::span<const double> x0 = {});

}  // namespace spike_esn
