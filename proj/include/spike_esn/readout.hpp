#pragma once

// Ridge-regression readout: w_out minimizes
//   || y - w_out X ||^2 + mu || w_out ||^2,
// i.e. w_out = y X^T (X X^T + mu I)^{-1}, evaluated with a pivoted LDL^T solve.
// When there are fewer states than neurons (T < n_res) the equivalent
// T x T form w_out = ((X^T X + mu I)^{-1} y^T)^T X^T is solved instead; at
// mu = 0 that is the minimum-norm (pseudoinverse) interpolant.

#include "spike_esn/reservoir.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace spike_esn {

/// 1e-8, the usual ridge coefficient for these models.
inline constexpr double default_ridge_mu = 1e-8;

struct Readout {
    std::vector<double> w_out;
    double mu = default_ridge_mu;

    std::size_t dim() const noexcept { return w_out.size(); }
};

/// Throws Error(singular_system) when mu == 0 and the system is rank deficient.
Readout fit_ridge(const StateMatrix& states, std::span<const double> targets, double mu = default_ridge_mu);

/// y(t) = sum_i w_i x_i(t).
std::vector<double> predict(const Readout& readout, const StateMatrix& states);

/// || (X X^T + mu I) w^T - X y^T ||_2.
double normal_equation_residual(const StateMatrix& states, std::span<const double> targets, const Readout& readout);

/// || y - w X ||^2 + mu || w ||^2.
double ridge_objective(const StateMatrix& states, std::span<const double> targets,
                       std::span<const double> w_out, double mu);

/// Number of weights with |w| > threshold.
std::size_t count_significant(const Readout& readout, double threshold);

}  // namespace spike_esn
