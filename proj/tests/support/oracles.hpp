#pragma once
// Slow, independent reference computations. None of these call into the
// library; they are written the textbook way so a shared bug cannot hide.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<double>>;

// Gauss-Jordan with partial pivoting on a copy.
inline std::vector<double> solve(Dense a, std::vector<double> b) {
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
        if (a[p][c] == 0.0) throw std::runtime_error("oracle: singular");
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
    return b;
}

// Ridge weights from the primal normal equations (X X^T + mu I) w = X y.
// states[t][i] is neuron i at time t.
inline std::vector<double> ridge(const Dense& states, const std::vector<double>& y, double mu) {
    const std::size_t T = states.size();
    const std::size_t n = states.front().size();
    Dense a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            long double s = 0;
            for (std::size_t t = 0; t < T; ++t) s += static_cast<long double>(states[t][i]) * states[t][j];
            a[i][j] = static_cast<double>(s);
        }
        a[i][i] += mu;
        long double s = 0;
        for (std::size_t t = 0; t < T; ++t) s += static_cast<long double>(states[t][i]) * y[t];
        b[i] = static_cast<double>(s);
    }
    return solve(a, b);
}

inline Dense matmul(const Dense& a, const Dense& b) {
    const std::size_t n = a.size(), m = b.front().size(), k = b.size();
    Dense c(n, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

inline double norm_fro(const Dense& a) {
    double s = 0;
    for (const auto& row : a)
        for (double v : row) s += v * v;
    return std::sqrt(s);
}

// Gelfand's formula rho = lim ||A^k||^(1/k), evaluated by repeated squaring
// with renormalization: after s squarings the estimate uses k = 2^s.
inline double spectral_radius(Dense a, int squarings = 40) {
    double log_scale = 0.0;
    double k = 1.0;
    for (int s = 0; s < squarings; ++s) {
        const double f = norm_fro(a);
        if (f == 0.0) return 0.0;
        for (auto& row : a)
            for (double& v : row) v /= f;
        log_scale += std::log(f) / k;
        a = matmul(a, a);
        k *= 2.0;
    }
    return std::exp(log_scale + std::log(norm_fro(a)) / k);
}

inline double spectral_radius_2x2(double a, double b, double c, double d) {
    const std::complex<double> tr = a + d, det = a * d - b * c;
    const std::complex<double> disc = std::sqrt(tr * tr - 4.0 * det);
    return std::max(std::abs((tr + disc) / 2.0), std::abs((tr - disc) / 2.0));
}

// I(t) = sum_{s <= t} exp(-(t - s) / psi), straight from the definition.
inline std::vector<double> current(const std::vector<unsigned char>& bits, double psi) {
    const std::size_t n = bits.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t t = 1; t <= n; ++t) {
        long double acc = 0;
        for (std::size_t s = 1; s <= t; ++s)
            if (bits[s - 1]) acc += std::exp(-static_cast<long double>(t - s) / psi);
        out[t - 1] = static_cast<double>(acc);
    }
    return out;
}

}  // namespace oracle
