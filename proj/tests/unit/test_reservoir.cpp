#include "spike_esn/error.hpp"
#include "spike_esn/reservoir.hpp"
#include "spike_esn/simd.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace spike_esn;

namespace {

oracle::Dense to_dense(const Matrix& m) {
    oracle::Dense d(m.rows(), std::vector<double>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
    return d;
}

ReservoirConfig config(std::uint64_t seed, std::size_t n_res = 100) {
    ReservoirConfig c;
    c.n_res = n_res;
    c.seed = seed;
    return c;
}

double dist(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("spectral radius small cases") {
    Matrix d(2, 2);
    d << 0.5, 0.0, 0.0, -0.9;
    CHECK(spectral_radius(d) == doctest::Approx(0.9).epsilon(1e-14));
    CHECK(spectral_radius(Matrix::Zero(4, 4)) == 0.0);
    Matrix r(2, 2);
    r << 0.0, 1.0, -1.0, 0.0;
    CHECK(spectral_radius(r) == doctest::Approx(oracle::spectral_radius_2x2(0, 1, -1, 0)).epsilon(1e-14));
    CHECK(spectral_radius(r) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("spectral radius agrees with the Gelfand oracle") {
    Engine rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        Matrix m(12, 12);
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = uniform(rng, -1, 1);
        CHECK(spectral_radius(m) == doctest::Approx(oracle::spectral_radius(to_dense(m))).epsilon(1e-8));
    }
}

TEST_CASE("internal weights hit the target radius") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto w = gen_internal_weights(config(seed));
        CHECK(std::fabs(spectral_radius(w) - 0.9) <= 0.9e-6);
        CHECK(std::fabs(oracle::spectral_radius(to_dense(w)) - 0.9) <= 1e-6);
    }
}

TEST_CASE("internal weights are deterministic and sparse") {
    auto a = gen_internal_weights(config(17));
    auto b = gen_internal_weights(config(17));
    CHECK(a == b);
    CHECK(a != gen_internal_weights(config(18)));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        double density = structural_density(gen_internal_weights(config(seed)));
        CHECK(std::fabs(density - 0.1) <= 0.01);
    }
}

TEST_CASE("full density at eta = 1") {
    auto c = config(4, 2);
    c.eta = 1.0;
    auto w = gen_internal_weights(c);
    CHECK(structural_density(w) == 1.0);
}

TEST_CASE("reservoir config validation") {
    auto c = config(0);
    c.rho = 0.0;
    CHECK_THROWS_AS(c.validate(), Error);
    c = config(0);
    c.eta = 0.0;
    CHECK_THROWS_AS(c.validate(), Error);
    c = config(0);
    c.n_res = 0;
    CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("make_reservoir shapes and input scale") {
    auto w = make_reservoir(config(8), 100);
    CHECK(w.n_res() == 100);
    CHECK(w.input_width() == 100);
    CHECK(w.w_in.cwiseAbs().maxCoeff() <= 0.8);
    CHECK(w.realized_radius == doctest::Approx(0.9).epsilon(1e-6));
    CHECK(w.realized_sparsity == structural_density(w.w_res));
}

TEST_CASE("update_state examples") {
    auto w = make_reservoir(config(1, 10), 5);
    std::vector<double> zero_x(10, 0.0), zero_d(5, 0.0);
    CHECK(update_state(zero_x, zero_d, w) == zero_x);

    ReservoirWeights one;
    one.w_in = Matrix::Zero(1, 4);
    one.w_in(0, 0) = 1.0;
    one.w_res = Matrix::Zero(1, 1);
    std::vector<double> x{0.0}, d{1.0, 0.0, 0.0, 0.0};
    CHECK(update_state(x, d, one)[0] == doctest::Approx(0.761594155955764888).epsilon(1e-15));

    CHECK_THROWS_AS(update_state(x, zero_d, one), Error);
}

TEST_CASE("identity activation is the affine map") {
    Engine rng(12);
    for (int rep = 0; rep < 20; ++rep) {
        ReservoirWeights w;
        w.w_in = Matrix(3, 3);
        w.w_res = Matrix(3, 3);
        for (Eigen::Index i = 0; i < 9; ++i) {
            w.w_in.data()[i] = uniform(rng, -2, 2);
            w.w_res.data()[i] = uniform(rng, -2, 2);
        }
        std::vector<double> x(3), d(3);
        for (auto& v : x) v = uniform(rng, -1, 1);
        for (auto& v : d) v = uniform(rng, -1, 1);
        auto out = update_state(x, d, w, Activation::identity);
        for (int i = 0; i < 3; ++i) {
            double ref = 0;
            for (int j = 0; j < 3; ++j) ref += w.w_in(i, j) * d[j] + w.w_res(i, j) * x[j];
            CHECK(out[i] == doctest::Approx(ref).epsilon(1e-14));
        }
    }
}

TEST_CASE("states stay inside (-1, 1)") {
    auto w = make_reservoir(config(2), 1);
    Engine rng(6);
    std::vector<double> u(300);
    for (auto& v : u) v = uniform(rng, -1, 1);
    auto states = run_esn(u, w);
    CHECK(states.count() == 300);
    for (double v : states.data()) REQUIRE(std::fabs(v) < 1.0);
}

TEST_CASE("constant zero input keeps the zero state") {
    auto w = make_reservoir(config(2), 1);
    auto states = run_esn(std::vector<double>(50, 0.0), w);
    for (double v : states.data()) CHECK(v == 0.0);
}

TEST_CASE("run_spike shape, determinism and difference from esn") {
    EncoderParams enc;
    enc.n_sam = 20;
    enc.psi = 50;
    enc.norm = {0, 1};
    enc.seed = 3;
    auto w = make_reservoir(config(5, 30), 20);
    std::vector<double> u(40);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = 0.5 + 0.4 * std::sin(0.3 * i);
    std::vector<SpikeTrain> trains;
    auto a = run_spike(u, enc, w, streams::encoder_train, &trains);
    auto b = run_spike(u, enc, w, streams::encoder_train);
    CHECK(a.count() == 40);
    CHECK(a.dim() == 30);
    CHECK(trains.size() == 40);
    CHECK(a == b);

    enc.n_sam = 1;
    auto w1 = make_reservoir(config(5, 30), 1);
    CHECK(run_spike(u, enc, w1, streams::encoder_train) != run_esn(u, w1));
}

TEST_CASE("echo state: initial conditions are forgotten") {
    EncoderParams enc;
    enc.norm = {0, 1};
    enc.seed = 21;
    // Mild drive so the states stay off the tanh rails.
    enc.psi = 10.0;
    auto rc = config(21);
    rc.input_scale = 0.05;
    auto w = make_reservoir(rc, enc.n_sam);
    std::vector<double> u(200);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = 0.5 + 0.45 * std::sin(0.05 * i);
    auto drives = encode_drives(u, enc, streams::encoder_train);
    Engine rng(1);
    std::vector<double> xa(100), xb(100);
    for (auto& v : xa) v = uniform(rng, -1, 1);
    for (auto& v : xb) v = uniform(rng, -1, 1);
    auto sa = run_drives(drives, w, xa);
    auto sb = run_drives(drives, w, xb);
    CHECK(sa.mean_abs() < 0.5);
    CHECK(dist(sa.state(199), sb.state(199)) > 0.0);
    CHECK(dist(sa.state(199), sb.state(199)) < 1e-3 * dist(xa, xb));
}

TEST_CASE("kernels give matching states on every isa") {
    const auto before = simd::active_isa();
    auto w = make_reservoir(config(9), 100);
    EncoderParams enc;
    enc.norm = {0, 1};
    enc.seed = 4;
    std::vector<double> u(60);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = 0.5 + 0.5 * std::cos(0.2 * i);
    simd::set_active_isa(simd::Isa::scalar);
    auto ref = run_spike(u, enc, w, streams::encoder_train);
    for (auto isa : simd::available_isas()) {
        simd::set_active_isa(isa);
        auto got = run_spike(u, enc, w, streams::encoder_train);
        for (std::size_t i = 0; i < ref.data().size(); ++i) REQUIRE(std::fabs(got.data()[i] - ref.data()[i]) < 1e-10);
    }
    simd::set_active_isa(before);
}

TEST_CASE("state matrix helpers") {
    StateMatrix s(2);
    s.append(std::vector<double>{1, -2});
    s.append(std::vector<double>{3, 4});
    s.append(std::vector<double>{-5, 6});
    CHECK(s.count() == 3);
    CHECK(s.mean_abs() == doctest::Approx(21.0 / 6.0));
    auto cols = s.to_columns();
    CHECK(cols.rows() == 2);
    CHECK(cols(1, 2) == 6);
    CHECK(StateMatrix::from_columns(cols) == s);
    auto tail = s.slice(1, 2);
    CHECK(tail.count() == 2);
    CHECK(tail.state(0)[0] == 3);
    CHECK(s.rows_view()(2, 0) == -5);
    CHECK_THROWS_AS(s.append(std::vector<double>{1}), Error);
    CHECK_THROWS_AS(s.slice(2, 5), Error);
}
