#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "shuttlesim/benchmarking.hpp"
#include "shuttlesim/dynamics.hpp"

using namespace shuttlesim;
using namespace shuttlesim::benchmarking;

TEST_CASE("fidelity formulas match fixed numeric fixtures") {
    CHECK(clifford_fidelity(0.8024) == doctest::Approx(0.8518).epsilon(1e-9));
    CHECK(interleaved_cz_fidelity(0.9848 * 0.8024, 0.8024) == doctest::Approx(0.9886).epsilon(1e-9));
    CHECK(interleaved_ratio_exceeds_one(0.81, 0.80));
    CHECK_FALSE(interleaved_ratio_exceeds_one(0.79, 0.80));
    CHECK(composed_clifford_fidelity(0.0114, 0.001) == doctest::Approx(1.0 - (1.5 * 0.0114 + 8.25 * 0.001)).epsilon(1e-12));
}

TEST_CASE("depolarizing channel acts as advertised") {
    auto ch = depolarizing_channel(0.7);
    Matrix4c rho = Matrix4c::Zero();
    rho(0, 0) = 1.0;
    Matrix4c out = ch(rho);
    CHECK(std::abs(out(0, 0) - Complex(0.7 + 0.3 / 4.0)) < 1e-12);
    CHECK(std::abs(out(1, 1) - Complex(0.3 / 4.0)) < 1e-12);
    CHECK(std::abs(out.trace() - Complex(1.0)) < 1e-12);
    // average fidelity of depolarizing vs identity: p + (1 - p) / d with d=4
    CHECK(channel_average_fidelity(ch, Matrix4c::Identity()) ==
          doctest::Approx(0.7 + 0.3 / 4.0).epsilon(1e-10));
}

TEST_CASE("quasistatic phase channel matches the dynamics-side average") {
    dynamics::NoiseModel nm{0.012, 0.011, 0.013};
    auto ch = quasistatic_phase_channel(nm.w1_cycles, nm.w2_cycles, nm.w3_cycles);
    double f_channel = channel_average_fidelity(ch, Matrix4c::Identity());
    double f_direct = dynamics::noise_averaged_fidelity(nm);
    CHECK(f_channel == doctest::Approx(f_direct).epsilon(1e-7));
}

TEST_CASE("quasistatic phase channel matches a monte carlo average") {
    auto ch = quasistatic_phase_channel(0.02, 0.015, 0.01);
    Matrix4c plus = Matrix4c::Constant(0.25);  // |++><++|
    Matrix4c out = ch(plus);
    CounterRng rng(9);
    Matrix4c mc = Matrix4c::Zero();
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double x = rng.normal();
        Eigen::Vector4cd d;
        d << 1.0, std::exp(Complex(0.0, -kTwoPi * x * 0.02)),
            std::exp(Complex(0.0, -kTwoPi * x * 0.015)),
            std::exp(Complex(0.0, -kTwoPi * x * (0.02 + 0.01)));
        mc += d.asDiagonal() * plus * d.conjugate().asDiagonal();
    }
    mc /= double(n);
    CHECK(max_abs(out - mc) < 2e-3);
}

TEST_CASE("rb run with depolarizing noise recovers the injected p") {
    RBConfig cfg;
    cfg.lengths = {1, 2, 4, 8, 16, 32, 64};
    cfg.sequences_per_length = 30;
    cfg.shots = 300;
    cfg.seed = 21;
    double p_inj = 0.95;
    auto data = rb_run(depolarizing_channel(p_inj), cfg);
    REQUIRE(data.size() == cfg.lengths.size());
    for (const auto& pt : data) {
        CHECK(pt.n_sequences == 30);
        CHECK(pt.mean >= 0.0);
        CHECK(pt.mean <= 1.0);
    }
    auto fit = fit_rb(data);
    CHECK_FALSE(fit.degenerate);
    CHECK(std::abs(fit.p - p_inj) < 3.0 * std::max(fit.p_stderr, 1e-4));
    CHECK(std::abs(fit.p - p_inj) < 0.01);
}

TEST_CASE("rb with exact probabilities and no noise stays at one") {
    RBConfig cfg;
    cfg.lengths = {1, 4, 16};
    cfg.sequences_per_length = 8;
    cfg.sample_shots = false;
    cfg.seed = 4;
    auto data = rb_run(identity_channel(), cfg);
    for (const auto& pt : data) CHECK(pt.mean == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("interleaved rb recovers the interleaved depolarizing strength") {
    RBConfig cfg;
    cfg.lengths = {1, 2, 4, 8, 16, 32};
    cfg.sequences_per_length = 24;
    cfg.shots = 400;
    cfg.sample_shots = false;
    cfg.seed = 8;
    double p_ref = 0.97, p_gate = 0.985;
    auto ref = rb_run(depolarizing_channel(p_ref), cfg);
    InterleavedGate gate;
    gate.ideal = dynamics::ideal_cz();
    gate.error = depolarizing_channel(p_gate);
    auto inter = rb_run(depolarizing_channel(p_ref), cfg, gate);
    auto fr = fit_rb(ref);
    auto fi = fit_rb(inter);
    CHECK(fr.p == doctest::Approx(p_ref).epsilon(0.005));
    CHECK(fi.p / fr.p == doctest::Approx(p_gate).epsilon(0.005));
    double f_cz = interleaved_cz_fidelity(fi.p, fr.p);
    CHECK(f_cz == doctest::Approx((1.0 + 3.0 * p_gate) / 4.0).epsilon(0.005));
}

TEST_CASE("post-selection reduces kept shots without biasing the mean") {
    RBConfig cfg;
    cfg.lengths = {1, 8};
    cfg.sequences_per_length = 40;
    cfg.shots = 400;
    cfg.keep_probability = 0.5;
    cfg.seed = 12;
    auto data = rb_run(depolarizing_channel(0.96), cfg);
    for (const auto& pt : data) {
        CHECK(pt.n_shots < 400);
        CHECK(pt.n_shots > 100);
    }
}

TEST_CASE("gaussian decay fit recovers generated parameters") {
    double a = 0.45, f = 0.018, phi = 0.4, c = 0.5, t2 = 90.0;
    std::vector<double> t, y;
    CounterRng rng(31);
    for (int i = 0; i < 240; ++i) {
        double ti = i * 1.5;
        t.push_back(ti);
        y.push_back(a * std::exp(-std::pow(ti / t2, 2.0)) * std::sin(kTwoPi * f * ti + phi) + c +
                    0.004 * rng.normal());
    }
    auto fit = fit_gaussian_decay(t, y);
    CHECK_FALSE(fit.t2_unbounded);
    CHECK(fit.frequency == doctest::Approx(f).epsilon(0.01));
    CHECK(std::abs(fit.amplitude) == doctest::Approx(a).epsilon(0.05));
    CHECK(fit.t2 == doctest::Approx(t2).epsilon(0.1));
    CHECK(fit.offset == doctest::Approx(c).epsilon(0.02));
}

TEST_CASE("bootstrap standard deviation of the mean scales correctly") {
    CounterRng rng(40);
    std::vector<double> xs;
    for (int i = 0; i < 400; ++i) xs.push_back(rng.normal());
    auto mean = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / double(v.size());
    };
    double sd = bootstrap(mean, xs, 600, 5);
    CHECK(sd == doctest::Approx(1.0 / std::sqrt(400.0)).epsilon(0.25));
}

TEST_CASE("rb csv round trip preserves points") {
    RBConfig cfg;
    cfg.lengths = {1, 3, 9};
    cfg.sequences_per_length = 5;
    cfg.shots = 50;
    cfg.seed = 2;
    auto data = rb_run(depolarizing_channel(0.9), cfg);
    const char* path = "build_tmp_rb.csv";
    write_rb_csv(data, path);
    auto back = read_rb_csv(path);
    REQUIRE(back.size() == data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        CHECK(back[i].length == data[i].length);
        CHECK(back[i].mean == doctest::Approx(data[i].mean).epsilon(1e-9));
        CHECK(back[i].stderr_ == doctest::Approx(data[i].stderr_).epsilon(1e-6));
        CHECK(back[i].n_sequences == data[i].n_sequences);
    }
    std::remove(path);
}
