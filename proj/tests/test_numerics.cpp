#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "shuttlesim/numerics.hpp"
#include "shuttlesim/rng.hpp"

using namespace shuttlesim;

TEST_CASE("monotone cubic passes through knots and stays monotone") {
    std::vector<double> x{0.0, 1.0, 2.0, 3.5, 5.0};
    std::vector<double> y{0.0, 0.5, 0.6, 2.0, 8.0};
    MonotoneCubic f(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(f(x[i]) == doctest::Approx(y[i]).epsilon(1e-12));
    double prev = f(0.0);
    for (double t = 0.01; t <= 5.0; t += 0.01) {
        double v = f(t);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("monotone cubic refuses extrapolation") {
    MonotoneCubic f({0.0, 1.0}, {0.0, 1.0});
    CHECK_THROWS_AS(f(-0.1), std::out_of_range);
    CHECK_THROWS_AS(f(1.1), std::out_of_range);
    CHECK(f.in_hull(0.5));
    CHECK_FALSE(f.in_hull(2.0));
}

TEST_CASE("gauss-hermite quadrature reproduces gaussian moments") {
    GaussHermite gh(32);
    double sigma = 0.7;
    CHECK(gh.gaussian_expectation(sigma, [](double x) { return x * x; }) ==
          doctest::Approx(sigma * sigma).epsilon(1e-10));
    CHECK(gh.gaussian_expectation(sigma, [](double x) { return std::cos(x); }) ==
          doctest::Approx(std::exp(-0.5 * sigma * sigma)).epsilon(1e-10));
    CHECK(gh.gaussian_expectation(sigma, [](double) { return 1.0; }) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gauss-hermite matches monte carlo on a smooth integrand") {
    GaussHermite gh(64);
    double q = gh.gaussian_expectation(1.3, [](double x) { return std::cos(2.0 * x) * x * x; });
    CounterRng rng(7);
    double acc = 0.0;
    const int n = 400000;
    for (int i = 0; i < n; ++i) {
        double x = 1.3 * rng.normal();
        acc += std::cos(2.0 * x) * x * x;
    }
    CHECK(q == doctest::Approx(acc / n).epsilon(0.02));
}

TEST_CASE("levenberg-marquardt recovers exact exponential parameters") {
    std::vector<double> ls{1, 2, 4, 8, 16, 32, 64};
    VectorXd y(static_cast<int>(ls.size())), w(static_cast<int>(ls.size()));
    double a = 0.7, p = 0.93, b = 0.25;
    for (int i = 0; i < y.size(); ++i) {
        y(i) = a * std::pow(p, ls[i]) + b;
        w(i) = 1.0;
    }
    auto model = [&](const VectorXd& q, int i) { return q(0) * std::pow(q(1), ls[i]) + q(2); };
    VectorXd initial(3);
    initial << 0.5, 0.9, 0.3;
    auto fit = levenberg_marquardt(model, y, w, initial);
    CHECK(fit.converged);
    CHECK(fit.params(0) == doctest::Approx(a).epsilon(1e-7));
    CHECK(fit.params(1) == doctest::Approx(p).epsilon(1e-7));
    CHECK(fit.params(2) == doctest::Approx(b).epsilon(1e-7));
}

TEST_CASE("hermitian propagator is unitary and matches the diagonal case") {
    Matrix4c h = Matrix4c::Zero();
    h(0, 0) = 1.0e6 * kTwoPi;
    h(1, 1) = -2.0e6 * kTwoPi;
    Matrix4c u = expm_herm(h, 1e-6);
    CHECK(max_abs(u * u.adjoint() - Matrix4c::Identity()) < 1e-12);
    CHECK(std::abs(u(0, 0) - std::exp(Complex(0.0, -kTwoPi))) < 1e-10);
    CHECK(std::abs(u(1, 1) - std::exp(Complex(0.0, 2.0 * kTwoPi))) < 1e-10);

    Matrix4c g = Matrix4c::Random();
    g = Matrix4c(0.5 * (g + g.adjoint())) * 1e6;
    Matrix4c ug = expm_herm(g, 3.3e-7);
    CHECK(max_abs(ug * ug.adjoint() - Matrix4c::Identity()) < 1e-10);
}

TEST_CASE("counter rng is reproducible and stream separated") {
    CounterRng a(42, 1), b(42, 1), c(42, 2);
    for (int i = 0; i < 100; ++i) {
        double va = a.uniform();
        CHECK(va == b.uniform());
        CHECK(va != c.uniform());
        CHECK(va >= 0.0);
        CHECK(va < 1.0);
    }
}

TEST_CASE("counter rng normal moments") {
    CounterRng rng(5);
    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double x = rng.normal();
        s += x;
        s2 += x * x;
    }
    CHECK(std::abs(s / n) < 0.01);
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
}
