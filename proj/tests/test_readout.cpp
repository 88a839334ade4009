#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "shuttlesim/readout.hpp"

using namespace shuttlesim;
using namespace shuttlesim::readout;

namespace {

// two-qubit register states for pair (0,1)
MatrixXc pure(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

}  // namespace

TEST_CASE("parity branches split even and odd subspaces") {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(0) = std::sqrt(0.3);  // |00>
    v(1) = std::sqrt(0.2);  // |01>
    v(2) = std::sqrt(0.1);  // |10>
    v(3) = std::sqrt(0.4);  // |11>
    MatrixXc rho = pure(v);
    ParityChannel ch;
    MatrixXc even = parity_branch(rho, ch, Parity::Even);
    MatrixXc odd = parity_branch(rho, ch, Parity::Odd);
    CHECK(even.trace().real() == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(odd.trace().real() == doctest::Approx(0.3).epsilon(1e-12));
    // even branch keeps the |00>-|11> coherence
    CHECK(std::abs(even(0, 3)) == doctest::Approx(std::sqrt(0.3 * 0.4)).epsilon(1e-12));
    // odd branch is fully dephased between |01> and |10>
    CHECK(std::abs(odd(1, 2)) < 1e-12);
    CHECK(odd(1, 1).real() == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("coherent odd branch keeps antiparallel coherence when dephasing is off") {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(1) = std::sqrt(0.5);
    v(2) = std::sqrt(0.5);
    ParityChannel ch;
    ch.dephase_odd = false;
    MatrixXc odd = parity_branch(pure(v), ch, Parity::Odd);
    CHECK(std::abs(odd(1, 2)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("mislabeling mixes the branches") {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(0) = 1.0;  // definitely even
    ParityChannel ch;
    ch.flip_probability = 0.1;
    MatrixXc even = parity_branch(pure(v), ch, Parity::Even);
    MatrixXc odd = parity_branch(pure(v), ch, Parity::Odd);
    CHECK(even.trace().real() == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(odd.trace().real() == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("sampled parity measurement matches branch probabilities") {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(0) = std::sqrt(0.6);
    v(1) = std::sqrt(0.4);
    MatrixXc rho = pure(v);
    ParityChannel ch;
    CounterRng rng(77);
    int even_count = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        auto r = parity_measure(rho, ch, rng);
        CHECK(std::abs(r.post_state.trace().real() - 1.0) < 1e-9);
        if (r.outcome == Parity::Even) {
            ++even_count;
            CHECK(r.probability == doctest::Approx(0.6).epsilon(1e-9));
        }
    }
    CHECK(std::abs(even_count / double(n) - 0.6) < 0.015);
}

TEST_CASE("confusion matrix round trip is exact") {
    auto m = ConfusionMatrix::from_json_file("fixtures/confusion_matrix.json");
    CHECK(m.invertible());
    std::array<double, 2> truth{0.37, 0.63};
    auto measured = apply_confusion(truth, m);
    auto corrected = correct_readout(measured, m);
    CHECK_FALSE(corrected.clamped);
    CHECK(corrected.p0 == doctest::Approx(truth[0]).epsilon(1e-12));
    CHECK(corrected.p1 == doctest::Approx(truth[1]).epsilon(1e-12));
}

TEST_CASE("correction clamps unphysical inputs and flags it") {
    ConfusionMatrix m(0.98, 0.02, 0.02, 0.98);
    auto corrected = correct_readout({1.0, 0.0}, m);
    CHECK(corrected.clamped);
    CHECK(corrected.p0 >= 0.0);
    CHECK(corrected.p1 >= 0.0);
    CHECK(corrected.p0 + corrected.p1 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("confusion matrix validates column stochasticity") {
    CHECK_THROWS(ConfusionMatrix(0.9, 0.2, 0.2, 0.8));
    CHECK_NOTHROW(ConfusionMatrix(0.9, 0.2, 0.1, 0.8));
}

TEST_CASE("parity readout fidelity is the mean of the two outcome fidelities") {
    CHECK(parity_readout_fidelity(0.9799, 0.9912) == doctest::Approx(0.98555).epsilon(1e-12));
}

TEST_CASE("ideal initialization yields the reference register state") {
    InitKnobs knobs;
    CounterRng rng(1);
    auto r = initialize_sequence(knobs, rng);
    CHECK(r.kept);
    REQUIRE(r.state.size() == 16);
    // |Q6 Q5 Q2 Q1> = |0001>: only Q1 excited
    for (int i = 0; i < 16; ++i) {
        double expect = (i == 1) ? 1.0 : 0.0;
        CHECK(std::abs(std::norm(r.state(i)) - expect) < 1e-12);
    }
}

TEST_CASE("keep probability: monte carlo agrees with the analytic oracle") {
    InitKnobs knobs;
    knobs.parity_error = 0.03;
    knobs.feedback_x_error = 0.05;
    knobs.initial_even_prob = 0.5;
    double analytic = initialize_keep_probability(knobs);
    CHECK(analytic > 0.0);
    CHECK(analytic <= 1.0);
    CounterRng rng(13);
    int kept = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i)
        if (initialize_sequence(knobs, rng).kept) ++kept;
    double frac = kept / double(n);
    double sigma = std::sqrt(analytic * (1.0 - analytic) / n);
    CHECK(std::abs(frac - analytic) < 4.0 * sigma + 1e-6);
}

TEST_CASE("keep probability degrades with parity error") {
    InitKnobs clean;
    InitKnobs noisy;
    noisy.parity_error = 0.1;
    CHECK(initialize_keep_probability(clean) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(initialize_keep_probability(noisy) < 1.0);
}
