#include "shuttlesim/readout.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace shuttlesim::readout {

namespace {

// projector sum P rho P restricted to pair states matching pred(bit_a, bit_b)
MatrixXc project_pair(const MatrixXc& rho, int qa, int qb, int va, int vb) {
    const int dim = static_cast<int>(rho.rows());
    MatrixXc out = MatrixXc::Zero(dim, dim);
    const int ba = 1 << qa, bb = 1 << qb;
    for (int i = 0; i < dim; ++i) {
        bool ia = i & ba, ib = i & bb;
        if (ia != static_cast<bool>(va) || ib != static_cast<bool>(vb)) continue;
        for (int j = 0; j < dim; ++j) {
            bool ja = j & ba, jb = j & bb;
            if (ja != static_cast<bool>(va) || jb != static_cast<bool>(vb)) continue;
            out(i, j) = rho(i, j);
        }
    }
    return out;
}

MatrixXc collapse(const MatrixXc& rho, const ParityChannel& ch, Parity outcome) {
    if (outcome == Parity::Odd && ch.dephase_odd)
        return project_pair(rho, ch.qubit_a, ch.qubit_b, 0, 1) +
               project_pair(rho, ch.qubit_a, ch.qubit_b, 1, 0);
    // coherent subspace projection P rho P: even keeps |00><11| terms,
    // odd (when not dephased) keeps |01><10| terms
    const int dim = static_cast<int>(rho.rows());
    const bool want_even = outcome == Parity::Even;
    MatrixXc out = MatrixXc::Zero(dim, dim);
    const int ba = 1 << ch.qubit_a, bb = 1 << ch.qubit_b;
    for (int i = 0; i < dim; ++i) {
        if ((static_cast<bool>(i & ba) == static_cast<bool>(i & bb)) != want_even) continue;
        for (int j = 0; j < dim; ++j) {
            if ((static_cast<bool>(j & ba) == static_cast<bool>(j & bb)) != want_even) continue;
            out(i, j) = rho(i, j);
        }
    }
    return out;
}

}  // namespace

MatrixXc parity_branch(const MatrixXc& rho, const ParityChannel& ch, Parity recorded) {
    const Parity other = recorded == Parity::Even ? Parity::Odd : Parity::Even;
    MatrixXc correct = collapse(rho, ch, recorded);
    if (ch.flip_probability == 0.0) return correct;
    return (1.0 - ch.flip_probability) * correct + ch.flip_probability * collapse(rho, ch, other);
}

ParityResult parity_measure(const MatrixXc& rho, const ParityChannel& ch, CounterRng& rng) {
    MatrixXc even = parity_branch(rho, ch, Parity::Even);
    MatrixXc odd = parity_branch(rho, ch, Parity::Odd);
    double p_even = even.trace().real();
    double p_odd = odd.trace().real();
    double total = p_even + p_odd;
    if (total <= 0.0) throw std::invalid_argument("parity_measure: zero-trace state");
    p_even /= total;
    p_odd /= total;

    ParityResult res;
    if (rng.uniform() < p_even) {
        res.outcome = Parity::Even;
        res.probability = p_even;
        res.post_state = even / even.trace().real();
    } else {
        res.outcome = Parity::Odd;
        res.probability = p_odd;
        res.post_state = odd / odd.trace().real();
    }
    return res;
}

ConfusionMatrix::ConfusionMatrix(double m00, double m01, double m10, double m11) {
    m_[0][0] = m00;
    m_[0][1] = m01;
    m_[1][0] = m10;
    m_[1][1] = m11;
    for (int c = 0; c < 2; ++c) {
        if (std::abs(m_[0][c] + m_[1][c] - 1.0) > 1e-9)
            throw std::invalid_argument("ConfusionMatrix: columns must sum to 1");
        for (int r = 0; r < 2; ++r)
            if (m_[r][c] < 0.0 || m_[r][c] > 1.0)
                throw std::invalid_argument("ConfusionMatrix: entries must be in [0,1]");
    }
}

ConfusionMatrix ConfusionMatrix::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open confusion matrix: " + path);
    nlohmann::json j;
    in >> j;
    auto m = j.at("matrix");
    return ConfusionMatrix(m[0][0], m[0][1], m[1][0], m[1][1]);
}

bool ConfusionMatrix::invertible() const {
    return std::abs(m_[0][0] * m_[1][1] - m_[0][1] * m_[1][0]) > 1e-12;
}

std::array<double, 2> apply_confusion(const std::array<double, 2>& p, const ConfusionMatrix& m) {
    return {m(0, 0) * p[0] + m(0, 1) * p[1], m(1, 0) * p[0] + m(1, 1) * p[1]};
}

CorrectedProbs correct_readout(const std::array<double, 2>& p, const ConfusionMatrix& m) {
    double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(det) <= 1e-12)
        throw std::invalid_argument("correct_readout: singular confusion matrix");
    CorrectedProbs out;
    out.p0 = (m(1, 1) * p[0] - m(0, 1) * p[1]) / det;
    out.p1 = (-m(1, 0) * p[0] + m(0, 0) * p[1]) / det;
    if (out.p0 < 0.0 || out.p0 > 1.0 || out.p1 < 0.0 || out.p1 > 1.0) {
        out.clamped = true;
        out.p0 = std::min(1.0, std::max(0.0, out.p0));
        out.p1 = std::min(1.0, std::max(0.0, out.p1));
        double s = out.p0 + out.p1;
        if (s > 0.0) {
            out.p0 /= s;
            out.p1 /= s;
        }
    }
    return out;
}

double parity_readout_fidelity(double p1, double p0) { return 0.5 * (p1 + p0); }

namespace {

// one pair of the feedback loop as a classical parity automaton;
// returns (kept, true parity odd after sequence)
std::pair<bool, bool> run_pair(const InitKnobs& k, CounterRng& rng) {
    bool odd = !rng.bernoulli(k.initial_even_prob);
    bool recorded_odd = rng.bernoulli(k.parity_error) ? !odd : odd;
    if (!recorded_odd) {
        if (!rng.bernoulli(k.feedback_x_error)) odd = !odd;  // conditional X
    }
    bool recorded2_odd = rng.bernoulli(k.parity_error) ? !odd : odd;
    return {recorded2_odd, odd};
}

double pair_keep_probability(const InitKnobs& k) {
    // enumerate initial parity x first record x feedback success x second record
    double p = 0.0;
    for (int odd0 = 0; odd0 < 2; ++odd0) {
        double p0 = odd0 ? 1.0 - k.initial_even_prob : k.initial_even_prob;
        for (int flip1 = 0; flip1 < 2; ++flip1) {
            double p1 = flip1 ? k.parity_error : 1.0 - k.parity_error;
            bool recorded_odd = flip1 ? !odd0 : static_cast<bool>(odd0);
            for (int fail = 0; fail < 2; ++fail) {
                double p2 = 1.0;
                bool odd = odd0;
                if (!recorded_odd) {
                    p2 = fail ? k.feedback_x_error : 1.0 - k.feedback_x_error;
                    if (!fail) odd = !odd;
                } else if (fail) {
                    continue;  // no X applied, no failure branch
                }
                // second record odd with prob (1-e) if odd else e
                double keep = odd ? 1.0 - k.parity_error : k.parity_error;
                p += p0 * p1 * p2 * keep;
            }
        }
    }
    return p;
}

}  // namespace

double initialize_keep_probability(const InitKnobs& knobs) {
    double p = pair_keep_probability(knobs);
    return p * p;  // both pairs must post-select odd
}

InitResult initialize_sequence(const InitKnobs& knobs, CounterRng& rng) {
    InitResult res;
    res.attempts = 1;

    auto [kept12, odd12] = run_pair(knobs, rng);
    auto [kept56, odd56] = run_pair(knobs, rng);
    res.kept = kept12 && kept56;

    // adiabatic map sends a truly odd pair to spins (1,0); a kept-but-even
    // pair or a failed map leaves the pair in (0,0)
    int q1 = 0, q2 = 0, q5 = 0, q6 = 0;
    if (odd12 && !rng.bernoulli(knobs.adiabatic_error)) q1 = 1;
    if (odd56 && !rng.bernoulli(knobs.adiabatic_error)) q5 = 1;
    q5 ^= 1;  // final X on Q5

    res.state = Eigen::VectorXcd::Zero(16);
    int idx = q1 | (q2 << 1) | (q5 << 2) | (q6 << 3);
    res.state(idx) = 1.0;
    return res;
}

}  // namespace shuttlesim::readout
