#pragma once

#include <array>
#include <string>

#include "shuttlesim/numerics.hpp"
#include "shuttlesim/rng.hpp"

namespace shuttlesim::readout {

enum class Parity { Even, Odd };

// Pauli-spin-blockade parity readout of a qubit pair inside an n-qubit
// register. Even = both spins parallel ({|00>, |11>} of the pair); odd
// outcomes optionally dephase completely in the {|01>, |10>} basis (S-T0
// mixing leaves the antiparallel states indistinguishable).
struct ParityChannel {
    int qubit_a = 0;
    int qubit_b = 1;
    bool dephase_odd = true;
    double flip_probability = 0.0;  // classical mislabeling of the outcome
};

struct ParityResult {
    Parity outcome = Parity::Even;
    MatrixXc post_state;  // normalized density matrix
    double probability = 0.0;
};

// Projective parity measurement on a density matrix (dim = 2^n).
ParityResult parity_measure(const MatrixXc& rho, const ParityChannel& ch, CounterRng& rng);

// Deterministic branch application: unnormalized conditional state for the
// given recorded outcome, including mislabeling and odd-subspace dephasing.
// The returned trace is the branch probability.
MatrixXc parity_branch(const MatrixXc& rho, const ParityChannel& ch, Parity recorded);

// 2x2 column-stochastic confusion matrix M[measured][prepared].
class ConfusionMatrix {
public:
    ConfusionMatrix() = default;
    ConfusionMatrix(double m00, double m01, double m10, double m11);
    static ConfusionMatrix from_json_file(const std::string& path);

    double operator()(int measured, int prepared) const { return m_[measured][prepared]; }
    bool invertible() const;

private:
    std::array<std::array<double, 2>, 2> m_{{{1, 0}, {0, 1}}};
};

struct CorrectedProbs {
    double p0 = 0.0;
    double p1 = 0.0;
    bool clamped = false;  // raw inversion left [0,1] and was renormalized
};

std::array<double, 2> apply_confusion(const std::array<double, 2>& true_probs,
                                      const ConfusionMatrix& m);
CorrectedProbs correct_readout(const std::array<double, 2>& measured_probs,
                               const ConfusionMatrix& m);

// F = (P1 + P0) / 2
double parity_readout_fidelity(double p1, double p0);

struct InitKnobs {
    double parity_error = 0.0;      // per parity check mislabel probability
    double feedback_x_error = 0.0;  // conditional X gate failure probability
    double adiabatic_error = 0.0;   // spin-map failure probability per pair
    double initial_even_prob = 0.5; // thermal parity before feedback
};

struct InitResult {
    Eigen::VectorXcd state;  // 16-dim |Q6 Q5 Q2 Q1> register, bit 0 = Q1
    bool kept = false;
    int attempts = 0;
};

// Initialization-by-feedback sequence: parity check on both pairs,
// conditional X, recheck, post-select odd, adiabatic map, final X on Q5.
// Ideal knobs give |1000> on (Q1,Q2,Q5,Q6) with kept = true.
InitResult initialize_sequence(const InitKnobs& knobs, CounterRng& rng);

// Analytic keep probability for the same knob model (oracle for tests).
double initialize_keep_probability(const InitKnobs& knobs);

}  // namespace shuttlesim::readout
