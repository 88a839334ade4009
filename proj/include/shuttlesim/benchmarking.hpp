#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shuttlesim/clifford.hpp"
#include "shuttlesim/numerics.hpp"
#include "shuttlesim/rng.hpp"

namespace shuttlesim::benchmarking {

// CPTP map on a two-qubit density matrix
using Channel = std::function<Matrix4c(const Matrix4c&)>;

Channel identity_channel();
Channel depolarizing_channel(double p);  // rho -> p rho + (1-p) I/4

// Quasistatic diagonal-phase channel: average over x ~ N(0,1) of the unitary
// diag(1, e^{-2pi i x w1}, e^{-2pi i x w2}, e^{-2pi i x (w1+w3)}).
Channel quasistatic_phase_channel(double w1, double w2, double w3, int gh_order = 64);

// Average gate fidelity of a channel against a target unitary.
double channel_average_fidelity(const Channel& e, const Matrix4c& u_target);

struct InterleavedGate {
    Matrix4c ideal = Matrix4c::Identity();
    Channel error;  // applied after the ideal unitary
};

struct RBPoint {
    int length = 0;
    double mean = 0.0;
    double stderr_ = 0.0;
    int n_sequences = 0;
    int n_shots = 0;  // kept shots per sequence (post-selection applied)
};

struct RBConfig {
    std::vector<int> lengths;
    int sequences_per_length = 120;
    int shots = 800;
    double keep_probability = 1.0;  // Bernoulli post-selection mask on shots
    uint64_t seed = 1;
    bool sample_shots = true;  // false: record exact return probabilities
};

// Two-qubit RB: random Clifford words, recovery to |00>, noisy density-matrix
// simulation, binomial shot sampling with post-selection.
std::vector<RBPoint> rb_run(const Channel& noise_per_clifford, const RBConfig& cfg,
                            const std::optional<InterleavedGate>& interleave = std::nullopt);

struct RBFit {
    double amplitude = 0.0;   // A
    double offset = 0.0;      // B
    double p = 1.0;           // depolarizing parameter
    MatrixXd covariance;
    double p_stderr = 0.0;
    bool degenerate = false;  // flat data: A/B not separable
};

// Weighted nonlinear least squares of A p^L + B; variance floor 1/(4 shots).
RBFit fit_rb(const std::vector<RBPoint>& data);

double clifford_fidelity(double p_t);                         // (1 + 3 p)/4
double interleaved_cz_fidelity(double p_cz, double p_ref);    // (1 + 3 p_cz/p_ref)/4
bool interleaved_ratio_exceeds_one(double p_cz, double p_ref);
double composed_clifford_fidelity(double r_cz, double r_sq);  // 1 - (1.5 r_cz + 8.25 r_sq)

struct DecayFit {
    double amplitude = 0.0;
    double frequency = 0.0;  // cycles per unit of t
    double phase = 0.0;
    double offset = 0.0;
    double t2 = 0.0;         // same unit as t; Gaussian exponent fixed at 2
    bool t2_unbounded = false;
    MatrixXd covariance;
};

// Fit A exp(-(t/T2)^2) sin(2 pi f t + phi) + C, frequency seeded by FFT.
DecayFit fit_gaussian_decay(const std::vector<double>& t, const std::vector<double>& y);

// Nonparametric bootstrap standard deviation of an estimator over records.
double bootstrap(const std::function<double(const std::vector<double>&)>& estimator,
                 const std::vector<double>& records, int resamples, uint64_t seed = 1);

void write_rb_csv(const std::vector<RBPoint>& data, const std::string& path);
std::vector<RBPoint> read_rb_csv(const std::string& path);

}  // namespace shuttlesim::benchmarking
