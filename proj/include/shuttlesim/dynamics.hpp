#pragma once

#include <array>
#include <string>
#include <vector>

#include "shuttlesim/exchange.hpp"
#include "shuttlesim/numerics.hpp"

namespace shuttlesim::dynamics {

// One stage of a piecewise-linear exchange trace. J ramps linearly from
// j_start to j_end over the stage; delta_ez is held within the stage.
struct Segment {
    double duration_ns = 0.0;
    double j_start_hz = 0.0;
    double j_end_hz = 0.0;
    double delta_ez_hz = 0.0;
    std::string label;
};

struct ExchangeSchedule {
    std::vector<Segment> segments;

    double total_time_ns() const;
    double integral_j_dt() const;  // dimensionless (Hz * s)
    void validate() const;         // throws on nonpositive durations / negative J
};

// H = dEz/2 (s1z - s2z) + J/4 (s1x s2x + s1y s2y + s1z s2z), angular frequency,
// basis |dd>, |ud>, |du>, |uu> (first symbol = qubit 1 = low index bit).
Matrix4c hamiltonian(double delta_ez_hz, double j_hz);

// Time-ordered propagator via exact sub-step matrix exponentials; the sub-step
// count is doubled until successive results agree to < 1e-9 per entry.
// noise_offset_hz shifts delta_ez quasistatically over the whole schedule.
Matrix4c evolve(const ExchangeSchedule& s, double noise_offset_hz = 0.0);

Matrix4c ideal_cz();

// F = (|tr(U_ideal^-1 U_exp)|^2 + d) / (d(d+1)) for a fixed experimental unitary.
double average_gate_fidelity(const Matrix4c& u_exp, const Matrix4c& u_ideal, int d = 4);

// Infidelity vs CZ after optimizing virtual single-qubit Z phases (the part of
// the error that calibration cannot remove: flip-flop leakage plus residual
// conditional phase).
double coherent_cz_infidelity(const Matrix4c& u);

// Conditional phase phi_00 + phi_11 - phi_01 - phi_10 of the diagonal, wrapped
// to (-2pi, 2pi].
double conditional_phase(const Matrix4c& u);

struct CzConfig {
    double load_ns = 2.0;
    double approach_ns = 2.0;
    double interact_ns = 25.0;
    double approach_freq_hz = 125e6;
    double interact_freq_hz = 10e6;
    double c_load = 0.4;
    double c_mid = 0.65;
    double c_peak = 0.9;
    double delta_ez_hz = 83e6;
    const exchange::ExchangeModel* j_of_c = nullptr;
    bool calibrate_phase = true;   // scale J so the conditional phase is exactly pi
    double sample_dt_ns = 0.05;    // segment discretization of J(c(t))
};

// Default staging 2+2+25+25+2+2 ns (58 ns total): load, fast approach at
// 125 MHz, adiabatic interaction at 10 MHz, symmetric return.
// Throws if a stage's cycle advance is inconsistent with its frequency.
ExchangeSchedule cz_schedule(const CzConfig& cfg);

// Conveyor cycle position at time t_ns within the schedule of cz_schedule.
double cz_cycle_at(const CzConfig& cfg, double t_ns);

// sqrt( ln(0.401 t_m_to / t_e) / ln(0.401 t_m_from / t_e) )
double sigma_rescale(double t_e_s, double t_m_from_s, double t_m_to_s);

// Integrated quasistatic phase-noise weights of the three conditional
// frequencies f1 = f(Q5, Q2 down), f2 = f(Q2, Q5 down), f3 = f(Q5, Q2 up).
// w_i = rescale * int sigma_i(c(t)) dt with sigma_i = sqrt(2)/(2 pi T2*_i),
// in units of cycles; the noise variable x is standard normal.
struct NoiseModel {
    double w1_cycles = 0.0;
    double w2_cycles = 0.0;
    double w3_cycles = 0.0;
};

NoiseModel build_noise_model(const exchange::CoherenceTable& t2, const CzConfig& cfg,
                             double t_m_from_s, double t_m_to_s);

// Gauss-Hermite average of |tr(U_ideal^-1 U_exp(x))|^2 over x ~ N(0,1) with
// U_ideal^-1 U_exp(0) = diag(base_phases); order doubled until dF < 1e-8.
double noise_averaged_fidelity(const Eigen::Vector4cd& base_phases, const NoiseModel& nm);

// Convenience: fully calibrated gate, so base phases are all 1.
double noise_averaged_fidelity(const NoiseModel& nm);

// Echo-decoupled controlled-phase experiment: Rx(pi/2) on Q2, exchange for
// one wait time, Rx(pi) on both, exchange again, Rx(pi/2) on Q2; returns
// P(parallel) per wait time. The fringe frequency versus the wait time is J.
std::vector<double> dcphase_trace(double j_hz, double delta_ez_hz,
                                  const std::vector<double>& wait_times_ns, int other_state);

// Dominant nonzero frequency of a uniformly sampled trace (Hz given dt in ns).
double dominant_frequency_hz(const std::vector<double>& trace, double dt_ns);

// f_0(x) +- J/2 depending on the other spin state (up shifts by +J/2).
double edsr_frequency(double x_nm, const MonotoneCubic& f0_of_x, int other_spin_state,
                      double j_hz);

}  // namespace shuttlesim::dynamics
