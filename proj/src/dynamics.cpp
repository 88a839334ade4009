#include "shuttlesim/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "shuttlesim/gates.hpp"

namespace shuttlesim::dynamics {

double ExchangeSchedule::total_time_ns() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration_ns;
    return t;
}

double ExchangeSchedule::integral_j_dt() const {
    double acc = 0.0;
    for (const auto& s : segments)
        acc += 0.5 * (s.j_start_hz + s.j_end_hz) * s.duration_ns * 1e-9;
    return acc;
}

void ExchangeSchedule::validate() const {
    for (const auto& s : segments) {
        if (s.duration_ns <= 0.0) throw std::invalid_argument("ExchangeSchedule: durations must be > 0");
        if (s.j_start_hz < 0.0 || s.j_end_hz < 0.0)
            throw std::invalid_argument("ExchangeSchedule: J must be >= 0");
    }
}

Matrix4c hamiltonian(double delta_ez_hz, double j_hz) {
    Matrix4c h = Matrix4c::Zero();
    const double ez = kTwoPi * delta_ez_hz;
    const double j = kTwoPi * j_hz;
    h(0, 0) = j / 4;
    h(1, 1) = -j / 4 + ez;
    h(2, 2) = -j / 4 - ez;
    h(3, 3) = j / 4;
    h(1, 2) = j / 2;
    h(2, 1) = j / 2;
    return h;
}

namespace {

Matrix4c evolve_with_steps(const ExchangeSchedule& s, double noise_offset_hz, int steps_per_ns) {
    Matrix4c u = Matrix4c::Identity();
    for (const auto& seg : s.segments) {
        int n = std::max(1, static_cast<int>(std::ceil(seg.duration_ns * steps_per_ns)));
        double dt = seg.duration_ns / n * 1e-9;
        for (int k = 0; k < n; ++k) {
            double frac = (k + 0.5) / n;  // midpoint J on each sub-step
            double j = seg.j_start_hz + frac * (seg.j_end_hz - seg.j_start_hz);
            u = expm_herm(hamiltonian(seg.delta_ez_hz + noise_offset_hz, j), dt) * u;
        }
    }
    return u;
}

}  // namespace

Matrix4c evolve(const ExchangeSchedule& s, double noise_offset_hz) {
    s.validate();
    if (s.segments.empty()) return Matrix4c::Identity();

    int steps = 4;
    Matrix4c prev = evolve_with_steps(s, noise_offset_hz, steps);
    for (int iter = 0; iter < 10; ++iter) {
        steps *= 2;
        Matrix4c next = evolve_with_steps(s, noise_offset_hz, steps);
        if (max_abs(next - prev) < 1e-9) return next;
        prev = next;
    }
    return prev;
}

Matrix4c ideal_cz() { return gates::cz(); }

double average_gate_fidelity(const Matrix4c& u_exp, const Matrix4c& u_ideal, int d) {
    if (gates::unitarity_defect(u_exp) > 1e-6 || gates::unitarity_defect(u_ideal) > 1e-6)
        throw std::invalid_argument("average_gate_fidelity: inputs must be unitary");
    Complex tr = (u_ideal.adjoint() * u_exp).trace();
    return (std::norm(tr) + d) / (static_cast<double>(d) * (d + 1));
}

double coherent_cz_infidelity(const Matrix4c& u) {
    // maximize |a + b e^{ia1} + c e^{ib1} + d e^{i(a1+b1)}| by coordinate ascent;
    // each 1-D step has the closed-form optimum of a two-phasor sum
    const Complex a = u(0, 0), b = u(1, 1), c = u(2, 2), d = -u(3, 3);
    double alpha = std::arg(a) - std::arg(b == Complex(0, 0) ? Complex(1, 0) : b);
    double beta = std::arg(a) - std::arg(c == Complex(0, 0) ? Complex(1, 0) : c);
    double best = 0.0;
    for (int it = 0; it < 200; ++it) {
        Complex eb = std::exp(Complex(0, beta));
        Complex p = a + c * eb, q = b + d * eb;
        alpha = std::arg(p) - std::arg(q == Complex(0, 0) ? Complex(1, 0) : q);
        Complex ea = std::exp(Complex(0, alpha));
        Complex r = a + b * ea, s = c + d * ea;
        beta = std::arg(r) - std::arg(s == Complex(0, 0) ? Complex(1, 0) : s);
        double val = std::abs(r + s * std::exp(Complex(0, beta)));
        if (std::abs(val - best) < 1e-15) { best = val; break; }
        best = val;
    }
    double f = (best * best + 4.0) / 20.0;
    return 1.0 - f;
}

double conditional_phase(const Matrix4c& u) {
    double phi = std::arg(u(0, 0)) + std::arg(u(3, 3)) - std::arg(u(1, 1)) - std::arg(u(2, 2));
    while (phi > kTwoPi) phi -= 2 * kTwoPi;
    while (phi <= -kTwoPi) phi += 2 * kTwoPi;
    return phi;
}

double cz_cycle_at(const CzConfig& cfg, double t_ns) {
    const double t1 = cfg.load_ns;
    const double t2 = t1 + cfg.approach_ns;
    const double t3 = t2 + cfg.interact_ns;
    const double t4 = t3 + cfg.interact_ns;
    const double t5 = t4 + cfg.approach_ns;
    const double t6 = t5 + cfg.load_ns;
    if (t_ns < 0.0 || t_ns > t6 + 1e-9) throw std::out_of_range("cz_cycle_at: t outside schedule");
    if (t_ns <= t1) return cfg.c_load;
    if (t_ns <= t2) return cfg.c_load + (cfg.c_mid - cfg.c_load) * (t_ns - t1) / cfg.approach_ns;
    if (t_ns <= t3) return cfg.c_mid + (cfg.c_peak - cfg.c_mid) * (t_ns - t2) / cfg.interact_ns;
    if (t_ns <= t4) return cfg.c_peak - (cfg.c_peak - cfg.c_mid) * (t_ns - t3) / cfg.interact_ns;
    if (t_ns <= t5) return cfg.c_mid - (cfg.c_mid - cfg.c_load) * (t_ns - t4) / cfg.approach_ns;
    return cfg.c_load;
}

ExchangeSchedule cz_schedule(const CzConfig& cfg) {
    if (!cfg.j_of_c) throw std::invalid_argument("cz_schedule: exchange model required");
    if (cfg.load_ns <= 0 || cfg.approach_ns <= 0 || cfg.interact_ns <= 0)
        throw std::invalid_argument("cz_schedule: stage durations must be positive");

    // stage cycle advances must match the stated conveyor frequencies
    double adv_approach = cfg.approach_freq_hz * cfg.approach_ns * 1e-9;
    double adv_interact = cfg.interact_freq_hz * cfg.interact_ns * 1e-9;
    if (std::abs(adv_approach - (cfg.c_mid - cfg.c_load)) > 1e-9 ||
        std::abs(adv_interact - (cfg.c_peak - cfg.c_mid)) > 1e-9)
        throw std::invalid_argument("cz_schedule: cycle advance inconsistent with conveyor frequency");

    const double total = 2 * (cfg.load_ns + cfg.approach_ns + cfg.interact_ns);
    ExchangeSchedule s;
    const int n = std::max(2, static_cast<int>(std::ceil(total / cfg.sample_dt_ns)));
    const double dt = total / n;
    double j_prev = cfg.j_of_c->j_at_cycle(cz_cycle_at(cfg, 0.0));
    for (int k = 0; k < n; ++k) {
        double t_end = (k + 1) * dt;
        double j_next = cfg.j_of_c->j_at_cycle(cz_cycle_at(cfg, std::min(t_end, total)));
        Segment seg;
        seg.duration_ns = dt;
        seg.j_start_hz = j_prev;
        seg.j_end_hz = j_next;
        seg.delta_ez_hz = cfg.delta_ez_hz;
        s.segments.push_back(seg);
        j_prev = j_next;
    }
    s.segments.front().label = "load";
    s.segments.back().label = "unload";

    if (cfg.calibrate_phase) {
        double integral = s.integral_j_dt();
        if (integral <= 0.0) throw std::invalid_argument("cz_schedule: zero exchange integral");
        double scale = 0.5 / integral;  // conditional phase -2*pi*int J dt = -pi
        for (auto& seg : s.segments) {
            seg.j_start_hz *= scale;
            seg.j_end_hz *= scale;
        }
    }
    return s;
}

double sigma_rescale(double t_e_s, double t_m_from_s, double t_m_to_s) {
    if (t_e_s <= 0.0 || t_m_from_s <= t_e_s || t_m_to_s <= t_e_s)
        throw std::domain_error("sigma_rescale: need 0 < t_e < t_m");
    double a_to = 0.401 * t_m_to_s / t_e_s;
    double a_from = 0.401 * t_m_from_s / t_e_s;
    if (a_to <= 1.0 || a_from <= 1.0)
        throw std::domain_error("sigma_rescale: log argument must exceed 1");
    return std::sqrt(std::log(a_to) / std::log(a_from));
}

NoiseModel build_noise_model(const exchange::CoherenceTable& t2, const CzConfig& cfg,
                             double t_m_from_s, double t_m_to_s) {
    const double total = 2 * (cfg.load_ns + cfg.approach_ns + cfg.interact_ns);
    const double rescale = sigma_rescale(total * 1e-9, t_m_from_s, t_m_to_s);

    // sigma_i = sqrt(2) / (2 pi T2*_i), the Gaussian-decay Ramsey relation
    auto sigma_of = [&](double c, exchange::T2Column col) {
        double t2s = t2.t2_at_cycle(c, col) * 1e-6;
        return std::sqrt(2.0) / (kTwoPi * t2s);
    };

    const int n = 2000;
    const double dt = total / n * 1e-9;
    NoiseModel nm;
    for (int k = 0; k < n; ++k) {
        double t_ns = (k + 0.5) * total / n;
        double c = cz_cycle_at(cfg, t_ns);
        nm.w1_cycles += sigma_of(c, exchange::T2Column::Q5_Other0) * dt;
        nm.w2_cycles += sigma_of(c, exchange::T2Column::Q2_Other0) * dt;
        nm.w3_cycles += sigma_of(c, exchange::T2Column::Q5_Other1) * dt;
    }
    nm.w1_cycles *= rescale;
    nm.w2_cycles *= rescale;
    nm.w3_cycles *= rescale;
    return nm;
}

double noise_averaged_fidelity(const Eigen::Vector4cd& base_phases, const NoiseModel& nm) {
    auto integrand = [&](double x) {
        Complex tr = base_phases(0) +
                     base_phases(1) * std::exp(Complex(0, -kTwoPi * x * nm.w1_cycles)) +
                     base_phases(2) * std::exp(Complex(0, -kTwoPi * x * nm.w2_cycles)) +
                     base_phases(3) * std::exp(Complex(0, -kTwoPi * x * (nm.w1_cycles + nm.w3_cycles)));
        return std::norm(tr);
    };
    int order = 20;
    double prev = GaussHermite(order).gaussian_expectation(1.0, integrand);
    for (int it = 0; it < 6; ++it) {
        order *= 2;
        double next = GaussHermite(order).gaussian_expectation(1.0, integrand);
        double f_prev = (prev + 4.0) / 20.0, f_next = (next + 4.0) / 20.0;
        if (std::abs(f_next - f_prev) < 1e-8) return f_next;
        prev = next;
    }
    return (prev + 4.0) / 20.0;
}

double noise_averaged_fidelity(const NoiseModel& nm) {
    return noise_averaged_fidelity(Eigen::Vector4cd::Ones(), nm);
}

std::vector<double> dcphase_trace(double j_hz, double delta_ez_hz,
                                  const std::vector<double>& wait_times_ns, int other_state) {
    using namespace gates;
    const Matrix4c rx2_half = embed_single(rx(M_PI / 2), 1, 2);  // Q2 on bit 1
    const Matrix4c rx_pi_both = embed_single(rx(M_PI), 0, 2) * embed_single(rx(M_PI), 1, 2);
    const Matrix4c h = hamiltonian(delta_ez_hz, j_hz);

    Eigen::Vector4cd init = Eigen::Vector4cd::Zero();
    init(other_state ? 1 : 0) = 1.0;  // bit 0 is the other qubit (Q5)

    std::vector<double> out;
    out.reserve(wait_times_ns.size());
    for (double t : wait_times_ns) {
        if (t < 0.0) throw std::invalid_argument("dcphase_trace: wait times >= 0");
        Matrix4c half = expm_herm(h, t * 1e-9);
        Matrix4c u = rx2_half * half * rx_pi_both * half * rx2_half;
        Eigen::Vector4cd psi = u * init;
        out.push_back(std::norm(psi(0)) + std::norm(psi(3)));
    }
    return out;
}

double dominant_frequency_hz(const std::vector<double>& trace, double dt_ns) {
    const int n = static_cast<int>(trace.size());
    if (n < 4) throw std::invalid_argument("dominant_frequency_hz: trace too short");
    double mean = 0.0;
    for (double v : trace) mean += v;
    mean /= n;

    int best_k = 1;
    double best_p = -1.0;
    std::vector<double> power(n / 2 + 1, 0.0);
    for (int k = 1; k <= n / 2; ++k) {
        Complex acc(0, 0);
        for (int i = 0; i < n; ++i)
            acc += (trace[i] - mean) * std::exp(Complex(0, -kTwoPi * k * i / n));
        power[k] = std::norm(acc);
        if (power[k] > best_p) {
            best_p = power[k];
            best_k = k;
        }
    }
    // parabolic refinement on the log power spectrum
    double k_ref = best_k;
    if (best_k > 1 && best_k < n / 2) {
        double a = std::log(power[best_k - 1] + 1e-300);
        double b = std::log(power[best_k] + 1e-300);
        double c = std::log(power[best_k + 1] + 1e-300);
        double denom = a - 2 * b + c;
        if (denom < 0.0) k_ref = best_k + 0.5 * (a - c) / denom;
    }
    return k_ref / (n * dt_ns * 1e-9);
}

double edsr_frequency(double x_nm, const MonotoneCubic& f0_of_x, int other_spin_state,
                      double j_hz) {
    double f0 = f0_of_x(x_nm);
    return f0 + (other_spin_state ? 0.5 * j_hz : -0.5 * j_hz);
}

}  // namespace shuttlesim::dynamics
