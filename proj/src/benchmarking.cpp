#include "shuttlesim/benchmarking.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "shuttlesim/dynamics.hpp"
#include "shuttlesim/gates.hpp"

namespace shuttlesim::benchmarking {

Channel identity_channel() {
    return [](const Matrix4c& rho) { return rho; };
}

Channel depolarizing_channel(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing_channel: p in [0,1]");
    return [p](const Matrix4c& rho) {
        return Matrix4c(p * rho + (1.0 - p) * rho.trace() / 4.0 * Matrix4c::Identity());
    };
}

Channel quasistatic_phase_channel(double w1, double w2, double w3, int gh_order) {
    GaussHermite gh(gh_order);
    std::vector<std::pair<double, Matrix4c>> terms;
    const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
    for (size_t k = 0; k < gh.nodes.size(); ++k) {
        double x = std::sqrt(2.0) * gh.nodes[k];
        Matrix4c u = Matrix4c::Identity();
        u(1, 1) = std::exp(Complex(0, -kTwoPi * x * w1));
        u(2, 2) = std::exp(Complex(0, -kTwoPi * x * w2));
        u(3, 3) = std::exp(Complex(0, -kTwoPi * x * (w1 + w3)));
        terms.emplace_back(gh.weights[k] * inv_sqrt_pi, u);
    }
    return [terms](const Matrix4c& rho) {
        Matrix4c out = Matrix4c::Zero();
        for (const auto& [w, u] : terms) out += w * (u * rho * u.adjoint());
        return out;
    };
}

double channel_average_fidelity(const Channel& e, const Matrix4c& u_target) {
    // entanglement fidelity via the process matrix overlap:
    // F_pro = (1/d^2) sum_ij <i| U^dag E(|i><j|) U |j>, then F_avg = (d F_pro + 1)/(d+1)
    const int d = 4;
    Complex f_pro(0, 0);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Matrix4c basis = Matrix4c::Zero();
            basis(i, j) = 1.0;
            Matrix4c mapped = u_target.adjoint() * e(basis) * u_target;
            f_pro += mapped(i, j);
        }
    }
    double fp = f_pro.real() / (d * d);
    return (d * fp + 1.0) / (d + 1.0);
}

std::vector<RBPoint> rb_run(const Channel& noise_per_clifford, const RBConfig& cfg,
                            const std::optional<InterleavedGate>& interleave) {
    for (int l : cfg.lengths)
        if (l < 1) throw std::invalid_argument("rb_run: lengths >= 1");

    std::vector<RBPoint> out;
    const Eigen::Vector4cd ket00 = Eigen::Vector4cd::Unit(0);
    (void)ket00;

    for (size_t li = 0; li < cfg.lengths.size(); ++li) {
        const int length = cfg.lengths[li];
        std::vector<double> seq_means;
        int kept_total = 0;

        for (int s = 0; s < cfg.sequences_per_length; ++s) {
            CounterRng rng(cfg.seed, (static_cast<uint64_t>(li) << 32) | s);

            Matrix4c rho = Matrix4c::Zero();
            rho(0, 0) = 1.0;
            Matrix4c ideal_word = Matrix4c::Identity();
            for (int k = 0; k < length; ++k) {
                auto sample = clifford::sample_two_qubit_clifford(rng);
                const Matrix4c u = sample.element.unitary();
                rho = u * rho * u.adjoint();
                rho = noise_per_clifford(rho);
                ideal_word = u * ideal_word;
                if (interleave) {
                    rho = interleave->ideal * rho * interleave->ideal.adjoint();
                    if (interleave->error) rho = interleave->error(rho);
                    ideal_word = interleave->ideal * ideal_word;
                }
            }
            // recovery Clifford maps the ideal word back to |00>
            Matrix4c rec = ideal_word.adjoint();
            rho = rec * rho * rec.adjoint();
            double p00 = std::max(0.0, std::min(1.0, rho(0, 0).real()));

            if (cfg.sample_shots) {
                int kept = 0, hits = 0;
                for (int sh = 0; sh < cfg.shots; ++sh) {
                    if (cfg.keep_probability < 1.0 && !rng.bernoulli(cfg.keep_probability)) continue;
                    ++kept;
                    if (rng.bernoulli(p00)) ++hits;
                }
                if (kept == 0) continue;  // sequence fully discarded
                seq_means.push_back(static_cast<double>(hits) / kept);
                kept_total += kept;
            } else {
                seq_means.push_back(p00);
                kept_total += cfg.shots;
            }
        }

        RBPoint pt;
        pt.length = length;
        pt.n_sequences = static_cast<int>(seq_means.size());
        pt.n_shots = pt.n_sequences > 0 ? kept_total / pt.n_sequences : 0;
        double mean = 0.0;
        for (double v : seq_means) mean += v;
        mean /= std::max<size_t>(1, seq_means.size());
        double var = 0.0;
        for (double v : seq_means) var += (v - mean) * (v - mean);
        if (seq_means.size() > 1) var /= (seq_means.size() - 1.0) * seq_means.size();
        pt.mean = mean;
        pt.stderr_ = std::sqrt(var);
        out.push_back(pt);
    }
    return out;
}

RBFit fit_rb(const std::vector<RBPoint>& data) {
    if (data.size() < 3) throw std::invalid_argument("fit_rb: need >= 3 distinct lengths");

    const int n = static_cast<int>(data.size());
    VectorXd y(n), w(n);
    for (int i = 0; i < n; ++i) {
        y(i) = data[i].mean;
        double floor_var = 1.0 / (4.0 * std::max(1, data[i].n_shots) *
                                  std::max(1, data[i].n_sequences));
        double var = std::max(data[i].stderr_ * data[i].stderr_, floor_var);
        w(i) = 1.0 / var;
    }

    double ymax = y.maxCoeff(), ymin = y.minCoeff();
    RBFit fit;
    if (ymax - ymin < 1e-9) {
        // flat curve: p = 1 and only A + B is identified
        fit.amplitude = ymax - 0.25;
        fit.offset = 0.25;
        fit.p = 1.0;
        fit.degenerate = true;
        fit.covariance = MatrixXd::Zero(3, 3);
        return fit;
    }

    // parameters (A, B, p)
    auto model = [&](const VectorXd& q, int i) {
        return q(0) * std::pow(std::max(1e-12, q(2)), data[i].length) + q(1);
    };
    VectorXd init(3);
    init << ymax - 0.25, 0.25, 0.97;
    // crude p seed from the first/last decay ratio
    double a0 = y(0) - 0.25, a1 = y(n - 1) - 0.25;
    if (a0 > 1e-6 && a1 > 1e-6 && data[n - 1].length > data[0].length)
        init(2) = std::min(1.0, std::pow(a1 / a0, 1.0 / (data[n - 1].length - data[0].length)));

    FitResult res = levenberg_marquardt(model, y, w, init);
    if (!res.converged) throw std::runtime_error("fit_rb: nonlinear fit did not converge");
    fit.amplitude = res.params(0);
    fit.offset = res.params(1);
    fit.p = std::min(1.0, res.params(2));
    fit.covariance = res.covariance;
    fit.p_stderr = std::sqrt(std::max(0.0, res.covariance(2, 2)));
    return fit;
}

double clifford_fidelity(double p_t) { return (1.0 + 3.0 * p_t) / 4.0; }

double interleaved_cz_fidelity(double p_cz, double p_ref) {
    if (p_ref <= 0.0) throw std::invalid_argument("interleaved_cz_fidelity: p_ref > 0 required");
    return (1.0 + 3.0 * p_cz / p_ref) / 4.0;
}

bool interleaved_ratio_exceeds_one(double p_cz, double p_ref) {
    return p_cz / p_ref > 1.0;
}

double composed_clifford_fidelity(double r_cz, double r_sq) {
    return 1.0 - (1.5 * r_cz + 8.25 * r_sq);
}

DecayFit fit_gaussian_decay(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() != y.size() || t.size() < 8)
        throw std::invalid_argument("fit_gaussian_decay: need matched samples covering >= 5 oscillations");

    const int n = static_cast<int>(t.size());
    double dt = (t.back() - t.front()) / (n - 1);
    // helper speaks ns/Hz; feeding dt as-if-ns and scaling back keeps t unit-agnostic
    double f_seed = dynamics::dominant_frequency_hz(y, dt) * 1e-9;

    double ymin = *std::min_element(y.begin(), y.end());
    double ymax = *std::max_element(y.begin(), y.end());
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= n;

    VectorXd init(5);  // A, f, phi, C, T2
    init << 0.5 * (ymax - ymin), f_seed, 0.0, mean, 0.7 * (t.back() - t.front());

    auto model = [&](const VectorXd& q, int i) {
        double decay = std::exp(-std::pow(t[i] / q(4), 2.0));
        return q(0) * decay * std::sin(kTwoPi * q(1) * t[i] + q(2)) + q(3);
    };
    VectorXd yv = Eigen::Map<const VectorXd>(y.data(), n);
    VectorXd w = VectorXd::Ones(n);

    FitResult res = levenberg_marquardt(model, yv, w, init);
    // retry with a quarter-phase shift if the phase seed was degenerate
    if (!res.converged || res.chi2 > 1e-3 * n) {
        init(2) = M_PI / 2;
        FitResult res2 = levenberg_marquardt(model, yv, w, init);
        if (res2.chi2 < res.chi2) res = res2;
    }
    if (!res.converged) throw std::runtime_error("fit_gaussian_decay: fit did not converge");

    DecayFit out;
    out.amplitude = res.params(0);
    out.frequency = res.params(1);
    out.phase = res.params(2);
    out.offset = res.params(3);
    out.t2 = std::abs(res.params(4));
    out.covariance = res.covariance;
    // decay indistinguishable from none over the sampled window
    if (out.t2 > 50.0 * (t.back() - t.front())) out.t2_unbounded = true;
    return out;
}

double bootstrap(const std::function<double(const std::vector<double>&)>& estimator,
                 const std::vector<double>& records, int resamples, uint64_t seed) {
    if (resamples < 100) throw std::invalid_argument("bootstrap: resamples >= 100");
    if (records.empty()) throw std::invalid_argument("bootstrap: empty records");

    CounterRng rng(seed, 0xb007);
    const size_t n = records.size();
    std::vector<double> stats(resamples);
    std::vector<double> sample(n);
    for (int r = 0; r < resamples; ++r) {
        for (size_t i = 0; i < n; ++i) sample[i] = records[rng.next_u64() % n];
        stats[r] = estimator(sample);
    }
    double mean = 0.0;
    for (double v : stats) mean += v;
    mean /= resamples;
    double var = 0.0;
    for (double v : stats) var += (v - mean) * (v - mean);
    var /= (resamples - 1.0);
    return std::sqrt(var);
}

void write_rb_csv(const std::vector<RBPoint>& data, const std::string& path) {
    std::ofstream out(path);
    out << "L,mean,stderr,n_sequences,n_shots\n";
    for (const auto& p : data)
        out << p.length << "," << p.mean << "," << p.stderr_ << "," << p.n_sequences << ","
            << p.n_shots << "\n";
}

std::vector<RBPoint> read_rb_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open RB data: " + path);
    std::vector<RBPoint> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) { header = false; continue; }
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 5) throw std::runtime_error("bad RB data row: " + line);
        RBPoint p;
        p.length = std::stoi(cells[0]);
        p.mean = std::stod(cells[1]);
        p.stderr_ = std::stod(cells[2]);
        p.n_sequences = std::stoi(cells[3]);
        p.n_shots = std::stoi(cells[4]);
        out.push_back(p);
    }
    return out;
}

}  // namespace shuttlesim::benchmarking
