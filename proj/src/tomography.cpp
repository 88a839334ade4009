#include "shuttlesim/tomography.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "shuttlesim/gates.hpp"

namespace shuttlesim::tomography {

namespace {

MatrixXc kron(const MatrixXc& a, const MatrixXc& b) {
    MatrixXc out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double log_likelihood_of(const MatrixXc& rho, const std::vector<MatrixXc>& effects,
                         const std::vector<double>& counts) {
    double ll = 0.0;
    for (std::size_t j = 0; j < effects.size(); ++j) {
        if (counts[j] <= 0.0) continue;
        double p = std::max(1e-14, (effects[j] * rho).trace().real());
        ll += counts[j] * std::log(p);
    }
    return ll;
}

void check_informationally_complete(const std::vector<MatrixXc>& effects, int d) {
    MatrixXc design(static_cast<int>(effects.size()), d * d);
    for (std::size_t j = 0; j < effects.size(); ++j)
        design.row(static_cast<int>(j)) = effects[j].reshaped().transpose();
    Eigen::ColPivHouseholderQR<MatrixXc> qr(design);
    qr.setThreshold(1e-9);
    if (qr.rank() < d * d)
        throw std::runtime_error("measurement set spans only " + std::to_string(qr.rank()) +
                                 " of " + std::to_string(d * d) + " operator directions");
}

}  // namespace

MatrixXc pauli_basis_op(int index, int n_qubits) {
    MatrixXc op = MatrixXc::Identity(1, 1);
    for (int q = n_qubits - 1; q >= 0; --q) {
        int digit = (index >> (2 * q)) & 3;
        op = kron(op, gates::pauli(digit));
    }
    return op;
}

Eigen::Matrix2cd axis_projector(char axis, int bit) {
    Eigen::Vector2cd v;
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    switch (axis) {
        case 'X': v << s, (bit ? -s : s); break;
        case 'Y': v << s, (bit ? -i * s : i * s); break;
        case 'Z': v << (bit ? 0.0 : 1.0), (bit ? 1.0 : 0.0); break;
        default: throw std::invalid_argument(std::string("unknown basis axis: ") + axis);
    }
    return v * v.adjoint();
}

MatrixXc basis_effect(const std::string& basis, int outcome, int n_qubits) {
    if (static_cast<int>(basis.size()) != n_qubits)
        throw std::invalid_argument("basis string length mismatch");
    MatrixXc e = MatrixXc::Identity(1, 1);
    for (int q = n_qubits - 1; q >= 0; --q)
        e = kron(e, axis_projector(basis[n_qubits - 1 - q], (outcome >> q) & 1));
    return e;
}

MatrixXc prep_state(const std::string& prep, int n_qubits) {
    if (static_cast<int>(prep.size()) != n_qubits)
        throw std::invalid_argument("prep string length mismatch");
    const double s = 1.0 / std::sqrt(2.0);
    const Complex im(0.0, 1.0);
    MatrixXc rho = MatrixXc::Identity(1, 1);
    for (int q = n_qubits - 1; q >= 0; --q) {
        Eigen::Vector2cd v;
        switch (prep[n_qubits - 1 - q]) {
            case '0': v << 1.0, 0.0; break;
            case '1': v << 0.0, 1.0; break;
            case '+': v << s, s; break;
            case 'i': v << s, im * s; break;
            default: throw std::invalid_argument(std::string("unknown prep label: ") + prep);
        }
        rho = kron(rho, (v * v.adjoint()).eval());
    }
    return rho;
}

CountsTable CountsTable::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open counts file: " + path);
    CountsTable table;
    std::map<std::pair<std::string, std::string>, std::size_t> row_of;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.rfind("prep", 0) == 0 || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string prep, basis, outcome_s, count_s;
        if (!std::getline(ss, prep, ',') || !std::getline(ss, basis, ',') ||
            !std::getline(ss, outcome_s, ',') || !std::getline(ss, count_s, ','))
            throw std::runtime_error("malformed counts row: " + line);
        table.n_qubits = static_cast<int>(basis.size());
        const int dim = 1 << table.n_qubits;
        auto key = std::make_pair(prep, basis);
        auto it = row_of.find(key);
        if (it == row_of.end()) {
            it = row_of.emplace(key, table.rows.size()).first;
            table.rows.push_back({prep, basis, std::vector<double>(dim, 0.0)});
        }
        int outcome = std::stoi(outcome_s);
        double count = std::stod(count_s);
        if (outcome < 0 || outcome >= dim || count < 0.0)
            throw std::runtime_error("counts row out of range: " + line);
        table.rows[it->second].counts[outcome] += count;
    }
    return table;
}

void CountsTable::to_csv(const std::string& path) const {
    std::ofstream out(path);
    out << "prep,basis,outcome,count\n";
    for (const auto& row : rows)
        for (std::size_t o = 0; o < row.counts.size(); ++o)
            out << row.prep << ',' << row.basis << ',' << o << ',' << row.counts[o] << '\n';
}

QstResult qst_mle(const std::vector<MatrixXc>& effects, const std::vector<double>& counts, int d) {
    if (effects.size() != counts.size())
        throw std::invalid_argument("effects/counts size mismatch");
    check_informationally_complete(effects, d);

    MatrixXc rho = MatrixXc::Identity(d, d) / static_cast<double>(d);
    double total = 0.0;
    for (double c : counts) total += c;
    if (total <= 0.0) throw std::invalid_argument("empty counts");

    double ll = log_likelihood_of(rho, effects, counts);
    int iter = 0;
    for (; iter < 20000; ++iter) {
        MatrixXc r = MatrixXc::Zero(d, d);
        for (std::size_t j = 0; j < effects.size(); ++j) {
            if (counts[j] <= 0.0) continue;
            double p = std::max(1e-14, (effects[j] * rho).trace().real());
            r += (counts[j] / (total * p)) * effects[j];
        }
        double eps = 1.0;
        MatrixXc cand;
        double ll_cand = ll;
        while (true) {
            MatrixXc g = (1.0 - eps) * MatrixXc::Identity(d, d) + eps * r;
            cand = g * rho * g.adjoint();
            cand = 0.5 * (cand + cand.adjoint().eval());
            cand /= cand.trace().real();
            ll_cand = log_likelihood_of(cand, effects, counts);
            if (ll_cand >= ll - 1e-13) break;
            eps *= 0.5;
            if (eps < 1e-7) {
                cand = rho;
                ll_cand = ll;
                break;
            }
        }
        double gain = ll_cand - ll;
        rho = cand;
        ll = ll_cand;
        if (gain < 1e-10 && iter > 2) break;
    }
    return {rho, ll, iter + 1};
}

QstResult qst_mle(const CountsTable& counts) {
    std::vector<MatrixXc> effects;
    std::vector<double> n;
    const int dim = 1 << counts.n_qubits;
    for (const auto& row : counts.rows)
        for (int o = 0; o < dim; ++o) {
            effects.push_back(basis_effect(row.basis, o, counts.n_qubits));
            n.push_back(row.counts[o]);
        }
    return qst_mle(effects, n, dim);
}

BellFit bell_fidelity(const Matrix4c& rho) {
    double f_phi = 0.5 * (rho(0, 0).real() + rho(3, 3).real()) + std::abs(rho(0, 3));
    double f_psi = 0.5 * (rho(1, 1).real() + rho(2, 2).real()) + std::abs(rho(1, 2));
    BellFit fit;
    if (f_phi >= f_psi) {
        fit.fidelity = f_phi;
        fit.phase = std::abs(rho(0, 3)) > 1e-14 ? -std::arg(rho(0, 3)) : 0.0;
        fit.family = 0;
    } else {
        fit.fidelity = f_psi;
        fit.phase = std::abs(rho(1, 2)) > 1e-14 ? -std::arg(rho(1, 2)) : 0.0;
        fit.family = 1;
    }
    return fit;
}

Eigen::MatrixXd ptm_of_channel(const std::function<MatrixXc(const MatrixXc&)>& channel, int d) {
    int n = 0;
    while ((1 << n) < d) ++n;
    const int d2 = d * d;
    Eigen::MatrixXd r(d2, d2);
    for (int j = 0; j < d2; ++j) {
        MatrixXc out = channel(pauli_basis_op(j, n));
        for (int i = 0; i < d2; ++i)
            r(i, j) = (pauli_basis_op(i, n) * out).trace().real() / d;
    }
    return r;
}

Eigen::MatrixXd ptm_of_unitary(const MatrixXc& u) {
    return ptm_of_channel([&](const MatrixXc& p) { return MatrixXc(u * p * u.adjoint()); },
                          static_cast<int>(u.rows()));
}

MatrixXc choi_from_ptm(const Eigen::MatrixXd& r, int d) {
    int n = 0;
    while ((1 << n) < d) ++n;
    const int d2 = d * d;
    MatrixXc choi = MatrixXc::Zero(d2, d2);
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j) {
            if (r(i, j) == 0.0) continue;
            choi += (r(i, j) / d2) *
                    kron(pauli_basis_op(j, n).transpose().eval(), pauli_basis_op(i, n));
        }
    return choi;
}

Eigen::MatrixXd ptm_from_choi(const MatrixXc& choi, int d) {
    int n = 0;
    while ((1 << n) < d) ++n;
    const int d2 = d * d;
    Eigen::MatrixXd r(d2, d2);
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j)
            r(i, j) = (choi * kron(pauli_basis_op(j, n).transpose().eval(), pauli_basis_op(i, n)))
                          .trace()
                          .real();
    return r;
}

MatrixXc project_cptp(const MatrixXc& choi, int d, double tol, int max_iters) {
    MatrixXc c = 0.5 * (choi + choi.adjoint().eval());
    const MatrixXc id_in = MatrixXc::Identity(d, d);
    for (int iter = 0; iter < max_iters; ++iter) {
        MatrixXc prev = c;
        // trace-preserving affine projection: partial trace over output = I/d
        MatrixXc tr_out = MatrixXc::Zero(d, d);
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) tr_out(k, l) = c.block(k * d, l * d, d, d).trace();
        MatrixXc defect = tr_out - id_in / static_cast<double>(d);
        c -= kron(defect, id_in / static_cast<double>(d));
        // positive-semidefinite cone projection
        Eigen::SelfAdjointEigenSolver<MatrixXc> es(0.5 * (c + c.adjoint().eval()));
        Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
        c = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
        if ((c - prev).norm() < tol) break;
    }
    return c;
}

QptResult qpt_ptm(const QptData& data, int d) {
    const int d2 = d * d;
    int n = 0;
    while ((1 << n) < d) ++n;

    std::vector<Eigen::VectorXd> a_rows;
    std::vector<double> f;
    for (std::size_t p = 0; p < data.preps.size(); ++p) {
        Eigen::VectorXd s(d2);
        for (int j = 0; j < d2; ++j)
            s(j) = (pauli_basis_op(j, n) * data.preps[p]).trace().real();
        for (std::size_t m = 0; m < data.settings.size(); ++m) {
            for (std::size_t o = 0; o < data.settings[m].size(); ++o) {
                Eigen::VectorXd e(d2);
                for (int i = 0; i < d2; ++i)
                    e(i) = (pauli_basis_op(i, n) * data.settings[m][o]).trace().real() / d;
                Eigen::VectorXd row(d2 * d2);
                for (int i = 0; i < d2; ++i)
                    for (int j = 0; j < d2; ++j) row(i * d2 + j) = e(i) * s(j);
                a_rows.push_back(row);
                f.push_back(data.freq.at(p).at(m).at(o));
            }
        }
    }
    Eigen::MatrixXd a(static_cast<int>(a_rows.size()), d2 * d2);
    Eigen::VectorXd y(static_cast<int>(f.size()));
    for (std::size_t k = 0; k < a_rows.size(); ++k) {
        a.row(static_cast<int>(k)) = a_rows[k];
        y(static_cast<int>(k)) = f[k];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(1e-9);
    if (qr.rank() < d2 * d2)
        throw std::runtime_error("process-tomography design is rank deficient: rank " +
                                 std::to_string(qr.rank()) + " of " + std::to_string(d2 * d2) +
                                 " (preps or bases not informationally complete)");
    Eigen::VectorXd x = qr.solve(y);
    Eigen::MatrixXd r_ls(d2, d2);
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j) r_ls(i, j) = x(i * d2 + j);

    QptResult res;
    res.residual_pre = (a * x - y).norm();
    MatrixXc choi = project_cptp(choi_from_ptm(r_ls, d), d);
    res.ptm = ptm_from_choi(choi, d);
    res.ptm.row(0).setZero();
    res.ptm(0, 0) = 1.0;
    Eigen::VectorXd x_post(d2 * d2);
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j) x_post(i * d2 + j) = res.ptm(i, j);
    res.residual_post = (a * x_post - y).norm();
    return res;
}

std::vector<MatrixXc> standard_preps(int n_qubits) {
    std::vector<MatrixXc> out;
    for (const auto& label : standard_prep_labels(n_qubits))
        out.push_back(prep_state(label, n_qubits));
    return out;
}

std::vector<std::string> standard_prep_labels(int n_qubits) {
    const std::string alphabet = "01+i";
    std::vector<std::string> labels(1, "");
    for (int q = 0; q < n_qubits; ++q) {
        std::vector<std::string> next;
        for (const auto& l : labels)
            for (char c : alphabet) next.push_back(l + c);
        labels = next;
    }
    return labels;
}

std::vector<std::vector<MatrixXc>> pauli_povms(int n_qubits) {
    std::vector<std::vector<MatrixXc>> out;
    const int dim = 1 << n_qubits;
    for (const auto& basis : pauli_basis_labels(n_qubits)) {
        std::vector<MatrixXc> povm;
        for (int o = 0; o < dim; ++o) povm.push_back(basis_effect(basis, o, n_qubits));
        out.push_back(povm);
    }
    return out;
}

std::vector<std::string> pauli_basis_labels(int n_qubits) {
    const std::string axes = "XYZ";
    std::vector<std::string> labels(1, "");
    for (int q = 0; q < n_qubits; ++q) {
        std::vector<std::string> next;
        for (const auto& l : labels)
            for (char c : axes) next.push_back(l + c);
        labels = next;
    }
    return labels;
}

double ptm_average_fidelity(const Eigen::MatrixXd& r, const Eigen::MatrixXd& r_ideal, int d) {
    auto check_tp = [](const Eigen::MatrixXd& m) {
        if (std::abs(m(0, 0) - 1.0) > 1e-6 || m.row(0).tail(m.cols() - 1).cwiseAbs().maxCoeff() > 1e-6)
            throw std::invalid_argument("ptm_average_fidelity: map is not trace preserving");
    };
    check_tp(r);
    check_tp(r_ideal);
    return ((r_ideal.transpose() * r).trace() / d + 1.0) / (d + 1.0);
}

int spam_strip(CountsTable& counts, const readout::ConfusionMatrix& m) {
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(det) <= 1e-12)
        throw std::invalid_argument("spam_strip: singular confusion matrix");
    int clamped_rows = 0;
    for (auto& row : counts.rows) {
        double total = 0.0;
        for (double c : row.counts) total += c;
        // invert the per-qubit confusion along each bit axis in turn
        for (int q = 0; q < counts.n_qubits; ++q) {
            const int bit = 1 << q;
            for (std::size_t o = 0; o < row.counts.size(); ++o) {
                if (o & bit) continue;
                double a = row.counts[o], b = row.counts[o | bit];
                row.counts[o] = (m(1, 1) * a - m(0, 1) * b) / det;
                row.counts[o | bit] = (-m(1, 0) * a + m(0, 0) * b) / det;
            }
        }
        bool clamp = false;
        const double tol = 1e-9 * std::max(total, 1.0);
        for (double& c : row.counts) {
            if (c < 0.0) {
                if (c < -tol) clamp = true;
                c = 0.0;
            }
        }
        double sum = 0.0;
        for (double c : row.counts) sum += c;
        if (sum > 0.0 && total > 0.0)
            for (double& c : row.counts) c *= total / sum;
        if (clamp) ++clamped_rows;
    }
    return clamped_rows;
}

void write_ptm_json(const Eigen::MatrixXd& r, const std::string& path) {
    nlohmann::json j;
    j["dim"] = r.rows();
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < r.rows(); ++i)
        rows.emplace_back(r.row(i).begin(), r.row(i).end());
    j["ptm"] = rows;
    std::ofstream(path) << j.dump(2) << '\n';
}

void write_density_json(const MatrixXc& rho, const std::string& path) {
    nlohmann::json j;
    j["dim"] = rho.rows();
    std::vector<std::vector<std::vector<double>>> rows;
    for (int i = 0; i < rho.rows(); ++i) {
        std::vector<std::vector<double>> row;
        for (int k = 0; k < rho.cols(); ++k) row.push_back({rho(i, k).real(), rho(i, k).imag()});
        rows.push_back(row);
    }
    j["rho"] = rows;
    std::ofstream(path) << j.dump(2) << '\n';
}

}  // namespace shuttlesim::tomography
