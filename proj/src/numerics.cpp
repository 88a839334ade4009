#include "shuttlesim/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace shuttlesim {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const size_t n = x_.size();
    if (n < 2 || n != y_.size()) throw std::invalid_argument("MonotoneCubic: need >= 2 matched knots");
    for (size_t i = 1; i < n; ++i)
        if (x_[i] <= x_[i - 1]) throw std::invalid_argument("MonotoneCubic: x must be strictly increasing");

    std::vector<double> d(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);

    slope_.resize(n);
    slope_[0] = d[0];
    slope_[n - 1] = d[n - 2];
    for (size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            // weighted harmonic mean keeps the interpolant monotone
            double w1 = 2.0 * (x_[i + 1] - x_[i]) + (x_[i] - x_[i - 1]);
            double w2 = (x_[i + 1] - x_[i]) + 2.0 * (x_[i] - x_[i - 1]);
            slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    // Fritsch-Carlson limiter on the end slopes
    for (size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) { slope_[i] = slope_[i + 1] = 0.0; continue; }
        double a = slope_[i] / d[i], b = slope_[i + 1] / d[i];
        double s = a * a + b * b;
        if (s > 9.0) {
            double tau = 3.0 / std::sqrt(s);
            slope_[i] = tau * a * d[i];
            slope_[i + 1] = tau * b * d[i];
        }
    }
}

double MonotoneCubic::operator()(double xq) const {
    if (!in_hull(xq)) throw std::out_of_range("MonotoneCubic: query outside table hull");
    auto it = std::upper_bound(x_.begin(), x_.end(), xq);
    size_t i = (it == x_.end()) ? x_.size() - 2 : static_cast<size_t>(it - x_.begin()) - 1;
    if (it != x_.end() && i >= x_.size() - 1) i = x_.size() - 2;
    double h = x_[i + 1] - x_[i];
    double t = (xq - x_[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

GaussHermite::GaussHermite(int order) {
    if (order < 1) throw std::invalid_argument("GaussHermite: order >= 1");
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(order, order);
    for (int i = 1; i < order; ++i) {
        double b = std::sqrt(i / 2.0);
        jac(i, i - 1) = b;
        jac(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    const double mu0 = std::sqrt(M_PI);
    nodes.resize(order);
    weights.resize(order);
    for (int i = 0; i < order; ++i) {
        nodes[i] = es.eigenvalues()(i);
        double v = es.eigenvectors()(0, i);
        weights[i] = mu0 * v * v;
    }
}

double GaussHermite::gaussian_expectation(double sigma,
                                          const std::function<double(double)>& f) const {
    // E[f(x)], x ~ N(0, sigma^2): substitute x = sqrt(2) sigma u
    double acc = 0.0;
    const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
    for (size_t i = 0; i < nodes.size(); ++i)
        acc += weights[i] * f(std::sqrt(2.0) * sigma * nodes[i]);
    return acc * inv_sqrt_pi;
}

FitResult levenberg_marquardt(const std::function<double(const VectorXd&, int)>& model,
                              const VectorXd& y, const VectorXd& weights,
                              const VectorXd& initial, int max_iter, double tol) {
    const int n = static_cast<int>(y.size());
    const int p = static_cast<int>(initial.size());
    VectorXd params = initial;

    auto residuals = [&](const VectorXd& q) {
        VectorXd r(n);
        for (int i = 0; i < n; ++i) r(i) = y(i) - model(q, i);
        return r;
    };
    auto chi2_of = [&](const VectorXd& r) {
        double c = 0.0;
        for (int i = 0; i < n; ++i) c += weights(i) * r(i) * r(i);
        return c;
    };

    VectorXd r = residuals(params);
    double chi2 = chi2_of(r);
    double lambda = 1e-3;
    FitResult out;

    MatrixXd jac(n, p);
    for (int iter = 0; iter < max_iter; ++iter) {
        for (int j = 0; j < p; ++j) {
            double h = std::max(1e-7, 1e-7 * std::abs(params(j)));
            VectorXd qp = params;
            qp(j) += h;
            for (int i = 0; i < n; ++i) jac(i, j) = (model(qp, i) - model(params, i)) / h;
        }
        MatrixXd jtwj = MatrixXd::Zero(p, p);
        VectorXd jtwr = VectorXd::Zero(p);
        for (int i = 0; i < n; ++i) {
            jtwj += weights(i) * jac.row(i).transpose() * jac.row(i);
            jtwr += weights(i) * jac.row(i).transpose() * r(i);
        }
        bool improved = false;
        for (int tries = 0; tries < 30; ++tries) {
            MatrixXd a = jtwj;
            a.diagonal() *= (1.0 + lambda);
            for (int j = 0; j < p; ++j)
                if (a(j, j) == 0.0) a(j, j) = lambda;
            VectorXd step = a.ldlt().solve(jtwr);
            VectorXd trial = params + step;
            VectorXd rt = residuals(trial);
            double ct = chi2_of(rt);
            if (std::isfinite(ct) && ct <= chi2) {
                double gain = chi2 - ct;
                params = trial;
                r = rt;
                chi2 = ct;
                lambda = std::max(lambda * 0.3, 1e-12);
                improved = true;
                out.iterations = iter + 1;
                if (gain < tol * (1.0 + chi2)) {
                    out.converged = true;
                    iter = max_iter;  // done
                }
                break;
            }
            lambda *= 10.0;
        }
        if (!improved) {
            out.converged = true;  // stuck at a (local) minimum
            break;
        }
        if (out.converged) break;
    }

    // covariance from the weighted normal equations, scaled by reduced chi2
    MatrixXd jtwj = MatrixXd::Zero(p, p);
    for (int i = 0; i < n; ++i) jtwj += weights(i) * jac.row(i).transpose() * jac.row(i);
    double dof = std::max(1, n - p);
    MatrixXd cov = jtwj.completeOrthogonalDecomposition().pseudoInverse();
    out.covariance = cov * std::max(chi2 / dof, 1.0);  // never shrink below stated weights
    out.params = params;
    out.chi2 = chi2;
    return out;
}

Matrix4c expm_herm(const Matrix4c& h, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
    Eigen::Vector4cd phases;
    for (int i = 0; i < 4; ++i)
        phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i) * t));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double max_abs(const MatrixXc& m) {
    double v = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) v = std::max(v, std::abs(m(i, j)));
    return v;
}

}  // namespace shuttlesim
