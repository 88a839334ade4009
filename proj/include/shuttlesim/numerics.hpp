#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace shuttlesim {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using Matrix2c = Eigen::Matrix2cd;
using VectorXd = Eigen::VectorXd;
using MatrixXd = Eigen::MatrixXd;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = kTwoPi / 2.0;

// Monotone piecewise-cubic interpolant (Fritsch-Carlson slopes).
// Passes through all knots; never overshoots the local data range.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double xq) const;    // throws std::out_of_range outside hull
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    bool in_hull(double xq) const { return xq >= x_.front() && xq <= x_.back(); }

private:
    std::vector<double> x_, y_, slope_;
};

// Gauss-Hermite nodes/weights for \int f(x) e^{-x^2} dx via Golub-Welsch.
struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;
    explicit GaussHermite(int order);

    // expectation of f under N(0, sigma^2)
    double gaussian_expectation(double sigma, const std::function<double(double)>& f) const;
};

struct FitResult {
    VectorXd params;
    MatrixXd covariance;
    double chi2 = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Damped least squares (Levenberg-Marquardt) with forward-difference Jacobian.
// model(params, i) -> predicted value for sample i; weights are 1/sigma_i^2.
FitResult levenberg_marquardt(
    const std::function<double(const VectorXd&, int)>& model,
    const VectorXd& y,
    const VectorXd& weights,
    const VectorXd& initial,
    int max_iter = 200,
    double tol = 1e-12);

// 4x4 propagator exp(-i H t) for Hermitian H (angular frequency units, t in s)
Matrix4c expm_herm(const Matrix4c& h, double t);

double max_abs(const MatrixXc& m);

}  // namespace shuttlesim
