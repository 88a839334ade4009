#include "shuttlesim/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace shuttlesim::gates {

Matrix2c rx(double a) {
    Matrix2c m;
    const double c = std::cos(a / 2), s = std::sin(a / 2);
    m << Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0);
    return m;
}

Matrix2c ry(double a) {
    Matrix2c m;
    const double c = std::cos(a / 2), s = std::sin(a / 2);
    m << Complex(c, 0), Complex(-s, 0), Complex(s, 0), Complex(c, 0);
    return m;
}

Matrix2c rz(double a) {
    Matrix2c m = Matrix2c::Zero();
    m(0, 0) = std::exp(Complex(0, -a / 2));
    m(1, 1) = std::exp(Complex(0, a / 2));
    return m;
}

Matrix2c pauli(int k) {
    Matrix2c m = Matrix2c::Zero();
    switch (k) {
        case 0: m(0, 0) = 1; m(1, 1) = 1; break;
        case 1: m(0, 1) = 1; m(1, 0) = 1; break;
        case 2: m(0, 1) = Complex(0, -1); m(1, 0) = Complex(0, 1); break;
        case 3: m(0, 0) = 1; m(1, 1) = -1; break;
        default: throw std::invalid_argument("pauli: index 0..3");
    }
    return m;
}

Matrix4c cz() {
    Matrix4c m = Matrix4c::Identity();
    m(3, 3) = -1;
    return m;
}

Matrix4c swap() {
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = 1; m(1, 2) = 1; m(2, 1) = 1; m(3, 3) = 1;
    return m;
}

Matrix4c iswap() {
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = 1; m(3, 3) = 1;
    m(1, 2) = Complex(0, 1); m(2, 1) = Complex(0, 1);
    return m;
}

MatrixXc embed_single(const Matrix2c& op, int qubit, int n_qubits) {
    const int dim = 1 << n_qubits;
    MatrixXc out = MatrixXc::Zero(dim, dim);
    const int bit = 1 << qubit;
    for (int col = 0; col < dim; ++col) {
        int b = (col & bit) ? 1 : 0;
        for (int a = 0; a < 2; ++a) {
            int row = (col & ~bit) | (a ? bit : 0);
            out(row, col) += op(a, b);
        }
    }
    return out;
}

MatrixXc embed_pair(const Matrix4c& op, int qubit_lo, int qubit_hi, int n_qubits) {
    if (qubit_lo == qubit_hi) throw std::invalid_argument("embed_pair: distinct qubits required");
    const int dim = 1 << n_qubits;
    MatrixXc out = MatrixXc::Zero(dim, dim);
    const int blo = 1 << qubit_lo, bhi = 1 << qubit_hi;
    for (int col = 0; col < dim; ++col) {
        int cl = (col & blo) ? 1 : 0;
        int ch = (col & bhi) ? 1 : 0;
        int cin = cl | (ch << 1);  // qubit_lo is the low bit of the 2q operator
        for (int rin = 0; rin < 4; ++rin) {
            Complex v = op(rin, cin);
            if (v == Complex(0, 0)) continue;
            int row = (col & ~(blo | bhi)) | ((rin & 1) ? blo : 0) | ((rin & 2) ? bhi : 0);
            out(row, col) += v;
        }
    }
    return out;
}

MatrixXc phase_canonical(const MatrixXc& u) {
    int bi = 0, bj = 0;
    double best = -1.0;
    for (int i = 0; i < u.rows(); ++i)
        for (int j = 0; j < u.cols(); ++j)
            if (std::abs(u(i, j)) > best + 1e-9) {
                best = std::abs(u(i, j));
                bi = i;
                bj = j;
            }
    if (best <= 0.0) return u;
    Complex ph = u(bi, bj) / best;
    return u / ph;
}

double unitarity_defect(const MatrixXc& u) {
    MatrixXc d = u.adjoint() * u - MatrixXc::Identity(u.rows(), u.cols());
    return max_abs(d);
}

}  // namespace shuttlesim::gates
