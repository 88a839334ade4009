#pragma once

#include "shuttlesim/numerics.hpp"

namespace shuttlesim::gates {

// Single-qubit rotations; |0> = spin down, Z|1> = -|1>.
Matrix2c rx(double angle);
Matrix2c ry(double angle);
Matrix2c rz(double angle);
Matrix2c pauli(int k);  // 0..3 -> I, X, Y, Z

inline Matrix2c identity2() { return Matrix2c::Identity(); }

Matrix4c cz();
Matrix4c swap();
Matrix4c iswap();

// Multi-qubit embedding with qubit 0 on the least significant bit.
MatrixXc embed_single(const Matrix2c& op, int qubit, int n_qubits);
MatrixXc embed_pair(const Matrix4c& op, int qubit_lo, int qubit_hi, int n_qubits);

// Remove global phase: first element of largest magnitude made real positive.
MatrixXc phase_canonical(const MatrixXc& u);

// max |(U^dag U - I)_ij|
double unitarity_defect(const MatrixXc& u);

}  // namespace shuttlesim::gates
