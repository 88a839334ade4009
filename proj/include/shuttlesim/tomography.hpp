#pragma once

#include <functional>
#include <string>
#include <vector>

#include "shuttlesim/numerics.hpp"
#include "shuttlesim/readout.hpp"

namespace shuttlesim::tomography {

// Pauli basis ordered (I, X, Y, Z) per qubit, tensor lexicographic. For n
// qubits the index is read base-4 with the most significant digit acting on
// the highest qubit; operators are unnormalized (P_i P_i = I).
MatrixXc pauli_basis_op(int index, int n_qubits);

// One tomography record. `basis` has one character per qubit drawn from
// {X, Y, Z}, leftmost character on the highest qubit (reads like a ket
// label); `prep` uses the same convention with {0, 1, +, i} and may be
// empty for state tomography. counts[o] uses bit k of o for qubit k,
// bit value 0 meaning the +1 eigenstate.
struct CountsRow {
    std::string prep;
    std::string basis;
    std::vector<double> counts;
};

struct CountsTable {
    std::vector<CountsRow> rows;
    int n_qubits = 1;

    static CountsTable from_csv(const std::string& path);
    void to_csv(const std::string& path) const;
};

// Projector onto the outcome-`bit` eigenstate of the single-qubit Pauli
// named by `axis` ('X', 'Y', or 'Z'); bit 0 = +1 eigenvalue.
Eigen::Matrix2cd axis_projector(char axis, int bit);

// POVM effect for a full basis string and outcome index.
MatrixXc basis_effect(const std::string& basis, int outcome, int n_qubits);

// Density matrix for a preparation label string.
MatrixXc prep_state(const std::string& prep, int n_qubits);

struct QstResult {
    MatrixXc rho;
    double log_likelihood = 0.0;
    int iterations = 0;
};

// Multinomial maximum-likelihood state reconstruction (diluted RrhoR fixed
// point). Throws if the effects do not span the operator space.
QstResult qst_mle(const std::vector<MatrixXc>& effects, const std::vector<double>& counts, int d);
QstResult qst_mle(const CountsTable& counts);

struct BellFit {
    double fidelity = 0.0;
    double phase = 0.0;  // optimal relative phase inside the family
    int family = 0;      // 0 = {|00>, |11>} span, 1 = {|01>, |10>} span
};

// Best overlap with any phase-rotated Bell state, closed form.
BellFit bell_fidelity(const Matrix4c& rho);

// --- Pauli transfer matrices -------------------------------------------

Eigen::MatrixXd ptm_of_unitary(const MatrixXc& u);
Eigen::MatrixXd ptm_of_channel(const std::function<MatrixXc(const MatrixXc&)>& channel, int d);

// Choi matrix with index ordering (input x output); trace 1 for TP maps.
MatrixXc choi_from_ptm(const Eigen::MatrixXd& r, int d);
Eigen::MatrixXd ptm_from_choi(const MatrixXc& choi, int d);

// Alternating projections between the PSD cone and the trace-preserving
// affine subspace; stops when the Frobenius update drops below tol.
MatrixXc project_cptp(const MatrixXc& choi, int d, double tol = 1e-9, int max_iters = 20000);

struct QptData {
    std::vector<MatrixXc> preps;                         // density matrices
    std::vector<std::vector<MatrixXc>> settings;         // POVMs
    std::vector<std::vector<std::vector<double>>> freq;  // [prep][setting][outcome]
};

struct QptResult {
    Eigen::MatrixXd ptm;
    double residual_pre = 0.0;   // least-squares data residual
    double residual_post = 0.0;  // residual after CPTP projection
};

// Least-squares PTM estimate followed by CPTP projection. Throws on a
// rank-deficient design (informationally incomplete preps or settings).
QptResult qpt_ptm(const QptData& data, int d);

// {|0>, |1>, |+>, |+i>} per qubit, tensor products in label order.
std::vector<MatrixXc> standard_preps(int n_qubits);
std::vector<std::string> standard_prep_labels(int n_qubits);
// X/Y/Z product bases as POVMs.
std::vector<std::vector<MatrixXc>> pauli_povms(int n_qubits);
std::vector<std::string> pauli_basis_labels(int n_qubits);

// F_avg = (tr(R_ideal^T R)/d + 1)/(d + 1); both arguments must be TP.
double ptm_average_fidelity(const Eigen::MatrixXd& r, const Eigen::MatrixXd& r_ideal, int d);

// Per-qubit readout-error removal on every row; returns the number of rows
// where the inversion had to be clamped back into [0, 1].
int spam_strip(CountsTable& counts, const readout::ConfusionMatrix& m);

void write_ptm_json(const Eigen::MatrixXd& r, const std::string& path);
void write_density_json(const MatrixXc& rho, const std::string& path);

}  // namespace shuttlesim::tomography
