#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "shuttlesim/numerics.hpp"
#include "shuttlesim/rng.hpp"

namespace shuttlesim::clifford {

// Image of one Pauli generator under conjugation: a Pauli string with sign.
struct PauliImage {
    uint32_t x_mask = 0;
    uint32_t z_mask = 0;
    int sign = 1;  // +1 or -1
};

// Symplectic tableau: images of X_k, Z_k for each qubit.
struct Tableau {
    int n_qubits = 1;
    std::vector<PauliImage> images;  // order X_0, Z_0, X_1, Z_1, ...

    bool is_symplectic() const;
};

class CliffordElement {
public:
    CliffordElement() = default;
    explicit CliffordElement(MatrixXc unitary);  // throws if not Clifford

    const MatrixXc& unitary() const { return u_; }
    const Tableau& tableau() const { return tab_; }
    int n_qubits() const { return tab_.n_qubits; }
    int cz_count() const { return cz_count_; }

    CliffordElement compose(const CliffordElement& rhs) const;  // this after rhs
    CliffordElement inverse() const;

    // global-phase-invariant identity key
    const std::string& key() const { return key_; }
    bool operator==(const CliffordElement& o) const { return key_ == o.key_; }

    int cz_count_ = 0;  // CZ-equivalents used when the element was synthesized

private:
    MatrixXc u_;
    Tableau tab_;
    std::string key_;
};

// The 24-element single-qubit Clifford group (closure of Rx(pi/2), Rz(pi/2)).
const std::vector<CliffordElement>& single_qubit_clifford_group();

// Uniform sampling of the 11520-element two-qubit Clifford group via the
// canonical class decomposition 576 + 5184 + 5184 + 576
// (single-qubit layer x {I, CNOT-like, iSWAP-like, SWAP-like}).
enum class TwoQubitClass { Single = 0, CnotLike = 1, IswapLike = 2, SwapLike = 3 };

struct TwoQubitSample {
    CliffordElement element;
    TwoQubitClass cls;
};

TwoQubitSample sample_two_qubit_clifford(CounterRng& rng);

// Full enumeration (11520 elements); memoized on first use.
const std::vector<CliffordElement>& two_qubit_clifford_group();

// Native-set compilation audit: average CZ and Rx(pi/2)-pulse counts per
// two-qubit Clifford under the class decomposition with ZXZXZ single-qubit
// layers (Rz virtual).
struct CompilationStats {
    double avg_cz_per_clifford = 0.0;
    double avg_sq_pulses_per_clifford = 0.0;
};
CompilationStats compilation_stats();

}  // namespace shuttlesim::clifford
