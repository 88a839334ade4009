#include "shuttlesim/clifford.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "shuttlesim/gates.hpp"

namespace shuttlesim::clifford {

namespace {

MatrixXc pauli_string(uint32_t x_mask, uint32_t z_mask, int n_qubits) {
    MatrixXc out = MatrixXc::Identity(1, 1);
    for (int q = n_qubits - 1; q >= 0; --q) {
        int code;
        bool x = x_mask & (1u << q), z = z_mask & (1u << q);
        code = x && z ? 2 : (x ? 1 : (z ? 3 : 0));
        Matrix2c p = gates::pauli(code);
        MatrixXc next(out.rows() * 2, out.cols() * 2);
        next.topLeftCorner(out.rows(), out.cols()) = p(0, 0) * out;
        next.topRightCorner(out.rows(), out.cols()) = p(0, 1) * out;
        next.bottomLeftCorner(out.rows(), out.cols()) = p(1, 0) * out;
        next.bottomRightCorner(out.rows(), out.cols()) = p(1, 1) * out;
        out = std::move(next);
    }
    return out;
}

// decompose a Hermitian +-Pauli matrix; throws if it is not one
PauliImage decompose_pauli(const MatrixXc& m, int n_qubits) {
    const int dim = 1 << n_qubits;
    for (uint32_t x = 0; x < (1u << n_qubits); ++x) {
        for (uint32_t z = 0; z < (1u << n_qubits); ++z) {
            MatrixXc p = pauli_string(x, z, n_qubits);
            Complex coef = (p.adjoint() * m).trace() / static_cast<double>(dim);
            if (std::abs(std::abs(coef) - 1.0) < 1e-8) {
                if (std::abs(coef.imag()) > 1e-8)
                    throw std::invalid_argument("not a Hermitian Pauli image");
                PauliImage img;
                img.x_mask = x;
                img.z_mask = z;
                img.sign = coef.real() > 0 ? 1 : -1;
                return img;
            }
        }
    }
    throw std::invalid_argument("matrix is not Clifford (Pauli image not found)");
}

int parity(uint32_t v) { return __builtin_popcount(v) & 1; }

int symplectic_product(const PauliImage& a, const PauliImage& b) {
    return parity(a.x_mask & b.z_mask) ^ parity(a.z_mask & b.x_mask);
}

MatrixXc two_qubit_op(const Matrix2c& on_q0, const Matrix2c& on_q1) {
    return gates::embed_single(on_q1, 1, 2) * gates::embed_single(on_q0, 0, 2);
}

// 2*pi/3 rotation about the (1,1,1) axis: cycles X -> Y -> Z -> X
Matrix2c axis111_rotation() {
    const double s = std::sin(M_PI / 3.0) / std::sqrt(3.0);
    Matrix2c m = std::cos(M_PI / 3.0) * Matrix2c::Identity();
    m -= Complex(0, s) * (gates::pauli(1) + gates::pauli(2) + gates::pauli(3));
    return m;
}

}  // namespace

bool Tableau::is_symplectic() const {
    for (int a = 0; a < 2 * n_qubits; ++a) {
        for (int b = a + 1; b < 2 * n_qubits; ++b) {
            // X_k and Z_k anticommute; all other generator pairs commute
            int expected = (a / 2 == b / 2) ? 1 : 0;
            if (symplectic_product(images[a], images[b]) != expected) return false;
        }
    }
    return true;
}

CliffordElement::CliffordElement(MatrixXc unitary) : u_(std::move(unitary)) {
    const int dim = static_cast<int>(u_.rows());
    int n = dim == 2 ? 1 : (dim == 4 ? 2 : 0);
    if (n == 0 || u_.cols() != dim)
        throw std::invalid_argument("CliffordElement: dimension must be 2 or 4");
    if (gates::unitarity_defect(u_) > 1e-9)
        throw std::invalid_argument("CliffordElement: matrix is not unitary");

    tab_.n_qubits = n;
    for (int q = 0; q < n; ++q) {
        for (int gen = 0; gen < 2; ++gen) {
            uint32_t x = gen == 0 ? (1u << q) : 0;
            uint32_t z = gen == 0 ? 0 : (1u << q);
            MatrixXc img = u_ * pauli_string(x, z, n) * u_.adjoint();
            tab_.images.push_back(decompose_pauli(img, n));
        }
    }
    key_.reserve(tab_.images.size() * 6);
    for (const auto& im : tab_.images) {
        key_ += std::to_string(im.x_mask);
        key_ += ',';
        key_ += std::to_string(im.z_mask);
        key_ += im.sign > 0 ? "+;" : "-;";
    }
}

CliffordElement CliffordElement::compose(const CliffordElement& rhs) const {
    CliffordElement out(u_ * rhs.u_);
    out.cz_count_ = cz_count_ + rhs.cz_count_;
    return out;
}

CliffordElement CliffordElement::inverse() const {
    CliffordElement out(MatrixXc(u_.adjoint()));
    out.cz_count_ = cz_count_;
    return out;
}

const std::vector<CliffordElement>& single_qubit_clifford_group() {
    static const std::vector<CliffordElement> group = [] {
        std::vector<CliffordElement> elems;
        std::unordered_set<std::string> seen;
        std::vector<MatrixXc> gens = {gates::rx(M_PI / 2), gates::rz(M_PI / 2)};
        std::vector<CliffordElement> frontier = {CliffordElement(MatrixXc(Matrix2c::Identity()))};
        seen.insert(frontier[0].key());
        elems.push_back(frontier[0]);
        while (!frontier.empty()) {
            std::vector<CliffordElement> next;
            for (const auto& e : frontier) {
                for (const auto& g : gens) {
                    CliffordElement c(MatrixXc(g * e.unitary()));
                    if (seen.insert(c.key()).second) {
                        elems.push_back(c);
                        next.push_back(c);
                    }
                }
            }
            frontier = std::move(next);
        }
        return elems;
    }();
    return group;
}

namespace {

const std::vector<Matrix2c>& s1_corrections() {
    static const std::vector<Matrix2c> set = [] {
        Matrix2c v = axis111_rotation();
        return std::vector<Matrix2c>{Matrix2c::Identity(), v, Matrix2c(v * v)};
    }();
    return set;
}

CliffordElement build_two_qubit(int cls, int a, int b, int sa, int sb) {
    const auto& c1 = single_qubit_clifford_group();
    const auto& s1 = s1_corrections();
    MatrixXc u = two_qubit_op(Matrix2c(c1[a].unitary()), Matrix2c(c1[b].unitary()));
    int czs = 0;
    switch (static_cast<TwoQubitClass>(cls)) {
        case TwoQubitClass::Single:
            break;
        case TwoQubitClass::CnotLike:
            u = two_qubit_op(s1[sa], s1[sb]) * gates::cz() * u;
            czs = 1;
            break;
        case TwoQubitClass::IswapLike:
            u = two_qubit_op(s1[sa], s1[sb]) * gates::iswap() * u;
            czs = 2;
            break;
        case TwoQubitClass::SwapLike:
            u = gates::swap() * u;
            czs = 3;
            break;
    }
    CliffordElement e{std::move(u)};
    e.cz_count_ = czs;
    return e;
}

}  // namespace

TwoQubitSample sample_two_qubit_clifford(CounterRng& rng) {
    // class weights 576 : 5184 : 5184 : 576
    uint64_t r = rng.next_u64() % 11520;
    TwoQubitClass cls;
    if (r < 576) cls = TwoQubitClass::Single;
    else if (r < 576 + 5184) cls = TwoQubitClass::CnotLike;
    else if (r < 576 + 2 * 5184) cls = TwoQubitClass::IswapLike;
    else cls = TwoQubitClass::SwapLike;

    int a = static_cast<int>(rng.next_u64() % 24);
    int b = static_cast<int>(rng.next_u64() % 24);
    int sa = 0, sb = 0;
    if (cls == TwoQubitClass::CnotLike || cls == TwoQubitClass::IswapLike) {
        sa = static_cast<int>(rng.next_u64() % 3);
        sb = static_cast<int>(rng.next_u64() % 3);
    }
    return {build_two_qubit(static_cast<int>(cls), a, b, sa, sb), cls};
}

const std::vector<CliffordElement>& two_qubit_clifford_group() {
    static const std::vector<CliffordElement> group = [] {
        std::vector<CliffordElement> elems;
        elems.reserve(11520);
        std::unordered_set<std::string> seen;
        for (int cls = 0; cls < 4; ++cls) {
            int ns = (cls == 1 || cls == 2) ? 3 : 1;
            for (int a = 0; a < 24; ++a)
                for (int b = 0; b < 24; ++b)
                    for (int sa = 0; sa < ns; ++sa)
                        for (int sb = 0; sb < ns; ++sb) {
                            CliffordElement e = build_two_qubit(cls, a, b, sa, sb);
                            if (!seen.insert(e.key()).second)
                                throw std::logic_error("two-qubit class decomposition collision");
                            elems.push_back(std::move(e));
                        }
        }
        return elems;
    }();
    return group;
}

CompilationStats compilation_stats() {
    const auto& c1 = single_qubit_clifford_group();
    // pulse count per single-qubit element from the image of Z:
    //   +Z -> virtual Rz only (0 pulses), -Z -> two Rx(pi/2), else one Rx(pi/2)
    auto pulses = [](const CliffordElement& e) {
        const PauliImage& imz = e.tableau().images[1];
        if (imz.x_mask == 0) return imz.sign > 0 ? 0 : 2;
        return 1;
    };
    double c1_avg = 0.0;
    for (const auto& e : c1) c1_avg += pulses(e);
    c1_avg /= c1.size();

    double s1_avg = 0.0;
    for (const auto& m : s1_corrections()) s1_avg += pulses(CliffordElement(MatrixXc(m)));
    s1_avg /= 3.0;

    CompilationStats st;
    st.avg_cz_per_clifford = (576.0 * 0 + 5184.0 * 1 + 5184.0 * 2 + 576.0 * 3) / 11520.0;
    double frac_with_s1 = (5184.0 + 5184.0) / 11520.0;
    st.avg_sq_pulses_per_clifford = 2.0 * c1_avg + frac_with_s1 * 2.0 * s1_avg;
    return st;
}

}  // namespace shuttlesim::clifford
