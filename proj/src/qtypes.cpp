#include "qpurify/qtypes.hpp"

#include <algorithm>
#include <cmath>

namespace qpurify {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix2c make_pauli(int i) {
    Matrix2c m;
    switch (i) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -kI, kI, 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw std::out_of_range("pauli index must be 0..3");
    }
    return m;
}

}  // namespace

const char* to_string(BellIndex k) {
    switch (k) {
        case BellIndex::PhiPlus: return "phi+";
        case BellIndex::PhiMinus: return "phi-";
        case BellIndex::PsiPlus: return "psi+";
        case BellIndex::PsiMinus: return "psi-";
    }
    return "?";
}

const Matrix2c& pauli(int i) {
    static const std::array<Matrix2c, 4> table = {make_pauli(0), make_pauli(1),
                                                  make_pauli(2), make_pauli(3)};
    return table.at(static_cast<size_t>(i));
}

Matrix2c hadamard() {
    Matrix2c h;
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

MatrixXc kron(const MatrixXc& a, const MatrixXc& b) {
    MatrixXc out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

PureState::PureState(const Vector4c& amplitudes) : amps_(amplitudes) {
    const double n2 = amps_.squaredNorm();
    if (std::abs(n2 - 1.0) > 1e-10)
        throw NormalizationError("pure state is not normalized: |psi|^2 = " + std::to_string(n2));
}

PureState PureState::schmidt(double a, double b) {
    Vector4c v;
    v << a, 0, 0, b;
    return PureState(v);
}

const Vector4c& bell_vector(BellIndex k) {
    static const std::array<Vector4c, 4> table = [] {
        const double s = 1.0 / std::sqrt(2.0);
        std::array<Vector4c, 4> t;
        t[0] << s, 0, 0, s;    // phi+
        t[1] << s, 0, 0, -s;   // phi-
        t[2] << 0, s, s, 0;    // psi+
        t[3] << 0, s, -s, 0;   // psi-
        return t;
    }();
    return table.at(static_cast<size_t>(k));
}

PureState bell_state(BellIndex k) { return PureState(bell_vector(k)); }

DensityMatrix::DensityMatrix(const Matrix4c& m) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw InvalidStateError("density matrix is not Hermitian");
    m_ = 0.5 * (m + m.adjoint());
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > 1e-9)
        throw InvalidStateError("density matrix trace is " + std::to_string(tr));
    m_ /= tr;
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kPsdTol)
        throw InvalidStateError("density matrix is not positive semidefinite (min eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()) + ")");
}

DensityMatrix DensityMatrix::maximally_mixed() {
    return DensityMatrix(Matrix4c::Identity() * 0.25);
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

DensityMatrix pure_to_density(const PureState& psi) {
    const Vector4c& v = psi.amplitudes();
    return DensityMatrix(v * v.adjoint());
}

FilterOutcome apply_local(const QubitOperator& a, const QubitOperator& b,
                          const DensityMatrix& rho) {
    const Matrix4c f = kron(a, b);
    const Matrix4c raw = f * rho.matrix() * f.adjoint();
    const double p = raw.trace().real();
    if (p < 1e-14)
        throw FilterAnnihilatesState("filter annihilates state (p = " + std::to_string(p) + ")");
    return FilterOutcome{DensityMatrix(raw / p), p};
}

double fidelity_with_pure(const DensityMatrix& rho, const PureState& psi) {
    const Vector4c& v = psi.amplitudes();
    return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

MatrixXc partial_trace(const MatrixXc& rho, const std::vector<int>& keep, int num_qubits) {
    const Eigen::Index dim = Eigen::Index(1) << num_qubits;
    if (rho.rows() != dim || rho.cols() != dim)
        throw std::invalid_argument("partial_trace: matrix size does not match qubit count");
    std::vector<bool> seen(static_cast<size_t>(num_qubits), false);
    for (int q : keep) {
        if (q < 0 || q >= num_qubits) throw std::invalid_argument("partial_trace: qubit index out of range");
        if (seen[static_cast<size_t>(q)]) throw std::invalid_argument("partial_trace: duplicate qubit index");
        seen[static_cast<size_t>(q)] = true;
    }
    std::vector<int> traced;
    for (int q = 0; q < num_qubits; ++q)
        if (!seen[static_cast<size_t>(q)]) traced.push_back(q);

    const int nk = static_cast<int>(keep.size());
    const int nt = static_cast<int>(traced.size());
    const Eigen::Index dk = Eigen::Index(1) << nk;
    const Eigen::Index dt = Eigen::Index(1) << nt;

    // Bit position of qubit q (qubit 0 is the most significant).
    auto bitpos = [num_qubits](int q) { return num_qubits - 1 - q; };

    MatrixXc out = MatrixXc::Zero(dk, dk);
    for (Eigen::Index i = 0; i < dk; ++i) {
        for (Eigen::Index j = 0; j < dk; ++j) {
            Complex sum = 0.0;
            for (Eigen::Index t = 0; t < dt; ++t) {
                Eigen::Index row = 0, col = 0;
                for (int k = 0; k < nk; ++k) {
                    const Eigen::Index bi = (i >> (nk - 1 - k)) & 1;
                    const Eigen::Index bj = (j >> (nk - 1 - k)) & 1;
                    row |= bi << bitpos(keep[static_cast<size_t>(k)]);
                    col |= bj << bitpos(keep[static_cast<size_t>(k)]);
                }
                for (int k = 0; k < nt; ++k) {
                    const Eigen::Index bt = (t >> (nt - 1 - k)) & 1;
                    row |= bt << bitpos(traced[static_cast<size_t>(k)]);
                    col |= bt << bitpos(traced[static_cast<size_t>(k)]);
                }
                sum += rho(row, col);
            }
            out(i, j) = sum;
        }
    }
    return out;
}

DensityMatrix partial_trace_to_pair(const MatrixXc& rho16, int q0, int q1) {
    const MatrixXc reduced = partial_trace(rho16, {q0, q1}, 4);
    return DensityMatrix(Matrix4c(reduced));
}

MatrixXc embed_two_qubit_op(const Matrix4c& op, int q0, int q1, int num_qubits) {
    if (q0 == q1) throw std::invalid_argument("embed_two_qubit_op: identical qubit indices");
    const Eigen::Index dim = Eigen::Index(1) << num_qubits;
    auto bitpos = [num_qubits](int q) { return num_qubits - 1 - q; };
    MatrixXc out = MatrixXc::Zero(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const Eigen::Index r0 = (r >> bitpos(q0)) & 1;
        const Eigen::Index r1 = (r >> bitpos(q1)) & 1;
        const Eigen::Index rest = r & ~((Eigen::Index(1) << bitpos(q0)) | (Eigen::Index(1) << bitpos(q1)));
        for (Eigen::Index c0 = 0; c0 < 2; ++c0) {
            for (Eigen::Index c1 = 0; c1 < 2; ++c1) {
                const Complex amp = op(r0 * 2 + r1, c0 * 2 + c1);
                if (amp == Complex(0.0)) continue;
                const Eigen::Index c = rest | (c0 << bitpos(q0)) | (c1 << bitpos(q1));
                out(r, c) = amp;
            }
        }
    }
    return out;
}

Matrix4c sqrt_psd(const Matrix4c& m, double clip) {
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(m);
    Eigen::Vector4d vals = es.eigenvalues();
    for (int i = 0; i < 4; ++i) vals(i) = vals(i) > clip ? std::sqrt(vals(i)) : 0.0;
    return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace qpurify
