#include "qpurify/bsm.hpp"

#include <cmath>

namespace qpurify {

PovmElement povm_element(double eps, PovmPhase phase) {
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("povm strength must lie in (0, 1], got " + std::to_string(eps));
    Matrix2c op = Matrix2c::Zero();
    op(0, 0) = 1.0;
    op(1, 1) = phase == PovmPhase::One ? Complex(eps, 0.0) : Complex(0.0, eps);
    return PovmElement{op, phase};
}

std::pair<ParityProjector, ParityProjector> parity_projectors() {
    Matrix4c p1 = Matrix4c::Zero();
    p1(0, 0) = 1.0;
    p1(3, 3) = 1.0;
    return {ParityProjector{p1, 1}, ParityProjector{Matrix4c::Identity() - p1, 2}};
}

ParityProjector permuted_projector(const ParityProjector& base, const Matrix4c& conjugation) {
    if ((conjugation * conjugation.adjoint() - Matrix4c::Identity()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("projector conjugation must be unitary");
    return ParityProjector{conjugation * base.op * conjugation.adjoint(), base.outcome};
}

std::array<BsmOutcome, 4> full_bsm(const DensityMatrix& rho_pair) {
    const auto [p1, p2] = parity_projectors();
    const Matrix4c hh = kron(hadamard(), hadamard());
    const ParityProjector phase_plus = permuted_projector(p1, hh);  // span{phi+, psi+}
    const Matrix4c phase_minus = Matrix4c::Identity() - phase_plus.op;

    const std::array<Matrix4c, 2> parity_ops = {p1.op, p2.op};
    const std::array<Matrix4c, 2> phase_ops = {phase_plus.op, phase_minus};
    std::array<BsmOutcome, 4> ordered{};
    for (int i = 0; i < 2; ++i) {
        const Matrix4c conditioned =
            parity_ops[static_cast<size_t>(i)] * rho_pair.matrix() * parity_ops[static_cast<size_t>(i)].adjoint();
        for (int j = 0; j < 2; ++j) {
            const double prob = (phase_ops[static_cast<size_t>(j)] * conditioned).trace().real();
            const BellIndex bell = i == 0 ? (j == 0 ? BellIndex::PhiPlus : BellIndex::PhiMinus)
                                          : (j == 0 ? BellIndex::PsiPlus : BellIndex::PsiMinus);
            ordered[static_cast<size_t>(bell)] = BsmOutcome{bell, std::max(0.0, prob)};
        }
    }
    return ordered;
}

Eigen::MatrixXcd atom_photon_phase_gate(int atom_index, int photon_index, int num_qubits) {
    // exp(i pi |1><1| (x) |h><h|) with |h> identified with |0> of the photon qubit
    Matrix4c gate = Matrix4c::Identity();
    gate(2, 2) = -1.0;  // |1>|h> picks up the pi phase
    return embed_two_qubit_op(gate, atom_index, photon_index, num_qubits);
}

}  // namespace qpurify
