#include "qpurify/recurrence.hpp"

#include <cmath>

namespace qpurify {

BellDiagonal::BellDiagonal(const std::array<double, 4>& weights) : w_(weights) {
    double sum = 0.0;
    for (double w : w_) {
        if (w < -1e-12)
            throw InvalidStateError("bell-diagonal weight is negative: " + std::to_string(w));
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw InvalidStateError("bell-diagonal weights sum to " + std::to_string(sum));
}

BellDiagonal BellDiagonal::werner(double fidelity) {
    const double rest = (1.0 - fidelity) / 3.0;
    return BellDiagonal(fidelity, rest, rest, rest);
}

BellDiagonal bell_diagonal_of(const DensityMatrix& rho) {
    std::array<double, 4> w{};
    for (size_t k = 0; k < 4; ++k) {
        const Vector4c& v = bell_vector(kBellOrder[k]);
        w[k] = std::max(0.0, (v.adjoint() * rho.matrix() * v)(0, 0).real());
    }
    return BellDiagonal(w);
}

DensityMatrix twirl(const DensityMatrix& rho) {
    const Matrix4c xx = kron(pauli(1), pauli(1));
    return DensityMatrix(0.5 * rho.matrix() + 0.5 * xx * rho.matrix() * xx);
}

MapResult recurrence_map(const BellDiagonal& x, const BellDiagonal& xp) {
    const double a = x[0], b = x[1], c = x[2], d = x[3];
    const double ap = xp[0], bp = xp[1], cp = xp[2], dp = xp[3];
    const double n = (a + c) * (ap + cp) + (b + d) * (bp + dp);
    if (n < 1e-14) throw ProtocolNeverSucceeds("protocol never succeeds (N = 0)");
    return MapResult{BellDiagonal((a * ap + c * cp) / n, (b * bp + d * dp) / n,
                                  (b * dp + d * bp) / n, (a * cp + c * ap) / n),
                     n};
}

PurificationTrace iterate(const BellDiagonal& x0, int max_rounds, double target_fidelity) {
    PurificationTrace trace;
    auto basin = [](const BellDiagonal& x) { return x[0] > x[1] + x[2] + x[3]; };
    trace.rounds.push_back(PurificationRound{x0, 1.0, 1.0, basin(x0)});
    trace.converged = x0.fidelity() >= target_fidelity;

    BellDiagonal x = x0;
    double yield = 1.0;
    for (int round = 1; round <= max_rounds && !trace.converged; ++round) {
        const MapResult step = recurrence_map(x, x);
        x = step.weights;
        yield *= step.success_probability / 2.0;
        trace.rounds.push_back(PurificationRound{x, step.success_probability, yield, basin(x)});
        trace.converged = x.fidelity() >= target_fidelity;
    }
    return trace;
}

namespace {

// Measurement-frame gadgets for the exact two-pair round; qubit order is
// (1, 2, 1', 2') with qubit 1 as the most significant index.
MatrixXc hadamard_all4() {
    const MatrixXc h = hadamard();
    return kron(kron(h, h), kron(h, h));
}

Matrix4c psi_swap_gate() {
    // diag(1, i) (x) diag(1, -i): fixes phi+/-, exchanges psi+ <-> psi- (phase -i)
    Matrix2c s_plus = Matrix2c::Zero(), s_minus = Matrix2c::Zero();
    s_plus(0, 0) = 1.0;
    s_plus(1, 1) = Complex(0.0, 1.0);
    s_minus(0, 0) = 1.0;
    s_minus(1, 1) = Complex(0.0, -1.0);
    return kron(s_plus, s_minus);
}

}  // namespace

ExactRoundResult simulate_round_exact(const DensityMatrix& rho, const DensityMatrix& rho_prime) {
    const MatrixXc big =
        kron(MatrixXc(twirl(rho).matrix()), MatrixXc(twirl(rho_prime).matrix()));

    const MatrixXc frame = hadamard_all4();
    const MatrixXc rotated = frame * big * frame.adjoint();

    Matrix4c even = Matrix4c::Zero();
    even(0, 0) = 1.0;
    even(3, 3) = 1.0;
    const Matrix4c odd = Matrix4c::Identity() - even;

    // parity projections on (1,1') = qubits (0,2) and (2,2') = qubits (1,3)
    const MatrixXc proj_even_even =
        embed_two_qubit_op(even, 0, 2, 4) * embed_two_qubit_op(even, 1, 3, 4);
    const MatrixXc proj_odd_odd =
        embed_two_qubit_op(odd, 0, 2, 4) * embed_two_qubit_op(odd, 1, 3, 4);

    const Matrix4c hh = kron(hadamard(), hadamard());
    const Matrix4c unswap = psi_swap_gate();
    const Matrix2c sz = pauli(3);

    Matrix4c kept = Matrix4c::Zero();
    double success = 0.0;
    for (const MatrixXc& proj : {proj_even_even, proj_odd_odd}) {
        const MatrixXc branch = proj * rotated * proj.adjoint();
        for (int s1 = 0; s1 < 2; ++s1) {
            for (int s2 = 0; s2 < 2; ++s2) {
                // project qubits (1', 2') onto the x-basis outcome |s1 s2>
                MatrixXc bra1(1, 2), bra2(1, 2);
                bra1 << 1.0, s1 == 0 ? 1.0 : -1.0;
                bra2 << 1.0, s2 == 0 ? 1.0 : -1.0;
                const MatrixXc bra = kron(MatrixXc(Matrix4c::Identity()),
                                          MatrixXc(0.5 * kron(bra1, bra2)));
                Matrix4c collapsed = (bra * branch * bra.adjoint());
                // phase correction when the x outcomes disagree
                if (s1 != s2) {
                    const Matrix4c corr = kron(sz, Matrix2c::Identity());
                    collapsed = corr * collapsed * corr.adjoint();
                }
                success += collapsed.trace().real();
                kept += collapsed;
            }
        }
    }
    if (success < 1e-14)
        throw ProtocolNeverSucceeds("exact round has zero success probability");

    Matrix4c out = hh * kept * hh.adjoint();
    out = unswap * out * unswap.adjoint();
    return ExactRoundResult{DensityMatrix(out / success), success};
}

}  // namespace qpurify
