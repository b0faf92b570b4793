#pragma once

#include <array>
#include <utility>

#include "qpurify/qtypes.hpp"

namespace qpurify {

enum class PovmPhase { One, I };

struct PovmElement {
    QubitOperator op;
    PovmPhase phase;
};

/// diag(1, eps) or diag(1, i*eps) for 0 < eps <= 1.
PovmElement povm_element(double eps, PovmPhase phase = PovmPhase::One);

/// Non-destructive parity projector on a qubit pair; outcome 1 is the even
/// subspace |00><00| + |11><11| (the span of phi+ and phi-), outcome 2 its
/// complement.
struct ParityProjector {
    Matrix4c op;
    int outcome;
};

std::pair<ParityProjector, ParityProjector> parity_projectors();

/// U Pi U^dagger for a unitary conjugation; permutes which Bell pair the
/// projector selects.
ParityProjector permuted_projector(const ParityProjector& base, const Matrix4c& conjugation);

struct BsmOutcome {
    BellIndex bell;
    double probability;
};

/// Full Bell-state classification by two successive binary projections:
/// parity (phi vs psi), then phase through the Hadamard-permuted projector.
std::array<BsmOutcome, 4> full_bsm(const DensityMatrix& rho_pair);

/// Conditional-phase gate exp(i*pi |1,h><1,h|) of the scattering model, acting
/// on one atom and the photon polarization qubit {h, v}. Exposed as the exact
/// algebraic fixture behind the parity measurement.
Eigen::MatrixXcd atom_photon_phase_gate(int atom_index, int photon_index, int num_qubits);

}  // namespace qpurify
