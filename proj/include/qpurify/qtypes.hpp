#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qpurify {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Matrix4d = Eigen::Matrix4d;
using Vector4c = Eigen::Vector4cd;
using MatrixXc = Eigen::MatrixXcd;

// Single-qubit operators carry no constraints (filters are non-unitary).
using QubitOperator = Matrix2c;

// Basis order is fixed everywhere: |00>, |01>, |10>, |11>.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = -1e-10;

class QpurifyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NormalizationError : public QpurifyError {
public:
    using QpurifyError::QpurifyError;
};

class InvalidStateError : public QpurifyError {
public:
    using QpurifyError::QpurifyError;
};

class FilterAnnihilatesState : public QpurifyError {
public:
    using QpurifyError::QpurifyError;
};

enum class BellIndex { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline constexpr std::array<BellIndex, 4> kBellOrder = {
    BellIndex::PhiPlus, BellIndex::PhiMinus, BellIndex::PsiPlus, BellIndex::PsiMinus};

const char* to_string(BellIndex k);

/// Normalized two-qubit state vector.
class PureState {
public:
    explicit PureState(const Vector4c& amplitudes);

    /// a|00> + b|11>; requires a^2 + b^2 = 1.
    static PureState schmidt(double a, double b);

    const Vector4c& amplitudes() const { return amps_; }

private:
    Vector4c amps_;
};

/// 4x4 Hermitian, unit-trace, positive semidefinite matrix. The constructor
/// symmetrizes (rho + rho^dagger)/2 to absorb round-off, then validates; states
/// that fail the PSD check raise instead of being clipped.
class DensityMatrix {
public:
    explicit DensityMatrix(const Matrix4c& m);

    static DensityMatrix maximally_mixed();

    const Matrix4c& matrix() const { return m_; }
    double min_eigenvalue() const;

private:
    Matrix4c m_;
};

// Pauli algebra. pauli(0) is the identity.
const Matrix2c& pauli(int i);
Matrix2c hadamard();

Matrix4c kron(const Matrix2c& a, const Matrix2c& b);
MatrixXc kron(const MatrixXc& a, const MatrixXc& b);

PureState bell_state(BellIndex k);
const Vector4c& bell_vector(BellIndex k);

DensityMatrix pure_to_density(const PureState& psi);

struct FilterOutcome {
    DensityMatrix state;
    double probability;
};

/// (A (x) B) rho (A (x) B)^dagger, renormalized. probability is the trace of the
/// unnormalized result; throws FilterAnnihilatesState when it falls below 1e-14.
FilterOutcome apply_local(const QubitOperator& a, const QubitOperator& b,
                          const DensityMatrix& rho);

double fidelity_with_pure(const DensityMatrix& rho, const PureState& psi);

/// Partial trace over an n-qubit density matrix (dimension 2^n); keeps the
/// qubits listed in `keep` (most-significant qubit is index 0), in that order.
MatrixXc partial_trace(const MatrixXc& rho, const std::vector<int>& keep, int num_qubits);

/// Convenience wrapper for the 4-qubit -> 2-qubit case used by the recurrence oracle.
DensityMatrix partial_trace_to_pair(const MatrixXc& rho16, int q0, int q1);

/// Embeds a two-qubit operator acting on qubits (q0, q1) of an n-qubit register.
MatrixXc embed_two_qubit_op(const Matrix4c& op, int q0, int q1, int num_qubits);

/// Hermitian square root with eigenvalue dust below `clip` clamped to zero.
Matrix4c sqrt_psd(const Matrix4c& m, double clip = 1e-12);

}  // namespace qpurify
