#pragma once

#include "qpurify/measures.hpp"
#include "qpurify/qtypes.hpp"

namespace qpurify {

class NonDiagonalizableError : public QpurifyError {
public:
    using QpurifyError::QpurifyError;
};

/// R = L1 * diag(sigma) * L2^T with L1, L2 proper orthochronous Lorentz
/// transformations (L M L^T = M for M = diag(1,-1,-1,-1), det = +1, entry
/// (0,0) >= 1). sigma is ordered s0 >= s1 >= s2 >= |s3|; only s3 may be negative.
struct LorentzDecomposition {
    Matrix4d l1;
    Matrix4d l2;
    Eigen::Vector4d sigma;
};

/// Local filtering POVM element. epsilon is the strength of the weaker factor,
/// i.e. min over the two factors of (smallest / largest singular value).
struct LocalFilter {
    QubitOperator a;
    QubitOperator b;
    double epsilon = 1.0;
};

/// Singular value decomposition of R in the Lorentz metric, computed from the
/// eigendecompositions of the M-self-adjoint products R M R^T M and R^T M R M.
/// Degenerate eigenvalue clusters are re-orthonormalized in the Minkowski inner
/// product; non-diagonalizable (Jordan / light-like) cases throw.
LorentzDecomposition lorentz_svd(const RMatrix& r);

struct OptimalFilterResult {
    LocalFilter filter;
    LorentzDecomposition decomposition;
    /// Set when the input carries no distillable entanglement (concurrence 0);
    /// the filter is still returned and leaves the normal form unchanged.
    bool nothing_to_distill = false;
};

/// Extracts the optimal single-copy filters from the Lorentz factors through the
/// magic-basis correspondence A (x) A^* = T^dag L1^{-1} T, then rescales each
/// factor to unit operator norm. Applying the result maps R to Sigma / s0.
OptimalFilterResult optimal_filter(const DensityMatrix& rho);

/// Literal per-family filters: the bilateral Procrustean pair for the
/// depolarizing family (requires a != b), the bilateral amplitude-damping filter,
/// and the unilateral diag(b/a, 1) phase-damping filter.
LocalFilter closed_form_filter(ChannelFamily family, const FamilyParams& params);

struct RankTwoResult {
    double fidelity;
    double probability;
};

/// F' = F e^2 / [F e^2 + (1-F) e^4], p = F e^2 + (1-F) e^4.
RankTwoResult rank_two_distill(double fidelity, double epsilon);

/// Same quantities through the explicit matrix route: build the rank-two state,
/// apply the bilateral diag(1, e) filter, and read the fidelity off the state.
RankTwoResult rank_two_distill_pipeline(double fidelity, double epsilon);

struct DistillationReport {
    DensityMatrix input_state;
    DensityMatrix output_state;
    double success_prob;
    double c_before;
    double c_after;
    double beta_before;
    double beta_after;
    bool nothing_to_distill;
};

DistillationReport distill(const DensityMatrix& rho);

// SL(2,C) <-> proper orthochronous Lorentz correspondence used by the filter
// extraction; exposed for tests.
Matrix4d lorentz_from_sl2c(const Matrix2c& a);
Matrix2c sl2c_from_lorentz(const Matrix4d& lorentz);
/// The magic-basis change matrix T.
Matrix4c magic_basis_matrix();

}  // namespace qpurify
