#pragma once

#include <cstdint>

#include "qpurify/qtypes.hpp"

namespace qpurify {

class UnphysicalRError : public QpurifyError {
public:
    using QpurifyError::QpurifyError;
};

class DegenerateInputError : public QpurifyError {
public:
    using QpurifyError::QpurifyError;
};

/// Real parametrization R_ij = Tr[rho (sigma_i (x) sigma_j)], indices 0..3 over
/// (identity, sigma_x, sigma_y, sigma_z). R_00 = 1 for a unit-trace state.
class RMatrix {
public:
    explicit RMatrix(const Matrix4d& m);

    const Matrix4d& matrix() const { return m_; }
    /// 3x3 correlation block (rows/cols 1..3).
    Eigen::Matrix3d correlation_block() const { return m_.block<3, 3>(1, 1); }

private:
    Matrix4d m_;
};

RMatrix to_rpicture(const DensityMatrix& rho);
/// Inverse of to_rpicture; throws UnphysicalRError if the reconstruction is not PSD.
DensityMatrix from_rpicture(const RMatrix& r);

/// Wootters concurrence, computed through the Hermitian form
/// sqrt(rho) (sy(x)sy) rho^* (sy(x)sy) sqrt(rho).
double concurrence(const DensityMatrix& rho);

enum class ChshNormalization {
    ClassicalBound1,  // local bound 1, quantum maximum sqrt(2)
    ClassicalBound2,  // conventional CHSH, local bound 2
};

struct ChshValue {
    double beta;
    ChshNormalization normalization;
};

/// Maximal CHSH value via the Horodecki criterion: sqrt(u1 + u2) with u1 >= u2
/// the two largest eigenvalues of T^t T.
ChshValue chsh_max(const DensityMatrix& rho,
                   ChshNormalization norm = ChshNormalization::ClassicalBound1);

/// Maximal CHSH value with all four measurement vectors restricted to the x-y
/// plane. This is the quantity the per-family closed forms evaluate; it can be
/// exceeded by the unrestricted maximum when the z-z correlation dominates.
ChshValue chsh_max_xy_plane(const DensityMatrix& rho,
                            ChshNormalization norm = ChshNormalization::ClassicalBound1);

/// Randomized direct maximization of Tr(rho B) over measurement-vector
/// quadruples; cross-check for the Horodecki value (never exceeds it).
double chsh_random_search(const DensityMatrix& rho, int samples, std::uint64_t seed);

enum class ChannelFamily { Depolarizing, AmplitudeDamping, PhaseDamping };

/// Initial Schmidt coefficients and noise parameter for one closed-form family.
/// The amplitude-damping forms assume a = b = 1/sqrt(2).
struct FamilyParams {
    double a = 1.0 / 1.4142135623730951;
    double b = 1.0 / 1.4142135623730951;
    double p = 0.0;
};

struct ChshClosedForm {
    double beta_initial;
    double beta_filtered;
};

/// Literal evaluation of the per-family closed forms for the maximal CHSH value
/// before and after optimal filtering (classical-bound-1 normalization).
ChshClosedForm chsh_closed_form(ChannelFamily family, const FamilyParams& params);

struct ConcurrenceClosedForm {
    double c_initial;
    double c_filtered;
};

/// Literal per-family concurrence closed forms (same caveats as the CHSH ones).
ConcurrenceClosedForm concurrence_closed_form(ChannelFamily family, const FamilyParams& params);

/// Delta = sqrt(9 a^2 b^2 (3-4p) + 4 p^2 (3-2p)^2) as printed for the
/// depolarizing family; kept verbatim for fixture comparison even though its
/// small-p limit is suspect.
double depolarizing_delta(double a, double b, double p);

}  // namespace qpurify
