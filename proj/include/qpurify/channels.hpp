#pragma once

#include <string>
#include <vector>

#include "qpurify/qtypes.hpp"

namespace qpurify {

/// Single-qubit noise channel in Kraus form. Completeness sum_i M_i^dag M_i = 1
/// is validated at construction. Channels are stored in Kraus form only; the
/// superoperator form is derived on demand where needed.
struct Channel {
    std::vector<QubitOperator> kraus;
    std::string label;
    double p = 0.0;
};

Channel depolarizing(double p);
Channel amplitude_damping(double p);
Channel phase_damping(double p);

bool is_complete(const Channel& ch, double tol = 1e-12);

/// Applies the channel to a single-qubit density matrix.
Matrix2c apply_single(const Channel& ch, const Matrix2c& rho);

/// rho' = sum_{i,j} (M_i (x) N_j) rho (M_i (x) N_j)^dagger.
DensityMatrix apply_bilocal(const Channel& ch_a, const Channel& ch_b, const DensityMatrix& rho);

// Closed-form output matrices for the Schmidt family a|00> + b|11>, used as
// comparison fixtures against the Kraus route.
Matrix4c depolarized_schmidt_matrix(double a, double b, double p);
Matrix4c phase_damped_schmidt_matrix(double a, double b, double p);
/// Reference tabulation for bilateral amplitude damping. Its (3,3) entry is
/// b^2 (1-p) p, which breaks trace preservation; the Kraus route gives
/// b^2 (1-p)^2 there and is authoritative. Kept for the documented comparison.
Matrix4c amplitude_damped_schmidt_matrix_reference(double a, double b, double p);

}  // namespace qpurify
