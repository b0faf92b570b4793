#include "qpurify/channels.hpp"

#include <cmath>

namespace qpurify {

namespace {

void check_noise_parameter(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("noise parameter must lie in [0, 1], got " + std::to_string(p));
}

}  // namespace

Channel depolarizing(double p) {
    check_noise_parameter(p);
    Channel ch;
    ch.label = "depolarizing";
    ch.p = p;
    ch.kraus.push_back(std::sqrt(1.0 - p) * pauli(0));
    for (int i = 1; i <= 3; ++i) ch.kraus.push_back(std::sqrt(p / 3.0) * pauli(i));
    return ch;
}

Channel amplitude_damping(double p) {
    check_noise_parameter(p);
    Channel ch;
    ch.label = "amplitude-damping";
    ch.p = p;
    Matrix2c m0, m1;
    m0 << 1, 0, 0, std::sqrt(1.0 - p);
    m1 << 0, std::sqrt(p), 0, 0;
    ch.kraus = {m0, m1};
    return ch;
}

Channel phase_damping(double p) {
    check_noise_parameter(p);
    Channel ch;
    ch.label = "phase-damping";
    ch.p = p;
    ch.kraus = {std::sqrt(1.0 - p) * pauli(0), std::sqrt(p) * pauli(3)};
    return ch;
}

bool is_complete(const Channel& ch, double tol) {
    Matrix2c sum = Matrix2c::Zero();
    for (const auto& m : ch.kraus) sum += m.adjoint() * m;
    return (sum - Matrix2c::Identity()).cwiseAbs().maxCoeff() <= tol;
}

Matrix2c apply_single(const Channel& ch, const Matrix2c& rho) {
    Matrix2c out = Matrix2c::Zero();
    for (const auto& m : ch.kraus) out += m * rho * m.adjoint();
    return out;
}

DensityMatrix apply_bilocal(const Channel& ch_a, const Channel& ch_b, const DensityMatrix& rho) {
    Matrix4c out = Matrix4c::Zero();
    for (const auto& ma : ch_a.kraus) {
        for (const auto& mb : ch_b.kraus) {
            const Matrix4c k = kron(ma, mb);
            out += k * rho.matrix() * k.adjoint();
        }
    }
    return DensityMatrix(out);
}

Matrix4c depolarized_schmidt_matrix(double a, double b, double p) {
    Matrix4c m = Matrix4c::Zero();
    const double q = 3.0 - 4.0 * p;
    m(0, 0) = (3.0 * a * a * q + 4.0 * p * p) / 9.0;
    m(3, 3) = (3.0 * b * b * q + 4.0 * p * p) / 9.0;
    m(1, 1) = m(2, 2) = (6.0 * p - 4.0 * p * p) / 9.0;
    m(0, 3) = m(3, 0) = a * b * q * q / 9.0;
    return m;
}

Matrix4c phase_damped_schmidt_matrix(double a, double b, double p) {
    Matrix4c m = Matrix4c::Zero();
    const double q = (2.0 * p - 1.0) * (2.0 * p - 1.0);
    m(0, 0) = a * a;
    m(3, 3) = b * b;
    m(0, 3) = m(3, 0) = a * b * q;
    return m;
}

Matrix4c amplitude_damped_schmidt_matrix_reference(double a, double b, double p) {
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = a * a + b * b * p * p;
    m(1, 1) = m(2, 2) = b * b * (1.0 - p) * p;
    m(3, 3) = b * b * (1.0 - p) * p;  // see header: the Kraus route gives b^2 (1-p)^2
    m(0, 3) = m(3, 0) = a * b * (1.0 - p);
    return m;
}

}  // namespace qpurify
