#pragma once

#include <random>

#include "qpurify/qtypes.hpp"

namespace qpurify::testing {

inline Matrix4c random_ginibre(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix4c g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    return g;
}

/// Full-rank random density matrix (Ginibre ensemble).
inline DensityMatrix random_density(std::mt19937_64& rng) {
    const Matrix4c g = random_ginibre(rng);
    Matrix4c m = g * g.adjoint();
    return DensityMatrix(m / m.trace().real());
}

/// Random pure two-qubit state.
inline PureState random_pure(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector4c v;
    for (int i = 0; i < 4; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    return PureState(Vector4c(v.normalized()));
}

inline Matrix2c random_unitary2(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix2c h;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) h(i, j) = Complex(gauss(rng), gauss(rng));
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix2c> es(h);
    Matrix2c u = Matrix2c::Zero();
    for (int k = 0; k < 2; ++k) {
        const Complex phase = std::exp(Complex(0.0, es.eigenvalues()(k)));
        u += phase * es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
    }
    return u;
}

/// Random contraction (operator norm <= 1), generically non-unitary.
inline Matrix2c random_filter2(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix2c a;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::JacobiSVD<Matrix2c> svd(a);
    return a / svd.singularValues()(0);
}

template <typename A, typename B>
double max_abs_diff(const A& a, const B& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qpurify::testing
