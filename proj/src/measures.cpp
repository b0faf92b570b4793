#include "qpurify/measures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qpurify {

namespace {

double bound_factor(ChshNormalization norm) {
    return norm == ChshNormalization::ClassicalBound1 ? 1.0 : 2.0;
}

Matrix4c spin_flip() {
    return kron(pauli(2), pauli(2));
}

}  // namespace

RMatrix::RMatrix(const Matrix4d& m) : m_(m) {
    if (std::abs(m_(0, 0) - 1.0) > 1e-9)
        throw UnphysicalRError("R_00 must be 1, got " + std::to_string(m_(0, 0)));
    if (m_.cwiseAbs().maxCoeff() > 1.0 + 1e-9)
        throw UnphysicalRError("R entries must lie in [-1, 1]");
}

RMatrix to_rpicture(const DensityMatrix& rho) {
    Matrix4d r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            r(i, j) = (kron(pauli(i), pauli(j)) * rho.matrix()).trace().real();
    return RMatrix(r);
}

DensityMatrix from_rpicture(const RMatrix& r) {
    Matrix4c m = Matrix4c::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m += r.matrix()(i, j) * kron(pauli(i), pauli(j));
    m *= 0.25;
    try {
        return DensityMatrix(m);
    } catch (const InvalidStateError& e) {
        throw UnphysicalRError(std::string("unphysical R: ") + e.what());
    }
}

double concurrence(const DensityMatrix& rho) {
    const Matrix4c yy = spin_flip();
    const Matrix4c root = sqrt_psd(rho.matrix());
    const Matrix4c herm = root * yy * rho.matrix().conjugate() * yy * root;
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (herm + herm.adjoint()), Eigen::EigenvaluesOnly);
    Eigen::Vector4d vals = es.eigenvalues();
    for (int i = 0; i < 4; ++i) vals(i) = vals(i) > 1e-12 ? std::sqrt(vals(i)) : 0.0;
    std::sort(vals.data(), vals.data() + 4, std::greater<double>());
    return std::max(0.0, vals(0) - vals(1) - vals(2) - vals(3));
}

ChshValue chsh_max(const DensityMatrix& rho, ChshNormalization norm) {
    const Eigen::Matrix3d t = to_rpicture(rho).correlation_block();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t, Eigen::EigenvaluesOnly);
    const auto& u = es.eigenvalues();  // ascending
    return ChshValue{bound_factor(norm) * std::sqrt(u(2) + u(1)), norm};
}

ChshValue chsh_max_xy_plane(const DensityMatrix& rho, ChshNormalization norm) {
    const Eigen::Matrix3d t = to_rpicture(rho).correlation_block();
    const Eigen::Matrix2d txy = t.block<2, 2>(0, 0);
    // Both singular values of the in-plane block enter the planar maximum.
    return ChshValue{bound_factor(norm) * std::sqrt((txy.transpose() * txy).trace()), norm};
}

double chsh_random_search(const DensityMatrix& rho, int samples, std::uint64_t seed) {
    const Eigen::Matrix3d t = to_rpicture(rho).correlation_block();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_unit = [&] {
        Eigen::Vector3d v;
        do {
            v << gauss(rng), gauss(rng), gauss(rng);
        } while (v.norm() < 1e-12);
        return Eigen::Vector3d(v.normalized());
    };
    // For fixed c, d the optimal a, b are the normalized images T(c+d), T(c-d),
    // so only the second pair is sampled.
    double best = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Eigen::Vector3d c = random_unit();
        const Eigen::Vector3d d = random_unit();
        const double beta = 0.5 * ((t * (c + d)).norm() + (t * (c - d)).norm());
        best = std::max(best, beta);
    }
    return best;
}

double depolarizing_delta(double a, double b, double p) {
    return std::sqrt(9.0 * a * a * b * b * (3.0 - 4.0 * p) +
                     4.0 * p * p * (3.0 - 2.0 * p) * (3.0 - 2.0 * p));
}

ChshClosedForm chsh_closed_form(ChannelFamily family, const FamilyParams& params) {
    const double a = params.a, b = params.b, p = params.p;
    const double sqrt2 = std::sqrt(2.0);
    switch (family) {
        case ChannelFamily::Depolarizing: {
            const double q = 3.0 - 4.0 * p;
            const double delta = depolarizing_delta(a, b, p);
            const double den = -4.0 * p * p + 6.0 * p + delta;
            if (std::abs(den) < 1e-12)
                throw DegenerateInputError("depolarizing closed form: vanishing denominator");
            return ChshClosedForm{2.0 * sqrt2 / 9.0 * a * b * q * q, sqrt2 * a * b * q * q / den};
        }
        case ChannelFamily::AmplitudeDamping: {
            const double den = std::sqrt(p * p + 1.0) + p;
            return ChshClosedForm{sqrt2 * (1.0 - p), sqrt2 / den};
        }
        case ChannelFamily::PhaseDamping: {
            const double ab = std::abs(a * b);
            if (ab < 1e-12)
                throw DegenerateInputError("phase-damping closed form: product state (a b = 0)");
            const double q = 1.0 - 2.0 * p;
            const double filtered = std::sqrt(1.0 + q * q * q * q);
            return ChshClosedForm{2.0 * ab * filtered, filtered};
        }
    }
    throw std::logic_error("unknown channel family");
}

ConcurrenceClosedForm concurrence_closed_form(ChannelFamily family, const FamilyParams& params) {
    const double a = params.a, b = params.b, p = params.p;
    switch (family) {
        case ChannelFamily::Depolarizing: {
            const double q = 3.0 - 4.0 * p;
            const double delta = depolarizing_delta(a, b, p);
            const double num = a * b * q * q + 4.0 * p * p - 6.0 * p;
            const double den = -4.0 * p * p + 6.0 * p + delta;
            if (std::abs(den) < 1e-12)
                throw DegenerateInputError("depolarizing closed form: vanishing denominator");
            return ConcurrenceClosedForm{std::max(0.0, 2.0 / 9.0 * num), std::max(0.0, num / den)};
        }
        case ChannelFamily::AmplitudeDamping: {
            const double c0 = (1.0 - p) * (1.0 - p);
            const double c1 = (1.0 - p) / (std::sqrt(p * p + 1.0) + p);
            return ConcurrenceClosedForm{std::max(0.0, c0), std::max(0.0, c1)};
        }
        case ChannelFamily::PhaseDamping: {
            const double q = (1.0 - 2.0 * p) * (1.0 - 2.0 * p);
            return ConcurrenceClosedForm{std::max(0.0, 2.0 * std::abs(a * b) * q), std::max(0.0, q)};
        }
    }
    throw std::logic_error("unknown channel family");
}

}  // namespace qpurify
