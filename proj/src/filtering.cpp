#include "qpurify/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qpurify {

namespace {

const Matrix4d& minkowski() {
    static const Matrix4d m = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
    return m;
}

struct MBasisVector {
    Eigen::Vector4d v;
    double eigenvalue;   // eigenvalue of the associated W product, ~ s^2
    double signature;    // v^T M v after normalization: +1 timelike, -1 spacelike
};

/// Eigenbasis of the M-self-adjoint product W = R^T M R M (or R M R^T M),
/// orthonormalized in the Minkowski metric within eigenvalue clusters.
std::vector<MBasisVector> m_orthonormal_eigenbasis(const Matrix4d& w) {
    Eigen::EigenSolver<Matrix4d> es(w);
    if (es.info() != Eigen::Success)
        throw NonDiagonalizableError("eigendecomposition failed");

    const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
    for (int i = 0; i < 4; ++i) {
        if (std::abs(es.eigenvalues()(i).imag()) > 1e-8 * scale)
            throw NonDiagonalizableError("non-diagonalizable normal form: complex eigenvalues");
        if (es.eigenvalues()(i).real() < -1e-8 * scale)
            throw NonDiagonalizableError("non-diagonalizable normal form: negative eigenvalue");
    }

    Eigen::Vector4d lambda = es.eigenvalues().real();
    Matrix4d vecs = es.eigenvectors().real();
    // Eigen returns real eigenvectors for real eigenvalues of a real matrix, but
    // re-check in case a near-defective pair slipped through as complex.
    if (es.eigenvectors().imag().cwiseAbs().maxCoeff() > 1e-8)
        throw NonDiagonalizableError("non-diagonalizable normal form: complex eigenvectors");

    std::array<int, 4> order = {0, 1, 2, 3};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return lambda(a) > lambda(b); });

    const double cluster_tol = 1e-8 * std::max(1.0, lambda.cwiseAbs().maxCoeff());
    const Matrix4d& m = minkowski();

    std::vector<MBasisVector> basis;
    size_t start = 0;
    while (start < 4) {
        size_t stop = start + 1;
        while (stop < 4 &&
               std::abs(lambda(order[stop]) - lambda(order[stop - 1])) <= cluster_tol)
            ++stop;
        const int dim = static_cast<int>(stop - start);
        Eigen::MatrixXd v(4, dim);
        double mean = 0.0;
        for (int k = 0; k < dim; ++k) {
            v.col(k) = vecs.col(order[start + static_cast<size_t>(k)]);
            mean += lambda(order[start + static_cast<size_t>(k)]);
        }
        mean /= dim;

        // Restriction of the metric to the cluster subspace; a singular
        // restriction signals a light-like (Jordan) direction.
        const Eigen::MatrixXd gram = v.transpose() * m * v;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ges(gram);
        for (int k = 0; k < dim; ++k) {
            const double g = ges.eigenvalues()(k);
            if (std::abs(g) < 1e-10 * std::max(1.0, gram.cwiseAbs().maxCoeff()))
                throw NonDiagonalizableError(
                    "non-diagonalizable normal form: light-like eigenvector cluster");
        }
        for (int k = dim - 1; k >= 0; --k) {  // descending g: any timelike vector first
            const double g = ges.eigenvalues()(k);
            MBasisVector b;
            b.v = v * ges.eigenvectors().col(k) / std::sqrt(std::abs(g));
            b.eigenvalue = mean;
            b.signature = g > 0 ? 1.0 : -1.0;
            basis.push_back(b);
        }
        start = stop;
    }
    return basis;
}

/// Proper orthochronous Lorentz matrix from the M-orthonormal eigenbasis:
/// timelike column first (future-pointing), spacelike columns by decreasing
/// eigenvalue. The determinant is not fixed here.
Matrix4d lorentz_candidate(std::vector<MBasisVector> basis) {
    int timelike = -1;
    for (size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].signature > 0) {
            if (timelike >= 0)
                throw NonDiagonalizableError(
                    "non-diagonalizable normal form: metric signature mismatch");
            timelike = static_cast<int>(i);
        }
    }
    if (timelike < 0)
        throw NonDiagonalizableError("non-diagonalizable normal form: no timelike direction");

    Matrix4d l;
    Eigen::Vector4d t = basis[static_cast<size_t>(timelike)].v;
    if (t(0) < 0) t = -t;
    l.col(0) = t;

    std::vector<MBasisVector> rest;
    for (size_t i = 0; i < basis.size(); ++i)
        if (static_cast<int>(i) != timelike) rest.push_back(basis[i]);
    std::stable_sort(rest.begin(), rest.end(),
                     [](const MBasisVector& a, const MBasisVector& b) {
                         return a.eigenvalue > b.eigenvalue;
                     });
    for (int k = 0; k < 3; ++k) l.col(k + 1) = rest[static_cast<size_t>(k)].v;
    return l;
}

/// Completes column k of l with a spacelike unit vector M-orthogonal to the
/// columns listed in `fixed` (used when the corresponding singular value is 0).
void complete_column(Matrix4d& l, int k, const std::vector<int>& fixed) {
    const Matrix4d& m = minkowski();
    double best_norm = 0.0;
    Eigen::Vector4d best = Eigen::Vector4d::Zero();
    for (int cand = 0; cand < 4; ++cand) {
        Eigen::Vector4d v = Eigen::Vector4d::Unit(cand);
        for (int j : fixed) {
            const double eta = l.col(j).transpose() * m * l.col(j);
            const double proj = l.col(j).transpose() * m * v;
            v -= (proj / eta) * l.col(j);
        }
        const double n2 = -double(v.transpose() * m * v);
        if (n2 > best_norm) {
            best_norm = n2;
            best = v;
        }
    }
    if (best_norm < 1e-12)
        throw NonDiagonalizableError("non-diagonalizable normal form: cannot complete basis");
    l.col(k) = best / std::sqrt(best_norm);
}

double sigma_max(const Matrix2c& a) {
    Eigen::JacobiSVD<Matrix2c> svd(a);
    return svd.singularValues()(0);
}

double sigma_min(const Matrix2c& a) {
    Eigen::JacobiSVD<Matrix2c> svd(a);
    return svd.singularValues()(1);
}

}  // namespace

Matrix4c magic_basis_matrix() {
    const Complex i{0.0, 1.0};
    Matrix4c t;
    t << 1, 0, 0, 1,
         0, 1, 1, 0,
         0, i, -i, 0,
         1, 0, 0, -1;
    return t / std::sqrt(2.0);
}

Matrix4d lorentz_from_sl2c(const Matrix2c& a) {
    Matrix4d l;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            l(i, j) = 0.5 * (pauli(i) * a * pauli(j) * a.adjoint()).trace().real();
    return l;
}

Matrix2c sl2c_from_lorentz(const Matrix4d& lorentz) {
    const Matrix4c t = magic_basis_matrix();
    const Matrix4c x = t.adjoint() * lorentz.cast<Complex>() * t;
    // Reshuffle so that y[(i,j),(k,l)] = x[(i,k),(j,l)] = vec(A) vec(A)^dag.
    Matrix4c y;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    y(i * 2 + j, k * 2 + l) = x(i * 2 + k, j * 2 + l);
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (y + y.adjoint()));
    const Eigen::Vector4d vals = es.eigenvalues();
    if (vals(3) <= 0 || (std::abs(vals(0)) + std::abs(vals(1)) + std::abs(vals(2))) > 1e-8 * vals(3))
        throw NonDiagonalizableError("Lorentz matrix has no SL(2,C) preimage");
    Vector4c w = std::sqrt(vals(3)) * es.eigenvectors().col(3);
    // Fix the irrelevant global phase for reproducibility.
    int pivot = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(w(i)) > std::abs(w(pivot))) pivot = i;
    w *= std::conj(w(pivot)) / std::abs(w(pivot));
    Matrix2c a;
    a << w(0), w(1), w(2), w(3);
    return a;
}

LorentzDecomposition lorentz_svd(const RMatrix& rmat) {
    const Matrix4d& m = minkowski();
    const Matrix4d r = rmat.matrix();

    // R^T M R M is similar to diag(s_k^2) with eigenvector matrix L2.
    Matrix4d l2 = lorentz_candidate(m_orthonormal_eigenbasis(r.transpose() * m * r * m));
    if (l2.determinant() < 0) l2.col(3) = -l2.col(3);

    // R (L2^T)^{-1} = L1 Sigma pairs the left factor to the chosen right basis.
    const Matrix4d y = r * m * l2 * m;

    Eigen::Vector4d sigma;
    Matrix4d l1 = Matrix4d::Zero();

    const double t2 = y.col(0).transpose() * m * y.col(0);
    if (t2 < 1e-10)
        throw NonDiagonalizableError("non-diagonalizable normal form: light-like range");
    sigma(0) = std::sqrt(t2);
    l1.col(0) = y.col(0) / sigma(0);
    if (l1(0, 0) <= 0)
        throw NonDiagonalizableError("past-pointing timelike image; input is not a valid state");

    std::vector<int> fixed = {0};
    std::vector<int> free_cols;
    for (int k = 1; k < 4; ++k) {
        const double n2 = -double(y.col(k).transpose() * m * y.col(k));
        if (n2 > 1e-20) {
            sigma(k) = std::sqrt(n2);
            l1.col(k) = y.col(k) / sigma(k);
            fixed.push_back(k);
        } else {
            sigma(k) = 0.0;
            free_cols.push_back(k);
        }
    }
    for (int k : free_cols) {
        complete_column(l1, k, fixed);
        fixed.push_back(k);
    }

    if (l1.determinant() < 0) {
        if (!free_cols.empty()) {
            l1.col(free_cols.back()) = -l1.col(free_cols.back());
        } else {
            l1.col(3) = -l1.col(3);
            sigma(3) = -sigma(3);
        }
    }

    LorentzDecomposition dec{l1, l2, sigma};
    const Matrix4d recon = dec.l1 * dec.sigma.asDiagonal() * dec.l2.transpose();
    if ((recon - r).cwiseAbs().maxCoeff() > 1e-7)
        throw NonDiagonalizableError("non-diagonalizable normal form: reconstruction failed");
    return dec;
}

OptimalFilterResult optimal_filter(const DensityMatrix& rho) {
    const RMatrix r = to_rpicture(rho);
    LorentzDecomposition dec = lorentz_svd(r);
    const Matrix4d& m = minkowski();

    const Matrix4d la = m * dec.l1.transpose() * m;  // L1^{-1}
    const Matrix4d lb = m * dec.l2.transpose() * m;  // L2^{-1}
    Matrix2c a = sl2c_from_lorentz(la);
    Matrix2c b = sl2c_from_lorentz(lb);
    a /= sigma_max(a);
    b /= sigma_max(b);

    LocalFilter filter{a, b, std::min(sigma_min(a), sigma_min(b))};
    const bool flat = concurrence(rho) <= 1e-10;
    return OptimalFilterResult{filter, dec, flat};
}

LocalFilter closed_form_filter(ChannelFamily family, const FamilyParams& params) {
    const double a = params.a, b = params.b, p = params.p;
    const Complex i{0.0, 1.0};
    switch (family) {
        case ChannelFamily::Depolarizing: {
            if (std::abs(a - b) < 1e-12)
                throw DegenerateInputError("depolarizing filter undefined for a = b");
            if (std::abs(3.0 - 4.0 * p) < 1e-12)
                throw DegenerateInputError("depolarizing filter undefined at p = 3/4");
            const double delta = depolarizing_delta(a, b, p);
            const double c =
                (8.0 * p * p - 12.0 * p + 9.0 + 2.0 * delta) / (3.0 * (a * a - b * b) * (3.0 - 4.0 * p));
            const double eps = std::sqrt(std::abs((1.0 - c) / (1.0 + c)));
            Matrix2c fa, fb;
            fa << 0, 1, i * eps, 0;
            fb << -i * eps, 0, 0, 1;
            return LocalFilter{fa, fb, eps};
        }
        case ChannelFamily::AmplitudeDamping: {
            const double eps = std::sqrt(std::abs((1.0 - p) / std::sqrt(p * p + 1.0)));
            Matrix2c fa, fb;
            fa << eps, 0, 0, 1;
            fb << 0, 1, eps, 0;
            return LocalFilter{fa, fb, eps};
        }
        case ChannelFamily::PhaseDamping: {
            if (a < b)
                throw DegenerateInputError("phase-damping filter assumes a >= b");
            if (a < 1e-12)
                throw DegenerateInputError("phase-damping filter undefined for a = 0");
            const double eps = b / a;
            Matrix2c fb;
            fb << eps, 0, 0, 1;
            return LocalFilter{Matrix2c::Identity(), fb, eps};
        }
    }
    throw std::logic_error("unknown channel family");
}

RankTwoResult rank_two_distill(double fidelity, double epsilon) {
    if (!(fidelity > 0.0 && fidelity <= 1.0))
        throw std::invalid_argument("fidelity must lie in (0, 1]");
    if (epsilon <= 0.0)
        throw FilterAnnihilatesState("epsilon = 0 annihilates the state");
    if (epsilon > 1.0) throw std::invalid_argument("epsilon must lie in (0, 1]");
    const double e2 = epsilon * epsilon;
    const double p = fidelity * e2 + (1.0 - fidelity) * e2 * e2;
    return RankTwoResult{fidelity * e2 / p, p};
}

RankTwoResult rank_two_distill_pipeline(double fidelity, double epsilon) {
    if (epsilon <= 0.0)
        throw FilterAnnihilatesState("epsilon = 0 annihilates the state");
    const Vector4c psi = bell_vector(BellIndex::PsiPlus);
    Matrix4c m = fidelity * (psi * psi.adjoint());
    m(3, 3) += 1.0 - fidelity;
    const DensityMatrix rho(m);
    Matrix2c f;
    f << 1, 0, 0, epsilon;
    const FilterOutcome out = apply_local(f, f, rho);
    return RankTwoResult{fidelity_with_pure(out.state, bell_state(BellIndex::PsiPlus)),
                         out.probability};
}

DistillationReport distill(const DensityMatrix& rho) {
    const OptimalFilterResult opt = optimal_filter(rho);
    const FilterOutcome out = apply_local(opt.filter.a, opt.filter.b, rho);
    return DistillationReport{rho,
                              out.state,
                              out.probability,
                              concurrence(rho),
                              concurrence(out.state),
                              chsh_max(rho).beta,
                              chsh_max(out.state).beta,
                              opt.nothing_to_distill};
}

}  // namespace qpurify
