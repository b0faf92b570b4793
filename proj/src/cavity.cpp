#include "qpurify/cavity.hpp"

#include <cmath>
#include <numeric>

#include <unsupported/Eigen/FFT>

namespace qpurify {

namespace {

constexpr double kTwoPi = 6.283185307179586;

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(static_cast<size_t>(n));
    weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                double q0 = 1.0, q1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double q2 = ((2 * k - 1) * x * q1 - (k - 1) * q0) / k;
                    q0 = q1;
                    q1 = q2;
                }
                const double deriv = n * (x * q1 - q0) / (x * x - 1.0);
                nodes[static_cast<size_t>(i)] = x;
                weights[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * deriv * deriv);
                break;
            }
        }
    }
}

Complex inner(const std::vector<Complex>& a, const std::vector<Complex>& b, double dt) {
    Complex acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc * dt;
}

struct CircuitModes {
    // Conditional photon modes reaching each detector, per atom component.
    std::vector<Complex> u0_minus, u1_minus, u0_plus, u1_plus;
    double dt;
};

/// Interferometer of the partial-polarizer POVM: the cavity-scattered branch
/// and the mirror branch are recombined, the weak branch is attenuated by eps,
/// and the two detector outputs are read out. With ideal modes (+f, -f, -f)
/// detector "minus" heralds a|0> + eps b|1> directly and detector "plus" the
/// same element up to the sign correction on the atom.
CircuitModes circuit_modes(const std::vector<Complex>& m0, const std::vector<Complex>& m1,
                           const std::vector<Complex>& mv, double eps, double dt) {
    const size_t n = m0.size();
    CircuitModes modes;
    modes.dt = dt;
    modes.u0_minus.resize(n);
    modes.u1_minus.resize(n);
    modes.u0_plus.resize(n);
    modes.u1_plus.resize(n);
    const double norm = 1.0 / (2.0 * std::sqrt(2.0));
    for (size_t i = 0; i < n; ++i) {
        const Complex sum0 = m0[i] + mv[i], dif0 = m0[i] - mv[i];
        const Complex sum1 = m1[i] + mv[i], dif1 = m1[i] - mv[i];
        modes.u0_minus[i] = norm * (eps * sum0 - dif0);
        modes.u1_minus[i] = norm * (eps * sum1 - dif1);
        modes.u0_plus[i] = norm * (eps * sum0 + dif0);
        modes.u1_plus[i] = norm * (eps * sum1 + dif1);
    }
    return modes;
}

struct ConditionalState {
    Matrix2c rho_unnormalized;  // atom state summed over detectors, corrections applied
    double success;
};

ConditionalState conditional_state(const CircuitModes& modes, Complex a, Complex b) {
    auto branch = [&](const std::vector<Complex>& u0, const std::vector<Complex>& u1) {
        Matrix2c rho;
        rho(0, 0) = std::norm(a) * inner(u0, u0, modes.dt).real();
        rho(1, 1) = std::norm(b) * inner(u1, u1, modes.dt).real();
        rho(0, 1) = a * std::conj(b) * inner(u1, u0, modes.dt);
        rho(1, 0) = std::conj(rho(0, 1));
        return rho;
    };
    Matrix2c rho = branch(modes.u0_minus, modes.u1_minus);
    Matrix2c rho_plus = branch(modes.u0_plus, modes.u1_plus);
    // detector-plus click realizes the same element after a sign flip on |1>
    rho_plus.row(1) *= -1.0;
    rho_plus.col(1) *= -1.0;
    rho += rho_plus;
    return ConditionalState{rho, rho.trace().real()};
}

double fidelity_against_target(const ConditionalState& cond, Complex a, Complex b, double eps,
                               bool strict_loss) {
    Eigen::Vector2cd target;
    target << a, eps * b;
    const double target_norm2 = target.squaredNorm();
    target /= std::sqrt(target_norm2);
    const double numer = (target.adjoint() * cond.rho_unnormalized * target)(0, 0).real();
    const double denom = strict_loss ? target_norm2 : cond.success;
    return denom > 1e-300 ? numer / denom : 0.0;
}

}  // namespace

CavityParams CavityParams::from_mhz(double g_mhz, double kappa_mhz, double gamma_mhz,
                                    double delta_mhz) {
    return CavityParams{kTwoPi * g_mhz, kTwoPi * kappa_mhz, kTwoPi * gamma_mhz,
                        kTwoPi * delta_mhz};
}

Pulse Pulse::gaussian(double duration_us, int num_samples) {
    if (duration_us <= 0.0) throw std::invalid_argument("pulse duration must be positive");
    if (num_samples < 16) throw std::invalid_argument("pulse grid too coarse");
    Pulse p;
    p.duration = duration_us;
    p.dt = 2.0 * duration_us / num_samples;
    p.samples.resize(static_cast<size_t>(num_samples));
    const double width = duration_us / 5.0;
    double norm2 = 0.0;
    for (int k = 0; k < num_samples; ++k) {
        const double t = k * p.dt;
        const double u = (t - duration_us / 2.0) / width;
        const double value = std::exp(-u * u);
        p.samples[static_cast<size_t>(k)] = value;
        norm2 += value * value;
    }
    const double scale = 1.0 / std::sqrt(norm2 * p.dt);
    for (auto& s : p.samples) s *= scale;
    return p;
}

Complex reflection_coefficient(double omega, AtomBranch branch, const CavityParams& params) {
    const Complex iw(0.0, omega);
    if (branch == AtomBranch::Decoupled)
        return (iw - params.kappa / 2.0) / (iw + params.kappa / 2.0);
    const Complex atom = iw + params.gamma / 2.0;
    const double g2 = params.g * params.g;
    return ((iw - params.kappa / 2.0) * atom + g2) / ((iw + params.kappa / 2.0) * atom + g2);
}

BranchScatter scatter_pulse(const Pulse& pulse, AtomBranch branch, const CavityParams& params) {
    if (pulse.dt * params.kappa > 0.1)
        throw std::invalid_argument("pulse grid too coarse for the cavity linewidth");
    const int n = static_cast<int>(pulse.samples.size());

    Eigen::FFT<double> fft;
    std::vector<Complex> spectrum;
    std::vector<Complex> input = pulse.samples;
    fft.fwd(spectrum, input);

    const double domega = kTwoPi / (n * pulse.dt);
    for (int m = 0; m < n; ++m) {
        const double omega = (m <= n / 2 ? m : m - n) * domega;
        spectrum[static_cast<size_t>(m)] *=
            reflection_coefficient(params.delta + omega, branch, params);
    }
    BranchScatter out;
    fft.inv(out.output_mode, spectrum);

    out.overlap = inner(pulse.samples, out.output_mode, pulse.dt);
    out.loss = 1.0 - inner(out.output_mode, out.output_mode, pulse.dt).real();
    return out;
}

ScatterResult scatter_both(const Pulse& pulse, const CavityParams& params) {
    BranchScatter coupled = scatter_pulse(pulse, AtomBranch::Coupled, params);
    BranchScatter decoupled = scatter_pulse(pulse, AtomBranch::Decoupled, params);
    ScatterResult r;
    r.output_mode_atom0 = std::move(coupled.output_mode);
    r.output_mode_atom1 = std::move(decoupled.output_mode);
    r.overlap0 = coupled.overlap;
    r.overlap1 = decoupled.overlap;
    r.loss0 = coupled.loss;
    r.loss1 = decoupled.loss;
    r.slow_pulse_warning = params.kappa * pulse.duration < 50.0;
    return r;
}

double povm_fidelity_from_modes(const std::vector<Complex>& m0, const std::vector<Complex>& m1,
                                const std::vector<Complex>& m_mirror, double dt, double eps,
                                Complex a, Complex b, bool strict_loss) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
    const CircuitModes modes = circuit_modes(m0, m1, m_mirror, eps, dt);
    const ConditionalState cond = conditional_state(modes, a, b);
    return fidelity_against_target(cond, a, b, eps, strict_loss);
}

double povm_fidelity_for_state(const CavityParams& params, double eps, const Pulse& pulse,
                               Complex a, Complex b, bool strict_loss) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
    const BranchScatter m0 = scatter_pulse(pulse, AtomBranch::Coupled, params);
    const BranchScatter m1 = scatter_pulse(pulse, AtomBranch::Decoupled, params);
    std::vector<Complex> mv(pulse.samples.size());
    for (size_t i = 0; i < mv.size(); ++i) mv[i] = -pulse.samples[i];
    return povm_fidelity_from_modes(m0.output_mode, m1.output_mode, mv, pulse.dt, eps, a, b,
                                    strict_loss);
}

PovmFidelityResult povm_fidelity(const CavityParams& params, double eps, const Pulse& pulse,
                                 const PovmFidelityOptions& options) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
    const BranchScatter m0 = scatter_pulse(pulse, AtomBranch::Coupled, params);
    const BranchScatter m1 = scatter_pulse(pulse, AtomBranch::Decoupled, params);
    std::vector<Complex> mv(pulse.samples.size());
    for (size_t i = 0; i < mv.size(); ++i) mv[i] = -pulse.samples[i];
    const CircuitModes modes = circuit_modes(m0.output_mode, m1.output_mode, mv, eps, pulse.dt);

    std::vector<double> nodes, weights;
    gauss_legendre(options.polar_nodes, nodes, weights);

    double fidelity_sum = 0.0, weight_sum = 0.0, success_sum = 0.0;
    double worst = 1.0;
    for (int iu = 0; iu < options.polar_nodes; ++iu) {
        const double cos_theta = nodes[static_cast<size_t>(iu)];
        const double wu = weights[static_cast<size_t>(iu)];
        const double theta = std::acos(cos_theta);
        const double a = std::cos(theta / 2.0);
        const double sb = std::sin(theta / 2.0);
        for (int iphi = 0; iphi < options.azimuthal_nodes; ++iphi) {
            const double phi = kTwoPi * iphi / options.azimuthal_nodes;
            const Complex b = sb * std::exp(Complex(0.0, phi));
            const ConditionalState cond = conditional_state(modes, a, b);
            const double f = fidelity_against_target(cond, a, b, eps, options.strict_loss);
            fidelity_sum += wu * f;
            success_sum += wu * cond.success;
            weight_sum += wu;
            worst = std::min(worst, f);
        }
    }
    return PovmFidelityResult{fidelity_sum / weight_sum, worst, success_sum / weight_sum};
}

std::vector<SweepRow> sweep(const std::vector<double>& g_values_mhz, const CavityParams& base,
                            double eps, const Pulse& pulse, std::optional<double> a_tilde) {
    std::vector<SweepRow> rows;
    rows.reserve(g_values_mhz.size());
    for (double g_mhz : g_values_mhz) {
        CavityParams params = base;
        params.g = kTwoPi * g_mhz;
        const PovmFidelityResult f = povm_fidelity(params, eps, pulse);
        SweepRow row{g_mhz, f.average, f.average * f.average, std::nullopt};
        if (a_tilde) row.purified_fidelity = *a_tilde * row.f_bsm;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qpurify
