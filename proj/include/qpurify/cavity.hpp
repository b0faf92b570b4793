#pragma once

#include <optional>
#include <vector>

#include "qpurify/qtypes.hpp"

namespace qpurify {

/// Rates are angular frequencies in rad/us; times in us. A flat detuning
/// `delta` offsets the pulse carrier from the bare cavity resonance.
struct CavityParams {
    double g;
    double kappa;
    double gamma;
    double delta = 0.0;

    /// Construct from the conventional "/2pi MHz" values.
    static CavityParams from_mhz(double g_mhz, double kappa_mhz, double gamma_mhz,
                                 double delta_mhz = 0.0);
};

/// Normalized single-photon temporal mode on a uniform grid over [0, 2T].
struct Pulse {
    double duration;               // T in us
    double dt;                     // grid step in us
    std::vector<Complex> samples;  // integral of |f|^2 dt equals 1

    /// Gaussian f(t) ~ exp[-(t - T/2)^2 / (T/5)^2] sampled on [0, 2T].
    static Pulse gaussian(double duration_us, int num_samples = 4096);
};

enum class AtomBranch {
    Coupled,    // atom in |0>: the cavity transition is active
    Decoupled,  // atom in |1>: bare cavity response
};

/// Frequency response of the single-sided cavity at offset `omega` from the
/// bare cavity resonance. The decoupled branch is (i w - k/2)/(i w + k/2); the
/// coupled branch includes the atomic response of width gamma and coupling g.
Complex reflection_coefficient(double omega, AtomBranch branch, const CavityParams& params);

struct BranchScatter {
    std::vector<Complex> output_mode;
    Complex overlap;  // <f|out>; ideally +1 (coupled) or -1 (decoupled, pi phase)
    double loss;      // photon-loss probability 1 - |output|^2
};

/// Scatters the pulse off the cavity by spectral multiplication with the
/// reflection coefficient. Throws when the grid cannot resolve the cavity
/// linewidth (dt * kappa > 0.1).
BranchScatter scatter_pulse(const Pulse& pulse, AtomBranch branch, const CavityParams& params);

struct ScatterResult {
    std::vector<Complex> output_mode_atom0;
    std::vector<Complex> output_mode_atom1;
    Complex overlap0;
    Complex overlap1;
    double loss0;
    double loss1;
    bool slow_pulse_warning;  // set when kappa * T < 50
};

ScatterResult scatter_both(const Pulse& pulse, const CavityParams& params);

struct PovmFidelityOptions {
    /// Count photon loss against fidelity instead of treating it as a heralded
    /// failure.
    bool strict_loss = false;
    int polar_nodes = 24;
    int azimuthal_nodes = 48;
};

/// Conditional-state fidelity of the scattering-realized diag(1, eps) POVM for
/// one input atom state a|0> + b|1>, averaged over both detector branches with
/// the click-conditioned correction applied.
double povm_fidelity_for_state(const CavityParams& params, double eps, const Pulse& pulse,
                               Complex a, Complex b, bool strict_loss = false);

/// Same figure from explicitly supplied photon modes: m0 / m1 are the modes
/// scattered with the atom in |0> / |1>, m_mirror the mirror-branch mode.
/// With the ideal modes (+f, -f, -f) the result is exactly 1.
double povm_fidelity_from_modes(const std::vector<Complex>& m0, const std::vector<Complex>& m1,
                                const std::vector<Complex>& m_mirror, double dt, double eps,
                                Complex a, Complex b, bool strict_loss = false);

struct PovmFidelityResult {
    double average;  // uniform Bloch-sphere average (the reported figure)
    double worst;
    double mean_success_probability;
};

PovmFidelityResult povm_fidelity(const CavityParams& params, double eps, const Pulse& pulse,
                                 const PovmFidelityOptions& options = {});

struct SweepRow {
    double g_over_2pi_mhz;
    double f_povm;
    double f_bsm;
    std::optional<double> purified_fidelity;
};

/// F_POVM over a grid of couplings, with F_BSM = F_POVM^2 and, when a
/// recurrence fidelity is supplied, the purified figure a_tilde * F_BSM.
std::vector<SweepRow> sweep(const std::vector<double>& g_values_mhz, const CavityParams& base,
                            double eps, const Pulse& pulse,
                            std::optional<double> a_tilde = std::nullopt);

}  // namespace qpurify
