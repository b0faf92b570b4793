#pragma once

#include <utility>

#include "qpurify/qtypes.hpp"

namespace qpurify {

class TotalInternalReflectionError : public QpurifyError {
public:
    using QpurifyError::QpurifyError;
};

class EpsilonRangeError : public QpurifyError {
public:
    EpsilonRangeError(const std::string& message, double lo, double hi)
        : QpurifyError(message), achievable_min(lo), achievable_max(hi) {}
    double achievable_min;
    double achievable_max;
};

/// Stack of identical slabs tilted by theta about the vertical axis. The plane
/// of incidence is horizontal, so the in-plane (p) polarization is the one the
/// source text calls "h" and the sagittal (s) polarization is "v".
struct SlabStack {
    double n_outside = 1.0;
    double n_slab = 1.52;  // crown glass unless specified
    int slabs = 1;
    double theta = 0.0;  // radians

    void validate() const;
};

struct Transmission {
    // Two-interface amplitude products per the tabulated formulas, raised to
    // the slab count. Their ratio exceeds one (the p branch transmits more).
    double t_h_paper;
    double t_v_paper;
    double epsilon_paper;  // t_h_paper / t_v_paper >= 1
    // Physical intensity transmittances of the stack and the weak/strong ratio.
    double t_p_physical;
    double t_s_physical;
    double epsilon_physical;  // in (0, 1]
    bool paper_values_exceed_unity;
};

/// Snell refraction angle; throws on total internal reflection.
double refraction_angle(double theta, double n, double n_prime);

/// Fresnel amplitude transmissions (t_h, t_v) = (p, s) for one interface
/// n -> n_prime at incidence theta. Regular at theta = 0 where both reduce to
/// 2n/(n + n_prime).
std::pair<double, double> interface_transmissions(double theta, double n, double n_prime);

Transmission stack_epsilon(const SlabStack& stack);

/// Amplitude attenuation handed to the POVM: sqrt of the weak/strong intensity
/// ratio of the stack.
double stack_amplitude_epsilon(const SlabStack& stack);

/// Tilt angle at which the stack reaches a target weak/strong intensity ratio,
/// found by bisection on the monotone branch theta in (0, pi/2). Throws
/// EpsilonRangeError when the target is outside the achievable interval.
double theta_for_epsilon(double target_eps, double n_slab, int slabs, double n_outside = 1.0);

}  // namespace qpurify
