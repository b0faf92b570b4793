#include "qpurify/polarizer.hpp"

#include <cmath>

namespace qpurify {

void SlabStack::validate() const {
    if (!(n_outside >= 1.0 && n_outside <= 3.0 && n_slab >= 1.0 && n_slab <= 3.0))
        throw std::invalid_argument("refractive indices must lie in [1, 3]");
    if (!(theta >= 0.0 && theta < M_PI / 2.0))
        throw std::invalid_argument("tilt angle must lie in [0, pi/2)");
    if (slabs < 1) throw std::invalid_argument("slab count must be at least 1");
}

double refraction_angle(double theta, double n, double n_prime) {
    const double s = n * std::sin(theta) / n_prime;
    if (s > 1.0)
        throw TotalInternalReflectionError("total internal reflection at theta = " +
                                           std::to_string(theta));
    return std::asin(s);
}

std::pair<double, double> interface_transmissions(double theta, double n, double n_prime) {
    const double theta_p = refraction_angle(theta, n, n_prime);
    const double ct = std::cos(theta), ctp = std::cos(theta_p);
    const double t_h = 2.0 * n * ct / (n_prime * ct + n * ctp);
    const double t_v = 2.0 * n * ct / (n * ct + n_prime * ctp);
    return {t_h, t_v};
}

Transmission stack_epsilon(const SlabStack& stack) {
    stack.validate();
    const double theta_p = refraction_angle(stack.theta, stack.n_outside, stack.n_slab);
    const auto [th_in, tv_in] = interface_transmissions(stack.theta, stack.n_outside, stack.n_slab);
    const auto [th_out, tv_out] = interface_transmissions(theta_p, stack.n_slab, stack.n_outside);

    const double th_slab = th_in * th_out;  // amplitude product through one slab
    const double tv_slab = tv_in * tv_out;

    Transmission t;
    t.t_h_paper = std::pow(th_slab, stack.slabs);
    t.t_v_paper = std::pow(tv_slab, stack.slabs);
    t.epsilon_paper = t.t_h_paper / t.t_v_paper;
    t.t_p_physical = std::pow(th_slab * th_slab, stack.slabs);
    t.t_s_physical = std::pow(tv_slab * tv_slab, stack.slabs);
    // weak/strong intensity ratio; equals cos(theta - theta')^(4k) identically
    const double c = std::cos(stack.theta - theta_p);
    t.epsilon_physical = std::pow(c, 4 * stack.slabs);
    t.paper_values_exceed_unity = t.t_h_paper > 1.0 + 1e-12 || t.t_v_paper > 1.0 + 1e-12;
    return t;
}

double stack_amplitude_epsilon(const SlabStack& stack) {
    return std::sqrt(stack_epsilon(stack).epsilon_physical);
}

double theta_for_epsilon(double target_eps, double n_slab, int slabs, double n_outside) {
    if (!(target_eps > 0.0 && target_eps <= 1.0))
        throw std::invalid_argument("target epsilon must lie in (0, 1]");

    auto ratio = [&](double theta) {
        SlabStack s{n_outside, n_slab, slabs, theta};
        return stack_epsilon(s).epsilon_physical;
    };

    const double hi_theta = M_PI / 2.0 - 1e-9;
    const double eps_min = ratio(hi_theta);
    if (target_eps < eps_min)
        throw EpsilonRangeError("target epsilon " + std::to_string(target_eps) +
                                    " below the achievable interval [" + std::to_string(eps_min) +
                                    ", 1]",
                                eps_min, 1.0);
    if (target_eps == 1.0) return 0.0;

    double lo = 0.0, hi = hi_theta;  // ratio(lo) = 1 >= target >= ratio(hi)
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (ratio(mid) > target_eps)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace qpurify
