// Acceptance suite: every release criterion in one binary, one pass/fail line
// per criterion. Run without arguments for the full suite or with a criterion
// number to run a single one (the ctest entries do the latter).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "qpurify/bsm.hpp"
#include "qpurify/cavity.hpp"
#include "qpurify/channels.hpp"
#include "qpurify/experiments.hpp"
#include "qpurify/filtering.hpp"
#include "qpurify/measures.hpp"
#include "qpurify/polarizer.hpp"
#include "qpurify/recurrence.hpp"

using namespace qpurify;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Check {
    bool ok = true;
    double worst = 0.0;
    void track(double deviation, double tolerance) {
        worst = std::max(worst, deviation);
        if (deviation > tolerance) ok = false;
    }
};

Matrix4c random_ginibre(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix4c g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    return g;
}

DensityMatrix random_density(std::mt19937_64& rng) {
    const Matrix4c g = random_ginibre(rng);
    Matrix4c m = g * g.adjoint();
    return DensityMatrix(m / m.trace().real());
}

Matrix2c random_contraction(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix2c a;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::JacobiSVD<Matrix2c> svd(a);
    return a / svd.singularValues()(0);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// criterion 1: rank-two protocol closed form vs matrix pipeline on a 10x10 grid
Outcome criterion_rank_two() {
    Check check;
    for (int i = 1; i <= 10; ++i) {
        for (int j = 1; j <= 10; ++j) {
            const double f = i / 10.0;
            const double eps = j / 10.0;
            const RankTwoResult closed = rank_two_distill(f, eps);
            const RankTwoResult pipe = rank_two_distill_pipeline(f, eps);
            check.track(std::abs(closed.fidelity - pipe.fidelity), 1e-12);
            check.track(std::abs(closed.probability - pipe.probability), 1e-12);
        }
    }
    return Outcome{check.ok, "max deviation " + fmt(check.worst)};
}

// criterion 2: channel closed-form fixtures, with the (3,3) amplitude-damping
// discrepancy reported rather than matched
Outcome criterion_channel_fixtures() {
    std::mt19937_64 rng(1002);
    std::uniform_real_distribution<double> angle(0.05, M_PI / 4.0);
    std::uniform_real_distribution<double> noise(0.02, 0.98);
    Check check;
    double corner_gap = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double a2 = std::cos(angle(rng));
        const double b2 = std::sqrt(1 - a2 * a2);
        const double p = noise(rng);
        const DensityMatrix in = pure_to_density(PureState::schmidt(a2, b2));

        const Channel dep = depolarizing(p);
        check.track((apply_bilocal(dep, dep, in).matrix() - depolarized_schmidt_matrix(a2, b2, p))
                        .cwiseAbs()
                        .maxCoeff(),
                    1e-12);

        const Channel ph = phase_damping(p);
        check.track((apply_bilocal(ph, ph, in).matrix() - phase_damped_schmidt_matrix(a2, b2, p))
                        .cwiseAbs()
                        .maxCoeff(),
                    1e-12);

        const Channel ad = amplitude_damping(p);
        const Matrix4c kraus_out = apply_bilocal(ad, ad, in).matrix();
        const Matrix4c reference = amplitude_damped_schmidt_matrix_reference(a2, b2, p);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                if (!(r == 3 && c == 3))
                    check.track(std::abs(kraus_out(r, c) - reference(r, c)), 1e-12);
        corner_gap = std::max(corner_gap, std::abs(kraus_out(3, 3) - reference(3, 3)));
    }
    // the corner disagreement is expected: kraus b^2(1-p)^2 vs tabulated b^2(1-p)p
    if (corner_gap <= 1e-12) check.ok = false;
    return Outcome{check.ok, "max agreeing-entry deviation " + fmt(check.worst) +
                                 "; reported (3,3) discrepancy " + fmt(corner_gap)};
}

// criterion 3: amplitude-damping closed-form suite through the literal filter
Outcome criterion_amplitude_suite() {
    Check check;
    const double sqrt2 = std::sqrt(2.0);
    for (int i = 0; i < 20; ++i) {
        const double p = 0.05 * i;
        const Channel ch = amplitude_damping(p);
        const DensityMatrix rho =
            apply_bilocal(ch, ch, pure_to_density(bell_state(BellIndex::PhiPlus)));
        const LocalFilter filter = closed_form_filter(ChannelFamily::AmplitudeDamping, {.p = p});
        const FilterOutcome filtered = apply_local(filter.a, filter.b, rho);

        const double root = std::sqrt(p * p + 1.0);
        check.track(std::abs(concurrence(rho) - (1 - p) * (1 - p)), 1e-9);
        check.track(std::abs(concurrence(filtered.state) - (1 - p) / (root + p)), 1e-9);
        // the closed forms evaluate the planar maximum; the unrestricted
        // criterion leaves the x-y plane for p > 1/2 (see chsh_max_xy_plane)
        check.track(std::abs(chsh_max_xy_plane(rho).beta - sqrt2 * (1 - p)), 1e-9);
        check.track(std::abs(chsh_max_xy_plane(filtered.state).beta - sqrt2 / (root + p)), 1e-9);
        if (p <= 0.5) {
            check.track(std::abs(chsh_max(rho).beta - sqrt2 * (1 - p)), 1e-9);
            check.track(std::abs(chsh_max(filtered.state).beta - sqrt2 / (root + p)), 1e-9);
        }
    }
    return Outcome{check.ok, "max deviation " + fmt(check.worst)};
}

// criterion 4: phase-damping closed-form suite
Outcome criterion_phase_suite() {
    Check check;
    const std::vector<std::pair<double, double>> schmidt = {
        {0.8, 0.6}, {0.95, std::sqrt(1.0 - 0.95 * 0.95)}};
    for (const auto& [a, b] : schmidt) {
        for (int i = 0; i < 20; ++i) {
            const double p = 0.05 * i;
            const Channel ch = phase_damping(p);
            const DensityMatrix rho =
                apply_bilocal(ch, ch, pure_to_density(PureState::schmidt(a, b)));
            const LocalFilter filter =
                closed_form_filter(ChannelFamily::PhaseDamping, {.a = a, .b = b, .p = p});
            const FilterOutcome filtered = apply_local(filter.a, filter.b, rho);

            const double q = (1 - 2 * p) * (1 - 2 * p);
            check.track(std::abs(concurrence(filtered.state) - q), 1e-9);
            check.track(std::abs(concurrence(filtered.state) - concurrence(rho) / (2 * a * b)),
                        1e-9);
            check.track(std::abs(chsh_max(filtered.state).beta - std::sqrt(1.0 + q * q)), 1e-9);
        }
    }
    return Outcome{check.ok, "max deviation " + fmt(check.worst)};
}

// criterion 5: the lorentz-svd filter is never beaten by random local filters
Outcome criterion_filter_optimality() {
    std::mt19937_64 rng(1005);
    Check check;
    int states = 0;
    double worst_margin = 1.0;
    while (states < 100) {
        const DensityMatrix rho = random_density(rng);
        if (concurrence(rho) < 1e-3) continue;
        ++states;
        const OptimalFilterResult opt = optimal_filter(rho);
        const double c_opt =
            concurrence(apply_local(opt.filter.a, opt.filter.b, rho).state);
        double c_best = 0.0;
        for (int trial = 0; trial < 10000; ++trial) {
            const Matrix2c a = random_contraction(rng);
            const Matrix2c b = random_contraction(rng);
            const Matrix4c k = kron(a, b);
            const Matrix4c raw = k * rho.matrix() * k.adjoint();
            const double pr = raw.trace().real();
            if (pr < 1e-12) continue;
            c_best = std::max(c_best, concurrence(DensityMatrix(raw / pr)));
        }
        worst_margin = std::min(worst_margin, c_opt - c_best);
        check.track(c_best - c_opt, 1e-6);
    }
    return Outcome{check.ok, "smallest optimality margin " + fmt(worst_margin)};
}

// criterion 6: hidden nonlocality window for the amplitude-damping family
Outcome criterion_hidden_nonlocality() {
    double lo = -1.0, hi = -1.0;
    for (int i = 1; i < 190; ++i) {
        const double p = i * 0.005;
        const Channel ch = amplitude_damping(p);
        const DensityMatrix rho =
            apply_bilocal(ch, ch, pure_to_density(bell_state(BellIndex::PhiPlus)));
        const DistillationReport rep = distill(rho);
        if (rep.beta_before <= 1.0 && rep.beta_after > 1.0) {
            if (lo < 0) lo = p;
            hi = p;
        }
    }
    const bool pass = lo >= 0.0 && hi > lo;
    std::ostringstream detail;
    if (pass)
        detail << "window p in [" << fmt(lo) << ", " << fmt(hi) << "]";
    else
        detail << "no window found";
    return Outcome{pass, detail.str()};
}

// criterion 7: exact 16x16 round vs the weight map on 200 random pairs
Outcome criterion_recurrence_oracle() {
    std::mt19937_64 rng(1007);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto random_weights = [&] {
        std::array<double, 4> w{};
        double sum = 0.0;
        for (double& x : w) {
            x = uni(rng);
            sum += x;
        }
        for (double& x : w) x /= sum;
        return BellDiagonal(w);
    };
    auto state_of = [](const BellDiagonal& x) {
        Matrix4c m = Matrix4c::Zero();
        for (size_t k = 0; k < 4; ++k) {
            const Vector4c& v = bell_vector(kBellOrder[k]);
            m += x[k] * (v * v.adjoint());
        }
        return DensityMatrix(m);
    };
    Check check;
    for (int pair = 0; pair < 200; ++pair) {
        const BellDiagonal x = random_weights();
        const BellDiagonal xp = random_weights();
        const MapResult expected = recurrence_map(x, xp);
        const ExactRoundResult exact = simulate_round_exact(state_of(x), state_of(xp));
        check.track(std::abs(exact.success_probability - expected.success_probability), 1e-10);
        const BellDiagonal kept = bell_diagonal_of(exact.kept_state);
        for (size_t k = 0; k < 4; ++k) check.track(std::abs(kept[k] - expected.weights[k]), 1e-10);
    }
    return Outcome{check.ok, "max deviation " + fmt(check.worst)};
}

// criterion 8: recurrence convergence behavior on werner inputs
Outcome criterion_recurrence_convergence() {
    const PurificationTrace good = iterate(BellDiagonal::werner(0.8), 20, 0.99);
    bool pass = good.converged && good.rounds.back().state.fidelity() >= 0.99;
    for (size_t r = 1; r < good.rounds.size(); ++r)
        pass = pass && good.rounds[r].state.fidelity() > good.rounds[r - 1].state.fidelity();

    const PurificationTrace bad = iterate(BellDiagonal::werner(0.45), 30, 0.99);
    pass = pass && !bad.converged;

    std::ostringstream detail;
    detail << "F0=0.8 reaches " << fmt(good.rounds.back().state.fidelity()) << " in "
           << good.rounds.size() - 1 << " rounds; F0=0.45 stalls at "
           << fmt(bad.rounds.back().state.fidelity());
    return Outcome{pass, detail.str()};
}

// criterion 9: cavity feasibility numbers at the published operating point
Outcome criterion_cavity_feasibility() {
    const Pulse pulse = Pulse::gaussian(10.0);
    const CavityParams base = CavityParams::from_mhz(27.0, 2.4, 2.6);
    const PovmFidelityResult at_paper_point = povm_fidelity(base, 0.2, pulse);

    std::vector<double> gs;
    for (double g = 13.5; g <= 27.0 + 1e-9; g += 1.35) gs.push_back(g);
    const std::vector<SweepRow> rows = sweep(gs, base, 0.2, pulse);
    double fmin = 1.0, fmax = 0.0;
    bool bsm_ok = true;
    for (const SweepRow& row : rows) {
        fmin = std::min(fmin, row.f_povm);
        fmax = std::max(fmax, row.f_povm);
        bsm_ok = bsm_ok && std::abs(row.f_bsm - row.f_povm * row.f_povm) < 1e-12;
    }
    const double delta_f = fmax - fmin;
    const bool pass = at_paper_point.average >= 0.99 && delta_f <= 2e-3 && bsm_ok;
    std::ostringstream detail;
    detail << "F_POVM=" << fmt(at_paper_point.average) << ", |dF| over g in [13.5,27] MHz = "
           << fmt(delta_f) << ", F_BSM = F_POVM^2 " << (bsm_ok ? "holds" : "violated");
    return Outcome{pass, detail.str()};
}

// criterion 10: scattering limits
Outcome criterion_scattering_limits() {
    bool pass = true;
    std::ostringstream detail;

    const CavityParams params{0.0, 20.0, 0.0, 0.0};
    const Complex r0 = reflection_coefficient(0.0, AtomBranch::Decoupled, params);
    if (!(r0 == Complex(-1.0, 0.0))) pass = false;
    detail << "r_uncoupled(0)=" << r0.real();

    // kappa T = 200 with the stated gaussian pulse
    const Pulse pulse = Pulse::gaussian(10.0);
    const BranchScatter out = scatter_pulse(pulse, AtomBranch::Decoupled, params);
    const double deficit = std::abs(1.0 + out.overlap);
    detail << "; |1+overlap1| at kT=200: " << fmt(deficit) << " (required < 1e-3)";
    if (!(deficit < 1e-3)) pass = false;

    const CavityParams lossless = CavityParams::from_mhz(27.0, 2.4, 0.0);
    double worst_unitarity = 0.0;
    for (double omega = -2.0; omega <= 2.0; omega += 0.05) {  // pulse bandwidth ~0.5 rad/us
        for (AtomBranch branch : {AtomBranch::Coupled, AtomBranch::Decoupled}) {
            worst_unitarity = std::max(
                worst_unitarity,
                std::abs(std::abs(reflection_coefficient(omega, branch, lossless)) - 1.0));
        }
    }
    detail << "; gamma=0 unitarity defect " << fmt(worst_unitarity);
    if (worst_unitarity > 1e-12) pass = false;

    return Outcome{pass, detail.str()};
}

// criterion 11: polarizer design point
Outcome criterion_polarizer() {
    bool pass = true;
    std::ostringstream detail;

    const Transmission at_zero = stack_epsilon(SlabStack{1.0, 1.52, 4, 0.0});
    pass = pass && std::abs(at_zero.epsilon_physical - 1.0) < 1e-12;

    double previous = 1.0 + 1e-12;
    for (int i = 1; i <= 60; ++i) {
        const double theta = i / 60.0 * (M_PI / 2.0 - 1e-6);
        const double eps = stack_epsilon(SlabStack{1.0, 1.52, 4, theta}).epsilon_physical;
        pass = pass && eps < previous;
        previous = eps;
    }

    const double theta = theta_for_epsilon(0.2, 1.52, 4);
    const double eps_back = stack_epsilon(SlabStack{1.0, 1.52, 4, theta}).epsilon_physical;
    const double residual = std::abs(eps_back - 0.2);
    pass = pass && residual < 1e-9;
    detail << "theta(eps=0.2) = " << fmt(theta * 180 / M_PI) << " deg, round-trip residual "
           << fmt(residual);
    return Outcome{pass, detail.str()};
}

// criterion 12: byte-identical CLI reruns
Outcome criterion_determinism() {
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };
    ExperimentConfig config = parse_config_text(
        "experiment = distill-damping\np_min = 0\np_max = 0.9\np_step = 0.05\nseed = 3\n");
    config.output_path = "/tmp/qpurify_acceptance_a.csv";
    run(config);
    const std::string first = slurp(config.output_path);
    config.output_path = "/tmp/qpurify_acceptance_b.csv";
    run(config);
    const std::string second = slurp(config.output_path);
    std::remove("/tmp/qpurify_acceptance_a.csv");
    std::remove("/tmp/qpurify_acceptance_b.csv");
    const bool pass = !first.empty() && first == second;
    return Outcome{pass, pass ? "byte-identical rerun" : "outputs differ"};
}

struct Criterion {
    const char* name;
    std::function<Outcome()> fn;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> table = {
        {"rank-two grid", criterion_rank_two},
        {"channel fixtures", criterion_channel_fixtures},
        {"amplitude-damping closed forms", criterion_amplitude_suite},
        {"phase-damping closed forms", criterion_phase_suite},
        {"optimal-filter optimality", criterion_filter_optimality},
        {"hidden nonlocality window", criterion_hidden_nonlocality},
        {"recurrence oracle equivalence", criterion_recurrence_oracle},
        {"recurrence convergence", criterion_recurrence_convergence},
        {"cavity feasibility numbers", criterion_cavity_feasibility},
        {"scattering limits", criterion_scattering_limits},
        {"polarizer design point", criterion_polarizer},
        {"CLI determinism", criterion_determinism},
    };
    return table;
}

int run_criterion(size_t index) {
    const Criterion& c = criteria()[index];
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = c.fn();
    } catch (const std::exception& e) {
        outcome = Outcome{false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %02zu [%s]: %s (%s; %.2fs)\n", index + 1, c.name,
                outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str(), seconds);
    std::fflush(stdout);
    return outcome.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) {
        const int index = std::atoi(argv[1]);
        if (index < 1 || index > static_cast<int>(criteria().size())) {
            std::fprintf(stderr, "criterion number must lie in 1..%zu\n", criteria().size());
            return 2;
        }
        return run_criterion(static_cast<size_t>(index - 1));
    }
    int failures = 0;
    for (size_t i = 0; i < criteria().size(); ++i) failures += run_criterion(i);
    std::printf("%zu/%zu criteria passed\n", criteria().size() - failures, criteria().size());
    return failures == 0 ? 0 : 1;
}
