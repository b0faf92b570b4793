#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qpurify/bsm.hpp"
#include "qpurify/cavity.hpp"
#include "qpurify/channels.hpp"
#include "qpurify/experiments.hpp"
#include "qpurify/filtering.hpp"
#include "qpurify/measures.hpp"
#include "qpurify/polarizer.hpp"
#include "qpurify/recurrence.hpp"

namespace py = pybind11;
using namespace qpurify;

namespace {

DensityMatrix density_from_array(const Matrix4c& m) { return DensityMatrix(m); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "two-qubit entanglement distillation and purification simulator";

    py::register_exception<QpurifyError>(m, "QpurifyError");

    py::enum_<BellIndex>(m, "BellIndex")
        .value("PHI_PLUS", BellIndex::PhiPlus)
        .value("PHI_MINUS", BellIndex::PhiMinus)
        .value("PSI_PLUS", BellIndex::PsiPlus)
        .value("PSI_MINUS", BellIndex::PsiMinus);

    py::class_<PureState>(m, "PureState")
        .def(py::init<const Vector4c&>())
        .def_static("schmidt", &PureState::schmidt, py::arg("a"), py::arg("b"))
        .def_property_readonly("amplitudes",
                               [](const PureState& s) { return s.amplitudes(); });

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init(&density_from_array))
        .def_static("maximally_mixed", &DensityMatrix::maximally_mixed)
        .def_property_readonly("matrix", [](const DensityMatrix& r) { return r.matrix(); })
        .def("min_eigenvalue", &DensityMatrix::min_eigenvalue);

    m.def("bell_state", &bell_state);
    m.def("pure_to_density", &pure_to_density);
    m.def(
        "apply_local",
        [](const Matrix2c& a, const Matrix2c& b, const DensityMatrix& rho) {
            const FilterOutcome out = apply_local(a, b, rho);
            return py::make_tuple(out.state, out.probability);
        },
        py::arg("a"), py::arg("b"), py::arg("rho"));
    m.def("fidelity_with_pure", &fidelity_with_pure);
    m.def(
        "partial_trace",
        [](const MatrixXc& rho, const std::vector<int>& keep, int num_qubits) {
            return partial_trace(rho, keep, num_qubits);
        },
        py::arg("rho"), py::arg("keep"), py::arg("num_qubits"));

    py::class_<Channel>(m, "Channel")
        .def_readonly("kraus", &Channel::kraus)
        .def_readonly("label", &Channel::label)
        .def_readonly("p", &Channel::p);
    m.def("depolarizing", &depolarizing);
    m.def("amplitude_damping", &amplitude_damping);
    m.def("phase_damping", &phase_damping);
    m.def("apply_bilocal", &apply_bilocal);

    py::class_<RMatrix>(m, "RMatrix")
        .def(py::init<const Matrix4d&>())
        .def_property_readonly("matrix", [](const RMatrix& r) { return r.matrix(); });
    m.def("to_rpicture", &to_rpicture);
    m.def("from_rpicture", &from_rpicture);
    m.def("concurrence", &concurrence);

    py::enum_<ChshNormalization>(m, "ChshNormalization")
        .value("CLASSICAL_BOUND_1", ChshNormalization::ClassicalBound1)
        .value("CLASSICAL_BOUND_2", ChshNormalization::ClassicalBound2);
    m.def(
        "chsh_max",
        [](const DensityMatrix& rho, ChshNormalization norm) { return chsh_max(rho, norm).beta; },
        py::arg("rho"), py::arg("normalization") = ChshNormalization::ClassicalBound1);
    m.def(
        "chsh_max_xy_plane",
        [](const DensityMatrix& rho, ChshNormalization norm) {
            return chsh_max_xy_plane(rho, norm).beta;
        },
        py::arg("rho"), py::arg("normalization") = ChshNormalization::ClassicalBound1);

    py::enum_<ChannelFamily>(m, "ChannelFamily")
        .value("DEPOLARIZING", ChannelFamily::Depolarizing)
        .value("AMPLITUDE_DAMPING", ChannelFamily::AmplitudeDamping)
        .value("PHASE_DAMPING", ChannelFamily::PhaseDamping);

    py::class_<LorentzDecomposition>(m, "LorentzDecomposition")
        .def_readonly("l1", &LorentzDecomposition::l1)
        .def_readonly("l2", &LorentzDecomposition::l2)
        .def_readonly("sigma", &LorentzDecomposition::sigma);
    m.def("lorentz_svd", &lorentz_svd);

    py::class_<LocalFilter>(m, "LocalFilter")
        .def_readonly("a", &LocalFilter::a)
        .def_readonly("b", &LocalFilter::b)
        .def_readonly("epsilon", &LocalFilter::epsilon);

    py::class_<OptimalFilterResult>(m, "OptimalFilterResult")
        .def_readonly("filter", &OptimalFilterResult::filter)
        .def_readonly("decomposition", &OptimalFilterResult::decomposition)
        .def_readonly("nothing_to_distill", &OptimalFilterResult::nothing_to_distill);
    m.def("optimal_filter", &optimal_filter);
    m.def(
        "closed_form_filter",
        [](ChannelFamily family, double a, double b, double p) {
            return closed_form_filter(family, FamilyParams{a, b, p});
        },
        py::arg("family"), py::arg("a") = 1.0 / std::sqrt(2.0),
        py::arg("b") = 1.0 / std::sqrt(2.0), py::arg("p") = 0.0);

    m.def("rank_two_distill", [](double f, double eps) {
        const RankTwoResult r = rank_two_distill(f, eps);
        return py::make_tuple(r.fidelity, r.probability);
    });
    m.def("rank_two_distill_pipeline", [](double f, double eps) {
        const RankTwoResult r = rank_two_distill_pipeline(f, eps);
        return py::make_tuple(r.fidelity, r.probability);
    });

    py::class_<DistillationReport>(m, "DistillationReport")
        .def_readonly("input_state", &DistillationReport::input_state)
        .def_readonly("output_state", &DistillationReport::output_state)
        .def_readonly("success_prob", &DistillationReport::success_prob)
        .def_readonly("c_before", &DistillationReport::c_before)
        .def_readonly("c_after", &DistillationReport::c_after)
        .def_readonly("beta_before", &DistillationReport::beta_before)
        .def_readonly("beta_after", &DistillationReport::beta_after)
        .def_readonly("nothing_to_distill", &DistillationReport::nothing_to_distill);
    m.def("distill", &distill);

    py::enum_<PovmPhase>(m, "PovmPhase")
        .value("ONE", PovmPhase::One)
        .value("I", PovmPhase::I);
    m.def(
        "povm_element",
        [](double eps, PovmPhase phase) { return povm_element(eps, phase).op; },
        py::arg("eps"), py::arg("phase") = PovmPhase::One);
    m.def("parity_projectors", [] {
        const auto [p1, p2] = parity_projectors();
        return py::make_tuple(p1.op, p2.op);
    });
    m.def("full_bsm", [](const DensityMatrix& rho) {
        std::array<double, 4> probs{};
        for (const BsmOutcome& o : full_bsm(rho))
            probs[static_cast<size_t>(o.bell)] = o.probability;
        return probs;
    });

    py::class_<BellDiagonal>(m, "BellDiagonal")
        .def(py::init<double, double, double, double>())
        .def_static("werner", &BellDiagonal::werner)
        .def_property_readonly("weights", &BellDiagonal::weights)
        .def_property_readonly("fidelity", &BellDiagonal::fidelity);
    m.def("bell_diagonal_of", &bell_diagonal_of);
    m.def("twirl", &twirl);
    m.def("recurrence_map", [](const BellDiagonal& x, const BellDiagonal& xp) {
        const MapResult r = recurrence_map(x, xp);
        return py::make_tuple(r.weights, r.success_probability);
    });
    py::class_<PurificationRound>(m, "PurificationRound")
        .def_readonly("state", &PurificationRound::state)
        .def_readonly("success_probability", &PurificationRound::success_probability)
        .def_readonly("cumulative_yield", &PurificationRound::cumulative_yield)
        .def_readonly("basin_condition", &PurificationRound::basin_condition);
    py::class_<PurificationTrace>(m, "PurificationTrace")
        .def_readonly("rounds", &PurificationTrace::rounds)
        .def_readonly("converged", &PurificationTrace::converged);
    m.def("iterate", &iterate, py::arg("x0"), py::arg("max_rounds") = 20,
          py::arg("target_fidelity") = 0.99);
    m.def("simulate_round_exact", [](const DensityMatrix& rho, const DensityMatrix& rho_prime) {
        const ExactRoundResult r = simulate_round_exact(rho, rho_prime);
        return py::make_tuple(r.kept_state, r.success_probability);
    });

    py::class_<CavityParams>(m, "CavityParams")
        .def(py::init<double, double, double, double>(), py::arg("g"), py::arg("kappa"),
             py::arg("gamma"), py::arg("delta") = 0.0)
        .def_static("from_mhz", &CavityParams::from_mhz, py::arg("g_mhz"), py::arg("kappa_mhz"),
                    py::arg("gamma_mhz"), py::arg("delta_mhz") = 0.0)
        .def_readwrite("g", &CavityParams::g)
        .def_readwrite("kappa", &CavityParams::kappa)
        .def_readwrite("gamma", &CavityParams::gamma)
        .def_readwrite("delta", &CavityParams::delta);

    py::class_<Pulse>(m, "Pulse")
        .def_static("gaussian", &Pulse::gaussian, py::arg("duration_us"),
                    py::arg("num_samples") = 4096)
        .def_readonly("duration", &Pulse::duration)
        .def_readonly("dt", &Pulse::dt)
        .def_readonly("samples", &Pulse::samples);

    py::enum_<AtomBranch>(m, "AtomBranch")
        .value("COUPLED", AtomBranch::Coupled)
        .value("DECOUPLED", AtomBranch::Decoupled);
    m.def("reflection_coefficient", &reflection_coefficient);
    m.def("scatter_pulse", [](const Pulse& pulse, AtomBranch branch, const CavityParams& params) {
        const BranchScatter out = scatter_pulse(pulse, branch, params);
        return py::make_tuple(out.output_mode, out.overlap, out.loss);
    });
    m.def("povm_fidelity_for_state", &povm_fidelity_for_state, py::arg("params"), py::arg("eps"),
          py::arg("pulse"), py::arg("a"), py::arg("b"), py::arg("strict_loss") = false);
    m.def(
        "povm_fidelity",
        [](const CavityParams& params, double eps, const Pulse& pulse) {
            const PovmFidelityResult r = povm_fidelity(params, eps, pulse);
            return py::make_tuple(r.average, r.worst, r.mean_success_probability);
        },
        py::arg("params"), py::arg("eps"), py::arg("pulse"));
    m.def(
        "sweep",
        [](const std::vector<double>& gs, const CavityParams& base, double eps, const Pulse& pulse,
           std::optional<double> a_tilde) {
            std::vector<py::tuple> rows;
            for (const SweepRow& row : sweep(gs, base, eps, pulse, a_tilde))
                rows.push_back(py::make_tuple(row.g_over_2pi_mhz, row.f_povm, row.f_bsm,
                                              row.purified_fidelity));
            return rows;
        },
        py::arg("g_values_mhz"), py::arg("base"), py::arg("eps"), py::arg("pulse"),
        py::arg("a_tilde") = std::nullopt);

    py::class_<SlabStack>(m, "SlabStack")
        .def(py::init([](double n_slab, int slabs, double theta, double n_outside) {
                 return SlabStack{n_outside, n_slab, slabs, theta};
             }),
             py::arg("n_slab") = 1.52, py::arg("slabs") = 1, py::arg("theta") = 0.0,
             py::arg("n_outside") = 1.0)
        .def_readwrite("n_outside", &SlabStack::n_outside)
        .def_readwrite("n_slab", &SlabStack::n_slab)
        .def_readwrite("slabs", &SlabStack::slabs)
        .def_readwrite("theta", &SlabStack::theta);
    py::class_<Transmission>(m, "Transmission")
        .def_readonly("t_h_paper", &Transmission::t_h_paper)
        .def_readonly("t_v_paper", &Transmission::t_v_paper)
        .def_readonly("epsilon_paper", &Transmission::epsilon_paper)
        .def_readonly("t_p_physical", &Transmission::t_p_physical)
        .def_readonly("t_s_physical", &Transmission::t_s_physical)
        .def_readonly("epsilon_physical", &Transmission::epsilon_physical)
        .def_readonly("paper_values_exceed_unity", &Transmission::paper_values_exceed_unity);
    m.def("refraction_angle", &refraction_angle);
    m.def("interface_transmissions", &interface_transmissions);
    m.def("stack_epsilon", &stack_epsilon);
    m.def("stack_amplitude_epsilon", &stack_amplitude_epsilon);
    m.def("theta_for_epsilon", &theta_for_epsilon, py::arg("target_eps"), py::arg("n_slab"),
          py::arg("slabs"), py::arg("n_outside") = 1.0);

    m.def("list_experiments", [] { return list_experiments(); });
    m.def("run_experiment_file", [](const std::string& path) { run(parse_config_file(path)); });
}
