"""Two-qubit entanglement distillation and purification simulator."""

from ._core import (  # noqa: F401
    AtomBranch,
    BellDiagonal,
    BellIndex,
    CavityParams,
    Channel,
    ChannelFamily,
    ChshNormalization,
    DensityMatrix,
    DistillationReport,
    LocalFilter,
    LorentzDecomposition,
    OptimalFilterResult,
    PovmPhase,
    Pulse,
    PureState,
    PurificationRound,
    PurificationTrace,
    QpurifyError,
    RMatrix,
    SlabStack,
    Transmission,
    amplitude_damping,
    apply_bilocal,
    apply_local,
    bell_diagonal_of,
    bell_state,
    chsh_max,
    chsh_max_xy_plane,
    closed_form_filter,
    concurrence,
    depolarizing,
    distill,
    fidelity_with_pure,
    from_rpicture,
    full_bsm,
    interface_transmissions,
    iterate,
    list_experiments,
    lorentz_svd,
    optimal_filter,
    parity_projectors,
    partial_trace,
    phase_damping,
    povm_element,
    povm_fidelity,
    povm_fidelity_for_state,
    pure_to_density,
    rank_two_distill,
    rank_two_distill_pipeline,
    recurrence_map,
    reflection_coefficient,
    refraction_angle,
    run_experiment_file,
    scatter_pulse,
    simulate_round_exact,
    stack_amplitude_epsilon,
    stack_epsilon,
    sweep,
    theta_for_epsilon,
    to_rpicture,
    twirl,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
