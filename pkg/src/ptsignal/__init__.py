"""Local evolution of shared entangled states under a PT-symmetric
Hamiltonian, and the operational signaling it produces.

One party of a two- or three-qubit entangled state evolves her qubit under
the most general 2x2 PT-symmetric Hamiltonian with a real spectrum. Unlike
unitary evolution, this moves the other parties' reduced states, and the
package quantifies how distinguishable the shifts are (via minimum-error
discrimination), derives when they vanish, and finds the parameters that
maximize them.

Layers:
  linalg       small dense-matrix toolkit with an independent eigensolver
               and matrix exponential used as oracles
  hamiltonian  the operator family, its spectrum, regimes, and closed-form
               propagator
  states       the shared state families
  signaling    one-sided evolution, reduced states, discrimination
               probabilities, and all closed-form coefficients
  optimize     deterministic maximization and the standard profile curves
  verify       the end-to-end verification suite behind `ptsignal verify`
"""

from .hamiltonian import (
    BrokenPhaseError,
    PTEigensystem,
    PTParams,
    alpha_of,
    build_hamiltonian,
    eigensystem,
    find_parity_angle,
    phase_of,
    propagator,
    propagator_reference,
    pt_symmetry_check,
)
from .linalg import (
    dagger,
    expm_reference,
    hermitian_eigenvalues,
    partial_trace,
    tensor,
    trace_norm,
)
from .optimize import (
    ALPHA_VALIDITY_MAX,
    OptProblem,
    OptResult,
    family_problem,
    ghz_probability,
    grid_scan,
    optimize_family,
    profile_fig1,
    profile_fig2,
    refine,
    rotated_probability,
    w_probability,
    write_profile1_csv,
    write_profile2_csv,
)
from .signaling import (
    DEFAULT_NOSIGNAL_TOL,
    ClosedFormCoefficients,
    ClosedFormMismatch,
    DegenerateEvolutionError,
    EvolutionScenario,
    SignalingReport,
    analyze,
    bell_coefficients,
    bob_reduced_bell_closed_form,
    delta3_w,
    evolve_alice,
    ghz_joint_closed_form,
    helstrom,
    lambda3_ghz,
    lambda3_rotated,
    report_from_json,
    report_to_json,
    rotated_coefficients,
    rotated_joint_closed_form,
    w_joint_closed_form,
)
from .states import FAMILIES, StateSpec, density, make_state, parse_custom_amplitudes, reduced
from .verify import CRITERIA, CriterionResult, run_criteria

__version__ = "0.1.0"

__all__ = [
    "ALPHA_VALIDITY_MAX",
    "BrokenPhaseError",
    "CRITERIA",
    "ClosedFormCoefficients",
    "ClosedFormMismatch",
    "CriterionResult",
    "DEFAULT_NOSIGNAL_TOL",
    "DegenerateEvolutionError",
    "EvolutionScenario",
    "FAMILIES",
    "OptProblem",
    "OptResult",
    "PTEigensystem",
    "PTParams",
    "SignalingReport",
    "StateSpec",
    "alpha_of",
    "analyze",
    "bell_coefficients",
    "bob_reduced_bell_closed_form",
    "build_hamiltonian",
    "dagger",
    "delta3_w",
    "density",
    "eigensystem",
    "evolve_alice",
    "expm_reference",
    "family_problem",
    "find_parity_angle",
    "ghz_joint_closed_form",
    "ghz_probability",
    "grid_scan",
    "helstrom",
    "hermitian_eigenvalues",
    "lambda3_ghz",
    "lambda3_rotated",
    "make_state",
    "optimize_family",
    "parse_custom_amplitudes",
    "partial_trace",
    "phase_of",
    "profile_fig1",
    "profile_fig2",
    "propagator",
    "propagator_reference",
    "pt_symmetry_check",
    "reduced",
    "refine",
    "report_from_json",
    "report_to_json",
    "rotated_coefficients",
    "rotated_joint_closed_form",
    "rotated_probability",
    "run_criteria",
    "tensor",
    "trace_norm",
    "w_joint_closed_form",
    "w_probability",
    "write_profile1_csv",
    "write_profile2_csv",
]
