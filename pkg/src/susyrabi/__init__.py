"""Quantum Rabi model with A^2 term: SUSY breaking, spectral flows,
mass enhancement."""

from .fock import FockParams, OperatorSet, make_operators
from .model import (
    FieldSet,
    ModelParams,
    Schedule,
    SuperchargeSet,
    broken_supercharges,
    fields,
    free_supercharges,
    hamiltonian,
    h_interaction,
    h_susy_ss,
    h_total_r,
    heavy_hamiltonian,
    mass_increment,
    renormalized_frequency,
)
from .spectral import (
    AlgebraReport,
    ConvergenceReport,
    FlowResult,
    SpectrumTable,
    WittenReport,
    degeneracy_groups,
    goldstino_check,
    limit_check,
    lowest_k,
    no_go_asymptote_check,
    spectral_flow_g,
    spectral_flow_r,
    susy_algebra_report,
    truncation_convergence,
    witten_index,
)
from .transforms import (
    TransformReport,
    displacement,
    field_identity_report,
    polaron_equivalence_report,
    squeeze,
    u_a2,
    u_a2_with_report,
    u_polaron,
    verify_equivalence,
)

__version__ = "0.1.0"
