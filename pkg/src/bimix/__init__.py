"""Overlapping community estimation for bipartite weighted networks.

Generative sampling from eight edge-weight laws, deterministic spectral
membership estimation, evaluation metrics, and a replicated simulation
harness with a catalogue of reference scenarios.
"""

__version__ = "0.1.0"

from .disp import FitResult, IllPosedFitError, disp, ideal_disp, memberships_from_embedding
from .harness import (
    SCENARIO_NAMES,
    SweepPlan,
    SweepPoint,
    SweepResult,
    alpha_grid_matrix,
    run_replicates,
    run_sweep,
    scenario,
)
from .ingest import EdgeList, EdgeListError, drop_isolated, load_edge_list, summarize, to_dense
from .metrics import (
    SeparationMargins,
    empirical_tau_gamma,
    error_rate,
    hamm_rc,
    home_base,
    mixed_proportion,
    separation_margins,
    theoretical_rate,
)
from .model import (
    InvalidModelError,
    ModelSpec,
    block_sign_class,
    block_violations,
    build_omega,
    make_planted_memberships,
    make_standard_two_block,
    membership_violations,
    validate_model,
)
from .sampler import (
    EdgeDistribution,
    RandomSource,
    RhoInterval,
    SamplingDomainError,
    admissible_rho_interval,
    distribution_gamma,
    sample_adjacency,
)
from .spa import RankDeficientInputError, spa, vertex_matrix
from .spectral import TruncatedSVD, estimate_k_eigengap, singular_values, top_k_svd

__all__ = [
    "EdgeDistribution",
    "EdgeList",
    "EdgeListError",
    "FitResult",
    "IllPosedFitError",
    "InvalidModelError",
    "ModelSpec",
    "RandomSource",
    "RankDeficientInputError",
    "RhoInterval",
    "SCENARIO_NAMES",
    "SamplingDomainError",
    "SeparationMargins",
    "SweepPlan",
    "SweepPoint",
    "SweepResult",
    "TruncatedSVD",
    "admissible_rho_interval",
    "alpha_grid_matrix",
    "block_sign_class",
    "block_violations",
    "build_omega",
    "disp",
    "distribution_gamma",
    "drop_isolated",
    "empirical_tau_gamma",
    "error_rate",
    "estimate_k_eigengap",
    "hamm_rc",
    "home_base",
    "ideal_disp",
    "load_edge_list",
    "make_planted_memberships",
    "make_standard_two_block",
    "memberships_from_embedding",
    "membership_violations",
    "mixed_proportion",
    "run_replicates",
    "run_sweep",
    "sample_adjacency",
    "scenario",
    "separation_margins",
    "singular_values",
    "spa",
    "summarize",
    "theoretical_rate",
    "to_dense",
    "top_k_svd",
    "validate_model",
    "vertex_matrix",
]
