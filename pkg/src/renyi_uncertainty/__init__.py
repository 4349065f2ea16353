"""Rényi-entropy uncertainty relations: entropies, states, bounds and verdicts."""
from .bounds import (
    SAT_TOL,
    TOL,
    BoundReport,
    babenko_beckner_k,
    babenko_beckner_n,
    bound_angle,
    bound_angle_continuous,
    bound_nlevel,
    bound_xp_binned,
    bound_xp_continuous,
    bound_xp_same_order,
    bound_xp_symmetrized,
    verify_angle,
    verify_angle_continuous,
    verify_angle_symmetrized,
    verify_nlevel,
    verify_xp,
    verify_xp_continuous,
    verify_xp_same_order,
    verify_xp_symmetrized,
)
from .entropy import (
    EntropyValue,
    OrderPair,
    ProbVec,
    conjugate_order,
    continuous_renyi,
    continuous_shannon,
    renyi_entropy,
    shannon_entropy,
    symmetrized_entropy,
)
from .errors import AnomalyError, DomainError, ValidationError
from .nlevel import NLevelState, dft, idft, nlevel_probs, p_norm
from .sharpness import FamilySpec, GapResult, minimize_gap, scan_gap
from .states import (
    DEFAULT_GRID,
    AngularState,
    DensityGrid,
    GridSpec,
    GridWaveFunction,
    MixedState,
    Mixture,
    angular_density,
    angular_momentum_probs,
    bin_probabilities,
    fourier_transform,
    inverse_fourier_transform,
    make_gaussian,
    make_hermite_superposition,
    mix,
)

__version__ = "0.1.0"
