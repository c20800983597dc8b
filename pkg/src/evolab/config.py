"""Tolerance and run configuration.

All tolerances used by the library live in one dataclass so a CLI run can
override any of them by name (``--tol.<name> <value>``) and so tests pin them
explicitly instead of scattering magic numbers.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Tolerances:
    # |det| of a cyclic m-window of unit directions must exceed this
    genericity: float = 1e-8
    # closure residual, relative to max |x_i|
    closure_rel: float = 1e-9
    # off-axis component of an edge, relative to edge scale
    alignment_rel: float = 1e-9
    # unit-norm check on stored direction vectors
    unit_norm: float = 1e-9
    # |lambda - 1| window for eigenvalue-1 detection (isometries, reflections)
    eig_one: float = 1e-8
    # rank decisions in least-squares / null-space computations
    rank_rel: float = 1e-8
    # consistency of the fixed-point linear system
    fixed_point_rel: float = 1e-8
    # spread of support-number window representatives
    support_window: float = 1e-9
    # sigma_min/sigma_max floor for the pairing matrix
    pairing_nondeg: float = 1e-8
    # relative gap for matching eigenvalues into pairs
    eig_pair_rel: float = 1e-6
    # |lambda| below this (relative to max |lambda|) counts as zero
    eig_zero_rel: float = 1e-8
    # divergence guard during evolute iteration
    iteration_guard: float = 1e12
    # |rho| below this multiple of the profile amplitude is a cusp window
    cusp_mask_rel: float = 1e-2

    def replace(self, **overrides) -> "Tolerances":
        return dataclasses.replace(self, **overrides)


DEFAULT_TOL = Tolerances()

FORMATS = ("csv", "json", "svg", "obj")


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation: the seed fully determines every random instance."""
    seed: int = 0
    tolerances: Tolerances = field(default_factory=Tolerances)
    output_dir: str = "."
    formats: tuple[str, ...] = FORMATS
