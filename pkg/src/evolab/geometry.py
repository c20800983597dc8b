"""Spherical polygons, side-length coordinates, and spherical duality.

Index conventions (dense, cyclic, everything mod n):

* a spherical polygon is a cyclic sequence of unit directions ``v_0..v_{n-1}``
  in R^m;
* a vertex polygon has vertices ``P_0..P_{n-1}``; side ``i`` runs from ``P_i``
  to ``P_{i+1}`` and is parallel to ``v_i``:  ``P_{i+1} - P_i = x_i v_i``;
* ``d_j = det(v_j, ..., v_{j+m-1})`` is the determinant of the m-window
  starting at ``j``, and ``s_j`` its sign (the signature);
* the dual direction ``u_j`` is the unit normal of ``span(v_{j+1}, ...,
  v_{j+m-1})``, oriented so that ``det(v_{j+1}, ..., v_{j+m-1}, u_j) > 0``.

With this orientation, ``sign(u_j . v_{j+m}) = s_{j+1}`` and
``sign(u_j . v_j) = (-1)^(m-1) s_j`` hold identically, and the double dual
satisfies ``dual(dual(v))_j = eps_j v_{j+m}`` with
``eps_j = (-1)^(m-1) s_{j+2} ... s_{j+m-1}`` -- a signed cyclic shift by m.
The shift is unavoidable with dense integer indices: the window of the dual
has even length for odd m and cannot be centered.  Downstream code that
composes two evolutes re-labels through this shift (see ``evolute`` module).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import (
    ClosureViolation,
    DegenerateNormal,
    NonGeneric,
    NotAligned,
    RankDeficient,
)

__all__ = [
    "SphericalPolygon",
    "Signature",
    "SideVector",
    "VertexPolygon",
    "PvBasis",
    "signature",
    "is_generic",
    "require_generic",
    "dual",
    "double_dual_shift_signs",
    "pv_basis",
    "realize",
    "side_lengths",
    "random_spherical_polygon",
    "random_side_vector",
    "cyclic_windows",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


def cyclic_windows(n: int, start_offset: int, width: int) -> np.ndarray:
    """(n, width) index array; row j holds j+start_offset .. j+start_offset+width-1 mod n."""
    return (np.arange(n)[:, None] + start_offset + np.arange(width)) % n


@dataclass(frozen=True)
class SphericalPolygon:
    """Cyclic sequence of n unit vectors in R^m, n >= m+2."""

    dirs: np.ndarray  # (n, m)

    def __post_init__(self):
        dirs = _readonly(self.dirs)
        if dirs.ndim != 2:
            raise ValueError("dirs must be a 2-d array of shape (n, m)")
        n, m = dirs.shape
        if m < 2:
            raise ValueError("ambient dimension must be >= 2")
        if n < m + 2:
            raise ValueError(f"need n >= m+2, got n={n}, m={m}")
        norms = np.linalg.norm(dirs, axis=1)
        if np.abs(norms - 1.0).max() > DEFAULT_TOL.unit_norm:
            raise ValueError("direction vectors must have unit norm")
        object.__setattr__(self, "dirs", dirs)

    @property
    def n(self) -> int:
        return self.dirs.shape[0]

    @property
    def m(self) -> int:
        return self.dirs.shape[1]

    def window_dets(self) -> np.ndarray:
        """d_j = det(v_j, ..., v_{j+m-1}) for every cyclic m-window."""
        idx = cyclic_windows(self.n, 0, self.m)
        return np.linalg.det(self.dirs[idx])


@dataclass(frozen=True)
class Signature:
    """Signs of the cyclic window determinants, plus the determinants themselves."""

    signs: np.ndarray  # (n,) of +-1
    dets: np.ndarray   # (n,)

    def __post_init__(self):
        object.__setattr__(self, "signs", _readonly(self.signs))
        object.__setattr__(self, "dets", _readonly(self.dets))


def signature(v: SphericalPolygon, tol: Tolerances = DEFAULT_TOL) -> Signature:
    """Window determinants and their signs; raises NonGeneric on a degenerate window."""
    dets = v.window_dets()
    bad = np.abs(dets) <= tol.genericity
    if bad.any():
        j = int(np.argmax(bad))
        raise NonGeneric(f"window {j} has |det| = {abs(dets[j]):.3e} <= {tol.genericity:g}")
    return Signature(np.sign(dets), dets)


def is_generic(v: SphericalPolygon, tol: Tolerances = DEFAULT_TOL) -> bool:
    return bool(np.abs(v.window_dets()).min() > tol.genericity)


def require_generic(v: SphericalPolygon, tol: Tolerances = DEFAULT_TOL) -> None:
    signature(v, tol)


@dataclass(frozen=True)
class SideVector:
    """Signed side lengths x of a polygon with side directions from ``base``.

    Valid side vectors close up: sum_i x_i v_i = 0 within a tolerance
    relative to max |x_i|.  The zero vector (a point polygon) is allowed.
    """

    base: SphericalPolygon
    x: np.ndarray  # (n,)

    def __post_init__(self):
        x = _readonly(self.x)
        if x.shape != (self.base.n,):
            raise ValueError(f"x must have shape ({self.base.n},)")
        resid = np.linalg.norm(x @ self.base.dirs)
        scale = np.abs(x).max() if x.size else 0.0
        if resid > DEFAULT_TOL.closure_rel * scale:
            raise ClosureViolation(
                f"||sum x_i v_i|| = {resid:.3e} exceeds {DEFAULT_TOL.closure_rel:g} * ||x||_inf"
            )
        object.__setattr__(self, "x", x)


@dataclass(frozen=True)
class VertexPolygon:
    """Cyclic list of n points in R^m.  Degenerate (repeated) vertices allowed."""

    verts: np.ndarray  # (n, m)

    def __post_init__(self):
        verts = _readonly(self.verts)
        if verts.ndim != 2:
            raise ValueError("verts must be 2-d")
        if not np.isfinite(verts).all():
            raise ValueError("vertices must be finite")
        object.__setattr__(self, "verts", verts)

    @property
    def n(self) -> int:
        return self.verts.shape[0]

    @property
    def m(self) -> int:
        return self.verts.shape[1]

    def translated(self, c) -> "VertexPolygon":
        return VertexPolygon(self.verts + np.asarray(c, dtype=float))

    def relabeled(self, shift: int) -> "VertexPolygon":
        """New polygon T with T_i = P_{i-shift} (cyclic re-labeling)."""
        return VertexPolygon(np.roll(self.verts, shift, axis=0))


@dataclass(frozen=True)
class PvBasis:
    """Orthonormal basis of the closure null space {x : sum x_i v_i = 0}."""

    base: SphericalPolygon
    columns: np.ndarray  # (n, n-m), orthonormal columns

    def __post_init__(self):
        object.__setattr__(self, "columns", _readonly(self.columns))

    @property
    def dim(self) -> int:
        return self.columns.shape[1]

    def coords(self, x: np.ndarray) -> np.ndarray:
        """Coordinates of a closing side vector in this basis."""
        return self.columns.T @ np.asarray(x, dtype=float)

    def vector(self, coords: np.ndarray) -> np.ndarray:
        return self.columns @ np.asarray(coords, dtype=float)


def dual(v: SphericalPolygon, tol: Tolerances = DEFAULT_TOL) -> SphericalPolygon:
    """Spherical dual: u_j spans the orthogonal complement of m-1 consecutive
    directions, oriented positively (see module docstring)."""
    require_generic(v, tol)
    n, m = v.n, v.m
    windows = v.dirs[cyclic_windows(n, 1, m - 1)]        # (n, m-1, m)
    _, svals, vh = np.linalg.svd(windows)
    # complement must be exactly 1-dimensional
    if m > 2:
        ratio = svals[:, -1] / svals[:, 0]
        if ratio.min() <= tol.rank_rel:
            j = int(np.argmin(ratio))
            raise DegenerateNormal(f"window at {j} spans less than m-1 dimensions")
    normals = vh[:, -1, :]                               # (n, m)
    # orientation: det([window rows; normal]) > 0
    stacked = np.concatenate([windows, normals[:, None, :]], axis=1)
    flip = np.linalg.det(stacked) < 0
    normals[flip] *= -1.0
    u = SphericalPolygon(normals)
    # the positivity convention pins both adjacent dot products; assert the
    # second one as a consistency check on non-generic borderline input
    s = signature(v, tol).signs
    second = np.einsum("ij,ij->i", normals, v.dirs)
    if not np.all(np.sign(second) == (-1.0) ** (m - 1) * s):
        raise DegenerateNormal("dual orientation conventions disagree (input too close to degenerate)")
    return u


def double_dual_shift_signs(v: SphericalPolygon, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Signs eps with dual(dual(v))_j = eps_j * v_{j+m}, from the signature product."""
    s = signature(v, tol).signs
    n, m = v.n, v.m
    eps = np.full(n, (-1.0) ** (m - 1))
    for i in range(2, m):
        eps *= s[(np.arange(n) + i) % n]
    return eps


def pv_basis(v: SphericalPolygon, tol: Tolerances = DEFAULT_TOL) -> PvBasis:
    """Orthonormal null-space basis of the m x n direction matrix, deterministic
    sign fix: first nonzero entry of each column positive."""
    n, m = v.n, v.m
    _, svals, vh = np.linalg.svd(v.dirs.T)
    if (svals > tol.rank_rel * svals[0]).sum() != m:
        raise RankDeficient("direction matrix does not have full rank m")
    cols = vh[m:].T.copy()                               # (n, n-m)
    for k in range(cols.shape[1]):
        col = cols[:, k]
        lead = np.argmax(np.abs(col) > 1e-12)
        if col[lead] < 0:
            cols[:, k] = -col
    return PvBasis(v, cols)


def realize(
    v: SphericalPolygon,
    x: SideVector | np.ndarray,
    base: np.ndarray | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> VertexPolygon:
    """Walk the sides: P_0 = base, P_{i+1} = P_i + x_i v_i."""
    xv = x.x if isinstance(x, SideVector) else np.asarray(x, dtype=float)
    steps = xv[:, None] * v.dirs
    resid = np.linalg.norm(steps.sum(axis=0))
    scale = np.abs(xv).max() if xv.size else 0.0
    if resid > tol.closure_rel * scale:
        raise ClosureViolation(f"side vector does not close up (residual {resid:.3e})")
    verts = np.zeros((v.n, v.m))
    np.cumsum(steps[:-1], axis=0, out=verts[1:])
    if base is not None:
        verts += np.asarray(base, dtype=float)
    return VertexPolygon(verts)


def side_lengths(v: SphericalPolygon, P: VertexPolygon, tol: Tolerances = DEFAULT_TOL) -> SideVector:
    """Inverse of realize: x_i = (P_{i+1} - P_i) . v_i, edges must be on-axis."""
    if P.n != v.n or P.m != v.m:
        raise NotAligned(f"polygon is {P.n}-gon in R^{P.m}, directions are {v.n}-gon in R^{v.m}")
    diffs = np.roll(P.verts, -1, axis=0) - P.verts
    x = np.einsum("ij,ij->i", diffs, v.dirs)
    off = diffs - x[:, None] * v.dirs
    off_norm = np.linalg.norm(off, axis=1)
    scale = max(np.abs(x).max(), 1e-300)
    worst = int(np.argmax(off_norm))
    if off_norm[worst] > tol.alignment_rel * scale:
        raise NotAligned(
            f"edge {worst} has off-axis component {off_norm[worst]:.3e} (scale {scale:.3e})"
        )
    return SideVector(v, x)


def random_spherical_polygon(
    m: int,
    n: int,
    rng: np.random.Generator | int,
    genericity_floor: float = 0.05,
    max_tries: int = 1000,
) -> SphericalPolygon:
    """Uniform-on-sphere directions (normalized Gaussians), rejection-sampled
    until every cyclic m-window is comfortably non-degenerate.

    The floor is deliberately far above the genericity tolerance: downstream
    constructions divide by these determinants, and acceptance tests run at
    1e-8 .. 1e-9, so instances are kept away from the degenerate locus.
    """
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    for _ in range(max_tries):
        dirs = rng.normal(size=(n, m))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        v = SphericalPolygon(dirs)
        if np.abs(v.window_dets()).min() > genericity_floor:
            return v
    raise NonGeneric(f"no generic ({m},{n}) instance found in {max_tries} draws")


def random_side_vector(
    v: SphericalPolygon,
    rng: np.random.Generator | int,
    basis: PvBasis | None = None,
) -> SideVector:
    """Standard Gaussian coordinates in an orthonormal basis of the closure space."""
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    B = basis if basis is not None else pv_basis(v)
    return SideVector(v, B.vector(rng.normal(size=B.dim)))
