"""Euclidean isometries of R^m with fixed-point and invariant-line solvers.

Genericity table used throughout (orientation of the orthogonal part Q):

    m even, det Q = +1:  unique fixed point, no invariant line
    m even, det Q = -1:  no fixed point, unique invariant line
    m odd,  det Q = +1:  no fixed point, unique invariant line (screw axis)
    m odd,  det Q = -1:  unique fixed point, unique invariant line

Non-generic input is reported (NonUnique carries a representative point),
never silently resolved.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import NoFixedPoint, NoInvariantLine, NonUnique, WindowDegenerate

__all__ = [
    "Isometry",
    "Line",
    "hyperplane_reflection",
    "isometry_fixed_point",
    "isometry_invariant_line",
]


@dataclass(frozen=True)
class Isometry:
    """p |-> Q p + t with Q orthogonal."""

    Q: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        Q = np.array(self.Q, dtype=float)
        t = np.array(self.t, dtype=float)
        m = Q.shape[0]
        if Q.shape != (m, m) or t.shape != (m,):
            raise ValueError("Q must be (m, m) and t (m,)")
        if np.abs(Q.T @ Q - np.eye(m)).max() > 1e-8:
            raise ValueError("Q is not orthogonal")
        Q.flags.writeable = False
        t.flags.writeable = False
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "t", t)

    @property
    def m(self) -> int:
        return self.Q.shape[0]

    def __call__(self, p: np.ndarray) -> np.ndarray:
        return np.asarray(p, dtype=float) @ self.Q.T + self.t

    def after(self, other: "Isometry") -> "Isometry":
        """self o other (apply other first)."""
        return Isometry(self.Q @ other.Q, self.Q @ other.t + self.t)

    def orientation(self) -> float:
        return float(np.sign(np.linalg.det(self.Q)))


@dataclass(frozen=True)
class Line:
    """point + span(direction), direction unit."""

    point: np.ndarray
    direction: np.ndarray

    def at(self, s: float) -> np.ndarray:
        return self.point + s * self.direction

    def distance_to(self, p: np.ndarray) -> float:
        d = np.asarray(p, dtype=float) - self.point
        return float(np.linalg.norm(d - (d @ self.direction) * self.direction))


def hyperplane_reflection(points: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> Isometry:
    """Affine reflection in the hyperplane through m given points of R^m.

    Normal from the SVD of the centered points; rejects windows whose span
    is less than (m-1)-dimensional.
    """
    pts = np.asarray(points, dtype=float)
    m = pts.shape[1]
    if pts.shape != (m, m):
        raise ValueError("need exactly m points of R^m")
    c = pts.mean(axis=0)
    _, svals, vh = np.linalg.svd(pts - c)
    degenerate = svals[m - 2] <= tol.rank_rel * max(svals[0], 1e-300)
    degenerate = degenerate or svals[0] <= 1e-12 * (1.0 + np.abs(pts).max())
    if degenerate:
        raise WindowDegenerate("hyperplane window is affinely degenerate")
    normal = vh[-1]
    Q = np.eye(m) - 2.0 * np.outer(normal, normal)
    return Isometry(Q, 2.0 * (c @ normal) * normal)


def isometry_fixed_point(sigma: Isometry, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Solve (I - Q) p = t.

    Returns the unique solution when 1 is not an eigenvalue of Q.  Raises
    NoFixedPoint when the system is inconsistent, NonUnique (with a
    minimum-norm representative attached) when the solution set has positive
    dimension.
    """
    m = sigma.m
    A = np.eye(m) - sigma.Q
    U, svals, Vh = np.linalg.svd(A)
    rank = int((svals > tol.eig_one).sum())
    coeff = U.T @ sigma.t
    if rank < m:
        scale = 1.0 + np.linalg.norm(sigma.t)
        if np.abs(coeff[rank:]).max() > tol.fixed_point_rel * scale:
            raise NoFixedPoint("translation component along the eigenvalue-1 space")
        p = Vh[:rank].T @ (coeff[:rank] / svals[:rank])
        raise NonUnique(f"fixed-point set has dimension {m - rank}", point=p)
    return Vh.T @ (coeff / svals)


def _quotient_point(sigma: Isometry, direction: np.ndarray, tol: Tolerances) -> np.ndarray | None:
    """Base point of an invariant line with the given +-1 eigendirection.

    Factors out span(direction) and solves the fixed-point problem of the
    quotient isometry; returns None if the quotient still has eigenvalue 1.
    """
    m = sigma.m
    # orthonormal basis of direction^perp
    _, _, vh = np.linalg.svd(direction[None, :])
    W = vh[1:].T                                     # (m, m-1)
    Qq = W.T @ sigma.Q @ W
    tq = W.T @ sigma.t
    A = np.eye(m - 1) - Qq
    U, svals, Vh = np.linalg.svd(A) if m > 1 else (np.eye(0),) * 3
    if svals.size and svals[-1] <= tol.eig_one:
        return None
    pq = Vh.T @ ((U.T @ tq) / svals) if svals.size else np.zeros(0)
    return W @ pq


def isometry_invariant_line(sigma: Isometry, tol: Tolerances = DEFAULT_TOL) -> Line:
    """A line L with sigma(L) = L.

    The direction must be an eigenvector of Q for eigenvalue +1 or -1; the
    base point comes from fixed-point solving the quotient by the direction.
    Raises NoInvariantLine when Q has no real eigenvalue +-1 within tolerance
    (generic orientation-preserving case in even dimension).
    """
    for lam in (1.0, -1.0):
        A = sigma.Q - lam * np.eye(sigma.m)
        U, svals, Vh = np.linalg.svd(A)
        if svals[-1] > tol.eig_one:
            continue
        d = Vh[-1]
        p = _quotient_point(sigma, d, tol)
        if p is None:
            continue
        # deterministic orientation of the direction
        lead = np.argmax(np.abs(d) > 1e-12)
        if d[lead] < 0:
            d = -d
        return Line(p, d)
    raise NoInvariantLine("orthogonal part has no real eigenvalue +-1 within tolerance")
