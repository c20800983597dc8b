"""Circumcenters, the vertex-level evolute, the evolute map as a matrix on the
side-length space, involutes, and the inscribed-polygon kernel.

Vertex ``j`` of the evolute is the circumcenter of the window ``P_j ..
P_{j+m}``; with the direction conventions of :mod:`evolab.geometry`, side
``j`` of the evolute is then parallel to ``dual(v)_j`` with no index shift,
and side ``j`` of the *second* evolute is parallel to ``v_{j+m}`` (the signed
cyclic shift picked up by the double dual).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import (
    AffinelyDegenerate,
    AmbiguousKernel,
    NoFixedVector,
)
from .geometry import (
    PvBasis,
    SideVector,
    SphericalPolygon,
    VertexPolygon,
    cyclic_windows,
    double_dual_shift_signs,
    dual,
    pv_basis,
    realize,
    require_generic,
    side_lengths,
)
from .isometry import Isometry, hyperplane_reflection, isometry_fixed_point

__all__ = [
    "circumcenter",
    "p_evolute_vertices",
    "EvoluteMatrix",
    "evolute_matrix",
    "inscribed_kernel",
    "involute",
    "double_dual_relabel_matrix",
]


def circumcenter(points: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Center of the sphere through m+1 points of R^m.

    Solves the linear system z . (a_{i+1} - a_i) = (|a_{i+1}|^2 - |a_i|^2)/2
    over consecutive pairs, i.e. equidistance written between neighbours.
    """
    pts = np.asarray(points, dtype=float)
    m = pts.shape[1]
    if pts.shape != (m + 1, m):
        raise ValueError("need m+1 points of R^m")
    diffs = pts[1:] - pts[:-1]
    sq = np.einsum("ij,ij->i", pts, pts)
    rhs = 0.5 * (sq[1:] - sq[:-1])
    det = np.linalg.det(diffs)
    scale = np.prod(np.linalg.norm(diffs, axis=1)) + 1e-300
    if abs(det) <= tol.rank_rel * scale:
        raise AffinelyDegenerate("points are affinely dependent")
    return np.linalg.solve(diffs, rhs)


def p_evolute_vertices(P: VertexPolygon, tol: Tolerances = DEFAULT_TOL) -> VertexPolygon:
    """Vertex j of the output is the circumcenter of P_j .. P_{j+m}."""
    n, m = P.n, P.m
    pts = P.verts[cyclic_windows(n, 0, m + 1)]            # (n, m+1, m)
    diffs = pts[:, 1:, :] - pts[:, :-1, :]                # (n, m, m)
    dets = np.linalg.det(diffs)
    scale = np.prod(np.linalg.norm(diffs, axis=2), axis=1) + 1e-300
    bad = np.abs(dets) <= tol.rank_rel * scale
    if bad.any():
        j = int(np.argmax(bad))
        raise AffinelyDegenerate(f"vertex window {j} is affinely dependent", window=j)
    sq = np.einsum("nij,nij->ni", pts, pts)
    rhs = 0.5 * (sq[:, 1:] - sq[:, :-1])
    centers = np.linalg.solve(diffs, rhs[..., None])[..., 0]
    return VertexPolygon(centers)


@dataclass(frozen=True)
class EvoluteMatrix:
    """The evolute map as a matrix between orthonormal side-length bases."""

    v: SphericalPolygon
    u: SphericalPolygon
    basis_v: PvBasis
    basis_u: PvBasis
    M: np.ndarray  # (n-m, n-m), coords in basis_v -> coords in basis_u

    def apply(self, x: SideVector | np.ndarray) -> SideVector:
        """Evolute side lengths of a polygon given by its side vector."""
        xv = x.x if isinstance(x, SideVector) else np.asarray(x, dtype=float)
        return SideVector(self.u, self.basis_u.vector(self.M @ self.basis_v.coords(xv)))

    def rank(self, tol: Tolerances = DEFAULT_TOL) -> int:
        svals = np.linalg.svd(self.M, compute_uv=False)
        return int((svals > tol.rank_rel * max(svals[0], 1e-300)).sum())


def _evolute_side_vector(
    v: SphericalPolygon, u: SphericalPolygon, x: np.ndarray, tol: Tolerances
) -> np.ndarray:
    P = realize(v, x, tol=tol)
    Q = p_evolute_vertices(P, tol=tol)
    return side_lengths(u, Q, tol=tol).x


def evolute_matrix(
    v: SphericalPolygon,
    tol: Tolerances = DEFAULT_TOL,
    max_retries: int = 5,
) -> EvoluteMatrix:
    """Assemble the evolute map column by column over a basis of side vectors.

    A basis column can realize to a polygon with an affinely degenerate
    (m+1)-window even though v is generic; in that case the basis is passed
    through a random invertible recombination and the matrix recovered by
    linearity.
    """
    require_generic(v, tol)
    u = dual(v, tol)
    Bv = pv_basis(v, tol)
    Bu = pv_basis(u, tol)
    d = Bv.dim
    rng = np.random.default_rng(0)
    R = np.eye(d)
    for attempt in range(max_retries + 1):
        try:
            cols = np.empty((d, d))
            mixed = Bv.columns @ R
            for k in range(d):
                y = _evolute_side_vector(v, u, mixed[:, k], tol)
                cols[:, k] = Bu.coords(y)
            M = cols @ np.linalg.inv(R)
            return EvoluteMatrix(v, u, Bv, Bu, M)
        except AffinelyDegenerate:
            if attempt == max_retries:
                raise
            R = rng.normal(size=(d, d))
            while abs(np.linalg.det(R)) < 1e-3:
                R = rng.normal(size=(d, d))
    raise AssertionError("unreachable")


def double_dual_relabel_matrix(v: SphericalPolygon, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """n x n signed permutation identifying side vectors over dual(dual(v))
    with side vectors over v.

    With w = dual(dual(v)) one has w_j = eps_j v_{j+m}; re-labeling the
    vertices of a w-polygon by i -> i - m turns its side vector z into the
    v-side vector x with x_i = eps_{i-m} z_{i-m}.
    """
    n, m = v.n, v.m
    eps = double_dual_shift_signs(v, tol)
    S = np.zeros((n, n))
    idx = (np.arange(n) - m) % n
    S[np.arange(n), idx] = eps[idx]
    return S


def inscribed_kernel(v: SphericalPolygon, tol: Tolerances = DEFAULT_TOL) -> SideVector:
    """Side vector spanning the kernel of the evolute map (n - m odd).

    Composes the linear reflections in the hyperplanes through the origin
    perpendicular to each v_i; a unit fixed vector of the composition is the
    first vertex of a polygon inscribed in the unit sphere, which realizes
    the kernel.  The two antipodal fixed vectors give x and -x; the sign is
    fixed so the first nonzero entry of x is positive.
    """
    require_generic(v, tol)
    n, m = v.n, v.m
    # composition sigma = R_{n-1} ... R_0, R_i the reflection perpendicular to v_i
    comp = np.eye(m)
    for i in range(n):
        comp = (np.eye(m) - 2.0 * np.outer(v.dirs[i], v.dirs[i])) @ comp
    # fixed vectors: singular vectors of (sigma - I) with singular value ~ 0
    # (sigma is orthogonal hence normal, so singular values equal |lambda - 1|)
    _, svals, vh = np.linalg.svd(comp - np.eye(m))
    near_one = svals <= tol.eig_one
    if not near_one.any():
        raise NoFixedVector("reflection composition has no eigenvalue near 1 (is n - m even?)")
    if near_one.sum() > 1:
        raise AmbiguousKernel("eigenspace at 1 has dimension > 1 (non-generic input)")
    p = vh[-1]
    verts = np.empty((n, m))
    verts[0] = p
    for i in range(n - 1):
        verts[i + 1] = verts[i] - 2.0 * (verts[i] @ v.dirs[i]) * v.dirs[i]
    x = -2.0 * np.einsum("ij,ij->i", verts, v.dirs)
    x /= np.linalg.norm(x)
    lead = np.argmax(np.abs(x) > 1e-12)
    if x[lead] < 0:
        x = -x
    return SideVector(v, x)


def involute(
    v_target: SphericalPolygon,
    Q: VertexPolygon,
    tol: Tolerances = DEFAULT_TOL,
) -> VertexPolygon:
    """The polygon P with evolute Q, when it exists (n - m even).

    Builds the affine reflection s_a in the hyperplane through the m
    consecutive vertices Q_{a-m+1} .. Q_a (the perpendicular bisector of side
    a of P), takes P_0 as the fixed point of s_{n-1} o ... o s_0, and walks
    P_{a+1} = s_a(P_a).  NoFixedPoint propagates when no involute exists;
    NonUnique propagates on non-generic input such as an actual evolute with
    n - m odd, where the involutes form a line.
    """
    n, m = Q.n, Q.m
    if v_target.n != n or v_target.m != m:
        raise ValueError("direction polygon does not match Q")
    refl = []
    for a in range(n):
        idx = [(a - m + 1 + k) % n for k in range(m)]
        refl.append(hyperplane_reflection(Q.verts[idx], tol))
    sigma = refl[0]
    for a in range(1, n):
        sigma = refl[a].after(sigma)
    p0 = isometry_fixed_point(sigma, tol)
    verts = np.empty((n, m))
    verts[0] = p0
    for a in range(n - 1):
        verts[a + 1] = refl[a](verts[a])
    P = VertexPolygon(verts)
    # the walk used every reflection but the last; closure checks it
    gap = np.linalg.norm(refl[n - 1](P.verts[-1]) - P.verts[0])
    scale = 1.0 + np.abs(P.verts).max()
    if gap > 1e-6 * scale:
        raise AffinelyDegenerate(f"involute walk failed to close (gap {gap:.3e})")
    side_lengths(v_target, P, tol)  # raises NotAligned if conventions disagree
    return P
