"""Duality pairing between side-length spaces, the second-evolute matrix, its
spectrum, and the symplectic structure that forces even eigenvalue
multiplicities.

The pairing of P (sides parallel to v) with Q (sides parallel to dual(v)) is
sum_j y_j lambda_j, where y are Q's side lengths and lambda_j is the signed
distance from the origin to the hyperplane through the vertex window
P_{j+1} .. P_{j+m}, oriented by the dual direction u_j.  Swapping the
arguments requires re-labeling P into the double-dual class (vertex shift by
m); with that identification the pairing is antisymmetric and the evolute map
is anti-self-adjoint.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import DegenerateForm, DegeneratePairing, PairingFailure, WindowMismatch
from .evolute import double_dual_relabel_matrix, evolute_matrix
from .geometry import (
    PvBasis,
    SphericalPolygon,
    VertexPolygon,
    cyclic_windows,
    dual,
    pv_basis,
    realize,
    side_lengths,
)

__all__ = [
    "support_numbers",
    "pairing",
    "PairingMatrix",
    "pairing_matrix",
    "second_evolute_matrix",
    "evolute_image_basis",
    "symplectic_form",
    "skew_hamiltonian_residual",
    "SpectrumReport",
    "spectrum",
]


def support_numbers(
    P: VertexPolygon,
    v: SphericalPolygon,
    u: SphericalPolygon | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> np.ndarray:
    """lambda_j = P_{j+k} . u_j, identical for k = 1..m when P has sides
    parallel to v; the window spread is asserted."""
    if u is None:
        u = dual(v, tol)
    n, m = P.n, P.m
    windows = P.verts[cyclic_windows(n, 1, m)]           # (n, m, m)
    vals = np.einsum("nkj,nj->nk", windows, u.dirs)      # (n, m)
    spread = np.ptp(vals, axis=1)
    scale = 1.0 + np.abs(vals).max()
    worst = int(np.argmax(spread))
    if spread[worst] > tol.support_window * scale:
        raise WindowMismatch(
            f"support window {worst} spreads {spread[worst]:.3e}; input not aligned with v"
        )
    return vals.mean(axis=1)


def pairing(
    v: SphericalPolygon,
    P: VertexPolygon,
    Q: VertexPolygon,
    tol: Tolerances = DEFAULT_TOL,
) -> float:
    """<P, Q> = sum_j y_j lambda_j for P over v and Q over dual(v).

    Translation-invariant in both arguments.  The reversed pairing
    <Q, P> equals -<P, Q> once P is re-labeled into the double-dual class:
    ``pairing(dual(v), Q, P.relabeled(-m))``.
    """
    u = dual(v, tol)
    lam = support_numbers(P, v, u, tol)
    y = side_lengths(u, Q, tol).x
    return float(y @ lam)


@dataclass(frozen=True)
class PairingMatrix:
    """Gram matrix of the pairing over orthonormal side-length bases."""

    v: SphericalPolygon
    basis_v: PvBasis
    basis_u: PvBasis
    G: np.ndarray  # (n-m, n-m); G[a, b] = <realize(Bv[a]), realize(Bu[b])>
    smin: float
    smax: float


def pairing_matrix(v: SphericalPolygon, tol: Tolerances = DEFAULT_TOL) -> PairingMatrix:
    u = dual(v, tol)
    Bv = pv_basis(v, tol)
    Bu = pv_basis(u, tol)
    d = Bv.dim
    # lambda of each v-basis polygon, paired against the side lengths of each
    # u-basis polygon; both are basepoint-free by construction
    lams = np.empty((d, v.n))
    for a in range(d):
        lams[a] = support_numbers(realize(v, Bv.columns[:, a], tol=tol), v, u, tol)
    G = lams @ Bu.columns
    svals = np.linalg.svd(G, compute_uv=False)
    smin, smax = float(svals[-1]), float(svals[0])
    if smin < tol.pairing_nondeg * smax:
        raise DegeneratePairing(f"pairing matrix nearly singular ({smin:.3e} / {smax:.3e})")
    return PairingMatrix(v, Bv, Bu, G, smin, smax)


def second_evolute_matrix(
    v: SphericalPolygon,
    tol: Tolerances = DEFAULT_TOL,
    parts: bool = False,
):
    """Matrix of the second evolute as an endomorphism of the side-length
    space of v (coordinates in ``pv_basis(v)``).

    Composes the evolute maps of v and of its dual, then identifies the
    double-dual class with v through the signed cyclic shift.
    """
    E1 = evolute_matrix(v, tol)
    E2 = evolute_matrix(E1.u, tol)
    S = double_dual_relabel_matrix(v, tol)
    # E2's target basis lives over dual(dual(v)); S carries its vectors to v
    ident = E1.basis_v.columns.T @ S @ E2.basis_u.columns
    M2 = ident @ E2.M @ E1.M
    if parts:
        return M2, E1, E2, ident
    return M2


def evolute_image_basis(M2: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of range(M2) (all of the space when n - m is even)."""
    U, svals, _ = np.linalg.svd(M2)
    r = int((svals > tol.rank_rel * max(svals[0], 1e-300)).sum())
    return U[:, :r]


def symplectic_form(
    v: SphericalPolygon,
    tol: Tolerances = DEFAULT_TOL,
    restricted: bool = True,
):
    """The antisymmetric form omega(x, y) = <x, E y> on the side-length space.

    Returns (Omega, C) where C is the orthonormal basis of the subspace the
    form is taken on: the full space when n - m is even, the image of the
    second evolute when n - m is odd (where the unrestricted form is
    degenerate along the kernel).
    """
    E1 = evolute_matrix(v, tol)
    pm = pairing_matrix(v, tol)
    Omega_full = pm.G @ E1.M
    d = Omega_full.shape[0]
    anti = np.abs(Omega_full + Omega_full.T).max()
    if anti > 1e-8 * (1.0 + np.abs(Omega_full).max()):
        raise DegenerateForm(f"form is not antisymmetric (residual {anti:.3e})")
    if (v.n - v.m) % 2 == 0 or not restricted:
        C = np.eye(d)
        Omega = Omega_full
    else:
        M2 = second_evolute_matrix(v, tol)
        C = evolute_image_basis(M2, tol)
        Omega = C.T @ Omega_full @ C
    svals = np.linalg.svd(Omega, compute_uv=False)
    if svals[-1] < tol.pairing_nondeg * max(svals[0], 1e-300):
        raise DegenerateForm("symplectic form singular on its domain")
    return Omega, C


def skew_hamiltonian_residual(v: SphericalPolygon, tol: Tolerances = DEFAULT_TOL) -> float:
    """max |omega(M2 x, y) - omega(x, M2 y)| over the basis, scaled by
    ||Omega|| ||M2|| so the value is dimensionless."""
    M2 = second_evolute_matrix(v, tol)
    Omega, C = symplectic_form(v, tol)
    M2r = C.T @ M2 @ C
    resid = np.abs(M2r.T @ Omega - Omega @ M2r).max()
    scale = np.linalg.norm(Omega, 2) * max(np.linalg.norm(M2r, 2), 1e-300)
    return float(resid / scale)


@dataclass(frozen=True)
class SpectrumReport:
    """Eigenvalues of a second-evolute matrix, matched into equal pairs."""

    eigenvalues: np.ndarray                 # all eigenvalues, sorted by -|.|
    pairs: tuple                            # ((lam_a, lam_b, rel_gap), ...)
    zeros: np.ndarray                       # eigenvalues treated as 0
    residual_unpaired: tuple                # nonzero eigenvalues left unpaired
    dominant: complex
    dominant_class: str                     # 'real-positive' | 'real-negative' | 'complex'

    @property
    def max_pair_gap(self) -> float:
        return max((g for _, _, g in self.pairs), default=0.0)

    def modulus_ratio(self) -> float:
        """|second distinct pair| / |dominant pair|; 0 when nothing follows."""
        mods = sorted({round(abs(a), 12) for a, _, _ in self.pairs}, reverse=True)
        if len(mods) < 2:
            return 0.0
        return mods[1] / mods[0]


def spectrum(
    M2: np.ndarray,
    v: SphericalPolygon | None = None,
    tol: Tolerances = DEFAULT_TOL,
    strict: bool = True,
) -> SpectrumReport:
    """Eigenvalues matched greedily into nearest pairs.

    Every nonzero eigenvalue must find a partner within the relative pairing
    tolerance; with ``strict`` a violation raises PairingFailure (carrying
    the offending gap) instead of being absorbed silently.
    """
    ev = np.linalg.eigvals(np.asarray(M2, dtype=float))
    order = np.lexsort((ev.imag, ev.real, -np.abs(ev)))
    ev = ev[order]
    top = np.abs(ev).max() if ev.size else 0.0
    if top == 0.0:
        return SpectrumReport(ev, (), ev, (), 0j, "real-positive")
    nz = [complex(z) for z in ev if abs(z) > tol.eig_zero_rel * top]
    zeros = np.array([z for z in ev if abs(z) <= tol.eig_zero_rel * top])
    used = [False] * len(nz)
    pairs = []
    unpaired = []
    for i, z in enumerate(nz):
        if used[i]:
            continue
        used[i] = True
        best_j, best_gap = None, np.inf
        for j in range(i + 1, len(nz)):
            if not used[j]:
                gap = abs(z - nz[j])
                if gap < best_gap:
                    best_j, best_gap = j, gap
        if best_j is None or best_gap > tol.eig_pair_rel * abs(z):
            if strict:
                raise PairingFailure(
                    f"eigenvalue {z:.6g} has nearest partner at gap {best_gap:.3e}",
                    gap=best_gap,
                )
            unpaired.append(z)
            continue
        used[best_j] = True
        pairs.append((z, nz[best_j], best_gap / abs(z)))
    dom = ev[0]
    if abs(dom.imag) <= 1e-8 * abs(dom):
        cls = "real-positive" if dom.real > 0 else "real-negative"
    else:
        cls = "complex"
    return SpectrumReport(ev, tuple(pairs), zeros, tuple(unpaired), complex(dom), cls)
