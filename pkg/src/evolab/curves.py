"""Closed space curves with cusps from periodic profiles on a circle-of-latitude
tangent indicatrix, their Frenet data, evolutes, pairing, and the spacial
hypocycloids.

Parameterization.  The indicatrix is gamma(alpha) = (r cos(alpha+phi),
r sin(alpha+phi), sqrt(1-r^2)) with alpha in [0, 2 pi q) for q windings; its
arc length is t = r alpha.  A profile rho is a trigonometric polynomial in
alpha whose values are read per unit arc length of gamma, so the curve is

    Gamma(alpha) = r * integral_0^alpha rho(a) gamma(a) da

and the classical relations hold verbatim: speed |dGamma/dt| = |rho|,
curvature 1/|rho|, geodesic curvature of the indicatrix kappa = rho * tau =
sqrt(1-r^2)/r, and the evolute profile is rho + rho_ss = per-harmonic
multiplication by (1 - nu^2/(1-r^2)) on the dual latitude circle (radius
sqrt(1-r^2), phase shifted by pi).

The printed closed form of the spacial hypocycloid corresponds to the pure
harmonic profile (2/r) cos(k alpha); `hypocycloid` uses exactly that profile
so its samples reproduce the closed form to machine precision.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import (
    InvalidParameter,
    MismatchedIndicatrix,
    NonSimpleZero,
    VanishingTorsion,
)

__all__ = [
    "LatitudeIndicatrix",
    "FourierProfile",
    "SampledCurve",
    "FrenetData",
    "closure_project",
    "build_curve",
    "frenet_diagnostics",
    "evolute_curve",
    "evolute_profile",
    "curve_pairing",
    "hypocycloid",
    "hypocycloid_closed_form",
    "first_evolute_homothety",
    "second_evolute_homothety",
    "random_profile",
]

TWO_PI = 2.0 * np.pi


# ---------------------------------------------------------------------------
# indicatrix

@dataclass(frozen=True)
class LatitudeIndicatrix:
    """Circle of latitude on S^2 at height sqrt(1-r^2), traversed q times."""

    r: float
    q: int = 1
    phase: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.r < 1.0:
            raise InvalidParameter(f"need 0 < r < 1, got {self.r}")
        if self.q < 1 or int(self.q) != self.q:
            raise InvalidParameter("winding count q must be a positive integer")

    @property
    def height(self) -> float:
        return float(np.sqrt(1.0 - self.r * self.r))

    @property
    def alpha_period(self) -> float:
        return TWO_PI * self.q

    @property
    def arc_period(self) -> float:
        return TWO_PI * self.r * self.q

    @property
    def geodesic_curvature(self) -> float:
        return self.height / self.r

    def point(self, alpha) -> np.ndarray:
        a = np.asarray(alpha, dtype=float) + self.phase
        return np.stack(
            [self.r * np.cos(a), self.r * np.sin(a), np.full_like(a, self.height)], axis=-1
        )

    def tangent_t(self, alpha) -> np.ndarray:
        """d gamma / dt, unit (t is arc length)."""
        a = np.asarray(alpha, dtype=float) + self.phase
        return np.stack([-np.sin(a), np.cos(a), np.zeros_like(a)], axis=-1)

    def second_t(self, alpha) -> np.ndarray:
        """d^2 gamma / dt^2."""
        a = np.asarray(alpha, dtype=float) + self.phase
        return np.stack([-np.cos(a) / self.r, -np.sin(a) / self.r, np.zeros_like(a)], axis=-1)

    def binormal(self, alpha) -> np.ndarray:
        """gamma x gamma_t; also the position vector of the dual circle."""
        a = np.asarray(alpha, dtype=float) + self.phase
        h = self.height
        return np.stack([-h * np.cos(a), -h * np.sin(a), np.full_like(a, self.r)], axis=-1)

    def dual(self) -> "LatitudeIndicatrix":
        return LatitudeIndicatrix(self.height, self.q, self.phase + np.pi)

    def close_to(self, other: "LatitudeIndicatrix", tol: float = 1e-9) -> bool:
        return (
            abs(self.r - other.r) < tol
            and self.q == other.q
            and abs(np.remainder(self.phase - other.phase + np.pi, TWO_PI) - np.pi) < tol
        )


# ---------------------------------------------------------------------------
# profiles

@dataclass(frozen=True)
class FourierProfile:
    """rho(alpha) = sum_j a_j cos(j alpha / q) + b_j sin(j alpha / q).

    Index j counts harmonics of the q-fold traversal; frequency 1 in alpha is
    index q.  Valid (closed-curve) profiles have no j = 0 and no j = q terms.
    """

    coefficients: dict[int, tuple[float, float]]
    q: int = 1

    def __post_init__(self):
        clean = {}
        for j, (a, b) in sorted(self.coefficients.items()):
            if j < 0:
                raise InvalidParameter("harmonic indices must be >= 0")
            if a != 0.0 or b != 0.0:
                clean[int(j)] = (float(a), float(b))
        object.__setattr__(self, "coefficients", clean)

    def is_closure_valid(self) -> bool:
        c = self.coefficients
        return 0 not in c and self.q not in c

    def amplitude(self) -> float:
        return sum(abs(a) + abs(b) for a, b in self.coefficients.values())

    def evaluate(self, alpha, deriv: int = 0) -> np.ndarray:
        """Value of the deriv-th alpha-derivative at the given angles."""
        alpha = np.asarray(alpha, dtype=float)
        out = np.zeros_like(alpha)
        for j, (a, b) in self.coefficients.items():
            nu = j / self.q
            phase = deriv * np.pi / 2.0
            out += nu**deriv * (
                a * np.cos(nu * alpha + phase) + b * np.sin(nu * alpha + phase)
            )
        return out

    def scaled(self, c: float) -> "FourierProfile":
        return FourierProfile(
            {j: (c * a, c * b) for j, (a, b) in self.coefficients.items()}, self.q
        )

    def plus(self, other: "FourierProfile") -> "FourierProfile":
        if other.q != self.q:
            raise InvalidParameter("cannot add profiles with different winding counts")
        keys = set(self.coefficients) | set(other.coefficients)
        out = {}
        for j in keys:
            a1, b1 = self.coefficients.get(j, (0.0, 0.0))
            a2, b2 = other.coefficients.get(j, (0.0, 0.0))
            out[j] = (a1 + a2, b1 + b2)
        return FourierProfile(out, self.q)

    def complex_spectrum(self) -> dict[float, complex]:
        """Frequencies in alpha -> coefficients of e^{i w alpha}."""
        spec: dict[float, complex] = {}
        for j, (a, b) in self.coefficients.items():
            nu = j / self.q
            if nu == 0.0:
                spec[0.0] = spec.get(0.0, 0.0) + complex(a)
                continue
            spec[nu] = spec.get(nu, 0.0) + (a - 1j * b) / 2.0
            spec[-nu] = spec.get(-nu, 0.0) + (a + 1j * b) / 2.0
        return spec


def closure_project(coefficients: dict | FourierProfile, q: int = 1) -> FourierProfile:
    """Drop the constant term and the first harmonics in alpha (index q); the
    identity on already-valid profiles."""
    if isinstance(coefficients, FourierProfile):
        q = coefficients.q
        coefficients = coefficients.coefficients
    kept = {j: ab for j, ab in coefficients.items() if j not in (0, q)}
    return FourierProfile(kept, q)


def random_profile(
    rng: np.random.Generator | int,
    q: int = 1,
    max_index: int = 6,
    decay: float = 0.6,
) -> FourierProfile:
    """Seeded closure-valid profile with geometrically damped harmonics."""
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    coeffs = {}
    for j in range(1, max_index + 1):
        if j == q:
            continue
        w = decay ** j
        coeffs[j] = (w * rng.normal(), w * rng.normal())
    prof = closure_project(coeffs, q)
    if not prof.coefficients:
        coeffs = {q + 1: (1.0, 0.0)}
        prof = FourierProfile(coeffs, q)
    return prof


# ---------------------------------------------------------------------------
# sampled curves

@dataclass(frozen=True)
class SampledCurve:
    """Uniform alpha-samples of a curve with its frame and cusp bookkeeping."""

    alphas: np.ndarray            # (N,) uniform on [0, period)
    points: np.ndarray            # (N, 3)
    tangents: np.ndarray          # (N, 3) T, continuous through cusps
    normals: np.ndarray           # (N, 3) N = dT/dt
    binormals: np.ndarray         # (N, 3) B = T x N
    sigma: np.ndarray             # (N,) sign of rho
    rho: np.ndarray               # (N,) profile values (per unit t)
    cusp_alphas: tuple = ()
    cusp_indices: tuple = ()      # sample indices bracketing each zero of rho
    indicatrix: LatitudeIndicatrix | None = None
    profile: FourierProfile | None = None

    def __post_init__(self):
        for name in ("alphas", "points", "tangents", "normals", "binormals", "sigma", "rho"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        # frame orthonormality, per sample
        for a, b in (("tangents", "normals"), ("tangents", "binormals"), ("normals", "binormals")):
            dot = np.einsum("ij,ij->i", getattr(self, a), getattr(self, b))
            if np.abs(dot).max() > 1e-10:
                raise InvalidParameter(f"frame not orthogonal: {a}.{b} up to {np.abs(dot).max():.2e}")
        for a in ("tangents", "normals", "binormals"):
            nrm = np.linalg.norm(getattr(self, a), axis=1)
            if np.abs(nrm - 1.0).max() > 1e-10:
                raise InvalidParameter(f"{a} not unit")
        if len(self.cusp_alphas) % 2 != 0:
            raise InvalidParameter("cusp count must be even on a closed curve")

    @property
    def n_samples(self) -> int:
        return len(self.alphas)

    def cusp_mask(self, rel: float = DEFAULT_TOL.cusp_mask_rel) -> np.ndarray:
        """True away from cusps: |rho| above rel * max |rho|."""
        amp = np.abs(self.rho).max()
        if amp == 0.0:
            return np.zeros_like(self.rho, dtype=bool)
        return np.abs(self.rho) > rel * amp

    def translated(self, c) -> "SampledCurve":
        return SampledCurve(
            self.alphas, self.points + np.asarray(c, dtype=float), self.tangents,
            self.normals, self.binormals, self.sigma, self.rho, self.cusp_alphas,
            self.cusp_indices, self.indicatrix, self.profile,
        )

    def diameter(self) -> float:
        c = self.points.mean(axis=0)
        return float(2.0 * np.linalg.norm(self.points - c, axis=1).max())


def _find_cusps(profile: FourierProfile, n_probe: int, tol: Tolerances) -> tuple[tuple, tuple]:
    """Zeros of rho on [0, period): bisection between samples with a sign change."""
    period = TWO_PI * profile.q
    grid = np.linspace(0.0, period, n_probe, endpoint=False)
    vals = profile.evaluate(grid)
    amp = profile.amplitude()
    if amp == 0.0:
        return (), ()
    cusps = []
    brackets = []
    for i in range(n_probe):
        a0, a1 = grid[i], grid[i] + period / n_probe
        f0, f1 = vals[i], vals[(i + 1) % n_probe]
        if f0 == 0.0:
            cusps.append(a0)
            brackets.append(i)
            continue
        if f0 * f1 < 0.0:
            lo, hi, flo = a0, a1, f0
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                fm = float(profile.evaluate(np.array([mid]))[0])
                if fm == 0.0:
                    lo = hi = mid
                    break
                if flo * fm < 0.0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            cusps.append(0.5 * (lo + hi))
            brackets.append(i)
    for a in cusps:
        slope = profile.evaluate(np.array([a]), deriv=1)[0]
        if abs(slope) <= 1e-8 * amp:
            raise NonSimpleZero(f"profile zero at alpha={a:.6f} is not simple")
    return tuple(cusps), tuple(brackets)


def build_curve(
    gamma: LatitudeIndicatrix,
    profile: FourierProfile,
    samples: int = 2048,
    tol: Tolerances = DEFAULT_TOL,
) -> SampledCurve:
    """Exact term-wise integration of Gamma(alpha) = r * int rho gamma d alpha.

    The xy-components ride on e^{i(w+1) alpha}, the z-component on
    e^{i w alpha}; closure-validity of the profile guarantees no resonant
    (linear-in-alpha) terms, so every antiderivative is again trigonometric.
    """
    if profile.q != gamma.q:
        raise MismatchedIndicatrix("profile and indicatrix winding counts differ")
    if not profile.is_closure_valid():
        raise InvalidParameter("profile has constant or first-harmonic terms; closure_project it")
    r, h, phi = gamma.r, gamma.height, gamma.phase
    alphas = np.linspace(0.0, gamma.alpha_period, samples, endpoint=False)
    xy = np.zeros(samples, dtype=complex)
    z = np.zeros(samples)
    for w, c in profile.complex_spectrum().items():
        # definite integral from 0, term by term
        xy += r * r * np.exp(1j * phi) * c * (np.exp(1j * (w + 1) * alphas) - 1.0) / (1j * (w + 1))
        z += np.real(r * h * c * (np.exp(1j * w * alphas) - 1.0) / (1j * w))
    points = np.stack([xy.real, xy.imag, z], axis=-1)
    # closure residual of the exact antiderivative at the full period
    period = gamma.alpha_period
    end_xy = 0j
    end_z = 0.0
    for w, c in profile.complex_spectrum().items():
        end_xy += r * r * np.exp(1j * phi) * c * (np.exp(1j * (w + 1) * period) - 1.0) / (1j * (w + 1))
        end_z += np.real(r * h * c * (np.exp(1j * w * period) - 1.0) / (1j * w))
    gap = np.hypot(abs(end_xy), abs(end_z))
    diam = 2.0 * np.linalg.norm(points - points.mean(axis=0), axis=1).max()
    if gap > 1e-12 * (diam + 1.0):
        raise InvalidParameter(f"curve fails to close (gap {gap:.3e})")
    rho = profile.evaluate(alphas)
    cusp_alphas, cusp_idx = _find_cusps(profile, max(samples, 512), tol)
    return SampledCurve(
        alphas=alphas,
        points=points,
        tangents=gamma.point(alphas),
        normals=gamma.tangent_t(alphas),
        binormals=gamma.binormal(alphas),
        sigma=np.sign(rho),
        rho=rho,
        cusp_alphas=cusp_alphas,
        cusp_indices=cusp_idx,
        indicatrix=gamma,
        profile=profile,
    )


# ---------------------------------------------------------------------------
# Frenet data

@dataclass(frozen=True)
class FrenetData:
    curvature: np.ndarray           # k = 1/|rho|
    torsion: np.ndarray             # from det(G', G'', G''') / |G' x G''|^2
    geodesic: np.ndarray            # rho * torsion, should be constant
    geodesic_reference: float       # (gamma + gamma_tt) . B, computed from the indicatrix
    away_from_cusps: np.ndarray     # bool mask


def frenet_diagnostics(c: SampledCurve, tol: Tolerances = DEFAULT_TOL) -> FrenetData:
    """Curvature, torsion and geodesic curvature per sample.

    Torsion comes from the determinant formula applied to exact t-derivatives
    of the trigonometric data; inside cusp windows the values blow up as the
    curvature and torsion of a simple cusp do, and are reported as-is with
    the mask cleared.
    """
    if c.profile is None or c.indicatrix is None:
        raise InvalidParameter("frenet_diagnostics needs a profile-backed curve")
    g = c.indicatrix
    al = c.alphas
    rho = c.rho
    rho_t = c.profile.evaluate(al, 1) / g.r
    rho_tt = c.profile.evaluate(al, 2) / (g.r * g.r)
    T, N = c.tangents, c.normals
    g_tt = g.second_t(al)
    d1 = rho[:, None] * T
    d2 = rho_t[:, None] * T + rho[:, None] * N
    d3 = rho_tt[:, None] * T + 2.0 * rho_t[:, None] * N + rho[:, None] * g_tt
    cross = np.cross(d1, d2)
    num = np.einsum("ij,ij->i", cross, d3)
    den = np.einsum("ij,ij->i", cross, cross)
    with np.errstate(divide="ignore", invalid="ignore"):
        tau = num / den
        k = 1.0 / np.abs(rho)
    kappa_ref = float(np.einsum("ij,ij->i", g.point(al) + g_tt, c.binormals).mean())
    return FrenetData(
        curvature=k,
        torsion=tau,
        geodesic=rho * tau,
        geodesic_reference=kappa_ref,
        away_from_cusps=c.cusp_mask(tol.cusp_mask_rel),
    )


# ---------------------------------------------------------------------------
# evolutes

def evolute_profile(profile: FourierProfile, gamma: LatitudeIndicatrix) -> FourierProfile:
    """Per-harmonic multiplier 1 - nu^2/(1-r^2); the result lives on
    gamma.dual().  Never zero for closure-valid profiles, so the map is a
    bijection on them."""
    h2 = 1.0 - gamma.r * gamma.r
    out = {}
    for j, (a, b) in profile.coefficients.items():
        nu = j / profile.q
        f = 1.0 - nu * nu / h2
        out[j] = (f * a, f * b)
    return FourierProfile(out, profile.q)


def evolute_curve(c: SampledCurve, tol: Tolerances = DEFAULT_TOL) -> SampledCurve:
    """Monge's formula with the sign-corrected frame:
    evolute = Gamma + rho N + (rho_t / kappa) B.

    kappa is measured as the median of rho * torsion away from cusps (it must
    come out constant for a latitude indicatrix); the coefficient rho_t/kappa
    is the finite continuation of rho_x / tau through cusps.
    """
    if c.profile is not None and c.indicatrix is not None:
        fr = frenet_diagnostics(c, tol)
        mask = fr.away_from_cusps
        if not mask.any():
            raise VanishingTorsion("no samples away from cusp windows")
        kappas = fr.geodesic[mask]
        kappa = float(np.median(kappas))
        if abs(kappa) < 1e-12:
            raise VanishingTorsion("geodesic curvature vanishes; torsion has no sign")
        spread = np.abs(kappas - kappa).max()
        if spread > 1e-6 * abs(kappa):
            raise VanishingTorsion(f"rho * tau not constant (spread {spread:.2e}); bad frame data")
        g = c.indicatrix
        rho_t = c.profile.evaluate(c.alphas, 1) / g.r
        points = c.points + c.rho[:, None] * c.normals + (rho_t / kappa)[:, None] * c.binormals
        dual = g.dual()
        new_profile = evolute_profile(c.profile, g)
        rho_bar = new_profile.evaluate(c.alphas)
        cusp_alphas, cusp_idx = _find_cusps(new_profile, max(c.n_samples, 512), tol)
        return SampledCurve(
            alphas=c.alphas,
            points=points,
            tangents=dual.point(c.alphas),
            normals=dual.tangent_t(c.alphas),
            binormals=dual.binormal(c.alphas),
            sigma=np.sign(rho_bar),
            rho=rho_bar,
            cusp_alphas=cusp_alphas,
            cusp_indices=cusp_idx,
            indicatrix=dual,
            profile=new_profile,
        )
    return _evolute_curve_numeric(c, tol)


def _evolute_curve_numeric(c: SampledCurve, tol: Tolerances) -> SampledCurve:
    """Finite-difference path for user-supplied curves.

    Central O(h^2) derivatives in the (uniform, periodic) sample parameter
    give curvature and torsion; the signed curvature radius rho = sigma/k and
    its arc-length derivative feed Monge's formula on the supplied frame.
    The output frame is (B, -N, T), the dual frame of the input.
    """
    al = c.alphas
    h = al[1] - al[0]
    pts = c.points
    d1 = (np.roll(pts, -1, axis=0) - np.roll(pts, 1, axis=0)) / (2 * h)
    d2 = (np.roll(pts, -1, axis=0) - 2 * pts + np.roll(pts, 1, axis=0)) / (h * h)
    d3 = (
        np.roll(pts, -2, axis=0)
        - 2 * np.roll(pts, -1, axis=0)
        + 2 * np.roll(pts, 1, axis=0)
        - np.roll(pts, 2, axis=0)
    ) / (2 * h**3)
    cross = np.cross(d1, d2)
    denom = np.einsum("ij,ij->i", cross, cross)
    speed = np.linalg.norm(d1, axis=1)
    scale = max(speed.max(), 1e-300)
    regular = speed > tol.cusp_mask_rel * scale
    if not regular.any():
        raise VanishingTorsion("curve has no regular samples")
    if np.any(denom[regular] <= 1e-14 * scale**4):
        raise VanishingTorsion("torsion numerically zero away from cusps")
    with np.errstate(divide="ignore", invalid="ignore"):
        tau = np.einsum("ij,ij->i", cross, d3) / denom
        curv = np.sqrt(denom) / speed**3
        rho = c.sigma / curv
    rho_x = (np.roll(rho, -1) - np.roll(rho, 1)) / (2 * h) / np.maximum(speed, 1e-300)
    with np.errstate(divide="ignore", invalid="ignore"):
        coeff = c.sigma * rho_x / tau
    coeff[~np.isfinite(coeff)] = 0.0
    points = pts + rho[:, None] * c.normals + coeff[:, None] * c.binormals
    return SampledCurve(
        alphas=al,
        points=points,
        tangents=c.binormals,
        normals=-c.normals,
        binormals=c.tangents,
        sigma=np.ones_like(c.sigma),
        rho=np.zeros_like(c.rho),
        cusp_alphas=(),
        cusp_indices=(),
        indicatrix=None,
        profile=None,
    )


# ---------------------------------------------------------------------------
# pairing

def curve_pairing(c: SampledCurve, d: SampledCurve, tol: Tolerances = DEFAULT_TOL) -> float:
    """<Gamma, D> = int lambda(alpha) rho_D(alpha) ds over the dual circle,
    with lambda = Gamma . B (support number) and ds = r_dual d alpha.

    Trapezoidal quadrature on the uniform alpha grid; spectrally accurate for
    the trigonometric integrands that arise here.
    """
    if c.indicatrix is None or d.indicatrix is None:
        raise MismatchedIndicatrix("pairing needs indicatrix-backed curves")
    if not c.indicatrix.dual().close_to(d.indicatrix):
        raise MismatchedIndicatrix("second curve does not live on the dual indicatrix")
    if c.n_samples != d.n_samples:
        raise MismatchedIndicatrix("curves must share the sample grid")
    lam = np.einsum("ij,ij->i", c.points, c.binormals)
    ds = d.indicatrix.r  # ds/dalpha on the dual circle
    period = c.indicatrix.alpha_period
    return float(np.mean(lam * d.rho) * ds * period)


# ---------------------------------------------------------------------------
# hypocycloids

def _as_fraction(k) -> Fraction:
    if isinstance(k, Fraction):
        f = k
    elif isinstance(k, int):
        f = Fraction(k, 1)
    elif isinstance(k, str):
        f = Fraction(k)
    elif isinstance(k, float):
        f = Fraction(k).limit_denominator(10**6)
    else:
        raise InvalidParameter(f"cannot interpret winding ratio {k!r}")
    if f <= 1:
        raise InvalidParameter(f"need k > 1, got {f}")
    return f


def hypocycloid_closed_form(r: float, k, alphas: np.ndarray) -> np.ndarray:
    """The printed parametric equations of the spacial hypocycloid."""
    kf = float(_as_fraction(k))
    x = r * (np.sin((kf - 1) * alphas) / (kf - 1) + np.sin((kf + 1) * alphas) / (kf + 1))
    y = r * (np.cos((kf - 1) * alphas) / (kf - 1) - np.cos((kf + 1) * alphas) / (kf + 1))
    z = 2.0 * np.sqrt(1.0 - r * r) * np.sin(kf * alphas) / kf
    return np.stack([x, y, z], axis=-1)


def hypocycloid(r: float, k, samples: int = 2048, tol: Tolerances = DEFAULT_TOL) -> SampledCurve:
    """Spacial hypocycloid with ratio k = p/q > 1: pure harmonic profile
    (2/r) cos(k alpha) on the latitude circle of radius r, traversed q times,
    2p cusps.  Sample points equal the closed form exactly."""
    if not 0.0 < r < 1.0:
        raise InvalidParameter(f"need 0 < r < 1, got {r}")
    frac = _as_fraction(k)
    p, q = frac.numerator, frac.denominator
    gamma = LatitudeIndicatrix(r, q)
    profile = FourierProfile({p: (2.0 / r, 0.0)}, q)
    built = build_curve(gamma, profile, samples, tol)
    # integration starts at the origin; the closed form starts at its own
    # y-offset 2r/(k^2-1)
    kf = float(frac)
    offset = np.array([0.0, 2.0 * r / (kf * kf - 1.0), 0.0])
    return built.translated(offset)


def first_evolute_homothety(r: float, k) -> float:
    """|coefficient| of the homothety taking the hypocycloid to its evolute
    (with the r <-> sqrt(1-r^2) swap)."""
    kf = float(_as_fraction(k))
    return (r * r + kf * kf - 1.0) / (r * np.sqrt(1.0 - r * r))


def second_evolute_homothety(
    r: float,
    k: int,
    samples: int = 2048,
    verify: bool = True,
    tol: Tolerances = DEFAULT_TOL,
) -> float:
    """Coefficient of the homothety taking the hypocycloid to its second
    evolute: (r^2(1-r^2) + k^2(k^2-1)) / (r^2(1-r^2)).

    With ``verify`` the closed form is checked against two applications of
    the geometric evolute (pointwise, up to translation).
    """
    if not 0.0 < r < 1.0:
        raise InvalidParameter(f"need 0 < r < 1, got {r}")
    kf = float(_as_fraction(k))
    r2, h2 = r * r, 1.0 - r * r
    coeff = (r2 * h2 + kf * kf * (kf * kf - 1.0)) / (r2 * h2)
    if verify:
        base = hypocycloid(r, k, samples, tol)
        twice = evolute_curve(evolute_curve(base, tol), tol)
        target = coeff * base.points
        diff = twice.points - target
        diff = diff - diff.mean(axis=0)
        err = np.abs(diff).max() / max(np.abs(target).max(), 1e-300)
        if err > 1e-7:
            raise InvalidParameter(f"geometric double evolute disagrees with coefficient ({err:.2e})")
    return float(coeff)
