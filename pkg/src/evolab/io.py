"""JSON/CSV/SVG/OBJ serialization.

Floats are written through repr() (shortest round-trip form), arrays in index
order 0..n-1, JSON keys sorted: identical inputs produce byte-identical
files.
"""
from __future__ import annotations

import json

import numpy as np

from .curves import SampledCurve
from .evolute import EvoluteMatrix
from .geometry import PvBasis, SideVector, Signature, SphericalPolygon, VertexPolygon
from .isometry import Isometry
from .pairing import SpectrumReport

__all__ = [
    "to_jsonable",
    "dumps",
    "load_polygon",
    "spherical_from_json",
    "vertex_from_json",
    "side_vector_from_json",
    "isometry_from_json",
    "spectrum_csv",
    "curve_json_obj",
    "curve_csv",
    "curve_obj",
    "curve_svg",
]


def _floats(a) -> list:
    return np.asarray(a, dtype=float).tolist()


def to_jsonable(obj) -> dict:
    if isinstance(obj, SphericalPolygon):
        return {"type": "spherical_polygon", "m": obj.m, "n": obj.n, "dirs": _floats(obj.dirs)}
    if isinstance(obj, VertexPolygon):
        return {"type": "vertex_polygon", "m": obj.m, "n": obj.n, "verts": _floats(obj.verts)}
    if isinstance(obj, SideVector):
        return {"type": "side_vector", "x": _floats(obj.x), "base": to_jsonable(obj.base)}
    if isinstance(obj, Isometry):
        return {"type": "isometry", "Q": _floats(obj.Q), "t": _floats(obj.t)}
    if isinstance(obj, Signature):
        return {"type": "signature", "signs": [int(s) for s in obj.signs], "dets": _floats(obj.dets)}
    if isinstance(obj, PvBasis):
        return {"type": "pv_basis", "columns": _floats(obj.columns), "base": to_jsonable(obj.base)}
    if isinstance(obj, EvoluteMatrix):
        return {
            "type": "evolute_matrix",
            "source": to_jsonable(obj.v),
            "target": to_jsonable(obj.u),
            "basis_source": _floats(obj.basis_v.columns),
            "basis_target": _floats(obj.basis_u.columns),
            "matrix": _floats(obj.M),  # row-major
        }
    if isinstance(obj, SpectrumReport):
        return {
            "type": "spectrum_report",
            "eigenvalues": [[z.real, z.imag] for z in obj.eigenvalues],
            "pairs": [
                {"a": [a.real, a.imag], "b": [b.real, b.imag], "rel_gap": g}
                for a, b, g in obj.pairs
            ],
            "zeros": [[z.real, z.imag] for z in obj.zeros],
            "unpaired": [[z.real, z.imag] for z in obj.residual_unpaired],
            "dominant": [obj.dominant.real, obj.dominant.imag],
            "dominant_class": obj.dominant_class,
        }
    raise TypeError(f"no JSON form for {type(obj).__name__}")


def dumps(obj) -> str:
    data = obj if isinstance(obj, dict) else to_jsonable(obj)
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def spherical_from_json(data: dict) -> SphericalPolygon:
    return SphericalPolygon(np.array(data["dirs"], dtype=float))


def vertex_from_json(data: dict) -> VertexPolygon:
    return VertexPolygon(np.array(data["verts"], dtype=float))


def side_vector_from_json(data: dict) -> SideVector:
    return SideVector(spherical_from_json(data["base"]), np.array(data["x"], dtype=float))


def isometry_from_json(data: dict) -> Isometry:
    return Isometry(np.array(data["Q"], dtype=float), np.array(data["t"], dtype=float))


def evolute_matrix_from_json(data: dict) -> EvoluteMatrix:
    v = spherical_from_json(data["source"])
    u = spherical_from_json(data["target"])
    return EvoluteMatrix(
        v,
        u,
        PvBasis(v, np.array(data["basis_source"], dtype=float)),
        PvBasis(u, np.array(data["basis_target"], dtype=float)),
        np.array(data["matrix"], dtype=float),
    )


_LOADERS = {
    "spherical_polygon": spherical_from_json,
    "vertex_polygon": vertex_from_json,
    "side_vector": side_vector_from_json,
    "isometry": isometry_from_json,
}


def load_polygon(path):
    """Read any of the polygon-ish JSON files written by this module."""
    with open(path) as fh:
        data = json.load(fh)
    kind = data.get("type")
    if kind not in _LOADERS:
        raise ValueError(f"unsupported or missing type field: {kind!r}")
    return _LOADERS[kind](data)


# ---------------------------------------------------------------------------
# CSV / OBJ / SVG

def spectrum_csv(rows) -> str:
    """rows: iterables of (seed, report).  One line per eigenvalue pair."""
    lines = ["seed,pair_index,re,im,rel_gap,n_zero,dominant_class"]
    for seed, rep in rows:
        for idx, (a, _b, gap) in enumerate(rep.pairs):
            lines.append(
                f"{seed},{idx},{a.real!r},{a.imag!r},{gap!r},{len(rep.zeros)},{rep.dominant_class}"
            )
    return "\n".join(lines) + "\n"


def curve_json_obj(c: SampledCurve) -> dict:
    data = {
        "type": "sampled_curve",
        "alphas": _floats(c.alphas),
        "points": _floats(c.points),
        "rho": _floats(c.rho),
        "sigma": _floats(c.sigma),
        "cusp_alphas": list(c.cusp_alphas),
    }
    if c.indicatrix is not None:
        data["indicatrix"] = {"r": c.indicatrix.r, "q": c.indicatrix.q, "phase": c.indicatrix.phase}
    if c.profile is not None:
        data["profile"] = {"q": c.profile.q, "coefficients": {str(j): list(ab) for j, ab in c.profile.coefficients.items()}}
    return data


def curve_csv(c: SampledCurve) -> str:
    lines = ["t,x,y,z,rho,sigma"]
    r = c.indicatrix.r if c.indicatrix is not None else 1.0
    for i in range(c.n_samples):
        t = r * c.alphas[i]
        p = c.points[i]
        lines.append(f"{t!r},{p[0]!r},{p[1]!r},{p[2]!r},{c.rho[i]!r},{c.sigma[i]:.0f}")
    return "\n".join(lines) + "\n"


def curve_obj(c: SampledCurve) -> str:
    """Closed polyline in Wavefront OBJ."""
    lines = [f"v {p[0]!r} {p[1]!r} {p[2]!r}" for p in c.points]
    n = c.n_samples
    lines.append("l " + " ".join(str(i + 1) for i in range(n)) + " 1")
    return "\n".join(lines) + "\n"


def curve_svg(c: SampledCurve, axes=(0, 1), annotate_cusps: bool = True) -> str:
    """Orthogonal projection of the curve; cusp positions marked with circles."""
    a, b = axes
    pts = c.points[:, [a, b]]
    lo = pts.min() - 0.1 * (np.ptp(pts) + 1e-9)
    hi = pts.max() + 0.1 * (np.ptp(pts) + 1e-9)
    size = hi - lo
    coords = " ".join(f"{p[0]!r},{p[1]!r}" for p in pts)
    body = [
        f'<polygon points="{coords}" fill="none" stroke="black" stroke-width="{size / 400!r}" />'
    ]
    if annotate_cusps and c.cusp_alphas:
        span = c.alphas[-1] + (c.alphas[1] - c.alphas[0])
        for ca in c.cusp_alphas:
            i = int(round(ca / span * c.n_samples)) % c.n_samples
            p = c.points[i]
            body.append(
                f'<circle cx="{p[a]!r}" cy="{p[b]!r}" r="{size / 80!r}" '
                'fill="none" stroke="red" stroke-width="{0!r}" />'.format(size / 400)
            )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{lo!r} {lo!r} {size!r} {size!r}" width="480" height="480">\n'
        + "\n".join(body)
        + "\n</svg>\n"
    )
