"""Normalized evolute iteration and figure-data export.

Each step applies the vertex-level evolute and renormalizes (centroid to the
origin, maximal vertex distance 1).  Every second step the vertices are
re-labeled by the cyclic shift m, so frames of equal parity live over the
same direction polygon and can be compared index-by-index.  The asymptotics
follow the dominant eigenvalue of the second-evolute matrix: real positive
gives convergence of equal-parity frames, real negative convergence up to a
central flip, complex quasi-periodicity.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import IterationDiverged, PointPolygon
from .evolute import p_evolute_vertices
from .geometry import SphericalPolygon, VertexPolygon
from .pairing import SpectrumReport, second_evolute_matrix, spectrum

__all__ = [
    "normalize",
    "IterationTrace",
    "iterate",
    "empirical_contraction_ratio",
    "trace_csv",
    "trace_svg",
    "export_trace",
]


def normalize(P: VertexPolygon) -> VertexPolygon:
    """Centroid to the origin, maximal vertex norm to 1."""
    centered = P.verts - P.verts.mean(axis=0)
    r = np.linalg.norm(centered, axis=1).max()
    if r <= 1e-14 * (1.0 + np.abs(P.verts).max()):
        raise PointPolygon("all vertices coincide; cannot rescale")
    return VertexPolygon(centered / r)


def _frame_distances(A: VertexPolygon, B: VertexPolygon) -> tuple[float, float]:
    """(same, flipped) max-vertex distances between equal-parity frames."""
    d_same = np.linalg.norm(A.verts - B.verts, axis=1).max()
    d_flip = np.linalg.norm(A.verts + B.verts, axis=1).max()
    return float(d_same), float(d_flip)


@dataclass(frozen=True)
class IterationTrace:
    frames: tuple                       # normalized VertexPolygon per step
    distance_same: np.ndarray           # d(frame_k, frame_{k+2})
    distance_flipped: np.ndarray        # d(frame_k, -frame_{k+2})
    report: SpectrumReport              # spectrum of the second-evolute matrix
    failed_at: int | None = None        # step index of a degenerate collapse

    @property
    def classification(self) -> str:
        return self.report.dominant_class

    def even_distances(self, flipped: bool | None = None) -> np.ndarray:
        """Distances measured on even frames; picks same/flipped per the
        dominant eigenvalue sign unless forced."""
        use_flip = (self.classification == "real-negative") if flipped is None else flipped
        src = self.distance_flipped if use_flip else self.distance_same
        return src[0::2]


def iterate(
    v: SphericalPolygon,
    P0: VertexPolygon,
    steps: int,
    tol: Tolerances = DEFAULT_TOL,
) -> IterationTrace:
    """Run ``steps`` evolute+normalize steps starting from a polygon whose
    sides are parallel to v."""
    M2 = second_evolute_matrix(v, tol)
    report = spectrum(M2, v, tol, strict=False)
    frames = [normalize(P0)]
    failed_at = None
    for k in range(steps):
        Q = p_evolute_vertices(frames[-1], tol)  # AffinelyDegenerate propagates
        if np.abs(Q.verts).max() > tol.iteration_guard:
            raise IterationDiverged(f"coordinates exceeded {tol.iteration_guard:g} at step {k + 1}")
        if k % 2 == 1:
            # completes a second evolute: re-label so sides align with v again
            Q = Q.relabeled(v.m)
        try:
            frames.append(normalize(Q))
        except PointPolygon:
            failed_at = k + 1
            break
    d_same, d_flip = [], []
    for k in range(max(len(frames) - 2, 0)):
        s, f = _frame_distances(frames[k], frames[k + 2])
        d_same.append(s)
        d_flip.append(f)
    return IterationTrace(
        tuple(frames), np.array(d_same), np.array(d_flip), report, failed_at
    )


def empirical_contraction_ratio(trace: IterationTrace, last: int = 20) -> float:
    """Geometric mean ratio of consecutive even-frame distances over the last
    ``last`` recorded steps (the measured analog of the spectral ratio).
    Entries at the floating-point noise floor are ignored."""
    d = trace.even_distances()
    d = d[d > 1e-13]
    if len(d) < 3:
        return 0.0
    d = d[-min(last // 2 + 1, len(d)):]
    ratios = d[1:] / d[:-1]
    return float(np.exp(np.mean(np.log(ratios))))


# ---------------------------------------------------------------------------
# export

def _fmt(x: float) -> str:
    return repr(float(x))


def trace_csv(trace: IterationTrace) -> str:
    lines = ["step,distance_same,distance_flipped"]
    for k in range(len(trace.distance_same)):
        lines.append(f"{k},{_fmt(trace.distance_same[k])},{_fmt(trace.distance_flipped[k])}")
    return "\n".join(lines) + "\n"


def _svg_path(points2d: np.ndarray) -> str:
    coords = " ".join(f"{_fmt(p[0])},{_fmt(p[1])}" for p in points2d)
    return f'<polygon points="{coords}" fill="none" stroke-width="0.008" />'


def trace_svg(trace: IterationTrace, axes: tuple[int, int]) -> str:
    """One orthogonal projection of the trace's frames, viewport [-1.1, 1.1]^2."""
    a, b = axes
    body = []
    nf = max(len(trace.frames) - 1, 1)
    for k, frame in enumerate(trace.frames):
        pts = frame.verts[:, [a, b]]
        shade = int(200 * (1 - k / nf))
        body.append(
            f'<g stroke="rgb({shade},{shade},{shade})">{_svg_path(pts)}</g>'
        )
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'viewBox="-1.1 -1.1 2.2 2.2" width="480" height="480">\n'
        + "\n".join(body)
        + "\n</svg>\n"
    )


def frames_json_obj(trace: IterationTrace) -> dict:
    # frames reuse the vertex-polygon schema so any polygon consumer reads them
    return {
        "type": "iteration_trace",
        "classification": trace.classification,
        "failed_at": trace.failed_at,
        "frames": [
            {"type": "vertex_polygon", "m": f.m, "n": f.n, "verts": f.verts.tolist()}
            for f in trace.frames
        ],
        "distance_same": trace.distance_same.tolist(),
        "distance_flipped": trace.distance_flipped.tolist(),
    }


def export_trace(trace: IterationTrace, out_dir, stem: str = "trace", formats=("csv", "svg", "json")) -> list:
    """Write CSV distances, SVG projections, and JSON frames; returns paths."""
    import json
    import os

    os.makedirs(out_dir, exist_ok=True)
    written = []
    if "csv" in formats:
        p = os.path.join(out_dir, f"{stem}_distances.csv")
        with open(p, "w") as fh:
            fh.write(trace_csv(trace))
        written.append(p)
    if "svg" in formats and trace.frames:
        m = trace.frames[0].m
        planes = [(0, 1)] + ([(0, 2)] if m >= 3 else [])
        for a, b in planes:
            p = os.path.join(out_dir, f"{stem}_proj{a}{b}.svg")
            with open(p, "w") as fh:
                fh.write(trace_svg(trace, (a, b)))
            written.append(p)
    if "json" in formats:
        p = os.path.join(out_dir, f"{stem}_frames.json")
        with open(p, "w") as fh:
            json.dump(frames_json_obj(trace), fh, indent=1, sort_keys=True)
            fh.write("\n")
        written.append(p)
    return written
