"""evolab command line: instance generation, evolutes, spectra, iteration
traces, hypocycloids, and the verification suites.

Exit codes: 0 success, 1 verification/compute failure, 2 usage or parse error.
Output directory: --out, else $EVOLAB_OUT, else the working directory.
Any tolerance can be overridden with ``--tol.<name> <value>``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import io as eio
from .config import DEFAULT_TOL, Tolerances
from .errors import EvolabError, InvalidParameter
from .geometry import (
    SphericalPolygon,
    random_side_vector,
    random_spherical_polygon,
    realize,
)
from .evolute import evolute_matrix, p_evolute_vertices
from .iteration import export_trace, iterate
from .pairing import second_evolute_matrix, spectrum
from .verify import SUITES, run_all, run_suite

__all__ = ["main"]


def _extract_tol_overrides(argv: list[str]) -> tuple[list[str], dict]:
    """Pull ``--tol.name value`` pairs out of argv before argparse sees them."""
    rest, overrides = [], {}
    i = 0
    while i < len(argv):
        a = argv[i]
        if a.startswith("--tol."):
            name = a[len("--tol."):]
            if "=" in name:
                name, val = name.split("=", 1)
            else:
                i += 1
                if i >= len(argv):
                    raise SystemExit(2)
                val = argv[i]
            overrides[name] = float(val)
        else:
            rest.append(a)
        i += 1
    return rest, overrides


def _out_dir(args) -> str:
    out = args.out or os.environ.get("EVOLAB_OUT") or "."
    os.makedirs(out, exist_ok=True)
    return out


def _formats(args) -> tuple[str, ...]:
    from .config import FORMATS

    raw = getattr(args, "format", None)
    if not raw:
        return FORMATS
    chosen = tuple(f.strip() for f in raw.split(",") if f.strip())
    bad = [f for f in chosen if f not in FORMATS]
    if bad:
        raise ValueError(f"unknown format(s) {bad}; pick from {FORMATS}")
    return chosen


def _write(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)
    print(path)


def _gen_polygon(args, tol) -> SphericalPolygon:
    if getattr(args, "input", None):
        poly = eio.load_polygon(args.input)
        if not isinstance(poly, SphericalPolygon):
            raise EvolabError("input file does not hold a spherical polygon")
        return poly
    if args.m is None or args.n is None:
        raise SystemExit("need --input or both --m and --n")
    return random_spherical_polygon(args.m, args.n, np.random.default_rng(args.seed))


def cmd_evolute(args, tol: Tolerances) -> int:
    out = _out_dir(args)
    if args.input:
        data = json.load(open(args.input))
        if data.get("type") == "vertex_polygon":
            P = eio.vertex_from_json(data)
        else:
            v = eio.spherical_from_json(data)
            P = realize(v, random_side_vector(v, np.random.default_rng(args.seed)), tol=tol)
    else:
        v = _gen_polygon(args, tol)
        P = realize(v, random_side_vector(v, np.random.default_rng(args.seed)), tol=tol)
        _write(os.path.join(out, "directions.json"), eio.dumps(v))
        M = evolute_matrix(v, tol)
        _write(os.path.join(out, "evolute_matrix.json"), eio.dumps(M))
    Q = p_evolute_vertices(P, tol)
    _write(os.path.join(out, "polygon.json"), eio.dumps(P))
    _write(os.path.join(out, "evolute.json"), eio.dumps(Q))
    return 0


def cmd_spectrum(args, tol: Tolerances) -> int:
    out = _out_dir(args)
    rows = []
    paired = 0
    for i in range(args.trials):
        v = random_spherical_polygon(args.m, args.n, np.random.default_rng((args.seed, i)))
        M2 = second_evolute_matrix(v, tol)
        rep = spectrum(M2, v, tol, strict=False)
        rows.append((i, rep))
        if not rep.residual_unpaired:
            paired += 1
    _write(os.path.join(out, f"spectrum_m{args.m}_n{args.n}.csv"), eio.spectrum_csv(rows))
    summary = {
        "m": args.m,
        "n": args.n,
        "seed": args.seed,
        "trials": args.trials,
        "pairing_success_rate": paired / max(args.trials, 1),
        "reports": [eio.to_jsonable(rep) for _, rep in rows],
    }
    _write(os.path.join(out, f"spectrum_m{args.m}_n{args.n}.json"), eio.dumps(summary))
    return 0


def cmd_iterate(args, tol: Tolerances) -> int:
    out = _out_dir(args)
    v = _gen_polygon(args, tol)
    rng = np.random.default_rng((args.seed, 1))
    P0 = realize(v, random_side_vector(v, rng), tol=tol)
    trace = iterate(v, P0, args.steps, tol)
    stem = f"iterate_m{v.m}_n{v.n}_s{args.seed}"
    for p in export_trace(trace, out, stem=stem, formats=_formats(args)):
        print(p)
    return 0


def cmd_hypocycloid(args, tol: Tolerances) -> int:
    from .curves import hypocycloid

    out = _out_dir(args)
    formats = _formats(args)
    curve = hypocycloid(args.r, args.k, samples=args.samples, tol=tol)
    ktag = args.k.replace("/", "over") if isinstance(args.k, str) else args.k
    stem = os.path.join(out, f"hypocycloid_r{args.r}_k{ktag}")
    if "csv" in formats:
        _write(stem + ".csv", eio.curve_csv(curve))
    if "obj" in formats:
        _write(stem + ".obj", eio.curve_obj(curve))
    if "json" in formats:
        _write(stem + ".json", eio.dumps(eio.curve_json_obj(curve)))
    if "svg" in formats:
        _write(stem + "_xy.svg", eio.curve_svg(curve, (0, 1)))
        _write(stem + "_xz.svg", eio.curve_svg(curve, (0, 2)))
    print(f"cusps: {len(curve.cusp_alphas)}")
    return 0


def cmd_verify(args, tol: Tolerances) -> int:
    if args.suite == "all":
        results = run_all(trials=args.trials, seed=args.seed, tol=tol)
    elif args.suite == "spectrum" and args.m is not None and args.n is not None:
        from .verify import verify_spectrum_doubling

        results = verify_spectrum_doubling(
            trials=args.trials, seed=args.seed, tol=tol, configs=[(args.m, args.n)]
        )
    else:
        try:
            results = run_suite(args.suite, trials=args.trials, seed=args.seed, tol=tol)
        except KeyError:
            print(f"unknown suite: {args.suite}; choose from {', '.join(SUITES)} or all", file=sys.stderr)
            return 2
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="evolab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, steps=False, trials=False):
        p.add_argument("--m", type=int, default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--format", dest="format", default=None, help="comma-separated subset of csv,json,svg,obj")
        if steps:
            p.add_argument("--steps", type=int, default=40)
        if trials:
            p.add_argument("--trials", type=int, default=100)

    p = sub.add_parser("evolute", help="evolute polygon + evolute matrix of an instance")
    p.add_argument("--input", default=None, help="JSON polygon file (spherical or vertex)")
    common(p)
    p.set_defaults(fn=cmd_evolute)

    p = sub.add_parser("spectrum", help="second-evolute spectra over an ensemble")
    common(p, trials=True)
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("iterate", help="normalized evolute iteration trace")
    p.add_argument("--input", default=None)
    common(p, steps=True)
    p.set_defaults(fn=cmd_iterate)

    p = sub.add_parser("hypocycloid", help="spacial hypocycloid data files")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--k", required=True, help="ratio > 1, e.g. 3 or 5/2")
    p.add_argument("--samples", type=int, default=2048)
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", dest="format", default=None, help="comma-separated subset of csv,json,svg,obj")
    p.set_defaults(fn=cmd_hypocycloid)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", help=f"one of: {', '.join(SUITES)}, all")
    common(p, trials=True)
    p.set_defaults(fn=cmd_verify)

    return ap


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv, overrides = _extract_tol_overrides(argv)
        tol = DEFAULT_TOL.replace(**overrides) if overrides else DEFAULT_TOL
    except (ValueError, TypeError) as exc:
        print(f"bad tolerance override: {exc}", file=sys.stderr)
        return 2
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args, tol)
    except (json.JSONDecodeError, FileNotFoundError, ValueError, InvalidParameter) as exc:
        print(f"evolab: parse error: {exc}", file=sys.stderr)
        return 2
    except EvolabError as exc:
        print(f"evolab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
