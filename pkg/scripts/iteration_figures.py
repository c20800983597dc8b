#!/usr/bin/env python3
"""Reproduce the heptagon iteration figures: even/odd evolute sequences for a
configuration with positive dominant eigenvalue, and the flipping sequence for
a negative one.  Writes CSV distance columns and SVG projections per case."""
import argparse
import os

import numpy as np

from evolab.geometry import random_side_vector, realize
from evolab.iteration import export_trace, iterate
from evolab.verify import find_iteration_seed


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=os.environ.get("EVOLAB_OUT", "figures"))
    ap.add_argument("--steps", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for label, want_negative in (("positive", False), ("negative", True)):
        v, rep, idx = find_iteration_seed(3, 7, seed=args.seed, want_negative=want_negative)
        rng = np.random.default_rng((args.seed, 99, idx))
        P0 = realize(v, random_side_vector(v, rng))
        trace = iterate(v, P0, args.steps)
        paths = export_trace(trace, args.out, stem=f"hepta_{label}")
        print(f"{label}: dominant {rep.dominant:.4f} ({rep.dominant_class}), "
              f"ratio {rep.modulus_ratio():.3f}, scan index {idx}")
        for p in paths:
            print(" ", p)


if __name__ == "__main__":
    main()
