#!/usr/bin/env python3
"""Element-order census of every canonical extension type up to a given order.

Each line is CSV: p, n, shape, type, group order, then the census as
order:count pairs. Types of one shape always have distinct censuses or are
separated by the isomorphism search (see the classification criterion).
"""

from __future__ import annotations

import argparse
import csv
import sys

from embedprob.extensions import ExtensionGroup, iso_types
from embedprob.shapes import render_shape
from embedprob.suites import small_shapes


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=512)
    args = ap.parse_args()
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["p", "n", "shape", "type", "order", "census"])
    for pp, shape in small_shapes(args.max_order):
        for t in iso_types(shape, pp):
            G = ExtensionGroup(t.to_spec())
            census = " ".join(f"{k}:{v}" for k, v in G.census().items())
            w.writerow([pp.p, pp.n, render_shape(shape), t.label(), G.order, census])
    return 0


if __name__ == "__main__":
    sys.exit(main())
