#!/usr/bin/env python3
"""Tabulate the closed-form counts over the desk matrix.

One CSV row per (environment, M, mu): solvability, the derived count, and for
split problems the literal headline product next to it. Optionally certifies
rows whose count is at most --certify-limit with the brute-force oracle.
"""

from __future__ import annotations

import argparse
import csv
import sys

from embedprob.counting import AmbientProfile, count_in_ambient, headline_count, solvable
from embedprob.environment import build_env
from embedprob.oracle import desk_cases, enum_solutions
from embedprob.shapes import render_shape


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="-", help="CSV path (default stdout)")
    ap.add_argument("--max-module-dim", type=int, default=6)
    ap.add_argument("--certify-limit", type=int, default=0)
    args = ap.parse_args()
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="", encoding="utf-8")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["p", "n", "i_kf", "d", "module", "mu", "solvable", "count", "headline", "oracle"])
    envs: dict = {}
    for spec, M, mu in desk_cases(max_module_dim=args.max_module_dim):
        env = envs.setdefault(spec, build_env(spec))
        cf = count_in_ambient(AmbientProfile.of(env, env.whole()), M, mu, spec.pp)
        head = headline_count(spec, M) if (spec.strict and mu == spec.pp.order) else ""
        sol = solvable(spec, M, mu) if spec.strict else ""
        oracle = ""
        if cf <= args.certify_limit:
            oracle = len(enum_solutions(env, env.whole(), M, mu, budget=None))
        ikf = "-inf" if spec.i_kf is None else spec.i_kf
        w.writerow([spec.pp.p, spec.pp.n, ikf, "/".join(map(str, spec.d)), render_shape(M), mu, sol, cf, head, oracle])
    if fh is not sys.stdout:
        fh.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
