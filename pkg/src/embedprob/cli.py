"""Command-line front end.

Tables go to stdout as CSV, single results as one line of JSON. ``--human``
switches tables to aligned columns. Exit status: 0 on success, 1 on a
validation error, 2 when a verification finds a mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from typing import Sequence

from .counting import (
    AmbientProfile,
    auto_realize,
    count_in_ambient,
    count_in_env,
    multiplicity_bound,
    solvable,
)
from .environment import INF, EnvironmentSpec, build_env, parse_env
from .extensions import ExtensionGroup, ExtensionSpec, canonicalize, iso_types
from .oracle import DEFAULT_BUDGET, case_label, desk_cases, enum_solutions, verify_counts
from .shapes import CapExceeded, PrimePower, ValidationError, iter_shapes, parse_shape, render_shape, valid_mus

MISMATCH = 2
INVALID = 1


class Mismatch(Exception):
    pass


def _fmt(x) -> str:
    return "inf" if x is INF else str(x)


def _jsonable(x):
    return "inf" if x is INF else x


class Output:
    def __init__(self, human: bool):
        self.human = human
        self.buf = io.StringIO()

    def table(self, header: Sequence[str], rows: Sequence[Sequence]):
        rows = [[_fmt(c) for c in r] for r in rows]
        if self.human:
            widths = [max(len(str(h)), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
            self.buf.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
            for r in rows:
                self.buf.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
            return
        w = csv.writer(self.buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)

    def line(self, text: str):
        self.buf.write(text + "\n")

    def record(self, obj: dict):
        self.buf.write(json.dumps({k: _jsonable(v) for k, v in obj.items()}, sort_keys=True) + "\n")


# -- argument helpers ------------------------------------------------------------------


def _pp(args) -> PrimePower:
    if args.p is None or args.n is None:
        raise ValidationError("--p and --n are required for this command")
    return PrimePower(args.p, args.n)


def _env(args) -> EnvironmentSpec:
    if not args.env:
        raise ValidationError("--env FILE is required for this command")
    try:
        with open(args.env, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read environment file: {exc}") from None
    return parse_env(text)


def _shape(text: str | None, pp: PrimePower, flag: str):
    if text is None:
        raise ValidationError(f"{flag} is required for this command")
    return parse_shape(text, pp)


def _int(value, flag: str) -> int:
    if value is None:
        raise ValidationError(f"{flag} is required for this command")
    return value


def _vector(text: str | None, length: int) -> tuple:
    if text is None:
        return (0,) * length
    parts = [t for t in "".join(text.split()).split(",") if t]
    try:
        vals = tuple(int(t) for t in parts)
    except ValueError:
        raise ValidationError(f"--c must be a comma list of integers, got {text!r}") from None
    if len(vals) != length:
        raise ValidationError(f"--c has {len(vals)} entries, the shape has rank {length}")
    return vals


def _certify(env, M, mu, value):
    """Cross-check a count against the oracle; raises Mismatch on disagreement."""
    if value is INF:
        return "uncertified"
    if not env.spec.is_finite:
        return "uncertified"
    enumerated = len(enum_solutions(env, env.whole(), M, mu, budget=DEFAULT_BUDGET))
    if enumerated != value:
        raise Mismatch(f"closed form {value} but the oracle found {enumerated}")
    return "certified"


# -- verbs ---------------------------------------------------------------------------


def cmd_classify(args, out: Output):
    pp = _pp(args)
    shape = _shape(args.shape, pp, "--shape")
    rows = [[t.label(), t.lam, ExtensionGroup(t.to_spec()).order if t.to_spec().order <= 2**20 else ""] for t in iso_types(shape, pp)]
    out.table(["type", "lambda", "order"], rows)


def cmd_group(args, out: Output):
    pp = _pp(args)
    shape = _shape(args.shape, pp, "--shape")
    spec = ExtensionSpec(pp, shape, _vector(args.c, shape.rank))
    if args.canonical:
        t = canonicalize(spec)
        out.record({"shape": render_shape(shape), "type": t.label(), "lambda": t.lam})
        return
    G = ExtensionGroup(spec)
    if args.census:
        out.table(["order", "count"], sorted(G.census().items()))
        return
    out.record({"shape": render_shape(shape), "c": list(spec.c), "order": G.order, "type": canonicalize(spec).label()})


def cmd_count(args, out: Output):
    spec = _env(args)
    env = build_env(spec)
    M = _shape(args.module, spec.pp, "--module")
    mu = _int(args.mu, "--mu")
    value = count_in_env(env, M, mu)
    rec = {"module": render_shape(M), "mu": mu, "count": value}
    if args.certify:
        rec["oracle"] = _certify(env, M, mu, value)
    out.record(rec)


def cmd_solve(args, out: Output):
    spec = _env(args)
    M = _shape(args.module, spec.pp, "--module")
    mu = _int(args.mu, "--mu")
    out.record({"module": render_shape(M), "mu": mu, "solvable": solvable(spec, M, mu)})


def cmd_enumerate(args, out: Output):
    spec = _env(args)
    env = build_env(spec)
    M = _shape(args.module, spec.pp, "--module")
    mu = _int(args.mu, "--mu")
    sols = enum_solutions(env, env.whole(), M, mu)
    out.table(["index", "basis"], [[i, json.dumps([list(r) for r in U.basis])] for i, U in enumerate(sols)])


def cmd_realize(args, out: Output):
    pp = _pp(args)
    S = _shape(args.shape, pp, "--shape")
    lam = _int(args.lam, "--lambda")
    t = auto_realize(S, lam, pp)
    out.record({"shape": render_shape(S), "lambda": lam, "realized_shape": render_shape(t.shape), "realized_lambda": t.lam})


def cmd_bound(args, out: Output):
    pp = _pp(args)
    S = _shape(args.shape, pp, "--shape")
    lam = _int(args.lam, "--lambda")
    k = _int(args.k, "--k")
    out.record({"shape": render_shape(S), "lambda": lam, "k": k, "bound": multiplicity_bound(S, lam, k, pp)})


def _parse_sweep(text: str | None) -> int:
    """``dim<=D`` or a bare integer D: every module shape up to dimension D."""
    if text is None:
        return 6
    t = "".join(text.split())
    if t.startswith("dim<="):
        t = t[5:]
    if not t.isdigit():
        raise ValidationError(f"--sweep must look like 'dim<=6', got {text!r}")
    return int(t)


def cmd_table(args, out: Output):
    spec = _env(args)
    env = build_env(spec)
    rows = []
    for M in iter_shapes(spec.pp.order, _parse_sweep(args.sweep)):
        for mu in valid_mus(M, spec.pp):
            value = count_in_env(env, M, mu)
            if args.certify:
                _certify(env, M, mu, value)
            rows.append([render_shape(M), mu, str(solvable(spec, M, mu)).lower(), value])
    out.table(["module", "mu", "solvable", "count"], rows)


def cmd_verify(args, out: Output):
    if args.suite != "desk":
        raise ValidationError(f"unknown suite {args.suite!r}; only 'desk' is available")
    rng = random.Random(args.seed)
    cases = list(desk_cases())
    if args.sample:
        cases = rng.sample(cases, min(args.sample, len(cases)))
    envs: dict = {}
    rows, mismatches, uncertified = [], 0, 0
    for spec, M, mu in cases:
        env = envs.setdefault(spec, build_env(spec))
        cf = count_in_ambient(AmbientProfile.of(env, env.whole()), M, mu, spec.pp)
        try:
            rep = verify_counts(env, env.whole(), M, mu, closed_form=cf, budget=args.budget)
            status, enumerated = rep.status, rep.enumerated
        except CapExceeded:
            status, enumerated = "uncertified", ""
        mismatches += status == "mismatch"
        uncertified += status == "uncertified"
        rows.append([case_label(spec, M, mu), cf, enumerated, status])
    out.table(["case", "closed_form", "enumerated", "status"], rows)
    out.line(f"cases,{len(rows)},mismatches,{mismatches}")
    out.line(f"uncertified,{uncertified}")
    if mismatches:
        raise Mismatch(f"{mismatches} mismatching cases")


COMMANDS = {
    "classify": cmd_classify,
    "group": cmd_group,
    "count": cmd_count,
    "solve": cmd_solve,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "realize": cmd_realize,
    "bound": cmd_bound,
    "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="embedprob", description="Embedding problems with elementary p-abelian kernel over Z/p^n.")
    ap.add_argument("verb", choices=sorted(COMMANDS))
    ap.add_argument("--p", type=int)
    ap.add_argument("--n", type=int)
    ap.add_argument("--env", metavar="FILE")
    ap.add_argument("--shape")
    ap.add_argument("--module")
    ap.add_argument("--mu", type=int)
    ap.add_argument("--lambda", dest="lam", type=int)
    ap.add_argument("--c")
    ap.add_argument("--k", type=int)
    ap.add_argument("--certify", action="store_true")
    ap.add_argument("--human", action="store_true")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--census", action="store_true")
    ap.add_argument("--canonical", action="store_true")
    ap.add_argument("--suite", default="desk")
    ap.add_argument("--sweep")
    ap.add_argument("--sample", type=int, default=0, help="verify: check a seeded random subset of this size")
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="verify: search-node cap per case")
    return ap


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else 0
    out = Output(args.human)
    code = 0
    try:
        COMMANDS[args.verb](args, out)
    except Mismatch as exc:
        stderr.write(f"mismatch: {exc}\n")
        code = MISMATCH
    except (ValidationError, ArithmeticError) as exc:
        stderr.write(f"error: {exc}\n")
        code = INVALID
    stdout.write(out.buf.getvalue())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
