#!/usr/bin/env python3
"""Run the acceptance criteria outside pytest and print one verdict per line.

    python3 scripts/run_acceptance.py            # everything (~17 minutes on one core)
    python3 scripts/run_acceptance.py --only 2 3 9
"""

from __future__ import annotations

import argparse
import json
import sys

from embedprob import suites

RUNNERS = {
    1: lambda: suites.counting_certification(),
    2: suites.flag_certification,
    3: suites.a0_identity,
    4: suites.classification,
    5: suites.group_axioms,
    6: suites.solvability_coherence,
    7: suites.realization_soundness,
    8: lambda: (suites.multiplicity_soundness(), suites.multiplicity_soundness(free_rank_reading=True)),
    9: suites.p_binomial_identities,
    10: suites.headline_cross_check,
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    ap.add_argument("--json", metavar="FILE", help="also write the results as JSON")
    args = ap.parse_args()
    chosen = args.only or sorted(RUNNERS)
    dump = []
    for k in chosen:
        out = RUNNERS[k]()
        for res in out if isinstance(out, tuple) else (out,):
            print(res.line(), flush=True)
            for ex in res.examples:
                print("   example:", ex)
            dump.append({"criterion": res.number, "title": res.title, "passed": res.passed, "checked": res.checked,
                         "failures": res.failures, "skipped": res.skipped, "notes": res.notes,
                         "examples": [repr(e) for e in res.examples], "seconds": round(res.seconds, 2)})
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(dump, fh, indent=1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
