#!/usr/bin/env python3
"""Feasibility cross-check for exported matrix-filling integer programs.

Parses the LP text written by the solver's exporter, hands the model to an
independent MILP backend (scipy's HiGHS wrapper), and compares the
feasibility verdict against --expect. Exits 0 on agreement or on a clean
skip (no scipy), 1 on disagreement, 2 on a parse problem.
"""

import argparse
import re
import sys

TERM_RE = re.compile(r"(?:(\d+)\s+)?(x_\d+_\d+)")


def parse_lp(text):
    """Returns (variables, eq_rows, ub_rows) where each row is
    (coeffs_by_var, rhs)."""
    eq_rows = []
    ub_rows = []
    integers = []
    section = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        lowered = line.lower()
        if lowered in ("minimize", "maximize"):
            section = "objective"
            continue
        if lowered == "subject to":
            section = "constraints"
            continue
        if lowered in ("general", "generals", "integer"):
            section = "integers"
            continue
        if lowered == "end":
            break
        if section == "objective":
            continue
        if section == "integers":
            integers.append(line)
            continue
        if section != "constraints":
            raise ValueError("line outside any known section: " + raw)
        body = line.split(":", 1)
        if len(body) != 2:
            raise ValueError("constraint without a label: " + raw)
        expr = body[1]
        if "<=" in expr:
            lhs, rhs = expr.split("<=")
            target = ub_rows
        elif "=" in expr:
            lhs, rhs = expr.split("=")
            target = eq_rows
        else:
            raise ValueError("constraint without a relation: " + raw)
        coeffs = {}
        for coef, var in TERM_RE.findall(lhs):
            coeffs[var] = coeffs.get(var, 0) + (int(coef) if coef else 1)
        target.append((coeffs, int(rhs.strip())))
    if not integers:
        raise ValueError("no integer variables declared")
    return integers, eq_rows, ub_rows


def check_model(path, expect, np, LinearConstraint, milp):
    """Returns "ok", "skip", or "mismatch"; raises ValueError on bad input."""
    with open(path, "r", encoding="utf-8") as handle:
        variables, eq_rows, ub_rows = parse_lp(handle.read())

    index = {name: i for i, name in enumerate(variables)}
    n = len(variables)

    def matrix(rows):
        a = np.zeros((len(rows), n))
        b = np.zeros(len(rows))
        for r, (coeffs, rhs) in enumerate(rows):
            for name, coef in coeffs.items():
                if name not in index:
                    raise ValueError("constraint uses undeclared " + name)
            for name, coef in coeffs.items():
                a[r, index[name]] = coef
            b[r] = rhs
        return a, b

    constraints = []
    if eq_rows:
        a, b = matrix(eq_rows)
        constraints.append(LinearConstraint(a, b, b))
    if ub_rows:
        a, b = matrix(ub_rows)
        constraints.append(LinearConstraint(a, -np.inf, b))

    result = milp(c=np.zeros(n), constraints=constraints,
                  integrality=np.ones(n))
    if result.status == 0:
        verdict = "yes"
    elif result.status == 2:
        verdict = "no"
    else:
        print(f"{path}: skip (backend status {result.status})")
        return "skip"

    if verdict != expect:
        print(f"{path}: mismatch, model is {verdict} but expected {expect}",
              file=sys.stderr)
        return "mismatch"
    print(f"{path}: {'feasible' if verdict == 'yes' else 'infeasible'}")
    return "ok"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("model", nargs="?",
                        help="LP file written by the exporter")
    parser.add_argument("--expect", choices=["yes", "no"],
                        help="expected feasibility of the model")
    parser.add_argument("--manifest",
                        help="file of \"yes|no <model-path>\" lines to check "
                             "in one process")
    args = parser.parse_args()
    if (args.model is None) == (args.manifest is None):
        parser.error("pass either a model with --expect or --manifest")
    if args.model is not None and args.expect is None:
        parser.error("--expect is required with a single model")

    try:
        import numpy as np
        from scipy.optimize import LinearConstraint, milp
    except ImportError as exc:
        print(f"skip: MILP backend unavailable ({exc})")
        return 0

    jobs = []
    if args.model is not None:
        jobs.append((args.model, args.expect))
    else:
        try:
            with open(args.manifest, "r", encoding="utf-8") as handle:
                for line_no, raw in enumerate(handle, 1):
                    line = raw.strip()
                    if not line or line.startswith("#"):
                        continue
                    parts = line.split(maxsplit=1)
                    if len(parts) != 2 or parts[0] not in ("yes", "no"):
                        print(f"{args.manifest}:{line_no}: bad manifest line",
                              file=sys.stderr)
                        return 2
                    jobs.append((parts[1], parts[0]))
        except OSError as exc:
            print(f"cannot read manifest: {exc}", file=sys.stderr)
            return 2

    mismatches = 0
    for path, expect in jobs:
        try:
            outcome = check_model(path, expect, np, LinearConstraint, milp)
        except (OSError, ValueError) as exc:
            print(f"{path}: parse error: {exc}", file=sys.stderr)
            return 2
        if outcome == "mismatch":
            mismatches += 1
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
