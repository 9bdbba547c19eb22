"""Command-line front end.

JSON in, JSON out. Complex numbers travel as [re, im] pairs. Exit codes:
0 ok, 1 verification failed, 2 precondition violated, 3 numerical failure,
64 usage or schema error.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from . import approx, harmonics
from .errors import (BorderlineError, CircleSumError, InvalidInputError, InvalidParameterError,
                     NotFoundError, RepresentTooSmallError, RootFindingError)
from .oracle import monic_coeffs_from_points, newton_power_sums
from .representation import (BoundParams, best_tail_bound, bounded_hypothesis, head_tol,
                             represent, tail_residual)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_PRECONDITION = 2
EXIT_NUMERICAL = 3
EXIT_USAGE = 64

TAIL_SPAN = 20
UNIT_TOL = 1e-12
DISTINCT_TOL = 1e-9


class UsageError(Exception):
    pass


class PreconditionError(Exception):
    pass


def max_n() -> int:
    return int(os.environ.get("CIRCLESUM_MAX_N", "200"))


def check_n(n: int):
    if n > max_n():
        raise PreconditionError(f"n={n} exceeds CIRCLESUM_MAX_N={max_n()}")


# -- (de)serialization --------------------------------------------------------

def cpair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def cpairs(values) -> list:
    return [cpair(z) for z in np.asarray(values).ravel()]


def parse_complex(x) -> complex:
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(isinstance(v, (int, float)) for v in x):
        return complex(x[0], x[1])
    raise UsageError(f"expected a number or [re, im] pair, got {x!r}")


def parse_complex_list(doc, key) -> np.ndarray:
    if key not in doc:
        raise UsageError(f"missing field {key!r}")
    values = doc[key]
    if not isinstance(values, list) or not values:
        raise UsageError(f"field {key!r} must be a non-empty list")
    return np.array([parse_complex(v) for v in values])


def parse_int(doc, key, default=None) -> int:
    v = doc.get(key, default)
    if isinstance(v, bool) or not isinstance(v, int):
        raise UsageError(f"field {key!r} must be an integer")
    return v


def parse_int_list(doc, key) -> list:
    v = doc.get(key)
    if isinstance(v, int) and not isinstance(v, bool):
        return [v]
    if isinstance(v, list) and v and all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        return v
    raise UsageError(f"field {key!r} must be an integer or a list of integers")


def read_json(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise UsageError(f"{path}: top level must be an object")
    return doc


def write_json(doc, path=None):
    text = json.dumps(doc, indent=1, allow_nan=False)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(x)) for x in row])


# -- commands -------------------------------------------------------------------

def tail_report(rep, span=TAIL_SPAN):
    """|S_{j+1} - a_j| against the best available bound for j = n..n+span."""
    certified = bounded_hypothesis(rep.a)
    which = "thm12" if certified else "thm11"
    rows = []
    for j in range(rep.n, rep.n + span + 1):
        value = abs(tail_residual(rep, j))
        bound, params = best_tail_bound(rep.n, j, which)
        rows.append({"j": j, "value": value, "bound": bound, "r_opt": params["r"],
                     **({"eps_opt": params["eps"]} if "eps" in params else {}),
                     "satisfied": bool(value <= bound)})
    return which, certified, rows


def cmd_represent(doc: dict) -> dict:
    a = parse_complex_list(doc, "a")
    n = parse_int(doc, "n")
    if n < 1:
        raise UsageError("n must be >= 1")
    check_n(n)
    rep = represent(a, n, n0_search=max_n())
    form, certified, rows = tail_report(rep, int(doc.get("tail_span", TAIL_SPAN)))
    return {
        "command": "represent",
        "n": rep.n,
        "N": rep.N,
        "a": cpairs(a),
        "n0": rep.n0_used,
        "lambdas": cpairs(rep.lambdas),
        "phases": [float(t) for t in rep.phases],
        "residual_head": rep.residual_head,
        "tail_bound_form": form,
        "tail_bounds_certified": certified,
        "tail_bounds": rows,
    }


def _nu_list(nu_arg, n):
    if nu_arg == "all":
        return list(range(1, n + 1))
    try:
        nu = int(nu_arg)
    except ValueError:
        raise UsageError(f"--nu must be an integer or 'all', got {nu_arg!r}") from None
    if not 1 <= nu <= n:
        raise UsageError(f"--nu must lie in 1..{n}")
    return [nu]


def read_signal(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    try:
        return harmonics.parse_signal(text)
    except InvalidInputError as exc:
        raise UsageError(str(exc)) from None


def _require_degree(T):
    if T.n < 2:
        raise PreconditionError("harmonic extraction needs n >= 2 (n = 1 is excluded)")
    check_n(T.n)


def cmd_harmonics(T, nu_arg, grid=720, csv_path=None) -> dict:
    _require_degree(T)
    nus = _nu_list(nu_arg, T.n)
    if grid < 1:
        raise UsageError("--grid must be positive")
    t = 2 * math.pi * np.arange(grid) / grid
    results = []
    columns = [("t", t), ("T", T(t))]
    for nu in nus:
        op = harmonics.extraction_phases(T.n, nu)
        theta = harmonics.extract_harmonic(T, op, t)
        tau = T.harmonic(nu, t)
        a_nu, b_nu = harmonics.fourier_coeffs(T, nu)
        results.append({
            "nu": nu,
            "n": T.n,
            "phases": [float(x) for x in op.t],
            "lambdas": cpairs(op.lambdas),
            "targets": cpairs(op.targets),
            "residual": op.residual,
            "a_nu": a_nu,
            "b_nu": b_nu,
            "max_extraction_error": float(np.max(np.abs(theta - tau))),
            "extract_tol": 1e-8 * op.N * (1 + T.magnitude()),
            "samples": {"theta": [float(x) for x in theta]},
        })
        suffix = "" if len(nus) == 1 else f"_{nu}"
        columns += [(f"tau_nu{suffix}", tau), (f"Theta{suffix}", theta)]
    if csv_path:
        write_csv(csv_path, [c[0] for c in columns], zip(*[c[1] for c in columns]))
    return {
        "command": "harmonics",
        "n": T.n,
        "signal": {"a": [float(x) for x in T.a], "b": [float(x) for x in T.b]},
        "grid": [float(x) for x in t],
        "certificates": results,
    }


def cmd_fourier(T, nu_arg) -> dict:
    _require_degree(T)
    rows = []
    for nu in _nu_list(nu_arg, T.n):
        a_nu, b_nu = harmonics.fourier_coeffs(T, nu)
        rows.append({"nu": nu, "a": a_nu, "b": b_nu,
                     "error": max(abs(a_nu - T.a[nu - 1]), abs(b_nu - T.b[nu - 1]))})
    return {"command": "fourier", "n": T.n, "coefficients": rows}


def _parse_hseries(spec) -> approx.HSeries:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise UsageError("field 'h' must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "geometric":
        return approx.HSeries.geometric()
    if kind == "exponential":
        return approx.HSeries.exponential()
    if kind == "coeffs":
        h = parse_complex_list(spec, "coeffs")
        M = spec.get("M")
        return approx.HSeries.from_coeffs(h, None if M is None else float(M))
    raise UsageError(f"unknown h kind {kind!r}")


def cmd_approx(mode: str, doc: dict, csv_path=None) -> dict:
    ns = parse_int_list(doc, "n")
    for n in ns:
        if n < 1:
            raise UsageError("n must be >= 1")
        check_n(n)
    grid = parse_int(doc, "grid", approx.GRID_ANGLES)
    rows = []
    if mode == "spf":
        f = parse_complex_list(doc, "f")
        radii = [float(r) for r in doc.get("radii", [0.2, 0.5, 0.8])]
        if any(not 0 < r < 1 for r in radii):
            raise UsageError("radii must lie in (0, 1)")
        bounded = bounded_hypothesis(f)
        for n in ns:
            order = approx.spf_interpolation_order(f, n)
            for R in radii:
                eps = float(doc.get("eps", (1 - R) / 2))
                row = {"n": n, "radius": R, "sup_error": approx.sup_error_spf(f, n, R, grid),
                       "interpolation_order": order, "bound_general": None}
                if 0 < eps < 1 - R:
                    p = BoundParams(r=R + eps, eps=eps, a_radius=R)
                    row["bound_general"] = approx.spf_error_bound(f, n, p, form="general")
                if bounded:
                    row["bound"] = approx.spf_error_bound(f, n, form="bounded", abs_z=R)
                rows.append(row)
    elif mode == "exp":
        p = parse_complex_list(doc, "p")
        if not bounded_hypothesis(p):
            raise PreconditionError("exp mode needs |p_j| <= (j+2)^-2")
        radii = [float(x) for x in doc.get("radii", [0.5, 1.0, 2.0, 3.0])]
        r = float(doc.get("r", 0.9))
        for n in ns:
            rep = represent(p, n, n0_search=max_n())
            for R in radii:
                z = approx.circle_grid(R, grid)
                err = np.abs(approx.exp_sum_eval(rep.lambdas, z) - approx.entire_series_eval(p, z))
                rows.append({"n": n, "radius": R, "sup_error": float(np.max(err)),
                             "bound": approx.exp_sum_bound(n, R, r)})
    elif mode == "hsum":
        h = _parse_hseries(doc.get("h"))
        f = parse_complex_list(doc, "f")
        first_kind = bool(doc.get("first_kind", False))
        radii = [float(x) for x in doc.get("radii", [0.2, 0.4, 0.6])]
        if any(not 0 < R < 1 for R in radii):
            raise UsageError("radii must lie in (0, 1)")
        for n in ns:
            build = approx.h1_sum_build if first_kind else approx.h_sum_build
            evaluate = approx.h1_sum_eval if first_kind else approx.h_sum_eval
            bound = approx.h1_sum_bound if first_kind else approx.h_sum_bound
            rep = build(f, h, n)
            for R in radii:
                z = approx.circle_grid(R, grid)
                vals, _ = evaluate(h, rep.lambdas, z)
                err = np.abs(vals - approx.eval_poly(f, z))
                rows.append({"n": n, "radius": R, "sup_error": float(np.max(err)),
                             "bound": bound(n, R, h.M)})
    else:
        raise UsageError(f"unknown mode {mode!r}")
    for row in rows:
        if row.get("bound") is not None:
            row["satisfied"] = bool(row["sup_error"] <= row["bound"])
    if csv_path:
        write_csv(csv_path, ["n", "radius", "sup_error", "bound"],
                  [(r["n"], r["radius"], r["sup_error"],
                    r["bound"] if r.get("bound") is not None else math.nan) for r in rows])
    return {"command": "approx", "mode": mode, "rows": rows}


def _certificates(doc):
    if "certificates" in doc:
        certs = doc["certificates"]
        if not isinstance(certs, list):
            raise UsageError("'certificates' must be a list")
        return [(f"nu={c.get('nu', i)}", c) for i, c in enumerate(certs)]
    if "lambdas" in doc and "a" in doc:
        return [("represent", {"n": doc.get("n"), "targets": doc["a"], "lambdas": doc["lambdas"]})]
    raise UsageError("document carries no certificate")


def verify_certificate(n, targets, lambdas) -> dict:
    """Re-check S_{j+1}(lambda) = a_j, j < n, through Newton's identities."""
    N = 2 * n + 1
    problems = []
    if lambdas.size != N:
        problems.append(f"expected {N} points, found {lambdas.size}")
    off_circle = np.nonzero(np.abs(np.abs(lambdas) - 1) > UNIT_TOL)[0]
    if off_circle.size:
        problems.append(f"points off the unit circle: {off_circle.tolist()}")
    d = np.abs(np.subtract.outer(lambdas, lambdas)) + np.eye(lambdas.size) * 10
    if lambdas.size > 1 and d.min() <= DISTINCT_TOL:
        problems.append("points are not pairwise distinct")
    t = np.zeros(n, dtype=np.complex128)
    k = min(n, targets.size)
    t[:k] = targets[:k]
    S = newton_power_sums(monic_coeffs_from_points(lambdas), n)
    disc = np.abs(S - t)
    tol = head_tol(t, N)
    bad = np.nonzero(disc > tol)[0]
    return {"n": n, "max_discrepancy": float(disc.max()), "tol": tol,
            "offending_j": bad.tolist(),
            "first_violation_j": int(bad[0]) if bad.size else None,
            "problems": problems,
            "ok": not problems and not bad.size}


def cmd_verify(doc: dict) -> dict:
    checks = []
    for label, cert in _certificates(doc):
        try:
            lambdas = np.array([parse_complex(v) for v in cert["lambdas"]])
            targets = np.array([parse_complex(v) for v in cert["targets"]])
            n = cert.get("n")
            if not isinstance(n, int) or n < 1:
                raise UsageError(f"{label}: certificate needs a positive integer n")
        except KeyError as exc:
            raise UsageError(f"{label}: missing field {exc}") from None
        result = verify_certificate(n, targets, lambdas)
        result["label"] = label
        checks.append(result)
    return {"command": "verify", "ok": all(c["ok"] for c in checks), "checks": checks}


def cmd_generate(kind, n, seed) -> str | dict:
    rng = np.random.default_rng(seed)
    if kind == "represent":
        j = np.arange(n)
        a = (j + 2.0) ** -2 * rng.uniform(0, 1, n) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
        return {"a": cpairs(a), "n": n}
    a = rng.uniform(-1, 1, n)
    b = rng.uniform(-1, 1, n)
    return f"n={n}\n" + "".join(f"{m} {float(a[m - 1])!r} {float(b[m - 1])!r}\n" for m in range(1, n + 1))


# -- entry point ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def build_parser():
    p = _Parser(prog="circlesum", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("represent", help="unit-weight power-sum representation")
    s.add_argument("--in", dest="inp", required=True, help="JSON job {a, n}")
    s.add_argument("--out", help="write JSON here instead of stdout")

    s = sub.add_parser("harmonics", help="extract harmonics of a signal")
    s.add_argument("--signal", required=True, help="signal text file")
    s.add_argument("--nu", required=True, help="harmonic index or 'all'")
    s.add_argument("--grid", type=int, default=720, help="number of t samples")
    s.add_argument("--csv", help="also write t, T, tau_nu, Theta as CSV")
    s.add_argument("--out", help="write JSON here instead of stdout")

    s = sub.add_parser("fourier", help="Fourier coefficients without integration")
    s.add_argument("--signal", required=True, help="signal text file")
    s.add_argument("--nu", default="all", help="harmonic index or 'all'")
    s.add_argument("--out")

    s = sub.add_parser("approx", help="approximation error sweeps")
    s.add_argument("--mode", choices=["spf", "exp", "hsum"], required=True)
    s.add_argument("--in", dest="inp", required=True, help="JSON job")
    s.add_argument("--csv", help="also write the sweep as CSV")
    s.add_argument("--out", help="write JSON here instead of stdout")

    s = sub.add_parser("verify", help="re-check a certificate")
    s.add_argument("--in", dest="inp", required=True, help="output of represent or harmonics")

    s = sub.add_parser("generate", help="random admissible test data")
    s.add_argument("kind", choices=["represent", "signal"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0, help="RNG seed")
    s.add_argument("--out")
    return p


def _run(args) -> int:
    if args.command == "represent":
        write_json(cmd_represent(read_json(args.inp)), args.out)
    elif args.command == "harmonics":
        write_json(cmd_harmonics(read_signal(args.signal), args.nu, args.grid, args.csv), args.out)
    elif args.command == "fourier":
        write_json(cmd_fourier(read_signal(args.signal), args.nu), args.out)
    elif args.command == "approx":
        write_json(cmd_approx(args.mode, read_json(args.inp), args.csv), args.out)
    elif args.command == "verify":
        report = cmd_verify(read_json(args.inp))
        write_json(report)
        return EXIT_OK if report["ok"] else EXIT_VERIFY_FAIL
    elif args.command == "generate":
        if args.n < 1:
            raise UsageError("--n must be positive")
        out = cmd_generate(args.kind, args.n, args.seed)
        if isinstance(out, dict):
            write_json(out, args.out)
        elif args.out:
            with open(args.out, "w") as fh:
                fh.write(out)
        else:
            sys.stdout.write(out)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except UsageError as exc:
        print(f"circlesum: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RepresentTooSmallError as exc:
        print(f"circlesum: precondition: {exc}", file=sys.stderr)
        if exc.n0 is not None:
            print(f"circlesum: computed n0 = {exc.n0}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (PreconditionError, NotFoundError, InvalidParameterError) as exc:
        print(f"circlesum: precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (RootFindingError, BorderlineError) as exc:
        print(f"circlesum: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except InvalidInputError as exc:
        print(f"circlesum: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CircleSumError as exc:
        print(f"circlesum: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
