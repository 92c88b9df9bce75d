"""Command-line driver: every identity check as a subcommand with a TSV report.

Exit status is 0 exactly when no report row failed, 1 when some row
failed, and 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import pi

import numpy as np

from . import measure, minorsum, pfcore, symfun, theorem
from .series import ABS_TOL, REL_TOL, TauPoly, scalars_close

THEOREM_COLUMNS = ["check", "seed", "n", "points", "degree", "lhs", "rhs", "abs_diff", "verdict"]
LEMMA_COLUMNS = ["lemma", "seed", "verdict", "lhs", "rhs"]


def fmt(x) -> str:
    if isinstance(x, TauPoly):
        return "[" + ", ".join(pfcore.format_scalar(c) for c in x) + "]"
    return pfcore.format_scalar(x)


def diff(a, b) -> str:
    if isinstance(a, (Fraction, int)) and isinstance(b, (Fraction, int)):
        return str(abs(Fraction(a) - Fraction(b)))
    return f"{abs(complex(a) - complex(b)):.3e}"


class Report:
    def __init__(self, columns):
        self.columns = columns
        self.rows: list[dict] = []
        self.failures: list[str] = []

    def add(self, passed: bool, instance=None, **fields):
        row = {c: fields.get(c, "") for c in self.columns}
        row["verdict"] = "pass" if passed else "fail"
        self.rows.append(row)
        if not passed and instance is not None:
            self.failures.append(json.dumps({"row": row, "instance": instance}))

    def theorem_row(self, check, seed, n, points, degree, lhs, rhs, passed, instance=None):
        self.add(
            passed,
            instance,
            check=check,
            seed=seed,
            n=n,
            points=points,
            degree=degree,
            lhs=fmt(lhs),
            rhs=fmt(rhs),
            abs_diff=diff(lhs, rhs),
        )

    @property
    def n_failed(self) -> int:
        return sum(r["verdict"] == "fail" for r in self.rows)

    def write(self, stream, as_json: bool = False):
        if as_json:
            json.dump(self.rows, stream, indent=1)
            stream.write("\n")
            return
        stream.write("\t".join(self.columns) + "\n")
        for r in self.rows:
            stream.write("\t".join(str(r[c]) for c in self.columns) + "\n")


def kernel_json(k: measure.KernelInstance) -> dict:
    return {
        "mu": pfcore.matrix_to_json(k.mu),
        "plus": pfcore.matrix_to_json(k.basis.plus),
        "minus": pfcore.matrix_to_json(k.basis.minus),
        "space": measure.space_to_json(k.space),
    }


def _poly_compare(report, check, seed, n, points, lhs: TauPoly, rhs: TauPoly, exact: bool, instance):
    length = max(len(lhs), len(rhs))
    if not exact:
        scale = max((abs(complex(c)) for c in (*lhs, *rhs)), default=0.0)
    for d in range(length):
        a, b = lhs[d], rhs[d]
        if exact:
            ok = a == b
        else:
            ok = abs(complex(a) - complex(b)) <= max(ABS_TOL, REL_TOL * scale)
        report.theorem_row(check, seed, n, points, d, a, b, ok, instance)


# ---------------------------------------------------------------------------
# suites

def cmd_pf(args) -> Report | None:
    if args.matrix:
        with open(args.matrix) as fh:
            a = pfcore.skew(pfcore.matrix_from_json(json.load(fh)))
        print(pfcore.format_scalar(pfcore.pfaffian(a)))
        return None
    report = Report(THEOREM_COLUMNS)
    for t in range(args.trials):
        seed = args.seed + t
        n = args.n if args.n else 2 * (t % 5 + 1)
        a = pfcore.random_skew(n, seed, args.range)
        fast = pfcore.pfaffian(a)
        inst = {"matrix": pfcore.matrix_to_json(a)}
        if n <= pfcore.ORACLE_MAX_DIM:
            oracle = pfcore.pfaffian_oracle(a)
            report.theorem_row("pf=oracle", seed, n, "", "", fast, oracle, fast == oracle, inst)
        d = pfcore.det(a)
        report.theorem_row("pf^2=det", seed, n, "", "", fast * fast, d, fast * fast == d, inst)
    return report


def _random_rationals(rng, count):
    return [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7))) for _ in range(count)]


def cmd_symfun(args) -> Report:
    report = Report(THEOREM_COLUMNS)
    for t in range(args.trials):
        seed = args.seed + t
        p = _random_rationals(np.random.default_rng(seed), args.degree)
        lhs, rhs = symfun.generating_series_check(p, args.degree)
        inst = {"power_sums": [str(v) for v in p]}
        for ell in range(args.degree + 1):
            part = symfun.elementary_from_powersums(ell, p)
            newton = symfun.elementary_newton(ell, p)
            report.theorem_row("partition=newton", seed, "", "", ell, part, newton, part == newton, inst)
            report.theorem_row("partition=exp", seed, "", "", ell, lhs[ell], rhs[ell], lhs[ell] == rhs[ell], inst)
    return report


def cmd_lemmas(args) -> Report:
    report = Report(LEMMA_COLUMNS)
    n = args.n
    if n % 2:
        raise ValueError(f"--n must be even, got {n}")

    def row(lemma, seed, pair, inst):
        lhs, rhs = pair
        report.add(lhs == rhs, inst, lemma=lemma, seed=seed, lhs=fmt(lhs), rhs=fmt(rhs))

    for t in range(args.trials):
        seed = args.seed + t
        b = pfcore.random_skew(n, seed, args.range)
        for m in range(0, n + 1, 2):
            a = pfcore.random_matrix(m, n, seed + 7919 * (m + 1), args.range)
            row(f"lemma1[M={m}]", seed, minorsum.lemma1_sides(a, b),
                {"A": pfcore.matrix_to_json(a), "B": pfcore.matrix_to_json(b)})
        inv = pfcore.random_invertible_skew(n, seed, args.range)
        for s, lhs, rhs in minorsum.lemma2_all_sides(inv):
            if len(s) % 2 == 0:
                row(f"lemma2[I={','.join(map(str, s))}]", seed, (lhs, rhs), {"A": pfcore.matrix_to_json(inv)})
        row("lemma3", seed, minorsum.lemma3_sides(inv, b),
            {"A": pfcore.matrix_to_json(inv), "B": pfcore.matrix_to_json(b)})
        row("corollary1", seed, minorsum.corollary1_sides(inv, b),
            {"A": pfcore.matrix_to_json(inv), "B": pfcore.matrix_to_json(b)})
    return report


def cmd_de_bruijn(args) -> Report:
    report = Report(THEOREM_COLUMNS)
    for t in range(args.trials):
        seed = args.seed + t
        k = measure.random_kernel(2 * args.ell, args.points, seed, args.range)
        lhs, rhs = measure.de_bruijn_sides(k, args.ell)
        report.theorem_row("de-bruijn", seed, k.n, args.points, args.ell, lhs, rhs, lhs == rhs, kernel_json(k))
    return report


def _maybe_float(k, scalar: str):
    return k.as_float() if scalar == "complex" else k


def cmd_theorem1(args) -> Report:
    report = Report(THEOREM_COLUMNS)
    for t in range(args.trials):
        seed = args.seed + t
        k = _maybe_float(measure.random_kernel(args.n, args.points, seed, args.range), args.scalar)
        for c in theorem.theorem1_verify(k, args.lmax):
            report.theorem_row("theorem1", seed, k.n, args.points, c.index, c.lhs, c.rhs, c.passed, kernel_json(k))
    return report


def cmd_theorem2(args) -> Report:
    report = Report(THEOREM_COLUMNS)
    for t in range(args.trials):
        seed = args.seed + t
        k = _maybe_float(measure.random_kernel(args.n, args.points, seed, args.range, invertible=True), args.scalar)
        inst = kernel_json(k)
        lhs, rhs = theorem.theorem2_sides(k)
        _poly_compare(report, "theorem2", seed, k.n, args.points, lhs, rhs, k.exact, inst)
        eq = theorem.remark13_equivalence(k)
        _poly_compare(report, "exp-trace=sqrt-det", seed, k.n, args.points, eq.exp_trace, eq.sqrt_det, k.exact, inst)
        _poly_compare(report, "sqrt-det=pf", seed, k.n, args.points, eq.sqrt_det, eq.pfaffian_side, k.exact, inst)
    return report


def cmd_fredholm(args) -> Report:
    report = Report(THEOREM_COLUMNS)
    for t in range(args.trials):
        seed = args.seed + t
        k = measure.random_kernel(args.n, args.points, seed, args.range)
        sq, dt = theorem.fredholm_det_identity(k)
        _poly_compare(report, "S^2=det(I+tau*v)", seed, k.n, args.points, sq, dt, True, kernel_json(k))

        kv = pfcore.random_matrix(args.points, args.points, seed, args.range)
        w = measure.random_space(args.points, seed).weights
        eps_values = [pfcore.zeros(args.points, args.points), pfcore.random_skew(args.points, seed + 1, args.range)]
        inst = {"K": pfcore.matrix_to_json(kv), "weights": [str(x) for x in w]}
        for j, eps in enumerate(eps_values):
            lhs, rhs = theorem.fredholm_scalar_particular_case(kv, eps, w)
            report.theorem_row(f"pf_X=det_X[eps#{j}]", seed, "", args.points, "", lhs, rhs, lhs == rhs, inst)
    return report


def cmd_ginibre(args) -> Report:
    report = Report(THEOREM_COLUMNS)
    space = measure.gauss_hermite_plane(args.nodes, complex(args.center))
    npts = len(space)
    if args.center == 0:
        ones = space.integrate(np.ones(npts))
        second = space.integrate(np.abs(space.points) ** 2)
        report.theorem_row("moment:1", "", "", npts, 0, ones, pi, scalars_close(ones, pi, 1e-10, 1e-10))
        report.theorem_row("moment:|z|^2", "", "", npts, 2, second, pi, scalars_close(second, pi, 1e-10, 1e-10))
    mu = pfcore.random_skew(args.n, args.seed, args.range)
    k = measure.ginibre_kernel(args.n, mu, space)
    worst = 0.0
    for c in theorem.theorem1_verify(k, args.lmax):
        scale = max(abs(complex(c.lhs)), abs(complex(c.rhs)))
        if scale > 1e-10:
            worst = max(worst, c.abs_diff / scale)
        report.theorem_row("ginibre-theorem1", args.seed, args.n, npts, c.index, c.lhs, c.rhs, c.passed,
                           {"mu": pfcore.matrix_to_json(mu), "nodes": args.nodes, "center": args.center})
    print(f"max relative error {worst:.3e}", file=sys.stderr)
    return report


# ---------------------------------------------------------------------------
# argument parsing

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive count, got {text}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative count, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pfaffint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed_required=True):
        p.add_argument("--seed", type=int, required=seed_required, default=0)
        p.add_argument("--trials", type=_positive, default=10)
        p.add_argument("--range", type=_positive, default=3, help="entry range for random integers")
        p.add_argument("--output", "-o", help="write the report here instead of stdout")
        p.add_argument("--json", action="store_true", help="emit report rows as JSON")

    p = sub.add_parser("pf", help="Pfaffian of a JSON matrix, or randomized oracle checks")
    p.add_argument("--matrix", help="matrix JSON file")
    p.add_argument("--n", type=_nonneg, default=0, help="dimension (default: cycle 2..10)")
    common(p, seed_required=False)
    p.set_defaults(func=cmd_pf)

    p = sub.add_parser("symfun", help="partition sum vs Newton recursion vs generating exponential")
    p.add_argument("--degree", type=_nonneg, default=10)
    common(p)
    p.set_defaults(func=cmd_symfun)

    p = sub.add_parser("verify-lemmas", help="minor summation formulas")
    p.add_argument("--n", type=_positive, default=4)
    common(p)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("de-bruijn", help="de Bruijn integral formula")
    p.add_argument("--ell", type=_positive, default=2)
    p.add_argument("--points", type=_positive, default=3)
    common(p)
    p.set_defaults(func=cmd_de_bruijn)

    for name, func, lkey in (("verify-theorem1", cmd_theorem1, True), ("verify-theorem2", cmd_theorem2, False)):
        p = sub.add_parser(name, help=f"{name.split('-')[1]} on random rational instances")
        p.add_argument("--n", type=_positive, default=4)
        p.add_argument("--points", type=_positive, default=3)
        if lkey:
            p.add_argument("--lmax", type=_nonneg, default=2)
        p.add_argument("--scalar", choices=["rational", "complex"], default="rational")
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("fredholm", help="S^2 = det(I + tau v) and the scalar particular case")
    p.add_argument("--n", type=_positive, default=4)
    p.add_argument("--points", type=_positive, default=3)
    common(p)
    p.set_defaults(func=cmd_fredholm)

    p = sub.add_parser("ginibre-demo", help="complex-plane kernel on a Gauss-Hermite grid")
    p.add_argument("--n", type=_positive, default=4)
    p.add_argument("--nodes", type=_positive, default=24)
    p.add_argument("--lmax", type=_nonneg, default=2)
    p.add_argument("--center", type=complex, default=0j, help="center of the Gaussian weight, e.g. 0.5+0.3j")
    common(p, seed_required=False)
    p.set_defaults(func=cmd_ginibre)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except (OSError, ValueError, TypeError, KeyError, json.JSONDecodeError, ArithmeticError, RuntimeError) as exc:
        where = getattr(args, "matrix", None) or args.command
        print(f"pfaffint {args.command}: error ({where}): {exc}", file=sys.stderr)
        return 2
    if report is None:
        return 0
    if args.output:
        with open(args.output, "w") as fh:
            report.write(fh, args.json)
    else:
        report.write(sys.stdout, args.json)
    for line in report.failures:
        print(line, file=sys.stderr)
    failed = report.n_failed
    print(f"{args.command}: {len(report.rows) - failed}/{len(report.rows)} rows passed", file=sys.stderr)
    return 0 if failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
