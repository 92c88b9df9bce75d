"""Acceptance criteria 1-8, one test each, run at the stated sizes and tolerances.

Each test prints a single PASS/FAIL line (also collected into the terminal
summary) and then asserts. Runtime limits are part of the criteria.
"""

import time
from fractions import Fraction as F
from math import factorial, pi

import numpy as np
import pytest

from pfaffint import measure, minorsum, pfcore, symfun, theorem
from pfaffint.series import scalars_close

REL, ABS = 1e-8, 1e-10


def report(log, number, title, ok, elapsed, limit, detail=""):
    ok = ok and elapsed < limit
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}: {detail} ({elapsed:.2f}s, limit {limit}s)"
    print(line)
    log.append(line)
    return ok


def rational_vector(rng, count):
    return [F(int(rng.integers(-9, 10)), int(rng.integers(1, 7))) for _ in range(count)]


def test_criterion1_pfaffian_oracle(acceptance_log):
    start = time.perf_counter()
    bad = []
    sizes = [2, 4, 6, 8, 10]
    for t in range(200):
        n = sizes[t % 5]
        a = pfcore.random_skew(n, 1000 + t, 5, max_denominator=4)
        pf = pfcore.pfaffian(a)
        if pf != pfcore.pfaffian_oracle(a) or pf * pf != pfcore.det(a):
            bad.append((t, n))
    elapsed = time.perf_counter() - start
    ok = report(acceptance_log, 1, "Pfaffian = matching oracle, pf^2 = det", not bad, elapsed, 10,
                f"200 matrices, {len(bad)} mismatches")
    assert ok, bad


def test_criterion2_symmetric_functions(acceptance_log):
    start = time.perf_counter()
    lmax = 10
    bad = []
    rng = np.random.default_rng(2)
    for t in range(100):
        p = rational_vector(rng, lmax)
        _, via_exp = symfun.generating_series_check(p, lmax)
        for ell in range(lmax + 1):
            part = symfun.elementary_from_powersums(ell, p)
            if not (part == symfun.elementary_newton(ell, p) == via_exp[ell]):
                bad.append((t, ell))
    elapsed = time.perf_counter() - start
    ok = report(acceptance_log, 2, "partition sum = Newton = generating exponential", not bad, elapsed, 5,
                f"100 vectors x l=0..{lmax}, {len(bad)} mismatches")
    assert ok, bad


def test_criterion3_minor_summation(acceptance_log):
    start = time.perf_counter()
    bad = []
    counts = {"lemma1": 0, "lemma2": 0, "lemma3": 0, "corollary1": 0}
    sizes = [2, 4, 6, 8]
    for t in range(100):
        n = sizes[t % 4]
        seed = 3000 + t
        b = pfcore.random_skew(n, seed, 4, max_denominator=3)
        for m in (0, 2, 4):
            if m > n:
                continue
            a = pfcore.random_matrix(m, n, seed + 101 * (m + 1), 4, max_denominator=3)
            lhs, rhs = minorsum.lemma1_sides(a, b)
            counts["lemma1"] += 1
            if lhs != rhs:
                bad.append(("lemma1", t, m))
        inv = pfcore.random_invertible_skew(n, seed, 4, max_denominator=3)
        for s, lhs, rhs in minorsum.lemma2_all_sides(inv):
            counts["lemma2"] += 1
            if lhs != rhs:
                bad.append(("lemma2", t, s))
        for name, fn in (("lemma3", minorsum.lemma3_sides), ("corollary1", minorsum.corollary1_sides)):
            lhs, rhs = fn(inv, b)
            counts[name] += 1
            if lhs != rhs:
                bad.append((name, t))
    elapsed = time.perf_counter() - start
    detail = ", ".join(f"{k} {v}" for k, v in counts.items()) + f" checks, {len(bad)} mismatches"
    ok = report(acceptance_log, 3, "minor summation formulas", not bad, elapsed, 60, detail)
    assert ok, bad


def test_criterion3_zero_based_canary(acceptance_log):
    """Required canary: with element sums taken 0-based, the inverse-minor relation should break on a fixed instance.

    The 0-based sum differs from the 1-based one by #I. Both sides vanish
    for odd #I, and for even #I the sign is unchanged, so no subset of any
    instance can trip it. The check is kept as stated and is expected to
    report FAIL.
    """
    start = time.perf_counter()
    a = pfcore.random_invertible_skew(6, 17, 4, max_denominator=3)
    broken = []
    for s, lhs, rhs in minorsum.lemma2_all_sides(a, index_base=0):
        if lhs != rhs:
            broken.append(s)
    elapsed = time.perf_counter() - start
    ok = report(acceptance_log, "3 (canary)", "0-based |I| breaks the inverse-minor relation", bool(broken), elapsed, 60,
                f"{len(broken)} of 64 subsets disagree under the 0-based sign")
    assert ok, "the 0-based sign agrees with the 1-based sign on every subset"


def test_criterion4_de_bruijn(acceptance_log):
    start = time.perf_counter()
    bad = []
    for t in range(50):
        ell = t % 3 + 1
        points = t % 4 + 1
        k = measure.random_kernel(2 * ell, points, 4000 + t, max_denominator=3)
        lhs, rhs = measure.de_bruijn_sides(k, ell)
        if lhs != rhs:
            bad.append((t, ell, points))
    elapsed = time.perf_counter() - start
    ok = report(acceptance_log, 4, "de Bruijn integral = l! pf[g^T]", not bad, elapsed, 30,
                f"50 instances, {len(bad)} mismatches")
    assert ok, bad


def test_criterion5_theorem1(acceptance_log):
    start = time.perf_counter()
    bad = []
    zero_checks = 0
    for t in range(50):
        n = (2, 4, 6)[t % 3]
        points = t % 4 + 1
        k = measure.random_kernel(n, points, 5000 + t, max_denominator=3)
        for c in theorem.theorem1_verify(k, 3):
            if not c.passed:
                bad.append(("theorem1", t, c.index))
        for ell in range(1, 4):
            if 2 * ell > n:
                zero_checks += 1
                if theorem.sigma_ell(k, ell) != 0 or theorem.theorem1_rhs(k, ell) != 0:
                    bad.append(("rank", t, ell))
        padded = theorem.pad_kernel(k)
        for ell in range(4):
            if theorem.sigma_ell(padded, ell) != theorem.sigma_ell(k, ell):
                bad.append(("pad-lhs", t, ell))
            if theorem.theorem1_rhs(padded, ell) != theorem.theorem1_rhs(k, ell):
                bad.append(("pad-rhs", t, ell))
    elapsed = time.perf_counter() - start
    ok = report(acceptance_log, 5, "sigma_l / l! = e_l(tr v^j / 2), rank zeros, padding", not bad, elapsed, 120,
                f"50 instances, {zero_checks} zero checks, {len(bad)} mismatches")
    assert ok, bad


def invertible_instances():
    for t in range(50):
        n = (2, 4, 6)[t % 3]
        points = t % 4 + 1
        yield t, measure.random_kernel(n, points, 6000 + t, invertible=True, max_denominator=3)


def test_criterion6_theorem2(acceptance_log):
    start = time.perf_counter()
    bad = []
    for t, k in invertible_instances():
        lhs, rhs = theorem.theorem2_sides(k)
        if lhs != rhs:
            bad.append(("theorem2", t))
        rep = theorem.remark13_equivalence(k)
        if not rep.passed or rep.pfaffian_side != lhs.truncate(rep.degree):
            bad.append(("equivalence", t))
    elapsed = time.perf_counter() - start
    ok = report(acceptance_log, 6, "Fredholm Pfaffian polynomial, three-way equivalence", not bad, elapsed, 120,
                f"50 instances, {len(bad)} mismatches")
    assert ok, bad


def test_criterion7_fredholm(acceptance_log):
    start = time.perf_counter()
    bad = []
    for t, k in invertible_instances():
        sq, d = theorem.fredholm_det_identity(k)
        if sq != d:
            bad.append(("S^2=det", t))
    for t in range(20):
        seed = 7000 + t
        kv = pfcore.random_matrix(3, 3, seed, 4, max_denominator=3)
        w = measure.random_space(3, seed).weights
        values = []
        for eps in (pfcore.zeros(3, 3), pfcore.random_skew(3, seed, 4, max_denominator=3),
                    pfcore.random_skew(3, seed + 1, 4, max_denominator=3)):
            lhs, rhs = theorem.fredholm_scalar_particular_case(kv, eps, w)
            if lhs != rhs:
                bad.append(("particular", t))
            values.append(lhs)
        if len(set(values)) != 1:
            bad.append(("eps-dependence", t))
    elapsed = time.perf_counter() - start
    ok = report(acceptance_log, 7, "S^2 = det(I + tau v), scalar case eps-independent", not bad, elapsed, 30,
                f"50 + 20 instances, {len(bad)} mismatches")
    assert ok, bad


def test_criterion8_ginibre(acceptance_log):
    start = time.perf_counter()
    space = measure.gauss_hermite_plane(24)
    ones = space.integrate(np.ones(len(space)))
    second = space.integrate(np.abs(space.points) ** 2)
    moments_ok = abs(ones - pi) <= 1e-10 and abs(second - pi) <= 1e-10
    mu = pfcore.random_skew(4, 8, 3)
    k = measure.ginibre_kernel(4, mu, space)
    rows = theorem.theorem1_verify(k, 2)
    strict = [scalars_close(c.lhs, c.rhs, REL, ABS) for c in rows if c.index >= 1]
    worst = max(c.abs_diff for c in rows)
    elapsed = time.perf_counter() - start
    ok = report(acceptance_log, 8, "Ginibre n=4 on 24x24 Gauss-Hermite grid", moments_ok and all(strict), elapsed, 60,
                f"moments |d|={abs(ones - pi):.1e},{abs(second - pi):.1e}; l=1,2 max |lhs-rhs|={worst:.1e}")
    assert ok, [(c.index, c.lhs, c.rhs) for c in rows]
