"""Minor summation formulas for Pfaffians, as two-sided computations.

Every ``*_sides`` function returns ``(lhs, rhs)``; callers decide how to
compare them (exact equality for rationals).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .pfcore import (
    SingularMatrixError,
    complement,
    det,
    element_sum,
    inverse,
    is_exact,
    pfaffian,
    principal,
    skew,
    subsets,
    submatrix,
)

MAX_SUBSET_DIM = 12


def _zero(a):
    return Fraction(0) if is_exact(a) else 0j


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _guard(n: int):
    if n > MAX_SUBSET_DIM:
        raise ValueError(f"subset enumeration limited to N <= {MAX_SUBSET_DIM}, got {n}")


def lemma1_sides(a, b):
    """sum_{#I=M} pf[B_I^I] det[A_{[M],I}]  versus  pf[A B A^T]."""
    a = np.asarray(a)
    b = skew(b)
    m, n = a.shape
    if b.shape != (n, n):
        raise ValueError(f"B must be {n}x{n}, got {b.shape}")
    if m % 2 or m > n:
        raise ValueError(f"need M even and M <= N, got M={m}, N={n}")
    _guard(n)
    all_rows = tuple(range(1, m + 1))
    lhs = _zero(b)
    for s in subsets(n, m):
        lhs += pfaffian(principal(b, s)) * det(submatrix(a, all_rows, s))
    rhs = pfaffian(a @ b @ a.T)
    return lhs, rhs


def _lemma2_pair(a, pf_a, ainv, s, index_base):
    n = a.shape[0]
    lhs = pf_a * pfaffian(principal(ainv, s))
    shift = 1 - index_base
    rhs = _sign(element_sum(s) - shift * len(s)) * pfaffian(principal(a, complement(s, n)))
    return lhs, rhs


def _lemma2_setup(a):
    a = skew(a)
    pf_a = pfaffian(a)
    if pf_a == 0:
        raise SingularMatrixError("the inverse-minor relation needs an invertible skew matrix")
    return a, pf_a, inverse(a)


def lemma2_sides(a, subset, index_base: int = 1):
    """pf[A] pf[(A^-1)_I^I]  versus  (-1)^{|I|} pf[A_Ibar^Ibar].

    ``subset`` is always given 1-based. ``index_base`` only changes how the
    element sum |I| entering the sign is computed.
    """
    a, pf_a, ainv = _lemma2_setup(a)
    return _lemma2_pair(a, pf_a, ainv, tuple(subset), index_base)


def lemma2_all_sides(a, index_base: int = 1):
    """Yield ``(I, lhs, rhs)`` for every subset I, inverting A only once."""
    a, pf_a, ainv = _lemma2_setup(a)
    _guard(a.shape[0])
    for s in subsets(a.shape[0]):
        yield (s, *_lemma2_pair(a, pf_a, ainv, s, index_base))


def lemma3_terms(a, b):
    """Yield ``(I, (-1)^{|I|-r} pf[A_I^I] pf[B_Ibar^Ibar])`` over even I."""
    n = a.shape[0]
    _guard(n)
    for s in subsets(n, even_only=True):
        r = len(s) // 2
        yield s, _sign(element_sum(s) - r) * pfaffian(principal(a, s)) * pfaffian(principal(b, complement(s, n)))


def lemma3_sides(a, b):
    """pf[A + B]  versus  the subset expansion over even subsets I."""
    a, b = skew(a), skew(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch {a.shape} vs {b.shape}")
    rhs = _zero(a)
    for _, term in lemma3_terms(a, b):
        rhs += term
    return pfaffian(a + b), rhs


def inverse_transpose(a) -> np.ndarray:
    return inverse(a).T


def corollary1_sides(a, b, include_odd: bool = False):
    """sum_I pf[A_I^I] pf[B_I^I]  versus  pf[A] pf[A^{-1 T} + B]."""
    a, b = skew(a), skew(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch {a.shape} vs {b.shape}")
    n = a.shape[0]
    _guard(n)
    pf_a = pfaffian(a)
    if pf_a == 0:
        raise SingularMatrixError("the principal-minor product sum needs an invertible A")
    lhs = _zero(a)
    for s in subsets(n, even_only=not include_odd):
        lhs += pfaffian(principal(a, s)) * pfaffian(principal(b, s))
    rhs = pf_a * pfaffian(inverse_transpose(a) + b)
    return lhs, rhs


def corollary1_chain(a, b) -> list:
    """Re-run the corollary's derivation one rewrite at a time.

    Returns five successive values: pf[A] pf[A^{-1 T} + B] computed
    directly; pf[A] times the subset expansion of that Pfaffian; the same
    with the transpose folded into the sign; the sum after the inverse-minor relation turns
    each inverse minor into a complementary minor of A; and finally the
    sum reindexed over I instead of its complement.
    """
    a, b = skew(a), skew(b)
    n = a.shape[0]
    pf_a = pfaffian(a)
    if pf_a == 0:
        raise SingularMatrixError("the principal-minor product sum needs an invertible A")
    ainv = inverse(a)
    ait = ainv.T

    direct = pf_a * pfaffian(ait + b)

    step_lemma3 = _zero(a)
    for _, term in lemma3_terms(ait, b):
        step_lemma3 += term
    step_lemma3 = pf_a * step_lemma3

    # pf[(A^-1T)_I] = (-1)^r pf[(A^-1)_I], so the sign collapses to (-1)^{|I|}
    step_signs = _zero(a)
    for s in subsets(n, even_only=True):
        ibar = complement(s, n)
        step_signs += _sign(element_sum(s)) * pfaffian(principal(ainv, s)) * pfaffian(principal(b, ibar))
    step_signs = pf_a * step_signs

    step_lemma2 = _zero(a)
    for s in subsets(n, even_only=True):
        ibar = complement(s, n)
        step_lemma2 += pfaffian(principal(a, ibar)) * pfaffian(principal(b, ibar))

    reindexed = _zero(a)
    for s in subsets(n, even_only=True):
        reindexed += pfaffian(principal(a, s)) * pfaffian(principal(b, s))

    return [direct, step_lemma3, step_signs, step_lemma2, reindexed]
