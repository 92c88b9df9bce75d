"""Both sides of the Pfaffian integration theorem on finite measure spaces.

The integral side is a brute-force sum over ordered point tuples of
Pfaffians of the assembled 2l x 2l kernel matrix (rows and columns
ordered x_1^+, x_1^-, x_2^+, x_2^-, ...). The algebraic side uses only
upsilon = mu g: traces of its powers, the determinant det(I + tau upsilon),
or the Pfaffian pf[mu] pf[mu^{-1 T} - tau g].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .measure import (
    BATCH,
    BasisTable,
    KernelInstance,
    check_work,
    moment_matrix_g,
    tuple_weights,
)
from .minorsum import inverse_transpose, lemma3_terms
from .pfcore import (
    SingularMatrixError,
    as_matrix,
    det,
    is_exact,
    pfaffian,
    pfaffian_batch,
    principal,
    skew,
    subsets,
    trace,
    zeros,
)
from .series import ABS_TOL, REL_TOL, TauPoly, exp_series, scalars_close, sqrt_series
from .symfun import elementary_newton, log_generating_series


@dataclass(frozen=True)
class Comparison:
    index: int
    lhs: object
    rhs: object
    passed: bool

    @property
    def abs_diff(self) -> float:
        return abs(complex(self.lhs) - complex(self.rhs))


def _one(exact: bool):
    return Fraction(1) if exact else 1.0 + 0j


def _pfaffian_tuple_sum(kmat: np.ndarray, weights: np.ndarray, ell: int, exact: bool):
    """sum over ordered ell-tuples of prod(w) pf[kmat on the tuple's row pairs]."""
    npts = len(weights)
    if ell == 0:
        return _one(exact)
    check_work(npts, ell)
    tuples = list(itertools.product(range(npts), repeat=ell))
    if exact:
        total = Fraction(0)
        for t in tuples:
            w = Fraction(1)
            for i in t:
                w = w * weights[i]
            idx = [r for i in t for r in (2 * i, 2 * i + 1)]
            total += w * pfaffian(kmat[np.ix_(idx, idx)])
        return total
    kmat = np.asarray(kmat, dtype=complex)
    weights = np.asarray(weights, dtype=complex)
    total = 0j
    for start in range(0, len(tuples), BATCH):
        chunk = np.array(tuples[start:start + BATCH], dtype=int).reshape(-1, ell)
        idx = np.empty((len(chunk), 2 * ell), dtype=int)
        idx[:, 0::2] = 2 * chunk
        idx[:, 1::2] = 2 * chunk + 1
        mats = kmat[idx[:, :, None], idx[:, None, :]]
        w = np.prod(weights[chunk], axis=1)
        total += complex(np.sum(w * pfaffian_batch(mats)))
    return total


def sigma_ell(k: KernelInstance, ell: int):
    """ell-fold integral of the 2ell x 2ell kernel Pfaffian (not divided by ell!)."""
    if ell < 0:
        raise ValueError("ell must be non-negative")
    return _pfaffian_tuple_sum(k.kernel_matrix(), k.space.weights, ell, k.exact)


def upsilon(k: KernelInstance) -> np.ndarray:
    return k.mu @ moment_matrix_g(k)


def half_trace_powers(u: np.ndarray, count: int) -> list:
    """[tr(u)/2, tr(u^2)/2, ..., tr(u^count)/2]."""
    exact = is_exact(u)
    half = Fraction(1, 2) if exact else 0.5
    out = []
    power = u
    for j in range(1, count + 1):
        if j > 1:
            power = power @ u
        out.append(half * trace(power))
    return out


def theorem1_rhs(k: KernelInstance, ell: int):
    """e_ell(tr(v)/2, ..., tr(v^ell)/2) with v = mu g."""
    if ell == 0:
        return _one(k.exact)
    return elementary_newton(ell, half_trace_powers(upsilon(k), ell))


def theorem1_verify(k: KernelInstance, ell_max: int) -> list[Comparison]:
    """Compare sigma_l / l! with the trace formula for l = 0..ell_max.

    Rationals must agree exactly. Floats are the tau^l coefficients of one
    polynomial, so the absolute floor is raised to REL_TOL times the
    largest coefficient seen in the run.
    """
    pairs = []
    for ell in range(ell_max + 1):
        pairs.append((sigma_ell(k, ell) * Fraction(1, factorial(ell)), theorem1_rhs(k, ell)))
    if k.exact:
        return [Comparison(ell, a, b, a == b) for ell, (a, b) in enumerate(pairs)]
    scale = max(max(abs(complex(a)), abs(complex(b))) for a, b in pairs)
    floor = max(ABS_TOL, REL_TOL * scale)
    return [Comparison(ell, a, b, scalars_close(a, b, REL_TOL, floor)) for ell, (a, b) in enumerate(pairs)]


# ---------------------------------------------------------------------------
# tau polynomials

def pfaffian_sum_poly(a, b) -> TauPoly:
    """pf[A + tau B] as a polynomial in tau, by the even-subset expansion of a Pfaffian of a sum."""
    a, b = skew(a), skew(b)
    n = a.shape[0]
    if n % 2:
        return TauPoly()
    coeffs = [Fraction(0)] * (n // 2 + 1)
    for s, term in lemma3_terms(a, b):
        deg = (n - len(s)) // 2
        coeffs[deg] = coeffs[deg] + term
    return TauPoly(coeffs)


def det_one_plus_tau(u) -> TauPoly:
    """det(I + tau U): coefficient of tau^k is the sum of k x k principal minors."""
    u = np.asarray(u)
    n = u.shape[0]
    coeffs = []
    for size in range(n + 1):
        acc = Fraction(0)
        for s in subsets(n, size):
            acc = acc + det(principal(u, s))
        coeffs.append(acc)
    return TauPoly(coeffs)


def _require_invertible(k: KernelInstance):
    pf_mu = pfaffian(k.mu)
    if pf_mu == 0:
        raise SingularMatrixError("mu is singular; the Pfaffian closed form needs an invertible mu")
    return pf_mu


def fredholm_pfaffian(k: KernelInstance) -> TauPoly:
    """S(tau; n) = sum_l tau^l sigma_l / l!, a finite sum on a finite space."""
    top = min(k.n // 2, len(k.space))
    return TauPoly([sigma_ell(k, ell) * Fraction(1, factorial(ell)) for ell in range(top + 1)])


def theorem2_rhs(k: KernelInstance) -> TauPoly:
    """pf[mu] pf[mu^{-1 T} - tau g]."""
    pf_mu = _require_invertible(k)
    return pfaffian_sum_poly(inverse_transpose(k.mu), -moment_matrix_g(k)) * pf_mu


def theorem2_rhs_transposed(k: KernelInstance) -> TauPoly:
    """pf[mu] pf[mu^{-1 T} + tau g^T], the form reached at the end of the proof."""
    pf_mu = _require_invertible(k)
    return pfaffian_sum_poly(inverse_transpose(k.mu), moment_matrix_g(k).T) * pf_mu


def theorem2_sides(k: KernelInstance) -> tuple[TauPoly, TauPoly]:
    """(sum_l tau^l sigma_l / l!, pf[mu] pf[mu^{-1 T} - tau g])."""
    rhs = theorem2_rhs(k)
    alt = theorem2_rhs_transposed(k)
    same = rhs == alt if k.exact else rhs.close_to(alt)
    if not same:
        raise ArithmeticError(f"-tau g and +tau g^T forms disagree: {rhs} vs {alt}")
    return fredholm_pfaffian(k), rhs


def theorem2_proof_chain(k: KernelInstance) -> list[TauPoly]:
    """The linear-algebraic derivation of the closed form, one rewrite per entry.

    0. tuple-sum side; 1. each Pfaffian expanded by the Cauchy-Binet rule into
    pf[mu_I] det[A_I] and integrated; 2. the integrals replaced by de
    Bruijn's l! pf[(g^T)_I]; 3. the sum of products of principal Pfaffians with B = tau g^T;
    4. the stated right-hand side with -tau g.
    """
    pf_mu = _require_invertible(k)
    n = k.n
    g = moment_matrix_g(k)
    npts = len(k.space)
    r = k.stacked()

    expanded = []
    for ell in range(n // 2 + 1):
        acc = Fraction(0)
        check_work(npts, ell)
        tuples = list(itertools.product(range(npts), repeat=ell))
        weights = tuple_weights(k.space, tuples)
        for s in subsets(n, 2 * ell):
            pf_s = pfaffian(principal(k.mu, s))
            if pf_s == 0:
                continue
            cols = [j - 1 for j in s]
            integral = Fraction(0)
            for t, w in zip(tuples, weights):
                rows = [q for i in t for q in (2 * i, 2 * i + 1)]
                integral += w * det(r[np.ix_(rows, cols)])
            acc += pf_s * integral
        expanded.append(acc * Fraction(1, factorial(ell)))

    de_bruijn = []
    gt = g.T
    for ell in range(n // 2 + 1):
        acc = Fraction(0)
        for s in subsets(n, 2 * ell):
            acc += pfaffian(principal(k.mu, s)) * pfaffian(principal(gt, s))
        de_bruijn.append(acc)

    corollary = pfaffian_sum_poly(inverse_transpose(k.mu), gt) * pf_mu
    return [fredholm_pfaffian(k), TauPoly(expanded), TauPoly(de_bruijn), corollary, theorem2_rhs(k)]


def fredholm_det_identity(k: KernelInstance) -> tuple[TauPoly, TauPoly]:
    """(S(tau; n)^2, det(I + tau upsilon))."""
    s = fredholm_pfaffian(k)
    return s * s, det_one_plus_tau(upsilon(k))


def fredholm_sqrt_det(k: KernelInstance) -> TauPoly:
    """Formal square root of det(I + tau upsilon) with constant term +1."""
    d = det_one_plus_tau(upsilon(k))
    return sqrt_series(d, k.n)


# ---------------------------------------------------------------------------
# scalar Fredholm determinant as a Fredholm Pfaffian

def fredholm_det_series(kvals, weights=None):
    """det_X[I + K] = sum_l (1/l!) sum over l-tuples prod(w) det[K(x_i, x_j)]."""
    kvals = as_matrix(kvals)
    npts = kvals.shape[0]
    exact = is_exact(kvals)
    weights = _weights(weights, npts, exact)
    total = _one(exact)
    for ell in range(1, npts + 1):
        check_work(npts, ell)
        tuples = list(itertools.product(range(npts), repeat=ell))
        acc = Fraction(0)
        for t in tuples:
            w = _one(exact)
            for i in t:
                w = w * weights[i]
            acc += w * det(kvals[np.ix_(list(t), list(t))])
        total += acc * Fraction(1, factorial(ell))
    return total


def _weights(weights, npts: int, exact: bool):
    if weights is None:
        weights = [1] * npts
    if exact:
        out = np.empty(npts, dtype=object)
        out[:] = [Fraction(w) for w in weights]
        return out
    return np.asarray(weights, dtype=complex)


def particular_case_kernel(kvals, eps) -> np.ndarray:
    """Interleaved values of the 2x2 kernel [[eps(x,y), K(x,y)], [-K(y,x), 0]]."""
    kvals = np.asarray(kvals)
    npts = kvals.shape[0]
    exact = is_exact(kvals) and is_exact(eps)
    out = zeros(2 * npts, 2 * npts, exact)
    for i in range(npts):
        for j in range(npts):
            out[2 * i, 2 * j] = eps[i, j]
            out[2 * i, 2 * j + 1] = kvals[i, j]
            out[2 * i + 1, 2 * j] = -kvals[j, i]
    return out


def fredholm_pfaffian_series(kernel2: np.ndarray, weights) -> object:
    """pf_X[J + K] for a 2x2 kernel given as an interleaved (2P x 2P) matrix."""
    kernel2 = skew(kernel2)
    npts = kernel2.shape[0] // 2
    exact = is_exact(kernel2)
    weights = _weights(weights, npts, exact)
    total = _one(exact)
    for ell in range(1, npts + 1):
        total += _pfaffian_tuple_sum(kernel2, weights, ell, exact) * Fraction(1, factorial(ell))
    return total


def fredholm_scalar_particular_case(kvals, eps, weights=None):
    """(pf_X[J + [[eps, K], [-K^T, 0]]], det_X[I + K])."""
    kvals = as_matrix(kvals)
    eps = skew(eps, exact=is_exact(kvals))
    if eps.shape != kvals.shape:
        raise ValueError(f"eps {eps.shape} and K {kvals.shape} differ in size")
    lhs = fredholm_pfaffian_series(particular_case_kernel(kvals, eps), weights)
    rhs = fredholm_det_series(kvals, weights)
    return lhs, rhs


# ---------------------------------------------------------------------------
# equivalence of the two theorems

@dataclass(frozen=True)
class EquivalenceReport:
    exp_trace: TauPoly
    sqrt_det: TauPoly
    pfaffian_side: TauPoly
    degree: int
    passed: bool


def remark13_equivalence(k: KernelInstance, degree: int | None = None) -> EquivalenceReport:
    """exp(1/2 sum (-1)^(j-1) tau^j tr(v^j)/j) = sqrt det(I + tau v) = pf[mu] pf[mu^{-1 T} - tau g].

    Compared coefficient by coefficient up to ``tau**degree`` (default
    n/2). Passing ``degree=n`` also checks that the first two series stop
    at n/2; in floating point the high coefficients then only vanish up
    to cancellation error.
    """
    pf_side = theorem2_rhs(k)
    n = k.n
    if degree is None:
        degree = n // 2
    u = upsilon(k)
    p = half_trace_powers(u, degree)
    exp_trace = exp_series(log_generating_series(p, degree), degree)
    sqrt_det = sqrt_series(det_one_plus_tau(u), degree)
    pf_side = pf_side.truncate(degree)
    if k.exact:
        ok = exp_trace == sqrt_det == pf_side
    else:
        ok = exp_trace.close_to(sqrt_det) and sqrt_det.close_to(pf_side)
    return EquivalenceReport(exp_trace, sqrt_det, pf_side, degree, ok)


# ---------------------------------------------------------------------------
# degenerate mu

def pad_kernel(k: KernelInstance) -> KernelInstance:
    """Append phi_n = 0 and a zero last row and column to mu."""
    n = k.n
    exact = k.exact
    mu = zeros(n + 1, n + 1, exact)
    mu[:n, :n] = k.mu
    npts = len(k.space)

    def pad(t):
        out = zeros(npts, n + 1, exact)
        out[:, :n] = t
        return out

    return KernelInstance(mu, BasisTable(pad(k.basis.plus), pad(k.basis.minus)), k.space)


__all__ = [
    "Comparison",
    "EquivalenceReport",
    "det_one_plus_tau",
    "fredholm_det_identity",
    "fredholm_det_series",
    "fredholm_pfaffian",
    "fredholm_pfaffian_series",
    "fredholm_scalar_particular_case",
    "fredholm_sqrt_det",
    "half_trace_powers",
    "pad_kernel",
    "particular_case_kernel",
    "pfaffian_sum_poly",
    "remark13_equivalence",
    "sigma_ell",
    "theorem1_rhs",
    "theorem1_verify",
    "theorem2_proof_chain",
    "theorem2_rhs",
    "theorem2_rhs_transposed",
    "theorem2_sides",
    "upsilon",
]
