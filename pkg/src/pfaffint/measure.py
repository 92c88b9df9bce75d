"""Finite measure spaces, function tables and the antisymmetrized moment matrix.

A measure space is a list of points with weights; integrals are the
weighted sums over those points. Continuous measures enter only through
quadrature rules (see :func:`gauss_hermite_plane`).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

import numpy as np

from .pfcore import (
    as_matrix,
    det,
    is_exact,
    pfaffian,
    random_invertible_skew,
    random_matrix,
    random_skew,
    skew,
    to_scalar,
)

MAX_TUPLE_EVALS = 10**7
BATCH = 1 << 15


class WorkGuardError(RuntimeError):
    pass


@dataclass(frozen=True)
class MeasureSpace:
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if len(self.points) != len(self.weights):
            raise ValueError(f"{len(self.points)} points but {len(self.weights)} weights")
        if not is_exact(self.weights) and not np.all(np.isfinite(self.weights)):
            raise ValueError("weights must be finite")

    @classmethod
    def discrete(cls, points, weights) -> "MeasureSpace":
        w = [to_scalar(v) for v in weights]
        if all(isinstance(v, Fraction) for v in w):
            wa = np.empty(len(w), dtype=object)
            wa[:] = w
        else:
            wa = np.array([complex(v) for v in w])
        pts = np.empty(len(points), dtype=object)
        pts[:] = list(points)
        if len(points) and all(isinstance(p, complex) for p in points):
            pts = np.array(points, dtype=complex)
        return cls(pts, wa)

    @property
    def exact(self) -> bool:
        return is_exact(self.weights)

    def __len__(self) -> int:
        return len(self.weights)

    def integrate(self, values):
        """Weighted sum of ``values`` given at the points."""
        if self.exact:
            return sum((w * v for w, v in zip(self.weights, values)), Fraction(0))
        return complex(np.dot(self.weights, np.asarray(values)))


@dataclass(frozen=True)
class BasisTable:
    """Values phi^+_j(x_i) and phi^-_j(x_i), both shaped (points, n)."""

    plus: np.ndarray
    minus: np.ndarray

    def __post_init__(self):
        if self.plus.shape != self.minus.shape:
            raise ValueError(f"plus table {self.plus.shape} and minus table {self.minus.shape} differ")

    @property
    def n(self) -> int:
        return self.plus.shape[1]

    @property
    def exact(self) -> bool:
        return is_exact(self.plus) and is_exact(self.minus)


@dataclass(frozen=True)
class KernelInstance:
    mu: np.ndarray
    basis: BasisTable
    space: MeasureSpace

    def __post_init__(self):
        n = self.basis.n
        if self.mu.shape != (n, n):
            raise ValueError(f"mu is {self.mu.shape} but the basis has {n} functions")
        if self.basis.plus.shape[0] != len(self.space):
            raise ValueError(f"basis has {self.basis.plus.shape[0]} rows for {len(self.space)} points")

    @property
    def n(self) -> int:
        return self.basis.n

    @property
    def exact(self) -> bool:
        return is_exact(self.mu) and self.basis.exact and self.space.exact

    def stacked(self) -> np.ndarray:
        """Rows phi^+(x_1), phi^-(x_1), phi^+(x_2), ...: shape (2 points, n)."""
        p, m = self.basis.plus, self.basis.minus
        out = np.empty((2 * p.shape[0], p.shape[1]), dtype=p.dtype if self.exact else complex)
        out[0::2] = p
        out[1::2] = m
        return out

    def kernel_matrix(self) -> np.ndarray:
        """All Phi^{ab}(x_i, x_j) at once, in interleaved (x_i^+, x_i^-) order."""
        r = self.stacked()
        return r @ self.mu @ r.T

    def phi(self, x: int, y: int) -> np.ndarray:
        """The 2x2 block [[Phi++, Phi+-], [Phi-+, Phi--]] at points x, y (0-based)."""
        k = self.kernel_matrix()
        return k[2 * x:2 * x + 2, 2 * y:2 * y + 2]

    def as_float(self) -> "KernelInstance":
        return KernelInstance(
            np.asarray(self.mu, dtype=complex),
            BasisTable(np.asarray(self.basis.plus, dtype=complex), np.asarray(self.basis.minus, dtype=complex)),
            MeasureSpace(self.space.points, np.asarray(self.space.weights, dtype=complex)),
        )


def make_kernel(mu, plus, minus, space: MeasureSpace) -> KernelInstance:
    exact = space.exact
    mu = skew(mu, exact=None)
    plus = as_matrix(plus, exact=None)
    minus = as_matrix(minus, exact=None)
    if not (exact and is_exact(mu) and is_exact(plus) and is_exact(minus)):
        mu, plus, minus = (np.asarray(x, dtype=complex) for x in (mu, plus, minus))
        space = MeasureSpace(space.points, np.asarray(space.weights, dtype=complex))
    return KernelInstance(mu, BasisTable(plus, minus), space)


def check_work(points: int, ell: int):
    work = points**ell
    if work > MAX_TUPLE_EVALS:
        raise WorkGuardError(
            f"{points}^{ell} = {work} tuple evaluations exceeds the limit of {MAX_TUPLE_EVALS}; "
            "use the trace-side formulas (theorem1_rhs / theorem2 RHS) instead"
        )


def tuple_weights(space: MeasureSpace, tuples) -> list:
    return [prod((space.weights[i] for i in t), start=Fraction(1)) for t in tuples]


def moment_matrix_g(k: KernelInstance) -> np.ndarray:
    """g = sum_i w_i (phi^-(x_i)^T phi^+(x_i) - phi^+(x_i)^T phi^-(x_i))."""
    p, m, w = k.basis.plus, k.basis.minus, k.space.weights
    x = (m.T * w) @ p
    g = x - x.T
    return skew(g, exact=k.exact)


def de_bruijn_matrix(plus_rows, minus_rows) -> np.ndarray:
    """Columns phi^+(x_1), phi^-(x_1), phi^+(x_2), ... for one tuple."""
    ell = len(plus_rows)
    cols = []
    for i in range(ell):
        cols.append(plus_rows[i])
        cols.append(minus_rows[i])
    return np.array(cols, dtype=object if is_exact(np.asarray(plus_rows)) else complex).T


def de_bruijn_sides(k: KernelInstance, ell: int | None = None):
    """ell-fold integral of the interleaved determinant  versus  ell! pf[g^T].

    The kernel's mu is not used.
    """
    n = k.n
    if ell is None:
        ell = n // 2
    if n != 2 * ell:
        raise ValueError(f"de Bruijn formula needs 2*ell = {2 * ell} functions, basis has {n}")
    npts = len(k.space)
    check_work(npts, ell)
    p, m = k.basis.plus, k.basis.minus
    tuples = list(itertools.product(range(npts), repeat=ell))
    if k.exact:
        lhs = Fraction(0)
        for t, w in zip(tuples, tuple_weights(k.space, tuples)):
            idx = list(t)
            lhs += w * det(de_bruijn_matrix(p[idx], m[idx]))
    else:
        lhs = 0j
        for start in range(0, len(tuples), BATCH):
            chunk = np.array(tuples[start:start + BATCH], dtype=int).reshape(-1, ell)
            mats = np.empty((len(chunk), n, n), dtype=complex)
            mats[:, :, 0::2] = np.transpose(p[chunk], (0, 2, 1))
            mats[:, :, 1::2] = np.transpose(m[chunk], (0, 2, 1))
            w = np.prod(k.space.weights[chunk], axis=1)
            lhs += complex(np.sum(w * np.linalg.det(mats)))
    g = moment_matrix_g(k)
    rhs = factorial(ell) * pfaffian(g.T)
    return lhs, rhs


# ---------------------------------------------------------------------------
# complex plane

def gauss_hermite_plane(nodes_per_axis: int, center: complex = 0j) -> MeasureSpace:
    """Tensor Gauss-Hermite rule for the weight exp(-|z - center|^2) dx dy.

    Exact for integrands polynomial in x and y of degree < 2 nodes_per_axis
    in each variable.
    """
    if nodes_per_axis < 1:
        raise ValueError("nodes_per_axis must be >= 1")
    x, w = np.polynomial.hermite.hermgauss(nodes_per_axis)
    xx, yy = np.meshgrid(x, x, indexing="ij")
    ww = np.outer(w, w)
    z = (xx + 1j * yy).ravel() + complex(center)
    return MeasureSpace(z, ww.ravel().astype(complex))


def monomial_coefficients(n: int) -> list[list]:
    return [[1 if k == j else 0 for k in range(j + 1)] for j in range(n)]


def _polyval(coeffs, z):
    acc = np.zeros_like(z, dtype=complex)
    for c in reversed(list(coeffs)):
        acc = acc * z + complex(c)
    return acc


def ginibre_kernel(n: int, mu, space: MeasureSpace, coefficients=None) -> KernelInstance:
    """Complex-plane kernel Q_n(z, w) = q(z) mu q(w)^T in (X, m) form.

    ``phi^+_j(z) = q_j(z)`` and ``phi^-_j(z) = q_j(conj z)``, where
    ``coefficients[j]`` lists q_j's coefficients from the constant term
    up; the default is q_j(z) = z^j.
    """
    pts = np.asarray(space.points)
    if not np.iscomplexobj(pts):
        raise TypeError("ginibre_kernel needs a measure space over complex points")
    if coefficients is None:
        coefficients = monomial_coefficients(n)
    if len(coefficients) != n:
        raise ValueError(f"expected {n} polynomials, got {len(coefficients)}")
    mu = skew(np.asarray(mu, dtype=complex), exact=False)
    if mu.shape != (n, n):
        raise ValueError(f"mu must be {n}x{n}")
    plus = np.stack([_polyval(c, pts) for c in coefficients], axis=1).reshape(len(pts), n)
    minus = np.stack([_polyval(c, np.conj(pts)) for c in coefficients], axis=1).reshape(len(pts), n)
    return KernelInstance(mu, BasisTable(plus, minus), MeasureSpace(pts, np.asarray(space.weights, dtype=complex)))


# ---------------------------------------------------------------------------
# random exact instances

def random_space(points: int, seed: int) -> MeasureSpace:
    rng = np.random.default_rng(seed)
    w = [Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 4))) for _ in range(points)]
    return MeasureSpace.discrete(list(range(points)), w)


def random_kernel(n: int, points: int, seed: int, entry_range: int = 3, invertible: bool = False,
                  max_denominator: int = 1) -> KernelInstance:
    """Seeded exact instance: integer tables (rational if max_denominator > 1), positive rational weights."""
    if max_denominator == 1:
        rng = np.random.default_rng([seed, 1])
        plus = rng.integers(-entry_range, entry_range, size=(points, n), endpoint=True)
        minus = rng.integers(-entry_range, entry_range, size=(points, n), endpoint=True)
        plus = as_matrix(plus.reshape(points, n), exact=True)
        minus = as_matrix(minus.reshape(points, n), exact=True)
    else:
        plus = random_matrix(points, n, 2 * seed + 1, entry_range, max_denominator)
        minus = random_matrix(points, n, 2 * seed + 2, entry_range, max_denominator)
    if invertible:
        mu = random_invertible_skew(n, seed, entry_range, max_denominator)
    else:
        mu = random_skew(n, seed, entry_range, max_denominator)
    return KernelInstance(mu, BasisTable(plus, minus), random_space(points, seed))


# ---------------------------------------------------------------------------
# JSON

def space_from_json(obj) -> MeasureSpace:
    """Parse ``{"points": [...], "weights": [...]}``; ``[re, im]`` pairs are complex."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    pts = [complex(*p) if isinstance(p, (list, tuple)) else p for p in obj["points"]]
    weights = [to_scalar(w) for w in obj["weights"]]
    return MeasureSpace.discrete(pts, weights)


def space_to_json(space: MeasureSpace) -> dict:
    def enc(v):
        if isinstance(v, (complex, np.complexfloating)):
            return [float(v.real), float(v.imag)]
        if isinstance(v, Fraction):
            return str(v)
        return v

    return {"points": [enc(p) for p in space.points], "weights": [enc(w) for w in space.weights]}
