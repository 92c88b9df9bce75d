"""Scalars, skew-symmetric matrices and Pfaffians.

Matrices are numpy arrays in one of two scalar modes:

* exact: ``dtype=object`` holding :class:`fractions.Fraction` entries,
* float: ``dtype=complex128``.

Index subsets are tuples of 1-based, strictly increasing integers.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from math import prod
from numbers import Complex, Rational

import numpy as np

SKEW_RTOL = 1e-12
ORACLE_MAX_DIM = 12


class SizeLimitError(ValueError):
    """Raised when a brute-force routine is asked for a too-large input."""


class SingularMatrixError(ValueError):
    pass


class NotSkewError(ValueError):
    pass


# ---------------------------------------------------------------------------
# scalars

def to_scalar(x):
    """Coerce ``x`` to an exact Fraction or a Python complex."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, Complex):
        return complex(x)
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def is_exact(a) -> bool:
    return np.asarray(a).dtype == object


def as_matrix(data, exact: bool | None = None) -> np.ndarray:
    """Build a 2-D matrix from nested sequences or an existing array.

    With ``exact=None`` the mode is inferred: exact if every entry is
    rational, float otherwise.
    """
    if isinstance(data, np.ndarray) and data.ndim == 2:
        if exact is None:
            exact = data.dtype == object or np.issubdtype(data.dtype, np.integer)
        if exact:
            if data.dtype == object and all(isinstance(v, Fraction) for v in data.flat):
                return data
            out = np.empty(data.shape, dtype=object)
            for idx, v in np.ndenumerate(data):
                out[idx] = to_scalar(v)
            return out
        return data.astype(complex)

    rows = [list(r) for r in data]
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix rows")
    vals = [[to_scalar(v) for v in r] for r in rows]
    if exact is None:
        exact = all(isinstance(v, Fraction) for r in vals for v in r)
    if exact:
        out = np.empty((len(vals), ncols), dtype=object)
        for i, r in enumerate(vals):
            for j, v in enumerate(r):
                if not isinstance(v, Fraction):
                    raise TypeError(f"entry ({i},{j}) = {v!r} is not rational")
                out[i, j] = v
        return out
    return np.array(vals, dtype=complex).reshape(len(vals), ncols)


def zeros(rows: int, cols: int, exact: bool = True) -> np.ndarray:
    if exact:
        out = np.empty((rows, cols), dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros((rows, cols), dtype=complex)


def identity(n: int, exact: bool = True) -> np.ndarray:
    out = zeros(n, n, exact)
    for i in range(n):
        out[i, i] = Fraction(1) if exact else 1.0
    return out


def skew(a, exact: bool | None = None) -> np.ndarray:
    """Validate ``a`` as a skew-symmetric matrix and return it normalized.

    Exact input must satisfy ``a == -a.T`` on the nose. Float input may
    deviate by at most ``SKEW_RTOL * max|entry|`` and is then replaced by
    ``(a - a.T) / 2``.
    """
    a = as_matrix(a, exact)
    n, m = a.shape
    if n != m:
        raise NotSkewError(f"matrix is {n}x{m}, not square")
    if is_exact(a):
        for i in range(n):
            if a[i, i] != 0:
                raise NotSkewError(f"nonzero diagonal entry at ({i + 1},{i + 1})")
            for j in range(i + 1, n):
                if a[i, j] != -a[j, i]:
                    raise NotSkewError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are not opposite")
        return a
    scale = np.max(np.abs(a)) if a.size else 0.0
    if np.max(np.abs(a + a.T), initial=0.0) > SKEW_RTOL * scale:
        raise NotSkewError("matrix violates antisymmetry beyond tolerance")
    return (a - a.T) / 2


# ---------------------------------------------------------------------------
# index subsets

def check_subset(subset, n: int) -> tuple[int, ...]:
    s = tuple(int(i) for i in subset)
    if any(b <= a for a, b in zip(s, s[1:])):
        raise ValueError(f"index subset {s} is not strictly increasing")
    if s and (s[0] < 1 or s[-1] > n):
        raise IndexError(f"index subset {s} out of range 1..{n}")
    return s


def complement(subset, n: int) -> tuple[int, ...]:
    taken = set(subset)
    return tuple(i for i in range(1, n + 1) if i not in taken)


def element_sum(subset) -> int:
    return sum(subset)


def subsets(n: int, size: int | None = None, even_only: bool = False):
    """Yield subsets of [n], by increasing size then lexicographically."""
    sizes = [size] if size is not None else range(n + 1)
    for k in sizes:
        if even_only and k % 2:
            continue
        yield from itertools.combinations(range(1, n + 1), k)


def submatrix(t, rows, cols) -> np.ndarray:
    """Return the submatrix of ``t`` on 1-based ``rows`` and ``cols``."""
    t = np.asarray(t)
    r = check_subset(rows, t.shape[0])
    c = check_subset(cols, t.shape[1])
    return t[np.ix_([i - 1 for i in r], [j - 1 for j in c])]


def principal(t, subset) -> np.ndarray:
    return submatrix(t, subset, subset)


# ---------------------------------------------------------------------------
# Pfaffians

def _perfect_matchings(items):
    if not items:
        yield ()
        return
    first = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1:]
        for m in _perfect_matchings(rest):
            yield ((first, items[k]),) + m


def _parity(seq) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def pfaffian_oracle(a):
    """Pfaffian as a signed sum over perfect matchings.

    Exponential cost; refuses dimensions above ``ORACLE_MAX_DIM``.
    """
    a = np.asarray(a)
    n = a.shape[0]
    exact = is_exact(a)
    if n % 2:
        return Fraction(0) if exact else 0j
    if n > ORACLE_MAX_DIM:
        raise SizeLimitError(f"pfaffian_oracle is limited to N <= {ORACLE_MAX_DIM}, got {n}")
    total = Fraction(0) if exact else 0j
    for m in _perfect_matchings(tuple(range(n))):
        flat = [v for pair in m for v in pair]
        total += _parity(flat) * prod((a[i, j] for i, j in m), start=Fraction(1) if exact else 1.0)
    return total


def pfaffian(a):
    """Pfaffian by skew Gaussian elimination (Parlett-Reid) with pivoting.

    Works in place on a copy. Each symmetric swap of row/column ``k+1``
    with the pivot row/column flips the sign of the result.
    """
    a = np.array(a, copy=True)
    exact = is_exact(a)
    n = a.shape[0]
    one = Fraction(1) if exact else 1.0 + 0j
    if n % 2:
        return one * 0
    result = one
    for k in range(0, n - 1, 2):
        col = a[k + 1:, k]
        if exact:
            nz = [i for i, v in enumerate(col) if v != 0]
            if not nz:
                return one * 0
            p = k + 1 + nz[0]
        else:
            p = k + 1 + int(np.argmax(np.abs(col)))
            if col[p - k - 1] == 0:
                return one * 0
        if p != k + 1:
            a[[k + 1, p], :] = a[[p, k + 1], :]
            a[:, [k + 1, p]] = a[:, [p, k + 1]]
            result = -result
        piv = a[k, k + 1]
        result = result * piv
        if k + 2 < n:
            tau = a[k, k + 2:] / piv
            v = a[k + 2:, k + 1]
            a[k + 2:, k + 2:] = a[k + 2:, k + 2:] + np.outer(tau, v) - np.outer(v, tau)
    return result


def pfaffian_batch(a: np.ndarray) -> np.ndarray:
    """Vectorized float Pfaffians of a stack of skew matrices ``(..., N, N)``."""
    a = np.array(a, dtype=complex, copy=True)
    n = a.shape[-1]
    batch = a.shape[:-2]
    a = a.reshape((-1, n, n))
    out = np.ones(a.shape[0], dtype=complex)
    if n % 2:
        return np.zeros(batch, dtype=complex)
    rows = np.arange(a.shape[0])
    for k in range(0, n - 1, 2):
        p = k + 1 + np.argmax(np.abs(a[:, k + 1:, k]), axis=1)
        swap = p != k + 1
        if np.any(swap):
            r = rows[swap]
            pp = p[swap]
            tmp = a[r, k + 1, :].copy()
            a[r, k + 1, :] = a[r, pp, :]
            a[r, pp, :] = tmp
            tmp = a[r, :, k + 1].copy()
            a[r, :, k + 1] = a[r, :, pp]
            a[r, :, pp] = tmp
            out[swap] = -out[swap]
        piv = a[:, k, k + 1]
        zero = piv == 0
        out = out * piv
        if k + 2 < n:
            safe = np.where(zero, 1.0, piv)
            tau = a[:, k, k + 2:] / safe[:, None]
            v = a[:, k + 2:, k + 1]
            a[:, k + 2:, k + 2:] += tau[:, :, None] * v[:, None, :] - v[:, :, None] * tau[:, None, :]
    return out.reshape(batch)


# ---------------------------------------------------------------------------
# determinants and inverses

def det(a):
    """Determinant; fraction-free Bareiss elimination for exact input."""
    a = np.asarray(a)
    n, m = a.shape
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    if not is_exact(a):
        return complex(np.linalg.det(a)) if n else 1.0 + 0j
    if n == 0:
        return Fraction(1)
    m_ = [list(r) for r in a]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m_[k][k] == 0:
            for i in range(k + 1, n):
                if m_[i][k] != 0:
                    m_[k], m_[i] = m_[i], m_[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pk = m_[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m_[i][j] = (m_[i][j] * pk - m_[i][k] * m_[k][j]) / prev
        prev = pk
    return sign * m_[n - 1][n - 1]


def inverse(a) -> np.ndarray:
    """Matrix inverse; Gauss-Jordan over Fractions for exact input."""
    a = np.asarray(a)
    n = a.shape[0]
    if not is_exact(a):
        if n and abs(np.linalg.det(a)) == 0:
            raise SingularMatrixError("matrix is singular")
        return np.linalg.inv(a) if n else a.copy()
    x = [list(r) for r in a]
    y = [list(r) for r in identity(n)]
    for i in range(n):
        piv = next((j for j in range(i, n) if x[j][i] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        x[i], x[piv] = x[piv], x[i]
        y[i], y[piv] = y[piv], y[i]
        d = x[i][i]
        x[i] = [v / d for v in x[i]]
        y[i] = [v / d for v in y[i]]
        for j in range(n):
            if j != i and x[j][i] != 0:
                f = x[j][i]
                x[j] = [u - f * v for u, v in zip(x[j], x[i])]
                y[j] = [u - f * v for u, v in zip(y[j], y[i])]
    return as_matrix(y, exact=True).reshape(n, n)


def trace(a):
    a = np.asarray(a)
    if is_exact(a):
        return sum((a[i, i] for i in range(a.shape[0])), Fraction(0))
    return complex(np.trace(a))


# ---------------------------------------------------------------------------
# random instances

def _random_entry(rng, entry_range: int, max_denominator: int) -> Fraction:
    num = int(rng.integers(-entry_range, entry_range, endpoint=True))
    if max_denominator == 1:
        return Fraction(num)
    return Fraction(num, int(rng.integers(1, max_denominator, endpoint=True)))


def random_matrix(rows: int, cols: int, seed: int, entry_range: int = 5, max_denominator: int = 1) -> np.ndarray:
    rng = np.random.default_rng(seed)
    if max_denominator == 1:
        vals = rng.integers(-entry_range, entry_range, size=(rows, cols), endpoint=True)
        return as_matrix(vals.reshape(rows, cols), exact=True)
    out = zeros(rows, cols)
    for i in range(rows):
        for j in range(cols):
            out[i, j] = _random_entry(rng, entry_range, max_denominator)
    return out


def random_skew(dim: int, seed: int, entry_range: int = 5, max_denominator: int = 1) -> np.ndarray:
    """Deterministic skew matrix with entries num/den, |num| <= entry_range, 1 <= den <= max_denominator."""
    rng = np.random.default_rng(seed)
    out = zeros(dim, dim)
    for i in range(dim):
        for j in range(i + 1, dim):
            v = _random_entry(rng, entry_range, max_denominator)
            out[i, j] = v
            out[j, i] = -v
    return out


def random_invertible_skew(dim: int, seed: int, entry_range: int = 5, max_denominator: int = 1) -> np.ndarray:
    """First nonsingular ``random_skew`` found from ``seed`` upwards."""
    if dim % 2:
        raise SingularMatrixError("odd-dimensional skew matrices are singular")
    s = seed
    while True:
        a = random_skew(dim, s, entry_range, max_denominator)
        if pfaffian(a) != 0:
            return a
        s += 1_000_003


# ---------------------------------------------------------------------------
# JSON matrix format

def matrix_from_json(obj) -> np.ndarray:
    """Parse ``{"scalar": "rational"|"complex", "rows": [[...], ...]}``.

    A bare list of rows is read as rational.
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    if isinstance(obj, list):
        obj = {"rows": obj}
    if not isinstance(obj, dict) or "rows" not in obj:
        raise ValueError("matrix JSON must be a list of rows or an object with a 'rows' key")
    mode = obj.get("scalar", "rational")
    if mode not in ("rational", "complex"):
        raise ValueError(f"unknown scalar mode {mode!r}")
    rows = obj["rows"]
    if mode == "rational":
        return as_matrix([[to_scalar(v) for v in r] for r in rows], exact=True)
    conv = [[complex(*v) if isinstance(v, (list, tuple)) else complex(to_scalar(v)) for v in r] for r in rows]
    return as_matrix(conv, exact=False)


def matrix_to_json(a) -> dict:
    a = np.asarray(a)
    if is_exact(a):
        return {"scalar": "rational", "rows": [[str(v) for v in r] for r in a]}
    return {"scalar": "complex", "rows": [[[float(v.real), float(v.imag)] for v in r] for r in a]}


def format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    z = complex(x)
    return f"{z.real:.17g}{z.imag:+.17g}j"
