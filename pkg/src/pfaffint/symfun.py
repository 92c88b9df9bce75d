"""Elementary symmetric functions written through power sums.

Two independent evaluators are provided, a literal sum over partitions in
frequency representation and Newton's recursion, plus the exponential
generating identity used to cross-check both.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .series import TauPoly, exp_series


class MissingPowerSumError(IndexError):
    pass


@dataclass(frozen=True)
class Partition:
    """Partition as ``((part, multiplicity), ...)`` with decreasing parts."""

    parts: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        values = [v for v, _ in self.parts]
        if any(v < 1 for v in values) or any(m < 1 for _, m in self.parts):
            raise ValueError(f"invalid partition {self.parts}")
        if any(b >= a for a, b in zip(values, values[1:])):
            raise ValueError(f"parts must be distinct and decreasing: {self.parts}")

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "Partition":
        freq: dict[int, int] = {}
        for p in parts:
            freq[p] = freq.get(p, 0) + 1
        return cls(tuple(sorted(freq.items(), reverse=True)))

    @property
    def size(self) -> int:
        return sum(v * m for v, m in self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def expanded(self) -> tuple[int, ...]:
        return tuple(v for v, m in self.parts for _ in range(m))

    def __str__(self) -> str:
        if not self.parts:
            return "()"
        return "(" + " ".join(f"{v}^{m}" for v, m in self.parts) + ")"


def _descending(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _descending(n - first, first):
            yield (first,) + rest


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n``, reverse-lexicographic (largest part first)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition.from_parts(p) for p in _descending(n, n)]


def _check(ell: int, p: Sequence):
    if ell < 0:
        raise ValueError("index must be non-negative")
    if len(p) < ell:
        raise MissingPowerSumError(f"power sum p_{len(p) + 1} is missing (need p_1..p_{ell})")


def elementary_from_powersums(ell: int, p: Sequence):
    """e_ell from power sums ``p = (p_1, p_2, ...)`` via the partition sum."""
    _check(ell, p)
    total = Fraction(0)
    for lam in partitions_of(ell):
        term = Fraction(1)
        for part, mult in lam.parts:
            term = term * Fraction(1, factorial(mult)) * (Fraction(-1, part) * p[part - 1]) ** mult
        total = total + term
    return total if ell % 2 == 0 else -total


def elementary_newton(ell: int, p: Sequence):
    """e_ell by ``k e_k = sum_{j=1}^k (-1)^(j-1) p_j e_(k-j)``."""
    _check(ell, p)
    e = [Fraction(1)]
    for k in range(1, ell + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            term = p[j - 1] * e[k - j]
            acc = acc + (term if j % 2 else -term)
        e.append(acc * Fraction(1, k))
    return e[ell]


def elementary_sequence(degree: int, p: Sequence) -> list:
    """[e_0, ..., e_degree] by Newton's recursion."""
    return [elementary_newton(k, p) for k in range(degree + 1)]


def log_generating_series(p: Sequence, degree: int) -> TauPoly:
    """sum_{j=1}^{degree} (-1)^(j-1) p_j tau^j / j."""
    _check(degree, p)
    return TauPoly([Fraction(0)] + [Fraction((-1) ** (j - 1), j) * p[j - 1] for j in range(1, degree + 1)])


def generating_series_check(p: Sequence, degree: int) -> tuple[TauPoly, TauPoly]:
    """Both sides of sum_l tau^l e_l = exp(sum_j (-1)^(j-1) tau^j p_j / j).

    The left side uses the partition sum, the right side the formal
    exponential; both truncated at ``tau**degree``.
    """
    _check(degree, p)
    lhs = TauPoly([elementary_from_powersums(k, p) for k in range(degree + 1)])
    rhs = exp_series(log_generating_series(p, degree), degree)
    return lhs, rhs


def power_sums_of(values: Sequence, count: int) -> list:
    return [sum((x ** j for x in values), Fraction(0)) for j in range(1, count + 1)]


def elementary_of_values(values: Sequence, degree: int) -> list:
    """Coefficients of prod(1 + tau x_i), expanded directly (brute force)."""
    poly = TauPoly([Fraction(1)])
    for x in values:
        poly = poly * TauPoly([Fraction(1), x])
    return poly.padded(degree + 1)


def zonal_one_column(ell: int, p: Sequence):
    """Z_(1^ell) = ell! e_ell."""
    return factorial(ell) * elementary_newton(ell, p)


__all__ = [
    "MissingPowerSumError",
    "Partition",
    "partitions_of",
    "elementary_from_powersums",
    "elementary_newton",
    "elementary_sequence",
    "generating_series_check",
    "log_generating_series",
    "power_sums_of",
    "elementary_of_values",
    "zonal_one_column",
]
