"""Dense polynomials / truncated power series in a formal variable tau."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

REL_TOL = 1e-8
ABS_TOL = 1e-10


def scalars_close(a, b, rel: float = REL_TOL, abs_: float = ABS_TOL) -> bool:
    """Exact equality for rationals, mixed relative/absolute test otherwise."""
    if isinstance(a, (Fraction, int)) and isinstance(b, (Fraction, int)):
        return a == b
    a, b = complex(a), complex(b)
    return abs(a - b) <= max(abs_, rel * max(abs(a), abs(b)))


def _is_exact_zero(c) -> bool:
    return isinstance(c, (Fraction, int)) and c == 0


class TauPoly:
    """Polynomial in tau; ``coeffs[k]`` multiplies ``tau**k``.

    Trailing exact zeros are dropped, so two exact polynomials compare
    equal iff their coefficient lists match.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        c = list(coeffs)
        while c and _is_exact_zero(c[-1]):
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def constant(cls, c) -> "TauPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other: "TauPoly") -> "TauPoly":
        n = max(len(self), len(other))
        return TauPoly([self[k] + other[k] for k in range(n)])

    def __sub__(self, other: "TauPoly") -> "TauPoly":
        n = max(len(self), len(other))
        return TauPoly([self[k] - other[k] for k in range(n)])

    def __neg__(self) -> "TauPoly":
        return TauPoly([-c for c in self.coeffs])

    def __mul__(self, other) -> "TauPoly":
        if not isinstance(other, TauPoly):
            return TauPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return TauPoly()
        out = [Fraction(0)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return TauPoly(out)

    __rmul__ = __mul__

    def truncate(self, degree: int) -> "TauPoly":
        return TauPoly(self.coeffs[: degree + 1])

    def padded(self, length: int) -> list:
        return [self[k] for k in range(length)]

    def __call__(self, tau):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * tau + c
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, TauPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def close_to(self, other: "TauPoly", rel: float = REL_TOL, abs_: float = ABS_TOL) -> bool:
        """Coefficient-wise comparison; float tolerance scales with the largest coefficient.

        Coefficients that vanish only through cancellation carry rounding
        error of the size of the whole polynomial, not of themselves.
        """
        n = max(len(self), len(other))
        pairs = [(self[k], other[k]) for k in range(n)]
        if all(isinstance(a, (Fraction, int)) and isinstance(b, (Fraction, int)) for a, b in pairs):
            return self == other
        scale = max((max(abs(complex(a)), abs(complex(b))) for a, b in pairs), default=0.0)
        tol = max(abs_, rel * scale)
        return all(abs(complex(a) - complex(b)) <= tol for a, b in pairs)

    def __repr__(self) -> str:
        return f"TauPoly({list(self.coeffs)!r})"


def mul_trunc(a: TauPoly, b: TauPoly, degree: int) -> TauPoly:
    return (a.truncate(degree) * b.truncate(degree)).truncate(degree)


def exp_series(f: TauPoly, degree: int) -> TauPoly:
    """exp(f) truncated at ``tau**degree``, for f with zero constant term.

    Summed as the finite Taylor series sum_m f**m / m!, which is exact
    after truncation because f**m starts at tau**m.
    """
    if f[0] != 0:
        raise ValueError("exp_series needs a series without constant term")
    f = f.truncate(degree)
    total = TauPoly([Fraction(1)])
    power = TauPoly([Fraction(1)])
    for m in range(1, degree + 1):
        power = mul_trunc(power, f, degree)
        total = total + power * Fraction(1, factorial(m))
    return total.truncate(degree)


def sqrt_series(p: TauPoly, degree: int) -> TauPoly:
    """Square root with constant term +1 of a series with ``p[0] == 1``."""
    if p[0] != 1:
        raise ValueError("sqrt_series needs constant term 1")
    s = [Fraction(1)]
    for k in range(1, degree + 1):
        acc = p[k] - sum((s[i] * s[k - i] for i in range(1, k)), Fraction(0))
        s.append(acc * Fraction(1, 2))
    return TauPoly(s)
