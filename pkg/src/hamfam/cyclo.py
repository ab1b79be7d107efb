"""Exact arithmetic in the cyclotomic field Q(z), z a primitive 8th root of unity.

Elements are stored as c0 + c1*z + c2*z^2 + c3*z^3 with rational coefficients
and the reduction z^4 = -1 always applied.  The field contains i = z^2 and the
fourth roots of -1: the principal one is z = exp(i*pi/4), its odd powers give
the other branches.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


class CycloRat:
    """An element of Q(z) with z^4 = -1, i.e. a0 + a1*z + a2*z^2 + a3*z^3."""

    __slots__ = ("c",)

    def __init__(self, c0: Rational = 0, c1: Rational = 0,
                 c2: Rational = 0, c3: Rational = 0):
        self.c = (Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3))

    @staticmethod
    def _coerce(x) -> "CycloRat":
        if isinstance(x, CycloRat):
            return x
        if isinstance(x, (int, Fraction)):
            return CycloRat(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into CycloRat")

    # -- ring structure ------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        return CycloRat(*(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return CycloRat(*(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return CycloRat(*(-a for a in self.c))

    def __mul__(self, other):
        o = self._coerce(other)
        acc = [Fraction(0)] * 4
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(o.c):
                if not b:
                    continue
                k = i + j
                if k >= 4:
                    acc[k - 4] -= a * b  # z^4 = -1
                else:
                    acc[k] += a * b
        return CycloRat(*acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "CycloRat":
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- field structure -----------------------------------------------

    def galois(self, k: int) -> "CycloRat":
        """Apply the automorphism z -> z^k (k odd)."""
        if k % 2 == 0:
            raise ValueError("Galois automorphisms of Q(z8) need odd k")
        acc = [Fraction(0)] * 4
        for i, a in enumerate(self.c):
            if not a:
                continue
            m = (i * k) % 8
            if m >= 4:
                acc[m - 4] -= a
            else:
                acc[m] += a
        return CycloRat(*acc)

    def inverse(self) -> "CycloRat":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(z8)")
        # product of the nontrivial Galois conjugates; self * conj is the
        # rational field norm
        conj = self.galois(3) * self.galois(5) * self.galois(7)
        norm = self * conj
        assert norm.c[1] == 0 and norm.c[2] == 0 and norm.c[3] == 0
        n0 = norm.c[0]
        return CycloRat(*(a / n0 for a in conj.c))

    # -- predicates & conversions ---------------------------------------

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not (self.c[1] or self.c[2] or self.c[3])

    @property
    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def __complex__(self) -> complex:
        z = cmath.exp(1j * cmath.pi / 4)
        return complex(self.c[0]) + complex(self.c[1]) * z \
            + complex(self.c[2]) * z ** 2 + complex(self.c[3]) * z ** 3

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, CycloRat)):
            return self.c == self._coerce(other).c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return not self.is_zero()

    def __str__(self) -> str:
        parts = []
        for i, a in enumerate(self.c):
            if not a:
                continue
            if i == 0:
                parts.append(str(a))
            else:
                sym = "z" if i == 1 else f"z^{i}"
                mag = abs(a)
                head = sym if mag == 1 else f"{mag}*{sym}"
                if not parts:
                    parts.append(head if a > 0 else "-" + head)
                else:
                    parts.append(("+" if a > 0 else "-") + head)
        return "".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"CycloRat({self})"


ZERO = CycloRat(0)
ONE = CycloRat(1)
ZETA = CycloRat(0, 1)   # exp(i*pi/4); the principal fourth root of -1
IMAG = CycloRat(0, 0, 1)  # i = z^2


def fourth_root_of_minus_one(branch: int = 1) -> CycloRat:
    """Return z^branch for odd branch; each odd power is a 4th root of -1."""
    if branch % 2 == 0:
        raise ValueError("branch must be odd so that the root satisfies x^4 = -1")
    return ZETA ** (branch % 8)
