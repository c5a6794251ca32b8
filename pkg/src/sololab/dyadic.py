"""Exact dyadic rationals ``m * 2**-e``.

Every probability that appears in this package (program weights,
semimeasure values, mixture weights) is a finite sum of powers of two,
so a dedicated type keeps all comparisons exact and all serialized
values integral.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering

__all__ = ["Dyadic", "NonDyadicError", "ZERO", "ONE"]


class NonDyadicError(ValueError):
    """Raised when a value cannot be written as ``m / 2**e``."""


_FRACTION_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")
_POW2_RE = re.compile(r"^\s*(-?\d+)\s*\*\s*2\s*\^\s*-?\s*(\d+)\s*$")


@total_ordering
class Dyadic:
    """A dyadic rational held in canonical form (odd mantissa, or zero with exponent 0)."""

    __slots__ = ("mantissa", "exponent")

    def __init__(self, mantissa: int = 0, exponent: int = 0):
        if exponent < 0:
            mantissa <<= -exponent
            exponent = 0
        if mantissa == 0:
            exponent = 0
        else:
            tz = (mantissa & -mantissa).bit_length() - 1
            shift = min(tz, exponent)
            mantissa >>= shift
            exponent -= shift
        object.__setattr__(self, "mantissa", mantissa)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def pow2(cls, k: int) -> Dyadic:
        """Return ``2**-k``."""
        return cls(1, k)

    @classmethod
    def from_fraction(cls, value) -> Dyadic:
        frac = Fraction(value)
        den = frac.denominator
        if den & (den - 1):
            raise NonDyadicError(f"{value} is not dyadic")
        return cls(frac.numerator, den.bit_length() - 1)

    @classmethod
    def parse(cls, text: str) -> Dyadic:
        """Parse ``"3/16"``, ``"1"`` or ``"3*2^-4"``."""
        m = _POW2_RE.match(text)
        if m:
            return cls(int(m.group(1)), int(m.group(2)))
        m = _FRACTION_RE.match(text)
        if not m:
            raise ValueError(f"cannot parse dyadic value {text!r}")
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ValueError("zero denominator")
        return cls.from_fraction(Fraction(int(m.group(1)), den))

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.exponent)

    def to_pair(self) -> tuple[int, int]:
        return self.mantissa, self.exponent

    def ldexp(self, k: int) -> Dyadic:
        """Return ``self * 2**k``."""
        return Dyadic(self.mantissa, self.exponent - k)

    def binary_expansion(self) -> list[int]:
        """Lengths ``k`` with ``self == sum(2**-k)``, ascending.

        Only defined for values in ``[0, 1]``; ``1`` expands to ``[0]``.
        """
        if self.mantissa < 0 or self > ONE:
            raise ValueError(f"binary expansion needs 0 <= value <= 1, got {self}")
        out = []
        m, e = self.mantissa, self.exponent
        bit = 0
        while m:
            if m & 1:
                out.append(e - bit)
            m >>= 1
            bit += 1
        return sorted(out)

    def _align(self, other: Dyadic) -> tuple[int, int, int]:
        e = max(self.exponent, other.exponent)
        return self.mantissa << (e - self.exponent), other.mantissa << (e - other.exponent), e

    @staticmethod
    def _coerce(other):
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int):
            return Dyadic(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, e = self._align(other)
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, e = self._align(other)
        return Dyadic(a - b, e)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Dyadic(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __neg__(self):
        return Dyadic(-self.mantissa, self.exponent)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.mantissa == other.mantissa and self.exponent == other.exponent
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, _ = self._align(other)
        return a < b

    def __hash__(self):
        return hash(self.to_fraction())

    def __bool__(self):
        return self.mantissa != 0

    def __repr__(self):
        return f"Dyadic({self.mantissa}, {self.exponent})"

    def __str__(self):
        if self.exponent == 0:
            return str(self.mantissa)
        return f"{self.mantissa}/{1 << self.exponent}"

    def __reduce__(self):
        return Dyadic, (self.mantissa, self.exponent)


ZERO = Dyadic(0)
ONE = Dyadic(1)
