"""Exact ground-field scalars: Gaussian rationals a + b*i.

Every verification in this library is an exact identity, so the scalar type
is a field with decidable, canonical equality.  Python's ``Fraction`` keeps
numerator/denominator reduced, which makes structural equality of elements
coincide with mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)

RationalLike = int | Fraction


class Scalar:
    """Immutable Gaussian rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __add__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __mul__(self, other: "Scalar") -> "Scalar":
        b, d = self.im, other.im
        if not b and not d:  # real fast path; most desk scalars are real
            return Scalar(self.re * other.re)
        a, c = self.re, other.re
        return Scalar(a * c - b * d, a * d + b * c)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return self * other.inverse()

    def inverse(self) -> "Scalar":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar(self.re / n, -self.im / n)

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"

    def to_tuple(self) -> tuple[int, int, int, int]:
        """(re_num, re_den, im_num, im_den), the canonical serialized form."""
        return (
            self.re.numerator,
            self.re.denominator,
            self.im.numerator,
            self.im.denominator,
        )

    @classmethod
    def from_tuple(cls, t) -> "Scalar":
        rn, rd, im_n, im_d = t
        return cls(Fraction(rn, rd), Fraction(im_n, im_d))


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def sc(re: RationalLike = 0, im: RationalLike = 0) -> Scalar:
    """Shorthand constructor, handy in tables and tests."""
    return Scalar(re, im)
