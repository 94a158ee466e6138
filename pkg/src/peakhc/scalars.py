"""Exact scalars: arbitrary-precision rationals extended by a square root of -1.

All module-theoretic linear algebra in this package runs over Q(i), because
the even idempotents that split induced simple supermodules involve sqrt(-1).
``GaussianRational`` keeps both components as ``fractions.Fraction`` and mixes
freely with ``int`` and ``Fraction`` in arithmetic expressions.  Instances are
immutable by convention and hashable.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["GaussianRational", "as_gauss", "GAUSS_ZERO", "GAUSS_ONE", "GAUSS_I"]

_F0 = Fraction(0)


def _frac(x) -> Fraction:
    if type(x) is Fraction:
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    raise TypeError("expected an exact rational, got %r" % (x,))


class GaussianRational:
    """An element re + im*i of Q(i), exact and immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o.im and not self.im:
            return GaussianRational(self.re * o.re)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o.im:
            return GaussianRational(self.re / o.re, self.im / o.re)
        nrm = o.re * o.re + o.im * o.im
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / nrm,
            (self.im * o.re - self.re * o.im) / nrm,
        )

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- predicates / comparisons ------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        # agrees with hash(int/Fraction) when the value is real
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_rational(self) -> bool:
        return not self.im

    def rational(self) -> Fraction:
        if self.im:
            raise ValueError("value %s has a nonzero imaginary part" % self)
        return self.re

    # -- display -------------------------------------------------------------

    def __repr__(self):
        return "GaussianRational(%r, %r)" % (str(self.re), str(self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return "%s%s%s" % (self.re, sign, _imag_str(abs(self.im)))


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return "%si" % im


def _coerce(x):
    if type(x) is GaussianRational:
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return None


def as_gauss(x) -> GaussianRational:
    """Promote an int / Fraction / GaussianRational to a GaussianRational."""
    g = _coerce(x)
    if g is None:
        raise TypeError("cannot interpret %r as a Gaussian rational" % (x,))
    return g


GAUSS_ZERO = GaussianRational(0)
GAUSS_ONE = GaussianRational(1)
GAUSS_I = GaussianRational(0, 1)
