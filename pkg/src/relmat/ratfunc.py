"""Rational functions in z and multivariate fractions.

``RationalFunction`` is a numerator/denominator pair of z-polynomials with the
normalization D(0) = 1.  When the coefficients are plain rationals the pair is
reduced by the exact polynomial gcd; with polynomial coefficients (the uniform
(p, rho) generating functions) the pair is kept as constructed and reduction
is the caller's concern (the families treated here are coprime except at the
isolated parameter value checked in the tests).

``MFrac`` is a small fraction field over MPoly used where exact division
leaves the polynomial ring: the star values of the triangle-star
transformation and the partial-fraction coefficients at symbolic (p, rho).
Equality is decided by cross-multiplication, so no multivariate gcd is needed;
only rational content and shared monomial factors are cancelled to keep the
representations small.
"""

from __future__ import annotations

from fractions import Fraction

from .mpoly import MPoly
from .unipoly import UniPoly, divmod_exact, gcd_unipoly


class PoleAtOriginError(ZeroDivisionError):
    pass


def _is_fraction_poly(p: UniPoly) -> bool:
    return all(isinstance(c, (int, Fraction)) for c in p.coeffs)


class RationalFunction:
    """N(z)/D(z) with D(0) = 1 after normalization."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly, reduce: bool = True):
        if num.var != den.var:
            raise ValueError("numerator and denominator variable mismatch")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce and _is_fraction_poly(num) and _is_fraction_poly(den) and not num.is_zero():
            g = gcd_unipoly(num, den)
            if g.degree() > 0:
                num, _ = divmod_exact(num, g)
                den, _ = divmod_exact(den, g)
        d0 = den[0]
        d0_zero = d0.is_zero() if isinstance(d0, MPoly) else d0 == 0
        if not d0_zero:
            if isinstance(d0, MPoly):
                if d0.is_constant():
                    inv = Fraction(1) / d0.constant_value()
                    num = num.map_coeffs(lambda c: c * inv)
                    den = den.map_coeffs(lambda c: c * inv)
            else:
                inv = Fraction(1) / Fraction(d0)
                num = num * inv
                den = den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RationalFunction is immutable")

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __repr__(self):
        return f"({self.num!r}) / ({self.den!r})"

    def series(self, order: int) -> list:
        """Maclaurin coefficients of z^0..z^order, exact.

        Uses the linear recurrence c_k = n_k - sum_{j>=1} d_j c_{k-j}; raises
        PoleAtOriginError when D(0) = 0.
        """
        d0 = self.den[0]
        d0_bad = d0.is_zero() if isinstance(d0, MPoly) else d0 == 0
        if d0_bad:
            raise PoleAtOriginError("pole at origin")
        out = []
        for k in range(order + 1):
            c = self.num[k]
            for j in range(1, min(k, self.den.degree()) + 1):
                c = c - self.den[j] * out[k - j]
            out.append(c)
        return out

    def to_json_obj(self) -> dict:
        def coeff_obj(c):
            if isinstance(c, MPoly):
                return c.to_json_obj()
            c = Fraction(c)
            return f"{c.numerator}/{c.denominator}"

        return {
            "var": self.num.var,
            "N": [coeff_obj(c) for c in self.num.coeffs],
            "D": [coeff_obj(c) for c in self.den.coeffs],
        }


def series_expand(f: RationalFunction, order: int) -> list:
    return f.series(order)


class MFrac:
    """Fraction of two MPoly values; equality via cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, MPoly):
            num = MPoly.const(num)
        if den is None:
            den = MPoly.one()
        elif not isinstance(den, MPoly):
            den = MPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in MFrac")
        num, den = self._cheap_reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("MFrac is immutable")

    @staticmethod
    def _cheap_reduce(num: MPoly, den: MPoly):
        if num.is_zero():
            return MPoly.zero(), MPoly.one()
        if den.is_constant():
            inv = Fraction(1) / den.constant_value()
            return num * inv, MPoly.one()
        # cancel rational content
        coeffs = list(num.terms.values()) + list(den.terms.values())
        from math import gcd as _g

        cnum = 0
        cden = 1
        for c in coeffs:
            cnum = _g(cnum, abs(c.numerator))
            cden = cden * c.denominator // _g(cden, c.denominator)
        scale = Fraction(cden, cnum) if cnum else Fraction(1)
        num, den = num * scale, den * scale
        # normalize the sign of the denominator's first canonical term
        lead = den.sorted_terms()[0][1]
        if lead < 0:
            num, den = -num, -den
        return num, den

    def _coerce(self, other) -> "MFrac":
        if isinstance(other, MFrac):
            return other
        return MFrac(other)

    def __add__(self, other):
        o = self._coerce(other)
        return MFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return MFrac(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        return MFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero MFrac")
        return MFrac(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return MFrac(self.den, self.num) ** (-k)
        return MFrac(self.num**k, self.den**k)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MPoly)):
            other = MFrac(other)
        if not isinstance(other, MFrac):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("MFrac is unhashable (no canonical reduced form)")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def as_mpoly(self) -> MPoly:
        """Return the numerator when the denominator is 1, else raise."""
        if self.den == MPoly.one():
            return self.num
        raise ValueError("MFrac has a nontrivial denominator")

    def substitute(self, bindings) -> "MFrac":
        return MFrac(self.num.substitute(bindings), self.den.substitute(bindings))

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"
