"""Arbitrary-precision complex values with explicit, caller-chosen precision.

Thin wrapper over mpmath.  Every BigComplex records the binary precision it
was computed at, and operations never silently change it: combining values is
done inside an explicit precision context (``workprec``).  Polynomial
evaluation returns a rigorous forward error bound using the classical Horner
running-error estimate |computed - exact| <= gamma_{2n} * sum |c_i| |x|^i.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp


@contextmanager
def workprec(bits: int):
    with mp.workprec(bits):
        yield mp.mp


def frac_to_mpf(value: Fraction, bits: int) -> mp.mpf:
    with mp.workprec(bits):
        return mp.mpf(value.numerator) / mp.mpf(value.denominator)


@dataclass(frozen=True)
class BigComplex:
    real: mp.mpf
    imag: mp.mpf
    precision_bits: int

    @staticmethod
    def make(value, bits: int) -> "BigComplex":
        with mp.workprec(bits):
            if isinstance(value, BigComplex):
                z = mp.mpc(value.real, value.imag)
            elif isinstance(value, Fraction):
                z = mp.mpc(mp.mpf(value.numerator) / mp.mpf(value.denominator))
            else:
                z = mp.mpc(value)
            return BigComplex(z.real, z.imag, bits)

    def to_mpc(self) -> mp.mpc:
        return mp.mpc(self.real, self.imag)

    def __abs__(self) -> mp.mpf:
        with mp.workprec(self.precision_bits):
            return abs(self.to_mpc())

    def conjugate(self) -> "BigComplex":
        return BigComplex(self.real, -self.imag, self.precision_bits)

    def decimal_str(self, digits: int | None = None) -> tuple[str, str]:
        dps = digits or mp.prec_to_dps(self.precision_bits)
        return (mp.nstr(self.real, dps), mp.nstr(self.imag, dps))


def bigfloat_eval(coeffs, at: BigComplex):
    """Horner-evaluate a numeric-coefficient polynomial at a BigComplex point.

    ``coeffs`` is lowest-first (Fraction or mpmath values).  Returns
    (value: BigComplex, error_bound: mpf) where the bound covers all rounding
    committed during the evaluation at the point's working precision.
    """
    bits = at.precision_bits
    with mp.workprec(bits):
        x = at.to_mpc()
        ax = abs(x)

        def conv(c):
            if isinstance(c, Fraction):
                return mp.mpf(c.numerator) / mp.mpf(c.denominator)
            return mp.mpc(c) if isinstance(c, complex) else c

        cs = [conv(c) for c in coeffs]
        if not cs:
            return BigComplex.make(0, bits), mp.mpf(0)
        acc = mp.mpc(cs[-1])
        amag = abs(acc)
        for c in reversed(cs[:-1]):
            acc = acc * x + c
            amag = amag * ax + abs(c)
        n = len(cs) - 1
        u = mp.mpf(2) ** (1 - bits)
        k = 2 * max(n, 1)
        gamma = (k * u) / (1 - k * u)
        bound = gamma * amag
        return BigComplex(acc.real, acc.imag, bits), bound
