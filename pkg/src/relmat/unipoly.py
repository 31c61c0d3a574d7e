"""Dense univariate polynomials with exact coefficients.

Coefficients may be ``Fraction`` (the common case: reliability polynomials in
p, denominators in z at fixed rho) or ``MPoly`` (z-polynomials whose
coefficients still carry p and rho).  Coefficients are stored lowest degree
first and the leading coefficient is nonzero unless the polynomial is zero.

The rational-coefficient layer also provides the exact gcd (subresultant
pseudo-remainder sequence on denominator-cleared integer polynomials), the
Sylvester resultant, and exact Lagrange interpolation; these back the
rational-function reduction and the eliminations used by the zero analysis.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Callable, Sequence

from .mpoly import MPoly


def _is_zero_coeff(c) -> bool:
    if isinstance(c, MPoly):
        return c.is_zero()
    return c == 0


class UniPoly:
    """Immutable dense univariate polynomial, lowest-degree coefficient first."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs: Sequence):
        cs = list(coeffs)
        while cs and _is_zero_coeff(cs[-1]):
            cs.pop()
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("UniPoly is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(var: str) -> "UniPoly":
        return UniPoly(var, ())

    @staticmethod
    def const(var: str, value) -> "UniPoly":
        return UniPoly(var, (value,))

    @staticmethod
    def x(var: str) -> "UniPoly":
        return UniPoly(var, (Fraction(0), Fraction(1)))

    # -- queries ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree with the usual convention deg 0 = -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if not _is_zero_coeff(c):
                return i
        return 0

    # -- arithmetic --------------------------------------------------------------

    def _check(self, other: "UniPoly"):
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.const(self.var, other)
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.var, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.var, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.const(self.var, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            if _is_zero_coeff(other):
                return UniPoly.zero(self.var)
            return UniPoly(self.var, [c * other for c in self.coeffs])
        self._check(other)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero_coeff(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.var, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UniPoly.const(self.var, Fraction(1))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def shift(self, k: int) -> "UniPoly":
        """Multiply by var**k."""
        if self.is_zero():
            return self
        return UniPoly(self.var, (Fraction(0),) * k + self.coeffs)

    def derivative(self) -> "UniPoly":
        return UniPoly(self.var, [self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def reversed(self, degree: int | None = None) -> "UniPoly":
        """z**d * P(1/z) for d = degree (defaults to deg P)."""
        d = self.degree() if degree is None else degree
        if d < self.degree():
            raise ValueError("reversal degree below polynomial degree")
        out = [Fraction(0)] * (d + 1)
        for i, c in enumerate(self.coeffs):
            out[d - i] = c
        return UniPoly(self.var, out)

    def eval(self, value):
        """Horner evaluation; value may be Fraction, mpf/mpc, complex, MFrac..."""
        if not self.coeffs:
            return 0 * value if not isinstance(value, (int, Fraction)) else Fraction(0)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    def eval_poly(self, value: MPoly) -> MPoly:
        """Evaluate with an MPoly argument, producing an MPoly."""
        acc = MPoly.zero()
        for c in reversed(self.coeffs):
            step = c if isinstance(c, MPoly) else MPoly.const(c)
            acc = acc * value + step
        return acc

    def map_coeffs(self, fn: Callable) -> "UniPoly":
        return UniPoly(self.var, [fn(c) for c in self.coeffs])

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if _is_zero_coeff(c):
                continue
            cs = repr(c) if isinstance(c, MPoly) else str(c)
            if i == 0:
                parts.append(f"({cs})" if isinstance(c, MPoly) else cs)
            elif i == 1:
                parts.append(f"({cs})*{self.var}")
            else:
                parts.append(f"({cs})*{self.var}^{i}")
        return " + ".join(parts)


# -- exact division, gcd, resultants over Fraction coefficients ----------------


def divmod_exact(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Euclidean division over the field of rationals."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    a._check(b)
    rem = list(a.coeffs)
    db, lb = b.degree(), b.leading()
    q = [Fraction(0)] * max(0, len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        if rem[i] == 0:
            continue
        f = rem[i] / lb
        q[i - db] = f
        for j, c in enumerate(b.coeffs):
            rem[i - db + j] -= f * c
    return UniPoly(a.var, q), UniPoly(a.var, rem[:db])


def _to_integer_coeffs(a: UniPoly) -> list[int]:
    denom = 1
    for c in a.coeffs:
        denom = denom * c.denominator // int_gcd(denom, c.denominator)
    return [int(c * denom) for c in a.coeffs]


def _int_content(cs: list[int]) -> int:
    g = 0
    for c in cs:
        g = int_gcd(g, abs(c))
    return g or 1


def _prem(u: list[int], v: list[int]) -> list[int]:
    """Pseudo-remainder lc(v)**(deg u - deg v + 1) * u  mod  v (low-first lists)."""
    r = list(u)
    dv, lv = len(v) - 1, v[-1]
    scalings = len(u) - len(v) + 1
    while True:
        while r and r[-1] == 0:
            r.pop()
        dr = len(r) - 1
        if not r or dr < dv:
            break
        coef = r[-1]
        r = [lv * c for c in r]
        for j in range(dv + 1):
            r[dr - dv + j] -= coef * v[j]
        scalings -= 1
    if scalings > 0 and r:
        s = lv**scalings
        r = [c * s for c in r]
    return r


def gcd_unipoly(a: UniPoly, b: UniPoly) -> UniPoly:
    """Exact gcd via the subresultant pseudo-remainder sequence.

    Works on denominator-cleared primitive integer polynomials to avoid
    coefficient blowup; the result is primitive with a positive leading
    coefficient, and is the constant 1 when the inputs are coprime.
    """
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    a._check(b)

    def primitive(cs: list[int]) -> list[int]:
        cont = _int_content(cs)
        out = [c // cont for c in cs]
        if out[-1] < 0:
            out = [-c for c in out]
        return out

    f = primitive(_to_integer_coeffs(a))
    g = primitive(_to_integer_coeffs(b))
    if len(f) < len(g):
        f, g = g, f
    gg, h = 1, 1
    while True:
        delta = (len(f) - 1) - (len(g) - 1)
        r = _prem(f, g)
        if not r:
            cs = primitive(g)
            return UniPoly(a.var, [Fraction(c) for c in cs])
        if len(r) == 1:
            return UniPoly.const(a.var, Fraction(1))
        f, g = g, [c // (gg * h**delta) for c in r]
        gg = f[-1]
        h = gg**delta // h ** (delta - 1) if delta >= 1 else h


def squarefree_decomposition(a: UniPoly) -> list[tuple["UniPoly", int]]:
    """Yun's algorithm: [(factor_i, multiplicity_i)] with prod factor^mult = a
    up to a constant; every factor is squarefree and pairwise coprime."""
    if a.degree() <= 0:
        return []
    da = a.derivative()
    g = gcd_unipoly(a, da)
    if g.degree() == 0:
        return [(a, 1)]
    w, _ = divmod_exact(a, g)
    y, _ = divmod_exact(da, g)
    z = y - w.derivative()
    out = []
    i = 1
    while w.degree() > 0:
        gi = gcd_unipoly(w, z)
        if gi.degree() > 0:
            out.append((gi, i))
        w, _ = divmod_exact(w, gi)
        yz, _ = divmod_exact(z, gi)
        z = yz - w.derivative()
        i += 1
    return out


def resultant(a: UniPoly, b: UniPoly) -> Fraction:
    """Sylvester resultant of two rational-coefficient polynomials.

    Computed as the determinant of the Sylvester matrix by fraction
    Gaussian elimination, which is exact over the rationals.
    """
    a._check(b)
    m, n = a.degree(), b.degree()
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0:
        return a.coeffs[0] ** n
    if n == 0:
        return b.coeffs[0] ** m
    size = m + n
    rows: list[list[Fraction]] = []
    ra = list(reversed(a.coeffs))
    rb = list(reversed(b.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + ra + [Fraction(0)] * (size - i - m - 1))
    for i in range(m):
        rows.append([Fraction(0)] * i + rb + [Fraction(0)] * (size - i - n - 1))
    det = Fraction(1)
    for col in range(size):
        pivot = None
        for r in range(col, size):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        pv = rows[col][col]
        det *= pv
        for r in range(col + 1, size):
            f = rows[r][col] / pv
            if f:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return det


def lagrange_interpolate(var: str, points: Sequence[tuple[Fraction, Fraction]]) -> UniPoly:
    """Exact polynomial through the given (x, y) points (distinct x)."""
    result = UniPoly.zero(var)
    xs = [Fraction(x) for x, _ in points]
    for i, (_, yi) in enumerate(points):
        if yi == 0:
            continue
        num = UniPoly.const(var, Fraction(yi))
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = num * UniPoly(var, (-xj, Fraction(1)))
            denom *= xs[i] - xj
        result = result + num * (Fraction(1) / denom)
    return result
