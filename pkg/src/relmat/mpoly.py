"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a mapping from exponent vectors to ``Fraction`` coefficients.
Everything is immutable and canonical: no zero coefficients are stored, unused
variables are pruned, and the variable tuple follows a single global order

    p < rho < z < x < T < (indexed element symbols: S0 < S1 < ... < a2 < ... < b1 < ...)

so that equal polynomials always have identical representations (and hence
identical JSON serializations).  Exact rational coefficients are plain
``fractions.Fraction`` values; zero is the empty polynomial.

Reliability functions are affine in every individual element symbol, so the
per-element polynomials handled here stay multilinear; the uniform case only
involves the handful of reserved variables above.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Coeff = Fraction
Exponents = tuple  # tuple[int, ...], one entry per variable

_RESERVED = {"p": 0, "rho": 1, "z": 2, "x": 3, "T": 4}
_INDEXED = re.compile(r"([A-Za-z]+?)(\d+)$")


def _var_key(name: str):
    """Sort key implementing the global canonical variable order."""
    if name in _RESERVED:
        return (0, _RESERVED[name], "", 0)
    m = _INDEXED.match(name)
    if m:
        return (1, 0, m.group(1), int(m.group(2)))
    return (2, 0, name, 0)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class MPoly:
    """Immutable multivariate polynomial with Fraction coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[Exponents, Coeff]):
        vs = tuple(variables)
        cleaned = {e: _as_fraction(c) for e, c in terms.items() if c != 0}
        # prune variables that no term actually uses
        if cleaned:
            used = [any(e[i] for e in cleaned) for i in range(len(vs))]
        else:
            used = [False] * len(vs)
        keep = [i for i, u in enumerate(used) if u]
        vs_kept = tuple(vs[i] for i in keep)
        order = sorted(range(len(vs_kept)), key=lambda i: _var_key(vs_kept[i]))
        object.__setattr__(self, "vars", tuple(vs_kept[i] for i in order))
        remap = {}
        for e, c in cleaned.items():
            new_e = tuple(e[keep[i]] for i in order)
            remap[new_e] = c
        object.__setattr__(self, "terms", remap)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # immutability
        raise AttributeError("MPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(value) -> "MPoly":
        v = _as_fraction(value)
        return MPoly((), {(): v} if v else {})

    @staticmethod
    def var(name: str) -> "MPoly":
        return MPoly((name,), {(1,): Fraction(1)})

    @staticmethod
    def zero() -> "MPoly":
        return MPoly((), {})

    @staticmethod
    def one() -> "MPoly":
        return MPoly.const(1)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (raises if variables remain)."""
        if self.vars:
            raise ValueError(f"polynomial is not constant: {self}")
        return self.terms.get((), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    # -- alignment and arithmetic ------------------------------------------

    def _aligned(self, other: "MPoly"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        union = sorted(set(self.vars) | set(other.vars), key=_var_key)
        pos = {v: i for i, v in enumerate(union)}
        n = len(union)

        def remap(poly: "MPoly"):
            idx = [pos[v] for v in poly.vars]
            out = {}
            for e, c in poly.terms.items():
                ne = [0] * n
                for i, exp in zip(idx, e):
                    ne[i] = exp
                out[tuple(ne)] = c
            return out

        return tuple(union), remap(self), remap(other)

    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        vs, a, b = self._aligned(other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly(vs, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return MPoly.zero()
            f = _as_fraction(other)
            return MPoly(self.vars, {e: c * f for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        vs, a, b = self._aligned(other)
        out: dict = {}
        if len(b) > len(a):
            a, b = b, a
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e)
                if s is None:
                    out[e] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        out[e] = s
                    else:
                        del out[e]
        return MPoly(vs, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of polynomial by zero")
            return self * (Fraction(1) / _as_fraction(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    # -- substitution and evaluation ----------------------------------------

    def substitute(self, bindings: Mapping[str, Union[int, Fraction, "MPoly"]]) -> "MPoly":
        """Substitute exactly; values may be rationals or polynomials.

        Bindings for variables the polynomial does not use are ignored, so the
        same binding map can be applied across a mixed coefficient list.  A
        full binding yields a constant polynomial.
        """
        bound = {}
        for name, val in bindings.items():
            if name in self.vars:
                bound[name] = val if isinstance(val, MPoly) else MPoly.const(val)
        result = MPoly.zero()
        pow_cache: dict = {}
        for e, c in self.terms.items():
            term = MPoly.const(c)
            for i, name in enumerate(self.vars):
                if not e[i]:
                    continue
                if name in bound:
                    key = (name, e[i])
                    if key not in pow_cache:
                        pow_cache[key] = bound[name] ** e[i]
                    term = term * pow_cache[key]
                else:
                    term = term * MPoly((name,), {(e[i],): Fraction(1)})
            result = result + term
        return result

    def eval_numeric(self, values: Mapping[str, object]):
        """Evaluate with arbitrary numeric types (Fraction, mpf, mpc, float)."""
        total = None
        for e, c in sorted(self.terms.items()):
            term = c
            for i, name in enumerate(self.vars):
                if e[i]:
                    term = term * values[name] ** e[i]
            total = term if total is None else total + term
        return 0 if total is None else total

    def coefficient_of(self, name: str, k: int) -> "MPoly":
        """The coefficient of name**k, a polynomial in the remaining variables."""
        if name not in self.vars:
            return self if k == 0 else MPoly.zero()
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1 :]
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + e[i + 1 :]] = c
        return MPoly(rest, out)

    def divide_by_monomial(self, name: str, k: int = 1) -> "MPoly":
        """Exact division by name**k; raises if any term lacks the factor."""
        if k == 0:
            return self
        if name not in self.vars:
            raise ValueError(f"polynomial has no factor {name}**{k}")
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] < k:
                raise ValueError(f"polynomial has no factor {name}**{k}")
            out[e[:i] + (e[i] - k,) + e[i + 1 :]] = c
        return MPoly(self.vars, out)

    # -- canonical serialization ---------------------------------------------

    def sorted_terms(self):
        """Terms in graded-lexicographic order (total degree, then exponents)."""
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]))

    def to_json_obj(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [[list(e), f"{c.numerator}/{c.denominator}"] for e, c in self.sorted_terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @staticmethod
    def from_json_obj(obj: dict) -> "MPoly":
        vs = tuple(obj["vars"])
        terms = {}
        for e, c in obj["terms"]:
            terms[tuple(e)] = Fraction(c)
        return MPoly(vs, terms)

    @staticmethod
    def from_json(text: str) -> "MPoly":
        return MPoly.from_json_obj(json.loads(text))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            if c != 1 or not any(e):
                factors.append(str(c))
            for i, name in enumerate(self.vars):
                if e[i] == 1:
                    factors.append(name)
                elif e[i] > 1:
                    factors.append(f"{name}^{e[i]}")
            parts.append("*".join(factors))
        return " + ".join(parts)


P = MPoly.var("p")
RHO = MPoly.var("rho")
Z = MPoly.var("z")
X = MPoly.var("x")
TSYM = MPoly.var("T")
ONE = MPoly.one()


def sym(name: str) -> MPoly:
    """A single-symbol polynomial (element reliabilities like S3, a2, b1)."""
    return MPoly.var(name)
