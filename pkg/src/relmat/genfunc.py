"""Generating functions, partial fractions and closed forms (uniform case).

With every edge at reliability p and every node at rho, Rel2 as a function of
the size index n has a rational generating function G(z) = N(z)/D(z) whose
denominator is the reversed characteristic polynomial of the stage matrix,
D(z) = z^d P_carac(1/z).  The numerator emerges by multiplying the first
sequence values by D(z) and checking that the tail vanishes; a nonvanishing
tail means the sequence does not satisfy the recursion (wrong denominator or
wrong seeds) and is reported as such.

Partial fractions turn G into a closed form sum alpha_i(n) lambda_i^n, with a
degree-one polynomial alpha(n) exactly where a denominator root is repeated
(the fan's double eigenvalue p(1-p) rho).

The ladder generating function is returned with the simplified numerator
rho (1 - p(1-p) rho z + p^3 (1-p) rho^2 z^2): it reproduces the n = 0 and
n = 1 seeds directly, while the raw form that factors out p rho^2 z^2 (same
coefficients for n >= 2) is available behind ``raw=True``.

All-terminal indexing: the matrix product value R(n) (validated against the
brute-force oracle; triangle at n = 2) satisfies R(n) = (zeta_+^n -
zeta_-^n)/sqrt(5 - 8p + 4p^2).  The conventional generating function
p z^2 / (1 - p(3-2p) z + p^2(1-p) z^2) therefore generates the sequence
shifted by one stage, sum_{n>=2} R(n-1) z^n; ``allterm_genfunc`` exposes both
the conventional pair and the unshifted one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .bigfloat import frac_to_mpf
from .mpoly import MPoly
from .ratfunc import MFrac, RationalFunction
from .transfer import (
    allterm_uniform_matrix,
    bc_uniform_matrix,
    charpoly,
    fan_uniform_matrix,
    rel2_uniform_sweep,
    relA_uniform_sweep,
)
from .unipoly import UniPoly


class RecursionMismatchError(ValueError):
    pass


def denominator_from_charpoly(cp: UniPoly) -> UniPoly:
    """D(z) = z^d P(1/z) for a monic characteristic polynomial P of degree d."""
    d = cp.degree()
    lead = cp.coeffs[-1]
    is_monic = lead == MPoly.one() if isinstance(lead, MPoly) else lead == 1
    if not is_monic:
        raise ValueError("characteristic polynomial must be monic")
    return UniPoly("z", tuple(reversed(cp.coeffs)))


def numerator_fit(seq: list, den: UniPoly) -> UniPoly:
    """Recover N(z) from sequence values and a known denominator.

    N = (sum seq_n z^n) * D truncated below len(seq); every higher convolution
    coefficient within reach must vanish, otherwise the sequence does not
    satisfy the recursion encoded by D.
    """
    d = den.degree()
    if len(seq) <= 2 * d:
        raise ValueError(f"need more than {2 * d} sequence values to fit and verify")
    conv = []
    for k in range(len(seq)):
        acc = seq[k] * den[0]
        for j in range(1, min(k, d) + 1):
            acc = acc + den[j] * seq[k - j]
        conv.append(acc)
    tail_start = len(seq) - d
    for k in range(tail_start, len(seq)):
        bad = conv[k].is_zero() is False if isinstance(conv[k], MPoly) else conv[k] != 0
        if bad:
            raise RecursionMismatchError(
                f"sequence does not satisfy the recursion (z^{k} residual {conv[k]!r})"
            )
    n_coeffs = conv[:tail_start]
    while n_coeffs:
        last = n_coeffs[-1]
        if (last.is_zero() if isinstance(last, MPoly) else last == 0):
            n_coeffs.pop()
        else:
            break
    return UniPoly("z", n_coeffs)


def _rho_value(rho):
    if rho is None:
        return MPoly.var("rho")
    return rho


def bc_genfunc(rho=None, raw: bool = False) -> RationalFunction:
    """Ladder generating function; rho=None keeps rho symbolic.

    ``raw=True`` returns the form that subtracts the n = 0, 1 seeds and
    factors p rho^2 z^2 out of the numerator.
    """
    p = MPoly.var("p")
    r = _rho_value(rho)
    cp = charpoly(bc_uniform_matrix(p, r))
    den = denominator_from_charpoly(cp)
    # degree drops when rho = 1 (the z^4 coefficient vanishes)
    seq = rel2_uniform_sweep("bc", 2 * den.degree() + 2, p, r)
    num = numerator_fit(seq, den)
    if not raw:
        return RationalFunction(num, den, reduce=False)
    head = UniPoly("z", (r if isinstance(r, MPoly) else MPoly.const(r), p * r * r))
    raw_num = num - head * den
    return RationalFunction(raw_num, den, reduce=False)


def fan_genfunc(rho=None) -> RationalFunction:
    p = MPoly.var("p")
    r = _rho_value(rho)
    cp = charpoly(fan_uniform_matrix(p, r))
    den = denominator_from_charpoly(cp)
    seq = rel2_uniform_sweep("fan", 2 * den.degree() + 2, p, r)
    num = numerator_fit(seq, den)
    return RationalFunction(num, den, reduce=False)


def allterm_genfunc(shifted: bool = True) -> RationalFunction:
    """All-terminal generating function at uniform edge reliability p.

    shifted=True: the conventional pair (N = p z^2, D from the 2x2 stage
    matrix), generating R(n-1) at z^n for n >= 2.  shifted=False: the
    generating function of R(n) itself (seeds R(0) = 1, R(1) = p).
    """
    p = MPoly.var("p")
    cp = charpoly(allterm_uniform_matrix(p))
    den = denominator_from_charpoly(cp)
    if shifted:
        num = UniPoly("z", (MPoly.zero(), MPoly.zero(), p))
        return RationalFunction(num, den, reduce=False)
    seq = relA_uniform_sweep(2 * den.degree() + 2, p)
    num = numerator_fit(seq, den)
    return RationalFunction(num, den, reduce=False)


# -- partial fractions ------------------------------------------------------------


@dataclass(frozen=True)
class ClosedForm:
    """Sum of alpha * n^ndeg * lambda^n terms (ndeg in {0, 1})."""

    terms: tuple  # of (alpha, lam, ndeg)

    def evaluate(self, n: int):
        total = None
        for alpha, lam, ndeg in self.terms:
            t = alpha * (n**ndeg) * lam**n
            total = t if total is None else total + t
        return total

    def degree_one_bases(self) -> tuple:
        return tuple(lam for _, lam, ndeg in self.terms if ndeg == 1)


def _synthetic_divide(den: UniPoly, lam) -> UniPoly:
    """Division of D by (1 - lam z); the remainder must (numerically) vanish."""
    d = den.degree()
    q = [den[0]]
    for i in range(1, d):
        q.append(den[i] + lam * q[i - 1])
    residual = den[d] + lam * q[d - 1]
    if isinstance(residual, MPoly):
        bad = not residual.is_zero()
    elif isinstance(residual, MFrac):
        bad = not residual.is_zero()
    elif isinstance(residual, (Fraction, int)):
        bad = residual != 0
    else:  # mpmath value from certified numeric roots
        scale = max(abs(_to_mpc(c)) for c in den.coeffs)
        bad = abs(residual) > scale * mp.mpf(2) ** (-mp.mp.prec // 2)
    if bad:
        raise ValueError(f"1 - ({lam!r}) z does not divide the denominator")
    return UniPoly(den.var, q)


def _lift(value):
    if isinstance(value, MPoly):
        return MFrac(value)
    return value


def partial_fractions(f: RationalFunction, roots) -> ClosedForm:
    """Decompose N/D with D = prod (1 - lam z)^m into a closed form.

    ``roots`` lists (lam, multiplicity) pairs covering D exactly; lam may be
    Fraction, MPoly (then coefficients become MFrac), or an mpmath number for
    numerically-certified roots.  Multiplicities above 2 are not needed by the
    families treated here and are rejected.
    """
    lams = [( _lift(lam), m) for lam, m in roots]
    exact = all(isinstance(lam, (Fraction, MFrac, int)) for lam, _ in lams)
    num, den = f.num, f.den
    if any(isinstance(c, MPoly) for c in num.coeffs + den.coeffs):
        num = num.map_coeffs(_lift)
        den = den.map_coeffs(_lift)
    if not exact:
        num = num.map_coeffs(lambda c: _to_mpc(c))
        den = den.map_coeffs(lambda c: _to_mpc(c))
        lams = [(_to_mpc(lam), m) for lam, m in lams]
    terms = []
    for lam, mult in lams:
        zero_lam = lam == 0 if not isinstance(lam, MFrac) else lam.is_zero()
        if zero_lam:
            continue  # eigenvalue 0 contributes nothing for n beyond the seeds
        cofactor = den
        for _ in range(mult):
            cofactor = _synthetic_divide(cofactor, lam)
        w = 1 / lam if not isinstance(lam, MFrac) else MFrac(lam.den, lam.num)
        if mult == 1:
            alpha = num.eval(w) / cofactor.eval(w)
            terms.append((alpha, lam, 0))
        elif mult == 2:
            nw, dw = num.eval(w), cofactor.eval(w)
            npw, dpw = num.derivative().eval(w), cofactor.derivative().eval(w)
            beta = nw / dw  # coefficient of 1/(1 - lam z)^2
            alpha = -(npw * dw - nw * dpw) / (dw * dw) / lam
            # (n+1) lam^n from the square term splits into n-degree 0 and 1
            terms.append((alpha + beta, lam, 0))
            terms.append((beta, lam, 1))
        else:
            raise ValueError("multiplicity > 2 not supported")
    return ClosedForm(tuple(terms))


def _to_mpc(c):
    if isinstance(c, Fraction):
        return mp.mpf(c.numerator) / mp.mpf(c.denominator)
    return mp.mpc(c) if not isinstance(c, (mp.mpf, mp.mpc)) else c


# -- explicit closed forms ----------------------------------------------------------


def closed_form_fan(n: int, p: Fraction, rho: Fraction) -> Fraction:
    """Exact fan Rel2 from the explicit three-part expression.

    The n -> infinity limit is the third part, p^2 rho^3 / (1 - p(1-p) rho)^2:
    the hub path survives with its reliability enhanced by the double pole.
    """
    p, rho = Fraction(p), Fraction(rho)
    q = p * (1 - p) * rho
    c = 1 - p * rho * (2 - p)
    part1 = (p * (1 - p)) ** n * rho ** (n + 2) * (
        n * p * c / (1 - q) + (c + p**2 * (1 - p) ** 2 * rho**2) / (1 - q) ** 2
    )
    part2 = p**n * rho ** (n + 1) * (1 - rho)
    part3 = p**2 * rho**3 / (1 - q) ** 2
    return part1 + part2 + part3


def closed_form_fan_asymptote(p: Fraction, rho: Fraction) -> Fraction:
    p, rho = Fraction(p), Fraction(rho)
    return p**2 * rho**3 / (1 - p * (1 - p) * rho) ** 2


def bc_cubic_coefficients(p: Fraction) -> tuple[Fraction, Fraction]:
    """The two radicand polynomials of the ladder's cubic eigenvalue formula."""
    p = Fraction(p)
    a_val = -(p**2) * (9 - 43 * p + 60 * p**2 - 39 * p**3 + 11 * p**4)
    b_val = (1 - p) ** 2 * p**3 * (
        4 + 9 * p + 16 * p**2 - 88 * p**3 + 98 * p**4 - 32 * p**5 - 8 * p**6 + 5 * p**7
    )
    return a_val, b_val


def bc_cubic_eigenvalues(p: Fraction, bits: int = 128) -> list[mp.mpf]:
    """The three real eigenvalues of the perfect-node ladder stage matrix.

    Trigonometric/cube-root resolution of the cubic; the discriminant-like
    radicand stays positive on 0 < p < 1, so all three come out real (one of
    them negative).  Sorted descending.
    """
    a_val, b_val = bc_cubic_coefficients(p)
    with mp.workprec(bits):
        a_f = frac_to_mpf(a_val, bits)
        b_f = frac_to_mpf(b_val, bits)
        s = mp.sqrt(mp.mpf(27) * b_f)
        base = frac_to_mpf(Fraction(p) * (2 - Fraction(p)), bits) / 3
        c_plus = (a_f + mp.mpc(0, 1) * s) / 2
        c_minus = (a_f - mp.mpc(0, 1) * s) / 2
        r1 = mp.power(c_plus, mp.mpf(1) / 3)
        r2 = mp.power(c_minus, mp.mpf(1) / 3)
        out = []
        for k in (0, 1, 2):
            xi = mp.exp(2j * mp.pi * k / 3)
            lam = base + (xi * r1 + mp.conj(xi) * r2) / 3
            out.append(lam.real)
        return sorted(out, reverse=True)


def closed_form_bc_perfect(n: int, p: Fraction, bits: int = 192) -> mp.mpf:
    """Perfect-node ladder Rel2 via the spectral sum alpha_i lambda_i^n."""
    p = Fraction(p)
    lams = bc_cubic_eigenvalues(p, bits)
    with mp.workprec(bits):
        pf = frac_to_mpf(p, bits)
        total = mp.mpf(0)
        for lam in lams:
            alpha = (pf * (1 - pf) ** 2 - (1 - pf) * lam - lam**2) / (
                3 * pf * (1 - pf) ** 2 - 2 * (1 - pf) ** 2 * (1 + pf) * lam - (2 - pf) * lam**2
            )
            total += alpha * lam**n
        return total


def graver_sobel_p1(n: int, rho: Fraction) -> Fraction:
    """Perfect-edge ladder Rel2, exact.

    The closed form rho (lam_+^{n+1} - lam_-^{n+1}) / sqrt(4 rho - 3 rho^2)
    with lam_+- = (rho +- sqrt(4 rho - 3 rho^2))/2 lives in a quadratic
    extension; the Lucas-style recurrence below evaluates it exactly over the
    rationals (u_k = (lam_+^k - lam_-^k)/(lam_+ - lam_-)).
    """
    rho = Fraction(rho)
    if rho == 0:
        return Fraction(0)
    u_prev, u = Fraction(0), Fraction(1)  # u_0, u_1
    for _ in range(n):
        u_prev, u = u, rho * u + rho * (1 - rho) * u_prev
    return rho * u


def allterm_closed_form(n: int, p: Fraction) -> Fraction:
    """All-terminal reliability R(n) = (zeta_+^n - zeta_-^n)/sqrt(5-8p+4p^2).

    Exact via the associated two-term recurrence; note the one-stage offset
    against the conventional generating function (see module docstring).
    """
    p = Fraction(p)
    if n == 0:
        return Fraction(1)
    v_prev, v = Fraction(0), Fraction(1)  # v_0, v_1
    for _ in range(n - 1):
        v_prev, v = v, p * (3 - 2 * p) * v - p**2 * (1 - p) * v_prev
    return p * v


def allterm_closed_form_sqrt(n: int, p: Fraction, bits: int = 256) -> mp.mpf:
    """Literal evaluation with square roots, for numeric cross-checks."""
    p = Fraction(p)
    with mp.workprec(bits):
        pf = frac_to_mpf(p, bits)
        disc = mp.sqrt(5 - 8 * pf + 4 * pf**2)
        zp = pf / 2 * (3 - 2 * pf + disc)
        zm = pf / 2 * (3 - 2 * pf - disc)
        return (zp**n - zm**n) / disc


def series_in_onemp(m: int) -> list[tuple[Fraction, int, int]]:
    """Leading terms of the perfect-node ladder polynomial in the F basis.

    Returns [(coefficient, power of p, power of (1-p))] for the m-node ladder
    (m = n+1 >= 3), three terms, ordered from the dominant smallest power of p.
    """
    if m < 3:
        raise ValueError("need at least three nodes")
    if m % 2 == 1:
        return [
            (Fraction(1), (m - 1) // 2, (3 * m - 5) // 2),
            (Fraction(m**2 + 12 * m - 21, 8), (m + 1) // 2, (3 * m - 7) // 2),
            (
                Fraction(m**4 + 72 * m**3 + 350 * m**2 - 2376 * m + 2337, 384),
                (m + 3) // 2,
                (3 * m - 9) // 2,
            ),
        ]
    return [
        (Fraction(m, 2), m // 2, (3 * m - 6) // 2),
        (Fraction((m - 2) * (m**2 + 38 * m + 24), 48), (m + 2) // 2, (3 * m - 8) // 2),
        (
            Fraction((m - 2) * (m**4 + 122 * m**3 + 2304 * m**2 - 5472 * m - 13440), 3840),
            (m + 4) // 2,
            (3 * m - 10) // 2,
        ),
    ]
