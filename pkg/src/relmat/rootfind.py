"""Arbitrary-precision simultaneous root finding (Aberth-Ehrlich).

Reliability polynomials at n = 150 have integer coefficients spanning
hundreds of digits, so root finding works directly in mpmath arbitrary
precision with a Newton-polygon (Bini-style) initialization that respects the
huge coefficient scale spread, an Aberth-Ehrlich simultaneous iteration, and a
precision ladder: converge at a low working precision, then refine through
doublings up to the requested precision.

Certification is a posteriori: around each approximation z the disk of radius
d |P(z)/P'(z)| (d = degree) contains at least one root; when the disks are
pairwise disjoint each contains exactly one, which certifies the full root
list.  Residuals for the certificates are evaluated from the exact
coefficients at twice the working precision.  Overlapping disks are flagged
as clusters; the driver escalates precision until they separate or the cap is
reached.

Everything is deterministic: fixed initial angles, fixed sweep order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath as mp


class PrecisionExhaustedError(RuntimeError):
    pass


@dataclass(frozen=True)
class CertifiedRoot:
    value: mp.mpc
    radius: mp.mpf
    cluster: bool  # True when the certification disk overlaps a neighbor's
    multiplicity: int = 1


@dataclass(frozen=True)
class RootResult:
    roots: tuple  # of CertifiedRoot, sorted by (re, im)
    precision_bits: int
    converged: bool


def _clear_denominators(coeffs) -> list[int]:
    denom = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            denom = denom * c.denominator // gcd(denom, c.denominator)
    out = []
    for c in coeffs:
        c = Fraction(c)
        out.append(int(c * denom))
    g = 0
    for c in out:
        g = gcd(g, abs(c))
    if g > 1:
        out = [c // g for c in out]
    return out


def _initial_guesses(coeffs_f, degree: int) -> list[mp.mpc]:
    """Newton-polygon initialization: moduli from the upper convex hull of
    (k, log2 |a_k|), equidistributed angles with a deterministic offset."""
    pts = [(k, mp.log(abs(c), 2)) for k, c in enumerate(coeffs_f) if c != 0]
    hull = []
    for k, l in pts:
        while len(hull) >= 2:
            (k1, l1), (k2, l2) = hull[-2], hull[-1]
            # keep only upper hull: pop if the middle point is below the chord
            if (l2 - l1) * (k - k1) <= (l - l1) * (k2 - k1):
                hull.pop()
            else:
                break
        hull.append((k, l))
    guesses: list[mp.mpc] = []
    edge_index = 0
    for (k1, l1), (k2, l2) in zip(hull, hull[1:]):
        m = k2 - k1
        r = mp.mpf(2) ** ((l1 - l2) / m)
        for j in range(m):
            theta = 2 * mp.pi * (j + mp.mpf("0.382")) / m + edge_index * mp.mpf("0.7311")
            guesses.append(r * mp.exp(1j * theta))
        edge_index += 1
    # hull edge multiplicities always sum to the degree span of nonzero coeffs
    while len(guesses) < degree:
        guesses.append(mp.mpc(1, 1) * (1 + len(guesses)))
    return guesses[:degree]


def _horner_pair(coeffs_f, z):
    """(P(z), P'(z)) by a fused Horner pass."""
    p = coeffs_f[-1]
    dp = mp.mpc(0)
    for c in reversed(coeffs_f[:-1]):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _aberth_sweeps(coeffs_f, zs, tol, max_sweeps: int):
    n = len(zs)
    converged = [False] * n
    for _ in range(max_sweeps):
        if all(converged):
            return zs, True
        progressed = False
        for i in range(n):
            if converged[i]:
                continue
            p, dp = _horner_pair(coeffs_f, zs[i])
            if p == 0:
                converged[i] = True
                continue
            if dp == 0:
                zs[i] = zs[i] * (1 + mp.mpf(2) ** (-10)) + mp.mpf(2) ** (-10)
                progressed = True
                continue
            w = p / dp
            s = mp.mpc(0)
            for j in range(n):
                if j != i:
                    diff = zs[i] - zs[j]
                    if diff == 0:
                        diff = mp.mpf(2) ** (-mp.mp.prec // 2) * (1 + abs(zs[i]))
                    s += 1 / diff
            denom = 1 - w * s
            if denom == 0:
                step = w
            else:
                step = w / denom
            zs[i] = zs[i] - step
            if abs(step) <= tol * (1 + abs(zs[i])):
                converged[i] = True
            progressed = True
        if not progressed:
            break
    return zs, all(converged)


def _certify(coeffs_exact, zs, bits: int):
    """Inclusion radii d |P/P'| from the exact coefficients at 2x precision."""
    d = len(zs)
    with mp.workprec(2 * bits):
        cs = [_coeff_to_mp(c) for c in coeffs_exact]
        out = []
        for z in zs:
            zz = mp.mpc(z)
            p, dp = _horner_pair(cs, zz)
            if dp == 0:
                out.append(mp.inf)
            else:
                out.append(abs(p / dp) * d)
    return out


def _coeff_to_mp(c):
    if isinstance(c, Fraction):
        return mp.mpf(c.numerator) / mp.mpf(c.denominator)
    if isinstance(c, int):
        return mp.mpf(c)
    return c


_SQUAREFREE_DEGREE_CAP = 60  # beyond this, skip the exact gcd work; reliability
# polynomials there are squarefree once the p = 0 valuation is stripped, and
# the overlap flags still catch any surprise


def aberth_roots(
    coeffs,
    precision_bits: int = 128,
    max_precision_bits: int = 8192,
    start_bits: int = 64,
) -> RootResult:
    """All complex roots of a polynomial (lowest-first coefficients), certified.

    Exact (int/Fraction) coefficients are cleared to integers and square-free
    decomposed first, so repeated roots come back once with their multiplicity
    and a clean certificate; mpf/mpc coefficients are used as given (the
    certificate then refers to that floating polynomial).  The working
    precision doubles beyond ``precision_bits`` whenever certification disks
    overlap, up to ``max_precision_bits``; persistent overlaps come back
    flagged as clusters.
    """
    while len(coeffs) > 1 and _is_zero(coeffs[-1]):
        coeffs = coeffs[:-1]
    degree = len(coeffs) - 1
    if degree <= 0:
        return RootResult((), precision_bits, True)
    exact = all(isinstance(c, (int, Fraction)) for c in coeffs)
    # strip zero roots (valuation): exact zeros, radius 0
    val = 0
    while val < degree and _is_zero(coeffs[val]):
        val += 1
    zero_roots = []
    if val:
        coeffs = coeffs[val:]
        degree -= val
        zero_roots = [CertifiedRoot(mp.mpc(0), mp.mpf(0), False, val)]
    if degree == 0:
        return RootResult(tuple(zero_roots), precision_bits, True)

    if exact:
        coeffs = _clear_denominators(coeffs)
        if degree <= _SQUAREFREE_DEGREE_CAP:
            from .unipoly import UniPoly, squarefree_decomposition

            parts = squarefree_decomposition(UniPoly("x", [Fraction(c) for c in coeffs]))
        else:
            parts = [(None, 1)]
    else:
        parts = [(None, 1)]

    roots: list[CertifiedRoot] = list(zero_roots)
    bits_used = precision_bits
    all_ok = True
    for factor, mult in parts:
        fc = coeffs if factor is None else _clear_denominators(list(factor.coeffs))
        sub = _aberth_simple(fc, precision_bits, max_precision_bits, start_bits)
        bits_used = max(bits_used, sub.precision_bits)
        all_ok = all_ok and sub.converged
        for r in sub.roots:
            roots.append(CertifiedRoot(r.value, r.radius, r.cluster, mult))
    roots.sort(key=lambda r: (r.value.real, r.value.imag))
    return RootResult(tuple(roots), bits_used, all_ok)


def _aberth_simple(
    coeffs, precision_bits: int, max_precision_bits: int, start_bits: int
) -> RootResult:
    degree = len(coeffs) - 1
    bits = precision_bits
    zs = None
    while True:
        ladder = [min(start_bits, bits)]
        while ladder[-1] < bits:
            ladder.append(min(2 * ladder[-1], bits))
        for li, work_bits in enumerate(ladder):
            with mp.workprec(work_bits + 20):
                cs = [_coeff_to_mp(c) for c in coeffs]
                if zs is None:
                    zs = _initial_guesses(cs, degree)
                else:
                    zs = [mp.mpc(z) for z in zs]
                tol = mp.mpf(2) ** (-(work_bits - 6))
                sweeps = max(300, 5 * degree) if li == 0 and bits == precision_bits else 60
                zs, _ = _aberth_sweeps(cs, zs, tol, sweeps)
        radii = _certify(coeffs, zs, bits)
        order = sorted(range(degree), key=lambda i: (zs[i].real, zs[i].imag))
        zs_sorted = [zs[i] for i in order]
        radii_sorted = [radii[i] for i in order]
        cluster = _overlap_flags(zs_sorted, radii_sorted)
        ok = not any(cluster) and all(mp.isfinite(r) for r in radii_sorted)
        if ok or bits >= max_precision_bits:
            with mp.workprec(bits):  # materialize at the certified precision
                roots = tuple(
                    CertifiedRoot(mp.mpc(z), mp.mpf(r), bool(c))
                    for z, r, c in zip(zs_sorted, radii_sorted, cluster)
                )
            return RootResult(roots, bits, ok)
        bits = min(2 * bits, max_precision_bits)
        zs = None  # reinitialize: the previous state may sit on a false cluster


def _overlap_flags(zs, radii) -> list[bool]:
    n = len(zs)
    flags = [False] * n
    for i in range(n):
        for j in range(i + 1, n):
            if abs(zs[i] - zs[j]) <= radii[i] + radii[j]:
                flags[i] = flags[j] = True
    return flags


def _is_zero(c) -> bool:
    if isinstance(c, Fraction):
        return c == 0
    return c == 0


def real_roots(result: RootResult, realness_bits: int | None = None) -> list[mp.mpf]:
    """Roots classified as real: |Im| below 2^-(precision/4) scaled by |root|."""
    bits = result.precision_bits
    cut = mp.mpf(2) ** (-(realness_bits if realness_bits is not None else bits // 4))
    out = []
    for r in result.roots:
        if abs(r.value.imag) <= cut * (1 + abs(r.value)):
            out.append(r.value.real)
    return sorted(out)
