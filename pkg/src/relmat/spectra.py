"""Eigenvalue analysis, zero clouds, limiting curves and critical points.

The zeros of the uniform two-terminal reliability polynomial in complex p
accumulate, as the size n grows, on the locus where the two dominant stage
eigenvalues share a modulus.  For the ladder that locus is carved out by the
eliminant crit_p3(p, rho, T) = 0 (T the cosine of the angle between the two
equal-modulus eigenvalues) filtered by dominance over the remaining
eigenvalues; for the fan every branch is explicit (square-root curves and,
for 1/2 < rho < 1, arcs of the circles |p| = 1/rho and |p - 1| = 1).

Critical points:
  A, B   crossings of the closed left-half-plane curve with the negative real
         axis, roots of crit_p1 / crit_p2; selected by deterministic root
         continuation in rho from the quoted rho = 1 anchors (which the n=150
         cloud reproduces; the tests cross-check that).
  C      complex endpoint, root of crit_p3(., rho, T=+1).
  D      real crossing: (1 + sqrt(1 + 4/rho))/2 for rho >= 1/2 (a root of the
         T = -1 factorization), the third real root of crit_p1 in decreasing
         order for rho < 1/2.
  E      only for rho < 1/2: the outer real root of crit_p3(., rho, T=+1);
         zeros sit on the real axis between D and E in that regime.

p_crit(rho) is the unique root in (0, 1) of crit_p3(p, rho, T=1): there the
ladder quartic acquires a degenerate real root, separating the four-real-root
regime from two real plus a conjugate pair.  At rho = 1 the slice equals the
(positive on (0,1)) eigenvalue-cubic radicand, so the boundary leaves the unit
interval; 1 is returned as the limiting endpoint.

Everything exact feeds the certified Aberth engine; numpy doubles are used
only to filter curve candidates and to measure cloud-to-curve distances.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import numpy as np

from . import appendix
from .mpoly import MPoly
from .rootfind import CertifiedRoot, RootResult, aberth_roots, real_roots
from .transfer import rel2_uniform_sweep
from .unipoly import UniPoly

_GOLDEN = (1 + 5**0.5) / 2


def max_precision_cap(default: int = 8192) -> int:
    env = os.environ.get("REL_MAX_PRECISION")
    return int(env) if env else default


# -- characteristic polynomial roots ------------------------------------------------


def bc_charpoly_coeffs(p, rho):
    """Lowest-first quartic coefficients; works for Fraction or mpmath p."""
    return [
        -((1 - p) * (1 - rho) * p**4 * rho**3),
        (1 - p) * (1 - p * rho) * p**2 * rho**2,
        -(p * rho * (1 - rho * (p + p**2 - p**3))),
        -(p * (2 - p) * rho),
        p * 0 + 1,
    ]


@dataclass(frozen=True)
class EigenSet:
    roots: tuple  # of CertifiedRoot (with multiplicity)
    precision_bits: int
    certified: bool

    def by_modulus(self) -> list:
        expanded = []
        for r in self.roots:
            expanded.extend([r.value] * r.multiplicity)
        return sorted(expanded, key=lambda z: (-abs(z), z.real, z.imag))

    def lambda_max(self):
        return self.by_modulus()[0]

    def real_count(self) -> int:
        cut = mp.mpf(2) ** (-(self.precision_bits // 4))
        return sum(
            r.multiplicity for r in self.roots if abs(r.value.imag) <= cut * (1 + abs(r.value))
        )


def charpoly_roots(family: str, p, rho, precision_bits: int = 128) -> EigenSet:
    """Eigenvalues of the uniform stage matrix at (p, rho), certified.

    The fan factorizes exactly: {1, p rho, p(1-p) rho (double)}.  The ladder
    quartic goes through the Aberth engine (precision >= 64 bits), escalating
    automatically when a cluster refuses to separate.
    """
    if precision_bits < 64:
        raise ValueError("precision must be at least 64 bits")
    if family == "fan":
        with mp.workprec(precision_bits):
            vals = [
                (mp.mpc(1), 1),
                (mp.mpc(_to_mpf(p) * _to_mpf(rho)), 1),
                (mp.mpc(_to_mpf(p) * (1 - _to_mpf(p)) * _to_mpf(rho)), 2),
            ]
        roots = tuple(CertifiedRoot(v, mp.mpf(0), False, m) for v, m in vals)
        return EigenSet(roots, precision_bits, True)
    if family != "bc":
        raise ValueError(f"unknown family {family!r}")
    coeffs = bc_charpoly_coeffs(p, rho)
    res = aberth_roots(coeffs, precision_bits, max_precision_cap())
    if not res.converged:
        raise PrecisionExhausted(
            f"eigenvalue cluster unresolved at {res.precision_bits} bits"
        )
    return EigenSet(res.roots, res.precision_bits, res.converged)


class PrecisionExhausted(RuntimeError):
    pass


def _to_mpf(v):
    if isinstance(v, Fraction):
        return mp.mpf(v.numerator) / mp.mpf(v.denominator)
    return mp.mpf(v) if not isinstance(v, (mp.mpf, mp.mpc)) else v


# -- degeneracy boundary -------------------------------------------------------------


def p_crit(rho: Fraction, precision_bits: int = 128):
    """The unique p in (0, 1) where the ladder quartic has a degenerate root.

    Root of crit_p3(p, rho, T=1) in the unit interval.  For rho = 1 that slice
    is (1-p)^5 times the eigenvalue radicand, which stays positive on (0, 1):
    no interior degeneracy exists and the boundary value 1 is returned.
    """
    rho = Fraction(rho)
    if not 0 < rho <= 1:
        raise ValueError("rho must be in (0, 1]")
    if rho == 1:
        return mp.mpf(1)
    poly = appendix.mpoly_to_unipoly_in(
        appendix.crit_p3().substitute({"rho": rho, "T": Fraction(1)}), "p"
    )
    res = aberth_roots(list(poly.coeffs), precision_bits, max_precision_cap())
    cands = [r for r in real_roots(res) if 0 < r < 1]
    if len(cands) != 1:
        raise RuntimeError(f"expected a unique root in (0,1), found {len(cands)}")
    return cands[0]


def degeneracy_certificate(rho: Fraction, precision_bits: int = 128):
    """(p_crit, double root x*, |P(x*)|, |P'(x*)|) for the quartic at p_crit.

    The boundary point is resolved with guard bits so that both residuals land
    below 2^-(precision/2) (the derivative cannot do better than the square
    root of the boundary accuracy at a degenerate root).
    """
    guard = precision_bits + 48
    pc = p_crit(rho, guard)
    with mp.workprec(2 * guard):
        coeffs = bc_charpoly_coeffs(mp.mpf(pc), _to_mpf(Fraction(rho)))
        dcoeffs = [c * k for k, c in enumerate(coeffs)][1:]
        # the double root is a simple, well-separated root of P', so locate it
        # there instead of fighting the unresolved pair in P itself
        res = aberth_roots(dcoeffs, guard, guard, start_bits=64)
        vals = [r.value for r in res.roots for _ in range(r.multiplicity)]
        x_star = min(vals, key=lambda z: abs(_horner(coeffs, z)))
        pval = _horner(coeffs, x_star)
        dval = _horner(dcoeffs, x_star)
        return pc, x_star, abs(pval), abs(dval)


def _horner(coeffs, z):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
    return acc


# -- exact reliability polynomials ----------------------------------------------------


def _unipoly_p(coeff_map) -> UniPoly:
    return UniPoly("p", coeff_map)


def reliability_polynomial(family: str, n: int, rho: Fraction) -> UniPoly:
    """Exact Rel2 polynomial in p at fixed rational rho, by the denominator
    recursion with transfer-matrix seeds (valid from one past the numerator
    degree; seeds n = 0..3 cover both families)."""
    if n > 10_000:
        raise ValueError("n capped at 10^4")
    rho = Fraction(rho)
    p = MPoly.var("p")
    seeds = rel2_uniform_sweep(family, min(n, 3), p, rho)
    seq = [appendix.mpoly_to_unipoly_in_p(s if isinstance(s, MPoly) else MPoly.const(s)) for s in seeds]
    if n <= 3:
        return seq[n]
    if family == "bc":
        # D = 1 - p(2-p) rho z - p rho (1 - rho(p + p^2 - p^3)) z^2
        #       + (1-p)(1-p rho) p^2 rho^2 z^3 - (1-p)(1-rho) p^4 rho^3 z^4
        d1 = _unipoly_p([Fraction(0), -2 * rho, rho])
        d2 = _unipoly_p([Fraction(0), -rho, rho**2, rho**2, -(rho**2)])
        d3 = _unipoly_p([Fraction(0), Fraction(0), rho**2, -(rho**2) - rho**3, rho**3])
        d4 = _unipoly_p([Fraction(0)] * 4 + [-(rho**3) * (1 - rho), rho**3 * (1 - rho)])
    elif family == "fan":
        # D = (1 - z)(1 - p rho z)(1 - p(1-p) rho z)^2, expanded in z
        pr = _unipoly_p([Fraction(0), rho])
        q = _unipoly_p([Fraction(0), rho, -rho])
        one = _unipoly_p([Fraction(1)])
        # (1 - z)(1 - pr z) -> 1, -(1+pr), pr
        a0, a1, a2 = one, -(one + pr), pr
        # (1 - q z)^2 -> 1, -2q, q^2
        b0, b1, b2 = one, -2 * q, q * q
        d1 = a0 * b1 + a1 * b0
        d2 = a0 * b2 + a1 * b1 + a2 * b0
        d3 = a1 * b2 + a2 * b1
        d4 = a2 * b2
    else:
        raise ValueError(f"unknown family {family!r}")
    window = seq[:]
    for _ in range(4 - len(window)):
        window.insert(0, UniPoly.zero("p"))
    r3, r2, r1, r0 = window[-1], window[-2], window[-3], window[-4]
    for _ in range(n - 3):
        r_new = -(d1 * r3) - (d2 * r2) - (d3 * r1) - (d4 * r0)
        r0, r1, r2, r3 = r1, r2, r3, r_new
    return r3


# -- zero clouds ------------------------------------------------------------------------


@dataclass(frozen=True)
class RootCloud:
    family: str
    n: int
    rho: Fraction
    roots: tuple  # of CertifiedRoot
    precision_bits: int
    degree: int
    certified: bool

    def expanded(self) -> list:
        out = []
        for r in self.roots:
            out.extend([r] * r.multiplicity)
        return out

    def total_roots(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    def to_json_obj(self, digits: int | None = None) -> dict:
        dps = digits or mp.prec_to_dps(self.precision_bits)
        rows = []
        for r in self.expanded():
            rows.append(
                {
                    "re": mp.nstr(r.value.real, dps),
                    "im": mp.nstr(r.value.imag, dps),
                    "radius": mp.nstr(r.radius, 5),
                }
            )
        return {
            "family": self.family,
            "n": self.n,
            "rho": f"{self.rho.numerator}/{self.rho.denominator}",
            "precision_bits": self.precision_bits,
            "certified": self.certified,
            "roots": rows,
        }


def zero_cloud(
    family: str, n: int, rho: Fraction, precision_bits: int = 128,
    max_precision_bits: int | None = None,
) -> RootCloud:
    """Certified complex roots of the degree-(2n-1) reliability polynomial."""
    rho = Fraction(rho)
    poly = reliability_polynomial(family, n, rho)
    res = aberth_roots(
        list(poly.coeffs),
        precision_bits,
        max_precision_bits or max_precision_cap(),
    )
    return RootCloud(family, n, rho, res.roots, res.precision_bits, poly.degree(), res.converged)


def conjugate_symmetry_defect(cloud: RootCloud) -> mp.mpf:
    """Largest unmatched distance when pairing each root with a conjugate."""
    vals = [r.value for r in cloud.expanded()]
    worst = mp.mpf(0)
    for v in vals:
        best = min(abs(v.conjugate() - w) for w in vals)
        worst = max(worst, best)
    return worst


# -- limiting curves ---------------------------------------------------------------------


@dataclass(frozen=True)
class CurvePoint:
    t: float  # T = cos(theta) for the ladder, theta for the fan
    p: complex
    branch: int


@dataclass(frozen=True)
class LimitCurve:
    family: str
    rho: Fraction
    points: tuple  # of CurvePoint


def _np_quartic_moduli(p: complex, rho: float):
    cs = bc_charpoly_coeffs(p, rho)
    lams = np.roots(list(reversed([complex(c) for c in cs])))
    return lams[np.argsort(-np.abs(lams))]


def _bc_point_accepted(p: complex, rho: float, t: float, tol: float = 1e-6) -> bool:
    lams = _np_quartic_moduli(p, rho)
    m = np.abs(lams)
    if m[0] <= 0:
        return False
    if abs(m[0] - m[1]) > tol * m[0]:
        return False
    if len(m) > 2 and m[2] >= m[0] * (1 - tol):
        # dominance |mu| < |lambda| fails (third eigenvalue ties the pair)
        return False
    ratio = lams[0] / lams[1]
    return abs(ratio.real - t) <= 5e-4 + 20 * tol


def limiting_curves_bc(rho: Fraction, grid: int = 400, precision_bits: int = 96) -> LimitCurve:
    """Sweep crit_p3(., rho, T) over T in [-1, 1] and keep the dominant pairs.

    Root paths are warm-started from the previous grid point, so the sweep
    costs a few Aberth sweeps per step; acceptance (equal dominant moduli,
    matching angle) is tested in double precision, which is ample at grid
    resolution.
    """
    rho = Fraction(rho)
    rho_f = float(rho)
    p3 = appendix.crit_p3().substitute({"rho": rho})
    points = []
    prev_roots = None
    branch_of_prev: dict[int, int] = {}
    next_branch = 0
    for k in range(grid + 1):
        t = Fraction(-1) + Fraction(2 * k, grid)
        poly = appendix.mpoly_to_unipoly_in(p3.substitute({"T": t}), "p")
        coeffs = list(poly.coeffs)
        if prev_roots is None:
            res = aberth_roots(coeffs, precision_bits, max(precision_bits, 256))
            cur = [r.value for r in res.roots for _ in range(r.multiplicity)]
        else:
            cur = _warm_polish(coeffs, prev_roots, precision_bits)
        branch_of_cur = {}
        for i, z in enumerate(cur):
            zc = complex(z.real, z.imag)
            if prev_roots is not None:
                j = min(range(len(prev_roots)), key=lambda j: abs(zc - complex(prev_roots[j].real, prev_roots[j].imag)))
                branch = branch_of_prev.get(j, None)
            else:
                branch = None
            if branch is None:
                branch = next_branch
                next_branch += 1
            branch_of_cur[i] = branch
            if _bc_point_accepted(zc, rho_f, float(t)):
                points.append(CurvePoint(float(t), zc, branch))
        prev_roots = cur
        branch_of_prev = branch_of_cur
    return LimitCurve("bc", rho, tuple(points))


def _warm_polish(coeffs, starts, precision_bits: int):
    """Aberth refinement from nearby starting points, with a certified cold
    solve as the fallback whenever the polish fails to push residuals down
    (which happens when the starts contain an unresolved multiple root)."""
    from .rootfind import _aberth_sweeps, _coeff_to_mp, _horner_pair

    with mp.workprec(precision_bits + 20):
        cs = [_coeff_to_mp(Fraction(c) if isinstance(c, int) else c) for c in coeffs]
        zs = [mp.mpc(z) for z in starts]
        want = len(cs) - 1
        # degree can drop along the sweep (leading coefficient vanishing)
        while len(zs) > want:
            zs.remove(max(zs, key=abs))
        while len(zs) < want:
            zs.append(mp.mpc(1, 1) * (2 + len(zs)))
        # spread coincident starts (multiple roots) on a small circle
        zs.sort(key=lambda z: (z.real, z.imag))
        for i in range(1, len(zs)):
            k = 0
            while any(abs(zs[i] - zs[j]) < mp.mpf("1e-6") * (1 + abs(zs[i])) for j in range(i)):
                k += 1
                zs[i] = zs[i] + mp.mpf("3e-4") * (1 + abs(zs[i])) * mp.exp(2j * mp.pi * k / 7)
                if k > 8:
                    break
        tol = mp.mpf(2) ** (-(precision_bits - 10))
        zs, _ = _aberth_sweeps(cs, zs, tol, 40)
        scale = sum(abs(c) for c in cs)
        cut = scale * mp.mpf(2) ** (-precision_bits // 2)
        for z in zs:
            pz, _ = _horner_pair(cs, z)
            if abs(pz) > cut * max(1, abs(z)) ** want:
                break
        else:
            return zs
    res = aberth_roots(coeffs, precision_bits, max(256, precision_bits))
    return [mp.mpc(r.value) for r in res.roots for _ in range(r.multiplicity)]


def limiting_curves_fan(rho: Fraction, grid: int = 400) -> LimitCurve:
    """Analytic fan branches with their exact validity ranges.

    rho = 1: the two square-root branches over the full angle range.
    1/2 < rho < 1: square-root branches (the + branch only while
    cos t <= (1/(2 rho))(1/rho^2 - 3)), the circle p = e^{i t}/rho for
    cos t >= 1/(2 rho), and the circle p = 1 + e^{i t} for
    cos t >= 1/(2 rho^2) - 1.
    rho <= 1/2: just the two square-root branches.
    """
    rho = Fraction(rho)
    rho_f = float(rho)
    pts = []
    for k in range(grid + 1):
        theta = -np.pi + 2 * np.pi * k / grid
        ct = np.cos(theta)
        e = np.exp(1j * theta)
        if rho == 1:
            s = np.sqrt(1 + 4 * e + 0j)
            pts.append(CurvePoint(theta, (1 - s) / 2, 0))
            pts.append(CurvePoint(theta, (1 + s) / 2, 1))
            continue
        s = np.sqrt(1 + 4 * e / rho_f + 0j)
        pts.append(CurvePoint(theta, (1 - s) / 2, 0))
        if rho_f <= 0.5 or ct <= (1 / (2 * rho_f)) * (1 / rho_f**2 - 3):
            pts.append(CurvePoint(theta, (1 + s) / 2, 1))
        if 0.5 < rho_f < 1:
            if ct >= 1 / (2 * rho_f):
                pts.append(CurvePoint(theta, e / rho_f, 2))
            if ct >= 1 / (2 * rho_f**2) - 1:
                pts.append(CurvePoint(theta, 1 + e, 3))
    return LimitCurve("fan", rho, tuple(pts))


# -- cloud against curve --------------------------------------------------------------------


@dataclass(frozen=True)
class DistanceReport:
    n: int
    count: int
    excluded: int
    median: float
    q90: float
    maximum: float


def cloud_vs_curve(cloud: RootCloud, curve: LimitCurve, p_a: float | None = None) -> DistanceReport:
    """Distance from each root to the nearest sampled curve point.

    Ladder roots flagged as isolated points on the negative real axis between
    A and the origin (including the exact zeros at p = 0) are excluded from
    the quantiles, as are exact zeros for the fan.
    """
    if cloud.family != curve.family or cloud.rho != curve.rho:
        raise ValueError("cloud and curve must share family and rho")
    pts = np.array([c.p for c in curve.points], dtype=complex)
    roots = []
    excluded = 0
    for r in cloud.expanded():
        z = complex(r.value.real, r.value.imag)
        if abs(z) == 0:
            excluded += 1
            continue
        if (
            cloud.family == "bc"
            and p_a is not None
            and abs(z.imag) < 1e-9
            and p_a < z.real < 0
        ):
            excluded += 1
            continue
        roots.append(z)
    if not roots:
        return DistanceReport(cloud.n, 0, excluded, 0.0, 0.0, 0.0)
    zs = np.array(roots, dtype=complex)
    d = np.abs(zs[:, None] - pts[None, :]).min(axis=1)
    return DistanceReport(
        cloud.n,
        len(roots),
        excluded,
        float(np.median(d)),
        float(np.quantile(d, 0.9)),
        float(d.max()),
    )


# -- critical points --------------------------------------------------------------------------


@dataclass(frozen=True)
class CriticalPoints:
    rho: Fraction
    p_a: mp.mpf
    p_b: mp.mpf
    p_c: mp.mpc
    p_d: mp.mpf
    p_e: mp.mpf | None  # present only for rho < 1/2
    t_a: mp.mpf
    t_b: mp.mpf
    precision_bits: int


_ANCHORS_RHO1 = {
    "p_a": mp.mpf("-0.2879878"),
    "p_b": mp.mpf("-0.1849482"),
    "p_c": mp.mpc("1.011578", "0.607394"),
}

_track_cache: dict = {}


def _roots_at(poly_mpoly: MPoly, rho: Fraction, precision_bits: int):
    poly = appendix.mpoly_to_unipoly_in(poly_mpoly.substitute({"rho": rho}), "p")
    res = aberth_roots(list(poly.coeffs), precision_bits, max_precision_cap())
    out = []
    for r in res.roots:
        out.extend([r.value] * r.multiplicity)
    return out


def _track_root(kind: str, poly_mpoly: MPoly, anchor, rho_target: Fraction, precision_bits: int):
    """Deterministic continuation of one root from rho = 1 down to rho_target.

    The full root set is carried along the path and warm-polished at each
    step (a cold certified solve only at the anchor and the target), which
    keeps the sweep cheap even down to rho = 1e-6.
    """
    key = (kind, rho_target, precision_bits)
    if key in _track_cache:
        return _track_cache[key]
    rho_target = Fraction(rho_target)
    path = []
    r = Fraction(1)
    while r > rho_target:
        path.append(r)
        r = max(rho_target, r * Fraction(7, 10))
    path.append(rho_target)
    current = mp.mpc(anchor)
    track_bits = min(precision_bits, 128)
    roots = None
    for i, rho_k in enumerate(path):
        poly = appendix.mpoly_to_unipoly_in(poly_mpoly.substitute({"rho": rho_k}), "p")
        last = i == len(path) - 1
        if roots is None or last:
            res = aberth_roots(
                list(poly.coeffs), precision_bits if last else track_bits, max_precision_cap()
            )
            roots = [r2.value for r2 in res.roots for _ in range(r2.multiplicity)]
        else:
            roots = _warm_polish(list(poly.coeffs), roots, track_bits)
        scale = 1 + abs(current)
        current = min(roots, key=lambda z: abs(z - current) / scale)
    _track_cache[key] = current
    return current


def critical_points(rho: Fraction, precision_bits: int = 160) -> CriticalPoints:
    """All critical points at a given node reliability.

    Root selection inside crit_p1/p2/p3 follows continuation from the rho = 1
    anchors (the values a close look at the n = 150 cloud singles out), which
    makes the choice deterministic for any rho; regime-dependent D and E
    follow the explicit rules in the module docstring.
    """
    rho = Fraction(rho)
    if not 0 < rho <= 1:
        raise ValueError("rho must be in (0, 1]")
    p1, p2 = appendix.crit_p1(), appendix.crit_p2()
    p3_t1 = appendix.crit_p3().substitute({"T": Fraction(1)})
    p_a = _track_root("p_a", p1, _ANCHORS_RHO1["p_a"], rho, precision_bits).real
    p_b = _track_root("p_b", p2, _ANCHORS_RHO1["p_b"], rho, precision_bits).real
    p_c = _track_root("p_c", p3_t1, _ANCHORS_RHO1["p_c"], rho, precision_bits)
    if p_c.imag < 0:
        p_c = p_c.conjugate()
    with mp.workprec(precision_bits):
        if rho >= Fraction(1, 2):
            p_d = (1 + mp.sqrt(1 + 4 / _to_mpf(rho))) / 2
            p_e = None
        else:
            reals = sorted(
                [z.real for z in _roots_at(p1, rho, precision_bits) if abs(z.imag) < mp.mpf(2) ** (-precision_bits // 4)],
                reverse=True,
            )
            if len(reals) < 3:
                raise RuntimeError("crit_p1 lost its real roots; cannot place D")
            p_d = reals[2]
            reals3 = sorted(
                z.real
                for z in _roots_at(p3_t1, rho, precision_bits)
                if abs(z.imag) < mp.mpf(2) ** (-precision_bits // 4)
            )
            p_e = reals3[-1]
    t_a = _t_at_double_point(p_a, rho, precision_bits)
    t_b = _t_at_double_point(p_b, rho, precision_bits)
    return CriticalPoints(rho, p_a, p_b, p_c, p_d, p_e, t_a, t_b, precision_bits)


def _t_at_double_point(p_val, rho: Fraction, precision_bits: int):
    """The T at which crit_p3 and its p-derivative vanish together at p_val."""
    p3 = appendix.crit_p3()
    with mp.workprec(precision_bits):
        rho_f = _to_mpf(rho)
        tpoly = [mp.mpf(0)] * (p3.degree_in("T") + 1)
        dpoly = [mp.mpf(0)] * (p3.degree_in("T") + 1)
        for k in range(len(tpoly)):
            ck = p3.coefficient_of("T", k)
            tpoly[k] = _eval_bivar(ck, p_val, rho_f)
            dk = _poly_dp(ck)
            dpoly[k] = _eval_bivar(dk, p_val, rho_f)
        res = aberth_roots(tpoly, precision_bits, max(512, precision_bits))
        best = None
        for r in res.roots:
            t = r.value
            if abs(t.imag) > mp.mpf(2) ** (-precision_bits // 4):
                continue
            resid = abs(_horner(dpoly, t.real))
            if best is None or resid < best[0]:
                best = (resid, t.real)
        if best is None:
            raise RuntimeError("no real T with a vanishing p-derivative")
        return best[1]


def _eval_bivar(poly: MPoly, p_val, rho_val):
    total = mp.mpf(0) * p_val if isinstance(p_val, (mp.mpf, mp.mpc)) else mp.mpf(0)
    for e, c in sorted(poly.terms.items()):
        term = mp.mpf(c.numerator) / mp.mpf(c.denominator)
        for var, exp in zip(poly.vars, e):
            if exp:
                term = term * (p_val if var == "p" else rho_val) ** exp
        total = total + term
    return total


def _poly_dp(poly: MPoly) -> MPoly:
    if "p" not in poly.vars:
        return MPoly.zero()
    out = MPoly.zero()
    deg = poly.degree_in("p")
    for k in range(1, deg + 1):
        out = out + k * poly.coefficient_of("p", k) * MPoly.var("p") ** (k - 1)
    return out


# -- asymptotics as rho -> 0 ------------------------------------------------------------------


def asymptotic_constants(precision_bits: int = 128) -> dict:
    """chi, kappa = chi^(1/3) and the p_B offset alpha, at high precision.

    chi is the real root of 5 x^3 + 8 x^2 + 8 x - 1; alpha is the quoted
    rational expression evaluated at chi (the paper's underbrace writes kappa
    for its variable, but only x = chi reproduces the quoted decimal, which
    the tests pin to eleven places).
    """
    with mp.workprec(precision_bits):
        s = mp.sqrt(mp.mpf(31593))
        chi = (
            mp.cbrt((2531 + 15 * s) / 2) - mp.cbrt((-2531 + 15 * s) / 2) - 8
        ) / 15
        kappa = mp.cbrt(chi)
        alpha = (
            (70147451 * chi**2 + 22890531 * chi - 3689542)
            / (1685743 * chi**2 + 778683 * chi - 121256)
            / 50
        )
        residual = 5 * chi**3 + 8 * chi**2 + 8 * chi - 1
        return {"chi": chi, "kappa": kappa, "alpha": alpha, "cubic_residual": residual}


def asymptotic_points(rho: Fraction, precision_bits: int = 128) -> dict:
    """Leading small-rho expansions of the five critical points."""
    rho = Fraction(rho)
    consts = asymptotic_constants(precision_bits)
    with mp.workprec(precision_bits):
        r = _to_mpf(rho)
        s5 = mp.sqrt(5)
        base = mp.cbrt((3 - s5) / (2 * r))
        sixth = (
            mp.mpf(2) / 15 * ((3 + s5) / 2) ** mp.mpf("0.833333333333333333333333333333")
        )
        sixth = mp.mpf(2) / 15 * mp.power((3 + s5) / 2, mp.mpf(5) / 6) * mp.sqrt(-75 + 35 * s5)
        p_a = -base + (35 + 12 * s5) / 90
        p_b = -consts["kappa"] / mp.cbrt(r) + consts["alpha"]
        p_d = base + (19 + 4 * s5) / 30
        p_e = base + sixth / mp.power(r, mp.mpf(1) / 6) + (11 + 4 * s5) / 30
        p_c = (
            mp.exp(2j * mp.pi / 3) * base
            + sixth * mp.exp(1j * mp.pi / 3) / mp.power(r, mp.mpf(1) / 6)
            + (11 + 4 * s5) / 30
        )
        return {"p_a": p_a, "p_b": p_b, "p_d": p_d, "p_e": p_e, "p_c": p_c}
