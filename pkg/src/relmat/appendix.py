"""Exact coefficient tables for the critical-point polynomials.

The three eliminant polynomials governing the ladder's limiting curves are
stored as verbatim coefficient tables: crit_p1 and crit_p2 cut out the
negative-real crossing points of the zero clouds, and crit_p3(p, rho, T)
(T = cos of the angle between the two dominant, equal-modulus eigenvalues)
is the compatibility condition swept to draw the curves themselves.

Transcription is guarded by cheap checksums (constant terms rho, 9 and
2 + 2T) and by exact identities proved in the tests: the T = -1 factorization
(1-p) p rho (1 + p(1-p) rho)^2 (1 - rho + rho (1-p)^3)^2, the rho = 1 and
T = +1 specializations, and the fact that the rho = 1, T = +1 slice equals
the radicand polynomial of the eigenvalue cubic.
"""

from __future__ import annotations

from fractions import Fraction

from .mpoly import MPoly
from .unipoly import UniPoly

P = MPoly.var("p")
RHO = MPoly.var("rho")
T = MPoly.var("T")
_ONE = MPoly.one()


def _poly_in(var: MPoly, coeffs) -> MPoly:
    acc = MPoly.zero()
    power = _ONE
    for c in coeffs:
        if c:
            acc = acc + c * power
        power = power * var
    return acc


# (factor, p power, rho power, extra (1-rho) power, rho-polynomial coefficients)
_P1_ROWS = (
    (1, 0, 0, 0, (0, 1)),                                   # rho
    (-1, 1, 0, 0, (1, 9, 3)),
    (1, 2, 1, 0, (41, 37, -11)),
    (1, 3, 1, 0, (-39, -195, 99, -4)),
    (1, 4, 1, 0, (16, 147, -411, 43, 11)),
    (-1, 5, 2, 0, (-54, -2300, 123, 67, 7)),
    (-1, 6, 2, 0, (126, 4700, 1865, 559, -59, 13)),
    (1, 7, 2, 0, (41, 4859, 2324, 6400, 1135, 189, 14)),
    (1, 8, 3, 0, (-2701, 4149, -11762, -8744, -2515, -311, 4)),
    (-1, 9, 3, 0, (-781, 12546, -6054, -14564, -11548, -3012, -124, 8)),
    (-1, 10, 3, 0, (96, -13197, -3996, 4727, 17901, 11943, 1464, 4)),
    (1, 11, 4, 0, (-7185, -3814, -10626, 5695, 21337, 5871, 304)),
    (-1, 12, 4, 0, (-2040, 3598, -10478, -17573, 19235, 11669, 1219)),
    (1, 13, 4, 0, (-240, 6353, 3091, -30176, 6625, 14726, 2128)),
    (-1, 14, 5, 0, (3613, 12361, -25852, -5221, 14188, 2147)),
    (1, 15, 5, 0, (947, 11148, -14935, -8341, 9720, 2095)),
    (-1, 16, 5, 0, (96, 5829, -7507, -1909, 690, 3066)),
    (2, 17, 6, 0, (993, -2513, 3568, -4056, 2046)),
    (-1, 18, 6, 0, (418, -3991, 10333, -10532, 3785)),
    (1, 19, 6, 0, (41, -2397, 7184, -7257, 2430)),
    (3, 20, 7, 1, (299, -684, 367)),
    (-1, 21, 7, 1, (185, -519, 322)),
    (1, 22, 7, 1, (16, -47, 30)),                           # (1-2 rho)(16-15 rho)
    (-19, 23, 8, 2, (1,)),
    (8, 24, 8, 2, (1,)),
    (-1, 25, 8, 2, (1,)),
)

_P2_ROWS = (
    (1, 0, 0, 0, (9,)),
    (2, 1, 0, 0, (-93, 37)),
    (1, 2, 0, 0, (1375, -1139, 235)),
    (1, 3, 0, 0, (-4548, 6619, -2306, 380)),
    (1, 4, 0, 0, (7551, -22762, 7011, -2415, 335)),
    (1, 5, 0, 0, (-6210, 53479, 2160, 7102, -1462, 154)),
    (1, 6, 0, 0, (2025, -85209, -79460, -18121, -11141, 223, 29)),
    (1, 7, 1, 0, (84879, 277027, 106511, 202610, -36581, 1170)),
    (1, 8, 1, 0, (-46170, -521894, -587852, -1536749, 263741, -39391, 547)),
    (-1, 9, 1, 0, (-10125, -611502, -1935829, -7279427, 440373, -331984, 16780)),
    (1, 10, 2, 0, (-455796, -3964687, -23412205, -3663927, -1452867, 375501, 2506)),
    (1, 11, 2, 0, (204255, 5324974, 53128592, 28420289, 5054943, -4185113, 12850)),
    (1, 12, 2, 0, (-42525, -4776213, -87000246, -104194583, -21210055, 27622695, -279589, 23497)),
    (1, 13, 3, 0, (2798298, 103839446, 248730949, 91081790, -119321953, -214483, 2402)),
    (1, 14, 3, 0, (-987660, -90012828, -421343630, -300983008, 354546288, 19055623, -2902607, 156356)),
    (-1, 15, 3, 0, (-164025, -55522953, -523811627, -718737692, 737559653, 137144016, -24588235, 1508228)),
    (1, 16, 4, 0, (-23264478, -483102731, -1256125498, 1050744677, 534128347, -99647028, 3934654, 455372)),
    (-1, 17, 4, 0, (-5993055, -328891636, -1637004249, 897069980, 1365985483, -226306853, -13885678, 5675792)),
    (1, 18, 4, 0, (-729000, -161715291, -1608420692, 82688597, 2449767599, -232309325, -139531559, 32366472, 274104)),
    (-1, 19, 5, 0, (-54779328, -1192868328, -1036350248, 3126514952, 252124085, -530576442, 110376920, 3523400)),
    (1, 20, 5, 0, (-11563290, -661113157, -1778966082, 2728489572, 1464568704, -1261931324, 243789711, 21533484)),
    (-1, 21, 5, 0, (-1166400, -267060831, -1769360761, 1310882671, 3038379428, -2084661610, 338855326, 82890944)),
    (1, 22, 6, 0, (-74824812, -1221905422, -276377214, 4066473373, -2443698651, 202709670, 224730742)),
    (-1, 23, 6, 0, (-13126860, -609332834, -1166508009, 3871377708, -1932786432, -295096153, 454945390)),
    (1, 24, 6, 0, (-1103625, -218082828, -1184923715, 2650067734, -752045795, -1022894704, 711726527)),
    (-1, 25, 7, 0, (-53743284, -754572613, 1226487190, 416790514, -1614449937, 878716880)),
    (1, 26, 7, 0, (-8258625, -336506619, 274671788, 1010093115, -1758220080, 866894232)),
    (-1, 27, 7, 0, (-605475, -106456428, -91817943, 978393477, -1446294368, 687560517)),
    (1, 28, 8, 0, (-23082921, -120749456, 640575958, -928058750, 438708098)),
    (-1, 29, 8, 0, (-3116070, -61389864, 311935039, -469461042, 224128938)),
    (1, 30, 8, 0, (-200475, -19494900, 116248678, -186770845, 90668832)),
    (-1, 31, 9, 0, (-4042170, 33260499, -57626524, 28477028)),
    (1, 32, 9, 0, (-510300, 7194033, -13394778, 6717655)),
    (-3, 33, 9, 0, (-10125, 376209, -740598, 374614)),
    (540, 34, 10, 1, (216, -221)),
    (-6075, 35, 10, 2, (1,)),
)

# crit_p3 brackets: (p power, rho power, rows of (inner p power, T coefficients))
_P3_BRACKETS = (
    (0, 0, (
        (0, (2, 2)),
        (1, (-6, -10, -4)),
    )),
    (1, 1, (
        (0, (5, 12, 0, -8)),
        (1, (-29, -52, 24, 64, 16)),
        (2, (78, 138, -52, -176, -64)),
        (3, (-36, -60, 48, 120, 48)),
    )),
    (2, 2, (
        (0, (0, 4, 8, -8, -16)),
        (1, (-8, 8, -24, 0, 48)),
        (2, (56, -22, 44, 192, 128, 64)),
        (3, (-262, -336, 0, 40, -256, -288, -64)),
        (4, (248, 384, -120, -384, 128, 384, 128)),
        (5, (-66, -110, 52, 160, -32, -160, -64)),
    )),
    (3, 3, (
        (0, (-10, -40, -40, 8, 16)),
        (1, (58, 164, 264, 24, -256, -128)),
        (2, (-206, -378, -800, -656, 416, 640, 192)),
        (3, (448, 890, 1296, 1080, -256, -864, -384)),
        (4, (-237, -668, -1188, -920, -32, 320, 192)),
        (5, (-151, -70, 760, 904, 256, 32)),
        (6, (162, 230, -300, -560, -192)),
        (7, (-36, -60, 48, 120, 48)),
    )),
    (4, 4, (
        (0, (-10, -54, -104, -56, 80, 64)),
        (1, (54, 274, 492, 400, -144, -416, -192)),
        (2, (-12, -578, -1244, -904, 48, 576, 384)),
        (3, (-206, 456, 2000, 1688, 304, -160, -192)),
        (4, (156, -356, -2060, -2120, -592, -64)),
        (5, (92, 462, 1228, 1272, 400)),
        (6, (-88, -270, -372, -288, -96)),
        (7, (-22, -2, 28, 8)),
        (8, (30, 46, 16)),
        (9, (-6, -10, -4)),
    )),
    (5, 5, (
        (0, (-3, -20, -56, -64, -16, 64, 64)),
        (1, (11, 160, 432, 376, 80, -96, -128)),
        (2, (-84, -488, -1116, -984, -240, 0, 64)),
        (3, (240, 850, 1416, 1224, 336, 32)),
        (4, (-252, -790, -960, -712, -208)),
        (5, (74, 318, 328, 168, 48)),
        (6, (43, 14, -28, -8)),
        (7, (-33, -48, -16)),
        (8, (6, 10, 4)),
    )),
)


def _rows_to_poly(rows) -> MPoly:
    total = MPoly.zero()
    one_minus_rho = _ONE - RHO
    for factor, pk, rk, omr, coeffs in rows:
        term = factor * P**pk * RHO**rk * _poly_in(RHO, coeffs)
        if omr:
            term = term * one_minus_rho**omr
        total = total + term
    return total


def crit_p1() -> MPoly:
    return _rows_to_poly(_P1_ROWS)


def crit_p2() -> MPoly:
    return _rows_to_poly(_P2_ROWS)


def crit_p3() -> MPoly:
    total = MPoly.zero()
    for pk, rk, rows in _P3_BRACKETS:
        bracket = MPoly.zero()
        for inner_pk, tcoeffs in rows:
            bracket = bracket + P**inner_pk * _poly_in(T, tcoeffs)
        total = total + P**pk * RHO**rk * bracket
    return total


def crit_p3_at(rho: Fraction | None = None, t: Fraction | None = None) -> MPoly:
    poly = crit_p3()
    binding = {}
    if rho is not None:
        binding["rho"] = Fraction(rho)
    if t is not None:
        binding["T"] = Fraction(t)
    return poly.substitute(binding) if binding else poly


def p3_t_minus1_factored() -> MPoly:
    return (_ONE - P) * P * RHO * (_ONE + P * (_ONE - P) * RHO) ** 2 * (
        _ONE - RHO + RHO * (_ONE - P) ** 3
    ) ** 2


def p3_rho1_printed() -> MPoly:
    t0 = _poly_in(P, (2, 9, -4, -30, 38, -10, -6, 3))
    t1 = _poly_in(P, (2, 12, -8, -34, 48, -18, -2, 2))
    t2 = -4 * P * (_ONE - P) ** 2 * (_ONE - P + P * P)
    t3 = -8 * P * (_ONE - P) ** 2
    return t0 + t1 * T + t2 * T**2 + t3 * T**3


def p3_t1_printed() -> MPoly:
    return (
        _poly_in(P, (4, -20))
        + P * RHO * _poly_in(P, (9, 23, -76, 120))
        - 2 * P**2 * RHO**2 * _poly_in(P, (6, -12, -231, 583, -384, 110))
        + P**3 * RHO**3 * _poly_in(P, (-66, 126, -792, 2210, -2533, 1731, -660, 120))
        - 2 * P**4 * RHO**4 * _poly_in(P, (40, -234, 865, -1945, 2518, -1727, 557, -6, -46, 10))
        + P**5 * RHO**5 * _poly_in(P, (-31, 835, -2848, 4098, -2922, 936, 21, -97, 20))
    )


# -- the rho = 1 point polynomials quoted with the critical points -----------------


def pa_rho1_poly() -> UniPoly:
    return UniPoly("p", [Fraction(c) for c in (1, -1, -11, 15, -3, -2, -1, 1)])


def ta_rho1_poly() -> UniPoly:
    return UniPoly("T", [Fraction(c) for c in (-1, 11, -27, -26, 140, 240, 144, 32)])


def pb_rho1_poly() -> UniPoly:
    return UniPoly(
        "p", [Fraction(c) for c in (1, -4, -9, 101, -413, 1019, -1761, 2151, -1864, 1097, -386, 60)]
    )


def tb_rho1_poly() -> UniPoly:
    return UniPoly(
        "T",
        [
            Fraction(c)
            for c in (
                3040707, 12576464, 15322821, -4376828, -22559186, -10112842,
                9510320, 7762048, -1337920, -2068608, 8192, 204800,
            )
        ],
    )


def eigen_radicand_poly() -> UniPoly:
    """The degree-7 factor of the eigenvalue-cubic radicand; also the
    rho = 1, T = +1 slice of crit_p3 (proved identically in the tests)."""
    return UniPoly("p", [Fraction(c) for c in (4, 9, 16, -88, 98, -32, -8, 5)])


def mpoly_to_unipoly_in_p(poly: MPoly) -> UniPoly:
    if poly.vars not in ((), ("p",)):
        raise ValueError("polynomial must be univariate in p")
    coeffs = [Fraction(0)] * (poly.total_degree() + 1)
    for e, c in poly.terms.items():
        coeffs[e[0] if e else 0] = c
    return UniPoly("p", coeffs)


def mpoly_to_unipoly_in(poly: MPoly, var: str) -> UniPoly:
    if poly.vars not in ((), (var,)):
        raise ValueError(f"polynomial must be univariate in {var}")
    coeffs = [Fraction(0)] * (poly.total_degree() + 1)
    for e, c in poly.terms.items():
        coeffs[e[0] if e else 0] = c
    return UniPoly(var, coeffs)
