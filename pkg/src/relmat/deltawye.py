"""Triangle-star transformation with unreliable nodes.

A triangle on nodes A, B, C (node reliabilities A, B, C; opposite edge
reliabilities a, b, c, so c joins A-B) is replaced by a star with a new
imperfect hub O and edges p_A, p_B, p_C.  The two networks carry the same
two- and three-terminal connection probabilities iff

    p_A O p_C     = R_AC  = b + a c B - a b c B
    p_A O p_B     = R_AB  = c + a b C - a b c C
    p_B O p_C     = R_BC  = a + b c A - a b c A
    p_A O p_B p_C = R_ABC = a b + b c + a c - 2 a b c

Dividing the product relation by each pairwise relation solves the system in
closed form without radicals:

    p_A = R_ABC / R_BC,   p_B = R_ABC / R_AC,   p_C = R_ABC / R_AB,
    O   = R_AC R_AB R_BC / R_ABC**2,

and these values satisfy all four products identically.  The transformation is
an algebraic device: star values may leave [0, 1] (the configuration is then
flagged ``formal``) and nothing is clamped, because only exactness of the
recursion matters.  Chained transformations must not share an edge or node;
that restriction is the caller's to respect and is not circumvented here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .families import GenericGraph
from .mpoly import MPoly
from .oracle import k_terminal_oracle
from .ratfunc import MFrac


class DegenerateTriangleError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class TriangleConfig:
    A: object
    B: object
    C: object
    a: object  # opposite A, joins B-C
    b: object  # opposite B, joins A-C
    c: object  # opposite C, joins A-B


@dataclass(frozen=True)
class StarConfig:
    p_A: object
    p_B: object
    p_C: object
    O: object
    formal: bool  # True when some value leaves [0, 1]


def _products(t: TriangleConfig):
    A, B, C, a, b, c = t.A, t.B, t.C, t.a, t.b, t.c
    r_ac = b + a * c * B - a * b * c * B
    r_ab = c + a * b * C - a * b * c * C
    r_bc = a + b * c * A - a * b * c * A
    r_abc = a * b + b * c + a * c - 2 * (a * b * c)
    return r_ac, r_ab, r_bc, r_abc


def triangle_to_star(t: TriangleConfig) -> StarConfig:
    """Solve the four compatibility products for (p_A, p_B, p_C, O).

    Numeric configurations yield exact rationals; symbolic ones yield MFrac
    values (the solution lives in the fraction field).  Raises
    DegenerateTriangleError when a numeric right-hand side vanishes.
    """
    r_ac, r_ab, r_bc, r_abc = _products(t)
    symbolic = any(isinstance(v, MPoly) for v in (r_ac, r_ab, r_bc, r_abc))
    if symbolic:
        r_ac, r_ab, r_bc, r_abc = (MFrac(v) for v in (r_ac, r_ab, r_bc, r_abc))
        if any(v.is_zero() for v in (r_ac, r_ab, r_bc, r_abc)):
            raise DegenerateTriangleError("degenerate triangle")
        p_a = r_abc / r_bc
        p_b = r_abc / r_ac
        p_c = r_abc / r_ab
        hub = (r_ac * r_ab * r_bc) / (r_abc * r_abc)
        return StarConfig(p_a, p_b, p_c, hub, formal=False)
    vals = tuple(Fraction(v) for v in (r_ac, r_ab, r_bc, r_abc))
    if any(v == 0 for v in vals):
        raise DegenerateTriangleError("degenerate triangle")
    r_ac, r_ab, r_bc, r_abc = vals
    p_a = r_abc / r_bc
    p_b = r_abc / r_ac
    p_c = r_abc / r_ab
    hub = r_ac * r_ab * r_bc / r_abc**2
    formal = not all(0 <= v <= 1 for v in (p_a, p_b, p_c, hub))
    return StarConfig(p_a, p_b, p_c, hub, formal=formal)


def star_products_match(t: TriangleConfig, s: StarConfig) -> bool:
    """Exact check of all four defining products."""
    r_ac, r_ab, r_bc, r_abc = _products(t)
    checks = (
        (s.p_A * s.O * s.p_C, r_ac),
        (s.p_A * s.O * s.p_B, r_ab),
        (s.p_B * s.O * s.p_C, r_bc),
        (s.p_A * s.O * s.p_B * s.p_C, r_abc),
    )
    return all(lhs == rhs for lhs, rhs in checks)


@dataclass(frozen=True)
class EquivalenceReport:
    ok: bool
    checked: tuple  # of (terminal tuple, triangle value, star value)
    counterexample: tuple | None


def _triangle_graph(t: TriangleConfig, extras=None) -> GenericGraph:
    nodes = [("A", t.A), ("B", t.B), ("C", t.C)]
    edges = [("B", "C", t.a), ("A", "C", t.b), ("A", "B", t.c)]
    if extras:
        nodes += extras[0]
        edges += extras[1]
    return GenericGraph(tuple(nodes), tuple(edges), frozenset({"A", "B"}))


def _star_graph(t: TriangleConfig, s: StarConfig, extras=None) -> GenericGraph:
    nodes = [("A", t.A), ("B", t.B), ("C", t.C), ("O", s.O)]
    edges = [("A", "O", s.p_A), ("B", "O", s.p_B), ("C", "O", s.p_C)]
    if extras:
        nodes += extras[0]
        edges += extras[1]
    return GenericGraph(tuple(nodes), tuple(edges), frozenset({"A", "B"}))


def verify_equivalence(t: TriangleConfig, s: StarConfig, extras=None) -> EquivalenceReport:
    """Oracle comparison of the original and transformed networks.

    ``extras`` optionally embeds the triangle in a larger graph as
    (extra_nodes, extra_edges) attached to A/B/C.  Every terminal pair among
    {A, B, C} and the extra nodes is compared, plus the triple {A, B, C}.
    """
    extra_nodes = [n for n, _ in (extras[0] if extras else [])]
    names = ["A", "B", "C"] + extra_nodes
    pairs = [(u, v) for i, u in enumerate(names) for v in names[i + 1 :]]
    targets = [frozenset(p) for p in pairs] + [frozenset({"A", "B", "C"})]
    g_tri = _triangle_graph(t, extras)
    g_star = _star_graph(t, s, extras)
    checked = []
    counterexample = None
    for K in targets:
        v_tri = k_terminal_oracle(g_tri, K).value
        v_star = k_terminal_oracle(g_star, K).value
        checked.append((tuple(sorted(K)), v_tri, v_star))
        if v_tri != v_star and counterexample is None:
            counterexample = (tuple(sorted(K)), v_tri, v_star)
    return EquivalenceReport(ok=counterexample is None, checked=tuple(checked), counterexample=counterexample)
