"""Parametrized instances of the two recursive graph families.

The ladder has nodes S_0..S_n; edge b_i joins (S_{i-1}, S_i) for i = 1..n and
edge a_i joins (S_{i-2}, S_i) for i = 2..n, so the index n names the target
terminal and the node count is n+1 (the classical "25-node" case is n = 24).

The fan is the path S_0..S_n (edges a_i on (S_{i-1}, S_i)) with every node also
tied to a distinguished hub node T by edge b_i on (S_i, T); the hub is stored
as its own field because it plays a special Boolean role in the transfer
recursion, not as an ordinary path node.

Element reliabilities are either exact rationals in [0, 1] or symbols (single
variable polynomials such as p, rho, a3, S2) with the convention that
admissible substitutions land in [0, 1].
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .mpoly import MPoly, sym

RelValue = Union[Fraction, MPoly]


class BadElementError(ValueError):
    pass


def _check_rel(value: RelValue, name: str) -> RelValue:
    if isinstance(value, int):
        value = Fraction(value)
    if isinstance(value, Fraction):
        if not 0 <= value <= 1:
            raise BadElementError(f"{name}: constant reliability {value} outside [0, 1]")
        return value
    if isinstance(value, MPoly):
        return value
    raise BadElementError(f"{name}: expected Fraction or MPoly, got {type(value).__name__}")


def parse_rel(text: str) -> RelValue:
    """Parse an element value from the instance JSON format: '3/10' or 'p'."""
    t = text.strip()
    if t and (t[0].isdigit() or t[0] in "+-"):
        return Fraction(t)
    return sym(t)


def _rel_str(value: RelValue) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if len(value.terms) == 1 and value.total_degree() == 1:
        return value.vars[0]
    raise ValueError("only constants and single symbols serialize to instance JSON")


@dataclass(frozen=True)
class LadderInstance:
    n: int
    a: Mapping[int, RelValue]  # i in 2..n
    b: Mapping[int, RelValue]  # i in 1..n
    S: Mapping[int, RelValue]  # i in 0..n

    def __post_init__(self):
        _require_indices("a", self.a, range(2, self.n + 1))
        _require_indices("b", self.b, range(1, self.n + 1))
        _require_indices("S", self.S, range(0, self.n + 1))


@dataclass(frozen=True)
class FanInstance:
    n: int
    a: Mapping[int, RelValue]  # i in 1..n
    b: Mapping[int, RelValue]  # i in 0..n
    S: Mapping[int, RelValue]  # i in 0..n
    t_hub: RelValue = field(default_factory=lambda: Fraction(1))

    def __post_init__(self):
        _require_indices("a", self.a, range(1, self.n + 1))
        _require_indices("b", self.b, range(0, self.n + 1))
        _require_indices("S", self.S, range(0, self.n + 1))


@dataclass(frozen=True)
class GenericGraph:
    """Simple undirected graph with per-node/per-edge reliabilities."""

    nodes: tuple  # of (name, RelValue)
    edges: tuple  # of (u, v, RelValue)
    terminals: frozenset

    def __post_init__(self):
        names = [n for n, _ in self.nodes]
        if len(set(names)) != len(names):
            raise BadElementError("duplicate node names")
        seen = set()
        for u, v, _ in self.edges:
            if u == v:
                raise BadElementError(f"self-loop at {u}")
            if u not in names or v not in names:
                raise BadElementError(f"edge ({u},{v}) references unknown node")
            key = frozenset((u, v))
            if key in seen:
                raise BadElementError(f"duplicate edge ({u},{v})")
            seen.add(key)
        if not self.terminals:
            raise BadElementError("terminal set K must be nonempty")
        if not self.terminals <= set(names):
            raise BadElementError("terminals must be nodes of the graph")

    def node_rel(self, name) -> RelValue:
        for n, r in self.nodes:
            if n == name:
                return r
        raise KeyError(name)


def _require_indices(kind: str, mapping: Mapping[int, RelValue], want) -> None:
    want = list(want)
    missing = [i for i in want if i not in mapping]
    extra = [i for i in mapping if i not in want]
    if missing or extra:
        raise BadElementError(
            f"{kind}: bad index set (missing {missing or 'none'}, unexpected {extra or 'none'})"
        )
    for i in want:
        _check_rel(mapping[i], f"{kind}{i}")


# -- builders -----------------------------------------------------------------


def build_ladder(n: int, elements: Mapping[str, RelValue]) -> LadderInstance:
    """Build from explicit per-element values keyed 'a2', 'b1', 'S0', ..."""
    if n < 0:
        raise BadElementError("n must be >= 0")
    a, b, S = {}, {}, {}
    for key, val in elements.items():
        kind, idx = key[0], int(key[1:])
        {"a": a, "b": b, "S": S}[kind][idx] = _check_rel(val, key)
    return LadderInstance(n, a, b, S)


def uniform_ladder(n: int, p: RelValue, rho: RelValue) -> LadderInstance:
    p, rho = _check_rel(p, "p"), _check_rel(rho, "rho")
    return LadderInstance(
        n,
        {i: p for i in range(2, n + 1)},
        {i: p for i in range(1, n + 1)},
        {i: rho for i in range(0, n + 1)},
    )


def symbolic_ladder(n: int) -> LadderInstance:
    return LadderInstance(
        n,
        {i: sym(f"a{i}") for i in range(2, n + 1)},
        {i: sym(f"b{i}") for i in range(1, n + 1)},
        {i: sym(f"S{i}") for i in range(0, n + 1)},
    )


def build_fan(n: int, elements: Mapping[str, RelValue], t_hub: RelValue = Fraction(1)) -> FanInstance:
    if n < 0:
        raise BadElementError("n must be >= 0")
    a, b, S = {}, {}, {}
    for key, val in elements.items():
        if key == "T":
            t_hub = val
            continue
        kind, idx = key[0], int(key[1:])
        {"a": a, "b": b, "S": S}[kind][idx] = _check_rel(val, key)
    return FanInstance(n, a, b, S, _check_rel(t_hub, "T"))


def uniform_fan(n: int, p: RelValue, rho: RelValue) -> FanInstance:
    p, rho = _check_rel(p, "p"), _check_rel(rho, "rho")
    return FanInstance(
        n,
        {i: p for i in range(1, n + 1)},
        {i: p for i in range(0, n + 1)},
        {i: rho for i in range(0, n + 1)},
        rho,
    )


def symbolic_fan(n: int) -> FanInstance:
    return FanInstance(
        n,
        {i: sym(f"a{i}") for i in range(1, n + 1)},
        {i: sym(f"b{i}") for i in range(0, n + 1)},
        {i: sym(f"S{i}") for i in range(0, n + 1)},
        sym("T"),
    )


# -- bridge to the enumeration oracle -----------------------------------------


def to_generic(instance, source: int = 0, target: int | None = None) -> GenericGraph:
    """Flatten a family instance into a generic K-terminal graph.

    A ladder with terminal index n has n+1 nodes and 2n-1 edges (n >= 1); a fan
    has n+2 nodes (hub included) and 2n+1 edges.
    """
    if isinstance(instance, LadderInstance):
        n = instance.n
        target = n if target is None else target
        nodes = tuple((f"S{i}", instance.S[i]) for i in range(n + 1))
        edges = [(f"S{i-1}", f"S{i}", instance.b[i]) for i in range(1, n + 1)]
        edges += [(f"S{i-2}", f"S{i}", instance.a[i]) for i in range(2, n + 1)]
        return GenericGraph(nodes, tuple(edges), frozenset({f"S{source}", f"S{target}"}))
    if isinstance(instance, FanInstance):
        n = instance.n
        target = n if target is None else target
        nodes = tuple((f"S{i}", instance.S[i]) for i in range(n + 1)) + (("T", instance.t_hub),)
        edges = [(f"S{i-1}", f"S{i}", instance.a[i]) for i in range(1, n + 1)]
        edges += [(f"S{i}", "T", instance.b[i]) for i in range(0, n + 1)]
        return GenericGraph(nodes, tuple(edges), frozenset({f"S{source}", f"S{target}"}))
    raise TypeError(f"cannot convert {type(instance).__name__}")


# -- instance JSON -------------------------------------------------------------


def instance_to_json(instance) -> str:
    if isinstance(instance, LadderInstance):
        elements = {f"a{i}": v for i, v in instance.a.items()}
        elements |= {f"b{i}": v for i, v in instance.b.items()}
        elements |= {f"S{i}": v for i, v in instance.S.items()}
        obj = {"family": "bc", "n": instance.n,
               "elements": {k: _rel_str(v) for k, v in elements.items()}}
    elif isinstance(instance, FanInstance):
        elements = {f"a{i}": v for i, v in instance.a.items()}
        elements |= {f"b{i}": v for i, v in instance.b.items()}
        elements |= {f"S{i}": v for i, v in instance.S.items()}
        elements["T"] = instance.t_hub
        obj = {"family": "fan", "n": instance.n,
               "elements": {k: _rel_str(v) for k, v in elements.items()}}
    else:
        raise TypeError(f"cannot serialize {type(instance).__name__}")
    return json.dumps(obj, sort_keys=True)


def instance_from_json(text: str):
    obj = json.loads(text)
    family = obj["family"]
    n = int(obj["n"])
    elements = {k: parse_rel(v) for k, v in obj["elements"].items()}
    if family == "bc":
        return build_ladder(n, elements)
    if family == "fan":
        return build_fan(n, elements)
    raise BadElementError(f"unknown family {family!r}")
