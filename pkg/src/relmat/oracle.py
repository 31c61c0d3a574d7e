"""Ground-truth K-terminal reliability by exhaustive state enumeration.

A system state assigns up/down to every node and every edge, 2^(|V|+|E|)
states in all.  A state counts when every terminal is up and the terminals lie
in one component of the subgraph formed by the up nodes and those up edges
whose endpoints are both up.

The enumeration is organized as: for each node subset N containing K (nodes
outside N are down), sum over subsets F of the edges induced by N; edges with
a down endpoint marginalize out exactly.  The reported ``states_enumerated``
is therefore the node-reduced count sum_N 2^(|E[N]|) rather than the raw
2^(|V|+|E|).  Connectivity verdicts per (N, F) are independent of the element
reliabilities, so they are cached per graph shape and reused across repeated
numeric evaluations (union-find with path compression, deterministic order).

Modes:
  numeric        exact rationals from the stored element values
  symbolic-prho  every node gets reliability rho, every edge p (MPoly result)
  symbolic-full  every element must carry a distinct symbol; exact multilinear
                 polynomial in all of them (exponential; small graphs only)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .families import GenericGraph
from .mpoly import MPoly
from .unipoly import UniPoly

FULL_MODE_CAP = 26
SYMBOLIC_FULL_CAP = 18


class OracleTooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    value: object
    states_enumerated: int
    terminals: frozenset


def _union_find_connected(n_nodes: int, edges, terminals) -> bool:
    parent = list(range(n_nodes))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru
    root = find(terminals[0])
    return all(find(t) == root for t in terminals[1:])


_shape_cache: dict = {}


def _graph_shape(g: GenericGraph, K: frozenset):
    """Connectivity verdicts for every (node subset, induced edge subset).

    Returns (node_names, edge_list, free_nodes, scenarios) where scenarios is a
    list of (node_mask, induced_edge_indices, verdict_bits); bit F of
    verdict_bits says whether edge subset F of the induced edges connects K.
    """
    names = tuple(n for n, _ in g.nodes)
    index = {n: i for i, n in enumerate(names)}
    edges = tuple((index[u], index[v]) for u, v, _ in g.edges)
    kidx = tuple(sorted(index[t] for t in K))
    key = (names, edges, kidx)
    if key in _shape_cache:
        return _shape_cache[key]

    free = [i for i in range(len(names)) if i not in kidx]
    scenarios = []
    for fmask in range(1 << len(free)):
        node_mask = 0
        for t in kidx:
            node_mask |= 1 << t
        for j, i in enumerate(free):
            if fmask >> j & 1:
                node_mask |= 1 << i
        induced = [
            ei for ei, (u, v) in enumerate(edges) if node_mask >> u & 1 and node_mask >> v & 1
        ]
        # relabel the up nodes 0..m-1 for the union-find
        up_nodes = [i for i in range(len(names)) if node_mask >> i & 1]
        relabel = {i: j for j, i in enumerate(up_nodes)}
        terms = [relabel[t] for t in kidx]
        verdicts = 0
        for F in range(1 << len(induced)):
            chosen = [
                (relabel[edges[induced[j]][0]], relabel[edges[induced[j]][1]])
                for j in range(len(induced))
                if F >> j & 1
            ]
            if _union_find_connected(len(up_nodes), chosen, terms):
                verdicts |= 1 << F
        scenarios.append((node_mask, tuple(induced), verdicts))
    shape = (names, edges, tuple(scenarios))
    _shape_cache[key] = shape
    return shape


def _subset_weights(values: list[Fraction]) -> list[Fraction]:
    """Weights of all subsets: W[F] = prod_{i in F} v_i * prod_{i not in F} (1 - v_i)."""
    weights = [Fraction(1)]
    for v in values:
        q = 1 - v
        down = [w * q for w in weights]
        up = [w * v for w in weights]
        weights = down + up
    return weights


def k_terminal_oracle(g: GenericGraph, K=None, mode: str = "numeric") -> OracleResult:
    K = frozenset(K) if K is not None else g.terminals
    if not K <= {n for n, _ in g.nodes}:
        raise ValueError("terminals must be nodes of the graph")
    size = len(g.nodes) + len(g.edges)
    cap = SYMBOLIC_FULL_CAP if mode == "symbolic-full" else FULL_MODE_CAP
    if size > cap:
        raise OracleTooLargeError(
            f"instance too large for oracle: |V|+|E| = {size} > {cap} ({mode})"
        )
    names, edges, scenarios = _graph_shape(g, K)
    states = sum(1 << len(ind) for _, ind, _ in scenarios)

    if mode == "numeric":
        value = _oracle_numeric(g, names, edges, scenarios)
    elif mode == "symbolic-prho":
        value = _oracle_prho(names, scenarios)
    elif mode == "symbolic-full":
        value = _oracle_full(g, names, edges, scenarios)
    else:
        raise ValueError(f"unknown oracle mode {mode!r}")
    return OracleResult(value=value, states_enumerated=states, terminals=K)


def _oracle_numeric(g, names, edges, scenarios):
    node_rel = [Fraction(r) if isinstance(r, int) else r for _, r in g.nodes]
    edge_rel = [r for _, _, r in g.edges]
    if any(isinstance(r, MPoly) for r in node_rel + edge_rel):
        raise ValueError("numeric mode requires rational element values")
    total = Fraction(0)
    for node_mask, induced, verdicts in scenarios:
        if verdicts == 0:
            continue
        w_nodes = Fraction(1)
        for i in range(len(names)):
            w_nodes *= node_rel[i] if node_mask >> i & 1 else 1 - node_rel[i]
        if w_nodes == 0:
            continue
        weights = _subset_weights([edge_rel[e] for e in induced])
        acc = Fraction(0)
        v = verdicts
        while v:
            low = v & -v
            acc += weights[low.bit_length() - 1]
            v ^= low
        total += w_nodes * acc
    return total


def _oracle_prho(names, scenarios):
    n_nodes = len(names)
    counts: dict = {}
    for node_mask, induced, verdicts in scenarios:
        if verdicts == 0:
            continue
        up = bin(node_mask).count("1")
        m = len(induced)
        v = verdicts
        while v:
            low = v & -v
            F = low.bit_length() - 1
            k = bin(F).count("1")
            key = (up, m, k)
            counts[key] = counts.get(key, 0) + 1
            v ^= low
    p, rho = MPoly.var("p"), MPoly.var("rho")
    one = MPoly.one()
    max_np = max((n_nodes - up for up, _, _ in counts), default=0)
    max_ep = max((m - k for _, m, k in counts), default=0)
    qn = [one]
    for _ in range(max_np):
        qn.append(qn[-1] * (one - rho))
    qe = [one]
    for _ in range(max_ep):
        qe.append(qe[-1] * (one - p))
    total = MPoly.zero()
    for (up, m, k), c in sorted(counts.items()):
        total = total + c * rho**up * qn[n_nodes - up] * p**k * qe[m - k]
    return total


def _oracle_full(g, names, edges, scenarios):
    symbols = []
    for name, r in g.nodes:
        if not (isinstance(r, MPoly) and len(r.terms) == 1 and r.total_degree() == 1):
            raise ValueError("symbolic-full mode requires one distinct symbol per element")
        symbols.append(r.vars[0])
    for u, v, r in g.edges:
        if not (isinstance(r, MPoly) and len(r.terms) == 1 and r.total_degree() == 1):
            raise ValueError("symbolic-full mode requires one distinct symbol per element")
        symbols.append(r.vars[0])
    if len(set(symbols)) != len(symbols):
        raise ValueError("element symbols must be pairwise distinct")
    n_nodes = len(names)
    acc: dict[int, int] = {}
    for node_mask, induced, verdicts in scenarios:
        if verdicts == 0:
            continue
        down_nodes = [i for i in range(n_nodes) if not node_mask >> i & 1]
        v = verdicts
        while v:
            low = v & -v
            F = low.bit_length() - 1
            v ^= low
            up_mask = node_mask
            down_bits = []
            for j, e in enumerate(induced):
                if F >> j & 1:
                    up_mask |= 1 << (n_nodes + e)
                else:
                    down_bits.append(1 << (n_nodes + e))
            down_bits.extend(1 << i for i in down_nodes)
            # expand prod (1 - x_j) over the down elements
            masks = [(up_mask, 1)]
            for bit in down_bits:
                masks = [(m, c) for m, c in masks] + [(m | bit, -c) for m, c in masks]
            for m, c in masks:
                acc[m] = acc.get(m, 0) + c
    terms = {}
    nsym = len(symbols)
    for mask, c in acc.items():
        if c == 0:
            continue
        exps = tuple(1 if mask >> i & 1 else 0 for i in range(nsym))
        terms[exps] = Fraction(c)
    return MPoly(tuple(symbols), terms)


# -- F-basis change ---------------------------------------------------------------


def coefficient_spectrum(poly, degree: int | None = None) -> list[Fraction]:
    """Coefficients F_i of P(p) = sum_i F_i p^(D-i) (1-p)^i, exact.

    ``poly`` is a UniPoly in p (or an MPoly in the single variable p); D
    defaults to deg P.  Computed via F(t) = (1+t)^D P(1/(1+t)) with exact
    binomial accumulation.
    """
    if isinstance(poly, MPoly):
        if poly.vars not in ((), ("p",)):
            raise ValueError("expected a polynomial in p alone")
        coeffs = [Fraction(0)] * (poly.total_degree() + 1)
        for e, c in poly.terms.items():
            coeffs[e[0] if e else 0] = c
        poly = UniPoly("p", coeffs)
    D = poly.degree() if degree is None else degree
    if poly.degree() > D:
        raise ValueError("degree bound below polynomial degree")
    out = [Fraction(0)] * (D + 1)
    for j, cj in enumerate(poly.coeffs):
        if cj == 0:
            continue
        # add cj * (1+t)^(D-j)
        m = D - j
        binom = 1
        for i in range(m + 1):
            out[i] += cj * binom
            binom = binom * (m - i) // (i + 1)
    while out and out[-1] == 0:
        out.pop()
    return out


# -- deletion / contraction (for consistency tests) -------------------------------


def delete_edge(g: GenericGraph, edge_index: int) -> GenericGraph:
    edges = tuple(e for i, e in enumerate(g.edges) if i != edge_index)
    return GenericGraph(g.nodes, edges, g.terminals)


def contract_edge(g: GenericGraph, edge_index: int) -> GenericGraph:
    """Merge the endpoints of an edge; the merged node reliability multiplies.

    Exact for perfect-node two-terminal use and for the all-terminal measure
    (where every node must be up anyway).  With imperfect nodes and K smaller
    than V the merged-node model is NOT the p_e = 1 conditioning, which is why
    the consistency tests pair this with those two regimes only.
    """
    u, v, _ = g.edges[edge_index]
    merged = f"{u}+{v}"
    ru = g.node_rel(u)
    rv = g.node_rel(v)
    nodes = tuple((n, r) for n, r in g.nodes if n not in (u, v)) + ((merged, ru * rv),)

    def rename(w):
        return merged if w in (u, v) else w

    collected: dict = {}
    order = []
    for i, (a, b, r) in enumerate(g.edges):
        if i == edge_index:
            continue
        a, b = rename(a), rename(b)
        if a == b:
            continue  # loop on the merged node carries no information
        key = frozenset((a, b))
        if key in collected:
            prev = collected[key][2]
            collected[key] = (collected[key][0], collected[key][1], prev + r - prev * r)
        else:
            collected[key] = (a, b, r)
            order.append(key)
    edges = tuple(collected[k] for k in order)  # parallel edges merge by the parallel law
    terminals = frozenset(rename(t) for t in g.terminals)
    return GenericGraph(nodes, edges, terminals)
