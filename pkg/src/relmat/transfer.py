"""Transfer-matrix evaluation of two- and all-terminal reliabilities.

Each family admits a fixed-size matrix per stage whose boundary contraction
yields the reliability:

  ladder (imperfect nodes, 4x4, stage k carries a_k, b_k, S_{k-1}):
      Rel2(S_0 -> S_n) = S_n (0 0 1 0) M_n ... M_1 (0,0,1,0)^T,   a_1 := 0
  ladder (perfect nodes, 3x3):
      Rel2 = (0 1 0) M'_n ... M'_1 (0,1,0)^T
  fan (imperfect nodes, 4x4, stage k carries a_k, b_k, S_k; hub T in the
  boundary row):
      Rel2(S_0 -> S_n) = (1 T 0 0) M^_n ... M^_0 (1,0,0,0)^T,     a_0 := 1
  fan (perfect nodes, 3x3): boundary (1 0 0) ... (1,0,0)^T
  all-terminal (2x2, nodes perfect WLOG):
      R_n = (1 0) M~_n ... M~_1 (1,0)^T,                          a_1 := 0

A product of zero matrices is the identity, which fixes the n = 0 values
(Rel2(S_0 -> S_0) = S_0 for both families).  Every result is affine in each
individual element reliability; matrices are applied lowest stage first
(rightmost in the written product).

Entries may be exact rationals or polynomials, so the same code path serves
numeric evaluation, the uniform (p, rho) specialization, and fully symbolic
per-element results (exponential in n; meant for small n).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .families import FanInstance, LadderInstance, RelValue
from .mpoly import MPoly, sym
from .unipoly import UniPoly

Matrix = tuple  # tuple of row tuples
Vector = tuple

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class TransferMatrix:
    kind: str  # BC4 | BC3 | FAN4 | FAN3 | ALLTERM2
    entries: Matrix

    def __post_init__(self):
        dim = {"BC4": 4, "BC3": 3, "FAN4": 4, "FAN3": 3, "ALLTERM2": 2}[self.kind]
        if len(self.entries) != dim or any(len(r) != dim for r in self.entries):
            raise ValueError(f"{self.kind} matrix must be {dim}x{dim}")

    @property
    def dimension(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class TransferChain:
    left: Vector
    matrices: tuple  # of TransferMatrix, applied right to left (index 0 first)
    right: Vector
    prefactor: object = _ONE

    def contract(self):
        v = list(self.right)
        for m in self.matrices:
            v = mat_vec(m.entries, v)
        acc = _ZERO
        for le, c in zip(self.left, v):
            acc = acc + le * c
        return self.prefactor * acc


def mat_vec(m: Matrix, v: Sequence) -> list:
    out = []
    for row in m:
        acc = _ZERO
        for a, b in zip(row, v):
            acc = acc + a * b
        out.append(acc)
    return out


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), _ZERO) for j in range(n))
        for i in range(n)
    )


# -- stage matrices (templates from the derivation) -----------------------------


def bc4_matrix(a, b, S) -> TransferMatrix:
    ab = a * b
    return TransferMatrix(
        "BC4",
        (
            (_ZERO, _ZERO, S, _ZERO),
            (ab * S, ab * S, _ZERO, ab * S),
            (a, a * S, b * S, ab * S),
            (-(ab * S), -(ab * S), -(b * S), a * (1 - 2 * b) * S),
        ),
    )


def bc3_matrix(a, b) -> TransferMatrix:
    ab = a * b
    return TransferMatrix(
        "BC3",
        (
            (ab, _ONE, ab),
            (a, b, ab),
            (-ab, -b, a * (1 - 2 * b)),
        ),
    )


def fan4_matrix(a, b, S) -> TransferMatrix:
    ab = a * b
    return TransferMatrix(
        "FAN4",
        (
            (a * S, _ZERO, _ZERO, _ZERO),
            (_ZERO, a * S, b * S, ab * S),
            (ab * S, ab * S, _ONE, ab * S),
            (-(ab * S), -(ab * S), -(b * S), a * (1 - 2 * b) * S),
        ),
    )


def fan3_matrix(a, b) -> TransferMatrix:
    ab = a * b
    return TransferMatrix(
        "FAN3",
        (
            (a, b, ab),
            (ab, _ONE, ab),
            (-ab, -b, a * (1 - 2 * b)),
        ),
    )


def allterm2_matrix(a, b) -> TransferMatrix:
    return TransferMatrix(
        "ALLTERM2",
        (
            (a + b, a * b),
            (1 - a - 2 * b, a * (1 - 2 * b)),
        ),
    )


# -- chains and high-level evaluations ------------------------------------------


def bc_chain(inst: LadderInstance) -> TransferChain:
    mats = []
    for k in range(1, inst.n + 1):
        a_k = _ZERO if k == 1 else inst.a[k]  # a_1 is arbitrary; fixed to 0
        mats.append(bc4_matrix(a_k, inst.b[k], inst.S[k - 1]))
    return TransferChain(
        left=(_ZERO, _ZERO, _ONE, _ZERO),
        matrices=tuple(mats),
        right=(_ZERO, _ZERO, _ONE, _ZERO),
        prefactor=inst.S[inst.n],
    )


def rel2_bc(inst: LadderInstance) -> RelValue:
    """Two-terminal reliability S_0 -> S_n of a ladder instance, exact."""
    return bc_chain(inst).contract()


def rel2_bc_perfect(n: int, a, b) -> RelValue:
    """Perfect-node ladder, per-edge reliabilities a (2..n) and b (1..n)."""
    mats = []
    for k in range(1, n + 1):
        a_k = _ZERO if k == 1 else a[k]
        mats.append(bc3_matrix(a_k, b[k]))
    chain = TransferChain((_ZERO, _ONE, _ZERO), tuple(mats), (_ZERO, _ONE, _ZERO))
    return chain.contract()


def fan_chain(inst: FanInstance) -> TransferChain:
    mats = [fan4_matrix(_ONE, inst.b[0], inst.S[0])]  # a_0 == 1 by convention
    for k in range(1, inst.n + 1):
        mats.append(fan4_matrix(inst.a[k], inst.b[k], inst.S[k]))
    return TransferChain(
        left=(_ONE, inst.t_hub, _ZERO, _ZERO),
        matrices=tuple(mats),
        right=(_ONE, _ZERO, _ZERO, _ZERO),
    )


def rel2_fan(inst: FanInstance) -> RelValue:
    """Two-terminal reliability S_0 -> S_n of a fan instance, exact."""
    return fan_chain(inst).contract()


def rel2_fan_perfect(n: int, a, b) -> RelValue:
    mats = [fan3_matrix(_ONE, b[0])]
    for k in range(1, n + 1):
        mats.append(fan3_matrix(a[k], b[k]))
    chain = TransferChain((_ONE, _ZERO, _ZERO), tuple(mats), (_ONE, _ZERO, _ZERO))
    return chain.contract()


def relA(n: int, a, b) -> RelValue:
    """All-terminal reliability of the n-stage ladder (edge values only).

    Nodes are perfect without loss of generality for the all-terminal measure.
    The same value is the all-terminal reliability of the fan one stage
    shorter, under the shared-triangle edge correspondence.
    """
    if n == 0:
        return _ONE
    mats = []
    for k in range(1, n + 1):
        a_k = _ZERO if k == 1 else a[k]
        mats.append(allterm2_matrix(a_k, b[k]))
    chain = TransferChain((_ONE, _ZERO), tuple(mats), (_ONE, _ZERO))
    return chain.contract()


def relA_uniform(n: int, p) -> RelValue:
    if n == 0:
        return _ONE
    return relA(n, {i: p for i in range(2, n + 1)}, {i: p for i in range(1, n + 1)})


# -- uniform (p, rho) specialization ---------------------------------------------


def bc_uniform_matrix(p, rho) -> TransferMatrix:
    return bc4_matrix(p, p, rho)


def fan_uniform_matrix(p, rho) -> TransferMatrix:
    return fan4_matrix(p, p, rho)


def allterm_uniform_matrix(p) -> TransferMatrix:
    return allterm2_matrix(p, p)


def _div_by_p(value, p):
    """Exact cancellation of the fan's formal 1/p prefactor."""
    if isinstance(value, MPoly):
        if isinstance(p, MPoly):
            return value.divide_by_monomial("p")
        return value * (Fraction(1) / Fraction(p))
    return value / p


def rel2_uniform(family: str, n: int, p, rho) -> RelValue:
    """Uniform-case Rel2 via powers of the single stage matrix.

    BC: rho * (0 0 1 0) M(p,rho)^n (0,0,1,0)^T.
    Fan: (1/p) (1 rho 0 0) M^(p,rho)^(n+1) (1,0,0,0)^T; the formal 1/p always
    cancels exactly.  For numeric p = 0 the cancellation is carried out
    symbolically before substituting.
    """
    if family == "bc":
        m = bc_uniform_matrix(p, rho).entries
        v = [_ZERO, _ZERO, _ONE, _ZERO]
        for _ in range(n):
            v = mat_vec(m, v)
        return rho * v[2]
    if family == "fan":
        if not isinstance(p, MPoly) and p == 0:
            val = rel2_uniform("fan", n, sym("p"), rho)
            if isinstance(val, MPoly) and "p" in val.vars:
                val = val.substitute({"p": Fraction(0)})
            return val
        m = fan_uniform_matrix(p, rho).entries
        v = [_ONE, _ZERO, _ZERO, _ZERO]
        for _ in range(n + 1):
            v = mat_vec(m, v)
        contracted = v[0] + rho * v[1]
        return _div_by_p(contracted, p)
    raise ValueError(f"unknown family {family!r}")


def rel2_uniform_sweep(family: str, n_max: int, p, rho) -> list:
    """Rel2 for n = 0..n_max sharing prefix products of the stage matrix."""
    out = []
    if family == "bc":
        m = bc_uniform_matrix(p, rho).entries
        v = [_ZERO, _ZERO, _ONE, _ZERO]
        for n in range(n_max + 1):
            out.append(rho * v[2])
            if n < n_max:
                v = mat_vec(m, v)
        return out
    if family == "fan":
        if not isinstance(p, MPoly) and p == 0:
            vals = rel2_uniform_sweep("fan", n_max, sym("p"), rho)
            return [
                v.substitute({"p": Fraction(0)}) if isinstance(v, MPoly) and "p" in v.vars else v
                for v in vals
            ]
        m = fan_uniform_matrix(p, rho).entries
        v = mat_vec(m, [_ONE, _ZERO, _ZERO, _ZERO])
        for n in range(n_max + 1):
            out.append(_div_by_p(v[0] + rho * v[1], p))
            if n < n_max:
                v = mat_vec(m, v)
        return out
    raise ValueError(f"unknown family {family!r}")


def relA_uniform_sweep(n_max: int, p) -> list:
    out = [_ONE]
    if n_max == 0:
        return out
    m = allterm_uniform_matrix(p).entries
    v = [p, 1 - 2 * p]  # M~_1 (1,0)^T with a_1 = 0, i.e. (b_1, 1 - 2 b_1)
    for n in range(1, n_max + 1):
        out.append(v[0])
        if n < n_max:
            v = mat_vec(m, v)
    return out


# -- characteristic polynomials ---------------------------------------------------


def _det(m: list[list[MPoly]]) -> MPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    total = MPoly.zero()
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in m[1:]]
        cof = m[0][j] * _det(minor)
        total = total + cof if j % 2 == 0 else total - cof
    return total


def charpoly(matrix: TransferMatrix, var: str = "x") -> UniPoly:
    """det(xI - M) as a UniPoly in ``var`` with MPoly coefficients."""
    x = MPoly.var(var)
    n = matrix.dimension

    def lift(e):
        return e if isinstance(e, MPoly) else MPoly.const(e)

    m = [
        [(x - lift(matrix.entries[i][j])) if i == j else -lift(matrix.entries[i][j]) for j in range(n)]
        for i in range(n)
    ]
    det = _det(m)
    coeffs = [det.coefficient_of(var, k) for k in range(n + 1)]
    return UniPoly(var, coeffs)
