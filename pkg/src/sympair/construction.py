"""Evaluation codes with interleaved beta points.

A code is fixed by a field GF(q), a dimension ``k``, two distinct points
``beta1, beta2`` and ``m`` further distinct points ``alpha_1..alpha_m``
with ``3 <= k < m <= q - 2``.  With ``t = (k - 1) // 2`` and
``m1 = m // t`` the evaluation sequence is built from ``B`` blocks, where
``B = m1`` for even ``m1`` and ``m1 - 1`` otherwise::

    block j = (alpha_{(j-1)t+1}, ..., alpha_{jt}, beta1 if j odd else beta2)

followed by the tail ``alpha_{tB+1}, ..., alpha_m``.  The code length is
``n = m + m1`` (even m1) or ``m + m1 - 1`` (odd m1), and the code is the
set of evaluations of all polynomials of degree at most ``k - 1``.
These codes meet the symbol-pair Singleton bound: ``d_p = n - k + 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .errors import BadDimension, BadDp, BadM, BadPoints, DegreeTooHigh, FieldMismatch
from .finite_field import Field, FieldElement, Polynomial, field_from_order
from .pair_metric import SymbolVector

ALPHA, BETA = "alpha", "beta"


@dataclass(frozen=True)
class EvalPoint:
    tag: str  # ALPHA or BETA
    index: int  # 1-based alpha index, or 1/2 for the betas
    value: int

    def label(self) -> str:
        if self.tag == ALPHA:
            return f"a{self.index}:{self.value}"
        return f"b{self.index}:{self.value}"


@dataclass(frozen=True)
class CodeSpec:
    field: Field
    k: int
    m: int
    beta1: int
    beta2: int
    alphas: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def t(self) -> int:
        return (self.k - 1) // 2

    @property
    def m1(self) -> int:
        return self.m // self.t

    @property
    def blocks(self) -> int:
        return self.m1 if self.m1 % 2 == 0 else self.m1 - 1

    @property
    def n(self) -> int:
        return self.m + self.blocks

    def to_json(self) -> dict:
        return {
            "alphas": list(self.alphas),
            "beta1": self.beta1,
            "beta2": self.beta2,
            "e": self.field.e,
            "k": self.k,
            "m": self.m,
            "m1": self.m1,
            "n": self.n,
            "p": self.field.p,
            "q": self.q,
            "t": self.t,
        }

    def __repr__(self) -> str:
        return f"CodeSpec(q={self.q}, k={self.k}, m={self.m}, n={self.n})"


def _point(F: Field, name: str, v) -> int:
    if isinstance(v, FieldElement):
        return F.encode(v)
    v = int(v)
    if not 0 <= v < F.q:
        raise BadPoints(f"{name}={v} is not an element of GF({F.q})")
    return v


def make_spec(
    field: Field | int,
    k: int,
    m: int,
    beta1: Optional[int] = None,
    beta2: Optional[int] = None,
    alphas: Optional[Sequence[int]] = None,
) -> CodeSpec:
    """Validate parameters and fill in defaults.

    ``field`` may be a :class:`Field` or the field order q.  Defaults are
    ``beta1 = 0``, ``beta2 = 1`` and the first ``m`` remaining elements in
    ascending encoding order as alphas.
    """
    F = field if isinstance(field, Field) else field_from_order(field)
    if k < 3:
        raise BadDimension(f"k must satisfy k >= 3, got k={k}")
    if k >= m:
        raise BadDimension(f"k must satisfy k < m, got k={k}, m={m}")
    return _with_points(F, k, m, beta1, beta2, alphas)


def root_spec(
    field: Field | int,
    m: int,
    beta1: Optional[int] = None,
    beta2: Optional[int] = None,
    alphas: Optional[Sequence[int]] = None,
) -> CodeSpec:
    """Point choice only, for the root-class census: any ``1 <= m <= q - 2``.

    The class definitions never involve the dimension, so ``k`` is fixed
    at 3 and the ``k < m`` requirement is not enforced.
    """
    F = field if isinstance(field, Field) else field_from_order(field)
    if m < 1:
        raise BadM(f"m must satisfy m >= 1, got m={m}")
    return _with_points(F, 3, m, beta1, beta2, alphas)


def _with_points(F: Field, k: int, m: int, beta1, beta2, alphas) -> CodeSpec:
    q = F.q
    if m > q - 2:
        raise BadM(f"m must satisfy m <= q-2, got m={m}, q={q}")

    b1 = 0 if beta1 is None else _point(F, "beta1", beta1)
    b2 = 1 if beta2 is None else _point(F, "beta2", beta2)
    if b1 == b2:
        raise BadPoints(f"beta1 and beta2 must differ, both are {b1}")

    if alphas is None:
        alist = [v for v in range(q) if v not in (b1, b2)][:m]
    else:
        alist = [_point(F, "alpha", a) for a in alphas]
        if len(alist) != m:
            raise BadPoints(f"expected {m} alphas, got {len(alist)}")
        if len(set(alist)) != m:
            raise BadPoints("alphas must be distinct")
        if b1 in alist or b2 in alist:
            raise BadPoints("alphas must avoid beta1 and beta2")
    return CodeSpec(F, k, m, b1, b2, tuple(alist))


def layout(spec: CodeSpec) -> tuple[EvalPoint, ...]:
    t = spec.t
    pts: list[EvalPoint] = []

    def alpha(i: int) -> EvalPoint:
        return EvalPoint(ALPHA, i, spec.alphas[i - 1])

    for j in range(1, spec.blocks + 1):
        pts.extend(alpha(i) for i in range((j - 1) * t + 1, j * t + 1))
        pts.append(EvalPoint(BETA, 1, spec.beta1) if j % 2 else EvalPoint(BETA, 2, spec.beta2))
    pts.extend(alpha(i) for i in range(t * spec.blocks + 1, spec.m + 1))
    return tuple(pts)


def eval_points(spec: CodeSpec) -> tuple[int, ...]:
    return tuple(p.value for p in layout(spec))


@dataclass(frozen=True)
class Codeword:
    entries: SymbolVector
    message: Optional[Polynomial] = dc_field(default=None, compare=False)

    @property
    def values(self) -> tuple[int, ...]:
        return self.entries.values


def encode(spec: CodeSpec, f: Polynomial) -> Codeword:
    if f.field != spec.field:
        raise FieldMismatch(f"message over {f.field!r}, code over {spec.field!r}")
    if f.degree > spec.k - 1:
        raise DegreeTooHigh(f"message degree {f.degree} exceeds k-1={spec.k - 1}")
    vals = [f.eval_int(x) for x in eval_points(spec)]
    return Codeword(SymbolVector(spec.field, vals), f)


def generator_matrix(spec: CodeSpec) -> list[list[int]]:
    """Row i is the codeword of ``x^i``."""
    F = spec.field
    pts = eval_points(spec)
    return [[F.pow(x, i) for x in pts] for i in range(spec.k)]


def matrix_rank(field: Field, rows: Sequence[Sequence[int]]) -> int:
    """Rank over the field by Gaussian elimination."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    rank, ncols = 0, len(M[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(M)) if M[r][col]), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        inv = field.inv(M[rank][col])
        M[rank] = [field.mul(inv, v) for v in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][col]:
                c = M[r][col]
                M[r] = [field.sub(a, field.mul(c, b)) for a, b in zip(M[r], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank


def theoretical_dp(spec: CodeSpec) -> int:
    if spec.m1 % 2 == 0:
        return spec.m + spec.m1 - spec.k + 2
    return spec.m + spec.m1 - spec.k + 1


def singleton_pair_cap(q: int, n: int, dp: int) -> int:
    """Largest size ``q^(n - dp + 2)`` of a length-n code with pair distance ``dp``."""
    if dp < 2:
        raise BadDp(f"the bound needs dp >= 2, got {dp}")
    return q ** (n - dp + 2)


def is_mds_pair(spec: CodeSpec, dp_observed: int) -> bool:
    return spec.q**spec.k == singleton_pair_cap(spec.q, spec.n, dp_observed)
