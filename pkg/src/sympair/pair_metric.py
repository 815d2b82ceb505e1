"""Symbol-pair reads, weights and distances, and the run ("shape") decomposition.

Indices are cyclic throughout: the last symbol pairs with the first.

The pair weight is computed from the run identity

    w_p(x) = w_H(x) + Z(x)

where ``Z`` is the number of maximal zero runs under cyclic adjacency.
Every zero run is followed (cyclically) by a nonzero symbol whose pair
``(0, nonzero)`` is the one extra nonzero pair the run contributes.
The identity holds for any x that is neither all-zero nor all-nonzero;
for those two cases w_p is 0 and n respectively, which the formula also
gives because Z = 0 there.

The linear shape used by :func:`shape_bound` is the plain left-to-right
run count ``l``.  The bound ``w_H + ceil((l - 1) / 2)`` always holds, but
it is tight with ``(l - 1) / 2`` rather than ``(l + 1) / 2`` when both end
symbols are nonzero, because the wrap pair is then a single run boundary
counted once: ``(1, 0, 1)`` has weight 3, not 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import FieldMismatch, LengthMismatch, ParameterError, ZeroVector
from .finite_field import Field, FieldElement

ZERO, NONZERO = "zero", "nonzero"


class SymbolVector:
    """Immutable length-n vector over a field (n >= 2), stored as encodings."""

    __slots__ = ("field", "values")

    def __init__(self, field: Field, values: Sequence):
        vals = tuple(field.encode(v) for v in values)
        if len(vals) < 2:
            raise ParameterError(f"symbol vectors need length n >= 2, got {len(vals)}")
        self.field = field
        self.values = vals

    @classmethod
    def zeros(cls, field: Field, n: int) -> SymbolVector:
        return cls(field, [0] * n)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> FieldElement:
        return FieldElement(self.field, self.values[i])

    def __iter__(self):
        return (FieldElement(self.field, v) for v in self.values)

    def _check(self, other: SymbolVector) -> None:
        if other.field != self.field:
            raise FieldMismatch(f"vectors over {self.field!r} and {other.field!r}")
        if len(other) != len(self):
            raise LengthMismatch(f"lengths {len(self)} and {len(other)} differ")

    def __add__(self, other: SymbolVector) -> SymbolVector:
        self._check(other)
        F = self.field
        return SymbolVector(F, [F.add(a, b) for a, b in zip(self.values, other.values)])

    def __sub__(self, other: SymbolVector) -> SymbolVector:
        self._check(other)
        F = self.field
        return SymbolVector(F, [F.sub(a, b) for a, b in zip(self.values, other.values)])

    def scale(self, a) -> SymbolVector:
        F = self.field
        a = F.encode(a)
        return SymbolVector(F, [F.mul(a, v) for v in self.values])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolVector):
            return NotImplemented
        return self.field == other.field and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"SymbolVector({self.field!r}, {list(self.values)})"


Vector = Union[SymbolVector, Sequence]


def _symbols(x: Vector) -> tuple:
    seq = x.values if isinstance(x, SymbolVector) else tuple(x)
    if len(seq) < 2:
        raise ParameterError(f"symbol vectors need length n >= 2, got {len(seq)}")
    return seq


def _nonzero_mask(x: Vector) -> list[bool]:
    return [v != 0 for v in _symbols(x)]


def pair_read(x: Vector) -> list[tuple]:
    """The cyclic pair read ``((x1,x2), (x2,x3), ..., (xn,x1))``.

    Entries keep the input's element type: a :class:`SymbolVector` yields
    pairs of :class:`FieldElement`.
    """
    seq = list(x) if isinstance(x, SymbolVector) else list(_symbols(x))
    n = len(seq)
    return [(seq[i], seq[(i + 1) % n]) for i in range(n)]


def hamming_weight(x: Vector) -> int:
    return sum(_nonzero_mask(x))


def _cyclic_zero_runs(mask: Sequence[bool]) -> int:
    # one zero run ends at every position i with x_i == 0 and x_{i+1} != 0
    n = len(mask)
    return sum(1 for i in range(n) if not mask[i] and mask[(i + 1) % n])


def pair_weight(x: Vector) -> int:
    mask = _nonzero_mask(x)
    return sum(mask) + _cyclic_zero_runs(mask)


def _difference_mask(x: Vector, y: Vector) -> list[bool]:
    if isinstance(x, SymbolVector) and isinstance(y, SymbolVector):
        x._check(y)
    a, b = _symbols(x), _symbols(y)
    if len(a) != len(b):
        raise LengthMismatch(f"lengths {len(a)} and {len(b)} differ")
    for u, v in zip(a, b):
        if isinstance(u, FieldElement) and isinstance(v, FieldElement) and u.field != v.field:
            raise FieldMismatch(f"cannot compare {u!r} with {v!r}")
    # x_i - y_i != 0 exactly when x_i != y_i
    return [u != v for u, v in zip(a, b)]


def hamming_distance(x: Vector, y: Vector) -> int:
    return sum(_difference_mask(x, y))


def pair_distance(x: Vector, y: Vector) -> int:
    """Number of cyclic positions whose pair reads differ; equals ``pair_weight(x - y)``."""
    mask = _difference_mask(x, y)
    return sum(mask) + _cyclic_zero_runs(mask)


@dataclass(frozen=True)
class Shape:
    runs: tuple[tuple[str, int], ...]
    cyclic_zero_runs: int

    @property
    def l(self) -> int:  # noqa: E743 - run count, named as in the literature
        return len(self.runs)

    @property
    def n(self) -> int:
        return sum(length for _, length in self.runs)


def shape_decompose(x: Vector) -> Shape:
    """Maximal-run decomposition plus the cyclic zero-run count Z.

    The all-zero vector gets a single zero run and Z = 0 by convention.
    """
    mask = _nonzero_mask(x)
    runs: list[list] = []
    for nz in mask:
        kind = NONZERO if nz else ZERO
        if runs and runs[-1][0] == kind:
            runs[-1][1] += 1
        else:
            runs.append([kind, 1])
    return Shape(tuple((k, n) for k, n in runs), _cyclic_zero_runs(mask))


def shape_bound(x: Vector) -> int:
    """Lower bound ``w_H + ceil((l - 1) / 2)`` from the linear run count."""
    mask = _nonzero_mask(x)
    if not any(mask):
        raise ZeroVector("the shape bound is only defined for nonzero vectors")
    l = shape_decompose(x).l  # noqa: E741
    return sum(mask) + l // 2  # ceil((l-1)/2) == l // 2


def definitional_pair_weight(x: Vector) -> int:
    """Reference count straight from the pair read; used as a test oracle."""
    return sum(1 for a, b in pair_read(x) if a != 0 or b != 0)


def pair_weights_array(words: np.ndarray) -> np.ndarray:
    """Row-wise pair weights of a 2-D array of encodings (run identity, vectorised)."""
    nz = words != 0
    ends = ~nz & np.roll(nz, -1, axis=1)
    return nz.sum(axis=1) + ends.sum(axis=1)
