"""Pair-weight distributions: exhaustive enumeration, closed forms, class census.

The enumerator walks all ``q^k`` messages as base-q counters (constant
coefficient fastest).  The index space is cut into contiguous chunks, each
chunk is encoded with numpy table lookups and tallied privately, and the
tallies are summed.  Summation is order independent, so the result does
not depend on the number of worker processes.

For k in {3, 4} the code has t = 1, so the evaluation sequence is
``alpha_1, beta1, alpha_2, beta2, ...`` and a codeword's weight is
determined by which of a handful of root-structure classes its message
polynomial belongs to.  :func:`class_census` builds those classes
explicitly and checks their sizes against the closed-form cardinalities,
and :func:`find_witness` uses the per-class weights to locate the first
message whose observed weight disagrees with the class prediction.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

from .construction import CodeSpec, generator_matrix, theoretical_dp
from .errors import BadParams, TooLarge
from .finite_field import (
    Field,
    Polynomial,
    field_from_order,
    is_irreducible,
    monic_polynomials,
    poly_from_roots,
)
from .pair_metric import pair_weights_array

DEFAULT_ENUM_CEILING = 10**8
CHUNK = 1 << 15


@dataclass(frozen=True, eq=True)
class WeightDistribution:
    """Exact map from pair weight to codeword count; zero counts are omitted."""

    n: int
    counts: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {int(w): int(c) for w, c in sorted(self.counts.items()) if c}
        object.__setattr__(self, "counts", clean)

    def __getitem__(self, w: int) -> int:
        return self.counts.get(w, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def min_nonzero_weight(self) -> Optional[int]:
        return min((w for w in self.counts if w > 0), default=None)

    def weights(self) -> list[int]:
        return list(self.counts)

    def to_json(self) -> dict:
        return {
            "counts": {str(w): c for w, c in self.counts.items()},
            "n": self.n,
            "total": self.total,
        }


# -- exhaustive enumeration ----------------------------------------------------


def encode_range(field: Field, gen: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """Codewords of messages ``lo .. hi-1`` as an ``(hi - lo, n)`` array of encodings."""
    q = field.q
    k, n = gen.shape
    idx = np.arange(lo, hi, dtype=np.int64)
    digits = np.empty((hi - lo, k), dtype=np.int64)
    for i in range(k):
        digits[:, i] = (idx // q**i) % q
    if field.e == 1:
        return digits @ gen % field.p
    acc = np.zeros((hi - lo, n), dtype=np.int64)
    for i in range(k):
        acc = field.add_array(acc, field.mul_array(digits[:, i : i + 1], gen[i : i + 1, :]))
    return acc


def _tally(args) -> np.ndarray:
    field, gen, lo, hi = args
    words = encode_range(field, gen, lo, hi)
    return np.bincount(pair_weights_array(words), minlength=gen.shape[1] + 1)


def message_ranges(total: int, chunk: int = CHUNK) -> list[tuple[int, int]]:
    return [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]


def resolve_jobs(jobs: Optional[int]) -> int:
    return max(1, os.cpu_count() or 1) if jobs in (None, 0) else jobs


def _check_ceiling(spec: CodeSpec, ceiling: int) -> int:
    size = spec.q**spec.k
    if size > ceiling:
        raise TooLarge(f"q^k = {size} exceeds the enumeration ceiling {ceiling}")
    return size


def pair_weight_distribution(
    spec: CodeSpec, jobs: Optional[int] = 1, ceiling: int = DEFAULT_ENUM_CEILING
) -> WeightDistribution:
    """Tally the pair weight of every codeword."""
    size = _check_ceiling(spec, ceiling)
    gen = np.array(generator_matrix(spec), dtype=np.int64)
    tasks = [(spec.field, gen, lo, hi) for lo, hi in message_ranges(size)]
    jobs = min(resolve_jobs(jobs), len(tasks))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_tally, tasks))
    else:
        parts = [_tally(t) for t in tasks]
    total = np.sum(parts, axis=0, dtype=np.int64)
    return WeightDistribution(spec.n, {w: int(c) for w, c in enumerate(total)})


def brute_min_pair_distance(
    spec: CodeSpec, jobs: Optional[int] = 1, ceiling: int = DEFAULT_ENUM_CEILING
) -> int:
    """Minimum pair weight over nonzero codewords (the pair distance, by linearity)."""
    return pair_weight_distribution(spec, jobs, ceiling).min_nonzero_weight


def min_weight_codeword(spec: CodeSpec, ceiling: int = DEFAULT_ENUM_CEILING) -> tuple[Polynomial, list[int], int]:
    """First message in enumeration order whose codeword has minimum nonzero pair weight."""
    size = _check_ceiling(spec, ceiling)
    gen = np.array(generator_matrix(spec), dtype=np.int64)
    best = None
    for lo, hi in message_ranges(size):
        words = encode_range(spec.field, gen, lo, hi)
        w = pair_weights_array(words)
        w[w == 0] = spec.n + 1
        i = int(np.argmin(w))
        if best is None or w[i] < best[2]:
            best = (lo + i, words[i].tolist(), int(w[i]))
    idx, word, weight = best
    return Polynomial.from_index(spec.field, idx, spec.k), word, weight


# -- closed forms for k = 3, 4 ---------------------------------------------------


def _check_closed_form(q: int, m: int, k: int) -> None:
    field_from_order(q)
    if not (k < m <= q - 2):
        raise BadParams(f"need {k} < m <= q-2, got q={q}, m={m}")


def closed_form_A3(q: int, m: int) -> WeightDistribution:
    _check_closed_form(q, m, 3)
    if m % 2 == 0:
        return WeightDistribution(
            2 * m,
            {0: 1, 2 * m - 1: 2 * m * (q - 1), 2 * m: (q * q + q - 2 * m + 1) * (q - 1)},
        )
    return WeightDistribution(
        2 * m - 1,
        {0: 1, 2 * m - 2: (2 * m - 1) * (q - 1), 2 * m - 1: (q * q + q - 2 * m + 2) * (q - 1)},
    )


def closed_form_A4(q: int, m: int) -> WeightDistribution:
    """Closed form for k = 4.

    Known defect: for odd ``m`` this disagrees with exhaustive enumeration
    (the weight 2m-3 count is short by ``m(q-1)``), because an interior
    alpha root of a member of S3 merges two zero runs.  The formula is kept
    as published so the comparison machinery can report the discrepancy.
    """
    _check_closed_form(q, m, 4)
    if m % 2 == 0:
        return WeightDistribution(
            2 * m,
            {
                0: 1,
                2 * m - 2: m * m * (q - 1),
                2 * m - 1: 2 * m * (q + 1 - m) * (q - 1),
                2 * m: (q**3 + q**2 + q + 1 + m * m - 2 * m * (q + 1)) * (q - 1),
            },
        )
    return WeightDistribution(
        2 * m - 1,
        {
            0: 1,
            2 * m - 3: (m - 2) * (m - 1) * (q - 1),
            2 * m - 2: ((2 * m - 1) * q - 2 * m * m + 7 * m - 2) * (q - 1),
            2 * m - 1: (q**3 + q**2 + (2 - 2 * m) * q + m * m - 4 * m + 1) * (q - 1),
        },
    )


def closed_form(spec: CodeSpec) -> Optional[WeightDistribution]:
    """The closed form matching ``spec``, or None when none exists (k >= 5)."""
    if spec.k == 3:
        return closed_form_A3(spec.q, spec.m)
    if spec.k == 4:
        return closed_form_A4(spec.q, spec.m)
    return None


# -- polynomial classes ------------------------------------------------------------

S_CLASSES = ("S1", "S2", "S3")
D_FAMILIES = tuple(f"D{j}" for j in range(1, 10))
M_CLASSES = ("M1", "M2", "M3", "M4")


def class_names() -> list[str]:
    names = list(S_CLASSES)
    for i in (1, 2):
        names += [f"{d}({i})" for d in D_FAMILIES]
    return names + list(M_CLASSES)


@dataclass(frozen=True)
class RootSets:
    """Root alphabets for the D classes, per beta index i.

    ``inner[i]`` is where alpha-type roots live (all alphas for even m;
    for odd m the alphas minus alpha_m when i = 1, minus alpha_1 when i = 2).
    ``outer[i]`` is everything else except the other beta, so a product
    ``(x - beta_i) * h`` with roots from ``inner | outer`` never vanishes
    at the other beta.
    """

    inner: dict
    outer: dict


def root_sets(spec: CodeSpec) -> RootSets:
    A = list(spec.alphas)
    betas = {1: spec.beta1, 2: spec.beta2}
    if spec.m % 2 == 0:
        inner = {1: A, 2: A}
    else:
        inner = {1: A[:-1], 2: A[1:]}
    outer = {}
    for i in (1, 2):
        other = betas[3 - i]
        outer[i] = [x for x in range(spec.q) if x != other and x not in inner[i]]
    return RootSets(inner, outer)


def class_members(spec: CodeSpec) -> dict[str, frozenset]:
    """Explicit members (coefficient tuples) of every S, D and M3/M4 class.

    M1 and M2 are defined by a predicate rather than by roots and are
    counted separately in :func:`class_census`.
    """
    F = spec.field
    units = range(1, F.q)
    b = {1: spec.beta1, 2: spec.beta2}
    A = set(spec.alphas)
    rs = root_sets(spec)

    def build(prefix: list, roots_iter: Iterable) -> frozenset:
        return frozenset(
            poly_from_roots(F, a, prefix + list(r)).coeffs for r in roots_iter for a in units
        )

    out: dict[str, frozenset] = {}
    both = [b[1], b[2]]
    out["S1"] = build(both, [()])
    out["S2"] = build(both, [(x,) for x in range(F.q) if x not in A])
    out["S3"] = build(both, [(x,) for x in spec.alphas])

    quad_irreducible = [g for g in monic_polynomials(F, 2) if is_irreducible(g)]
    for i in (1, 2):
        inner, outer = rs.inner[i], rs.outer[i]
        lin = [b[i]]
        out[f"D1({i})"] = build(lin, [()])
        out[f"D2({i})"] = frozenset(
            (g * poly_from_roots(F, a, lin)).coeffs for g in quad_irreducible for a in units
        )
        out[f"D3({i})"] = build(lin, [(x,) for x in inner])
        out[f"D4({i})"] = build(lin, [(x,) for x in outer])
        out[f"D5({i})"] = build(lin, [(x, x) for x in inner])
        out[f"D6({i})"] = build(lin, [(x, x) for x in outer])
        out[f"D7({i})"] = build(lin, combinations(inner, 2))
        out[f"D8({i})"] = build(lin, [(x, y) for x in inner for y in outer])
        out[f"D9({i})"] = build(lin, combinations(outer, 2))

    a1, am = spec.alphas[0], spec.alphas[-1]
    out["M3"] = build([a1, am], [()])
    out["M4"] = build([a1, am], [(x,) for x in range(F.q) if x not in (spec.beta1, spec.beta2)])
    return out


def class_size_formulas(q: int, m: int) -> dict[str, int]:
    """Closed-form cardinalities of every class, keyed like :func:`class_names`."""
    even = m % 2 == 0
    u = q - 1
    d = {
        "D1": u,
        "D2": q * u * u // 2,
        "D3": m * u if even else (m - 1) * u,
        "D4": (q - 1 - m) * u if even else (q - m) * u,
        "D7": (m - 1) * m * u // 2 if even else (m - 2) * (m - 1) * u // 2,
        "D8": m * (q - 1 - m) * u if even else (m - 1) * (q - m) * u,
        "D9": (q - 2 - m) * (q - 1 - m) * u // 2 if even else (q - 1 - m) * (q - m) * u // 2,
    }
    d["D5"], d["D6"] = d["D3"], d["D4"]
    out = {"S1": u, "S2": (q - m) * u, "S3": m * u}
    for i in (1, 2):
        for fam in D_FAMILIES:
            out[f"{fam}({i})"] = d[fam]
    out.update({"M1": q * u * u, "M2": q * q * u * u, "M3": u, "M4": (q - 2) * u})
    return out


def _beta_values(spec: CodeSpec, k: int) -> np.ndarray:
    gen = np.array([[spec.field.pow(x, i) for x in (spec.beta1, spec.beta2)] for i in range(k)])
    return encode_range(spec.field, gen, 0, spec.q**k)


@dataclass(frozen=True)
class CensusRow:
    name: str
    enumerated: int
    formula: int

    @property
    def delta(self) -> int:
        return self.enumerated - self.formula


@dataclass(frozen=True)
class CensusTable:
    q: int
    m: int
    rows: tuple

    @property
    def ok(self) -> bool:
        return all(r.delta == 0 for r in self.rows)

    def __getitem__(self, name: str) -> CensusRow:
        return next(r for r in self.rows if r.name == name)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "ok": self.ok,
            "q": self.q,
            "rows": [
                {"class": r.name, "delta": r.delta, "enumerated": r.enumerated, "formula": r.formula}
                for r in self.rows
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["class", "enumerated", "formula", "delta"])
        for r in self.rows:
            w.writerow([r.name, r.enumerated, r.formula, r.delta])
        return buf.getvalue()


def class_census(spec: CodeSpec, ceiling: int = DEFAULT_ENUM_CEILING) -> CensusTable:
    """Enumerate every class and pair its size with the closed-form cardinality."""
    if spec.q**4 > ceiling:
        raise TooLarge(f"q^4 = {spec.q**4} exceeds the enumeration ceiling {ceiling}")
    members = class_members(spec)
    counts = {name: len(s) for name, s in members.items()}
    for name, k in (("M1", 3), ("M2", 4)):
        vals = _beta_values(spec, k)
        counts[name] = int(np.count_nonzero((vals[:, 0] != 0) & (vals[:, 1] != 0)))
    formulas = class_size_formulas(spec.q, spec.m)
    rows = tuple(CensusRow(n, counts[n], formulas[n]) for n in class_names())
    return CensusTable(spec.q, spec.m, rows)


def check_class_structure(spec: CodeSpec) -> list[str]:
    """Structural checks on the classes; returns a list of problems (empty when sound).

    * D classes for a fixed i are pairwise disjoint, and every member
      vanishes at beta_i but not at the other beta.
    * For degree <= 2 and degree <= 3 messages the classes cover each
      beta-root bucket exactly: both roots (S), exactly beta_i (D(i)),
      neither (M1 / M2).
    """
    F = spec.field
    members = class_members(spec)
    betas = {1: spec.beta1, 2: spec.beta2}
    problems = []
    for i in (1, 2):
        fams = [f"{d}({i})" for d in D_FAMILIES]
        for x, y in combinations(fams, 2):
            if members[x] & members[y]:
                problems.append(f"{x} and {y} overlap")
        for name in fams:
            for c in members[name]:
                f = Polynomial(F, c)
                if f.eval_int(betas[i]) != 0 or f.eval_int(betas[3 - i]) == 0:
                    problems.append(f"{name} member {c} has the wrong beta roots")
                    break

    for k in (3, 4):
        max_deg = k - 1
        vals = _beta_values(spec, k)
        z1, z2 = vals[:, 0] == 0, vals[:, 1] == 0
        nonzero = np.ones(len(vals), dtype=bool)
        nonzero[0] = False
        buckets = {
            "both": nonzero & z1 & z2,
            "only1": nonzero & z1 & ~z2,
            "only2": nonzero & ~z1 & z2,
        }
        groups = {
            "both": S_CLASSES,
            "only1": [f"{d}(1)" for d in D_FAMILIES],
            "only2": [f"{d}(2)" for d in D_FAMILIES],
        }
        for bucket, names in groups.items():
            covered = set()
            for name in names:
                covered |= {c for c in members[name] if len(c) - 1 <= max_deg}
            expected = {
                Polynomial.from_index(F, int(ix), k).coeffs for ix in np.flatnonzero(buckets[bucket])
            }
            if covered != expected:
                problems.append(f"deg <= {max_deg}: classes do not cover bucket {bucket} exactly")
    return problems


# -- per-class weight predictions and witnesses ---------------------------------------


def predicted_class_weights(spec: CodeSpec) -> dict[str, int]:
    """Weight each class is asserted to have in the closed-form derivation (k in {3, 4})."""
    if spec.k not in (3, 4):
        raise BadParams("class weight predictions exist only for k in {3, 4}")
    m = spec.m
    top = spec.n  # 2m for even m, 2m - 1 for odd m
    even = m % 2 == 0
    w: dict[str, int] = {}
    for i in (1, 2):
        for fam in ("D1", "D2", "D4", "D6", "D9"):
            w[f"{fam}({i})"] = top
        for fam in ("D3", "D5", "D8"):
            w[f"{fam}({i})"] = top - 1
        w[f"D7({i})"] = top - 2
    w["S1"] = w["S2"] = top
    if spec.k == 3:
        w["M1"] = top
        if not even:
            w["M3"] = top - 1
    else:
        w["S3"] = 2 * m - 2
        w["M2"] = top
        if not even:
            w["M4"] = top - 1
    return w


def class_based_distribution(spec: CodeSpec) -> WeightDistribution:
    """Distribution implied by class sizes times per-class predicted weights."""
    weights = predicted_class_weights(spec)
    members = class_members(spec)
    k = spec.k
    counts = {0: 1}
    for name, w in weights.items():
        if name in ("M1", "M2"):
            continue
        size = sum(1 for c in members[name] if len(c) <= k)
        counts[w] = counts.get(w, 0) + size
    vals = _beta_values(spec, k)
    m_size = int(np.count_nonzero((vals[:, 0] != 0) & (vals[:, 1] != 0)))
    for sub in ("M3", "M4"):
        if sub in weights and len(next(iter(members[sub]))) <= k:
            m_size -= len(members[sub])
    top = "M1" if k == 3 else "M2"
    counts[weights[top]] = counts.get(weights[top], 0) + m_size
    return WeightDistribution(spec.n, counts)


@dataclass(frozen=True)
class Witness:
    message: Polynomial
    index: int
    class_name: str
    predicted: int
    observed: int
    codeword: tuple

    def to_json(self) -> dict:
        return {
            "class": self.class_name,
            "codeword": list(self.codeword),
            "index": self.index,
            "message": list(self.message.coeffs),
            "observed": self.observed,
            "predicted": self.predicted,
        }


def find_witness(spec: CodeSpec, ceiling: int = DEFAULT_ENUM_CEILING) -> Optional[Witness]:
    """First message (enumeration order) whose pair weight disagrees with its class prediction."""
    if spec.k not in (3, 4):
        return None
    size = _check_ceiling(spec, ceiling)
    weights = predicted_class_weights(spec)
    members = class_members(spec)
    F = spec.field
    predicted = np.zeros(size, dtype=np.int64)
    label = np.empty(size, dtype=object)
    vals = _beta_values(spec, spec.k)
    neither = (vals[:, 0] != 0) & (vals[:, 1] != 0)
    top = "M1" if spec.k == 3 else "M2"
    predicted[neither] = weights[top]
    label[neither] = top
    label[0] = "zero"
    for name, w in weights.items():
        if name in ("M1", "M2"):
            continue
        for c in members[name]:
            if len(c) <= spec.k:
                ix = Polynomial(F, c).index()
                predicted[ix] = w
                label[ix] = name
    gen = np.array(generator_matrix(spec), dtype=np.int64)
    for lo, hi in message_ranges(size):
        words = encode_range(F, gen, lo, hi)
        observed = pair_weights_array(words)
        bad = np.flatnonzero(observed != predicted[lo:hi])
        if len(bad):
            j = int(bad[0])
            return Witness(
                Polynomial.from_index(F, lo + j, spec.k),
                lo + j,
                str(label[lo + j]),
                int(predicted[lo + j]),
                int(observed[j]),
                tuple(int(v) for v in words[j]),
            )
    return None


# -- comparison and serialisation -----------------------------------------------------


@dataclass(frozen=True)
class DistributionDiff:
    deltas: dict
    sum_a: int
    sum_b: int
    witness: Optional[Witness] = None

    @property
    def empty(self) -> bool:
        return not self.deltas

    @property
    def first_discrepancy(self) -> Optional[int]:
        return min(self.deltas, default=None)

    def to_json(self) -> dict:
        out = {
            "deltas": {str(w): d for w, d in sorted(self.deltas.items())},
            "equal": self.empty,
            "first_discrepancy": self.first_discrepancy,
            "sum_a": self.sum_a,
            "sum_b": self.sum_b,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def compare_distributions(
    a: WeightDistribution | dict, b: WeightDistribution | dict, spec: Optional[CodeSpec] = None
) -> DistributionDiff:
    """Per-weight ``a - b``.  With ``spec`` given, a mismatch also carries a witness message."""
    ca = a.counts if isinstance(a, WeightDistribution) else dict(a)
    cb = b.counts if isinstance(b, WeightDistribution) else dict(b)
    deltas = {}
    for w in sorted(set(ca) | set(cb)):
        d = ca.get(w, 0) - cb.get(w, 0)
        if d:
            deltas[w] = d
    witness = find_witness(spec) if deltas and spec is not None else None
    return DistributionDiff(deltas, sum(ca.values()), sum(cb.values()), witness)


def distribution_rows(
    enumerated: WeightDistribution, closed: Optional[WeightDistribution]
) -> list[tuple]:
    """Rows ``(weight, enumerated, closed_form, delta)``; the last two are None without a closed form."""
    weights = set(enumerated.counts)
    if closed is not None:
        weights |= set(closed.counts)
    rows = []
    for w in sorted(weights):
        if closed is None:
            rows.append((w, enumerated[w], None, None))
        else:
            rows.append((w, enumerated[w], closed[w], enumerated[w] - closed[w]))
    return rows


def distribution_csv(enumerated: WeightDistribution, closed: Optional[WeightDistribution]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["weight", "enumerated", "closed_form", "delta"])
    for row in distribution_rows(enumerated, closed):
        w.writerow(["" if v is None else v for v in row])
    return buf.getvalue()


def sanity_problems(spec: CodeSpec, dist: WeightDistribution) -> list[str]:
    """Invariants every enumerated distribution must satisfy."""
    problems = []
    if dist[0] != 1:
        problems.append(f"A(0) = {dist[0]}, expected 1")
    if dist.total != spec.q**spec.k:
        problems.append(f"sum of counts {dist.total} != q^k = {spec.q**spec.k}")
    dp = theoretical_dp(spec)
    low = [w for w in dist.counts if 0 < w < dp]
    if low:
        problems.append(f"nonzero counts below d_p={dp} at weights {low}")
    if dist.min_nonzero_weight != dp:
        problems.append(f"minimum weight {dist.min_nonzero_weight} != d_p={dp}")
    return problems



def class_weight_table(spec: CodeSpec, ceiling: int = DEFAULT_ENUM_CEILING) -> dict[str, dict[int, int]]:
    """Observed pair-weight histogram of every class restricted to degree <= k-1.

    Messages outside the S/D classes and M3/M4 are grouped under M1 (k = 3)
    or M2 (k = 4).
    """
    size = _check_ceiling(spec, ceiling)
    F = spec.field
    gen = np.array(generator_matrix(spec), dtype=np.int64)
    observed = np.concatenate(
        [pair_weights_array(encode_range(F, gen, lo, hi)) for lo, hi in message_ranges(size)]
    )
    claimed = np.zeros(size, dtype=bool)
    claimed[0] = True
    table: dict[str, dict[int, int]] = {}
    for name, mem in class_members(spec).items():
        idx = [Polynomial(F, c).index() for c in mem if len(c) <= spec.k]
        if not idx:
            continue
        claimed[idx] = True
        ws, cs = np.unique(observed[idx], return_counts=True)
        table[name] = {int(w): int(c) for w, c in zip(ws, cs)}
    rest = "M1" if spec.k == 3 else "M2"
    ws, cs = np.unique(observed[~claimed], return_counts=True)
    table[rest] = {int(w): int(c) for w, c in zip(ws, cs)}
    return table
