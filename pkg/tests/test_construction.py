import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from sympair.construction import (
    ALPHA,
    BETA,
    encode,
    eval_points,
    generator_matrix,
    is_mds_pair,
    layout,
    make_spec,
    matrix_rank,
    singleton_pair_cap,
    theoretical_dp,
)
from sympair.errors import BadDimension, BadDp, BadM, BadPoints, DegreeTooHigh, FieldMismatch
from sympair.finite_field import GF, Polynomial
from sympair.pair_metric import SymbolVector, pair_weight


def labels(spec):
    return [("a" if p.tag == ALPHA else "b") + str(p.index) for p in layout(spec)]


def grid():
    for q in (5, 7, 8, 9, 11, 13):
        for k in (3, 4, 5):
            for m in range(k + 1, q - 1):
                yield q, k, m


def test_spec_defaults():
    s = make_spec(7, 3, 4)
    assert (s.t, s.m1, s.n) == (1, 4, 8)
    assert s.alphas == (2, 3, 4, 5)
    assert (s.beta1, s.beta2) == (0, 1)
    s = make_spec(7, 3, 5)
    assert (s.m1, s.n) == (5, 9)


def test_spec_k5_lengths():
    s = make_spec(8, 5, 6)
    assert (s.t, s.m1, s.blocks, s.n) == (2, 3, 2, 8)
    s = make_spec(13, 5, 8)
    assert (s.t, s.m1, s.blocks, s.n) == (2, 4, 4, 12)


def test_spec_errors():
    with pytest.raises(BadM):
        make_spec(7, 3, 6)
    with pytest.raises(BadDimension):
        make_spec(7, 2, 4)
    with pytest.raises(BadDimension):
        make_spec(7, 5, 5)
    with pytest.raises(BadPoints):
        make_spec(7, 3, 4, beta1=2, beta2=2)
    with pytest.raises(BadPoints):
        make_spec(7, 3, 4, beta1=9)
    with pytest.raises(BadPoints):
        make_spec(7, 3, 4, alphas=[2, 3, 4, 4])
    with pytest.raises(BadPoints):
        make_spec(7, 3, 4, alphas=[0, 3, 4, 5])
    with pytest.raises(BadPoints):
        make_spec(7, 3, 4, alphas=[2, 3, 4])


def test_custom_points():
    s = make_spec(7, 3, 4, beta1=3, beta2=6, alphas=[5, 4, 2, 1])
    assert eval_points(s) == (5, 3, 4, 6, 2, 3, 1, 6)


def test_layout_examples():
    assert labels(make_spec(7, 3, 4)) == ["a1", "b1", "a2", "b2", "a3", "b1", "a4", "b2"]
    assert labels(make_spec(7, 3, 5)) == ["a1", "b1", "a2", "b2", "a3", "b1", "a4", "b2", "a5"]
    s = make_spec(11, 5, 7)
    assert labels(s) == ["a1", "a2", "b1", "a3", "a4", "b2", "a5", "a6", "a7"]
    assert s.n == 9


@pytest.mark.parametrize("q,k,m", list(grid()))
def test_layout_invariants(q, k, m):
    s = make_spec(q, k, m)
    pts = layout(s)
    assert len(pts) == s.n
    alphas = [p.index for p in pts if p.tag == ALPHA]
    assert alphas == list(range(1, m + 1))
    betas = [p.index for p in pts if p.tag == BETA]
    assert betas == [1 if j % 2 else 2 for j in range(1, s.blocks + 1)]
    assert betas.count(1) == (s.blocks + 1) // 2
    assert theoretical_dp(s) == s.n - k + 2


def test_encode_examples():
    s = make_spec(7, 3, 4)
    F = s.field
    z = encode(s, Polynomial(F))
    assert z.values == (0,) * 8
    c = encode(s, Polynomial(F, [0, 6, 1]))  # x(x-1)
    assert [c.values[i] for i in (1, 3, 5, 7)] == [0, 0, 0, 0]
    assert all(c.values[i] for i in (0, 2, 4, 6))
    assert pair_weight(c.entries) == 8
    c = encode(s, Polynomial(F, [0, 5, 1]))  # x(x-2)
    assert c.values == (0, 0, 3, 6, 1, 0, 1, 6)
    assert pair_weight(c.entries) == 7


def test_encode_errors():
    s = make_spec(7, 3, 4)
    with pytest.raises(DegreeTooHigh):
        encode(s, Polynomial(s.field, [0, 0, 0, 1]))
    with pytest.raises(FieldMismatch):
        encode(s, Polynomial(GF(5), [1]))


def test_generator_matrix_examples():
    s = make_spec(7, 3, 4)
    G = generator_matrix(s)
    assert G[0] == [1] * 8
    assert G[1] == list(eval_points(s))
    assert matrix_rank(s.field, G) == 3


def test_matrix_rank_deficient():
    F = GF(5)
    assert matrix_rank(F, [[1, 2, 3], [2, 4, 1], [3, 1, 0]]) == 2
    assert matrix_rank(F, []) == 0
    assert matrix_rank(F, [[0, 0], [0, 0]]) == 0


@pytest.mark.parametrize("q,k,m", list(grid()))
def test_generator_rank_full(q, k, m):
    s = make_spec(q, k, m)
    assert matrix_rank(s.field, generator_matrix(s)) == k


def test_theoretical_dp_examples():
    assert theoretical_dp(make_spec(7, 3, 4)) == 7
    assert theoretical_dp(make_spec(7, 3, 5)) == 8
    assert theoretical_dp(make_spec(8, 4, 6)) == 10


def test_singleton_cap_examples():
    assert singleton_pair_cap(7, 8, 7) == 343
    assert singleton_pair_cap(11, 9, 11) == 1
    assert singleton_pair_cap(2, 4, 2) == 16
    assert singleton_pair_cap(13, 200, 3) == 13**199
    with pytest.raises(BadDp):
        singleton_pair_cap(7, 8, 1)


def test_is_mds_pair():
    s = make_spec(7, 3, 4)
    assert is_mds_pair(s, 7)
    assert not is_mds_pair(s, 6)
    for q, k, m in grid():
        s = make_spec(q, k, m)
        assert is_mds_pair(s, theoretical_dp(s))


def test_spec_json():
    d = make_spec(7, 3, 4).to_json()
    assert d == {
        "alphas": [2, 3, 4, 5], "beta1": 0, "beta2": 1, "e": 1, "k": 3,
        "m": 4, "m1": 4, "n": 8, "p": 7, "q": 7, "t": 1,
    }
    json.dumps(d)
    assert make_spec(9, 3, 4).to_json()["e"] == 2


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(list(grid())), st.data())
def test_encode_linear(qkm, data):
    q, k, m = qkm
    s = make_spec(q, k, m)
    F = s.field
    coeff = st.lists(st.integers(0, q - 1), min_size=k, max_size=k)
    f = Polynomial(F, data.draw(coeff))
    g = Polynomial(F, data.draw(coeff))
    a = data.draw(st.integers(0, q - 1))
    assert encode(s, f + g).entries == encode(s, f).entries + encode(s, g).entries
    assert encode(s, f.scale(a)).entries == encode(s, f).entries.scale(a)


@pytest.mark.parametrize("q,k,m", [(7, 3, 4), (7, 3, 5), (8, 4, 6), (9, 4, 5)])
def test_encode_injective(q, k, m):
    s = make_spec(q, k, m)
    seen = set()
    for coeffs in itertools.product(range(q), repeat=k):
        seen.add(encode(s, Polynomial(s.field, coeffs)).values)
    assert len(seen) == q**k


def test_codeword_records_message():
    s = make_spec(7, 3, 4)
    f = Polynomial(s.field, [1, 2])
    c = encode(s, f)
    assert c.message == f
    assert isinstance(c.entries, SymbolVector)
