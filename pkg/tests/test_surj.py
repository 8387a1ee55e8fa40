import json
import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from ainfloops import surj


def pointwise(f, n, i, g, m, t):
    """The three-case composition formula, evaluated directly."""
    y = surj.evaluate(f, t)
    if y <= Q(i - 1, n):
        return n * y / (m + n - 1)
    if y <= Q(i, n):
        return (i - 1 + m * surj.evaluate(g, n * y - i + 1)) / (m + n - 1)
    return (m - 1 + n * y) / (m + n - 1)


@st.composite
def surjections(draw, arity=None):
    n = arity or draw(st.integers(1, 4))
    xs = sorted(set(draw(st.lists(st.fractions(0, 1, max_denominator=12), max_size=4))) - {0, 1})
    ys = sorted(draw(st.lists(st.fractions(0, 1, max_denominator=12), min_size=len(xs), max_size=len(xs))))
    return surj.MonotoneSurj([(0, 0), *zip(xs, ys), (1, 1)], n)


def test_evaluate_examples():
    ident = surj.identity()
    for t in (Q(0), Q(1, 3), Q(1)):
        assert surj.evaluate(ident, t) == t
    plateau = surj.MonotoneSurj([(0, 0), (Q(1, 2), 0), (1, 1)])
    assert surj.evaluate(plateau, Q(1, 4)) == 0
    assert surj.eval(plateau, Q(3, 4)) == Q(1, 2)
    with pytest.raises(ValueError):
        surj.evaluate(ident, Q(2))


def test_invalid_breakpoints():
    with pytest.raises(ValueError):
        surj.MonotoneSurj([(0, 0), (Q(1, 2), Q(3, 4)), (Q(3, 4), Q(1, 2)), (1, 1)])
    with pytest.raises(ValueError):
        surj.MonotoneSurj([(0, Q(1, 4)), (1, 1)])
    with pytest.raises(ValueError):
        surj.MonotoneSurj([(0, 0), (1, 1)], arity=0)


def test_identity_composite_value():
    # case 2 of the formula at t = 1/2 gives (0 + 2 g(1)) / 3
    h = surj.compose(surj.identity(2), 1, surj.identity(2))
    assert h.arity == 3
    assert surj.evaluate(h, Q(1, 2)) == Q(2, 3)
    assert surj.evaluate(h, Q(1, 4)) == Q(1, 3)


def test_index_error():
    with pytest.raises(IndexError):
        surj.compose(surj.identity(2), 3, surj.identity(2))


@given(surjections(1), surjections(1), st.fractions(0, 1, max_denominator=50))
def test_arity_one_is_function_composition(f, g, t):
    assert surj.evaluate(surj.compose(f, 1, g), t) == surj.evaluate(g, surj.evaluate(f, t))


@given(surjections(), surjections(), st.data())
def test_compose_matches_pointwise_formula(f, g, data):
    i = data.draw(st.integers(1, f.arity))
    h = surj.compose(f, i, g)
    assert h.arity == f.arity + g.arity - 1
    for k in range(41):
        t = Q(k, 40)
        assert surj.evaluate(h, t) == pointwise(f, f.arity, i, g, g.arity, t)


@given(surjections(), surjections(), surjections(), st.data())
def test_sequential_associativity(f, g, h, data):
    i = data.draw(st.integers(1, f.arity))
    j = data.draw(st.integers(1, g.arity))
    assert surj.compose(surj.compose(f, i, g), i + j - 1, h) == surj.compose(f, i, surj.compose(g, j, h))


@given(surjections(), surjections(), surjections(), st.data())
def test_parallel_associativity(f, g, h, data):
    if f.arity < 2:
        return
    i = data.draw(st.integers(1, f.arity - 1))
    k = data.draw(st.integers(i + 1, f.arity))
    lhs = surj.compose(surj.compose(f, i, g), k + g.arity - 1, h)
    rhs = surj.compose(surj.compose(f, k, h), i, g)
    assert lhs == rhs


@given(surjections(), st.data())
def test_unitality(f, data):
    i = data.draw(st.integers(1, f.arity))
    assert surj.compose(f, i, surj.identity(1)) == f
    assert surj.compose(surj.identity(1), 1, f) == f


def test_pointwise_oracle_thousand_points():
    rng = random.Random(11)
    f, g = surj.random_surj(rng, 3), surj.random_surj(rng, 2)
    h = surj.compose(f, 2, g)
    for _ in range(1000):
        t = Q(rng.randint(0, 997), 997)
        assert surj.evaluate(h, t) == pointwise(f, 3, 2, g, 2, t)


def test_split_simplex():
    assert surj.split_simplex(1, [Q(1, 4), Q(1, 2)], surj.identity()) == [[Q(1, 4), Q(1, 2)]]
    assert surj.split_simplex(2, [Q(1, 4), Q(3, 4)], surj.identity(2)) == [[Q(1, 2)], [Q(1, 2)]]
    assert surj.split_simplex(3, [0, 0, 0], surj.identity(3)) == [[0, 0, 0], [], []]
    # a value on a block boundary goes to the lower block
    assert surj.split_simplex(2, [Q(1, 2)], surj.identity(2)) == [[1], []]
    with pytest.raises(ValueError):
        surj.split_simplex(2, [Q(1, 2), Q(1, 4)], surj.identity(2))


@given(surjections(), st.lists(st.fractions(0, 1, max_denominator=20), max_size=6))
def test_split_simplex_sizes(f, ts):
    blocks = surj.split_simplex(f.arity, sorted(ts), f)
    assert sum(len(b) for b in blocks) == len(ts)
    assert all(0 <= x <= 1 for b in blocks for x in b)
    assert all(list(b) == sorted(b) for b in blocks)


def test_preimage():
    f = surj.MonotoneSurj([(0, 0), (Q(1, 4), Q(1, 2)), (Q(3, 4), Q(1, 2)), (1, 1)])
    assert f.preimage(Q(1, 2)) == (Q(1, 4), Q(3, 4))
    assert f.preimage(0) == (0, 0)


def test_json_round_trip():
    f = surj.MonotoneSurj([(0, 0), (Q(1, 3), Q(1, 5)), (1, 1)], 3)
    s = surj.to_json(f)
    assert json.loads(s)["breakpoints"][1] == ["1/3", "1/5"]
    assert surj.from_json(s) == f
