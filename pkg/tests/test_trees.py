from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from ainfloops import trees as tr

POOL = [t for n in range(1, 5) for t in tr.enumerate_trees(n)]
trees_st = st.sampled_from(POOL)


def brute_count(n):
    """Laminar interval families on 1..n containing [1, n]."""
    if n == 1:
        return 1
    ivs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if (a, b) != (1, n)]
    count = 0
    for r in range(len(ivs) + 1):
        for sub in combinations(ivs, r):
            fam = list(sub) + [(1, n)]
            if all((a <= c and d <= b) or (c <= a and b <= d) or b < c or d < a
                   for (a, b), (c, d) in combinations(fam, 2)):
                count += 1
    return count


def chain_codim(t):
    """Longest strictly increasing chain above t, by search."""
    above = [s for s in tr.enumerate_trees(t.arity) if tr.leq(t, s) and s != t]
    return 1 + max(chain_codim(s) for s in above) if above else 0


T1 = tr.PlanarTree(7, frozenset({(1, 7), (1, 3), (4, 7), (5, 6)}))
T2 = tr.PlanarTree(7, frozenset({(1, 7), (4, 7)}))


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 3), (4, 11), (5, 45)])
def test_enumeration_counts(n, count):
    ts = tr.enumerate_trees(n)
    assert len(ts) == count == brute_count(n)
    assert len(set(ts)) == count


def test_enumerate_one_is_unit():
    assert tr.enumerate_trees(1) == (tr.unit(),)


def test_unit_laws():
    for t in POOL:
        assert tr.compose(tr.unit(), 1, t) == t
        for i in range(1, t.arity + 1):
            assert tr.compose(t, i, tr.unit()) == t


def test_left_comb():
    left = tr.compose(tr.corolla(2), 1, tr.corolla(2))
    assert left.intervals == {(1, 3), (1, 2)}
    assert tr.to_string(left) == "((..).)"


def test_compose_index_error():
    with pytest.raises(IndexError):
        tr.compose(tr.corolla(2), 3, tr.corolla(2))


def test_order_examples():
    assert tr.leq(T1, T2)
    assert tr.leq(T1, T1)
    for t in tr.enumerate_trees(5):
        if t.is_binary():
            assert tr.leq(t, tr.corolla(5))
    with pytest.raises(ValueError):
        tr.leq(tr.corolla(2), tr.corolla(3))


def test_joins_and_bunches_of_example():
    assert tr.join(T1, 1, 3) == (1, 3)
    assert tr.join(T1, 1, 2) == tr.join(T1, 2, 3) == (1, 3)
    assert tr.join(T1, 1, 4) == (1, 7)
    for i, j in [(4, 5), (4, 6), (5, 7), (6, 7)]:
        assert tr.join(T1, i, j) == (4, 7)
    assert tr.join(T1, 5, 6) == (5, 6)
    b1 = tr.bunch_set(T1)
    assert {(1, 3), (4, 7), (5, 6), (1, 7)} == b1
    b2 = tr.bunch_set(T2)
    assert (1, 3) not in b2 and (5, 6) not in b2 and {(1, 7), (4, 7)} <= b2
    assert tr.bunch_set(tr.corolla(6)) == {(1, 6)}
    with pytest.raises(IndexError):
        tr.join(T1, 3, 3)


def test_bunch_set_matches_definition():
    # brute force: (i, j) is a bunch iff no wider pair has the same join
    for n in range(2, 6):
        for t in tr.enumerate_trees(n):
            want = set()
            for i, j in combinations(range(1, n + 1), 2):
                v = tr.join(t, i, j)
                wider = [(k, l) for k in range(1, i + 1) for l in range(j, n + 1)
                         if (k, l) != (i, j) and tr.join(t, k, l) == v]
                if not wider:
                    want.add((i, j))
            assert tr.bunch_set(t) == want


def test_codimension():
    assert tr.codimension(tr.corolla(5)) == 0
    assert tr.codimension(T1) == 3
    for n in range(2, 6):
        for t in tr.enumerate_trees(n):
            assert tr.codimension(t) == chain_codim(t)
            if t.is_binary():
                assert tr.codimension(t) == n - 2


def test_decompose_codim1():
    c2 = tr.corolla(2)
    assert tr.decompose_codim1(tr.from_string("((..).)")) == (c2, 1, c2)
    assert tr.decompose_codim1(tr.from_string("(.(..))")) == (c2, 2, c2)
    faces = [t for t in tr.enumerate_trees(4) if tr.codimension(t) == 1]
    assert len(faces) == 5
    for t in faces:
        t1, i, t2 = tr.decompose_codim1(t)
        hits = [(a, k, b) for a in tr.enumerate_trees(t1.arity) for b in tr.enumerate_trees(t2.arity)
                for k in range(1, a.arity + 1)
                if a.arity + b.arity - 1 == 4 and tr.compose(a, k, b) == t
                and tr.codimension(a) == tr.codimension(b) == 0]
        assert hits == [(t1, i, t2)]
    with pytest.raises(ValueError):
        tr.decompose_codim1(tr.corolla(3))


def test_string_round_trip():
    for n in range(1, 6):
        for t in tr.enumerate_trees(n):
            assert tr.from_string(tr.to_string(t)) == t
    for bad in ["(", "(.)x", "(.(.)", "x"]:
        with pytest.raises(ValueError):
            tr.from_string(bad)


def test_invalid_tree_rejected():
    with pytest.raises(ValueError):
        tr.PlanarTree(4, frozenset({(1, 4), (1, 3), (2, 4)}))
    with pytest.raises(ValueError):
        tr.PlanarTree(3, frozenset({(1, 2)}))


@given(trees_st, trees_st, trees_st, st.data())
def test_sequential_associativity(a, b, c, data):
    i = data.draw(st.integers(1, a.arity))
    j = data.draw(st.integers(1, b.arity))
    assert tr.compose(tr.compose(a, i, b), i + j - 1, c) == tr.compose(a, i, tr.compose(b, j, c))


@given(trees_st, trees_st, trees_st, st.data())
def test_parallel_associativity(a, b, c, data):
    if a.arity < 2:
        return
    i = data.draw(st.integers(1, a.arity - 1))
    k = data.draw(st.integers(i + 1, a.arity))
    lhs = tr.compose(tr.compose(a, i, b), k + b.arity - 1, c)
    rhs = tr.compose(tr.compose(a, k, c), i, b)
    assert lhs == rhs


def test_associativity_exhaustive_small():
    pool = [t for n in range(1, 4) for t in tr.enumerate_trees(n)]
    for a in pool:
        for b in pool:
            for c in pool:
                for i in range(1, a.arity + 1):
                    for j in range(1, b.arity + 1):
                        assert (tr.compose(tr.compose(a, i, b), i + j - 1, c)
                                == tr.compose(a, i, tr.compose(b, j, c)))


def test_bunch_monotonicity():
    for n in range(2, 6):
        ts = tr.enumerate_trees(n)
        for t in ts:
            for s in ts:
                if tr.leq(t, s):
                    assert tr.bunch_set(s) <= tr.bunch_set(t)


def test_dot_export():
    dot = tr.to_dot(3)
    assert dot.startswith("digraph") and dot.count("->") == 2
