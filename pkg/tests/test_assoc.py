import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ainfloops import assoc, trees as tr

P2 = assoc.point(2)


def cumulative_product(a, b, i):
    """Independent product map: cut [0, 1) at all cumulative breakpoints."""
    def cuts(chain):
        acc, out = Fraction(0), []
        for _, w in chain:
            acc += Fraction(w)
            out.append(acc)
        return out
    ca, cb = cuts(a), cuts(b)
    pts = sorted(set(ca) | set(cb))
    out, prev = [], Fraction(0)
    for x in pts:
        ea = a[next(k for k, c in enumerate(ca) if c >= x)][0]
        eb = b[next(k for k, c in enumerate(cb) if c >= x)][0]
        e = tr.compose(ea, i, eb)
        if out and out[-1][0] == e:
            out[-1] = (e, out[-1][1] + x - prev)
        else:
            out.append((e, x - prev))
        prev = x
    return tuple(out)


@pytest.mark.parametrize("n,f", [(3, [2, 1]), (4, [5, 5, 1]), (5, [14, 21, 9, 1])])
def test_fvector(n, f):
    assert assoc.fvector(n) == f


def test_euler_characteristic():
    for n in range(2, 8):
        assert sum((-1) ** k * x for k, x in enumerate(assoc.fvector(n))) == 1


def test_dim():
    for n in range(2, 6):
        for t in tr.enumerate_trees(n):
            if t.is_binary():
                assert assoc.dim(t) == 0
            for s in tr.enumerate_trees(n):
                if tr.leq(t, s) and s != t:
                    assert assoc.dim(t) < assoc.dim(s)
        assert assoc.dim(tr.corolla(n)) == n - 2


def test_cone_compose_examples():
    left = assoc.cone_compose(P2, 1, P2)
    assert assoc.to_barycentric(left).as_dict() == {tr.from_string("((..).)"): 1}
    a = assoc.cone_compose(assoc.cone_compose(P2, 1, P2), 1, P2)
    b = assoc.cone_compose(assoc.cone_compose(P2, 2, P2), 1, P2)
    ba, bb = assoc.to_barycentric(a), assoc.to_barycentric(b)
    assert ba.support() != bb.support()
    assert all(assoc.dim(e) == 0 for e in ba.support() + bb.support())
    assert assoc.cone_compose(assoc.point(1), 1, left) == left
    assert assoc.cone_compose(left, 2, assoc.point(1)) == left
    with pytest.raises(IndexError):
        assoc.cone_compose(P2, 3, P2)


def test_apex_compositions_hit_face_barycenters():
    for n1 in range(2, 5):
        for n2 in range(2, 5):
            for i in range(1, n1 + 1):
                p = assoc.cone_compose(assoc.apex(n1), i, assoc.apex(n2))
                face = tr.compose(tr.corolla(n1), i, tr.corolla(n2))
                assert assoc.to_barycentric(p).as_dict() == {face: 1}


def test_trivial_barycentric():
    for n in range(2, 6):
        assert assoc.to_barycentric(assoc.apex(n)).as_dict() == {tr.corolla(n): 1}
        for t in tr.enumerate_trees(n):
            if t.is_binary():
                assert assoc.to_barycentric(assoc.vertex_point(t)).as_dict() == {t: 1}


def test_vertex_charts_agree():
    for n in (4, 5):
        for t in tr.enumerate_trees(n):
            if not t.is_binary():
                continue
            charts = assoc.vertex_charts(t)
            assert len({(c.i, c.q.arity) for c in charts}) == n - 2
            for c in charts:
                assert assoc.to_barycentric(c).as_dict() == {t: 1}


def test_codim2_points_of_pentagon_through_two_charts():
    # an edge point of K(4) lies in two codimension-one faces only at vertices;
    # a general point on a codim-1 face meets a second chart only at its corners
    for t in tr.enumerate_trees(4):
        if t.is_binary():
            bs = {assoc.barycentric_to_json(assoc.to_barycentric(c)) for c in assoc.vertex_charts(t)}
            assert len(bs) == 1


def test_face_of_against_recursion():
    rng = random.Random(4)
    for _ in range(1000):
        n = rng.randint(2, 5)
        p = assoc.random_point(n, rng, exact=True)
        f = assoc.face_of(p)
        assert f == assoc.to_barycentric(p).chain[0][0]
        if n >= 3 and p.t == 1 and p.p.arity >= 2:
            want = tr.compose(assoc.face_of(p.p), p.i, assoc.face_of(p.q))
            assert f == want
        if n >= 3 and p.t < 1:
            # interior of the cone: the support minimum is the carrier of the boundary point
            assert f == assoc.face_of(p.boundary()) or p.t == 0


def test_product_realization_matches_cumulative_oracle():
    rng = random.Random(5)
    for _ in range(1000):
        n1, n2 = rng.randint(2, 4), rng.randint(2, 4)
        p = assoc.random_point(n1, rng, exact=True)
        q = assoc.random_point(n2, rng, exact=True)
        i = rng.randint(1, n1)
        got = assoc.to_barycentric(assoc.cone_compose(p, i, q)).chain
        want = cumulative_product(assoc.to_barycentric(p).chain, assoc.to_barycentric(q).chain, i)
        assert got == want


def test_face_chart_injective():
    rng = random.Random(6)
    seen = {}
    for _ in range(400):
        p = assoc.random_point(3, rng, exact=True)
        q = assoc.random_point(3, rng, exact=True)
        key = assoc.barycentric_to_json(assoc.to_barycentric(assoc.cone_compose(p, 2, q)))
        pq = (assoc.barycentric_to_json(assoc.to_barycentric(p)),
              assoc.barycentric_to_json(assoc.to_barycentric(q)))
        assert seen.setdefault(key, pq) == pq


@given(st.integers(3, 6), st.integers(0, 2 ** 32))
def test_barycentric_round_trip(n, seed):
    rng = random.Random(seed)
    p = assoc.random_point(n, rng)
    b = assoc.to_barycentric(p)
    assert abs(sum(float(w) for _, w in b.chain) - 1) < 1e-12
    sup = b.support()
    assert all(tr.leq(a, c) and a != c for a, c in zip(sup, sup[1:]))
    assert assoc.to_barycentric(assoc.from_barycentric(b)).close_to(b)


def test_exact_round_trip():
    rng = random.Random(7)
    for _ in range(300):
        p = assoc.random_point(rng.randint(3, 5), rng, exact=True)
        b = assoc.to_barycentric(p)
        assert assoc.to_barycentric(assoc.from_barycentric(b)) == b


def test_json_round_trip():
    rng = random.Random(8)
    for exact in (True, False):
        b = assoc.to_barycentric(assoc.random_point(5, rng, exact=exact))
        s = assoc.barycentric_to_json(b)
        assert json.loads(s)["arity"] == 5
        assert assoc.barycentric_from_json(s).close_to(b)


def test_cone_point_validation():
    with pytest.raises(ValueError):
        assoc.ConePoint(4, 0.5, 1, P2, P2)
    with pytest.raises(ValueError):
        assoc.ConePoint(3, 1.5, 1, P2, P2)
    with pytest.raises(IndexError):
        assoc.ConePoint(3, 0.5, 3, P2, P2)
    with pytest.raises(ValueError):
        assoc.point(3)


def test_hasse_dot():
    assert assoc.hasse_dot(4).count("->") > 0
