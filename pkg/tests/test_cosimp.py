import random
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from ainfloops import cofacial as cf, cosimp as cs

W = cs.WORDS


def hh_ranks_direct(A, degrees):
    """Hochschild ranks from the textbook coboundary, built without the cosimplicial layer.

    (delta f)(a1..a_{p+1}) = a1 f(a2..) + sum (-1)^i f(..a_i a_{i+1}..) + (-1)^{p+1} f(..a_p) a_{p+1}
    """
    n = A.dim

    def cols(p):
        return [(J, c) for J in product(range(n), repeat=p) for c in range(n)]

    def delta(p):
        src, dst = cols(p), cols(p + 1)
        at = {x: k for k, x in enumerate(src)}
        M = sympy.zeros(len(dst), len(src))
        for r, (J, c) in enumerate(dst):
            for b in range(n):
                v = A.mult[J[0]][b][c]
                if v:
                    M[r, at[(J[1:], b)]] += v
            for i in range(1, p + 1):
                for k in range(n):
                    v = A.mult[J[i - 1]][J[i]][k]
                    if v:
                        M[r, at[(J[:i - 1] + (k,) + J[i + 1:], c)]] += (-1) ** i * v
            for b in range(n):
                v = A.mult[b][J[p]][c]
                if v:
                    M[r, at[(J[:p], b)]] += (-1) ** (p + 1) * v
        return M

    ranks = [delta(p).rank() for p in range(max(degrees) + 1)]
    return [len(cols(p)) - ranks[p] - (ranks[p - 1] if p else 0) for p in degrees]


@pytest.fixture(scope="module")
def dual4():
    return cs.hochschild(cs.dual_numbers(), N=4)


# Hochschild ---------------------------------------------------------------------------------

def test_dual_numbers_structure(dual4):
    X, mu = dual4
    assert X.dims == (2, 4, 8, 16, 32)
    assert cs.validate(X).ok
    rep = cs.ms_check(X, mu)
    assert rep.ok and rep.first is None


@pytest.mark.parametrize("make,N,want", [
    (cs.dual_numbers, 4, [2, 1, 1, 1]),
    (lambda: cs.matrix_algebra(2), 2, [1, 0]),
    (cs.rationals, 3, [1, 0, 0]),
    (lambda: cs.truncated_polynomials(3), 3, [3, 2, 2]),
])
def test_hochschild_ranks_against_direct_oracle(make, N, want):
    A = make()
    X, _ = cs.hochschild(A, N=N)
    assert cs.total_cohomology(X) == want
    assert cs.total_cohomology(X, normalized=False) == want
    assert hh_ranks_direct(A, range(N)) == want


def test_rationals_cohomology_is_q():
    X, mu = cs.hochschild(cs.rationals(), N=3)
    assert X.dims == (1, 1, 1, 1)
    H = cs.cohomology_basis(X, 0)
    assert H.shape == (1, 1)
    assert cs.class_of(X, 0, cs.cup(mu, H, 0, H, 0)) == [1]


def test_perturbed_coface_breaks_ms(dual4):
    X, mu = dual4
    cof = dict(X.cofaces)
    cof[(0, 0)] = cs.matrix({(0, 0): 1, (1, 1): 2, (2, 0): 1, (3, 1): 1}, (4, 2))
    Y = cs.TruncatedCosimplicial(X.N, X.dims, cof, X.codegens)
    rep = cs.ms_check(Y, mu)
    assert not rep.ok
    assert rep.first["family"] == "d"


def test_zero_product_is_ms(dual4):
    X, _ = dual4
    assert cs.ms_check(X, cs.zero_product(X)).ok


def test_cup_unit_and_commutativity(dual4):
    X, mu = dual4
    one = cs.vector([1, 0])
    for p in range(X.N):
        H = cs.cohomology_basis(X, p)
        for a in range(H.shape[1]):
            x = H.extract(list(range(X.dims[p])), [a])
            want = cs.class_of(X, p, x)
            assert cs.class_of(X, p, cs.cup(mu, one, 0, x, p)) == want
            assert cs.class_of(X, p, cs.cup(mu, x, p, one, 0)) == want
    table = cs.cup_table(X, mu)
    assert table[(0, 1, 0, 1)] == [0, 0]
    for (p, a, q, b), v in table.items():
        if (q, b, p, a) in table and (p * q) % 2 == 0:
            assert table[(q, b, p, a)] == v


def test_class_of_rejects_non_cocycle(dual4):
    X, _ = dual4
    with pytest.raises(ValueError):
        cs.class_of(X, 1, cs.vector([1, 0, 0, 0]))
    with pytest.raises(IndexError):
        cs.cocycles(X, 4)


def test_operator_bounds(dual4):
    X, _ = dual4
    with pytest.raises(IndexError):
        X.d(4, 0)
    with pytest.raises(IndexError):
        X.s(1, 1)
    with pytest.raises(ValueError):
        cs.TruncatedCosimplicial(1, (1,), {}, {})


def test_bimodule_without_product():
    A = cs.dual_numbers()
    reg = cs.Bimodule.regular(A)
    B = cs.Bimodule(A, 2, reg.left, reg.right)
    X, mu = cs.hochschild(A, B, N=2)
    assert mu is None and cs.validate(X).ok


def test_invalid_algebra_rejected():
    with pytest.raises(ValueError):
        cs.Algebra.from_triples(2, [(0, 0, 0, 1), (1, 1, 0, 1)], (0, 1))
    with pytest.raises(OverflowError):
        cs.hochschild(cs.matrix_algebra(3), N=5)


def test_json_round_trips(dual4):
    X, _ = dual4
    Y = cs.from_json(cs.to_json(X))
    assert Y.dims == X.dims
    assert all(cs.meq(Y.cofaces[k], X.cofaces[k]) for k in X.cofaces)
    assert all(cs.meq(Y.codegens[k], X.codegens[k]) for k in X.codegens)
    A = cs.matrix_algebra(2)
    assert cs.algebra_to_json(cs.algebra_from_json(cs.algebra_to_json(A))) == cs.algebra_to_json(A)
    B = cs.Bimodule.regular(cs.dual_numbers())
    assert cs.bimodule_to_json(cs.bimodule_from_json(cs.bimodule_to_json(B))) == cs.bimodule_to_json(B)


# box product --------------------------------------------------------------------------------

def test_box_product_of_hochschild():
    X, _ = cs.hochschild(cs.dual_numbers(), N=3)
    B = cs.box_product(X, X)
    assert B.dims == (4, 12, 32, 80)
    assert cs.validate(B).ok
    assert cs.box_well_defined(X, X).ok
    assert cs.box_product(X, cs.constant(1, 3)).dims == X.dims


def test_words_linearization():
    L = cs.linearize(W, 3)
    assert L.dims == (1, 2, 4, 8)
    assert cs.validate(L).ok
    assert cs.ms_check(L, cs.concatenation_product(W, 3)).ok
    LB = cs.box_product(L, L)
    assert list(LB.dims) == [len(cs.box_elements(W, 2, r)) for r in range(4)] == [1, 3, 8, 20]
    assert cs.validate(LB).ok


def test_word_operators():
    assert W.d(0, "c") == "bc" and W.d(2, "c") == "cb" and W.d(1, "c") == "cc"
    assert W.s(0, "cb") == "b"
    assert W.box_canonical(("cb", "c")) == ("c", "bc")
    with pytest.raises(IndexError):
        W.d(3, "c")


# discrete MCK -------------------------------------------------------------------------------

def brute_mck(n, l):
    out = set()
    for m in cs._mark_tuples(n, l):
        for T in cf.enumerate_component(m):
            for ps in cs._compositions(l - sum(m), n):
                for xs in product(*(W.elements(p) for p in ps)):
                    out.add(cs.mck_apply(T, xs))
    return out


@pytest.mark.parametrize("n,l", [(1, 0), (1, 2), (2, 1), (2, 2), (2, 3)])
def test_mck_enumeration(n, l):
    els = cs.mck_elements(n, l)
    assert set(els) == brute_mck(n, l)
    assert len(els) == cs.mck_count(n, l)


def test_mck_identities_and_forget():
    for n in (1, 2):
        for l in range(3):
            for e in cs.mck_elements(n, l):
                D, S = cs.mck_d, cs.mck_s
                U = cs.forget_U(e)
                for j in range(l + 2):
                    assert cs.forget_U(D(j, e)) == cs.mk_apply(U.tree, cs.box_d(j, U.xs))
                    for i in range(j):
                        assert D(j, D(i, e)) == D(i, D(j - 1, e))
                for j in range(l):
                    assert cs.forget_U(S(j, e)) == cs.mk_apply(U.tree, cs.box_s(j, U.xs))
                for j in range(l + 1):
                    for i in range(l + 2):
                        if i < j:
                            rhs = D(i, S(j - 1, e))
                        elif i in (j, j + 1):
                            rhs = e
                        else:
                            rhs = D(i - 1, S(j, e))
                        assert S(j, D(i, e)) == rhs
                for j in range(l - 1):
                    for i in range(j + 1):
                        assert S(j, S(i, e)) == S(i, S(j + 1, e))


POOL = {n: [e for l in range(3) for e in cs.mck_elements(n, l)] for n in (1, 2)}


@given(st.data())
def test_forget_commutes_with_monad_product(data):
    n = data.draw(st.sampled_from([1, 2]))
    m = tuple(data.draw(st.integers(0, 1)) for _ in range(n + 1))
    u = data.draw(st.sampled_from(cf.enumerate_component(m)))
    es = [data.draw(st.sampled_from(POOL[data.draw(st.sampled_from([1, 2]))])) for _ in range(n)]
    outer = []
    for i, e in enumerate(es):
        if i == n - 1:
            for _ in range(m[n]):
                e = cs.mck_d(e.degree + 1, e)
        for _ in range(m[i]):
            e = cs.mck_d(0, e)
        outer.append(cs.forget_U(e))
    assert cs.forget_U(cs.mck_mu(u, es)) == cs.mk_mu(u.tree, outer)


def test_mck_normal_form():
    e = cs.mck_apply(cf.symbol(1, 2), ("c",))
    assert e.xs == ("bcbb",) and e.tree == cf.UNIT
    assert e.degree == 4
    with pytest.raises(ValueError):
        cs.mck_apply(cf.UNIT, ("c", "c"))
