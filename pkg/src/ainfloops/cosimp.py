"""Truncated cosimplicial modules over Q, the box product, MS products and
Hochschild cochains, plus discrete models of the monads MK and MCK.

Linear maps are sparse exact matrices (sympy ``DomainMatrix`` over ``QQ``)
acting on column vectors, so a map ``X^p -> X^{p+1}`` has shape
``(dim X^{p+1}, dim X^p)``.  Tensor products use row-major pairing: the basis
vector ``e_a (x) e_b`` of ``V (x) W`` has index ``a * dim W + b``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from . import cofacial as cf
from . import trees as tr
from .cofacial import CofacialTree

MAX_DIM = 20000


# exact matrices ------------------------------------------------------------------

def _q(x):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def matrix(dok: dict, shape) -> DomainMatrix:
    """Sparse matrix from ``{(row, col): value}``."""
    rows: dict = {}
    for (r, c), v in dok.items():
        if v:
            rows.setdefault(r, {})[c] = _q(v)
    return DomainMatrix(rows, tuple(shape), QQ)


def zeros(r: int, c: int) -> DomainMatrix:
    return DomainMatrix({}, (r, c), QQ)


def eye(n: int) -> DomainMatrix:
    return DomainMatrix({i: {i: QQ(1)} for i in range(n)}, (n, n), QQ)


def vector(values) -> DomainMatrix:
    return matrix({(i, 0): v for i, v in enumerate(values)}, (len(values), 1))


def kron(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    (ra, ca), (rb, cb) = A.shape, B.shape
    a, b = A.to_dok(), B.to_dok()
    rows: dict = {}
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            rows.setdefault(i * rb + k, {})[j * cb + l] = x * y
    return DomainMatrix(rows, (ra * rb, ca * cb), QQ)


def meq(A: DomainMatrix, B: DomainMatrix) -> bool:
    return A.shape == B.shape and (A.to_sparse() - B.to_sparse()).is_zero_matrix


def _hstack(mats, rows: int) -> DomainMatrix:
    mats = [m for m in mats if m.shape[1]]
    if not mats:
        return zeros(rows, 0)
    out = mats[0].to_sparse()
    for m in mats[1:]:
        out = out.hstack(m.to_sparse())
    return out


def rank(A: DomainMatrix) -> int:
    if 0 in A.shape:
        return 0
    return A.to_sparse().rank()


def kernel(A: DomainMatrix) -> DomainMatrix:
    """Columns spanning the kernel of ``A``."""
    n = A.shape[1]
    if A.shape[0] == 0:
        return eye(n)
    if n == 0:
        return zeros(0, 0)
    ns = A.to_sparse().nullspace()
    if ns.shape[0] == 0:
        return zeros(n, 0)
    return ns.transpose()


# reports ---------------------------------------------------------------------------

@dataclass
class Report:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first(self):
        return self.failures[0] if self.failures else None

    def check(self, cond: bool, **where):
        self.checks += 1
        if not cond:
            self.failures.append(where)

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checks": self.checks,
                "failures": self.failures}


# truncated cosimplicial modules ---------------------------------------------------------

@dataclass
class TruncatedCosimplicial:
    """Degrees ``0..N``; ``cofaces[(p, i)]`` is ``d^i: X^p -> X^{p+1}`` and
    ``codegens[(p, i)]`` is ``s^i: X^p -> X^{p-1}``."""
    N: int
    dims: tuple
    cofaces: dict
    codegens: dict
    labels: tuple | None = None

    def __post_init__(self):
        if len(self.dims) != self.N + 1:
            raise ValueError("need one dimension per degree 0..N")
        for p in range(self.N):
            for i in range(p + 2):
                m = self.cofaces.get((p, i))
                if m is None or m.shape != (self.dims[p + 1], self.dims[p]):
                    raise ValueError(f"coface d^{i} on degree {p} missing or misshapen")
        for p in range(1, self.N + 1):
            for i in range(p):
                m = self.codegens.get((p, i))
                if m is None or m.shape != (self.dims[p - 1], self.dims[p]):
                    raise ValueError(f"codegeneracy s^{i} on degree {p} missing or misshapen")

    def d(self, p: int, i: int) -> DomainMatrix:
        if not (0 <= p < self.N and 0 <= i <= p + 1):
            raise IndexError(f"d^{i} on degree {p} outside truncation {self.N}")
        return self.cofaces[(p, i)]

    def s(self, p: int, i: int) -> DomainMatrix:
        if not (1 <= p <= self.N and 0 <= i <= p - 1):
            raise IndexError(f"s^{i} on degree {p} outside truncation {self.N}")
        return self.codegens[(p, i)]

    def validate(self) -> Report:
        return validate(self)


def validate(X: TruncatedCosimplicial) -> Report:
    """The five cosimplicial identities as matrix equations."""
    rep = Report("cosimplicial identities")
    N, d, s = X.N, X.d, X.s
    for p in range(N - 1):
        for j in range(p + 3):
            for i in range(j):
                rep.check(meq(d(p + 1, j) * d(p, i), d(p + 1, i) * d(p, j - 1)),
                          identity="dd", p=p, i=i, j=j)
    for p in range(2, N + 1):
        for j in range(p - 1):
            for i in range(j + 1):
                rep.check(meq(s(p - 1, j) * s(p, i), s(p - 1, i) * s(p, j + 1)),
                          identity="ss", p=p, i=i, j=j)
    for p in range(N):
        for j in range(p + 1):
            for i in range(p + 2):
                lhs = s(p + 1, j) * d(p, i)
                if i < j:
                    rhs = d(p - 1, i) * s(p, j - 1)
                elif i in (j, j + 1):
                    rhs = eye(X.dims[p])
                else:
                    rhs = d(p - 1, i - 1) * s(p, j)
                kind = "sd<" if i < j else ("sd=" if i <= j + 1 else "sd>")
                rep.check(meq(lhs, rhs), identity=kind, p=p, i=i, j=j)
    return rep


def constant(dim: int, N: int) -> TruncatedCosimplicial:
    """The constant object c(V) with every operator the identity."""
    I = eye(dim)
    return TruncatedCosimplicial(
        N, (dim,) * (N + 1),
        {(p, i): I for p in range(N) for i in range(p + 2)},
        {(p, i): I for p in range(1, N + 1) for i in range(p)})


def to_json(X: TruncatedCosimplicial) -> str:
    def enc(m):
        return [[r, c, str(Fraction(int(v.numerator), int(v.denominator)))]
                for (r, c), v in sorted(m.to_dok().items())]
    return json.dumps({
        "N": X.N, "dims": list(X.dims),
        "cofaces": [[p, i, enc(m)] for (p, i), m in sorted(X.cofaces.items())],
        "codegeneracies": [[p, i, enc(m)] for (p, i), m in sorted(X.codegens.items())],
    })


def from_json(s: str) -> TruncatedCosimplicial:
    d = json.loads(s)
    dims = tuple(d["dims"])

    def dec(entries, shape):
        return matrix({(r, c): Fraction(v) for r, c, v in entries}, shape)
    cof = {(p, i): dec(e, (dims[p + 1], dims[p])) for p, i, e in d["cofaces"]}
    cod = {(p, i): dec(e, (dims[p - 1], dims[p])) for p, i, e in d["codegeneracies"]}
    return TruncatedCosimplicial(d["N"], dims, cof, cod)


# box product ---------------------------------------------------------------------------

@dataclass
class _Quotient:
    blocks: dict        # (p, q) -> offset in V_r
    dim_v: int
    proj: DomainMatrix  # V_r -> Q_r
    sect: DomainMatrix  # Q_r -> V_r


def _blocks(X, Y, r):
    offs, o = {}, 0
    for p in range(r + 1):
        offs[(p, r - p)] = o
        o += X.dims[p] * Y.dims[r - p]
    return offs, o


def _embed(offs, key, size, total) -> DomainMatrix:
    o = offs[key]
    return matrix({(o + k, k): 1 for k in range(size)}, (total, size))


def _restrict(offs, key, size, total) -> DomainMatrix:
    o = offs[key]
    return matrix({(k, o + k): 1 for k in range(size)}, (size, total))


def relation_matrix(X, Y, r: int) -> DomainMatrix:
    """Columns ``d^{p+1}x (x) y - x (x) d^0 y`` spanning the glued subspace of degree r."""
    offs, total = _blocks(X, Y, r)
    cols = []
    for p in range(r):
        q = r - 1 - p
        a = _embed(offs, (p + 1, q), X.dims[p + 1] * Y.dims[q], total) * kron(X.d(p, p + 1), eye(Y.dims[q]))
        b = _embed(offs, (p, q + 1), X.dims[p] * Y.dims[q + 1], total) * kron(eye(X.dims[p]), Y.d(q, 0))
        cols.append(a - b)
    return _hstack(cols, total)


def _quotient(X, Y, r) -> _Quotient:
    offs, total = _blocks(X, Y, r)
    if total > MAX_DIM:
        raise OverflowError(f"box product degree {r} has dimension {total} > {MAX_DIM}")
    R = relation_matrix(X, Y, r)
    if R.shape[1]:
        E, piv = R.transpose().to_sparse().rref()
        erows = E.to_sdm()
    else:
        piv, erows = (), {}
    free = [j for j in range(total) if j not in set(piv)]
    pos = {j: k for k, j in enumerate(free)}
    # a vector is reduced by the pivot rows, then read off on the free coordinates
    rows: dict = {pos[j]: {j: QQ(1)} for j in free}
    for row, pc in enumerate(piv):
        for j, v in erows.get(row, {}).items():
            if j in pos:
                rows[pos[j]][pc] = -v
    P = DomainMatrix(rows, (len(free), total), QQ)
    S = matrix({(j, pos[j]): 1 for j in free}, (total, len(free)))
    return _Quotient(offs, total, P, S)


def _box_coface(X, Y, r, i, offs_src, n_src, offs_dst, n_dst):
    out = zeros(n_dst, n_src)
    for p in range(r + 1):
        q = r - p
        src = _restrict(offs_src, (p, q), X.dims[p] * Y.dims[q], n_src)
        if i <= p:
            op = kron(X.d(p, i), eye(Y.dims[q]))
            dst = _embed(offs_dst, (p + 1, q), X.dims[p + 1] * Y.dims[q], n_dst)
        else:
            op = kron(eye(X.dims[p]), Y.d(q, i - p))
            dst = _embed(offs_dst, (p, q + 1), X.dims[p] * Y.dims[q + 1], n_dst)
        out = out + dst * op * src
    return out


def _box_codegen(X, Y, r, i, offs_src, n_src, offs_dst, n_dst):
    out = zeros(n_dst, n_src)
    for p in range(r + 1):
        q = r - p
        src = _restrict(offs_src, (p, q), X.dims[p] * Y.dims[q], n_src)
        if i <= p - 1:
            op = kron(X.s(p, i), eye(Y.dims[q]))
            dst = _embed(offs_dst, (p - 1, q), X.dims[p - 1] * Y.dims[q], n_dst)
        elif q >= 1:
            op = kron(eye(X.dims[p]), Y.s(q, i - p))
            dst = _embed(offs_dst, (p, q - 1), X.dims[p] * Y.dims[q - 1], n_dst)
        else:
            continue
        out = out + dst * op * src
    return out


def box_product(X: TruncatedCosimplicial, Y: TruncatedCosimplicial) -> TruncatedCosimplicial:
    """``(X box Y)^r = (sum_{p+q=r} X^p (x) Y^q) / (d^{p+1}x (x) y - x (x) d^0 y)``."""
    if X.N != Y.N:
        raise ValueError("box product needs equal truncation degrees")
    N = X.N
    quo = [_quotient(X, Y, r) for r in range(N + 1)]
    cof, cod = {}, {}
    for r in range(N + 1):
        a = quo[r]
        if r < N:
            b = quo[r + 1]
            for i in range(r + 2):
                D = _box_coface(X, Y, r, i, a.blocks, a.dim_v, b.blocks, b.dim_v)
                cof[(r, i)] = b.proj * D * a.sect
        if r >= 1:
            b = quo[r - 1]
            for i in range(r):
                S = _box_codegen(X, Y, r, i, a.blocks, a.dim_v, b.blocks, b.dim_v)
                cod[(r, i)] = b.proj * S * a.sect
    dims = tuple(q.proj.shape[0] for q in quo)
    return TruncatedCosimplicial(N, dims, cof, cod)


def box_well_defined(X, Y) -> Report:
    """Every operator on the direct sum maps relations into relations."""
    rep = Report("box relations preserved")
    N = X.N
    quo = [_quotient(X, Y, r) for r in range(N + 1)]
    for r in range(N + 1):
        a = quo[r]
        R = relation_matrix(X, Y, r)
        if r < N:
            b = quo[r + 1]
            for i in range(r + 2):
                D = _box_coface(X, Y, r, i, a.blocks, a.dim_v, b.blocks, b.dim_v)
                rep.check((b.proj * D * R).is_zero_matrix if R.shape[1] else True,
                          op="d", degree=r, i=i)
        if r >= 1:
            b = quo[r - 1]
            for i in range(r):
                S = _box_codegen(X, Y, r, i, a.blocks, a.dim_v, b.blocks, b.dim_v)
                rep.check((b.proj * S * R).is_zero_matrix if R.shape[1] else True,
                          op="s", degree=r, i=i)
    return rep


# MS products ------------------------------------------------------------------------------

def ms_check(X: TruncatedCosimplicial, mu: dict) -> Report:
    """The four families of MS conditions for ``mu[(p, q)]: X^p (x) X^q -> X^{p+q}``.

    Failures are tagged with the family (``"d"``, ``"hinge"``, ``"s"``,
    ``"assoc"``) and the indices involved, in the order checked.
    """
    rep = Report("MS product")
    N, dims = X.N, X.dims
    I = [eye(k) for k in dims]
    for p in range(N + 1):
        for q in range(N + 1 - p):
            if p + q + 1 > N:
                continue
            m = mu[(p, q)]
            for i in range(p + q + 2):
                lhs = X.d(p + q, i) * m
                if i <= p:
                    rhs = mu[(p + 1, q)] * kron(X.d(p, i), I[q])
                else:
                    rhs = mu[(p, q + 1)] * kron(I[p], X.d(q, i - p))
                rep.check(meq(lhs, rhs), family="d", p=p, q=q, i=i)
    for p in range(N + 1):
        for q in range(N - p):
            lhs = mu[(p + 1, q)] * kron(X.d(p, p + 1), I[q])
            rhs = mu[(p, q + 1)] * kron(I[p], X.d(q, 0))
            rep.check(meq(lhs, rhs), family="hinge", p=p, q=q)
    for p in range(N + 1):
        for q in range(N + 1 - p):
            m = mu[(p, q)]
            for i in range(p + q):
                lhs = X.s(p + q, i) * m
                if i <= p - 1:
                    rhs = mu[(p - 1, q)] * kron(X.s(p, i), I[q])
                else:
                    rhs = mu[(p, q - 1)] * kron(I[p], X.s(q, i - p))
                rep.check(meq(lhs, rhs), family="s", p=p, q=q, i=i)
    for p in range(N + 1):
        for q in range(N + 1 - p):
            for r in range(N + 1 - p - q):
                lhs = mu[(p + q, r)] * kron(mu[(p, q)], I[r])
                rhs = mu[(p, q + r)] * kron(I[p], mu[(q, r)])
                rep.check(meq(lhs, rhs), family="assoc", p=p, q=q, r=r)
    return rep


def zero_product(X: TruncatedCosimplicial) -> dict:
    return {(p, q): zeros(X.dims[p + q], X.dims[p] * X.dims[q])
            for p in range(X.N + 1) for q in range(X.N + 1 - p)}


# algebras and bimodules ---------------------------------------------------------------------

def _tensor3(d1, d2, d3, triples):
    t = [[[Fraction(0)] * d3 for _ in range(d2)] for _ in range(d1)]
    for i, j, k, v in triples:
        t[i][j][k] += Fraction(v)
    return t


@dataclass
class Algebra:
    """``e_i e_j = sum_k mult[i][j][k] e_k`` with unit vector ``unit``."""
    dim: int
    mult: list
    unit: tuple

    def __post_init__(self):
        self.unit = tuple(Fraction(x) for x in self.unit)
        errs = algebra_errors(self)
        if errs:
            raise ValueError("; ".join(errs))

    def times(self, x, y) -> list:
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        for k, c in enumerate(self.mult[i][j]):
                            out[k] += a * b * c
        return out

    @classmethod
    def from_triples(cls, dim, triples, unit):
        return cls(dim, _tensor3(dim, dim, dim, triples), unit)


def _basis(n, i):
    return [Fraction(int(k == i)) for k in range(n)]


def algebra_errors(A: Algebra) -> list:
    n = A.dim
    errs = []
    for i, j, k in product(range(n), repeat=3):
        ei, ej, ek = _basis(n, i), _basis(n, j), _basis(n, k)
        if A.times(A.times(ei, ej), ek) != A.times(ei, A.times(ej, ek)):
            errs.append(f"not associative at ({i},{j},{k})")
    for i in range(n):
        ei = _basis(n, i)
        if A.times(list(A.unit), ei) != ei or A.times(ei, list(A.unit)) != ei:
            errs.append(f"unit law fails at {i}")
    return errs


@dataclass
class Bimodule:
    """``e_i . b_j = sum_k left[i][j][k] b_k`` and ``b_j . e_i = sum_k right[j][i][k] b_k``.

    ``mult`` is an optional product ``B (x) B -> B`` used by the cup product.
    """
    algebra: Algebra
    dim: int
    left: list
    right: list
    mult: list | None = None

    def __post_init__(self):
        errs = bimodule_errors(self)
        if errs:
            raise ValueError("; ".join(errs))

    @classmethod
    def regular(cls, A: Algebra) -> "Bimodule":
        return cls(A, A.dim, A.mult, A.mult, A.mult)


def _act(t, x, y, dout):
    out = [Fraction(0)] * dout
    for i, a in enumerate(x):
        if a:
            for j, b in enumerate(y):
                if b:
                    for k, c in enumerate(t[i][j]):
                        out[k] += a * b * c
    return out


def bimodule_errors(M: Bimodule) -> list:
    A, n, m = M.algebra, M.algebra.dim, M.dim
    errs = []
    L = lambda a, b: _act(M.left, a, b, m)   # noqa: E731
    R = lambda b, a: _act(M.right, b, a, m)  # noqa: E731
    for i, j, k in product(range(n), range(n), range(m)):
        ei, ej, bk = _basis(n, i), _basis(n, j), _basis(m, k)
        if L(A.times(ei, ej), bk) != L(ei, L(ej, bk)):
            errs.append(f"left action not associative at ({i},{j},{k})")
        if R(R(bk, ei), ej) != R(bk, A.times(ei, ej)):
            errs.append(f"right action not associative at ({k},{i},{j})")
        if L(ei, R(bk, ej)) != R(L(ei, bk), ej):
            errs.append(f"actions do not commute at ({i},{k},{j})")
    for k in range(m):
        bk = _basis(m, k)
        if L(list(A.unit), bk) != bk or R(bk, list(A.unit)) != bk:
            errs.append(f"unit does not act trivially on {k}")
    return errs


def rationals() -> Algebra:
    return Algebra.from_triples(1, [(0, 0, 0, 1)], (1,))


def dual_numbers() -> Algebra:
    """Q[x]/(x^2) on the basis (1, x)."""
    return Algebra.from_triples(2, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)], (1, 0))


def matrix_algebra(n: int = 2) -> Algebra:
    """M_n(Q) on the matrix units E_ab, index a * n + b."""
    triples = [(a * n + b, b * n + c, a * n + c, 1)
               for a in range(n) for b in range(n) for c in range(n)]
    return Algebra.from_triples(n * n, triples, [int(a == b) for a in range(n) for b in range(n)])


def truncated_polynomials(k: int) -> Algebra:
    """Q[x]/(x^k) on the basis 1, x, ..., x^{k-1}."""
    triples = [(i, j, i + j, 1) for i in range(k) for j in range(k) if i + j < k]
    return Algebra.from_triples(k, triples, _basis(k, 0))


def algebra_to_json(A: Algebra) -> str:
    triples = [f"{i} {j} {k} {v}" for i in range(A.dim) for j in range(A.dim)
               for k, v in enumerate(A.mult[i][j]) if v]
    return json.dumps({"dim": A.dim, "unit": [str(x) for x in A.unit], "mult": triples})


def _triples(lines):
    out = []
    for line in lines:
        i, j, k, v = line.split()
        out.append((int(i), int(j), int(k), Fraction(v)))
    return out


def algebra_from_json(s: str) -> Algebra:
    d = json.loads(s) if isinstance(s, str) else s
    return Algebra.from_triples(d["dim"], _triples(d["mult"]), [Fraction(x) for x in d["unit"]])


def bimodule_to_json(M: Bimodule) -> str:
    def enc(t, d1, d2):
        return [f"{i} {j} {k} {v}" for i in range(d1) for j in range(d2)
                for k, v in enumerate(t[i][j]) if v]
    n, m = M.algebra.dim, M.dim
    d = {"algebra": json.loads(algebra_to_json(M.algebra)), "dim": m,
         "left": enc(M.left, n, m), "right": enc(M.right, m, n)}
    if M.mult is not None:
        d["mult"] = enc(M.mult, m, m)
    return json.dumps(d)


def bimodule_from_json(s: str) -> Bimodule:
    d = json.loads(s)
    A = algebra_from_json(d["algebra"])
    n, m = A.dim, d["dim"]
    mult = _tensor3(m, m, m, _triples(d["mult"])) if "mult" in d else None
    return Bimodule(A, m, _tensor3(n, m, m, _triples(d["left"])),
                    _tensor3(m, n, m, _triples(d["right"])), mult)


# Hochschild cochains ----------------------------------------------------------------------------

def _tuples(n, p):
    return list(product(range(n), repeat=p))


def _enc(J, c, n, m):
    x = 0
    for j in J:
        x = x * n + j
    return x * m + c


def hochschild(A: Algebra, B: Bimodule | None = None, N: int = 3):
    """``CH^p = Hom(A^{(x)p}, B)`` with its cosimplicial structure and product.

    Basis of ``CH^p``: the cochain sending ``(e_J1, ..., e_Jp)`` to ``b_c`` and
    other basis tuples to zero, indexed by ``(J, c)``.  Returns ``(X, mu)``;
    ``mu`` is ``None`` when ``B`` has no product.
    """
    B = Bimodule.regular(A) if B is None else B
    if B.algebra is not A and algebra_to_json(B.algebra) != algebra_to_json(A):
        raise ValueError("bimodule is over a different algebra")
    n, m = A.dim, B.dim
    dims = tuple(n ** p * m for p in range(N + 1))
    if max(dims) > MAX_DIM:
        raise OverflowError("Hochschild truncation too large")
    cof, cod = {}, {}
    for p in range(N):
        for i in range(p + 2):
            dok: dict = {}
            for J in _tuples(n, p + 1):
                for c in range(m):
                    row = _enc(J, c, n, m)
                    if i == 0:
                        for b in range(m):
                            v = B.left[J[0]][b][c]
                            if v:
                                key = (row, _enc(J[1:], b, n, m))
                                dok[key] = dok.get(key, 0) + v
                    elif i == p + 1:
                        for b in range(m):
                            v = B.right[b][J[p]][c]
                            if v:
                                key = (row, _enc(J[:p], b, n, m))
                                dok[key] = dok.get(key, 0) + v
                    else:
                        for k in range(n):
                            v = A.mult[J[i - 1]][J[i]][k]
                            if v:
                                key = (row, _enc(J[:i - 1] + (k,) + J[i + 1:], c, n, m))
                                dok[key] = dok.get(key, 0) + v
            cof[(p, i)] = matrix(dok, (dims[p + 1], dims[p]))
    for p in range(1, N + 1):
        for i in range(p):
            dok = {}
            for J in _tuples(n, p - 1):
                for c in range(m):
                    row = _enc(J, c, n, m)
                    for u, v in enumerate(A.unit):
                        if v:
                            dok[(row, _enc(J[:i] + (u,) + J[i:], c, n, m))] = v
            cod[(p, i)] = matrix(dok, (dims[p - 1], dims[p]))
    X = TruncatedCosimplicial(N, dims, cof, cod)
    if B.mult is None:
        return X, None
    mu = {}
    for p in range(N + 1):
        for q in range(N + 1 - p):
            dok = {}
            for J in _tuples(n, p + q):
                for c in range(m):
                    row = _enc(J, c, n, m)
                    for b1 in range(m):
                        for b2 in range(m):
                            v = B.mult[b1][b2][c]
                            if v:
                                col = _enc(J[:p], b1, n, m) * dims[q] + _enc(J[p:], b2, n, m)
                                dok[(row, col)] = dok.get((row, col), 0) + v
            mu[(p, q)] = matrix(dok, (dims[p + q], dims[p] * dims[q]))
    return X, mu


# total cohomology -------------------------------------------------------------------------------

def coboundary(X: TruncatedCosimplicial, p: int) -> DomainMatrix:
    """``delta = sum_i (-1)^i d^i`` on degree ``p``."""
    out = zeros(X.dims[p + 1], X.dims[p])
    for i in range(p + 2):
        out = out + (X.d(p, i) if i % 2 == 0 else -X.d(p, i))
    return out


def normalized_basis(X: TruncatedCosimplicial, p: int) -> DomainMatrix:
    """Columns spanning the common kernel of the codegeneracies on degree ``p``."""
    if p == 0:
        return eye(X.dims[0])
    S = X.s(p, 0)
    for i in range(1, p):
        S = S.vstack(X.s(p, i))
    return kernel(S)


def _check_degree(X, p):
    if not 0 <= p <= X.N - 1:
        raise IndexError(f"cohomology is available in degrees 0..{X.N - 1}")


def _chains(X, p, normalized):
    return normalized_basis(X, p) if normalized else eye(X.dims[p])


def total_cohomology(X: TruncatedCosimplicial, normalized: bool = True) -> list:
    """Ranks of the cohomology of ``delta`` in degrees ``0..N-1``."""
    ranks = []
    for p in range(X.N):
        K = _chains(X, p, normalized)
        z = K.shape[1] - rank(coboundary(X, p) * K)
        b = rank(coboundary(X, p - 1) * _chains(X, p - 1, normalized)) if p else 0
        ranks.append(z - b)
    return ranks


def _colspace(M: DomainMatrix) -> DomainMatrix:
    if M.shape[1] == 0:
        return M
    _, piv = M.to_sparse().rref()
    return _hstack([M.extract(list(range(M.shape[0])), [j]) for j in piv], M.shape[0])


def cocycles(X: TruncatedCosimplicial, p: int, normalized: bool = True) -> DomainMatrix:
    _check_degree(X, p)
    K = _chains(X, p, normalized)
    if K.shape[1] == 0:
        return K
    ker = kernel(coboundary(X, p) * K)
    return K * ker if ker.shape[1] else zeros(X.dims[p], 0)


def coboundaries(X: TruncatedCosimplicial, p: int, normalized: bool = True) -> DomainMatrix:
    _check_degree(X, p)
    if p == 0:
        return zeros(X.dims[0], 0)
    return _colspace(coboundary(X, p - 1) * _chains(X, p - 1, normalized))


def cohomology_basis(X: TruncatedCosimplicial, p: int) -> DomainMatrix:
    """Cocycle columns completing a basis of the coboundaries to one of the cocycles."""
    Bd = coboundaries(X, p)
    Z = cocycles(X, p)
    M = _hstack([Bd, Z], X.dims[p])
    if M.shape[1] == 0:
        return zeros(X.dims[p], 0)
    _, piv = M.to_sparse().rref()
    keep = [j for j in piv if j >= Bd.shape[1]]
    return _hstack([M.extract(list(range(X.dims[p])), [j]) for j in keep], X.dims[p])


def _solve(M: DomainMatrix, v: DomainMatrix):
    """Some ``a`` with ``M a = v`` or ``None``."""
    k = M.shape[1]
    E, piv = M.to_sparse().hstack(v.to_sparse()).rref()
    if k in piv:
        return None
    sol = [QQ(0)] * k
    rows = E.to_sdm()
    for r, c in enumerate(piv):
        sol[c] = rows.get(r, {}).get(k, QQ(0))
    return sol


def is_coboundary(X: TruncatedCosimplicial, p: int, v: DomainMatrix) -> bool:
    Bd = coboundaries(X, p)
    if Bd.shape[1] == 0:
        return v.is_zero_matrix
    return _solve(Bd, v) is not None


def class_of(X: TruncatedCosimplicial, p: int, v: DomainMatrix) -> list:
    """Coordinates of a cocycle in the basis ``cohomology_basis(X, p)``."""
    if not (coboundary(X, p) * v).is_zero_matrix:
        raise ValueError("not a cocycle")
    Bd, H = coboundaries(X, p), cohomology_basis(X, p)
    sol = _solve(_hstack([Bd, H], X.dims[p]), v)
    if sol is None:
        raise ValueError("cocycle outside the normalized span")
    return [Fraction(int(x.numerator), int(x.denominator)) for x in sol[Bd.shape[1]:]]


def cup(mu: dict, x: DomainMatrix, p: int, y: DomainMatrix, q: int) -> DomainMatrix:
    """Product of cochain representatives."""
    key = (p, q)
    if key not in mu:
        raise IndexError(f"product ({p}, {q}) outside truncation")
    return mu[key] * kron(x, y)


def cup_table(X: TruncatedCosimplicial, mu: dict) -> dict:
    """``{(p, a, q, b): coordinates}`` for basis classes with ``p + q <= N - 1``."""
    bases = {p: cohomology_basis(X, p) for p in range(X.N)}
    out = {}
    for p in range(X.N):
        for q in range(X.N - p):
            Hp, Hq = bases[p], bases[q]
            for a in range(Hp.shape[1]):
                for b in range(Hq.shape[1]):
                    x = Hp.extract(list(range(X.dims[p])), [a])
                    y = Hq.extract(list(range(X.dims[q])), [b])
                    out[(p, a, q, b)] = class_of(X, p + q, cup(mu, x, p, y, q))
    return out


# discrete cosimplicial sets -------------------------------------------------------------------

@dataclass(frozen=True)
class WordSet:
    """Words of length p over an alphabet with a base letter.

    ``d^0`` prepends the base letter, ``d^{p+1}`` appends it, ``d^i``
    (1 <= i <= p) doubles the i-th letter and ``s^i`` deletes letter i+1.
    Concatenation is an MS product for this object.
    """
    alphabet: str = "bc"
    base: str = "b"

    def elements(self, p: int) -> list:
        return ["".join(w) for w in product(self.alphabet, repeat=p)]

    def d(self, i: int, x: str) -> str:
        p = len(x)
        if not 0 <= i <= p + 1:
            raise IndexError(f"d^{i} undefined in degree {p}")
        if i == 0:
            return self.base + x
        if i == p + 1:
            return x + self.base
        return x[:i] + x[i - 1] + x[i:]

    def s(self, i: int, x: str) -> str:
        p = len(x)
        if not 0 <= i <= p - 1:
            raise IndexError(f"s^{i} undefined in degree {p}")
        return x[:i] + x[i + 1:]

    def first(self, x: str, a: int = 1) -> str:
        for _ in range(a):
            x = self.d(0, x)
        return x

    def last(self, x: str, b: int = 1) -> str:
        for _ in range(b):
            x = self.d(len(x) + 1, x)
        return x

    def box_canonical(self, xs) -> tuple:
        """Representative of ``(.., x b, y, ..) ~ (.., x, b y, ..)`` pushing base letters right."""
        xs = list(xs)
        for i in range(len(xs) - 1):
            k = len(xs[i]) - len(xs[i].rstrip(self.base))
            if k:
                xs[i + 1] = xs[i][len(xs[i]) - k:] + xs[i + 1]
                xs[i] = xs[i][:len(xs[i]) - k]
        return tuple(xs)


WORDS = WordSet()


def linearize(W: WordSet, N: int) -> TruncatedCosimplicial:
    """The free Q-module on a discrete cosimplicial set, truncated at ``N``."""
    els = [W.elements(p) for p in range(N + 1)]
    idx = [{w: k for k, w in enumerate(e)} for e in els]
    cof = {(p, i): matrix({(idx[p + 1][W.d(i, w)], k): 1 for k, w in enumerate(els[p])},
                          (len(els[p + 1]), len(els[p])))
           for p in range(N) for i in range(p + 2)}
    cod = {(p, i): matrix({(idx[p - 1][W.s(i, w)], k): 1 for k, w in enumerate(els[p])},
                          (len(els[p - 1]), len(els[p])))
           for p in range(1, N + 1) for i in range(p)}
    return TruncatedCosimplicial(N, tuple(len(e) for e in els), cof, cod, tuple(map(tuple, els)))


def concatenation_product(W: WordSet, N: int) -> dict:
    els = [W.elements(p) for p in range(N + 1)]
    idx = [{w: k for k, w in enumerate(e)} for e in els]
    return {(p, q): matrix({(idx[p + q][x + y], a * len(els[q]) + b): 1
                            for a, x in enumerate(els[p]) for b, y in enumerate(els[q])},
                           (len(els[p + q]), len(els[p]) * len(els[q])))
            for p in range(N + 1) for q in range(N + 1 - p)}


def box_elements(W: WordSet, n: int, r: int) -> set:
    """Canonical elements of degree ``r`` of the n-fold box power."""
    out = set()
    for ps in _compositions(r, n):
        for xs in product(*(W.elements(p) for p in ps)):
            out.add(W.box_canonical(xs))
    return out


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def box_d(j: int, xs, W: WordSet = WORDS) -> tuple:
    """Coface on the n-fold box power: ``d^0`` hits ``x_1``, inner indices the
    letters in order, and ``d^{l+1}`` appends to ``x_n``."""
    xs = list(xs)
    l = sum(map(len, xs))
    if not 0 <= j <= l + 1:
        raise IndexError(f"d^{j} undefined in degree {l}")
    if j == 0:
        xs[0] = W.d(0, xs[0])
    elif j == l + 1:
        xs[-1] = W.d(len(xs[-1]) + 1, xs[-1])
    else:
        c = 1
        for i, x in enumerate(xs):
            if c <= j < c + len(x):
                xs[i] = W.d(j - c + 1, x)
                break
            c += len(x)
    return W.box_canonical(xs)


def box_s(j: int, xs, W: WordSet = WORDS) -> tuple:
    xs = list(xs)
    l = sum(map(len, xs))
    if not 0 <= j <= l - 1:
        raise IndexError(f"s^{j} undefined in degree {l}")
    c = 0
    for i, x in enumerate(xs):
        if c <= j < c + len(x):
            xs[i] = W.s(j - c, x)
            break
        c += len(x)
    return W.box_canonical(xs)


# the monad MK at the discrete level --------------------------------------------------------------

@dataclass(frozen=True)
class DiscreteMKElement:
    tree: tr.PlanarTree
    xs: tuple

    @property
    def degree(self) -> int:
        return sum(map(len, self.xs))


def mk_apply(t: tr.PlanarTree, xs, W: WordSet = WORDS) -> DiscreteMKElement:
    if len(xs) != t.arity:
        raise ValueError("need one factor per leaf")
    return DiscreteMKElement(t, W.box_canonical(xs))


def _graft_all(top, inner, compose):
    out = top
    for i in range(len(inner), 0, -1):
        out = compose(out, i, inner[i - 1])
    return out


def mk_mu(t: tr.PlanarTree, inner, W: WordSet = WORDS) -> DiscreteMKElement:
    """Monad product: graft the inner trees and concatenate the factors."""
    if len(inner) != t.arity:
        raise ValueError("need one inner element per leaf")
    tree = _graft_all(t, [e.tree for e in inner], tr.compose)
    return DiscreteMKElement(tree, W.box_canonical(sum((tuple(e.xs) for e in inner), ())))


# the monad MCK at the discrete level ---------------------------------------------------------------

@dataclass(frozen=True)
class DiscreteMCKElement:
    """``(T; x_1, .., x_n)`` with ``T`` free of marks on leaf vertices."""
    tree: CofacialTree
    xs: tuple

    @property
    def degree(self) -> int:
        return sum(cf.m_counts(self.tree)) + sum(map(len, self.xs))


def _normalize(T: CofacialTree, xs, W: WordSet) -> DiscreteMCKElement:
    xs = list(xs)
    n = T.arity
    if len(xs) != n:
        raise ValueError("need one factor per leaf")
    c = T.counter()
    for i in range(1, n + 1):
        leaf = (i, i)
        a, b = c.pop(("vf", leaf), 0), c.pop(("vl", leaf), 0)
        xs[i - 1] = W.first(W.last(xs[i - 1], b), a)
    return DiscreteMCKElement(cf.make(T.tree, c), tuple(xs))


def mck_apply(T: CofacialTree, xs, W: WordSet = WORDS) -> DiscreteMCKElement:
    """Normal form of ``(T; x_1, .., x_n)``: leaf marks become first/last cofaces."""
    return _normalize(T, xs, W)


def _check_element(e: DiscreteMCKElement):
    if any(k in ("vf", "vl") and loc[0] == loc[1] for (k, loc), _ in e.tree.marks):
        raise ValueError("element is not in normal form")


def mck_d(j: int, e: DiscreteMCKElement, W: WordSet = WORDS) -> DiscreteMCKElement:
    _check_element(e)
    T, xs = e.tree, list(e.xs)
    m = cf.m_counts(T)
    n = T.arity
    l = e.degree
    if not 0 <= j <= l + 1:
        raise IndexError(f"d^{j} undefined in degree {l}")
    if j == 0:
        return _normalize(cf.d(0, 0, T), xs, W)
    if j == l + 1:
        return _normalize(cf.d(n, m[n] + 1, T), xs, W)
    c = 1
    for i in range(n + 1):
        if c <= j < c + m[i]:
            return _normalize(cf.d(i, j - c + 1, T), xs, W)
        c += m[i]
        if i < n:
            p = len(xs[i])
            if c <= j < c + p:
                xs[i] = W.d(j - c + 1, xs[i])
                return _normalize(T, xs, W)
            c += p
    raise AssertionError("unreachable")


def mck_s(j: int, e: DiscreteMCKElement, W: WordSet = WORDS) -> DiscreteMCKElement:
    _check_element(e)
    T, xs = e.tree, list(e.xs)
    m = cf.m_counts(T)
    n = T.arity
    l = e.degree
    if not 0 <= j <= l - 1:
        raise IndexError(f"s^{j} undefined in degree {l}")
    c = 0
    for i in range(n + 1):
        if c <= j < c + m[i]:
            return _normalize(cf.s(i, j - c, T), xs, W)
        c += m[i]
        if i < n:
            p = len(xs[i])
            if c <= j < c + p:
                xs[i] = W.s(j - c, xs[i])
                return _normalize(T, xs, W)
            c += p
    raise AssertionError("unreachable")


def forget_U(e: DiscreteMCKElement, W: WordSet = WORDS) -> DiscreteMKElement:
    """``(U(T), df^{m_0} x_1, .., df^{m_{n-1}} dl^{m_n} x_n)`` in box canonical form."""
    T = e.tree
    m = cf.m_counts(T)
    n = T.arity
    xs = [W.first(x, m[i]) for i, x in enumerate(e.xs)]
    xs[-1] = W.first(W.last(e.xs[-1], m[n]), m[n - 1])
    return mk_apply(cf.forget(T), xs, W)


def mck_mu(u: CofacialTree, inner, W: WordSet = WORDS) -> DiscreteMCKElement:
    """Monad product.  Leaf marks of ``u`` first act on the inner elements."""
    n = u.arity
    if len(inner) != n:
        raise ValueError("need one inner element per leaf")
    inner = list(inner)
    c = u.counter()
    for i in range(1, n + 1):
        a, b = c.pop(("vf", (i, i)), 0), c.pop(("vl", (i, i)), 0)
        e = inner[i - 1]
        for _ in range(b):
            e = mck_d(e.degree + 1, e, W)
        for _ in range(a):
            e = mck_d(0, e, W)
        inner[i - 1] = e
    top = cf.make(u.tree, c)
    tree = _graft_all(top, [e.tree for e in inner], cf.compose)
    return _normalize(tree, sum((tuple(e.xs) for e in inner), ()), W)


def _leaf_free(T: CofacialTree) -> bool:
    if T.arity == 1:
        return T == cf.UNIT
    return not any(k in ("vf", "vl") and loc[0] == loc[1] for (k, loc), _ in T.marks)


def _mark_tuples(n: int, total: int):
    for s in range(total + 1):
        yield from _compositions(s, n + 1)


def mck_elements(n: int, l: int, W: WordSet = WORDS) -> list:
    """All normal-form elements of arity ``n`` and degree ``l``."""
    out = []
    for m in _mark_tuples(n, l):
        trees = [T for T in cf.enumerate_component(m) if _leaf_free(T)]
        if not trees:
            continue
        for ps in _compositions(l - sum(m), n):
            for xs in product(*(W.elements(p) for p in ps)):
                out.extend(DiscreteMCKElement(T, xs) for T in trees)
    return out


def mck_count(n: int, l: int, W: WordSet = WORDS) -> int:
    """Predicted size of degree ``l``: components times degree partitions."""
    k = len(W.alphabet)
    total = 0
    for m in _mark_tuples(n, l):
        trees = sum(1 for T in cf.enumerate_component(m) if _leaf_free(T))
        total += trees * sum(k ** sum(ps) for ps in _compositions(l - sum(m), n))
    return total
