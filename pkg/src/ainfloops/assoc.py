"""Associahedra K(n) = |T(n)| in cone coordinates and barycentric coordinates.

A point of K(n), n >= 3, is written ``t * u`` with ``u`` on the boundary and
``t`` in [0, 1]; ``t = 0`` is the barycenter of the corolla and ``t = 1``
lies on the boundary.  A boundary point is given in the chart of a
codimension-one face ``corolla(n1) o_i corolla(n2)`` as a pair of points of
K(n1) and K(n2).

Barycentric points live in the order complex of T(n): a chain
``T0 < ... < Tk`` with positive weights.  We read such a point as a step
function on [0, 1) taking the value ``Tj`` on the j-th block of cumulative
weight, lowest element first.  The product |P| x |Q| -> |P x Q| merges the
breakpoints of two step functions; this is the chart map of a face.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

from . import trees as tr
from .trees import PlanarTree

TOL = 1e-12


# barycentric points ------------------------------------------------------------

@dataclass(frozen=True)
class BarycentricPoint:
    arity: int
    chain: tuple  # ((element, weight), ...) lowest element first

    def as_dict(self) -> dict:
        return {e: w for e, w in self.chain}

    def support(self) -> list:
        return [e for e, _ in self.chain]

    def close_to(self, other: "BarycentricPoint", tol: float = TOL) -> bool:
        a, b = self.as_dict(), other.as_dict()
        keys = set(a) | set(b)
        return all(abs(float(a.get(k, 0)) - float(b.get(k, 0))) <= tol for k in keys)


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def normalize_chain(chain, tol: float = 0.0) -> tuple:
    """Drop zero weights and merge equal neighbours."""
    out = []
    for e, w in chain:
        if w == 0 or (not _is_exact(w) and abs(w) <= tol):
            continue
        if out and out[-1][0] == e:
            out[-1] = (e, out[-1][1] + w)
        else:
            out.append((e, w))
    return tuple(out)


def merge_chains(a, b, combine, tol: float = 1e-15) -> tuple:
    """Product of two step functions; ``combine`` pairs the values."""
    out = []
    ia = ib = 0
    ra = a[0][1]
    rb = b[0][1]
    while ia < len(a) and ib < len(b):
        step = ra if ra <= rb else rb
        out.append((combine(a[ia][0], b[ib][0]), step))
        ra -= step
        rb -= step
        if ra == 0 or (not _is_exact(ra) and abs(ra) <= tol):
            ia += 1
            if ia < len(a):
                ra = a[ia][1]
        if rb == 0 or (not _is_exact(rb) and abs(rb) <= tol):
            ib += 1
            if ib < len(b):
                rb = b[ib][1]
    return normalize_chain(out, tol)


def project_chain(chain, proj) -> tuple:
    return normalize_chain([(proj(e), w) for e, w in chain])


# cone points ----------------------------------------------------------------

@dataclass(frozen=True)
class ConePoint:
    """A point of K(n).

    For ``arity >= 3`` the fields ``t, i, p, q`` say: the point is ``t * u``
    where ``u = p o_i q`` lies on the face ``corolla(n1) o_i corolla(n2)``.
    For arity 1 and 2 the space is a point and the other fields are unused.
    """
    arity: int
    t: Real = 0
    i: int = 0
    p: "ConePoint | None" = None
    q: "ConePoint | None" = None

    def __post_init__(self):
        if self.arity >= 3:
            if self.p is None or self.q is None:
                raise ValueError("cone point of arity >= 3 needs a boundary chart")
            if self.p.arity + self.q.arity - 1 != self.arity:
                raise ValueError("chart arities do not add up")
            if self.p.arity < 2 or self.q.arity < 2:
                raise ValueError("chart factors must have arity >= 2")
            if not 1 <= self.i <= self.p.arity:
                raise IndexError("chart index out of range")
            if not 0 <= self.t <= 1:
                raise ValueError("cone parameter must lie in [0, 1]")

    @property
    def is_base(self) -> bool:
        return self.arity <= 2

    def face(self) -> PlanarTree:
        """The codimension-one face of the chart."""
        return tr.compose(tr.corolla(self.p.arity), self.i, tr.corolla(self.q.arity))

    def boundary(self) -> "ConePoint":
        return ConePoint(self.arity, 1, self.i, self.p, self.q)

    def scaled(self, t) -> "ConePoint":
        return ConePoint(self.arity, t, self.i, self.p, self.q)


def point(n: int) -> ConePoint:
    """The unique point of K(1) or K(2)."""
    if n not in (1, 2):
        raise ValueError("K(n) is a point only for n = 1, 2")
    return ConePoint(n)


def apex(n: int) -> ConePoint:
    """The barycenter of K(n) (the corolla vertex of the order complex)."""
    if n <= 2:
        return point(n)
    return ConePoint(n, 0, 1, apex(n - 1), point(2))


def cone_compose(p: ConePoint, i: int, q: ConePoint) -> ConePoint:
    if not 1 <= i <= p.arity:
        raise IndexError("composition index out of range")
    if p.arity == 1:
        return q
    if q.arity == 1:
        return p
    return ConePoint(p.arity + q.arity - 1, 1, i, p, q)


def to_barycentric(p: ConePoint) -> BarycentricPoint:
    n = p.arity
    top = tr.corolla(n)
    if n <= 2:
        return BarycentricPoint(n, ((top, 1),))
    i = p.i
    bp = to_barycentric(p.p).chain
    bq = to_barycentric(p.q).chain
    face_chain = merge_chains(bp, bq, lambda a, b: tr.compose(a, i, b))
    t = p.t
    chain = [(e, t * w) for e, w in face_chain] + [(top, 1 - t)]
    return BarycentricPoint(n, normalize_chain(chain))


def _choose_face(t: PlanarTree) -> PlanarTree:
    faces = [f for f in tr.codim1_faces(t.arity) if tr.leq(t, f)]
    return min(faces, key=tr.face_key)


def from_barycentric(b: BarycentricPoint) -> ConePoint:
    """Inverse of ``to_barycentric`` with a fixed chart choice on overlaps."""
    n = b.arity
    if n <= 2:
        return point(n)
    chain = list(b.chain)
    top = tr.corolla(n)
    w_top = chain[-1][1] if chain[-1][0] == top else 0
    rest = chain[:-1] if w_top else chain
    t = 1 - w_top
    if not rest or t == 0 or (not _is_exact(t) and t <= TOL):
        return apex(n)
    rest = [(e, w / t) for e, w in rest]
    face = _choose_face(rest[-1][0])
    (lo, hi), = [v for v in face.intervals if v != face.root]
    n2 = hi - lo + 1
    pc = project_chain(rest, lambda e: tr.split_at(e, lo, n2)[0])
    qc = project_chain(rest, lambda e: tr.split_at(e, lo, n2)[1])
    p = from_barycentric(BarycentricPoint(n - n2 + 1, pc))
    q = from_barycentric(BarycentricPoint(n2, qc))
    return ConePoint(n, t, lo, p, q)


def face_of(p: ConePoint) -> PlanarTree:
    """Carrier face: the lowest tree in the support of the barycentric point."""
    return to_barycentric(p).chain[0][0]


def fvector(n: int) -> list[int]:
    if n < 2:
        raise ValueError("fvector needs n >= 2")
    counts = [0] * (n - 1)
    for t in tr.enumerate_trees(n):
        counts[dim(t)] += 1
    return counts


def dim(t: PlanarTree) -> int:
    return (t.arity - 1) - len(t.intervals)


def vertex_point(t: PlanarTree) -> ConePoint:
    """A cone point for the vertex of K(n) labelled by a binary tree."""
    n = t.arity
    if n <= 2:
        return point(n)
    if not t.is_binary():
        raise ValueError("vertices are binary trees")
    face = _choose_face(t)
    (lo, hi), = [v for v in face.intervals if v != face.root]
    t1, t2 = tr.split_at(t, lo, hi - lo + 1)
    return ConePoint(n, 1, lo, vertex_point(t1), vertex_point(t2))


def vertex_charts(t: PlanarTree) -> list[ConePoint]:
    """The vertex ``t`` presented through every codimension-one face above it."""
    n = t.arity
    if n <= 2:
        return [point(n)]
    out = []
    for face in tr.codim1_faces(n):
        if not tr.leq(t, face):
            continue
        (lo, hi), = [v for v in face.intervals if v != face.root]
        t1, t2 = tr.split_at(t, lo, hi - lo + 1)
        for a in vertex_charts(t1):
            for b in vertex_charts(t2):
                out.append(ConePoint(n, 1, lo, a, b))
    return out


def random_point(n: int, rng, exact: bool = False, boundary: bool = False) -> ConePoint:
    """Random cone point; ``rng`` is a ``random.Random`` or numpy Generator."""
    if n <= 2:
        return point(n)
    if exact:
        t = Fraction(int(rng.integers(0, 9)) if hasattr(rng, "integers") else rng.randint(0, 8), 8)
    else:
        t = float(rng.random())
    if boundary:
        t = Fraction(1) if exact else 1.0
    faces = tr.codim1_faces(n)
    face = faces[int(rng.integers(len(faces))) if hasattr(rng, "integers") else rng.randrange(len(faces))]
    (lo, hi), = [v for v in face.intervals if v != face.root]
    n2 = hi - lo + 1
    return ConePoint(n, t, lo, random_point(n - n2 + 1, rng, exact), random_point(n2, rng, exact))


# export ---------------------------------------------------------------------

def _num(w) -> str | float:
    if isinstance(w, Fraction):
        return f"{w.numerator}/{w.denominator}"
    if isinstance(w, int):
        return str(w)
    return float(w)


def barycentric_to_json(b: BarycentricPoint) -> str:
    return json.dumps({
        "arity": b.arity,
        "chain": [[tr.to_string(e), _num(w)] for e, w in b.chain],
    })


def barycentric_from_json(s: str) -> BarycentricPoint:
    d = json.loads(s)
    chain = []
    for e, w in d["chain"]:
        w = Fraction(w) if isinstance(w, str) else float(w)
        chain.append((tr.from_string(e), w))
    return BarycentricPoint(d["arity"], tuple(chain))


def hasse_dot(n: int) -> str:
    return tr.to_dot(n)
