"""Cofacial trees: planar trees carrying first-coface, last-coface and homotopy marks.

Marks are stored as a multiset of slots ``(kind, location)``:

* ``("vf", v)`` / ``("vl", v)``: a first / last coface mark on vertex ``v``;
* ``("ef", c)`` / ``("el", c)``: the same on the edge from ``c`` to its parent;
* ``("h", i)``: the homotopy mark h_i, which always sits on the (i, i+1)-join.

Vertices are leaf intervals as in :mod:`trees`; an edge is named by its lower
endpoint.  The arity-one elements are the symbols ``df^a dl^b`` and are
stored as marks on the single vertex ``(1, 1)``.

The order is generated by single-unit moves.  ``covers`` applies them upward,
``lower`` applies their inverses, and the two are cross-checked in tests.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from . import trees as tr
from .trees import PlanarTree

KINDS = ("vf", "vl", "ef", "el", "h")


def _first_child(t: PlanarTree, c) -> bool:
    p = t.parent(c)
    return p is not None and t.children(p)[0] == c


def _last_child(t: PlanarTree, c) -> bool:
    p = t.parent(c)
    return p is not None and t.children(p)[-1] == c


@dataclass(frozen=True)
class CofacialTree:
    tree: PlanarTree
    marks: tuple  # sorted ((kind, loc), multiplicity), multiplicity > 0

    def __post_init__(self):
        t = self.tree
        verts = set(t.vertices())
        for (kind, loc), k in self.marks:
            if k <= 0:
                raise ValueError("multiplicities must be positive")
            if kind in ("vf", "vl"):
                if loc not in verts:
                    raise ValueError(f"no vertex {loc}")
            elif kind == "ef":
                if loc not in verts or not _first_child(t, loc):
                    raise ValueError(f"first coface mark not allowed on edge {loc}")
            elif kind == "el":
                if loc not in verts or not _last_child(t, loc):
                    raise ValueError(f"last coface mark not allowed on edge {loc}")
            elif kind == "h":
                if not 1 <= loc <= t.arity - 1:
                    raise ValueError(f"no homotopy mark h_{loc} in arity {t.arity}")
            else:
                raise ValueError(f"unknown mark kind {kind}")

    @property
    def arity(self) -> int:
        return self.tree.arity

    def counter(self) -> Counter:
        return Counter(dict(self.marks))

    def get(self, kind, loc) -> int:
        return dict(self.marks).get((kind, loc), 0)

    def total(self) -> int:
        return sum(k for _, k in self.marks)

    def __str__(self) -> str:
        return to_string(self)


def _key(item):
    (kind, loc), _ = item
    return (KINDS.index(kind), loc if isinstance(loc, tuple) else (loc,))


def make(tree: PlanarTree, marks) -> CofacialTree:
    """Build from a mapping or iterable of ``((kind, loc), k)``; zeros are dropped."""
    items = marks.items() if hasattr(marks, "items") else marks
    c = Counter()
    for slot, k in items:
        c[slot] += k
    return CofacialTree(tree, tuple(sorted(((s, k) for s, k in c.items() if k), key=_key)))


def symbol(a: int, b: int) -> CofacialTree:
    """The arity-one element df^a dl^b."""
    return make(tr.unit(), {("vf", (1, 1)): a, ("vl", (1, 1)): b})


UNIT = symbol(0, 0)
DF = symbol(1, 0)
DL = symbol(0, 1)


def unmarked(t: PlanarTree) -> CofacialTree:
    return CofacialTree(t, ())


def maximum(m) -> CofacialTree:
    """The maximum T(m_0, ..., m_n) of its component."""
    m = tuple(m)
    n = len(m) - 1
    if n < 1 or any(x < 0 for x in m):
        raise ValueError("need m_0, ..., m_n >= 0 with n >= 1")
    if n == 1:
        return symbol(*m)
    marks = {("ef", (1, 1)): m[0], ("el", (n, n)): m[n]}
    marks.update({("h", i): m[i] for i in range(1, n)})
    return make(tr.corolla(n), marks)


def forget(T: CofacialTree) -> PlanarTree:
    return T.tree


# counting ----------------------------------------------------------------------

def _slot_path(T: CofacialTree, i: int) -> list:
    """Slots on the i-th counting path in counting order."""
    t = T.tree
    n = t.arity
    root = t.root
    if i == 0:
        down = list(reversed(t.root_path(1)))
        out = [("vf", root)]
        for c in down[1:]:
            out += [("ef", c), ("vf", c)]
        return out
    if i == n:
        out = []
        for v in t.root_path(n):
            out.append(("vl", v))
            if v != root:
                out.append(("el", v))
        return out
    J = tr.join(t, i, i + 1)
    out = []
    x = (i, i)
    while x != J:
        out.append(("vl", x))
        if _last_child(t, x):
            out.append(("el", x))
        x = t.parent(x)
    out.append(("h", i))
    up = t.root_path(i + 1)
    down = list(reversed(up[:up.index(J)]))
    for c in down:
        if _first_child(t, c):
            out.append(("ef", c))
        out.append(("vf", c))
    return out


def path_word(T: CofacialTree, i: int) -> list:
    """The marks of path ``i`` as a list of slots, one entry per unit."""
    c = T.counter()
    return [s for s in _slot_path(T, i) for _ in range(c.get(s, 0))]


def m_counts(T: CofacialTree) -> tuple:
    """(m_0, ..., m_n) read off slot by slot."""
    n = T.arity
    m = [0] * (n + 1)
    for (kind, loc), k in T.marks:
        if kind in ("vf", "ef"):
            m[loc[0] - 1] += k
        elif kind in ("vl", "el"):
            m[loc[1]] += k
        else:
            m[loc] += k
    return tuple(m)


# operad structure ---------------------------------------------------------------

def compose(T1: CofacialTree, i: int, T2: CofacialTree) -> CofacialTree:
    n, m = T1.arity, T2.arity
    if not 1 <= i <= n:
        raise IndexError(f"index {i} out of range 1..{n}")
    tree = tr.compose(T1.tree, i, T2.tree)
    c = Counter()
    for (kind, loc), k in T1.marks:
        if kind == "h":
            c[(kind, loc if loc < i else loc + m - 1)] += k
        else:
            c[(kind, tr._shift(loc, i, m))] += k
    for (kind, loc), k in T2.marks:
        if kind == "h":
            c[(kind, loc + i - 1)] += k
        else:
            c[(kind, (loc[0] + i - 1, loc[1] + i - 1))] += k
    return make(tree, c)


def merged_counts(m1, i: int, m2) -> tuple:
    """m-tuple of a composite in terms of those of the factors."""
    m1, m2 = tuple(m1), tuple(m2)
    if len(m2) == 2:
        return m1[:i - 1] + (m1[i - 1] + m2[0], m1[i] + m2[1]) + m1[i + 1:]
    return m1[:i - 1] + (m1[i - 1] + m2[0],) + m2[1:-1] + (m1[i] + m2[-1],) + m1[i + 1:]


def _splits(k):
    return range(k + 1)


def factorizations(T: CofacialTree) -> list:
    """All ``(T1, i, T2)`` with ``compose(T1, i, T2) == T`` and neither factor the unit."""
    t = T.tree
    n = t.arity
    c = T.counter()
    out = []
    root = t.root

    # arity-one factor on the outside
    fa, fb = c.get(("vf", root), 0), c.get(("vl", root), 0)
    for a, b in product(_splits(fa), _splits(fb)):
        if (a, b) == (0, 0):
            continue
        rest = Counter(c)
        rest[("vf", root)] -= a
        rest[("vl", root)] -= b
        T2 = make(t, rest)
        if n == 1 and T2 == UNIT:
            continue
        out.append((symbol(a, b), 1, T2))
    if n == 1:
        return out

    # arity-one factor on a leaf
    for i in range(1, n + 1):
        leaf = (i, i)
        fa, fb = c.get(("vf", leaf), 0), c.get(("vl", leaf), 0)
        for a, b in product(_splits(fa), _splits(fb)):
            if (a, b) == (0, 0):
                continue
            rest = Counter(c)
            rest[("vf", leaf)] -= a
            rest[("vl", leaf)] -= b
            out.append((make(t, rest), i, symbol(a, b)))

    # both factors of arity >= 2
    for s in t.internal_edges():
        lo, hi = s
        n2 = hi - lo + 1
        t1, t2 = tr.split_at(t, lo, n2)
        base1, base2 = Counter(), Counter()
        for (kind, loc), k in c.items():
            if not k:
                continue
            if kind == "h":
                if lo <= loc < hi:
                    base2[("h", loc - lo + 1)] += k
                elif loc < lo:
                    base1[("h", loc)] += k
                else:
                    base1[("h", loc - n2 + 1)] += k
                continue
            if loc == s and kind in ("vf", "vl"):
                continue
            a, b = loc
            if lo <= a and b <= hi and loc != s:
                base2[(kind, (a - lo + 1, b - lo + 1))] += k
            elif loc == s:
                base1[(kind, (lo, lo))] += k
            else:
                a2 = a if a <= lo else a - (n2 - 1)
                b2 = b if b < lo else b - (n2 - 1)
                base1[(kind, (a2, b2))] += k
        sf, sl = c.get(("vf", s), 0), c.get(("vl", s), 0)
        for a, b in product(_splits(sf), _splits(sl)):
            m1, m2 = Counter(base1), Counter(base2)
            m1[("vf", (lo, lo))] += a
            m1[("vl", (lo, lo))] += b
            m2[("vf", (1, n2))] += sf - a
            m2[("vl", (1, n2))] += sl - b
            out.append((make(t1, m1), lo, make(t2, m2)))
    return out


def irreducible(T: CofacialTree) -> bool:
    """No factorization into two non-unit elements; the unit itself is excluded."""
    return T != UNIT and not factorizations(T)


# order --------------------------------------------------------------------------

def _moved(T, src, dst, k=1, tree=None) -> CofacialTree:
    c = T.counter()
    c[src] -= k
    c[dst] += k
    return make(tree or T.tree, c)


def covers(T: CofacialTree) -> list:
    """Elements obtained from ``T`` by one upward move, sorted and without repeats."""
    t = T.tree
    if t.arity == 1:
        return []
    out = set()
    c = T.counter()
    for (kind, v), k in T.marks:
        if kind == "vf":
            if _first_child(t, v):
                out.add(_moved(T, (kind, v), ("ef", v)))
            if v[0] != v[1]:
                out.add(_moved(T, (kind, v), ("ef", t.children(v)[0])))
            if v != t.root and not _first_child(t, v):
                out.add(_moved(T, (kind, v), ("h", v[0] - 1)))
        elif kind == "vl":
            if _last_child(t, v):
                out.add(_moved(T, (kind, v), ("el", v)))
            if v[0] != v[1]:
                out.add(_moved(T, (kind, v), ("el", t.children(v)[-1])))
            if v != t.root and not _last_child(t, v):
                out.add(_moved(T, (kind, v), ("h", v[1])))
    for s in t.internal_edges():
        up = _contract(T, c, s)
        if up is not None:
            out.add(up)
    return sorted(out, key=to_string)


def _contract(T: CofacialTree, c: Counter, s):
    """Contract the edge below ``s``, or None when ``s`` carries coface marks.

    Only the marks of the contracted edge are transported; a first-coface mark
    that stops being on a leftmost edge becomes h, and dually.
    """
    if c.get(("vf", s), 0) or c.get(("vl", s), 0):
        return None
    t = T.tree
    kids = t.children(s)
    first, last = kids[0], kids[-1]
    new = Counter(c)
    new[("ef", first)] += new.pop(("ef", s), 0)
    new[("el", last)] += new.pop(("el", s), 0)
    if not _first_child(t, s):
        new[("h", s[0] - 1)] += new.pop(("ef", first), 0)
    if not _last_child(t, s):
        new[("h", s[1])] += new.pop(("el", last), 0)
    return make(PlanarTree(t.arity, t.intervals - {s}), new)


def lower(T: CofacialTree) -> list:
    """Elements ``T'`` with ``T`` among ``covers(T')``."""
    t = T.tree
    if t.arity == 1:
        return []
    out = set()
    for (kind, loc), k in T.marks:
        if kind in ("ef", "el"):
            vk = "vf" if kind == "ef" else "vl"
            out.add(_moved(T, (kind, loc), (vk, loc)))
            out.add(_moved(T, (kind, loc), (vk, t.parent(loc))))
        elif kind == "h":
            J = tr.join(t, loc, loc + 1)
            for ch in t.children(J):
                if ch[0] == loc + 1:
                    out.add(_moved(T, ("h", loc), ("vf", ch)))
                if ch[1] == loc:
                    out.add(_moved(T, ("h", loc), ("vl", ch)))
    c = T.counter()
    for v in t.internal_vertices():
        kids = t.children(v)
        kk = len(kids)
        for a in range(kk):
            for b in range(a + 1, kk):
                if b - a + 1 == kk:
                    continue
                out.update(_expansions(T, c, v, kids, a, b))
    return sorted(out, key=to_string)


def _shares(pool, parts):
    """All ways to write ``pool`` as an ordered sum of ``parts`` naturals."""
    if parts == 1:
        yield (pool,)
        return
    for k in range(pool + 1):
        for rest in _shares(pool - k, parts - 1):
            yield (k,) + rest


def _expansions(T, c, v, kids, a, b):
    """Inverse contractions: group ``kids[a..b]`` of ``v`` under a new vertex."""
    t = T.tree
    s = (kids[a][0], kids[b][1])
    tree2 = PlanarTree(t.arity, t.intervals | {s})
    first, last = kids[a], kids[b]
    # which pool feeds the edge into ``first`` and the new edge
    if a == 0:
        lsrc, ldst = [("ef", first)], [[("ef", first), ("ef", s)]]
    else:
        lsrc, ldst = [("h", s[0] - 1)], [[("h", s[0] - 1), ("ef", first)]]
    if b == len(kids) - 1:
        rsrc, rdst = [("el", last)], [[("el", last), ("el", s)]]
    else:
        rsrc, rdst = [("h", s[1])], [[("h", s[1]), ("el", last)]]
    srcs = lsrc + rsrc
    dsts = ldst + rdst
    choices = [list(_shares(c.get(src, 0), len(dst))) for src, dst in zip(srcs, dsts)]
    for pick in product(*choices):
        new = Counter(c)
        for src, dst, shares in zip(srcs, dsts, pick):
            new[src] -= c.get(src, 0)
            for slot, k in zip(dst, shares):
                new[slot] += k
        yield make(tree2, new)


@lru_cache(maxsize=None)
def up_closure(T: CofacialTree) -> frozenset:
    seen = {T}
    for u in covers(T):
        seen |= up_closure(u)
    return frozenset(seen)


def leq(T: CofacialTree, T2: CofacialTree) -> bool:
    if T.arity != T2.arity:
        raise ValueError("arity mismatch")
    return T2 in up_closure(T)


@lru_cache(maxsize=None)
def codim(T: CofacialTree) -> int:
    """Length of the longest chain from ``T`` up to the maximum of its component."""
    cs = covers(T)
    return 1 + max(codim(u) for u in cs) if cs else 0


@lru_cache(maxsize=None)
def _component(m: tuple) -> tuple:
    top = maximum(m)
    seen = {top}
    stack = [top]
    while stack:
        x = stack.pop()
        for y in lower(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return tuple(sorted(seen, key=to_string))


def enumerate_component(m) -> list:
    """All elements of the component CT(m_0, ..., m_n), canonically ordered."""
    return list(_component(tuple(m)))


def down_set(T: CofacialTree) -> frozenset:
    return frozenset(x for x in _component(m_counts(T)) if leq(x, T))


# operators d_i^j and s_i^j ---------------------------------------------------------

def _bump(T: CofacialTree, slot, k: int) -> CofacialTree:
    c = T.counter()
    c[slot] += k
    return make(T.tree, c)


def d(i: int, j: int, T: CofacialTree) -> CofacialTree:
    n = T.arity
    m = m_counts(T)
    if not 0 <= i <= n:
        raise IndexError("path index out of range")
    lo = 0 if i == 0 else 1
    hi = m[i] + 1 if i == n else m[i]
    if not lo <= j <= hi:
        raise IndexError(f"d_{i}^{j} undefined on a component with m_{i}={m[i]}")
    if i == 0 and j == 0:
        return _bump(T, ("vf", T.tree.root), 1)
    if i == n and j == m[n] + 1:
        return _bump(T, ("vl", T.tree.root), 1)
    return _bump(T, path_word(T, i)[j - 1], 1)


def s(i: int, j: int, T: CofacialTree) -> CofacialTree:
    n = T.arity
    m = m_counts(T)
    if not 0 <= i <= n:
        raise IndexError("path index out of range")
    if not 0 <= j <= m[i] - 1:
        raise IndexError(f"s_{i}^{j} undefined on a component with m_{i}={m[i]}")
    return _bump(T, path_word(T, i)[j], -1)


# decompositions ----------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    codim: int
    presentations: tuple  # (T1, i, T2) in codim 1, (S1, j, S2, k, S3) in codim 2
    case: str | None = None  # "a", "b" or "c" in codim 2


def decompose(T: CofacialTree) -> Decomposition:
    k = codim(T)
    if k == 1:
        pres = [(a, i, b) for a, i, b in factorizations(T) if irreducible(a) and irreducible(b)]
        return Decomposition(1, tuple(pres))
    if k == 2:
        pres = []
        for A, kk, S3 in factorizations(T):
            if not irreducible(S3):
                continue
            for S1, j, S2 in factorizations(A):
                if j <= kk and irreducible(S1) and irreducible(S2):
                    pres.append((S1, j, S2, kk, S3))
        pres = list(dict.fromkeys(pres))
        S1, j, S2, kk, S3 = pres[0] if pres else (None,) * 5
        case = "c"
        if pres and S2 != S3 and S2.arity == S3.arity == 1 and j == kk:
            case = "a"
        elif pres and S1 != S2 and S1.arity == S2.arity == 1:
            case = "b"
        return Decomposition(2, tuple(pres), case)
    raise ValueError(f"decompose needs codimension 1 or 2, got {k}")


def _pres_key(p):
    return tuple(to_string(x) if isinstance(x, CofacialTree) else x for x in p)


def codim2_presentation(T: CofacialTree) -> tuple:
    """The presentation fixed once and for all: the lexicographically smallest."""
    return min(decompose(T).presentations, key=_pres_key)


def codim1_elements(m) -> list:
    return list(_codim1(tuple(m)))


@lru_cache(maxsize=None)
def _codim1(m: tuple) -> tuple:
    return tuple(x for x in _component(m) if codim(x) == 1)


# serialization -------------------------------------------------------------------------

def _iv(v):
    return f"{v[0]}-{v[1]}"


def to_string(T: CofacialTree) -> str:
    """``tree | vertex marks | edge marks``; h_i is listed on its join vertex."""
    t = T.tree
    c = T.counter()
    vparts = []
    for v in t.vertices():
        bits = []
        if c.get(("vf", v)):
            bits.append(f"f{c[('vf', v)]}")
        if c.get(("vl", v)):
            bits.append(f"l{c[('vl', v)]}")
        for i in range(1, t.arity):
            if c.get(("h", i)) and tr.join(t, i, i + 1) == v:
                bits.append(f"h{i}^{c[('h', i)]}")
        if bits:
            vparts.append(_iv(v) + ":" + ",".join(bits))
    eparts = []
    for e in t.edges():
        bits = []
        if c.get(("ef", e)):
            bits.append(f"f{c[('ef', e)]}")
        if c.get(("el", e)):
            bits.append(f"l{c[('el', e)]}")
        if bits:
            eparts.append(_iv(e) + ":" + ",".join(bits))
    return f"{tr.to_string(t)} | {';'.join(vparts)} | {';'.join(eparts)}"


def from_string(s: str) -> CofacialTree:
    ts, vs, es = (x.strip() for x in s.split("|"))
    t = tr.from_string(ts)
    c = Counter()

    def parse(part, vk, lk):
        for entry in filter(None, part.split(";")):
            loc, bits = entry.split(":")
            a, b = map(int, loc.split("-"))
            for bit in bits.split(","):
                if bit[0] == "f":
                    c[(vk, (a, b))] += int(bit[1:])
                elif bit[0] == "l":
                    c[(lk, (a, b))] += int(bit[1:])
                elif bit[0] == "h":
                    idx, k = bit[1:].split("^")
                    c[("h", int(idx))] += int(k)
                else:
                    raise ValueError(f"bad mark {bit!r}")

    parse(vs, "vf", "vl")
    parse(es, "ef", "el")
    return make(t, c)


def component_dot(m) -> str:
    elems = enumerate_component(m)
    names = {x: f"c{k}" for k, x in zip(range(len(elems)), elems)}
    lines = ["digraph CT {", "  rankdir=BT;"]
    for x in elems:
        lines.append(f'  {names[x]} [label="{to_string(x)}"];')
    for x in elems:
        for y in covers(x):
            lines.append(f"  {names[x]} -> {names[y]};")
    lines.append("}")
    return "\n".join(lines)


# cone coordinates on CK ----------------------------------------------------------------

@dataclass(frozen=True)
class CKConePoint:
    """A point of CK(T) for ``top`` irreducible (or an arity-one symbol).

    Mirrors :class:`assoc.ConePoint`: ``t * u`` with ``u`` on the codimension-one
    face ``S1 o_i S2`` given by points ``p`` of CK(S1) and ``q`` of CK(S2).
    Components without codimension-one elements are points (``p is None``).
    """
    top: CofacialTree
    t: object = 0
    i: int = 0
    p: "CKConePoint | None" = None
    q: "CKConePoint | None" = None

    def __post_init__(self):
        if self.p is None:
            return
        if compose(self.p.top, self.i, self.q.top) not in codim1_elements(m_counts(self.top)):
            raise ValueError("chart is not a codimension-one face of the component")
        if not 0 <= self.t <= 1:
            raise ValueError("cone parameter must lie in [0, 1]")

    @property
    def arity(self) -> int:
        return self.top.arity

    @property
    def is_base(self) -> bool:
        return self.p is None


def _is_point(top: CofacialTree) -> bool:
    return top.arity == 1 or not codim1_elements(m_counts(top))


def ck_base(top: CofacialTree) -> CKConePoint:
    if not _is_point(top):
        raise ValueError("component is not a point")
    return CKConePoint(top)


def ck_apex(top: CofacialTree) -> CKConePoint:
    if _is_point(top):
        return CKConePoint(top)
    F = codim1_elements(m_counts(top))[0]
    (S1, i, S2), = decompose(F).presentations
    return CKConePoint(top, 0, i, ck_apex(S1), ck_apex(S2))


def ck_to_barycentric(u: CKConePoint) -> tuple:
    """Chain ``((T0, w0), ...)`` in CT, lowest element first."""
    from .assoc import merge_chains, normalize_chain
    if u.is_base:
        return ((u.top, 1),)
    i = u.i
    face = merge_chains(ck_to_barycentric(u.p), ck_to_barycentric(u.q),
                        lambda a, b: compose(a, i, b))
    return normalize_chain([(e, u.t * w) for e, w in face] + [(u.top, 1 - u.t)])


def _split_into(T: CofacialTree, S1, i, S2):
    m1, m2 = m_counts(S1), m_counts(S2)
    for a, j, b in factorizations(T):
        if j == i and b.arity == S2.arity and m_counts(a) == m1 and m_counts(b) == m2:
            return a, b
    raise ValueError("element does not lie below the chart")


def ck_from_barycentric(chain, top: CofacialTree) -> CKConePoint:
    from .assoc import TOL, normalize_chain
    if _is_point(top):
        return CKConePoint(top)
    chain = list(chain)
    w_top = chain[-1][1] if chain[-1][0] == top else 0
    rest = chain[:-1] if w_top else chain
    t = 1 - w_top
    if not rest or t == 0 or (isinstance(t, float) and t <= TOL):
        return ck_apex(top)
    rest = [(e, w / t) for e, w in rest]
    E = rest[-1][0]
    F = min((f for f in codim1_elements(m_counts(top)) if leq(E, f)), key=to_string)
    (S1, i, S2), = decompose(F).presentations
    parts = [(_split_into(e, S1, i, S2), w) for e, w in rest]
    pc = normalize_chain([(a, w) for (a, _), w in parts])
    qc = normalize_chain([(b, w) for (_, b), w in parts])
    return CKConePoint(top, t, i, ck_from_barycentric(pc, S1), ck_from_barycentric(qc, S2))


def ck_compose(u: CKConePoint, i: int, w: CKConePoint) -> CKConePoint:
    """Operad composition of points, landing in the component of the composite."""
    from .assoc import merge_chains
    chain = merge_chains(ck_to_barycentric(u), ck_to_barycentric(w),
                         lambda a, b: compose(a, i, b))
    top = maximum(merged_counts(m_counts(u.top), i, m_counts(w.top)))
    return ck_from_barycentric(chain, top)


def ck_forget(u: CKConePoint):
    """The image of a point under U: CK -> K."""
    from . import assoc
    n = u.arity
    if n <= 2:
        return assoc.point(n)
    chain = assoc.normalize_chain([(forget(e), w) for e, w in ck_to_barycentric(u)])
    return assoc.from_barycentric(assoc.BarycentricPoint(n, chain))


def ck_d00(u: CKConePoint) -> CKConePoint:
    """d_0^0 on points: precomposition with the first-coface symbol."""
    return ck_compose(CKConePoint(DF), 1, u)


def ck_random_point(top: CofacialTree, rng) -> CKConePoint:
    """Random point of CK(top); ``rng`` is a ``random.Random``."""
    if _is_point(top):
        return CKConePoint(top)
    faces = codim1_elements(m_counts(top))
    F = faces[rng.randrange(len(faces))]
    (S1, i, S2), = decompose(F).presentations
    return CKConePoint(top, rng.random(), i, ck_random_point(S1, rng), ck_random_point(S2, rng))
