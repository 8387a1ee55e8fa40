"""Planar rooted trees as laminar interval families.

A planar n-tree is stored as the set of leaf intervals ``(i, j)`` with
``i < j`` spanned by its internal vertices.  Leaves are the singletons
``(i, i)`` and the root is ``(1, n)``.  Every internal vertex has at least
two children, so the family determines the tree.

The order is the contraction order: ``leq(T, S)`` holds when ``S`` is
obtained from ``T`` by contracting internal edges, i.e. when the interval
set of ``S`` is contained in that of ``T``.  The corolla is the maximum.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

Interval = tuple[int, int]


@dataclass(frozen=True)
class PlanarTree:
    arity: int
    intervals: frozenset[Interval]

    def __post_init__(self):
        n = self.arity
        if n < 1:
            raise ValueError("arity must be positive")
        ivs = self.intervals
        if n == 1:
            if ivs:
                raise ValueError("the 1-tree has no internal intervals")
            return
        if (1, n) not in ivs:
            raise ValueError("root interval missing")
        for a, b in ivs:
            if not 1 <= a < b <= n:
                raise ValueError(f"bad interval {(a, b)}")
        for (a, b), (c, d) in combinations(sorted(ivs), 2):
            nested = (a <= c and d <= b) or (c <= a and b <= d)
            if not nested and not (b < c or d < a):
                raise ValueError(f"intervals {(a, b)} and {(c, d)} cross")
        for v in ivs:
            if len(self.children(v)) < 2:
                raise ValueError(f"vertex {v} has fewer than two children")

    # structure ---------------------------------------------------------
    @property
    def root(self) -> Interval:
        return (1, self.arity)

    def leaves(self) -> list[Interval]:
        return [(i, i) for i in range(1, self.arity + 1)]

    def internal_vertices(self) -> list[Interval]:
        return sorted(self.intervals)

    def vertices(self) -> list[Interval]:
        if self.arity == 1:
            return [(1, 1)]
        return sorted(set(self.intervals) | set(self.leaves()))

    @lru_cache(maxsize=None)
    def children(self, v: Interval) -> tuple[Interval, ...]:
        """Children of ``v`` ordered left to right."""
        a, b = v
        if a == b:
            return ()
        inner = [w for w in self.intervals if a <= w[0] and w[1] <= b and w != v]
        out = []
        k = a
        while k <= b:
            best = (k, k)
            for w in inner:
                if w[0] == k and w[1] > best[1]:
                    best = w
            out.append(best)
            k = best[1] + 1
        return tuple(out)

    @lru_cache(maxsize=None)
    def parent(self, v: Interval) -> Interval | None:
        if v == self.root or self.arity == 1:
            return None
        a, b = v
        cands = [w for w in self.intervals if w[0] <= a and b <= w[1] and w != v]
        return min(cands, key=lambda w: w[1] - w[0])

    def edges(self) -> list[Interval]:
        """Edges, each named by its child (lower) endpoint."""
        return [v for v in self.vertices() if v != self.root]

    def internal_edges(self) -> list[Interval]:
        return [v for v in self.internal_vertices() if v != self.root]

    def root_path(self, leaf: int) -> list[Interval]:
        """Vertices from leaf ``leaf`` up to the root."""
        path = [(leaf, leaf)]
        while True:
            p = self.parent(path[-1])
            if p is None:
                return path
            path.append(p)

    def is_binary(self) -> bool:
        return all(len(self.children(v)) == 2 for v in self.intervals)

    def __str__(self) -> str:
        return to_string(self)


def unit() -> PlanarTree:
    return PlanarTree(1, frozenset())


def corolla(n: int) -> PlanarTree:
    if n == 1:
        return unit()
    return PlanarTree(n, frozenset({(1, n)}))


# serialization -----------------------------------------------------------

def to_string(t: PlanarTree) -> str:
    """Nested brackets, a leaf is ``.``; the left comb of arity 3 is ``((..).)``."""
    def rec(v):
        if v[0] == v[1]:
            return "."
        return "(" + "".join(rec(c) for c in t.children(v)) + ")"
    return rec(t.root)


def from_string(s: str) -> PlanarTree:
    s = s.strip()
    pos = 0
    leaf = 0
    ivs = set()

    def rec():
        nonlocal pos, leaf
        if pos >= len(s):
            raise ValueError("unexpected end of tree string")
        ch = s[pos]
        if ch == ".":
            pos += 1
            leaf += 1
            return (leaf, leaf)
        if ch != "(":
            raise ValueError(f"unexpected character {ch!r}")
        pos += 1
        kids = []
        while pos < len(s) and s[pos] != ")":
            kids.append(rec())
        if pos >= len(s):
            raise ValueError("unbalanced brackets")
        pos += 1
        v = (kids[0][0], kids[-1][1])
        ivs.add(v)
        return v

    rec()
    if pos != len(s):
        raise ValueError("trailing characters in tree string")
    return PlanarTree(leaf, frozenset(ivs))


# operad structure ----------------------------------------------------------

def _shift(iv: Interval, i: int, m: int) -> Interval:
    """Renumber an interval of T1 after grafting an m-tree on leaf i."""
    a, b = iv
    a2 = a if a <= i else a + m - 1
    b2 = b if b < i else b + m - 1
    return (a2, b2)


def compose(t1: PlanarTree, i: int, t2: PlanarTree) -> PlanarTree:
    """Graft ``t2`` onto leaf ``i`` of ``t1`` (no edge contraction)."""
    if not 1 <= i <= t1.arity:
        raise IndexError(f"leaf index {i} out of range 1..{t1.arity}")
    n, m = t1.arity, t2.arity
    ivs = {_shift(v, i, m) for v in t1.intervals}
    ivs |= {(a + i - 1, b + i - 1) for a, b in t2.intervals}
    return PlanarTree(n + m - 1, frozenset(ivs))


def leq(t: PlanarTree, s: PlanarTree) -> bool:
    if t.arity != s.arity:
        raise ValueError("arity mismatch")
    return s.intervals <= t.intervals


def codimension(t: PlanarTree) -> int:
    if t.arity < 2:
        raise ValueError("codimension needs arity >= 2")
    return len(t.intervals) - 1


def join(t: PlanarTree, i: int, j: int) -> Interval:
    """First common vertex of the root paths of leaves ``i < j``."""
    n = t.arity
    if not 1 <= i < j <= n:
        raise IndexError("need 1 <= i < j <= n")
    best = None
    for v in t.intervals:
        if v[0] <= i and j <= v[1] and (best is None or v[1] - v[0] < best[1] - best[0]):
            best = v
    return best


def bunch_set(t: PlanarTree) -> set[Interval]:
    """The (i, j) for which the (i, j)-join is the (i, j)-bunch.

    The (i, j)-join is a bunch exactly when no wider pair has the same join,
    which forces (i, j) to be the full leaf interval of that vertex.
    """
    return set(t.intervals)


@lru_cache(maxsize=None)
def enumerate_trees(n: int) -> tuple[PlanarTree, ...]:
    """All planar n-trees, sorted by bracket string."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return (unit(),)
    out = []
    # each internal vertex: choose an ordered split of its leaf range into >= 2 blocks
    def splits(a, b):
        # compositions of [a, b] into >= 2 consecutive blocks
        cuts = list(range(a, b))
        for r in range(1, len(cuts) + 1):
            for cs in combinations(cuts, r):
                blocks = []
                start = a
                for c in cs:
                    blocks.append((start, c))
                    start = c + 1
                blocks.append((start, b))
                yield blocks

    def build(a, b):
        if a == b:
            yield frozenset()
            return
        for blocks in splits(a, b):
            subs = [list(build(x, y)) for x, y in blocks]
            def rec(k, acc):
                if k == len(subs):
                    yield acc
                    return
                for s in subs[k]:
                    yield from rec(k + 1, acc | s)
            for ivs in rec(0, frozenset()):
                yield ivs | {(a, b)}

    for ivs in build(1, n):
        out.append(PlanarTree(n, frozenset(ivs)))
    out.sort(key=to_string)
    return tuple(out)


def decompose_codim1(t: PlanarTree) -> tuple[PlanarTree, int, PlanarTree]:
    """Write a codimension-one tree as ``corolla(n1) o_i corolla(n2)``."""
    if t.arity < 2 or codimension(t) != 1:
        raise ValueError("tree is not of codimension one")
    (a, b), = [v for v in t.intervals if v != t.root]
    n2 = b - a + 1
    return corolla(t.arity - n2 + 1), a, corolla(n2)


def split_at(t: PlanarTree, i: int, n2: int) -> tuple[PlanarTree, PlanarTree]:
    """Inverse of ``compose(-, i, -)`` on the down-set of the face it spans.

    ``t`` must contain the interval ``(i, i + n2 - 1)`` (or ``n2 == 1``).
    """
    lo, hi = i, i + n2 - 1
    if n2 > 1 and (lo, hi) not in t.intervals:
        raise ValueError("tree does not contain the grafting interval")
    outer = set()
    inner = set()
    for a, b in t.intervals:
        if lo <= a and b <= hi:
            inner.add((a - lo + 1, b - lo + 1))
            continue
        a2 = a if a <= lo else a - (n2 - 1)
        b2 = b if b < lo else b - (n2 - 1)
        outer.add((a2, b2))
    return PlanarTree(t.arity - n2 + 1, frozenset(outer)), PlanarTree(n2, frozenset(inner))


def codim1_faces(n: int) -> list[PlanarTree]:
    return [t for t in enumerate_trees(n) if len(t.intervals) == 2]


def face_key(t: PlanarTree) -> tuple:
    """Fixed total order used whenever a chart must be chosen."""
    (a, b), = [v for v in t.intervals if v != t.root]
    return (a, b)


def to_dot(n: int) -> str:
    """Hasse diagram of T(n) in DOT format."""
    ts = enumerate_trees(n)
    names = {t: f"t{k}" for k, t in zip(range(len(ts)), ts)}
    lines = ["digraph T {", "  rankdir=BT;"]
    for t in ts:
        lines.append(f'  {names[t]} [label="{to_string(t)}"];')
    for t in ts:
        for s in ts:
            if len(s.intervals) == len(t.intervals) - 1 and leq(t, s):
                lines.append(f"  {names[t]} -> {names[s]};")
    lines.append("}")
    return "\n".join(lines)


enumerate = enumerate_trees  # noqa: A001  (public name of the operation)
