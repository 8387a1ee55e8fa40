"""The operad B(n) as piecewise-linear weakly monotone surjections of [0, 1].

An element of B(n) is a continuous weakly increasing surjection
``f: [0, 1] -> [0, 1]`` together with the arity ``n``.  Breakpoints are
exact rationals, so the operad axioms are equalities, not tolerances.
"""
from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

Q = Fraction


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _canonical(points) -> tuple:
    pts = []
    for x, y in sorted(points):
        if pts and pts[-1][0] == x:
            if pts[-1][1] != y:
                raise ValueError("function is not single valued")
            continue
        pts.append((x, y))
    out = [pts[0]]
    for k in range(1, len(pts) - 1):
        (x0, y0), (x1, y1), (x2, y2) = out[-1], pts[k], pts[k + 1]
        if (y1 - y0) * (x2 - x1) != (y2 - y1) * (x1 - x0):
            out.append(pts[k])
    out.append(pts[-1])
    return tuple(out)


@dataclass(frozen=True)
class MonotoneSurj:
    breakpoints: tuple
    arity: int = 1

    def __init__(self, breakpoints, arity: int = 1):
        pts = _canonical((_q(x), _q(y)) for x, y in breakpoints)
        object.__setattr__(self, "breakpoints", pts)
        object.__setattr__(self, "arity", arity)
        self._check()

    def _check(self):
        pts = self.breakpoints
        if self.arity < 1:
            raise ValueError("arity must be positive")
        if pts[0] != (0, 0) or pts[-1] != (1, 1):
            raise ValueError("breakpoints must start at (0,0) and end at (1,1)")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not x0 < x1:
                raise ValueError("x coordinates must increase")
            if y1 < y0:
                raise ValueError("y coordinates must weakly increase")

    @property
    def xs(self):
        return [x for x, _ in self.breakpoints]

    def __call__(self, t):
        return evaluate(self, t)

    def preimage(self, y) -> tuple:
        """The closed interval ``f^{-1}(y)`` as (lo, hi)."""
        y = _q(y)
        if not 0 <= y <= 1:
            raise ValueError("value out of range")
        pts = self.breakpoints
        lo = hi = None
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if y0 <= y <= y1:
                if y0 == y1:
                    a, b = x0, x1
                else:
                    a = b = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
                lo = a if lo is None else min(lo, a)
                hi = b if hi is None else max(hi, b)
        return lo, hi


def identity(arity: int = 1) -> MonotoneSurj:
    return MonotoneSurj([(0, 0), (1, 1)], arity)


def evaluate(f: MonotoneSurj, t) -> Fraction:
    t = _q(t)
    if not 0 <= t <= 1:
        raise ValueError("t outside [0, 1]")
    pts = f.breakpoints
    k = bisect_right(f.xs, t) - 1
    if k >= len(pts) - 1:
        return pts[-1][1]
    (x0, y0), (x1, y1) = pts[k], pts[k + 1]
    return y0 + (t - x0) * (y1 - y0) / (x1 - x0)


eval = evaluate  # noqa: A001


def compose_value(n: int, m: int, i: int, fy: Fraction, g: MonotoneSurj) -> Fraction:
    """Value of ``f o_i g`` at a point where ``f`` takes the value ``fy``."""
    if fy <= Q(i - 1, n):
        return Q(n, m + n - 1) * fy
    if fy <= Q(i, n):
        return (i - 1 + m * evaluate(g, n * fy - i + 1)) / (m + n - 1)
    return (m - 1 + n * fy) / (m + n - 1)


def compose(f: MonotoneSurj, i: int, g: MonotoneSurj) -> MonotoneSurj:
    n, m = f.arity, g.arity
    if not 1 <= i <= n:
        raise IndexError(f"index {i} out of range 1..{n}")
    cands = set(f.xs)
    levels = {Q(i - 1, n), Q(i, n)} | {(xg + i - 1) / n for xg in g.xs}
    for y in levels:
        cands.update(f.preimage(y))
    pts = [(x, compose_value(n, m, i, evaluate(f, x), g)) for x in sorted(cands)]
    return MonotoneSurj(pts, n + m - 1)


def split_simplex(n: int, ts, f: MonotoneSurj) -> list[list[Fraction]]:
    """Send a point of Delta^k to n blocks according to ``f``.

    A coordinate ``t`` with ``f(t)`` in ``[(i-1)/n, i/n]`` goes to block ``i``
    as ``n f(t) - i + 1``; a value on a block boundary goes to the lower block.
    """
    ts = [_q(t) for t in ts]
    if any(a > b for a, b in zip(ts, ts[1:])):
        raise ValueError("simplex coordinates must weakly increase")
    if any(not 0 <= t <= 1 for t in ts):
        raise ValueError("simplex coordinates must lie in [0, 1]")
    blocks = [[] for _ in range(n)]
    for t in ts:
        y = evaluate(f, t)
        i = max(1, ceil(n * y))
        blocks[i - 1].append(n * y - i + 1)
    return blocks


def random_surj(rng, arity: int = 1, max_breaks: int = 4, denom: int = 12) -> MonotoneSurj:
    """Random element with rational breakpoints; ``rng`` is ``random.Random``."""
    k = rng.randint(0, max_breaks)
    xs = sorted({Q(rng.randint(1, denom - 1), denom) for _ in range(k)})
    ys = sorted(Q(rng.randint(0, denom), denom) for _ in xs)
    return MonotoneSurj([(0, 0), *zip(xs, ys), (1, 1)], arity)


def to_json(f: MonotoneSurj) -> str:
    return json.dumps({"arity": f.arity,
                       "breakpoints": [[str(x), str(y)] for x, y in f.breakpoints]})


def from_json(s: str) -> MonotoneSurj:
    d = json.loads(s)
    return MonotoneSurj([(Q(x), Q(y)) for x, y in d["breakpoints"]], d.get("arity", 1))
