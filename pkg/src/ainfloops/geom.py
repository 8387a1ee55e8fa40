"""Perturb-then-concatenate on the unit circle M in R^2.

An expansion ``phi = c Q`` sends M into R^k (``Q`` has orthonormal columns,
``c >= 1``), so ``phi(M)`` is a round circle of radius ``c`` whose reach is
``c``.  The closest point map of ``phi(M)`` is explicit, which makes every
inequality of the construction checkable without mesh error.

Points of M are unit vectors in R^2.  Cone points of K(n) come from
:mod:`assoc`, cone points of CK from :mod:`cofacial`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import assoc
from . import cofacial as cf
from .assoc import ConePoint
from .surj import MonotoneSurj, evaluate

REACH = 1.0
EPS_MAX = REACH / 16


class OutsideReach(ValueError):
    pass


class OutsideDomain(ValueError):
    pass


class _Collapsed:
    """The basepoint of the Thom space; every operation absorbs it."""
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "COLLAPSED"


COLLAPSED = _Collapsed()


# the circle and expansions ------------------------------------------------------

class CircleModel:
    """The unit circle with its closest-point retraction."""
    dim = 2
    reach = REACH

    @staticmethod
    def point(theta: float) -> np.ndarray:
        return np.array([math.cos(theta), math.sin(theta)])

    @staticmethod
    def angle(y) -> float:
        return math.atan2(y[1], y[0])

    @staticmethod
    def project(x) -> np.ndarray:
        r = float(np.hypot(x[0], x[1]))
        if r == 0.0:
            raise OutsideReach("the center has no closest point")
        return np.asarray(x, float) / r


M = CircleModel()


@dataclass(frozen=True, eq=False)
class Expansion:
    """The linear map ``phi(y) = c Q y`` restricted to M."""
    c: float
    Q: np.ndarray

    def __post_init__(self):
        Q = np.asarray(self.Q, float)
        object.__setattr__(self, "Q", Q)
        if Q.ndim != 2 or Q.shape[1] != 2:
            raise ValueError("frame must be k x 2")
        if self.c < 1:
            raise ValueError("scale must be at least 1")
        if not np.allclose(Q.T @ Q, np.eye(2), atol=1e-10, rtol=0):
            raise ValueError("frame columns are not orthonormal")

    @property
    def k(self) -> int:
        return self.Q.shape[0]

    @property
    def norm(self) -> float:
        return self.c

    def __call__(self, y) -> np.ndarray:
        return self.c * (self.Q @ np.asarray(y, float))

    def zero_padded(self) -> "Expansion":
        """``0 x phi``: a new zero first coordinate."""
        return Expansion(self.c, np.vstack([np.zeros((1, 2)), self.Q]))

    def permuted(self, perm) -> "Expansion":
        return Expansion(self.c, self.Q[list(perm)])

    @staticmethod
    def identity() -> "Expansion":
        return Expansion(1.0, np.eye(2))

    @staticmethod
    def random(rng: np.random.Generator, k: int, cmin: float = 1.0, cmax: float = 1.1) -> "Expansion":
        if k < 2:
            raise ValueError("need k >= 2")
        Q, _ = np.linalg.qr(rng.standard_normal((k, 2)))
        return Expansion(float(rng.uniform(cmin, cmax)), Q)

    def to_dict(self) -> dict:
        return {"c": self.c, "Q": self.Q.ravel().tolist(), "k": self.k}

    @staticmethod
    def from_dict(d) -> "Expansion":
        return Expansion(d["c"], np.array(d["Q"], float).reshape(d["k"], 2))


def product(phis) -> Expansion:
    """``phi_1 x ... x phi_n``; its scale is ``sqrt(sum c_i^2)``."""
    phis = list(phis)
    if len(phis) == 1:
        return phis[0]
    c = math.sqrt(sum(p.c ** 2 for p in phis))
    return _trusted(c, np.vstack([p.c * p.Q for p in phis]) / c)


def _trusted(c, Q) -> Expansion:
    # products of valid frames are valid; skip the orthonormality check
    e = object.__new__(Expansion)
    object.__setattr__(e, "c", c)
    object.__setattr__(e, "Q", Q)
    return e


def pi_phi(phi: Expansion, v) -> np.ndarray:
    """Closest point of M under ``phi``: project to the plane, rescale, normalize."""
    w = phi.Q.T @ np.asarray(v, float)
    r = float(np.hypot(w[0], w[1]))
    if r <= 1e-300:
        raise OutsideReach("vector is orthogonal to the image plane")
    return w / r


def dist(phi: Expansion, v) -> float:
    """Distance from ``v`` to ``phi(M)``, computed from the closest point."""
    v = np.asarray(v, float)
    return float(np.linalg.norm(v - phi(pi_phi(phi, v))))


@dataclass(frozen=True, eq=False)
class TubePoint:
    phi: Expansion
    eps: float
    v: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v, float)
        object.__setattr__(self, "v", v)
        if v.shape != (self.phi.k,):
            raise ValueError("vector length does not match the expansion")
        if not 0 < self.eps < EPS_MAX:
            raise ValueError("need 0 < eps < L/16")

    @property
    def base(self) -> np.ndarray:
        return pi_phi(self.phi, self.v)

    def distance(self) -> float:
        return dist(self.phi, self.v)

    def padded(self, t: float = 0.0) -> "TubePoint":
        """``t x v``: zero-pad the expansion and prepend ``t`` to the vector."""
        return TubePoint(self.phi.zero_padded(), self.eps, np.concatenate([[t], self.v]))

    def permuted(self, perm) -> "TubePoint":
        return TubePoint(self.phi.permuted(perm), self.eps, self.v[list(perm)])

    def to_dict(self) -> dict:
        return {**self.phi.to_dict(), "eps": self.eps, "v": self.v.tolist()}

    @staticmethod
    def from_dict(d) -> "TubePoint":
        return TubePoint(Expansion.from_dict(d), d["eps"], np.array(d["v"], float))


def _unchecked(phi, eps, v) -> TubePoint:
    # composite data: the radius may fall below what TubePoint validates
    tp = object.__new__(TubePoint)
    object.__setattr__(tp, "phi", phi)
    object.__setattr__(tp, "eps", eps)
    object.__setattr__(tp, "v", v)
    return tp


def merge(d, eps: float) -> TubePoint:
    """``(phi_1 x ... x phi_m, eps, (v_1, ..., v_m))``."""
    d = list(d)
    if len(d) == 1:
        return _unchecked(d[0].phi, eps, d[0].v)
    return _unchecked(product(x.phi for x in d), eps, np.concatenate([x.v for x in d]))


def _joint(d):
    phi = product(x.phi for x in d)
    return phi, np.concatenate([x.v for x in d])


# epsilon tilde ----------------------------------------------------------------------

def _pairs(data):
    return [(x.phi, x.eps) if isinstance(x, TubePoint) else x for x in data]


def _base_eps(pairs) -> float:
    A = sum(p.c ** 2 for p, _ in pairs)
    return min(e for _, e in pairs) / 10 ** A


def teps_vertex_min(data) -> float:
    """Minimum over binary trees of the nested base formula.

    The value at a binary tree divides ``eps_i`` by ``10^{A_v}`` for every
    internal vertex ``v`` above leaf ``i``; an interval dynamic program finds
    the smallest.
    """
    pairs = _pairs(data)
    n = len(pairs)
    sq = [p.c ** 2 for p, _ in pairs]
    best = {(a, a): pairs[a][1] for a in range(n)}
    for width in range(2, n + 1):
        for a in range(n - width + 1):
            b = a + width - 1
            m = min(min(best[(a, k)], best[(k + 1, b)]) for k in range(a, b))
            best[(a, b)] = m / 10 ** sum(sq[a:b + 1])
    return best[(0, n - 1)]


def _outer_pairs(u: ConePoint, pairs):
    i, n2 = u.i, u.q.arity
    inner = pairs[i - 1:i - 1 + n2]
    e = teps(u.q, inner)
    return pairs[:i - 1] + [(product(p for p, _ in inner), e)] + pairs[i - 1 + n2:]


def teps(u: ConePoint, data) -> float:
    """The admissible radius on K(n) x (expansions, radii)."""
    pairs = _pairs(data)
    n = len(pairs)
    if u.arity != n:
        raise ValueError("arity mismatch")
    if n == 1:
        return pairs[0][1]
    if n == 2:
        return _base_eps(pairs)
    bd = teps(u.p, _outer_pairs(u, pairs))
    t = u.t
    if t == 1:
        return bd
    return (1 - t) * teps_vertex_min(pairs) + t * bd


def teps_boundary(u: ConePoint, data) -> float:
    """The value at the boundary point ``u`` of the ray through ``u``."""
    if u.arity <= 2:
        return teps(u, data)
    return teps(u.boundary(), data)


# absolute rounding allowance of dist; radii below it are unresolvable in doubles
GATE_ATOL = 8 * np.finfo(float).eps


def _admissible(dv: float, e: float, v) -> bool:
    return dv <= e + GATE_ATOL * max(1.0, float(np.linalg.norm(v)))


def in_domain(u: ConePoint, d) -> bool:
    phi, v = _joint(d)
    return _admissible(dist(phi, v), teps(u, d), v)


def _gate(u, d):
    if not in_domain(u, d):
        raise OutsideDomain("configuration is outside the admissible tube")


# psi and tilde psi -----------------------------------------------------------------------

def _split(u: ConePoint, d):
    i, n2 = u.i, u.q.arity
    inner = list(d[i - 1:i - 1 + n2])
    outer = list(d[:i - 1]) + [merge(inner, teps(u.q, inner))] + list(d[i - 1 + n2:])
    return i, n2, inner, outer


def _comp(u, d, k, y, rec):
    """Boundary value through the chart of ``u``: ``Comp_i`` of the factors."""
    i, n2, inner, outer = _split(u, d)
    if k < i:
        return rec(u.p, outer, k, y)
    if k < i + n2:
        return rec(u.p, outer, i, rec(u.q, inner, k - i + 1, y))
    return rec(u.p, outer, k - n2 + 1, y)


def _psi(u, d, k, y):
    n = len(d)
    if n == 1:
        return y
    phi, v = _joint(d)
    x = d[k - 1]
    straight = v + phi(y) - phi(pi_phi(x.phi, x.v))
    if n == 2 or u.t == 0:
        return pi_phi(phi, straight)
    bd = _comp(u, d, k, y, _psi)
    if u.t == 1:
        return bd
    return pi_phi(phi, (1 - u.t) * straight + u.t * phi(bd))


def psi(u: ConePoint, d, i: int, y, check: bool = True) -> np.ndarray:
    """``psi_i(u; d)(y)``; ``i`` is 1-based."""
    d = list(d)
    if u.arity != len(d):
        raise ValueError("arity mismatch")
    if not 1 <= i <= len(d):
        raise IndexError("psi index out of range")
    if check and len(d) >= 2:
        _gate(u, d)
    return _psi(u, d, i, np.asarray(y, float))


def _tpsi(u, d, k, y, s):
    n = len(d)
    if n == 1:
        return y
    phi, v = _joint(d)
    x = d[k - 1]
    straight = (1 - s) * (v - phi(pi_phi(x.phi, x.v))) + phi(y)
    if n == 2 or u.t == 0:
        return pi_phi(phi, straight)
    bd = _comp(u, d, k, y, lambda a, b, c, e: _tpsi(a, b, c, e, s))
    if u.t == 1:
        return bd
    return pi_phi(phi, (1 - u.t) * straight + u.t * phi(bd))


def tpsi(u: ConePoint, d, i: int, s: float, y, check: bool = True) -> np.ndarray:
    """The homotopy from ``psi_i`` (s = 0) to the identity (s = 1)."""
    d = list(d)
    if not 0 <= s <= 1:
        raise ValueError("s must lie in [0, 1]")
    if u.arity != len(d):
        raise ValueError("arity mismatch")
    if check and len(d) >= 2:
        _gate(u, d)
    return _tpsi(u, d, i, np.asarray(y, float), s)


# z and omega over CK --------------------------------------------------------------------

def _teps_ck(u: cf.CKConePoint, d) -> float:
    if u.arity == 1:
        return d[0].eps
    return teps(cf.ck_forget(u), d)


def _ck_split(u: cf.CKConePoint, d):
    i, n2 = u.i, u.q.arity
    inner = list(d[i - 1:i - 1 + n2])
    outer = list(d[:i - 1]) + [merge(inner, _teps_ck(u.q, inner))] + list(d[i - 1 + n2:])
    cut = sum(cf.m_counts(u.p.top)[:i])
    return i, inner, outer, cut


def _z(u, d) -> list:
    phi, v = _joint(d)
    count = sum(cf.m_counts(u.top))
    if u.is_base:
        return [pi_phi(phi, v)] * count
    zb = _z_boundary(u, d)
    t = u.t
    if t >= 0.5:
        return zb
    return [pi_phi(phi, (1 - 2 * t) * v + 2 * t * phi(z)) for z in zb]


def _z_boundary(u, d) -> list:
    _, inner, outer, cut = _ck_split(u, d)
    x, y = _z(u.p, outer), _z(u.q, inner)
    return x[:cut] + y + x[cut:]


def z(T: cf.CKConePoint, d, check: bool = True) -> list:
    """The points ``z_i^j`` in path order."""
    d = list(d)
    if T.arity != len(d):
        raise ValueError("arity mismatch")
    if check and len(d) >= 2:
        _gate(cf.ck_forget(T), d)
    return _z(T, d)


def _omega_hat(u, d, s) -> list:
    phi, v = _joint(d)
    count = sum(cf.m_counts(u.top))
    if u.is_base:
        return [phi] * count
    ob = _omega_hat_boundary(u, d, s)
    t = u.t
    if t == 1:
        return ob
    if t <= 0.5:
        zs = _z(u, d)

        def make(g, zj):
            return lambda y: ((1 - s) * (v + phi(y) - phi(zj))
                              + s * ((1 - t) * phi(y) + t * g(y)))
    else:
        zs = _z_boundary(u, d)

        def make(g, zj):
            return lambda y: ((1 - s) * ((2 - 2 * t) * (v + phi(y) - phi(zj)) + (2 * t - 1) * g(y))
                              + s * ((1 - t) * phi(y) + t * g(y)))
    return [make(g, zj) for g, zj in zip(ob, zs)]


def _omega_hat_boundary(u, d, s) -> list:
    i, inner, outer, cut = _ck_split(u, d)
    x = _omega_hat(u.p, outer, s)
    ys = _omega_hat(u.q, inner, s)
    if u.p.arity >= 2:
        phi, _ = _joint(d)
        phi_in, _ = _joint(inner)
        up = cf.ck_forget(u.p)

        def make(g):
            return lambda y: phi(_tpsi(up, outer, i, pi_phi(phi_in, g(y)), s))
        ys = [make(g) for g in ys]
    return x[:cut] + ys + x[cut:]


def omega_hat(T: cf.CKConePoint, d, s: float, check: bool = True) -> list:
    """Maps ``M -> R^K`` before the final projection."""
    d = list(d)
    if not 0 <= s <= 1:
        raise ValueError("s must lie in [0, 1]")
    if check and len(d) >= 2:
        _gate(cf.ck_forget(T), d)
    return _omega_hat(T, d, s)


def omega(T: cf.CKConePoint, d, s: float, check: bool = True) -> list:
    """Self-maps ``omega_i^j`` of M in path order."""
    phi, _ = _joint(d)
    return [(lambda g: (lambda y: pi_phi(phi, g(np.asarray(y, float)))))(g)
            for g in omega_hat(T, d, s, check)]


# loops ------------------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LoopSample:
    """A sampled loop: increasing grid on [0, 1] and unwrapped angles."""
    grid: np.ndarray
    angles: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.grid, float)
        a = np.asarray(self.angles, float)
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "angles", a)
        if g.shape != a.shape or g.ndim != 1 or len(g) < 2:
            raise ValueError("grid and angles must be matching 1-d arrays")
        if g[0] != 0 or g[-1] != 1 or np.any(np.diff(g) <= 0):
            raise ValueError("grid must increase strictly from 0 to 1")
        gap = (a[-1] - a[0]) / (2 * math.pi)
        if abs(gap - round(gap)) > 1e-9:
            raise ValueError("loop is not closed")

    def angle(self, t: float) -> float:
        return float(np.interp(float(t), self.grid, self.angles))

    def __call__(self, t) -> np.ndarray:
        return M.point(self.angle(t))

    @staticmethod
    def from_function(c, grid) -> "LoopSample":
        grid = np.asarray(grid, float)
        ang = np.unwrap([M.angle(c(t)) for t in grid])
        return LoopSample(grid, ang)

    def to_csv(self) -> str:
        return "t,angle\n" + "".join(f"{t:.17g},{a:.17g}\n" for t, a in zip(self.grid, self.angles))


@dataclass(frozen=True)
class WindingLoop:
    """``c(t) = theta0 + 2 pi w t + a sin(2 pi t)`` as a point of M."""
    theta0: float
    winding: int = 1
    wobble: float = 0.0

    def __call__(self, t) -> np.ndarray:
        t = float(t)
        return M.point(self.theta0 + 2 * math.pi * self.winding * t
                       + self.wobble * math.sin(2 * math.pi * t))


def _block(n: int, y: Fraction) -> int:
    return max(1, math.ceil(n * y))


def _check_basepoint(tp: TubePoint, c, tol=1e-9):
    if np.linalg.norm(c(0.0) - tp.base) > tol:
        raise ValueError("loop does not start at the projected basepoint")


class ConcatLoop:
    """``t -> psi_i(c_i(n f(t) - i + 1))`` on ``f^{-1}[(i-1)/n, i/n]``."""

    def __init__(self, f: MonotoneSurj, u: ConePoint, d, loops):
        self.f, self.u, self.d, self.loops = f, u, list(d), list(loops)
        self.n = len(self.d)

    def __call__(self, t) -> np.ndarray:
        n = self.n
        y = evaluate(self.f, Fraction(t))
        i = _block(n, y)
        tau = float(n * y - i + 1)
        return _psi(self.u, self.d, i, self.loops[i - 1](tau))

    def block_values(self, t, i: int) -> np.ndarray:
        """The i-th block formula at ``t`` (used for continuity checks)."""
        y = evaluate(self.f, Fraction(t))
        tau = float(self.n * y - i + 1)
        return _psi(self.u, self.d, i, self.loops[i - 1](tau))


def concat_loop(f: MonotoneSurj, u: ConePoint, tube_loops, check: bool = True):
    """Exact (callable) form of the action; returns ``(TubePoint, loop)`` or COLLAPSED.

    ``check=False`` skips the tube gate; the formulas stay defined as long as
    every projection is, which lets the algebraic identities be exercised at
    offsets far above the admissible radius.
    """
    tube_loops = list(tube_loops)
    if any(x is COLLAPSED for x in tube_loops):
        return COLLAPSED
    d = [tp for tp, _ in tube_loops]
    loops = [c for _, c in tube_loops]
    n = len(d)
    if f.arity != n or u.arity != n:
        raise ValueError("arity mismatch")
    for tp, c in tube_loops:
        _check_basepoint(tp, c)
    if n == 1:
        return d[0], ConcatLoop(f, u, d, loops)
    e = teps(u, d)
    phi, v = _joint(d)
    if check and not _admissible(dist(phi, v), e, v):
        return COLLAPSED
    return _unchecked(phi, e, v), ConcatLoop(f, u, d, loops)


def concat_grid(f: MonotoneSurj, loops, n: int) -> np.ndarray:
    """Union of f's breakpoints and the preimages of the input grids."""
    pts = {Fraction(0), Fraction(1)} | set(f.xs)
    for i, c in enumerate(loops, start=1):
        grid = getattr(c, "grid", np.linspace(0, 1, 33))
        for tau in grid:
            lo, hi = f.preimage((Fraction(float(tau)) + i - 1) / n)
            pts.update((lo, hi))
    return np.array(sorted(float(p) for p in pts))


def loop_concat(f: MonotoneSurj, u: ConePoint, tube_loops, check: bool = True):
    """The action on sampled loops: ``(TubePoint, LoopSample)`` or COLLAPSED."""
    res = concat_loop(f, u, tube_loops, check)
    if res is COLLAPSED:
        return COLLAPSED
    tp, c = res
    if isinstance(c, LoopSample):
        return tp, c
    grid = concat_grid(f, [x for _, x in tube_loops], len(tube_loops))
    grid = np.unique(grid)
    return tp, LoopSample.from_function(c, grid)


def boundary_residual(loop: ConcatLoop) -> float:
    """Largest disagreement of neighbouring block formulas on ``f^{-1}(i/n)``."""
    worst = 0.0
    n = loop.n
    for i in range(1, n):
        lo, hi = loop.f.preimage(Fraction(i, n))
        for t in {lo, hi}:
            a = loop.block_values(t, i)
            b = loop.block_values(t, i + 1)
            worst = max(worst, float(np.linalg.norm(a - b)))
    return worst


# the action on the cosimplicial model --------------------------------------------------------

def psi_action(u: ConePoint, elements):
    """``Psi(u; (x_1., v_1), ..)``: apply ``psi_i`` to every point of factor i.

    ``elements`` are pairs ``(points, TubePoint)``; arity one is the identity.
    """
    elements = list(elements)
    if any(e is COLLAPSED for e in elements):
        return COLLAPSED
    d = [tp for _, tp in elements]
    n = len(d)
    if n == 1:
        return elements[0]
    e = teps(u, d)
    phi, v = _joint(d)
    if not _admissible(dist(phi, v), e, v):
        return COLLAPSED
    pts = [_psi(u, d, i, np.asarray(x, float))
           for i, (xs, _) in enumerate(elements, start=1) for x in xs]
    return pts, _unchecked(phi, e, v)


def l_coface(j: int, elem):
    """Cofaces of the cosimplicial model: ``d^0``/``d^{p+1}`` insert the basepoint."""
    if elem is COLLAPSED:
        return COLLAPSED
    xs, tp = elem
    xs = list(xs)
    p = len(xs)
    if not 0 <= j <= p + 1:
        raise IndexError("coface index out of range")
    if j == 0:
        return [tp.base] + xs, tp
    if j == p + 1:
        return xs + [tp.base], tp
    return xs[:j] + [xs[j - 1]] + xs[j:], tp


def l_codegeneracy(j: int, elem):
    if elem is COLLAPSED:
        return COLLAPSED
    xs, tp = elem
    xs = list(xs)
    if not 0 <= j <= len(xs) - 1:
        raise IndexError("codegeneracy index out of range")
    return xs[:j] + xs[j + 1:], tp


# counterexamples ------------------------------------------------------------------------------

@dataclass(frozen=True)
class Gap:
    first: np.ndarray
    second: np.ndarray
    gap: float

    def __iter__(self):
        return iter((self.first, self.second, self.gap))


def cohen_counterexample(phi: Expansion, x, t, mode: str = "unital", eps: float = EPS_MAX) -> Gap:
    """Compare ``x_1`` for ``(phi, x)`` with ``x_1`` for the suspended pair.

    ``x_1^phi`` is the preimage of the orthogonal projection of ``x`` on the
    image plane.  In the unital model the suspension is ``(id x phi, (t, x))``;
    in the non-unital model it is ``(0 x phi, (t, x))``.
    """
    x = np.asarray(x, float)
    t = np.asarray(t, float)
    if dist(phi, x) >= eps:
        raise ValueError("(phi, x) is the basepoint")
    if t.shape != (2,):
        raise ValueError("t must be a vector of R^2")
    x1 = phi.Q.T @ x / phi.c
    if mode == "unital":
        x1s = (t + phi.c * (phi.Q.T @ x)) / (1 + phi.c ** 2)
    elif mode == "zero":
        x1s = x1.copy()
    else:
        raise ValueError("mode is 'unital' or 'zero'")
    return Gap(x1, x1s, float(np.linalg.norm(x1 - x1s)))


def ms_failure_demo(a: TubePoint, b: TubePoint) -> Gap:
    """``d^0`` of the unperturbed product against the product of ``d^0``."""
    phi, v = _joint([a, b])
    lhs = pi_phi(phi, v)
    rhs = a.base
    return Gap(lhs, rhs, float(np.linalg.norm(lhs - rhs)))


def perturbed_gap(a: TubePoint, b: TubePoint) -> float:
    """The same comparison for the perturbed product; zero by the basepoint identity."""
    phi, v = _joint([a, b])
    u = assoc.point(2)
    return float(np.linalg.norm(pi_phi(phi, v) - _psi(u, [a, b], 1, a.base)))


# sampling --------------------------------------------------------------------------------------

def random_config(rng: np.random.Generator, u: ConePoint, ks=None, fill: float | None = None,
                  cmax: float = 1.1, radius: float | None = None):
    """Tube points inside the admissible tube of ``u``.

    All ``v_i`` sit near ``phi_i(y0)`` for a common ``y0``; the joint offset has
    length ``fill * teps`` with ``fill`` drawn from [0.05, 0.99] unless given.
    ``radius`` fixes the offset length instead (the result may leave the tube).
    """
    n = u.arity
    ks = ks or [int(rng.integers(2, 5)) for _ in range(n)]
    phis = [Expansion.random(rng, k, 1.0, cmax) for k in ks]
    epss = [float(rng.uniform(0.01, EPS_MAX * 0.99)) for _ in range(n)]
    e = teps(u, list(zip(phis, epss))) if n >= 2 else epss[0]
    y0 = M.point(float(rng.uniform(0, 2 * math.pi)))
    off = rng.standard_normal(sum(ks))
    if radius is None:
        radius = (fill if fill is not None else float(rng.uniform(0.05, 0.99))) * e
    off *= radius / np.linalg.norm(off)
    out, o = [], 0
    for phi, eps, k in zip(phis, epss, ks):
        out.append(TubePoint(phi, eps, phi(y0) + off[o:o + k]))
        o += k
    return out
