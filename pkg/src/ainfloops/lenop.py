"""The length operad and its level decomposition.

A length tuple ``l = (l_1, ..., l_n)`` has nonnegative entries.  Colour words
over ``{a, b}`` are ordered letterwise by ``b < a``; ``l(c)`` is the largest
length sitting under a ``b``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

A, B = "a", "b"


def _check(l):
    if any(x < 0 for x in l):
        raise ValueError("lengths must be nonnegative")
    return tuple(l)


def unit() -> tuple:
    return (Fraction(0),)


def compose(l, i: int, l2) -> tuple:
    l, l2 = _check(l), _check(l2)
    if not 1 <= i <= len(l):
        raise IndexError(f"index {i} out of range 1..{len(l)}")
    return l[:i - 1] + tuple(l[i - 1] + x for x in l2) + l[i:]


def word_leq(c, c2) -> bool:
    """Letterwise order generated by ``b < a``."""
    if len(c) != len(c2):
        raise ValueError("word length mismatch")
    return all(x == y or (x == B and y == A) for x, y in zip(c, c2))


def l_of(l, c) -> Fraction:
    if len(l) != len(c):
        raise ValueError("length mismatch")
    if any(x not in (A, B) for x in c):
        raise ValueError("colours are 'a' and 'b'")
    vals = [x for x, col in zip(l, c) if col == B]
    return max(vals) if vals else Fraction(0)


def l_zero(l):
    return max(l)


@dataclass(frozen=True)
class Level:
    value: Fraction
    word: tuple       # minimal colour word c with l(c) = value
    interval: tuple   # (previous level, value)


def decomposition(l) -> list[Level]:
    """Distinct levels with their minimal words and the interval schedule.

    The word for level ``L`` marks ``b`` exactly where ``l_i <= L``; it is the
    smallest word, the one with the most ``b``'s, whose value is ``L``.
    The intervals ``[L_{j-1}, L_j]`` tile ``[0, l_0]``.
    """
    l = _check(l)
    levels = sorted(set(l))
    out = []
    prev = Fraction(0)
    for v in levels:
        word = tuple(B if x <= v else A for x in l)
        out.append(Level(v, word, (prev, v)))
        prev = v
    return out


def to_json(l) -> str:
    return json.dumps([str(x) for x in l])


def from_json(s: str) -> tuple:
    return tuple(Fraction(x) for x in json.loads(s))
