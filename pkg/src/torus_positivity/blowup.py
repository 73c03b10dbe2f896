"""
Blowups of cyclic integer tuples and the tuple-to-monodromy map.

A blowup inserts a 1 into a cyclic tuple and increments its two cyclic
neighbours.  Insertion positions are integers ``pos`` in ``0..k`` for a
tuple of length k: ``0`` is the front, ``k`` the back, and ``0 < pos < k``
inserts between entries ``pos`` and ``pos + 1``.  Entry indices are 1-based
throughout, as in the usual notation (s_1, ..., s_N).
"""

from __future__ import annotations

import dataclasses
import functools
import re
from typing import Sequence

from .braid import DELTA2, X, Y, BraidWord

Tuple = tuple[int, ...]
SEED: Tuple = (0, 0)


def is_admissible(z: Sequence[int]) -> bool:
    return len(z) >= 2 and (tuple(z) == SEED or min(z) >= 1)


def blowup(z: Sequence[int], pos: int) -> Tuple:
    z = tuple(z)
    k = len(z)
    if not is_admissible(z):
        raise ValueError(f"{z} is not an admissible tuple")
    if not 0 <= pos <= k:
        raise ValueError(f"insertion position {pos} out of range 0..{k}")
    if pos in (0, k):
        # neighbours of the new entry are the first and last entries
        body = (z[0] + 1,) + z[1:-1] + (z[-1] + 1,)
        return (1,) + body if pos == 0 else body + (1,)
    return z[:pos - 1] + (z[pos - 1] + 1, 1, z[pos] + 1) + z[pos + 1:]


def blowdown(z: Sequence[int], idx: int) -> Tuple | None:
    """Remove the entry ``idx`` (1-based, must equal 1) and decrement its cyclic neighbours.

    Returns None when the result would not be admissible.
    """
    z = tuple(z)
    k = len(z)
    if not 1 <= idx <= k:
        raise ValueError(f"index {idx} out of range 1..{k}")
    if z[idx - 1] != 1:
        raise ValueError(f"entry {idx} of {z} is {z[idx - 1]}, not 1")
    if k < 3:
        return None
    out = list(z)
    out[(idx - 2) % k] -= 1
    out[idx % k] -= 1
    del out[idx - 1]
    return tuple(out) if is_admissible(out) else None


@dataclasses.dataclass(frozen=True)
class BlowupTrace:
    """Blowup steps (tuple before, insertion position) leading from (0, 0) to ``final``."""

    steps: tuple[tuple[Tuple, int], ...]
    final: Tuple

    def replay(self) -> Tuple:
        cur = SEED
        for before, pos in self.steps:
            if before != cur:
                raise ValueError(f"trace step starts at {before}, expected {cur}")
            cur = blowup(cur, pos)
        if cur != self.final:
            raise ValueError(f"trace ends at {cur}, expected {self.final}")
        return cur

    def is_valid(self) -> bool:
        try:
            self.replay()
        except ValueError:
            return False
        return len(self.final) == 2 + len(self.steps)


def blowdown_chain(s: Sequence[int]) -> list[Tuple] | None:
    """A chain s -> ... -> (0, 0) of blowdowns, or None if s is not a descendant."""
    s = tuple(s)
    if s == SEED:
        return [s]
    return _chain(s)


@functools.lru_cache(maxsize=None)
def _chain(s: Tuple) -> list[Tuple] | None:
    if s == SEED:
        return [s]
    for i, v in enumerate(s, 1):
        if v == 1:
            down = blowdown(s, i)
            if down is not None:
                tail = _chain(down)
                if tail is not None:
                    return [s, *tail]
    return None


@functools.lru_cache(maxsize=None)
def _levels(n: int) -> dict[Tuple, BlowupTrace]:
    if n == 2:
        return {SEED: BlowupTrace((), SEED)}
    out: dict[Tuple, BlowupTrace] = {}
    for z, trace in sorted(_levels(n - 1).items()):
        for pos in range(len(z) + 1):
            new = blowup(z, pos)
            if new not in out:
                out[new] = BlowupTrace(trace.steps + ((z, pos),), new)
    return out


def descendants(n: int) -> set[Tuple]:
    """All tuples of length n reachable from (0, 0) by blowups."""
    if n < 2:
        raise ValueError("descendants are defined for n >= 2")
    return set(_levels(n))


def trace_of(s: Sequence[int]) -> BlowupTrace | None:
    s = tuple(s)
    if len(s) < 2:
        return None
    return _levels(len(s)).get(s)


def dominates(c: Sequence[int]) -> tuple[Tuple, BlowupTrace] | None:
    """Some descendant s of (0, 0) with s_i <= c_i for every i, with its trace."""
    c = tuple(c)
    n = len(c)
    if n < 2:
        raise ValueError("tuples have length >= 2")
    if sum(c) < 3 * (n - 2):
        return None
    levels = _levels(n)
    for s in sorted(levels):
        if all(si <= ci for si, ci in zip(s, c)):
            return s, levels[s]
    return None


# -- tuples to words ------------------------------------------------------------

def blocks(s: Sequence[int]) -> list[tuple[int, int]]:
    """Greedy (a_j, b_j) decomposition of s: entries equal to 2 after the first extend b."""
    out: list[list[int]] = []
    for i, e in enumerate(s):
        if i == 0 or e != 2:
            out.append([e - 2, 1])
        else:
            out[-1][1] += 1
    return [tuple(b) for b in out]


def word_of_blocks(bl: Sequence[tuple[int, int]]) -> BraidWord:
    w = DELTA2
    for a, b in bl:
        w = w * X ** a * Y ** -b
    return w


def word_of_tuple(s: Sequence[int]) -> BraidWord:
    """h(s) = (xy)^3 x^{a_1} y^{-b_1} ... x^{a_n} y^{-b_n}."""
    return word_of_blocks(blocks(s))


PHI = ~X * ~Y * ~X


def monodromy_from_framings(c: Sequence[int]) -> BraidWord:
    """x^{c_1} phi x^{c_2} phi ... phi x^{c_N} phi^-1 with phi = x^-1 y^-1 x^-1."""
    if len(c) < 2:
        raise ValueError("need at least two framings")
    w = BraidWord()
    for ci in c[:-1]:
        w = w * X ** ci * PHI
    return w * X ** c[-1] * ~PHI


# -- text format ---------------------------------------------------------------

_TUPLE = re.compile(r"^\s*\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)\s*$")


def looks_like_tuple(text: str) -> bool:
    return _TUPLE.match(text) is not None


def parse_tuple(text: str) -> Tuple:
    m = _TUPLE.match(text)
    if m is None:
        raise ValueError(f"not a tuple: {text!r}")
    return tuple(int(v) for v in m.group(1).split(","))


def format_tuple(t: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in t) + ")"
