"""
Positive factorizations of one-holed torus monodromies, and the decision pipeline.

For a blowup descendant s of (0, 0) the word h(s) is the identity.  Raising
one entry of s by one inserts a single x into h(s), say h(s) = phi psi and
h(s') = phi x psi, so h(s') = h(s) * (psi^-1 x psi).  Walking from s up to a
tuple c with c >= s entrywise therefore writes h(c) as a product of
sum(c_i - s_i) conjugates of x.
"""

from __future__ import annotations

import dataclasses
import hashlib
from typing import Sequence, Union

from . import lattice
from .blowup import (
    BlowupTrace,
    Tuple,
    blocks,
    blowup,
    descendants,
    dominates,
    format_tuple,
    is_admissible,
    word_of_blocks,
    word_of_tuple,
)
from .braid import IDENTITY, X, Y, BraidWord, conjugate, equals, is_conjugate, is_identity
from .certificate import (
    PositivityCertificate,
    certificate,
    check_certificate,
    verify_certificate,
)
from .murasugi import (
    Case3,
    Family3,
    FailsNecessaryCondition as GateFailure,
    MurasugiClass,
    classify,
    describe,
    gate,
    realize,
)

__all__ = [
    "PositivityCertificate",
    "check_certificate",
    "verify_certificate",
    "split_at_increment",
    "synthesize",
    "decide",
    "blowup_conjugator",
    "HYPOTHESIS_NOTE",
]

HYPOTHESIS_NOTE = (
    "Positive results are unconditional. Stein fillability conclusions, and the claim that a "
    "NotPositive word has no positive factorization, rely on Y(T,h) being a Heegaard Floer "
    "L-space; that hypothesis is assumed, not checked."
)


def _split(s: Sequence[int], i: int) -> tuple[BraidWord, BraidWord]:
    n = len(s)
    if not 1 <= i <= n:
        raise IndexError(f"index {i} out of range 1..{n}")
    bl = blocks(s)
    # locate entry i inside the greedy block decomposition
    pos = 0
    for j, (a, b) in enumerate(bl):
        if pos + 1 == i:
            return word_of_blocks(bl[:j]) * X ** a, Y ** -b * _tail(bl[j + 1:])
        if i <= pos + b:
            t = i - pos - 1  # entry i is the t-th filler 2 of this block
            return word_of_blocks(bl[:j]) * X ** a * Y ** -t, Y ** -(b - t) * _tail(bl[j + 1:])
        pos += b
    raise AssertionError("unreachable")


def _tail(bl) -> BraidWord:
    w = IDENTITY
    for a, b in bl:
        w = w * X ** a * Y ** -b
    return w


def split_at_increment(s: Sequence[int], i: int) -> tuple[BraidWord, BraidWord]:
    """(phi, psi) with h(s) = phi psi and h(s + e_i) = phi x psi; i is 1-based.

    Both s and the incremented tuple must be admissible.
    """
    s = tuple(s)
    if not 1 <= i <= len(s):
        raise IndexError(f"index {i} out of range 1..{len(s)}")
    up = s[:i - 1] + (s[i - 1] + 1,) + s[i:]
    if not is_admissible(s) or not is_admissible(up):
        raise ValueError(f"incrementing entry {i} of {s} leaves the admissible tuples")
    return _split(s, i)


def synthesize(c: Sequence[int], s: Sequence[int], trace: BlowupTrace) -> PositivityCertificate:
    """Certificate for h(c) built by raising s to c one unit at a time, left to right."""
    c, s = tuple(c), tuple(s)
    if len(c) != len(s) or any(si > ci for si, ci in zip(s, c)):
        raise ValueError(f"{s} is not dominated by {c}")
    if trace.final != s or not trace.is_valid():
        raise ValueError("trace does not lead from (0, 0) to s")
    if not is_identity(word_of_tuple(s)):
        raise AssertionError(f"h{s} is not the identity")
    cur = list(s)
    factors = []
    for i in range(1, len(c) + 1):
        while cur[i - 1] < c[i - 1]:
            # intermediate tuples of a 2-entry chain start at (0, 0) and are not admissible,
            # but the word identity holds for any integer tuple
            _, psi = _split(cur, i)
            factors.append((psi, "x"))
            cur[i - 1] += 1
    return certificate(
        word_of_tuple(c),
        factors,
        source="blowup domination",
        c=format_tuple(c),
        s=format_tuple(s),
        trace=" -> ".join(format_tuple(t) for t, _ in trace.steps) + (" -> " if trace.steps else "") + format_tuple(s),
    )


def blowup_conjugator(s: Sequence[int], pos: int) -> BraidWord:
    """g with g^-1 h(blowup(s, pos)) g == h(s), checked with the word engine."""
    s = tuple(s)
    big = blowup(s, pos)
    if pos == 0:
        g = Y * ~X * ~Y
    elif pos == len(s):
        g = X
    else:
        g = IDENTITY
    if not equals(conjugate(word_of_tuple(big), g), word_of_tuple(s)):
        raise AssertionError(f"conjugator {g} fails for blowup of {s} at {pos}")
    return g


def one_block_certificate(cls: Family3) -> PositivityCertificate:
    """N = 1: (xy)^3 x^a y^-1 = (xy)^3 y^-1 . (y x y^-1)^a, and (xy)^3 y^-1 = xyxyx."""
    (a,) = cls.a
    factors = [(IDENTITY, g) for g in "xyxyx"] + [(~Y, "x")] * a
    return certificate(realize(cls), factors, source="single block")


# -- decisions -------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class SearchWitness:
    c: Tuple
    descendant_count: int
    digest: str  # sha256 of the sorted descendant list, one tuple per line
    lattice_embedding: bool | None = None  # None when the oracle was not run


@dataclasses.dataclass(frozen=True)
class Positive:
    certificate: PositivityCertificate
    cls: MurasugiClass
    lattice_embedding: bool | None = None


@dataclasses.dataclass(frozen=True)
class NotPositive:
    witness: SearchWitness
    cls: MurasugiClass


@dataclasses.dataclass(frozen=True)
class FailsNecessaryCondition:
    reason: str
    cls: MurasugiClass


@dataclasses.dataclass(frozen=True)
class OutOfScope:
    reason: str
    cls: MurasugiClass | None = None


Decision = Union[Positive, NotPositive, FailsNecessaryCondition, OutOfScope]


def descendant_digest(n: int) -> str:
    text = "".join(format_tuple(t) + "\n" for t in sorted(descendants(n)))
    return hashlib.sha256(text.encode()).hexdigest()


def _oracle(c: Tuple) -> bool | None:
    if len(c) < 3:
        return None
    return lattice.find_embedding(c) is not None


def decide(w: BraidWord, max_n: int | None = None, oracle: bool = False) -> Decision:
    """Decide whether w is a product of right-handed Dehn twists, within the gate's scope."""
    cls = classify(w)
    result = gate(cls)
    if isinstance(result, GateFailure):
        return FailsNecessaryCondition(result.reason, cls)
    rep = realize(cls)
    if not isinstance(result, Case3):
        return Positive(_lift(result.certificate, rep, w), cls)

    c = result.c
    if len(c) == 1:
        return Positive(_lift(one_block_certificate(cls), rep, w), cls)
    if max_n is not None and len(c) > max_n:
        return OutOfScope(f"N = {len(c)} exceeds the enumeration cap {max_n}", cls)
    found = dominates(c)
    check = _oracle(c) if oracle else None
    if found is None:
        witness = SearchWitness(c, len(descendants(len(c))), descendant_digest(len(c)), check)
        return NotPositive(witness, cls)
    s, trace = found
    cert = synthesize(c, s, trace)
    return Positive(_lift(cert, rep, w), cls, check)


def _lift(cert: PositivityCertificate, rep: BraidWord, w: BraidWord) -> PositivityCertificate:
    """Transport a certificate for the representative to the input word itself."""
    g = is_conjugate(rep, w)
    if g is None:
        raise AssertionError(f"{w} is not conjugate to its class representative {rep}")
    out = cert.conjugated(g, representative=str(rep))
    out = dataclasses.replace(out, target=w)
    if not verify_certificate(out):
        raise AssertionError(f"lifted certificate for {w} failed verification")
    return out
