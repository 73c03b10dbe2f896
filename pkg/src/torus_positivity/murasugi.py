"""
Murasugi's conjugacy families of 3-braids and the fillability gate.

Classification works in the quotient of B3 by its center, which is the free
product Z/2 * Z/3 generated by a = xyx (order 2) and b = xy (order 3).
Modulo the center

    x = b^-1 a,   x^-1 = a b,   y = a b^-1,   y^-1 = b a,

so a cyclically reduced word a b^{e_1} a b^{e_2} ... determines the family:
length <= 1 words are the torsion classes (family 1 and the identity), and
longer words read e_i = -1 as x and e_i = +1 as y^-1.  The central power d
is then recovered from the exponent sum, since exp(Delta^2) = 6.
"""

from __future__ import annotations

import dataclasses
from typing import Union

from .braid import DELTA2, IDENTITY, X, Y, BraidWord, exp_sum
from .certificate import PositivityCertificate, certificate, verify_certificate


class GateViolation(ValueError):
    """The input cannot be the monodromy of a Stein fillable L-space open book."""


@dataclasses.dataclass(frozen=True)
class Family1:
    """(xy)^{3d} x^{-m} y^{-1} with m in {1, 2, 3}."""

    d: int
    m: int


@dataclasses.dataclass(frozen=True)
class Family2:
    """(xy)^{3d} y^m."""

    d: int
    m: int


@dataclasses.dataclass(frozen=True)
class Family3:
    """(xy)^{3d} x^{a_1} y^{-b_1} ... x^{a_n} y^{-b_n} with all a_i, b_i >= 1."""

    d: int
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))

    @property
    def blocks(self) -> list[tuple[int, int]]:
        return list(zip(self.a, self.b))

    def canonical(self) -> "Family3":
        """The same conjugacy class with the lexicographically least block rotation."""
        blocks = self.blocks
        best = min(blocks[i:] + blocks[:i] for i in range(len(blocks)))
        return Family3(self.d, tuple(p for p, _ in best), tuple(q for _, q in best))

    def c_tuple(self) -> tuple[int, ...]:
        """(a_1+2, 2 x (b_1-1), ..., a_n+2, 2 x (b_n-1))."""
        out: list[int] = []
        for p, q in self.blocks:
            out.append(p + 2)
            out.extend([2] * (q - 1))
        return tuple(out)


MurasugiClass = Union[Family1, Family2, Family3]


def _validate(c: MurasugiClass) -> None:
    if isinstance(c, Family1) and c.m not in (1, 2, 3):
        raise ValueError(f"family 1 needs m in {{1,2,3}}, got {c.m}")
    if isinstance(c, Family3):
        if not c.a or len(c.a) != len(c.b):
            raise ValueError("family 3 needs equal-length, non-empty a and b")
        if min(c.a + c.b) < 1:
            raise ValueError("family 3 parameters must be positive")


def realize(c: MurasugiClass) -> BraidWord:
    """The literal representative word of a class."""
    _validate(c)
    head = DELTA2 ** c.d
    if isinstance(c, Family1):
        return head * X ** -c.m * ~Y
    if isinstance(c, Family2):
        return head * Y ** c.m
    w = head
    for p, q in c.blocks:
        w = w * X ** p * Y ** -q
    return w


# -- classification --------------------------------------------------------------

# syllables: ("a", 1) or ("b", e) with e in {1, 2}
_IMAGE = {
    ("x", 1): (("b", 2), ("a", 1)),
    ("x", -1): (("a", 1), ("b", 1)),
    ("y", 1): (("a", 1), ("b", 2)),
    ("y", -1): (("b", 1), ("a", 1)),
}
_ORDER = {"a": 2, "b": 3}


def _push(stack: list[list], kind: str, e: int) -> None:
    if stack and stack[-1][0] == kind:
        stack[-1][1] = (stack[-1][1] + e) % _ORDER[kind]
        if stack[-1][1] == 0:
            stack.pop()
    else:
        stack.append([kind, e % _ORDER[kind]])


def modular_image(w: BraidWord) -> list[tuple[str, int]]:
    """Cyclically reduced image of w in Z/2 * Z/3, rotated to start with ``a`` when possible."""
    stack: list[list] = []
    for g, s in w.flat():
        for kind, e in _IMAGE[(g, s)]:
            _push(stack, kind, e)
    while len(stack) >= 2 and stack[0][0] == stack[-1][0]:
        kind, e = stack.pop()
        stack[0][1] = (stack[0][1] + e) % _ORDER[kind]
        if stack[0][1] == 0:
            stack.pop(0)
    if len(stack) >= 2 and stack[0][0] == "b":
        stack = stack[1:] + stack[:1]
    return [tuple(s) for s in stack]


_TORSION_M = {("a", 1): 2, ("b", 1): 3, ("b", 2): 1}


def _shape(w: BraidWord) -> MurasugiClass:
    """The class of w with d = 0, i.e. up to central powers."""
    image = modular_image(w)
    if not image:
        return Family2(0, 0)
    if len(image) == 1:
        return Family1(0, _TORSION_M[image[0]])
    # 'x' for b^-1 (e=2), 'Y' for b (e=1)
    letters = ["x" if e == 2 else "Y" for kind, e in image if kind == "b"]
    if all(ch == "x" for ch in letters):
        return Family2(0, len(letters))
    if all(ch == "Y" for ch in letters):
        return Family2(0, -len(letters))
    start = next(i for i in range(len(letters)) if letters[i] == "x" and letters[i - 1] == "Y")
    letters = letters[start:] + letters[:start]
    blocks: list[list[int]] = []
    for prev, ch in zip(["Y"] + letters, letters):
        if ch == "x" and prev == "Y":
            blocks.append([0, 0])
        blocks[-1][0 if ch == "x" else 1] += 1
    return Family3(0, tuple(p for p, _ in blocks), tuple(q for _, q in blocks)).canonical()


def classify(w: BraidWord) -> MurasugiClass:
    """The family, with canonical parameters, of the conjugacy class of w.

    The families are disjoint once parameters are canonical, so the
    precedence family 1 > family 2 > family 3 never has to break a tie.
    """
    shape = _shape(w)
    gap = exp_sum(w) - exp_sum(realize(shape))
    if gap % 6:
        raise AssertionError(f"exponent sums disagree modulo 6 for {w}")
    return dataclasses.replace(shape, d=gap // 6)


# -- the gate ----------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class PositiveCase1:
    cls: Family1
    certificate: PositivityCertificate


@dataclasses.dataclass(frozen=True)
class PositiveCase2:
    cls: Family2
    certificate: PositivityCertificate


@dataclasses.dataclass(frozen=True)
class Case3:
    cls: Family3
    c: tuple[int, ...]


@dataclasses.dataclass(frozen=True)
class FailsNecessaryCondition:
    cls: MurasugiClass
    reason: str


GateResult = Union[PositiveCase1, PositiveCase2, Case3, FailsNecessaryCondition]


def passes_gate(c: MurasugiClass) -> bool:
    if isinstance(c, Family1):
        return c.d in (1, 2) and c.m in (1, 2, 3)
    if isinstance(c, Family2):
        return c.d == 1 and c.m >= -4
    return c.d == 1 and sum(c.a) + 4 >= sum(c.b)


def gate(c: MurasugiClass) -> GateResult:
    """Apply the necessary condition for a Stein fillable L-space open book.

    A failing result means such an h cannot occur under those hypotheses; it
    does not by itself say that h is non-positive.
    """
    if not passes_gate(c):
        return FailsNecessaryCondition(c, _failure_reason(c))
    if isinstance(c, Family1):
        return PositiveCase1(c, case_factorization(c))
    if isinstance(c, Family2):
        return PositiveCase2(c, case_factorization(c))
    return Case3(c, c.c_tuple())


def _failure_reason(c: MurasugiClass) -> str:
    if isinstance(c, Family1):
        return f"family 1 requires d in {{1,2}}, got d={c.d}"
    if isinstance(c, Family2):
        if c.d != 1:
            return f"family 2 requires d=1, got d={c.d}"
        return f"family 2 requires m >= -4, got m={c.m}"
    if c.d != 1:
        return f"family 3 requires d=1, got d={c.d}"
    return f"family 3 requires sum(a)+4 >= sum(b), got {sum(c.a)}+4 < {sum(c.b)}"


@dataclasses.dataclass(frozen=True)
class FillingInvariants:
    c1: int
    b2plus: int
    b2minus: int
    euler: int


def filling_invariants(w: BraidWord) -> FillingInvariants:
    """Invariants any Stein filling of an L-space open book with monodromy w must have."""
    e = exp_sum(w)
    if e < 2:
        raise GateViolation(f"exp(h) = {e} < 2, so b2- = exp(h) - 2 would be negative")
    return FillingInvariants(c1=0, b2plus=0, b2minus=e - 2, euler=e - 1)


_INV_Y = ~Y
_CASE1 = [(~Y, "x"), (~X * ~Y, "y")]   # (xy)^3 x^-3 y^-1 = yxy^-1 . (yx) y (yx)^-1
_CASE2 = [(IDENTITY, "x"), (Y ** -2, "x")]  # (xy)^3 y^-4 = x . y^2 x y^-2


def case_factorization(c: MurasugiClass) -> PositivityCertificate:
    """Explicit positive factorization of the representative of a gate case 1 or 2 class."""
    if isinstance(c, Family3) or not passes_gate(c):
        raise GateViolation(f"{c} is not a positive gate case")
    free = [(IDENTITY, "x"), (IDENTITY, "y")] * 3 * (c.d - 1)
    if isinstance(c, Family1):
        # (xy)^{3d} x^-m y^-1 = (xy)^{3(d-1)} x^{3-m} . (xy)^3 x^-3 y^-1, using centrality
        factors = free + [(IDENTITY, "x")] * (3 - c.m) + _CASE1
        case = 1
    else:
        factors = _CASE2 + [(IDENTITY, "y")] * (c.m + 4)
        case = 2
    cert = certificate(realize(c), factors, source=f"gate case {case}", cls=describe(c))
    if not verify_certificate(cert):
        raise AssertionError(f"case factorization for {c} failed verification")
    return cert


def describe(c: MurasugiClass) -> str:
    if isinstance(c, Family3):
        return f"Family3(d={c.d}, a={c.a}, b={c.b})"
    return f"{type(c).__name__}(d={c.d}, m={c.m})"
