"""
Exact arithmetic in the mapping class group of the one-holed torus.

The group is presented as <x, y | xyx = yxy>, which is the 3-strand braid
group B3 with x = sigma_1 and y = sigma_2.

Composition convention: a word is read left to right, and the product
``a * b`` means "a followed by b".  Every operation in this package uses
that single convention:

    multiply(a, b)     = a b
    conjugate(a, g)    = g^-1 a g
    is_conjugate(a, b) = g with g^-1 a g == b

The homological representation acts on row vectors from the right, so
``matrix_rep(a * b) == matrix_rep(a) @ matrix_rep(b)``.

The word problem is solved with the left Garside normal form
Delta^p A_1 ... A_k, where Delta = xyx and the A_i are the four proper
permutation braids x, y, xy, yx.  Conjugacy is decided by computing super
summit sets (cycling, decycling and closure under simple conjugators).
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import re
from collections import deque
from typing import Iterable, Sequence

GENERATORS = ("x", "y")

Letter = tuple[str, int]


class WordSyntaxError(ValueError):
    """Raised when a word expression does not match the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for gen, e in letters:
        if gen not in GENERATORS:
            raise ValueError(f"unknown generator {gen!r}")
        if e == 0:
            continue
        if out and out[-1][0] == gen:
            total = out[-1][1] + e
            out.pop()
            if total:
                out.append((gen, total))
        else:
            out.append((gen, e))
    return tuple(out)


@dataclasses.dataclass(frozen=True)
class BraidWord:
    """An immutable word in x, y and their inverses, kept in run-length form.

    Adjacent letters always use different generators; ``y y^-1`` style
    cancellations are performed on construction, so two words with the same
    letters are the same free-group element.
    """

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def gen(cls, name: str, power: int = 1) -> "BraidWord":
        return cls(((name, power),))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.letters + other.letters)

    def __invert__(self) -> "BraidWord":
        return BraidWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "BraidWord":
        if n < 0:
            return (~self) ** (-n)
        return BraidWord(self.letters * n)

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __str__(self) -> str:
        return render_word(self)

    @property
    def length(self) -> int:
        """Number of generator occurrences, counting multiplicity."""
        return sum(abs(e) for _, e in self.letters)

    def flat(self) -> list[tuple[str, int]]:
        """The word as a list of single letters with exponent +1 or -1."""
        out = []
        for g, e in self.letters:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def is_positive(self) -> bool:
        return all(e > 0 for _, e in self.letters)


IDENTITY = BraidWord()
X = BraidWord.gen("x")
Y = BraidWord.gen("y")
DELTA = X * Y * X
# Delta^2 = (xy)^3 generates the center.
DELTA2 = (X * Y) ** 3


# -- parsing and rendering ---------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<gen>[xyXY])|(?P<open>\()|(?P<close>\))|(?P<pow>\^\s*(?P<exp>[+-]?\d+))|(?P<bad>\S))")


def parse_word(text: str) -> BraidWord:
    """Parse a word expression such as ``"(x y)^3 x^-3 Y"``.

    Grammar: letters ``x``, ``y`` (``X``, ``Y`` are their inverses), each
    optionally followed by ``^<signed int>``; parenthesised subwords may carry
    an exponent too.  Whitespace separates tokens and may be omitted.
    """
    tokens: list[tuple[str, str | int, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break  # only trailing whitespace remains
        start = m.start(m.lastgroup) if m.lastgroup else pos
        if m.group("gen"):
            tokens.append(("gen", m.group("gen"), start))
        elif m.group("open"):
            tokens.append(("open", "(", start))
        elif m.group("close"):
            tokens.append(("close", ")", start))
        elif m.group("pow"):
            tokens.append(("pow", int(m.group("exp")), m.start("pow")))
        else:
            raise WordSyntaxError(f"unexpected character {m.group('bad')!r}", m.start("bad"))
        pos = m.end()

    stack: list[list[Letter]] = [[]]
    opens: list[int] = []
    i = 0
    while i < len(tokens):
        kind, val, where = tokens[i]
        if kind == "pow":
            raise WordSyntaxError("exponent without a base", where)
        if kind == "open":
            stack.append([])
            opens.append(where)
            i += 1
            continue
        if kind == "close":
            if not opens:
                raise WordSyntaxError("unmatched ')'", where)
            opens.pop()
            inner = stack.pop()
            base = BraidWord(tuple(inner))
            if not inner:
                raise WordSyntaxError("empty parentheses", where)
        else:
            base = BraidWord.gen(val.lower(), -1 if val.isupper() else 1)
        power = 1
        if i + 1 < len(tokens) and tokens[i + 1][0] == "pow":
            power = tokens[i + 1][1]
            if power == 0:
                raise WordSyntaxError("zero exponent", tokens[i + 1][2])
            i += 1
        stack[-1].extend((base ** power).letters)
        i += 1
    if opens:
        raise WordSyntaxError("unclosed '('", opens[-1])
    return BraidWord(tuple(stack[0]))


def render_word(w: BraidWord) -> str:
    """Inverse of :func:`parse_word`; the identity renders as ``""``."""
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in w.letters)


# -- group operations ----------------------------------------------------------

def multiply(a: BraidWord, b: BraidWord) -> BraidWord:
    return a * b


def inverse(a: BraidWord) -> BraidWord:
    return ~a


def conjugate(a: BraidWord, g: BraidWord) -> BraidWord:
    """Return g^-1 a g."""
    return ~g * a * g


def exp_sum(w: BraidWord) -> int:
    """The exponent-sum homomorphism to the integers."""
    return sum(e for _, e in w.letters)


# -- homological representation -----------------------------------------------

@dataclasses.dataclass(frozen=True)
class IntegerMatrix2:
    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, o: "IntegerMatrix2") -> "IntegerMatrix2":
        return IntegerMatrix2(
            self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d,
        )

    def __pow__(self, n: int) -> "IntegerMatrix2":
        base = self if n >= 0 else self.inverse()
        out = IDENTITY_MATRIX
        for _ in range(abs(n)):
            out = out @ base
        return out

    def inverse(self) -> "IntegerMatrix2":
        assert self.det == 1
        return IntegerMatrix2(self.d, -self.b, -self.c, self.a)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))


IDENTITY_MATRIX = IntegerMatrix2(1, 0, 0, 1)
_GEN_MATRIX = {"x": IntegerMatrix2(1, 1, 0, 1), "y": IntegerMatrix2(1, 0, -1, 1)}


def matrix_rep(w: BraidWord) -> IntegerMatrix2:
    """Action on H_1(T) in an oriented basis; x -> [[1,1],[0,1]], y -> [[1,0],[-1,1]]."""
    out = IDENTITY_MATRIX
    for g, e in w.letters:
        out = out @ (_GEN_MATRIX[g] ** e)
    return out


# -- permutation braids on three strands -----------------------------------------

# A simple element is named by its unique reduced positive word.
E, SX, SY, SXY, SYX, SD = "", "x", "y", "xy", "yx", "xyx"
SIMPLES = (E, SX, SY, SXY, SYX, SD)


def _perm(word: str) -> tuple[int, ...]:
    p = [0, 1, 2]
    for ch in word:
        i = 0 if ch == "x" else 1
        p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


def _inversions(p: Sequence[int]) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j])


def _is_reduced(word: str) -> bool:
    return _inversions(_perm(word)) == len(word)


_BY_PERM = {_perm(s): s for s in SIMPLES}


def _as_simple(word: str) -> str:
    assert _is_reduced(word), word
    return _BY_PERM[_perm(word)]


def _tau(s: str) -> str:
    """Conjugation by Delta: Delta s Delta^-1, which swaps x and y in B3."""
    return s.translate(str.maketrans("xy", "yx"))


# _SPLITS[B] lists (C, D) with B = C D, both simple.
_SPLITS: dict[str, list[tuple[str, str]]] = {
    b: [(c, d) for c in SIMPLES for d in SIMPLES if _is_reduced(c + d) and _as_simple(c + d) == b]
    for b in SIMPLES
}


@functools.lru_cache(maxsize=None)
def _renorm(a: str, b: str) -> tuple[str, str]:
    """Make the pair (a, b) left-weighted by moving the largest allowed prefix of b into a."""
    best = (a, b)
    best_len = -1
    for c, d in _SPLITS[b]:
        if _is_reduced(a + c) and len(c) > best_len:
            best, best_len = (_as_simple(a + c), d), len(c)
    return best


# x^-1 = Delta^-1 (xy) and y^-1 = Delta^-1 (yx)
_INV_SIMPLE = {"x": SXY, "y": SYX}
# right complement: s * _RCOMP[s] == Delta
_RCOMP = {s: next(d for d in SIMPLES if _is_reduced(s + d) and _as_simple(s + d) == SD) for s in SIMPLES}


@dataclasses.dataclass(frozen=True)
class GarsideForm:
    """Left normal form Delta^infimum * factors[0] * ... * factors[-1]."""

    infimum: int
    factors: tuple[str, ...]

    @property
    def supremum(self) -> int:
        return self.infimum + len(self.factors)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def to_word(self) -> BraidWord:
        letters = list((DELTA ** self.infimum).letters)
        for f in self.factors:
            letters.extend((ch, 1) for ch in f)
        return BraidWord(tuple(letters))


def _append(inf: int, factors: list[str], s: str) -> int:
    """Right-multiply the normal form (inf, factors) by the simple s in place; return new inf."""
    if s == E:
        return inf
    if s == SD:
        factors[:] = [_tau(f) for f in factors]
        return inf + 1
    factors.append(s)
    changed = True
    while changed:
        changed = False
        for i in range(len(factors) - 2, -1, -1):
            pair = _renorm(factors[i], factors[i + 1])
            if pair != (factors[i], factors[i + 1]):
                factors[i], factors[i + 1] = pair
                changed = True
    while factors and factors[-1] == E:
        factors.pop()
    while factors and factors[0] == SD:
        factors.pop(0)
        inf += 1
    return inf


def _from_simples(inf: int, simples: Iterable[str]) -> GarsideForm:
    factors: list[str] = []
    for s in simples:
        inf = _append(inf, factors, s)
    return GarsideForm(inf, tuple(factors))


def _mul_generator(inf: int, factors: list[str], g: str, sign: int) -> int:
    if sign > 0:
        return _append(inf, factors, g)
    # A Delta^-1 pushed left past A_1..A_k twists each factor by tau.
    factors[:] = [_tau(f) for f in factors]
    return _append(inf - 1, factors, _INV_SIMPLE[g])


def normal_form(w: BraidWord) -> GarsideForm:
    inf = 0
    factors: list[str] = []
    for g, s in w.flat():
        inf = _mul_generator(inf, factors, g, s)
    return GarsideForm(inf, tuple(factors))


def equals(a: BraidWord, b: BraidWord) -> bool:
    """Decide a == b in the group."""
    if exp_sum(a) != exp_sum(b):
        return False
    return normal_form(a) == normal_form(b)


def is_identity(w: BraidWord) -> bool:
    return exp_sum(w) == 0 and normal_form(w) == GarsideForm(0, ())


# -- conjugacy ---------------------------------------------------------------

def _tau_pow(s: str, p: int) -> str:
    return _tau(s) if p % 2 else s


def _conj_by_simple(nf: GarsideForm, s: str) -> GarsideForm:
    """Normal form of s^-1 * beta * s."""
    p = nf.infimum
    # s^-1 = Delta^-1 tau(rcomp(s)); moving Delta^p left twists by tau^p.
    head = _tau_pow(_RCOMP[s], p + 1)
    return _from_simples(p - 1, [head, *nf.factors, s])


def _cycle(nf: GarsideForm) -> tuple[GarsideForm, BraidWord]:
    g = _tau_pow(nf.factors[0], nf.infimum)
    return _from_simples(nf.infimum, [*nf.factors[1:], g]), _simple_word(g)


def _decycle(nf: GarsideForm) -> tuple[GarsideForm, BraidWord]:
    last = nf.factors[-1]
    new = _from_simples(nf.infimum, [_tau_pow(last, nf.infimum), *nf.factors[:-1]])
    return new, ~_simple_word(last)


def _simple_word(s: str) -> BraidWord:
    return BraidWord(tuple((ch, 1) for ch in s))


def _improve(nf: GarsideForm, step, better) -> tuple[GarsideForm, BraidWord]:
    conj = IDENTITY
    seen = {nf}
    while nf.factors:
        new, g = step(nf)
        conj = conj * g
        if better(new, nf):
            seen = {new}
        elif new in seen:
            nf = new
            break
        else:
            seen.add(new)
        nf = new
    return nf, conj


def summit_representative(w: BraidWord) -> tuple[GarsideForm, BraidWord]:
    """Return (nf, g) where nf lies in the super summit set and g^-1 w g has form nf."""
    nf = normal_form(w)
    conj = IDENTITY
    while True:
        before = (nf.infimum, nf.supremum)
        nf, g = _improve(nf, _cycle, lambda n, o: n.infimum > o.infimum)
        conj = conj * g
        nf, g = _improve(nf, _decycle, lambda n, o: n.supremum < o.supremum)
        conj = conj * g
        if (nf.infimum, nf.supremum) == before:
            return nf, conj


@functools.lru_cache(maxsize=4096)
def _super_summit_set(start: GarsideForm) -> dict[GarsideForm, BraidWord]:
    target = (start.infimum, start.supremum)
    found = {start: IDENTITY}
    queue = deque([start])
    while queue:
        nf = queue.popleft()
        for s in (SX, SY, SXY, SYX, SD):
            new = _conj_by_simple(nf, s)
            if new not in found and (new.infimum, new.supremum) == target:
                found[new] = found[nf] * _simple_word(s)
                queue.append(new)
    return found


def super_summit_set(w: BraidWord) -> dict[GarsideForm, BraidWord]:
    """Map each element of the super summit set of w to a conjugator from w."""
    rep, g = summit_representative(w)
    return {nf: g * h for nf, h in _super_summit_set(rep).items()}


def is_conjugate(a: BraidWord, b: BraidWord) -> BraidWord | None:
    """Return g with g^-1 a g == b, or None when a and b are not conjugate."""
    if exp_sum(a) != exp_sum(b):
        return None
    rep_a, ga = summit_representative(a)
    rep_b, gb = summit_representative(b)
    if (rep_a.infimum, rep_a.supremum) != (rep_b.infimum, rep_b.supremum):
        return None
    sss = _super_summit_set(rep_a)
    if rep_b not in sss:
        return None
    # ga^-1 a ga = rep_a, h^-1 rep_a h = rep_b, gb^-1 b gb = rep_b
    return ga * sss[rep_b] * ~gb
