"""
Circular-chain lattices and their embeddings into the standard diagonal lattice.

Everything is stored in positive-definite form: the chain lattice of a tuple
c has Gram matrix G with G[i][i] = c_i, G[i][i+1] = -1 and G[1][N] = +1, and
the target is Z^K with the standard dot product.  (The geometric setting
uses the negatives of both; one global sign flip relates the two.)

An embedding is a K x N integer matrix M with M^T M = G whose rows each sum
to 1, i.e. the image of the characteristic class sum(v_i) is the all-ones
vector.  With that normalization every column j satisfies

    sum_i m_ij (m_ij - 1) = 0 for j in {1, N}, and = 2 otherwise,

so boundary columns have entries in {0, 1} and each middle column has
exactly one entry in {-1, 2}.  The default search uses this as a hard prune.
"""

from __future__ import annotations

import dataclasses
import math
from collections import Counter
from fractions import Fraction
from typing import Iterator, Sequence

from .blowup import SEED, BlowupTrace, Tuple, blowdown, blowup

Matrix = tuple[tuple[int, ...], ...]


class InconsistentEmbedding(RuntimeError):
    """Blowdown extraction stalled; the input violates the embedding invariants."""


def gram(c: Sequence[int]) -> Matrix:
    n = len(c)
    if n < 3:
        raise ValueError("the chain lattice needs N >= 3 (for N = 2 the wrap-around pairing collides)")
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = c[i]
    for i in range(n - 1):
        g[i][i + 1] = g[i + 1][i] = -1
    g[0][n - 1] = g[n - 1][0] = 1
    return tuple(tuple(r) for r in g)


def leading_minors(g: Sequence[Sequence[int]]) -> list[int]:
    """Leading principal minors by fraction-free (Bareiss) elimination."""
    n = len(g)
    a = [list(r) for r in g]
    minors = []
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            # a zero pivot makes this minor 0; finish the rest exactly
            minors.append(0)
            minors.extend(_det(_sub(g, m)) for m in range(k + 2, n + 1))
            return minors
        minors.append(a[k][k])
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return minors


def _sub(g, m):
    return [list(r[:m]) for r in g[:m]]


def _det(a: list[list[int]]) -> int:
    a = [[Fraction(v) for v in r] for r in a]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return int(det)


def is_positive_definite(g: Sequence[Sequence[int]]) -> bool:
    """Sylvester's criterion, computed exactly."""
    return all(m > 0 for m in leading_minors(g))


def check_characteristic(v: Sequence[int], k: int | None = None) -> bool:
    """A vector of the diagonal lattice is characteristic iff every coordinate is odd."""
    if k is not None and len(v) != k:
        return False
    return all(x % 2 for x in v)


def is_w_characteristic(c: Sequence[int]) -> bool:
    """Whether sum(v_i) is characteristic: each row sum of G agrees with c_i mod 2."""
    g = gram(c)
    return all((sum(row) - row[i]) % 2 == 0 for i, row in enumerate(g))


def rank_of_target(c: Sequence[int]) -> int:
    """K = sum(c) - 2N + 4, the rank of the diagonal lattice receiving the embedding."""
    return sum(c) - 2 * len(c) + 4


# -- embedding matrices ------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class EmbeddingMatrix:
    c: Tuple
    rows: Matrix  # K rows of length N

    @property
    def K(self) -> int:
        return len(self.rows)

    @property
    def N(self) -> int:
        return len(self.c)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def pairing(self) -> Matrix:
        n = self.N
        return tuple(
            tuple(sum(r[i] * r[j] for r in self.rows) for j in range(n)) for i in range(n)
        )

    def tau(self, j: int) -> int | None:
        """1-based row of the unique entry of middle column j (1-based) lying in {-1, 2}."""
        hits = [i for i, r in enumerate(self.rows, 1) if r[j - 1] in (-1, 2)]
        return hits[0] if len(hits) == 1 else None

    def violations(self, strict_shape: bool = True) -> list[str]:
        out = []
        if self.pairing() != gram(self.c):
            out.append("M^T M differs from the Gram matrix")
        out.extend(f"row {i} sums to {sum(r)}" for i, r in enumerate(self.rows, 1) if sum(r) != 1)
        if strict_shape:
            out.extend(shape_violations(self))
        return out


def shape_violations(m: EmbeddingMatrix) -> list[str]:
    out = []
    n = m.N
    for j in range(n):
        col = m.column(j)
        odd = [v for v in col if v not in (0, 1)]
        if j in (0, n - 1):
            if odd:
                out.append(f"boundary column {j + 1} has entries {odd} outside {{0,1}}")
        elif len(odd) != 1 or odd[0] not in (-1, 2):
            out.append(f"middle column {j + 1} has off-alphabet entries {odd}")
    return out


def _column_sum(g: Matrix, j: int) -> int:
    # sum_i m_ij = (all-ones) . v_j = sum_l G[j][l]
    return sum(g[j])


def _alphabet(cj: int, boundary: bool, prune: bool) -> list[int]:
    if prune:
        return [1] if boundary else [1, -1, 2]
    r = math.isqrt(cj)
    return [v for v in range(-r, r + 1) if v]


def iter_embeddings(c: Sequence[int], prune: bool = True) -> Iterator[EmbeddingMatrix]:
    """Every embedding up to reordering of the diagonal basis, rows sorted descending.

    With ``prune`` the entry alphabet is restricted as in the module
    docstring; without it, entries are only bounded by the column norms and
    the shape restriction becomes something to check afterwards.
    """
    c = tuple(c)
    n = len(c)
    g = gram(c)
    if min(c) < 1:
        raise ValueError("framings must be positive")
    k = rank_of_target(c)
    if k < 0:
        return
    if k < n and is_positive_definite(g):
        return  # rank obstruction
    classes = [((), k)] if k else []
    yield from _search(c, g, n, prune, classes, 0)


def _search(c, g, n, prune, classes, j) -> Iterator[EmbeddingMatrix]:
    if j == n - 1:
        col = _forced_last(classes)
        if col is not None and _column_ok(col, classes, g, j, c[j], prune):
            rows = []
            for (row, mult), v in zip(classes, col):
                rows.extend([row + (v,)] * mult)
            rows.sort(reverse=True)
            yield EmbeddingMatrix(c, tuple(rows))
        return
    boundary = j == 0
    alphabet = _alphabet(c[j], boundary, prune)
    for assignment in _columns(classes, g, j, c[j], _column_sum(g, j), alphabet, prune and not boundary):
        new = []
        for (row, mult), counts in zip(classes, assignment):
            zeros = mult - sum(counts.values())
            for v in sorted({**counts, 0: zeros}, reverse=True):
                k = zeros if v == 0 else counts[v]
                if k:
                    new.append((row + (v,), k))
        yield from _search(c, g, n, prune, new, j + 1)


def _forced_last(classes) -> list[int] | None:
    return [1 - sum(row) for row, _ in classes]


def _column_ok(col, classes, g, j, norm, prune) -> bool:
    if prune and any(v not in (0, 1) for v in col):
        return False
    if sum(v * v * m for v, (_, m) in zip(col, classes)) != norm:
        return False
    for l in range(j):
        if sum(v * row[l] * m for v, (row, m) in zip(col, classes)) != g[j][l]:
            return False
    return True


def _columns(classes, g, j, norm, colsum, alphabet, one_special) -> Iterator[list[Counter]]:
    """Distribute nonzero values over row classes so that column j meets its constraints.

    Yields, per class, a Counter value -> number of rows of that class taking
    the value; unlisted rows take 0.
    """
    targets = [g[j][l] for l in range(j)]
    nclass = len(classes)
    # suffix maxima of |row[l]| for bounding what the remaining classes can still contribute
    maxabs = [[0] * j for _ in range(nclass + 1)]
    for idx in range(nclass - 1, -1, -1):
        row = classes[idx][0]
        maxabs[idx] = [max(maxabs[idx + 1][l], abs(row[l])) for l in range(j)]
    specials = {-1, 2} if one_special else set()
    choice: list[Counter] = [Counter() for _ in range(nclass)]

    def rec(idx, left_norm, left_sum, residual, specials_left):
        if left_norm == 0:
            if left_sum == 0 and not any(residual) and not (one_special and specials_left):
                yield [Counter(ch) for ch in choice]
            return
        if idx == nclass:
            return
        # each unit of remaining norm moves an inner product by at most maxabs
        if any(abs(r) > left_norm * maxabs[idx][l] for l, r in enumerate(residual)):
            return
        if abs(left_sum) > left_norm:
            return
        row, mult = classes[idx]
        for counts in _distributions(mult, alphabet, left_norm, specials, specials_left):
            dn = sum(v * v * k for v, k in counts.items())
            ds = sum(v * k for v, k in counts.items())
            new_res = [r - sum(v * k for v, k in counts.items()) * row[l] for l, r in enumerate(residual)]
            sp = sum(k for v, k in counts.items() if v in specials)
            choice[idx] = counts
            yield from rec(idx + 1, left_norm - dn, left_sum - ds, new_res, specials_left - sp)
        choice[idx] = Counter()

    yield from rec(0, norm, colsum, targets, 1)


def _distributions(mult, alphabet, budget, specials, specials_left) -> Iterator[Counter]:
    """Counters over nonzero values with total count <= mult and total square norm <= budget."""
    vals = sorted(alphabet, key=lambda v: (v * v, -v))

    def rec(i, left, budget, sp_left, acc):
        if i == len(vals):
            yield Counter(acc)
            return
        v = vals[i]
        cap = min(left, budget // (v * v))
        if v in specials:
            cap = min(cap, sp_left)
        for k in range(cap + 1):
            if k:
                acc[v] = k
            yield from rec(i + 1, left - k, budget - k * v * v, sp_left - (k if v in specials else 0), acc)
            acc.pop(v, None)

    yield from rec(0, mult, budget, specials_left, {})


def find_embedding(c: Sequence[int], prune: bool = True) -> EmbeddingMatrix | None:
    """The first embedding in search order, or None after exhaustive search."""
    return next(iter_embeddings(c, prune), None)


# -- extracting blowdowns ----------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class Extraction:
    s: Tuple
    trace: BlowupTrace
    deleted_rows: int
    norms: tuple[Tuple, ...]  # s, then the tuple after each column erasure, ending at (0, 0)


def extract_blowdowns(m: EmbeddingMatrix) -> Extraction:
    """Read a dominated descendant s and its blowup trace off an embedding.

    First rows with a single nonzero entry are deleted until N - 2 rows
    remain; the column norms are then s.  Then a column of norm 1 is found
    and erased with its row, which is a blowdown of the norm tuple, until
    (0, 0) is reached.
    """
    n = m.N
    rows = [list(r) for r in m.rows]
    deleted = 0
    while len(rows) > n - 2:
        minus_ones = sum(1 for r in rows for v in r if v == -1)
        if len(rows) <= minus_ones:
            raise InconsistentEmbedding(f"{len(rows)} rows but {minus_ones} entries equal to -1")
        single = next((i for i, r in enumerate(rows) if sum(1 for v in r if v) == 1), None)
        if single is None:
            raise InconsistentEmbedding("no row with a single nonzero entry")
        if sum(rows[single]) != 1:
            raise InconsistentEmbedding(f"row {rows[single]} does not sum to 1")
        del rows[single]
        deleted += 1

    cols = [[r[j] for r in rows] for j in range(n)]
    s = tuple(sum(v * v for v in col) for col in cols)
    if any(si > ci for si, ci in zip(s, m.c)):
        raise InconsistentEmbedding(f"{s} is not dominated by {m.c}")
    norms = [s]
    erased: list[int] = []
    while len(cols) > 2:
        cur = norms[-1]
        j = next((j for j, col in enumerate(cols) if sum(v * v for v in col) == 1), None)
        if j is None:
            raise InconsistentEmbedding(f"no column of square 1 at {cur}")
        i = next(i for i, v in enumerate(cols[j]) if v)
        del cols[j]
        for col in cols:
            del col[i]
        nxt = tuple(sum(v * v for v in col) for col in cols)
        if blowdown(cur, j + 1) != nxt:
            raise InconsistentEmbedding(f"erasing column {j + 1} of {cur} gave {nxt}, not a blowdown")
        norms.append(nxt)
        erased.append(j + 1)
    if norms[-1] != SEED:
        raise InconsistentEmbedding(f"reduction ended at {norms[-1]}, not (0, 0)")

    steps = tuple((norms[k + 1], erased[k] - 1) for k in reversed(range(len(erased))))
    trace = BlowupTrace(steps, s)
    trace.replay()
    return Extraction(s, trace, deleted, tuple(norms))


# -- text format ---------------------------------------------------------------

def format_matrix(rows: Sequence[Sequence[int]]) -> str:
    return "".join(" ".join(str(v) for v in r) + "\n" for r in rows)


def parse_matrix(text: str) -> Matrix:
    rows = tuple(tuple(int(v) for v in line.split()) for line in text.splitlines() if line.strip())
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")
    return rows
