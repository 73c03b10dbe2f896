import random

import pytest
from hypothesis import strategies as st

from torus_positivity.braid import BraidWord

letters = st.tuples(st.sampled_from("xy"), st.sampled_from([-3, -2, -1, 1, 2, 3]))


def words(max_size=8):
    return st.lists(letters, max_size=max_size).map(lambda ls: BraidWord(tuple(ls)))


def random_word(rng: random.Random, size: int) -> BraidWord:
    return BraidWord(tuple((rng.choice("xy"), rng.choice([-2, -1, 1, 2])) for _ in range(size)))


def rewrite(rng: random.Random, w: BraidWord, moves: int = 6) -> BraidWord:
    """Apply random braid relations, free insertions and free reductions to the letters of w.

    Works on a flat list of (generator, +-1) so it never touches the normal form code.
    """
    flat = w.flat()
    rel = {("x", "y", "x"): ("y", "x", "y"), ("y", "x", "y"): ("x", "y", "x")}
    for _ in range(moves):
        kind = rng.randrange(3)
        if kind == 0:
            g = rng.choice("xy")
            s = rng.choice([1, -1])
            i = rng.randrange(len(flat) + 1)
            flat[i:i] = [(g, s), (g, -s)]
        elif kind == 1:
            spots = [
                i for i in range(len(flat) - 2)
                if len({s for _, s in flat[i:i + 3]}) == 1 and tuple(g for g, _ in flat[i:i + 3]) in rel
            ]
            if spots:
                i = rng.choice(spots)
                s = flat[i][1]
                flat[i:i + 3] = [(g, s) for g in rel[tuple(g for g, _ in flat[i:i + 3])]]
        else:
            spots = [i for i in range(len(flat) - 1) if flat[i][0] == flat[i + 1][0] and flat[i][1] == -flat[i + 1][1]]
            if spots:
                i = rng.choice(spots)
                del flat[i:i + 2]
    # BraidWord merges runs but the relation moves above are what matter
    return BraidWord(tuple(flat))


@pytest.fixture
def rng():
    return random.Random(20131)
