import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import words
from torus_positivity.blowup import SEED, blowup, descendants, dominates, trace_of, word_of_tuple
from torus_positivity.braid import IDENTITY, X, Y, BraidWord, conjugate, equals, exp_sum, is_conjugate, parse_word
from torus_positivity.certificate import Factor, certificate, check_certificate, from_text, to_text, verify_certificate
from torus_positivity.factorization import (
    FailsNecessaryCondition,
    NotPositive,
    OutOfScope,
    Positive,
    blowup_conjugator,
    decide,
    descendant_digest,
    one_block_certificate,
    split_at_increment,
    synthesize,
)
from torus_positivity.murasugi import Family3, realize


def bump(s, i):
    return s[:i - 1] + (s[i - 1] + 1,) + s[i:]


# -- splitting ------------------------------------------------------------------------

def test_split_example_head_of_block():
    phi, psi = split_at_increment((1, 1, 1), 1)
    assert phi == parse_word("(xy)^3 x^-1")
    assert psi == parse_word("y^-1 x^-1 y^-1 x^-1 y^-1")
    assert equals(phi * X * psi, word_of_tuple((2, 1, 1)))


def test_split_rejects_inadmissible_steps():
    with pytest.raises(ValueError):
        split_at_increment(SEED, 1)
    with pytest.raises(IndexError):
        split_at_increment((1, 1, 1), 4)


def test_split_filler_case():
    phi, psi = split_at_increment((3, 2, 3), 2)
    # y^-2 of the first block becomes y^-1 x y^-1
    assert phi * X * psi == parse_word("(xy)^3 x y^-1 x y^-1 x y^-1")
    assert equals(phi * X * psi, word_of_tuple((3, 3, 3)))


@given(st.lists(st.integers(1, 5), min_size=2, max_size=7), st.data())
def test_split_contract(s, data):
    s = tuple(s)
    i = data.draw(st.integers(1, len(s)))
    phi, psi = split_at_increment(s, i)
    assert equals(phi * psi, word_of_tuple(s))
    assert equals(phi * X * psi, word_of_tuple(bump(s, i)))


# -- synthesis ------------------------------------------------------------------------

def test_synthesize_single_step():
    cert = synthesize((2, 1, 1), (1, 1, 1), trace_of((1, 1, 1)))
    assert len(cert) == 1
    assert cert.factors[0].conjugator == parse_word("y^-1 x^-1 y^-1 x^-1 y^-1")
    assert verify_certificate(cert)


def test_synthesize_identity():
    cert = synthesize((1, 1, 1), (1, 1, 1), trace_of((1, 1, 1)))
    assert len(cert) == 0 and verify_certificate(cert)


def test_synthesize_three_two_three():
    cert = synthesize((3, 2, 3), (1, 1, 1), trace_of((1, 1, 1)))
    assert len(cert) == 5
    assert cert.target == parse_word("(xy)^3 x y^-2 x y^-1")
    assert verify_certificate(cert)


def test_synthesize_errors():
    with pytest.raises(ValueError):
        synthesize((1, 1, 3), (2, 1, 2, 1)[:3], trace_of((1, 1, 1)))
    with pytest.raises(ValueError):
        synthesize((3, 3, 3), (1, 1, 1), trace_of((2, 1, 2, 1)))


@settings(max_examples=120, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=2, max_size=6))
def test_synthesis_soundness(c):
    found = dominates(c)
    if found is None:
        return
    s, trace = found
    cert = synthesize(c, s, trace)
    assert verify_certificate(cert)
    assert len(cert) == sum(c) - 3 * (len(c) - 2) == exp_sum(word_of_tuple(c))
    assert all(f.generator == "x" for f in cert.factors)


def test_tampered_certificate_is_localized():
    cert = synthesize((3, 2, 3), (1, 1, 1), trace_of((1, 1, 1)))
    bad = list(cert.factors)
    conj = bad[2].conjugator
    gen, e = conj.letters[0]
    flipped = BraidWord(((gen, -e),) + conj.letters[1:])
    bad[2] = Factor(flipped, "x")
    tampered = dataclasses.replace(cert, factors=tuple(bad))
    assert not verify_certificate(tampered)
    failures = check_certificate(tampered)
    assert failures and failures[-1].index == 3


def test_certificate_checks():
    assert verify_certificate(certificate(IDENTITY, []))
    assert not verify_certificate(certificate(X, []))
    assert check_certificate(certificate(X, [(IDENTITY, "z")]))[0].index == 1
    # right exponent sum, wrong element
    assert not verify_certificate(certificate(X, [(IDENTITY, "y")]))


def test_certificate_text_round_trip():
    cert = synthesize((3, 2, 3), (1, 1, 1), trace_of((1, 1, 1)))
    back = from_text(to_text(cert))
    assert back == cert and back.metadata == cert.metadata
    assert to_text(back) == to_text(cert)
    for bad in ["", "{}", "[1]", '{"format": "torus-positivity-certificate/1"}']:
        with pytest.raises(ValueError):
            from_text(bad)


# -- blowup conjugators --------------------------------------------------------------

@pytest.mark.parametrize("n", range(2, 7))
def test_blowup_conjugators_for_all_descendants(n):
    for s in descendants(n):
        for pos in range(n + 1):
            g = blowup_conjugator(s, pos)
            assert equals(conjugate(word_of_tuple(blowup(s, pos)), g), word_of_tuple(s))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=2, max_size=6), st.data())
def test_blowup_conjugators_for_any_tuple(s, data):
    pos = data.draw(st.integers(0, len(s)))
    blowup_conjugator(s, pos)


# -- single block ----------------------------------------------------------------------

@pytest.mark.parametrize("a", range(1, 8))
def test_one_block_certificate(a):
    cls = Family3(1, (a,), (1,))
    cert = one_block_certificate(cls)
    assert cert.target == realize(cls)
    assert len(cert) == a + 5 == exp_sum(realize(cls))
    assert verify_certificate(cert)


# -- decisions ---------------------------------------------------------------------------

def test_decide_examples():
    pos = decide(parse_word("(xy)^3 x y^-2 x y^-1"))
    assert isinstance(pos, Positive) and len(pos.certificate) == 5
    neg = decide(parse_word("(xy)^3 x y^-1 x y^-5"), oracle=True)
    assert isinstance(neg, NotPositive)
    assert neg.witness.c == (3, 3, 2, 2, 2, 2)
    assert neg.witness.descendant_count == 14
    assert neg.witness.digest == descendant_digest(6)
    assert neg.witness.lattice_embedding is False
    case1 = decide(parse_word("(xy)^3 x^-3 y^-1"))
    assert isinstance(case1, Positive) and len(case1.certificate) == 2


def test_decide_gate_failures_and_scope():
    assert isinstance(decide(parse_word("y^-5 (xy)^3")), FailsNecessaryCondition)
    assert isinstance(decide(X), FailsNecessaryCondition)
    long = parse_word("(xy)^3 " + "x y^-1 " * 14)
    assert isinstance(decide(long, max_n=12), OutOfScope)


@settings(max_examples=60, deadline=None)
@given(words(8))
def test_positive_decisions_are_sound(w):
    d = decide(w, max_n=8)
    if isinstance(d, Positive):
        assert d.certificate.target == w
        assert verify_certificate(d.certificate)
        assert len(d.certificate) == exp_sum(w)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3)), min_size=1, max_size=3), st.data())
def test_decisions_are_monotone(bl, data):
    a, b = [p for p, _ in bl], [q for _, q in bl]
    cls = Family3(1, a, b)
    if isinstance(decide(realize(cls)), Positive):
        j = data.draw(st.integers(0, len(a) - 1))
        a[j] += 1
        assert isinstance(decide(realize(Family3(1, a, b))), Positive)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3)), min_size=1, max_size=2), words(4))
def test_decision_invariant_under_conjugation(bl, g):
    w = realize(Family3(1, [p for p, _ in bl], [q for _, q in bl]))
    assert type(decide(w)) is type(decide(conjugate(w, g)))


def test_lifted_certificate_is_for_the_input_word():
    w = conjugate(parse_word("(xy)^3 x y^-2 x y^-1"), parse_word("x y^-2"))
    d = decide(w)
    assert isinstance(d, Positive)
    assert d.certificate.target == w and verify_certificate(d.certificate)


def test_rewriting_chain_for_the_seed():
    # h((0,0)) collapses to the identity through the displayed rewriting steps
    steps = [
        "(xy)^3 x^-2 y^-1 x^-2 y^-1",
        "(xy)^3 x^-1 (x^-1 y^-1 x^-1) x^-1 y^-1",
        "(xy)^3 x^-1 (y^-1 x^-1 y^-1) x^-1 y^-1",
        "(xy)^3 (xy)^-3",
        "",
    ]
    for a, b in zip(steps, steps[1:]):
        assert equals(parse_word(a), parse_word(b))
    assert is_conjugate(word_of_tuple(SEED), IDENTITY) is not None
