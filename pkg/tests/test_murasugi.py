import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import words
from torus_positivity.braid import IDENTITY, X, Y, conjugate, equals, exp_sum, is_conjugate, parse_word
from torus_positivity.certificate import verify_certificate
from torus_positivity.murasugi import (
    Case3,
    FailsNecessaryCondition,
    Family1,
    Family2,
    Family3,
    GateViolation,
    PositiveCase1,
    PositiveCase2,
    case_factorization,
    classify,
    filling_invariants,
    gate,
    passes_gate,
    realize,
)


def compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def small_classes():
    for d in range(-2, 3):
        for m in (1, 2, 3):
            yield Family1(d, m)
        for m in range(-6, 7):
            yield Family2(d, m)
        for n in (1, 2, 3):
            for sa in range(n, 5):
                for sb in range(n, 5):
                    for a in compositions(sa, n):
                        for b in compositions(sb, n):
                            yield Family3(d, a, b)


CLASSES = list(small_classes())

family3 = st.integers(1, 3).flatmap(
    lambda n: st.builds(
        Family3,
        st.integers(-1, 2),
        st.lists(st.integers(1, 4), min_size=n, max_size=n),
        st.lists(st.integers(1, 6), min_size=n, max_size=n),
    )
)
any_class = st.one_of(
    st.builds(Family1, st.integers(-2, 3), st.sampled_from([1, 2, 3])),
    st.builds(Family2, st.integers(-2, 3), st.integers(-8, 8)),
    family3,
)


def canon(c):
    return c.canonical() if isinstance(c, Family3) else c


# -- classification ------------------------------------------------------------------

def test_classify_examples():
    assert classify(parse_word("(xy)^3 y^-4")) == Family2(1, -4)
    assert classify(parse_word("(xy)^3 x y^-1 x y^-5")) == Family3(1, (1, 1), (1, 5))


def test_realize_examples():
    assert realize(Family1(1, 3)) == parse_word("(xy)^3 x^-3 y^-1")
    assert realize(Family2(0, 5)) == parse_word("y^5")
    assert realize(Family3(1, (1, 1), (2, 1))) == parse_word("(xy)^3 x y^-2 x y^-1")


@pytest.mark.parametrize("bad", [Family1(1, 4), Family1(0, 0), Family3(1, (1,), (1, 2)), Family3(1, (0,), (1,)), Family3(0, (), ())])
def test_realize_rejects_bad_parameters(bad):
    with pytest.raises(ValueError):
        realize(bad)


def test_round_trip_on_small_parameters():
    for c in CLASSES:
        assert classify(realize(c)) == canon(c), c


@settings(max_examples=150, deadline=None)
@given(any_class, words(5))
def test_conjugacy_invariance(c, g):
    w = realize(c)
    assert classify(conjugate(w, g)) == canon(c)


@settings(max_examples=200, deadline=None)
@given(words(10))
def test_classification_is_sound(w):
    rep = realize(classify(w))
    assert exp_sum(rep) == exp_sum(w)
    g = is_conjugate(rep, w)
    assert g is not None and equals(conjugate(rep, g), w)


def test_families_are_pairwise_distinct():
    # representatives of distinct canonical classes are never conjugate
    small = sorted(
        {canon(c) for c in CLASSES if abs(c.d) <= 1 and (not isinstance(c, Family2) or abs(c.m) <= 3)},
        key=repr,
    )
    by_exp = {}
    for c in small:
        by_exp.setdefault(exp_sum(realize(c)), []).append(c)
    for group in by_exp.values():
        for p, q in itertools.combinations(group, 2):
            assert is_conjugate(realize(p), realize(q)) is None, (p, q)


# -- gate --------------------------------------------------------------------------

def test_gate_examples():
    r1 = gate(Family1(1, 3))
    assert isinstance(r1, PositiveCase1) and verify_certificate(r1.certificate)
    r2 = gate(Family2(1, -4))
    assert isinstance(r2, PositiveCase2) and verify_certificate(r2.certificate)
    r3 = gate(Family3(1, (1, 1), (1, 5)))
    assert isinstance(r3, Case3) and r3.c == (3, 3, 2, 2, 2, 2)


@pytest.mark.parametrize("c", [Family1(0, 1), Family1(3, 2), Family2(1, -5), Family2(2, 0), Family3(1, (1,), (6,)), Family3(2, (1,), (1,))])
def test_gate_failures(c):
    r = gate(c)
    assert isinstance(r, FailsNecessaryCondition)
    assert not passes_gate(c)
    assert r.reason


def test_gate_boundary():
    assert passes_gate(Family3(1, (1,), (5,)))
    assert not passes_gate(Family3(1, (1,), (6,)))
    assert passes_gate(Family2(1, -4))


# -- filling invariants ------------------------------------------------------------------

def test_filling_invariants_examples():
    inv = filling_invariants(parse_word("(xy)^3 x^2 y^-1"))
    assert (inv.c1, inv.b2plus, inv.b2minus, inv.euler) == (0, 0, 5, 6)
    assert filling_invariants(parse_word("(xy)^3 x y^-1 x y^-5")).b2minus == 0
    with pytest.raises(GateViolation):
        filling_invariants(X)


@settings(max_examples=100)
@given(family3)
def test_filling_invariants_agree_with_gate(c):
    if c.d != 1:
        return
    w = realize(c)
    ok = passes_gate(c)
    if ok:
        assert filling_invariants(w).b2minus == exp_sum(w) - 2 >= 0
    else:
        with pytest.raises(GateViolation):
            filling_invariants(w)


# -- case certificates ----------------------------------------------------------------

def test_case_certificates_from_the_worked_identities():
    c1 = case_factorization(Family1(1, 3))
    assert [f.word() for f in c1.factors] == [parse_word("y x y^-1"), parse_word("y x y x^-1 y^-1")]
    c2 = case_factorization(Family2(1, -4))
    assert [f.word() for f in c2.factors] == [X, parse_word("y^2 x y^-2")]


def test_case_two_with_m_minus_three():
    cert = case_factorization(Family2(1, -3))
    assert cert.target == parse_word("(xy)^3 y^-3")
    assert len(cert.factors) == 3 and verify_certificate(cert)


def test_all_gate_cases_certify():
    for d in (1, 2):
        for m in (1, 2, 3):
            cert = case_factorization(Family1(d, m))
            assert verify_certificate(cert)
            assert len(cert.factors) == exp_sum(cert.target)
    for m in range(-4, 9):
        cert = case_factorization(Family2(1, m))
        assert verify_certificate(cert)
        assert len(cert.factors) == exp_sum(cert.target)


def test_case_factorization_rejects_failing_class():
    with pytest.raises(GateViolation):
        case_factorization(Family2(1, -5))
    with pytest.raises(GateViolation):
        case_factorization(Family3(1, (1,), (1,)))


def test_identity_classifies_as_trivial_family_two():
    assert classify(IDENTITY) == Family2(0, 0)
    assert classify(Y ** 3) == Family2(0, 3)
