"""The representation on step functions: ladder action, state, cyclicity."""

import random
from fractions import Fraction

import pytest

from padic_cuntz import (InvalidLetterError, OperatorParseError, OperatorWord,
                         Scalar, StepFunction, apply_annihilation,
                         apply_creation, apply_operator_word, constant,
                         creation_chain, cyclicity_basis, gns_state,
                         indicator, l2_inner, parse_operator_word,
                         words_up_to)
from padic_cuntz.representation import ANNIHILATE, CREATE
from padic_cuntz.suites import random_step_function


def test_creation_examples():
    one = constant(2, 1)
    f = apply_creation(0, one)
    assert [v.pretty() for v in f.values] == ["√2", "0"]
    g = apply_creation(1, f)
    assert [v.pretty() for v in g.values] == ["0", "2", "0", "0"]
    z = StepFunction.zero(2, 1)
    assert apply_creation(0, z).is_zero()
    with pytest.raises(InvalidLetterError):
        apply_creation(2, one)


def test_creation_moves_disks():
    # indicator of D(c, p^{-k}) ↦ √p × indicator of D(i + pc, p^{-(k+1)})
    f = indicator(3, [2])          # center 2, depth 1
    g = apply_creation(1, f)
    expected = indicator(3, [1, 2]).scale(Scalar.root_p(3))
    assert g == expected


def test_annihilation_examples():
    one = constant(2, 1)
    out = apply_annihilation(0, one)
    assert out.depth == 0
    assert out.values[0] == Scalar.root_p_power(2, -1)
    theta = indicator(2, [0])
    assert apply_annihilation(1, theta).is_zero()
    assert apply_annihilation(0, theta) == constant(
        2, Scalar.root_p_power(2, -1))


def test_operator_word_parsing():
    w = parse_operator_word("a1* a0* a1")
    assert w.factors == ((CREATE, 1), (CREATE, 0), (ANNIHILATE, 1))
    assert str(w) == "a1* a0* a1"
    assert parse_operator_word("").factors == ()
    with pytest.raises(OperatorParseError) as err:
        parse_operator_word("a1* b0")
    assert err.value.position == 4
    with pytest.raises(OperatorParseError):
        parse_operator_word("a* a1")
    with pytest.raises(OperatorParseError):
        parse_operator_word("a1*x")


def test_apply_operator_word_examples():
    rng = random.Random(21)
    f = random_step_function(rng, 2, 2)
    ident = parse_operator_word("a0 a0*")
    assert apply_operator_word(ident, f) == f
    mismatch = parse_operator_word("a1 a0*")
    assert apply_operator_word(mismatch, f).is_zero()
    chain = parse_operator_word("a1* a0*")  # A†_I for I = (0,1)
    out = apply_operator_word(chain, constant(2, 1))
    assert out == indicator(2, [1, 0]).scale(Scalar.rational(2, 2))
    with pytest.raises(InvalidLetterError):
        apply_operator_word(parse_operator_word("a7"), f)


def test_cuntz_relation_one():
    rng = random.Random(22)
    for p in (2, 3):
        for _ in range(30):
            f = random_step_function(rng, p, rng.randint(0, 4))
            for j in range(p):
                g = apply_creation(j, f)
                for i in range(p):
                    out = apply_annihilation(i, g)
                    if i == j:
                        assert out == f
                    else:
                        assert out.is_zero()


def test_cuntz_relation_two():
    rng = random.Random(23)
    for p in (2, 3):
        for _ in range(30):
            f = random_step_function(rng, p, rng.randint(0, 4))
            total = None
            for i in range(p):
                term = apply_creation(i, apply_annihilation(i, f))
                total = term if total is None else total + term
            assert total == f  # depth-0 inputs compare after auto-refinement


def test_adjointness_and_isometry():
    rng = random.Random(24)
    for p in (2, 3):
        for _ in range(30):
            f = random_step_function(rng, p, rng.randint(0, 3))
            g = random_step_function(rng, p, rng.randint(0, 3))
            for i in range(p):
                assert l2_inner(apply_creation(i, f), g) == \
                    l2_inner(f, apply_annihilation(i, g))
            cf = apply_creation(rng.randrange(p), f)
            assert l2_inner(cf, cf) == l2_inner(f, f)


def test_gns_state_examples():
    assert gns_state(2, (), ()) == Scalar.one(2)
    assert gns_state(2, (0,), ()) == Scalar(2, 0, Fraction(1, 2))
    assert gns_state(3, (0, 1), (1,)) == Scalar(3, 0, Fraction(1, 9))


def test_gns_state_exhaustive_small():
    for p in (2, 3):
        for I in words_up_to(p, 2):
            for J in words_up_to(p, 2):
                assert gns_state(p, I, J) == \
                    Scalar.root_p_power(p, -(len(I) + len(J)))


def test_state_positivity():
    # random finite combinations v = Σ c_m A†_{I_m} A_{J_m} applied to 1
    rng = random.Random(25)
    for p in (2, 3):
        words = list(words_up_to(p, 2))
        for _ in range(25):
            v = StepFunction.zero(p)
            for _ in range(rng.randint(1, 4)):
                I = rng.choice(words)
                J = rng.choice(words)
                c = Scalar(p, Fraction(rng.randint(-5, 5)),
                           Fraction(rng.randint(-2, 2)),
                           Fraction(rng.randint(-3, 3)), 0)
                w = OperatorWord.state_monomial(I, J)
                v = v + apply_operator_word(w, constant(p, 1)).scale(c)
            norm = l2_inner(v, v)
            assert norm.is_real()
            assert norm.real_sign() >= 0


def test_cyclicity_examples():
    basis0 = cyclicity_basis(2, 0)
    assert len(basis0) == 1 and basis0[0] == constant(2, 1)
    basis1 = cyclicity_basis(2, 1)
    root2 = Scalar.root_p(2)
    assert basis1[0] == indicator(2, [0]).scale(root2)
    assert basis1[1] == indicator(2, [1]).scale(root2)
    basis2 = cyclicity_basis(2, 2)
    assert len(basis2) == 4
    for a in range(4):
        for b in range(4):
            inner = l2_inner(basis2[a], basis2[b])
            assert inner == (Scalar.one(2) if a == b else Scalar.zero(2))


def test_creation_chain_matches_word_application():
    for p in (2, 3):
        for I in words_up_to(p, 3):
            w = OperatorWord.state_monomial(I, ())
            assert creation_chain(p, I) == \
                apply_operator_word(w, constant(p, 1))
