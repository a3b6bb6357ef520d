"""Exact field arithmetic and linear algebra over Q(s)."""

import random
from fractions import Fraction

import pytest

from cartanq.qfield import (FieldElem, LaurentPoly, FMatrix, ZERO, ONE, Q,
                            QINV, LAMBDA, DivisionByZero, PoleAtEvaluationPoint,
                            parse_scalar, field_str, kernel_basis)


def brute_laurent(fn, lo=-6, hi=6):
    """Oracle: expand an exponent->Fraction function into a LaurentPoly."""
    return LaurentPoly({e: fn(e) for e in range(lo, hi + 1) if fn(e)})


def test_cancellation_examples():
    # (q - q^-1) + q^-1 = q
    assert (Q - QINV) + QINV == Q
    # (q^2 - 1)/(q - q^-1) = q
    assert (Q * Q - ONE) / LAMBDA == Q
    # (q^-2 - 1)/lambda = -q^-1, by expanding both sides in s
    lhs = (QINV * QINV - ONE) / LAMBDA
    assert lhs == -QINV
    assert lhs.num == brute_laurent(lambda e: Fraction(-1) if e == -2 else 0)
    assert lhs.den == LaurentPoly.one()


def test_eval_examples():
    assert Q.evaluate(Fraction(3, 2)) == Fraction(9, 4)
    assert LAMBDA.evaluate(Fraction(3, 2)) == Fraction(65, 36)
    # lambda itself evaluates to 0 at s = 1; only denominators raise
    assert LAMBDA.evaluate(1) == 0
    with pytest.raises(PoleAtEvaluationPoint):
        LAMBDA.inverse().evaluate(1)
    with pytest.raises(PoleAtEvaluationPoint):
        LAMBDA.inverse().evaluate(-1)
    # canonical form first: (q^2-1)/lambda = q has no pole at s = 1
    assert ((Q * Q - ONE) / LAMBDA).evaluate(1) == 1
    with pytest.raises(ValueError):
        Q.evaluate(0)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        ONE / ZERO
    with pytest.raises(DivisionByZero):
        ZERO.inverse()


def rand_elem(rng, allow_zero=True):
    num = LaurentPoly({rng.randint(-3, 3): Fraction(rng.randint(-4, 4))
                       for _ in range(rng.randint(0 if allow_zero else 1, 3))})
    den = LaurentPoly.zero()
    while den.is_zero:
        den = LaurentPoly({rng.randint(-2, 2): Fraction(rng.randint(-3, 3))
                           for _ in range(rng.randint(1, 3))})
    return FieldElem(num, den)


def test_field_axioms_randomized():
    rng = random.Random(0)
    for _ in range(60):
        a, b, c = rand_elem(rng), rand_elem(rng), rand_elem(rng)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not a.is_zero:
            assert a * a.inverse() == ONE


def test_eval_is_ring_homomorphism():
    rng = random.Random(1)
    sv = Fraction(5, 3)
    for _ in range(40):
        a, b = rand_elem(rng), rand_elem(rng)
        try:
            va, vb = a.evaluate(sv), b.evaluate(sv)
            assert (a * b).evaluate(sv) == va * vb
            assert (a + b).evaluate(sv) == va + vb
        except PoleAtEvaluationPoint:
            pass


def test_canonical_text_and_parse_roundtrip():
    assert field_str(LAMBDA) == "s^2 - s^-2"
    assert field_str(LAMBDA.inverse()) == "(s^2)/(s^4 - 1)"
    assert field_str(ZERO) == "0"
    assert field_str(FieldElem.from_fraction(Fraction(3, 2))) == "(3)/(2)"
    rng = random.Random(2)
    for _ in range(60):
        a = rand_elem(rng)
        assert parse_scalar(field_str(a)) == a
    assert parse_scalar("q") == Q
    assert parse_scalar("1 - q/(q+1)^2") == ONE - Q / ((Q + ONE) ** 2)


def test_canonical_equality_is_decidable():
    a = (Q * Q - ONE) / (Q - ONE)
    b = Q + ONE
    assert a == b
    assert hash(a) == hash(b)


def test_kernel_basis_small():
    ident = FMatrix.identity(2)
    assert kernel_basis(ident) == []
    zero = FMatrix.zeros(2, 2)
    basis = kernel_basis(zero)
    assert len(basis) == 2


def test_kernel_rank_nullity_random():
    rng = random.Random(3)
    for _ in range(10):
        rows = rng.randint(2, 4)
        cols = rng.randint(2, 4)
        m = FMatrix([[rand_elem(rng) for _ in range(cols)] for _ in range(rows)])
        basis = kernel_basis(m)
        for v in basis:
            assert all(x.is_zero for x in m.mat_vec(v))
        assert m.rank() + len(basis) == cols


def test_kernel_of_braiding_defect_has_dimension_ten():
    from cartanq.calculus4d import build_tables
    from cartanq.qfield import FMatrix
    tables = build_tables()
    sig = FMatrix([[tables.sigma[p // 4][p % 4][r // 4][r % 4] for r in range(16)]
                   for p in range(16)])
    defect = FMatrix.identity(16) - sig
    assert len(kernel_basis(defect)) == 10
