"""The two Hopf algebras: normal forms, costructures, pairing, actions."""

import random

import pytest

from cartanq.qfield import ONE, Q, QINV, FieldElem, LAMBDA
from cartanq.hopfcore import (ALG_A, ALG_H, AlgebraElem, TensorElem,
                              AlgebraMismatch, GEN_A, GEN_ASTAR, GEN_C,
                              GEN_CSTAR, GEN_E, GEN_F, GEN_K, GEN_KINV,
                              UNIT_A, UNIT_H, multiply, coproduct, counit,
                              antipode, star, pair, act_left, act_right,
                              translate_right, verify_hopf_axioms,
                              random_elem, monomials_up_to,
                              mono_str, parse_mono)

S_HALF = FieldElem.s_power(1)


def test_defining_relations():
    a, as_, c, cs = GEN_A, GEN_ASTAR, GEN_C, GEN_CSTAR
    assert a * c == (c * a).scale(Q)
    assert a * cs == (cs * a).scale(Q)
    assert c * cs == cs * c
    assert a * as_ + (c * cs).scale(Q * Q) == UNIT_A
    assert as_ * a + cs * c == UNIT_A
    E, F, K, Ki = GEN_E, GEN_F, GEN_K, GEN_KINV
    assert K * Ki == UNIT_H
    assert K * E * Ki == E.scale(Q)
    assert K * F * Ki == F.scale(QINV)
    assert E * F - F * E == (K * K - Ki * Ki).scale(LAMBDA.inverse())


def test_multiply_examples():
    # a a! = 1 - q^2 c c!
    assert GEN_A * GEN_ASTAR == UNIT_A - (GEN_C * GEN_CSTAR).scale(Q * Q)
    # c! c = c c!
    assert GEN_CSTAR * GEN_C == GEN_C * GEN_CSTAR
    # E F = F E + (K^2 - K^-2)/lambda
    want = GEN_F * GEN_E + (GEN_K * GEN_K - GEN_KINV * GEN_KINV).scale(LAMBDA.inverse())
    assert GEN_E * GEN_F == want


def test_algebra_mismatch():
    with pytest.raises(AlgebraMismatch):
        multiply(GEN_A, GEN_E)
    with pytest.raises(AlgebraMismatch):
        GEN_A + GEN_E


def test_coproduct_examples():
    da = coproduct(GEN_A)
    want = TensorElem.of(GEN_A, GEN_A) - TensorElem.of(GEN_CSTAR, GEN_C).scale(Q)
    assert da == want
    assert coproduct(UNIT_A) == TensorElem.of(UNIT_A, UNIT_A)
    k2 = GEN_K * GEN_K
    assert coproduct(k2) == TensorElem.of(k2, k2)


def test_counit_examples():
    assert counit(GEN_A * GEN_C).is_zero
    assert counit(GEN_ASTAR * GEN_ASTAR) == ONE
    assert counit(GEN_KINV * GEN_KINV - UNIT_H).is_zero


def test_antipode_examples():
    assert antipode(GEN_C) == GEN_C.scale(-Q)
    assert antipode(antipode(GEN_E, inverse=True)) == GEN_E
    # S^2(c) = q^2 c: apply the generator table twice
    once = antipode(GEN_C)
    assert antipode(once) == GEN_C.scale(Q * Q)
    # derived star-compatibility values
    assert antipode(GEN_ASTAR) == GEN_A
    assert antipode(GEN_CSTAR) == GEN_CSTAR.scale(-QINV)


def test_star_examples():
    # (a c)* = c* a* = q a* c* after normal ordering; the oracle applies
    # the anti-homomorphism then the starred commutation relation
    oracle = GEN_ASTAR * GEN_CSTAR  # a! c! is already normal
    assert star(GEN_A * GEN_C) == oracle.scale(Q)
    assert star(GEN_E) == GEN_F
    rng = random.Random(4)
    for _ in range(20):
        for alg in (ALG_A, ALG_H):
            x = random_elem(alg, rng)
            assert star(star(x)) == x


def test_pair_examples():
    assert pair(GEN_K, GEN_A) == FieldElem.s_power(-1)
    assert pair(GEN_E, GEN_A).is_zero
    # <K^2, (a!)^2> = q^2 via bilinear expansion with the group-like
    # coproduct; cross-checked against the braiding entry sigma_{0-}^{-0}
    got = pair(GEN_K * GEN_K, GEN_ASTAR * GEN_ASTAR)
    assert got == Q * Q
    from cartanq.calculus4d import build_tables
    tables = build_tables()
    assert tables.sigma[3][0][0][3] == got


def test_act_examples():
    # 1 |> x = x
    rng = random.Random(5)
    for _ in range(10):
        x = random_elem(ALG_A, rng)
        assert act_left(UNIT_H, x) == x
        assert act_right(x, UNIT_H) == x
    # X_+ |> c = a!  and  X_z |> a = (q/(q+1)) a
    from cartanq.calculus4d import build_tables
    tables = build_tables()
    assert act_left(tables.X[1], GEN_C) == GEN_ASTAR
    assert act_left(tables.X[2], GEN_A) == GEN_A.scale(Q / (Q + ONE))
    # a <| K = q^-1/2 a: only the a (x) a term of Delta(a) pairs with K
    oracle = AlgebraElem.zero(ALG_A)
    for (m1, m2), c in coproduct(GEN_A).terms.items():
        v = pair(GEN_K, AlgebraElem.mono(ALG_A, m1))
        if not v.is_zero:
            oracle = oracle + AlgebraElem.mono(ALG_A, m2, c * v)
    assert act_right(GEN_A, GEN_K) == oracle
    assert oracle == GEN_A.scale(FieldElem.s_power(-1))


def test_actions_compose():
    rng = random.Random(6)
    for _ in range(10):
        g = random_elem(ALG_H, rng)
        h = random_elem(ALG_H, rng)
        x = random_elem(ALG_A, rng)
        assert act_left(g, act_left(h, x)) == act_left(g * h, x)
        assert act_right(act_right(x, g), h) == act_right(x, g * h)


def test_translate_right_is_multiplicative():
    # (gh) <- y = (g <- y_(1))(h <- y_(2))
    rng = random.Random(7)
    for _ in range(10):
        g = random_elem(ALG_H, rng, degree=1)
        h = random_elem(ALG_H, rng, degree=1)
        y = random_elem(ALG_A, rng, degree=1)
        lhs = translate_right(g * h, y)
        rhs = AlgebraElem.zero(ALG_H)
        for (m1, m2), c in coproduct(y).terms.items():
            rhs = rhs + (translate_right(g, AlgebraElem.mono(ALG_A, m1))
                         * translate_right(h, AlgebraElem.mono(ALG_A, m2))).scale(c)
        assert lhs == rhs


def test_normal_form_associativity():
    rng = random.Random(8)
    for alg in (ALG_A, ALG_H):
        for _ in range(25):
            x = random_elem(alg, rng, degree=3)
            y = random_elem(alg, rng, degree=3)
            z = random_elem(alg, rng, degree=3)
            assert (x * y) * z == x * (y * z)


def test_coproduct_is_homomorphism():
    rng = random.Random(9)
    for alg in (ALG_A, ALG_H):
        for _ in range(12):
            x = random_elem(alg, rng)
            y = random_elem(alg, rng)
            assert coproduct(x * y) == coproduct(x) * coproduct(y)


def test_hopf_axioms_pass():
    for alg in (ALG_A, ALG_H):
        for cid, ok, wit in verify_hopf_axioms(alg, 2):
            assert ok, (cid, wit)


def test_hopf_axioms_detect_corrupted_antipode():
    def bad_antipode(x):
        out = AlgebraElem.zero(x.algebra)
        for m, c in x.terms.items():
            if x.algebra == ALG_A and m == (1, 0, 1, 0):  # S(c) with wrong sign
                out = out + AlgebraElem.mono(ALG_A, m, c * Q)
            else:
                out = out + antipode(AlgebraElem.mono(x.algebra, m)).scale(c)
        return out

    results = verify_hopf_axioms(ALG_A, 1, antipode_fn=bad_antipode)
    failures = [r for r in results if not r[1]]
    assert failures
    assert any(r[2] for r in failures)  # carries a witness


def test_quantum_leibniz_on_generators():
    from cartanq.calculus4d import build_tables
    tables = build_tables()
    gens = [GEN_A, GEN_ASTAR, GEN_C, GEN_CSTAR]
    for i in range(4):
        for x in gens:
            for y in gens:
                lhs = act_left(tables.X[i], x * y)
                rhs = x * act_left(tables.X[i], y)
                for j in range(4):
                    if not tables.f[j][i].is_zero:
                        rhs = rhs + act_left(tables.X[j], x) * act_left(tables.f[j][i], y)
                assert lhs == rhs


def test_mono_text_roundtrip():
    for alg in (ALG_A, ALG_H):
        for m in monomials_up_to(alg, 3):
            assert parse_mono(alg, mono_str(alg, m)) == m
