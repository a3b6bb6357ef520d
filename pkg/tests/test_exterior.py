"""Exterior algebra: wedge normal form, coactions, differential, eta basis."""

import itertools
import random

import pytest

from cartanq.qfield import ONE, Q, QINV, LAMBDA
from cartanq.hopfcore import (ALG_A, AlgebraElem, TensorElem, UNIT_A, GEN_A,
                              GEN_ASTAR, GEN_CSTAR, act_left, antipode,
                              random_elem)
from cartanq.calculus4d import build_tables, IDX_OF
from cartanq.exterior import ExteriorCalculus, Form
from cartanq.verifyext import verify_exterior


@pytest.fixture(scope="module")
def ext():
    return ExteriorCalculus(build_tables())


def s(i):
    return IDX_OF[i]


def rand_form(ext, rng, max_degree=2):
    d = rng.randint(0, max_degree)
    w = tuple(rng.choice(ext.normal_words(d)))
    return Form({w: random_elem(ALG_A, rng)})


def test_dimensions(ext):
    assert ext.dimension(0) == 1
    assert ext.dimension(1) == 4
    # 16 minus the 10 independent relations
    assert ext.dimension(2) == 6
    assert [ext.dimension(d) for d in (3, 4, 5)] == [4, 1, 0]


def test_degree2_rewrites(ext):
    b = Form.basis
    w = ext.wedge
    assert w(b(s("-")), b(s("-"))).is_zero
    # wz ^ wz = lambda (q + q^-1) w+ ^ w- = -lambda (q+q^-1) w- ^ w+
    got = w(b(s("z")), b(s("z")))
    want = Form({(s("-"), s("+")): AlgebraElem.unit(ALG_A, -(LAMBDA * (Q + QINV)))})
    assert got == want
    # wz ^ w- = -q^-2 w- ^ wz
    got = w(b(s("z")), b(s("-")))
    assert got == Form.basis(s("-"), s("z")).scale(-QINV * QINV)
    # w0 ^ wz = -wz ^ w0 + lambda^2 w- ^ w+
    got = w(b(s("0")), b(s("z")))
    want = (Form.basis(s("z"), s("0")).scale(-ONE)
            + Form.basis(s("-"), s("+")).scale(LAMBDA * LAMBDA))
    assert got == want


def test_wedge_pushes_coefficients(ext):
    # w- ^ (a w+): since f_{--} = 1 the w- ^ w+ coefficient is the
    # f-translate of a along the diagonal entry
    got = ext.wedge(Form.basis(s("-")), Form({(s("+"),): GEN_A}))
    expanded = Form()
    for j in range(4):
        y = act_left(ext.tables.f[s("-")][j], GEN_A)
        if not y.is_zero:
            expanded = expanded + ext.wedge(Form({(j,): y}), Form.basis(s("+")))
    assert got == expanded
    assert got.terms[(s("-"), s("+"))] == GEN_A


def test_wedge_associativity(ext):
    rng = random.Random(10)
    for i, j, k in itertools.product(range(4), repeat=3):
        b = Form.basis
        assert ext.wedge(ext.wedge(b(i), b(j)), b(k)) == \
            ext.wedge(b(i), ext.wedge(b(j), b(k)))
    for _ in range(15):
        f1, f2, f3 = (rand_form(ext, rng) for _ in range(3))
        assert ext.wedge(ext.wedge(f1, f2), f3) == ext.wedge(f1, ext.wedge(f2, f3))


def test_reduction_cross_check(ext):
    for degree in (2, 3):
        assert ext.reduction_cross_check(degree) is None
        assert ext.reduction_cross_check(degree, "eta") is None


def test_d_on_generators(ext):
    c0 = ext.tables.c0
    want = (Form({(s("z"),): GEN_A.scale(Q / (Q + ONE))})
            + Form({(s("+"),): GEN_CSTAR.scale(-Q)})
            + Form({(s("0"),): GEN_A.scale(c0)}))
    assert ext.d_scalar(GEN_A) == want
    assert ext.d_scalar(AlgebraElem.unit(ALG_A)).is_zero


def test_d_omega_from_inverse_formulas(ext):
    # d(w-) computed as d(c!) ^ d(a!) - q d(a!) ^ d(c!)
    dcs = ext.d_scalar(GEN_CSTAR)
    das = ext.d_scalar(GEN_ASTAR)
    oracle = ext.wedge(dcs, das) - ext.wedge(das, dcs).scale(Q)
    assert ext.d_omega(s("-")) == oracle
    # d^2 a! = 0
    assert ext.differential(das).is_zero


def test_differential_graded_leibniz(ext):
    rng = random.Random(11)
    for _ in range(12):
        a = rand_form(ext, rng)
        b = rand_form(ext, rng)
        lhs = ext.differential(ext.wedge(a, b))
        rhs = ext.wedge(ext.differential(a), b)
        for deg, part in a.homogeneous().items():
            sign = -ONE if deg % 2 else ONE
            rhs = rhs + ext.wedge(part, ext.differential(b)).scale(sign)
        assert lhs == rhs


def test_coactions(ext):
    J = ext.tables.J
    co = ext.coact_right(Form.basis(s("-")))
    want = {}
    for k in range(4):
        if not J[k][s("-")].is_zero:
            want[(k,)] = TensorElem.of(UNIT_A, J[k][s("-")])
    assert co == want
    # left coaction of w0 is trivial
    left = ext.coact_left(Form.basis(s("0")))
    assert left == {(s("0"),): TensorElem.of(UNIT_A, UNIT_A)}


def test_eta_basis(ext):
    # round-trip and the explicit eta_0 expansion
    for i in range(4):
        assert ext.omega_from_eta(i) == Form.basis(i)
    J = ext.tables.J
    oracle = Form.basis(s("0"))
    for i in (s("-"), s("+"), s("z")):
        sj = antipode(J[i][s("0")])
        for w, y in ext.push_left((i,), sj).items():
            oracle = oracle + Form({w: y})
    assert ext.eta_form(s("0")) == oracle
    # right invariance
    for i in range(4):
        co = ext.coact_right(ext.eta_form(i))
        want = {w: TensorElem.of(x, UNIT_A) for w, x in ext.eta_form(i).terms.items()}
        assert co == want


def test_eta_conversions_roundtrip(ext):
    rng = random.Random(12)
    for _ in range(12):
        f1 = rand_form(ext, rng)
        assert ext.from_eta(ext.to_eta(f1)) == f1


def test_exterior_group_passes(ext):
    for r in verify_exterior(ext, seed=0):
        assert r.ok, (r.check_id, r.witness)


def test_coacted_form_type(ext):
    from cartanq.exterior import CoactedForm
    rng = random.Random(14)
    for side in ("left", "right"):
        for _ in range(6):
            f1 = rand_form(ext, rng)
            co = ext.coact(f1, side)
            assert isinstance(co, CoactedForm) and co.side == side
            assert co.counit_collapse() == f1


def test_right_operator_values(ext):
    tables = ext.tables
    # right Lie derivatives kill the left-invariant basis; the f-actions
    # are diagonal there
    for i in range(4):
        for k in range(4):
            assert ext.LR(i, Form.basis(k)).is_zero
            for j in range(4):
                want = Form.basis(k) if i == j else Form.zero()
                assert ext.LRf(i, j, Form.basis(k)) == want
    # on the right-invariant basis: LRf_{ij}(eta_k) = sigma_{ik}^{lj} eta_l
    # and LR_i(eta_k) = -C^k_{li} eta_l
    for i in range(4):
        for j in range(4):
            for k in range(4):
                got = ext.LRf(i, j, ext.eta_form(k))
                want = Form.zero()
                for l in range(4):
                    v = tables.sigma[i][k][l][j]
                    if not v.is_zero:
                        want = want + ext.eta_form(l).scale(v)
                assert got == want
    for i in range(4):
        for k in range(4):
            got = ext.LR(i, ext.eta_form(k))
            want = Form.zero()
            for l in range(4):
                v = tables.C[k][l][i]
                if not v.is_zero:
                    want = want - ext.eta_form(l).scale(v)
            assert got == want
    # right inner derivative base cases
    assert ext.inner_right(s("z"), ext.eta_form(s("-"))).is_zero
    assert ext.inner_right(s("-"), ext.eta_form(s("-"))) == Form.scalar(None)
