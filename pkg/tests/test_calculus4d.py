"""Calculus tables: braiding, structure constants, kernels, t-matrix."""

import json

import pytest

from cartanq.qfield import ONE, Q, QINV, LAMBDA
from cartanq.hopfcore import ALG_H, AlgebraElem, UNIT_H, antipode
from cartanq import calculus4d as c4
from cartanq.calculus4d import (IDX_OF, build_tables, TableMismatch,
                                verify_kernels, verify_t_matrix,
                                verify_fundamental_identities,
                                verify_Sf_matrices, export_table, flat)


@pytest.fixture(scope="module")
def tables():
    return build_tables()


def s(i):
    return IDX_OF[i]


def test_sigma_spot_values(tables):
    assert tables.sigma[s("-")][s("z")][s("-")][s("0")] == ONE + Q * Q
    assert tables.sigma[s("-")][s("-")][s("-")][s("-")] == ONE
    # an unlisted entry vanishes
    assert tables.sigma[s("-")][s("-")][s("+")][s("+")].is_zero
    # count of nonzero components
    nonzero = sum(1 for i in range(4) for j in range(4) for k in range(4)
                  for l in range(4) if not tables.sigma[i][j][k][l].is_zero)
    assert nonzero == 32


def test_C_spot_values(tables):
    assert tables.C[s("-")][s("-")][s("z")] == -QINV
    assert tables.C[s("-")][s("z")][s("-")] == QINV
    assert tables.C[s("z")][s("-")][s("+")] == Q + QINV
    assert tables.C[s("0")][s("z")][s("0")] == -LAMBDA


def test_kernels(tables):
    assert len(tables.sKer) == 10
    assert len(tables.tKer) == 10
    for r in verify_kernels(tables):
        assert r.ok, (r.check_id, r.witness)


def test_t_extraction_examples(tables):
    # from X_+ (x) X_- + X_- (x) X_+: t^{+-}_{-+} = 1 and nothing else
    p = flat(s("+"), s("-"))
    row = tables.t[p]
    assert row[flat(s("-"), s("+"))] == ONE
    assert all(v.is_zero for r, v in enumerate(row) if r != flat(s("-"), s("+")))
    # a bare pivot: t^{--} = 0 entirely
    assert all(v.is_zero for v in tables.t[flat(s("-"), s("-"))])
    # the mixed rows in their displayed orientation
    assert tables.t[flat(s("0"), s("-"))][flat(s("-"), s("0"))] == QINV * QINV
    assert tables.t[flat(s("0"), s("+"))][flat(s("+"), s("0"))] == Q * Q


def test_t_quadratic_and_relt(tables):
    for r in verify_t_matrix(tables):
        assert r.ok, (r.check_id, r.witness)


def test_fundamental_identities(tables):
    for r in verify_fundamental_identities(tables):
        assert r.ok, (r.check_id, r.witness)


def test_commutator_display_value(tables):
    # [X_-, X_+] = (q + q^-1) X_z - lambda X_0
    i, j = s("-"), s("+")
    lhs = tables.X[i] * tables.X[j]
    for (k, l, v) in tables.sigma_cols.get((i, j), []):
        lhs = lhs - (tables.X[k] * tables.X[l]).scale(v)
    want = tables.X[s("z")].scale(Q + QINV) - tables.X[s("0")].scale(LAMBDA)
    assert lhs == want


def test_Sf_matrices(tables):
    for r in verify_Sf_matrices(tables):
        assert r.ok, (r.check_id, r.witness)
    # S(f_{z-}) = -f_00 f_{z-}
    assert antipode(tables.f[s("z")][s("-")]) == \
        -(tables.f[s("0")][s("0")] * tables.f[s("z")][s("-")])
    # (S(f) f)_zz = 1
    acc = AlgebraElem.zero(ALG_H)
    for j in range(4):
        acc = acc + tables.Sf(s("z"), j) * tables.f[j][s("z")]
    assert acc == UNIT_H


def test_corrupted_golden_fixture_fails_with_witness(tmp_path):
    data = c4.load_golden("sigma")
    data["entries"]["-z|-0"] = "s^4 + 2"
    bad_path = tmp_path / "sigma.json"
    bad_path.write_text(json.dumps(data))
    with pytest.raises(TableMismatch) as exc:
        build_tables(golden_overrides={"sigma": str(bad_path)})
    assert "-z" in str(exc.value) and "computed" in str(exc.value)


def test_corrupted_kernel_fixture_reported(tables, tmp_path):
    data = c4.load_golden("sq")
    data["vectors"][3] = {"+z": "s^4", "z+": "2"}
    bad_path = tmp_path / "sq.json"
    bad_path.write_text(json.dumps(data))
    bad_tables = build_tables(golden_overrides={"sq": str(bad_path)})
    results = verify_kernels(bad_tables)
    failed = [r for r in results if not r.ok]
    assert failed and all(r.witness for r in failed)


def test_export_table_schema(tables):
    data = export_table(tables, "sigma")
    assert data["table"] == "sigma"
    assert data["basis"] == ["-", "+", "z", "0"]
    assert data["entries"][s("-")][s("z")][s("-")][s("0")] == "s^4 + 1"
    data = export_table(tables, "f")
    entry = data["entries"][s("z")][s("-")]
    assert entry == [{"monomial": "F K^-1", "coeff": "s^3 - s^-1"}]
    data = export_table(tables, "C")
    assert data["entries"][s("-")][s("-")][s("z")] == "-s^-2"
