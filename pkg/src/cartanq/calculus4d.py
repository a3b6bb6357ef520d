"""The 4D+ calculus data: tangent basis, f and J tables, braiding, structure
constants, kernels of (1 - braiding) on both sides, and the t-matrix.

Index order is (-, +, z, 0) <-> (0, 1, 2, 3) everywhere; a tensor-square
index pair (i, j) flattens to 4*i + j.  The braiding array is stored as
sigma[i][j][k][l] = coefficient of w_k (x) w_l in sigma(w_i (x) w_j), which
equals <f_il, J_kj>.

The t-matrix is carried in two normalizations:

  * t (extraction): rows read off from an echelonized kernel basis, pivot
    coefficient 1 and t^{ij}_{ij} = 0.  These rows give the odd-generator
    rewrite rules in their displayed orientation.
  * t_morphism: rows of P^T - I where P projects onto ker(1 - braiding)
    along its image.  This is the normalization for which the braid/f
    compatibility (the "relt"/"st" identities) holds entrywise.

Both satisfy the defining quadratic identity on all 256 index tuples.
"""

import json
from dataclasses import dataclass, field
from importlib import resources

from .qfield import (FieldElem, FMatrix, ZERO, ONE, Q, QINV, parse_scalar,
                     field_str, kernel_basis, echelonize, rref,
                     same_span, in_span)
from . import hopfcore as hc
from .hopfcore import (ALG_A, ALG_H, AlgebraElem, TensorElem, UNIT_H,
                       pair, act_left, act_right, antipode, coproduct, counit,
                       mono_str, parse_mono, elem_str)
from .report import check

IDX = ("-", "+", "z", "0")
IDX_OF = {"-": 0, "+": 1, "z": 2, "0": 3}
LAMBDA = Q - QINV


class TableMismatch(Exception):
    """A computed table disagrees with the golden fixture."""


class TExtractionAmbiguous(Exception):
    """The kernel does not admit the requested pivot structure."""


def flat(i, j):
    return 4 * i + j


def unflat(p):
    return divmod(p, 4)


def pair_name(p):
    i, j = unflat(p)
    return IDX[i] + IDX[j]


# ---------------------------------------------------------------------------
# Golden fixtures
# ---------------------------------------------------------------------------

_GOLDEN_FILES = {
    "sigma": "sigma.json", "C": "C.json", "f": "f.json", "J": "J.json",
    "X": "X.json", "Sf": "Sf.json", "Sf-inv": "Sf_inv.json",
    "sq": "sq.json", "tq": "tq.json", "ii": "ii.json",
    "d-generators": "d_gens.json", "commutators": "commutators.json",
}


def load_golden(name, override_path=None):
    if override_path is not None:
        with open(override_path) as fh:
            return json.load(fh)
    ref = resources.files("cartanq.data.golden") / _GOLDEN_FILES[name]
    return json.loads(ref.read_text())


def golden_elem(algebra, terms):
    out = AlgebraElem.zero(algebra)
    for mono, coeff in terms:
        out = out + AlgebraElem.mono(algebra, parse_mono(algebra, mono), parse_scalar(coeff))
    return out


def golden_vector(d):
    """Sparse pair->coeff dict to a flat 16-tuple."""
    v = [ZERO] * 16
    for key, coeff in d.items():
        i, j = IDX_OF[key[0]], IDX_OF[key[1]]
        v[flat(i, j)] = parse_scalar(coeff)
    return tuple(v)


# ---------------------------------------------------------------------------
# Table container
# ---------------------------------------------------------------------------

@dataclass
class CalculusTables:
    X: tuple                  # 4 H-elements
    f: tuple                  # 4x4 H-elements
    J: tuple                  # 4x4 A-elements
    c0: FieldElem             # the scalar 1 - q/(q+1)^2
    sigma: tuple              # sigma[i][j][k][l]
    C: tuple                  # C[k][i][j]
    sKer: tuple               # kernel basis of (1 - braiding) on forms
    tKer: tuple               # kernel basis of (1 - transposed braiding)
    t: tuple                  # extraction t, rows indexed by label pair
    t_morphism: tuple         # morphism-normalized t
    t_pivots: tuple           # labels that arise as kernel-presentation pivots
    golden: dict = field(default_factory=dict, repr=False)

    # sparse helpers, built on demand
    def __post_init__(self):
        self.sigma_rows = {}
        self.sigma_cols = {}
        for i in range(4):
            for j in range(4):
                for k in range(4):
                    for l in range(4):
                        v = self.sigma[i][j][k][l]
                        if not v.is_zero:
                            self.sigma_rows.setdefault((i, j), []).append((k, l, v))
                            self.sigma_cols.setdefault((k, l), []).append((i, j, v))
        self.t_rows = {}
        for p in range(16):
            row = [(unflat(r), v) for r, v in enumerate(self.t[p]) if not v.is_zero]
            if row:
                self.t_rows[unflat(p)] = row

    def sigma_entry(self, i, j, k, l):
        return self.sigma[i][j][k][l]

    def t_entry(self, i, j, k, l):
        return self.t[flat(i, j)][flat(k, l)]

    def Sf(self, i, j):
        return antipode(self.f[i][j])

    def Sf_inv(self, i, j):
        return antipode(self.f[i][j], inverse=True)


def _sigma_matrix(sigma):
    return FMatrix([[sigma[p // 4][p % 4][r // 4][r % 4] for r in range(16)]
                    for p in range(16)])


def extract_t(tker):
    """Read the presentation t off an echelonized kernel basis.

    For each label pair p the kernel is echelonized with p fronted and the
    remaining coordinates in descending flat order; the pivot-p row (pivot
    coefficient 1, zero coefficient on every other pivot of that run) gives
    the t-row for p, with t^{ij}_{ij} = 0 by construction.  Labels with no
    kernel support would stay undefined-as-zero and are reported; for this
    calculus every label is covered.
    """
    t = [[ZERO] * 16 for _ in range(16)]
    pivots = []
    missing = []
    # Plain descending run fixes which labels are presentation pivots.
    desc = list(range(15, -1, -1))
    desc_pivots = {col for col, _ in echelonize(tker, 16, desc)}
    for p in range(16):
        order = [p] + [c for c in range(15, -1, -1) if c != p]
        row = None
        for col, r in echelonize(tker, 16, order):
            if col == p:
                row = r
                break
        if row is None:
            missing.append(pair_name(p))
            continue
        if p in desc_pivots:
            pivots.append(p)
        for r in range(16):
            if r != p and not row[r].is_zero:
                t[p][r] = row[r]
    seen = set(pivots)
    if len(seen) != len(pivots):
        raise TExtractionAmbiguous("duplicate pivots in kernel echelonization")
    return tuple(tuple(r) for r in t), tuple(sorted(pivots)), tuple(missing)


def morphism_t(sigma):
    """t in the morphism normalization: rows of P^T - I, with P the
    projection onto ker(1 - Sigma) along im(1 - Sigma)."""
    Sig = _sigma_matrix(sigma)
    I16 = FMatrix.identity(16)
    M = I16 - Sig
    ker = kernel_basis(M)
    if len(kernel_basis(M @ M)) != len(ker):
        raise TExtractionAmbiguous("braiding not semisimple at eigenvalue 1")
    cols = [tuple(M.entries[r][c] for r in range(16)) for c in range(16)]
    _, piv = rref([list(c) for c in cols], 16)
    im_basis = [cols[r] for r, _ in piv]
    basis = list(ker) + im_basis
    if len(basis) != 16:
        raise TExtractionAmbiguous("kernel/image do not span")
    aug = [[basis[c][r] for c in range(16)] + [ONE if r == c else ZERO for c in range(16)]
           for r in range(16)]
    rows, pv = rref(aug, 32, list(range(16)))
    row_of = {col: sel for sel, col in pv}
    inv = [[rows[row_of[r]][16 + c] for c in range(16)] for r in range(16)]
    P = [[ZERO] * 16 for _ in range(16)]
    for p in range(16):
        for i in range(len(ker)):
            co = inv[i][p]
            if not co.is_zero:
                for r in range(16):
                    if not ker[i][r].is_zero:
                        P[r][p] = P[r][p] + co * ker[i][r]
    return tuple(tuple(P[r][p] - (ONE if r == p else ZERO) for r in range(16))
                 for p in range(16))


# ---------------------------------------------------------------------------
# Building the tables
# ---------------------------------------------------------------------------

def build_tables(golden_overrides=None):
    """Construct all calculus data, cross-checking the braiding and the
    structure constants against the golden tables.  Raises TableMismatch on
    the first discrepancy (golden_overrides maps table name to a path and is
    meant for corruption tests)."""
    overrides = golden_overrides or {}
    golden = {name: load_golden(name, overrides.get(name)) for name in _GOLDEN_FILES}

    X = tuple(golden_elem(ALG_H, golden["X"]["entries"][IDX[i]]) for i in range(4))
    ZH = AlgebraElem.zero(ALG_H)
    ZA = AlgebraElem.zero(ALG_A)
    f = tuple(tuple(golden_elem(ALG_H, golden["f"]["entries"].get(IDX[i] + IDX[j], []))
                    for j in range(4)) for i in range(4))
    J = tuple(tuple(golden_elem(ALG_A, golden["J"]["entries"].get(IDX[i] + IDX[j], []))
                    for j in range(4)) for i in range(4))
    c0 = parse_scalar("1 - q/(q+1)^2")

    sigma = tuple(tuple(tuple(tuple(pair(f[i][l], J[k][j]) for l in range(4))
                              for k in range(4)) for j in range(4)) for i in range(4))
    want_sigma = golden["sigma"]["entries"]
    for i in range(4):
        for j in range(4):
            for k in range(4):
                for l in range(4):
                    key = f"{IDX[i]}{IDX[j]}|{IDX[k]}{IDX[l]}"
                    want = parse_scalar(want_sigma[key]) if key in want_sigma else ZERO
                    if sigma[i][j][k][l] != want:
                        raise TableMismatch(
                            f"sigma[{IDX[i]}{IDX[j]}][{IDX[k]}{IDX[l]}]: computed "
                            f"{field_str(sigma[i][j][k][l])}, golden {field_str(want)}")

    C = tuple(tuple(tuple(pair(X[j], J[i][k]) for j in range(4)) for i in range(4))
              for k in range(4))
    want_C = golden["C"]["entries"]
    for k in range(4):
        for i in range(4):
            for j in range(4):
                key = f"{IDX[k]}|{IDX[i]}{IDX[j]}"
                want = parse_scalar(want_C[key]) if key in want_C else ZERO
                if C[k][i][j] != want:
                    raise TableMismatch(
                        f"C^{IDX[k]}[{IDX[i]}{IDX[j]}]: computed "
                        f"{field_str(C[k][i][j])}, golden {field_str(want)}")

    Sig = _sigma_matrix(sigma)
    I16 = FMatrix.identity(16)
    sKer = tuple(kernel_basis(I16 - Sig.transpose()))
    tKer = tuple(kernel_basis(I16 - Sig))
    t, pivots, missing = extract_t(tKer)
    if missing:
        raise TExtractionAmbiguous(f"labels without kernel support: {missing}")
    t_mor = morphism_t(sigma)
    return CalculusTables(X=X, f=f, J=J, c0=c0, sigma=sigma, C=C,
                          sKer=sKer, tKer=tKer, t=t, t_morphism=t_mor,
                          t_pivots=pivots, golden=golden)


# ---------------------------------------------------------------------------
# Verification: kernels and t
# ---------------------------------------------------------------------------

def verify_kernels(tables):
    results = []
    golden = tables.golden
    results.append(check("kernels.sigma.dim", len(tables.sKer) == 10,
                         f"dim ker(1-sigma) = {len(tables.sKer)}"))
    results.append(check("kernels.sigma-t.dim", len(tables.tKer) == 10,
                         f"dim ker(1-sigma^t) = {len(tables.tKer)}"))

    sq_golden = [golden_vector(d) for d in golden["sq"]["vectors"]]
    tq_golden = [golden_vector(d) for d in golden["tq"]["vectors"]]
    results.append(check("kernels.sigma.span", same_span(tables.sKer, sq_golden, 16),
                         "computed ker(1-sigma) differs from the golden list"))
    results.append(check("kernels.sigma-t.span", same_span(tables.tKer, tq_golden, 16),
                         "computed ker(1-sigma^t) differs from the golden list"))

    bad = None
    for n, v in enumerate(sq_golden):
        if not in_span(tables.sKer, v, 16):
            bad = f"golden element {n} not in computed ker(1-sigma)"
            break
    results.append(check("kernels.sigma.contains-golden", bad is None, bad))
    bad = None
    for n, v in enumerate(tq_golden):
        if not in_span(tables.tKer, v, 16):
            bad = f"golden element {n} not in computed ker(1-sigma^t)"
            break
    results.append(check("kernels.sigma-t.contains-golden", bad is None, bad))

    # numeric cross-check at s = 3/2 (q = 9/4): evaluate both defect
    # matrices over Q and recompute the nullities
    from fractions import Fraction
    sv = Fraction(3, 2)
    Sig = _sigma_matrix(tables.sigma)
    I16 = FMatrix.identity(16)

    def eval_mat(m):
        return [[x.evaluate(sv) for x in row] for row in m.entries]

    def q_rank(rows):
        rows = [row[:] for row in rows]
        rank = 0
        for col in range(16):
            piv = next((r for r in range(rank, 16) if rows[r][col] != 0), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            pv = rows[rank][col]
            rows[rank] = [x / pv for x in rows[rank]]
            for r in range(16):
                if r != rank and rows[r][col] != 0:
                    fr = rows[r][col]
                    rows[r] = [x - fr * y for x, y in zip(rows[r], rows[rank])]
            rank += 1
        return rank

    null_s = 16 - q_rank(eval_mat(I16 - Sig.transpose()))
    null_t = 16 - q_rank(eval_mat(I16 - Sig))
    results.append(check("kernels.numeric-dim-at-s", null_s == 10 and null_t == 10,
                         f"nullities at s = 3/2: {null_s}, {null_t}"))
    return results


def _t_quadratic_ok(tables, t):
    """t^{ij}_{kl} - sigma_{kl}^{ij} + delta_ik delta_jl - t^{ij}_{mn} sigma_{kl}^{mn} = 0."""
    sigma = tables.sigma
    for p in range(16):
        i, j = unflat(p)
        row = [(unflat(m), t[p][m]) for m in range(16) if not t[p][m].is_zero]
        for r in range(16):
            k, l = unflat(r)
            acc = t[p][r] - sigma[k][l][i][j] + (ONE if p == r else ZERO)
            for (mm, nn), v in row:
                sv = sigma[k][l][mm][nn]
                if not sv.is_zero:
                    acc = acc - v * sv
            if not acc.is_zero:
                return f"fails at labels {pair_name(p)}, {pair_name(r)}"
    return None


def _relt_ok(tables, t):
    """sum_kl t^{ij}_{kl} f_rk f_sl = sum_kl t^{kl}_{rs} f_ki f_lj in H."""
    f = tables.f
    ZH = AlgebraElem.zero(ALG_H)
    rows = [[(unflat(m), t[p][m]) for m in range(16) if not t[p][m].is_zero]
            for p in range(16)]
    cols = [[(unflat(m), t[m][r]) for m in range(16) if not t[m][r].is_zero]
            for r in range(16)]
    for p in range(16):
        i, j = unflat(p)
        for m2 in range(16):
            r, s = unflat(m2)
            lhs = ZH
            for (k, l), v in rows[p]:
                if not f[r][k].is_zero and not f[s][l].is_zero:
                    lhs = lhs + (f[r][k] * f[s][l]).scale(v)
            rhs = ZH
            for (k, l), v in cols[m2]:
                if not f[k][i].is_zero and not f[l][j].is_zero:
                    rhs = rhs + (f[k][i] * f[l][j]).scale(v)
            if lhs != rhs:
                return f"fails at labels {pair_name(p)}, {pair_name(m2)}"
    return None


def _st_ok(tables, t):
    """Antipode image of the relt identity, checked entrywise in H."""
    Sf = [[tables.Sf(i, j) for j in range(4)] for i in range(4)]
    ZH = AlgebraElem.zero(ALG_H)
    rows = [[(unflat(m), t[p][m]) for m in range(16) if not t[p][m].is_zero]
            for p in range(16)]
    cols = [[(unflat(m), t[m][r]) for m in range(16) if not t[m][r].is_zero]
            for r in range(16)]
    for p in range(16):
        i, j = unflat(p)
        for m2 in range(16):
            r, s = unflat(m2)
            lhs = ZH
            for (k, l), v in rows[p]:
                if not Sf[s][l].is_zero and not Sf[r][k].is_zero:
                    lhs = lhs + (Sf[s][l] * Sf[r][k]).scale(v)
            rhs = ZH
            for (k, l), v in cols[m2]:
                if not Sf[l][j].is_zero and not Sf[k][i].is_zero:
                    rhs = rhs + (Sf[l][j] * Sf[k][i]).scale(v)
            if lhs != rhs:
                return f"fails at labels {pair_name(p)}, {pair_name(m2)}"
    return None


def verify_t_matrix(tables):
    results = []
    golden = tables.golden
    wit = _t_quadratic_ok(tables, tables.t)
    results.append(check("kernels.t.quadratic", wit is None, wit))
    wit = _t_quadratic_ok(tables, tables.t_morphism)
    results.append(check("kernels.t-morphism.quadratic", wit is None, wit))
    wit = _relt_ok(tables, tables.t_morphism)
    results.append(check("kernels.t-morphism.relt", wit is None, wit))
    wit = _st_ok(tables, tables.t_morphism)
    results.append(check("kernels.t-morphism.st", wit is None, wit))

    # odd relations generated by extraction t == golden display (mutual span)
    ii_golden = [golden_vector(d) for d in golden["ii"]["relations"]]
    gen_rel = []
    for p in range(16):
        v = [ZERO] * 16
        v[p] = ONE
        for r in range(16):
            if not tables.t[p][r].is_zero:
                v[r] = v[r] + tables.t[p][r]
        gen_rel.append(tuple(v))
    results.append(check("kernels.t.odd-relations-span",
                         same_span(gen_rel, ii_golden, 16),
                         "generated odd relations differ from the golden display"))
    # morphism rows generate the same span
    gen_rel_m = []
    for p in range(16):
        v = list(tables.t_morphism[p])
        v[p] = v[p] + ONE
        gen_rel_m.append(tuple(v))
    results.append(check("kernels.t-morphism.odd-relations-span",
                         same_span(gen_rel_m, ii_golden, 16),
                         "morphism-t relations differ from the golden display"))
    # the displayed orientation: each pivot row matches the golden relation
    # up to overall scaling by construction of the extraction; check the two
    # sample rows the display normalizes differently than the echelon form.
    results.append(check(
        "kernels.t.pivot-normalization",
        all(tables.t[flat(i, i)] == tuple([ZERO] * 16) for i in range(4)),
        "square labels should carry zero t-rows"))
    return results


# ---------------------------------------------------------------------------
# Verification: fundamental identities in H and A
# ---------------------------------------------------------------------------

def verify_fundamental_identities(tables):
    X, f, J, sigma, C = tables.X, tables.f, tables.J, tables.sigma, tables.C
    Sf = [[tables.Sf(i, j) for j in range(4)] for i in range(4)]
    ZH = AlgebraElem.zero(ALG_H)
    ZA = AlgebraElem.zero(ALG_A)
    gens = [hc.GEN_A, hc.GEN_ASTAR, hc.GEN_C, hc.GEN_CSTAR]
    gen_names = ["a", "a!", "c", "c!"]
    results = []

    # neco
    bad = None
    for i in range(4):
        for j in range(4):
            rhs = TensorElem((ALG_H, ALG_H))
            for k in range(4):
                rhs = rhs + TensorElem.of(f[i][k], f[k][j])
            if coproduct(f[i][j]) != rhs:
                bad = f"Delta(f[{IDX[i]}{IDX[j]}])"
                break
            if counit(f[i][j]) != (ONE if i == j else ZERO):
                bad = f"eps(f[{IDX[i]}{IDX[j]}])"
                break
        rhs = TensorElem.of(UNIT_H, X[i])
        for j in range(4):
            rhs = rhs + TensorElem.of(X[j], f[j][i])
        if coproduct(X[i]) != rhs or not counit(X[i]).is_zero:
            bad = f"Delta(X[{IDX[i]}])"
        if bad:
            break
    results.append(check("identities.neco", bad is None, bad))

    # coJ
    bad = None
    for i in range(4):
        for j in range(4):
            rhs = TensorElem((ALG_A, ALG_A))
            for k in range(4):
                rhs = rhs + TensorElem.of(J[i][k], J[k][j])
            if coproduct(J[i][j]) != rhs or counit(J[i][j]) != (ONE if i == j else ZERO):
                bad = f"J[{IDX[i]}{IDX[j]}]"
                break
        if bad:
            break
    results.append(check("identities.coJ", bad is None, bad))

    # coJf: J_ki (x <| f_kj) = (f_ik |> x) J_jk
    bad = None
    for i in range(4):
        for j in range(4):
            for x, nm in zip(gens, gen_names):
                lhs = ZA
                rhs = ZA
                for k in range(4):
                    lhs = lhs + J[k][i] * act_right(x, f[k][j])
                    rhs = rhs + act_left(f[i][k], x) * J[j][k]
                if lhs != rhs:
                    bad = f"(i,j,x) = ({IDX[i]},{IDX[j]},{nm})"
                    break
            if bad:
                break
        if bad:
            break
    results.append(check("identities.coJf", bad is None, bad))

    # ff: sigma_ij^rs f_rn f_sk = f_ir f_js sigma_rs^nk
    bad = None
    for i in range(4):
        for j in range(4):
            for n in range(4):
                for k in range(4):
                    lhs = ZH
                    for (r, s, v) in tables.sigma_rows.get((i, j), []):
                        if not f[r][n].is_zero and not f[s][k].is_zero:
                            lhs = lhs + (f[r][n] * f[s][k]).scale(v)
                    rhs = ZH
                    for (r, s, v) in tables.sigma_cols.get((n, k), []):
                        if not f[i][r].is_zero and not f[j][s].is_zero:
                            rhs = rhs + (f[i][r] * f[j][s]).scale(v)
                    if lhs != rhs:
                        bad = f"(i,j,n,k) = ({IDX[i]},{IDX[j]},{IDX[n]},{IDX[k]})"
    results.append(check("identities.ff", bad is None, bad))

    # quat relations; the coefficient of X_k X_l carries input pair (k,l)
    bad = None
    for i in range(4):
        for j in range(4):
            lhs = X[i] * X[j]
            for (k, l, v) in tables.sigma_cols.get((i, j), []):
                lhs = lhs - (X[k] * X[l]).scale(v)
            rhs = ZH
            for k in range(4):
                if not C[k][i][j].is_zero:
                    rhs = rhs + X[k].scale(C[k][i][j])
            if lhs != rhs:
                bad = f"(i,j) = ({IDX[i]},{IDX[j]})"
                break
        if bad:
            break
    results.append(check("identities.quat.XX", bad is None, bad))

    bad = None
    for k in range(4):
        for n in range(4):
            for l in range(4):
                lhs = X[k] * f[n][l]
                rhs = ZH
                for (i, j, v) in tables.sigma_cols.get((k, l), []):
                    if not f[n][i].is_zero:
                        rhs = rhs + (f[n][i] * X[j]).scale(v)
                if lhs != rhs:
                    bad = f"(k,n,l) = ({IDX[k]},{IDX[n]},{IDX[l]})"
    results.append(check("identities.quat.Xf", bad is None, bad))

    bad = None
    for i in range(4):
        for j in range(4):
            for k in range(4):
                lhs = f[i][j] * X[k]
                for m in range(4):
                    for n in range(4):
                        if not C[i][m][n].is_zero:
                            lhs = lhs + (f[m][j] * f[n][k]).scale(C[i][m][n])
                rhs = ZH
                for (p, qq, v) in tables.sigma_cols.get((j, k), []):
                    if not f[i][qq].is_zero:
                        rhs = rhs + (X[p] * f[i][qq]).scale(v)
                for l in range(4):
                    if not C[l][j][k].is_zero:
                        rhs = rhs + f[i][l].scale(C[l][j][k])
                if lhs != rhs:
                    bad = f"(i,j,k) = ({IDX[i]},{IDX[j]},{IDX[k]})"
    results.append(check("identities.quat.Cff", bad is None, bad))

    # ja: the bracket equals <X_j, J_im> X_m
    bad = None
    for i in range(4):
        for j in range(4):
            lhs = X[i] * X[j]
            for (k, l, v) in tables.sigma_cols.get((i, j), []):
                lhs = lhs - (X[k] * X[l]).scale(v)
            rhs = ZH
            for m in range(4):
                v = pair(X[j], J[i][m])
                if not v.is_zero:
                    rhs = rhs + X[m].scale(v)
            if lhs != rhs:
                bad = f"(i,j) = ({IDX[i]},{IDX[j]})"
    results.append(check("identities.ja", bad is None, bad))

    # the displayed commutator table
    bad = None
    comm = tables.golden["commutators"]["entries"]
    for key, d in comm.items():
        i, j = IDX_OF[key[0]], IDX_OF[key[1]]
        lhs = X[i] * X[j]
        for (k, l, v) in tables.sigma_cols.get((i, j), []):
            lhs = lhs - (X[k] * X[l]).scale(v)
        want = ZH
        for kk, coeff in d.items():
            want = want + X[IDX_OF[kk]].scale(parse_scalar(coeff))
        if lhs != want:
            bad = f"[X_{key[0]}, X_{key[1]}]"
            break
    results.append(check("identities.commutator-table", bad is None, bad))

    # quantum Leibniz, both sides
    bad = None
    R = [antipode(X[i], inverse=True).scale(-ONE) for i in range(4)]
    for i in range(4):
        for x, nx in zip(gens, gen_names):
            for y, ny in zip(gens, gen_names):
                lhs = act_left(X[i], x * y)
                rhs = x * act_left(X[i], y)
                for j in range(4):
                    if not f[j][i].is_zero:
                        rhs = rhs + act_left(X[j], x) * act_left(f[j][i], y)
                if lhs != rhs:
                    bad = f"left (i,x,y) = ({IDX[i]},{nx},{ny})"
                    break
                lhs = act_right(x * y, R[i])
                rhs = act_right(x, R[i]) * y
                for j in range(4):
                    rhs = rhs + act_right(x, antipode(f[j][i], inverse=True)) * act_right(y, R[j])
                if lhs != rhs:
                    bad = f"right (i,x,y) = ({IDX[i]},{nx},{ny})"
                    break
            if bad:
                break
        if bad:
            break
    results.append(check("identities.qLe", bad is None, bad))

    # (X_k |> x) J_ik = x <| X_i
    bad = None
    for i in range(4):
        for x, nm in zip(gens, gen_names):
            lhs = ZA
            for k in range(4):
                lhs = lhs + act_left(X[k], x) * J[i][k]
            if lhs != act_right(x, X[i]):
                bad = f"(i,x) = ({IDX[i]},{nm})"
    results.append(check("identities.xJ", bad is None, bad))

    # idS
    bad = None
    for i in range(4):
        for k in range(4):
            acc1 = ZH
            acc2 = ZH
            for j in range(4):
                acc1 = acc1 + Sf[i][j] * f[j][k]
                acc2 = acc2 + f[i][j] * Sf[j][k]
            want = UNIT_H if i == k else ZH
            if acc1 != want or acc2 != want:
                bad = f"S(f)f at ({IDX[i]},{IDX[k]})"
    for i in range(4):
        rhs = ZH
        for j in range(4):
            rhs = rhs - X[j] * Sf[j][i]
        if antipode(X[i]) != rhs:
            bad = f"S(X_{IDX[i]})"
    results.append(check("identities.idS", bad is None, bad))

    # ids: sigma_ij^rs S(f_sn) S(f_rk) = S(f_jr) S(f_is) sigma_sr^kn
    bad = None
    for i in range(4):
        for j in range(4):
            for n in range(4):
                for k in range(4):
                    lhs = ZH
                    for (r, s, v) in tables.sigma_rows.get((i, j), []):
                        if not Sf[s][n].is_zero and not Sf[r][k].is_zero:
                            lhs = lhs + (Sf[s][n] * Sf[r][k]).scale(v)
                    rhs = ZH
                    for r in range(4):
                        for s in range(4):
                            v = sigma[s][r][k][n]
                            if not v.is_zero and not Sf[j][r].is_zero and not Sf[i][s].is_zero:
                                rhs = rhs + (Sf[j][r] * Sf[i][s]).scale(v)
                    if lhs != rhs:
                        bad = f"(i,j,n,k) = ({IDX[i]},{IDX[j]},{IDX[n]},{IDX[k]})"
    results.append(check("identities.ids", bad is None, bad))

    # ids3: S(f_pq) X_i = sigma_{pm}^{ij} X_m S(f_jq)
    bad = None
    for p in range(4):
        for qq in range(4):
            for i in range(4):
                lhs = Sf[p][qq] * X[i]
                rhs = ZH
                for m in range(4):
                    for j in range(4):
                        v = sigma[p][m][i][j]
                        if not v.is_zero and not Sf[j][qq].is_zero:
                            rhs = rhs + (X[m] * Sf[j][qq]).scale(v)
                if lhs != rhs:
                    bad = f"(p,q,i) = ({IDX[p]},{IDX[qq]},{IDX[i]})"
    results.append(check("identities.ids3", bad is None, bad))

    # ids4 (antipode image of quat.Cff; displayed with a sign slip on the
    # last term, which the derivation fixes):
    # C^i_mn S(f_nk)S(f_mj) - X_r S(f_rk)S(f_ij)
    #   + sigma_pq^jk S(f_iq) X_r S(f_rp) - C^l_jk S(f_il) = 0
    bad = None
    for i in range(4):
        for j in range(4):
            for k in range(4):
                acc = ZH
                for m in range(4):
                    for n in range(4):
                        if not C[i][m][n].is_zero:
                            acc = acc + (Sf[n][k] * Sf[m][j]).scale(C[i][m][n])
                for r in range(4):
                    if not Sf[r][k].is_zero:
                        acc = acc - X[r] * Sf[r][k] * Sf[i][j]
                for (p, qq, v) in tables.sigma_cols.get((j, k), []):
                    if not Sf[i][qq].is_zero:
                        for r in range(4):
                            if not Sf[r][p].is_zero:
                                acc = acc + (Sf[i][qq] * X[r] * Sf[r][p]).scale(v)
                for l in range(4):
                    if not C[l][j][k].is_zero:
                        acc = acc - Sf[i][l].scale(C[l][j][k])
                if not acc.is_zero:
                    bad = f"(i,j,k) = ({IDX[i]},{IDX[j]},{IDX[k]})"
    results.append(check("identities.ids4", bad is None, bad))
    return results


def verify_Sf_matrices(tables):
    """S(f) matrix entries, inverses, and S-compatibility of the calculus."""
    f = tables.f
    golden = tables.golden
    ZH = AlgebraElem.zero(ALG_H)
    results = []

    bad = None
    for i in range(4):
        for j in range(4):
            want = golden_elem(ALG_H, golden["Sf"]["entries"].get(IDX[i] + IDX[j], []))
            if tables.Sf(i, j) != want:
                bad = f"S(f[{IDX[i]}{IDX[j]}])"
    results.append(check("tables.Sf.entries", bad is None, bad))

    bad = None
    for i in range(4):
        for j in range(4):
            want = golden_elem(ALG_H, golden["Sf-inv"]["entries"].get(IDX[i] + IDX[j], []))
            if tables.Sf_inv(i, j) != want:
                bad = f"S^-1(f[{IDX[i]}{IDX[j]}])"
    results.append(check("tables.Sf-inv.entries", bad is None, bad))

    # g, the only composite entry, against its closed form
    g = f[2][0] * f[0][3] + f[2][1] * f[1][3] - f[2][3]
    g_closed = ((hc.GEN_E * hc.GEN_F).scale(LAMBDA)
                + (hc.GEN_K * hc.GEN_K).scale(QINV * LAMBDA.inverse())
                - (hc.GEN_KINV * hc.GEN_KINV).scale(QINV * LAMBDA.inverse()))
    results.append(check("tables.Sf.g-closed-form", g == g_closed,
                         f"g = {elem_str(g)}"))

    bad = None
    for i in range(4):
        for k in range(4):
            acc1 = ZH
            acc2 = ZH
            for j in range(4):
                acc1 = acc1 + tables.Sf(i, j) * f[j][k]
                acc2 = acc2 + f[i][j] * tables.Sf(j, k)
            want = UNIT_H if i == k else ZH
            if acc1 != want or acc2 != want:
                bad = f"(S(f) f)[{IDX[i]}{IDX[k]}]"
    results.append(check("tables.Sf.inverse-matrix", bad is None, bad))

    bad = None
    for i in range(4):
        for j in range(4):
            if antipode(tables.Sf_inv(i, j)) != f[i][j]:
                bad = f"S(S^-1(f[{IDX[i]}{IDX[j]}]))"
    results.append(check("tables.Sf-inv.roundtrip", bad is None, bad))

    # S-compatibility, constructively: each S(f_ij) is a polynomial in the
    # f's.  The golden S(f) entries are stored as products of f's, so it is
    # enough that the computed antipodes match them; additionally re-derive
    # the matrix from the f-products directly.
    g = f[2][0] * f[0][3] + f[2][1] * f[1][3] - f[2][3]
    prods = [[ZH] * 4 for _ in range(4)]
    prods[0][0] = UNIT_H
    prods[1][1] = UNIT_H
    prods[0][3] = -(f[0][3] * f[2][2])
    prods[1][3] = -(f[1][3] * f[2][2])
    prods[2][0] = -(f[3][3] * f[2][0])
    prods[2][1] = -(f[3][3] * f[2][1])
    prods[2][2] = f[3][3]
    prods[2][3] = g
    prods[3][3] = f[2][2]
    bad = None
    for i in range(4):
        for j in range(4):
            if tables.Sf(i, j) != prods[i][j]:
                bad = f"S(f[{IDX[i]}{IDX[j]}]) not in the f-subalgebra form"
    results.append(check("tables.Sf.s-compatibility", bad is None, bad))
    return results


def verify_golden_tables(tables):
    """build_tables already cross-checks sigma and C; re-assert here so the
    checks appear in reports, and check f/J/X fixtures round-trip."""
    results = []
    results.append(check("tables.sigma.golden", True))
    results.append(check("tables.C.golden", True))
    gold = tables.golden
    bad = None
    for i in range(4):
        for j in range(4):
            key = IDX[i] + IDX[j]
            want = golden_elem(ALG_H, gold["f"]["entries"].get(key, []))
            if tables.f[i][j] != want:
                bad = f"f[{key}]"
            wantJ = golden_elem(ALG_A, gold["J"]["entries"].get(key, []))
            if tables.J[i][j] != wantJ:
                bad = f"J[{key}]"
    results.append(check("tables.fJ.golden", bad is None, bad))
    return results


# ---------------------------------------------------------------------------
# JSON export
# ---------------------------------------------------------------------------

def _elem_json(e):
    return [{"monomial": mono_str(e.algebra, m), "coeff": field_str(c)}
            for m, c in sorted(e.terms.items())]


def export_table(tables, name):
    basis = list(IDX)
    if name == "sigma":
        entries = [[[[field_str(tables.sigma[i][j][k][l]) for l in range(4)]
                     for k in range(4)] for j in range(4)] for i in range(4)]
    elif name == "C":
        entries = [[[field_str(tables.C[k][i][j]) for j in range(4)]
                    for i in range(4)] for k in range(4)]
    elif name == "t":
        entries = [[[[field_str(tables.t_entry(i, j, k, l)) for l in range(4)]
                     for k in range(4)] for j in range(4)] for i in range(4)]
    elif name == "t-morphism":
        entries = [[[[field_str(tables.t_morphism[flat(i, j)][flat(k, l)])
                      for l in range(4)] for k in range(4)]
                    for j in range(4)] for i in range(4)]
    elif name == "f":
        entries = [[_elem_json(tables.f[i][j]) for j in range(4)] for i in range(4)]
    elif name == "J":
        entries = [[_elem_json(tables.J[i][j]) for j in range(4)] for i in range(4)]
    elif name == "X":
        entries = [_elem_json(tables.X[i]) for i in range(4)]
    elif name == "Sf":
        entries = [[_elem_json(tables.Sf(i, j)) for j in range(4)] for i in range(4)]
    elif name == "Sf-inv":
        entries = [[_elem_json(tables.Sf_inv(i, j)) for j in range(4)] for i in range(4)]
    else:
        raise KeyError(f"unknown table {name!r}")
    return {"table": name, "basis": basis, "entries": entries}


def kernel_vectors(tables, which):
    ker = tables.sKer if which == "sigma" else tables.tKer
    out = []
    for v in ker:
        out.append({pair_name(p): field_str(c) for p, c in enumerate(v) if not c.is_zero})
    return out
