"""Verification checks for the exterior algebra and the pairing layer."""

import itertools
import random

from .qfield import ZERO, ONE, Q, QINV
from . import hopfcore as hc
from .hopfcore import (ALG_A, ALG_H, AlgebraElem, TensorElem, UNIT_A,
                       coproduct, counit, antipode, pair, act_left, act_right,
                       random_elem)
from .calculus4d import IDX, IDX_OF, golden_elem
from .exterior import Form
from .report import check

GENS_A = (("a", hc.GEN_A), ("a!", hc.GEN_ASTAR), ("c", hc.GEN_C), ("c!", hc.GEN_CSTAR))


def verify_pairing_properties(seed=0):
    """Duality and antipode compatibility of the pairing on random samples;
    these are definitional, the checks guard the recursion and caching."""
    rng = random.Random(seed + 77)
    results = []
    bad = None
    for _ in range(12):
        g = random_elem(ALG_H, rng)
        h = random_elem(ALG_H, rng)
        x = random_elem(ALG_A, rng)
        y = random_elem(ALG_A, rng)
        lhs = pair(g * h, x)
        rhs = ZERO
        for (m1, m2), c in coproduct(x).terms.items():
            rhs = rhs + c * pair(g, AlgebraElem.mono(ALG_A, m1)) \
                * pair(h, AlgebraElem.mono(ALG_A, m2))
        if lhs != rhs:
            bad = "<gh, x> != <g, x_(1)><h, x_(2)>"
            break
        lhs = pair(g, x * y)
        rhs = ZERO
        for (m1, m2), c in coproduct(g).terms.items():
            rhs = rhs + c * pair(AlgebraElem.mono(ALG_H, m1), x) \
                * pair(AlgebraElem.mono(ALG_H, m2), y)
        if lhs != rhs:
            bad = "<g, xy> != <g_(1), x><g_(2), y>"
            break
    results.append(check("hopf.pairing-duality", bad is None, bad))

    bad = None
    for _ in range(12):
        h = random_elem(ALG_H, rng)
        x = random_elem(ALG_A, rng)
        if pair(antipode(h), x) != pair(h, antipode(x)):
            bad = "<S(h), x> != <h, S(x)>"
            break
    results.append(check("hopf.pairing-antipode", bad is None, bad))

    bad = None
    for _ in range(12):
        g = random_elem(ALG_H, rng)
        h = random_elem(ALG_H, rng)
        x = random_elem(ALG_A, rng)
        lhs = act_left(g * h, x)
        rhs = act_left(g, act_left(h, x))
        if lhs != rhs:
            bad = "left action composition"
            break
        lhs = act_right(act_right(x, g), h)
        rhs = act_right(x, g * h)
        if lhs != rhs:
            bad = "right action composition"
            break
    results.append(check("hopf.action-composition", bad is None, bad))

    bad = None
    for _ in range(10):
        x = random_elem(ALG_A, rng)
        y = random_elem(ALG_A, rng)
        if hc.star(hc.star(x)) != x:
            bad = "star not involutive"
            break
        if hc.star(x * y) != hc.star(y) * hc.star(x):
            bad = "star not an anti-homomorphism"
            break
        lhs = coproduct(hc.star(x))
        rhs = coproduct(x).map_leg(0, hc.star).map_leg(1, hc.star)
        if lhs != rhs:
            bad = "Delta not star-compatible"
            break
    results.append(check("hopf.star", bad is None, bad))
    return results


def verify_ids2(cartan):
    """S(f_pl) xi_j = sigma_{pn}^{jk} xi_n S(f_kl) as a computed identity."""
    from .cartan import CartanElem
    tables = cartan.tables
    bad = None
    for p in range(4):
        for l in range(4):
            sf = tables.Sf(p, l)
            if sf.is_zero:
                continue
            for j in range(4):
                lhs = cartan.multiply(cartan.embed_h(sf), cartan.xi(j))
                rhs = CartanElem.zero()
                for n in range(4):
                    for k in range(4):
                        v = tables.sigma[p][n][j][k]
                        if v.is_zero:
                            continue
                        sfkl = tables.Sf(k, l)
                        if sfkl.is_zero:
                            continue
                        rhs = rhs + cartan.multiply(
                            cartan.xi(n), cartan.embed_h(sfkl)).scale(v)
                if lhs != rhs:
                    bad = f"(p,l,j) = ({IDX[p]},{IDX[l]},{IDX[j]})"
    return [check("identities.ids2", bad is None, bad)]


def verify_exterior(ext, seed=0):
    tables = ext.tables
    results = []
    rng = random.Random(seed + 31)

    # dimensions
    dims = [ext.dimension(d) for d in range(6)]
    results.append(check("exterior.dimensions", dims == [1, 4, 6, 4, 1, 0],
                         f"dims = {dims}"))
    wit = ext.reduction_cross_check(2) or ext.reduction_cross_check(3) \
        or ext.reduction_cross_check(2, "eta") or ext.reduction_cross_check(3, "eta")
    results.append(check("exterior.reduction-consistency", wit is None, wit))

    # wedge associativity over all letter triples and sampled coefficients
    bad = None
    for i, j, k in itertools.product(range(4), repeat=3):
        b = Form.basis
        if ext.wedge(ext.wedge(b(i), b(j)), b(k)) != ext.wedge(b(i), ext.wedge(b(j), b(k))):
            bad = f"letters ({IDX[i]},{IDX[j]},{IDX[k]})"
            break
    if bad is None:
        for _ in range(15):
            fs = []
            for _ in range(3):
                d = rng.randint(0, 2)
                w = tuple(rng.choice(ext.normal_words(d)))
                fs.append(Form({w: random_elem(ALG_A, rng)}))
            if ext.wedge(ext.wedge(fs[0], fs[1]), fs[2]) != \
                    ext.wedge(fs[0], ext.wedge(fs[1], fs[2])):
                bad = "random coefficient triple"
                break
    results.append(check("exterior.wedge-associativity", bad is None, bad))

    # d on generators against the golden display
    golden = tables.golden["d-generators"]["entries"]
    bad = None
    for gname, g in GENS_A:
        got = ext.d_scalar(g)
        want = Form()
        for widx, terms in golden[gname].items():
            coeff = golden_elem(ALG_A, terms)
            want = want + Form({(IDX_OF[widx],): coeff})
        if got != want:
            bad = f"d({gname})"
            break
    results.append(check("exterior.d-generators", bad is None, bad))

    # d^2 = 0 on all A monomials of degree <= 3, the basis one-forms, and
    # all normal two-form words
    bad = None
    for m in hc.monomials_up_to(ALG_A, 3):
        x = AlgebraElem.mono(ALG_A, m)
        if not ext.differential(ext.d_scalar(x)).is_zero:
            bad = f"monomial {hc.mono_str(ALG_A, m)}"
            break
    if bad is None:
        for i in range(4):
            if not ext.differential(ext.differential(Form.basis(i))).is_zero:
                bad = f"w{IDX[i]}"
                break
    if bad is None:
        for w in ext.normal_words(2):
            if not ext.differential(ext.differential(Form.basis(*w))).is_zero:
                bad = f"degree-2 word {w}"
                break
    results.append(check("exterior.d-squared", bad is None, bad))

    # inverse formulas round-trip
    a, as_, c, cs = hc.GEN_A, hc.GEN_ASTAR, hc.GEN_C, hc.GEN_CSTAR
    da, das = ext.d_scalar(a), ext.d_scalar(as_)
    dc, dcs = ext.d_scalar(c), ext.d_scalar(cs)
    lam = Q - QINV
    c_o = (Q + 1) / (Q * Q + Q + 1)
    combos = {
        0: das.lmul(cs) - dcs.lmul(as_).scale(Q),
        1: dc.lmul(a) - da.lmul(c).scale(Q),
        2: da.lmul(as_) + dc.lmul(cs) - das.lmul(a) - dcs.lmul(c).scale(Q * Q),
        3: (da.lmul(as_) + dc.lmul(cs) + das.lmul(a).scale(Q)
            + dcs.lmul(c).scale(Q ** 3)).scale(c_o),
    }
    bad = None
    for i, form in combos.items():
        if form != Form.basis(i):
            bad = f"w{IDX[i]}"
            break
    results.append(check("exterior.inverse-formulas", bad is None, bad))

    # second form of the differential
    bad = None
    for gname, g in GENS_A:
        rhs = Form()
        for i in range(4):
            y = act_right(g, antipode(tables.X[i], inverse=True))
            if not y.is_zero:
                rhs = rhs - ext.wedge(ext.eta_form(i), Form.scalar(y))
        if ext.d_scalar(g) != rhs:
            bad = f"d({gname}) right-invariant expansion"
            break
    results.append(check("exterior.d-right-invariant", bad is None, bad))

    # bimodule consistency: x w_i = w_j ((f_ij o S^-1) |> x), so pushing the
    # coefficient right and then left again returns the original form
    bad = None
    for gname, g in GENS_A:
        for i in range(4):
            lhs = Form({(i,): g})
            back = Form()
            for j in range(4):
                y = act_left(tables.f[i][j], g, stwist=-1)
                if not y.is_zero:
                    back = back + ext.wedge(Form.basis(j), Form.scalar(y))
            if back != lhs:
                bad = f"(w{IDX[i]}, {gname})"
                break
        if bad:
            break
    results.append(check("exterior.bimodule-roundtrip", bad is None, bad))

    # right-invariant bimodule relations
    bad = None
    for gname, g in GENS_A:
        for i in range(4):
            lhs = ext.wedge(ext.eta_form(i), Form.scalar(g))
            rhs = Form()
            for j in range(4):
                y = act_right(g, tables.f[i][j], stwist=-2)
                if not y.is_zero:
                    rhs = rhs + ext.wedge(Form.scalar(y), ext.eta_form(j))
            if lhs != rhs:
                bad = f"(eta{IDX[i]}, {gname})"
                break
        if bad:
            break
    results.append(check("exterior.fun-f-r", bad is None, bad))

    # eta basis round-trips and invariance
    bad = None
    for i in range(4):
        if ext.omega_from_eta(i) != Form.basis(i):
            bad = f"omega_from_eta({IDX[i]})"
            break
        co = ext.coact_right(ext.eta_form(i))
        want = {w: TensorElem.of(x, UNIT_A) for w, x in ext.eta_form(i).terms.items()}
        if co != want:
            bad = f"Delta_R(eta{IDX[i]})"
            break
    if bad is None:
        for _ in range(10):
            d = rng.randint(0, 2)
            w = tuple(rng.choice(ext.normal_words(d)))
            f1 = Form({w: random_elem(ALG_A, rng)})
            if ext.from_eta(ext.to_eta(f1)) != f1:
                bad = "eta representation round-trip"
                break
    results.append(check("exterior.eta-basis", bad is None, bad))

    # counit law of the right coaction
    bad = None
    for _ in range(10):
        d = rng.randint(0, 2)
        w = tuple(rng.choice(ext.normal_words(d)))
        f1 = Form({w: random_elem(ALG_A, rng)})
        back = Form()
        for w2, te in ext.coact_right(f1).items():
            coeff = AlgebraElem.zero(ALG_A)
            for (m1, m2), cc in te.terms.items():
                v = counit(AlgebraElem.mono(ALG_A, m2))
                if not v.is_zero:
                    coeff = coeff + AlgebraElem.mono(ALG_A, m1, cc * v)
            if not coeff.is_zero:
                back = back + Form({w2: coeff})
        if back != f1:
            bad = "(id x eps) Delta_R != id"
            break
    results.append(check("exterior.coaction-counit", bad is None, bad))

    # multiplicativity of the right coaction on random pairs
    bad = None
    for _ in range(8):
        fs = []
        for _ in range(2):
            d = rng.randint(0, 2)
            w = tuple(rng.choice(ext.normal_words(d)))
            fs.append(Form({w: random_elem(ALG_A, rng, degree=1, nterms=1)}))
        lhs = ext.coact_right(ext.wedge(fs[0], fs[1]))
        rhs = {}
        for w1, te1 in ext.coact_right(fs[0]).items():
            for w2, te2 in ext.coact_right(fs[1]).items():
                legs1 = te1.leg(0)
                legs2 = te2.leg(0)
                for m1, a1 in legs1.items():
                    for m2, a2 in legs2.items():
                        part = ext.wedge(Form({w1: AlgebraElem.mono(ALG_A, m1)}),
                                         Form({w2: AlgebraElem.mono(ALG_A, m2)}))
                        prod = a1 * a2
                        for w3, x3 in part.terms.items():
                            te = TensorElem.of(x3, prod)
                            cur = rhs.get(w3)
                            cur = te if cur is None else cur + te
                            if cur.is_zero:
                                rhs.pop(w3, None)
                            else:
                                rhs[w3] = cur
        if lhs != rhs:
            bad = "Delta_R not multiplicative on a random pair"
            break
    results.append(check("exterior.coaction-multiplicative", bad is None, bad))

    # braiding consistency on the right-invariant basis:
    # sigma(eta_i (x) eta_j) = sigma_{ji}^{lk} eta_k (x) eta_l
    bad = None
    for i in range(4):
        for j in range(4):
            lhs = _braid_eta_pair(ext, i, j)
            rhs = {}
            for k in range(4):
                for l in range(4):
                    v = tables.sigma[j][i][l][k]
                    if not v.is_zero:
                        _merge_pairs(rhs, _eta_pair_expansion(ext, k, l), v)
            if not _pairs_equal(lhs, rhs):
                bad = f"(eta{IDX[i]}, eta{IDX[j]})"
                break
        if bad:
            break
    results.append(check("exterior.braiding-on-eta", bad is None, bad))
    return results


def _eta_pair_expansion(ext, i, j):
    """eta_i (x) eta_j in the unreduced tensor square with left coefficients:
    dict (k, l) -> A coefficient."""
    out = {}
    ei = ext.eta_form(i)
    ej = ext.eta_form(j)
    for (k,), x1 in ei.terms.items():
        for (l,), x2 in ej.terms.items():
            # (x1 w_k) (x) (x2 w_l): push x2 through w_k into the left slot
            for (k2,), y in ext.push_left((k,), x2).items():
                key = (k2, l)
                cur = out.get(key)
                add = x1 * y
                cur = add if cur is None else cur + add
                if cur.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = cur
    return out


def _braid_eta_pair(ext, i, j):
    return ext.braid_pairs(_eta_pair_expansion(ext, i, j))


def _merge_pairs(acc, pairs, scale):
    for key, x in pairs.items():
        cur = acc.get(key)
        add = x.scale(scale)
        cur = add if cur is None else cur + add
        if cur.is_zero:
            acc.pop(key, None)
        else:
            acc[key] = cur


def _pairs_equal(p1, p2):
    if set(p1) != set(p2):
        return False
    return all(p1[k] == p2[k] for k in p1)
