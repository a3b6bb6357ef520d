"""The two dually paired Hopf algebras of the engine.

A is the coordinate algebra of the quantum SU(2) with generators a, c and
their stars (spelled a!, c! in machine format).  H is the Drinfeld-Jimbo
quantum enveloping algebra with generators E, F, K, K^-1.  Elements are
kept in PBW normal form throughout:

  H monomials:  F^f K^k E^e                    -> tuple (f, k, e)
  A monomials:  a^p c^l c!^m   (family 1)      -> tuple (1, p, l, m)
                a!^p c^l c!^m  (family 2, p>0) -> tuple (2, p, l, m)

The dual pairing, the induced left/right actions and the right translate
h -> h_(1) <h_(2), y> are all computed recursively from the generator
tables with memoization.
"""

from fractions import Fraction

from .qfield import FieldElem, ZERO, ONE, Q, QINV, q_int

ALG_A = "A"
ALG_H = "H"

H_UNIT = (0, 0, 0)
A_UNIT = (1, 0, 0, 0)


class AlgebraMismatch(Exception):
    """Operands live in different algebras (or the wrong one)."""


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

class AlgebraElem:
    """Finite FieldElem-linear combination of normal-form monomials."""

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra, terms=None):
        if algebra not in (ALG_A, ALG_H):
            raise AlgebraMismatch(f"unknown algebra tag {algebra!r}")
        self.algebra = algebra
        t = {}
        if terms:
            for m, c in terms.items():
                if not c.is_zero:
                    t[m] = c
        self.terms = t
        self._hash = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def unit(cls, algebra, coeff=ONE):
        return cls(algebra, {unit_mono(algebra): coeff})

    @classmethod
    def zero(cls, algebra):
        return cls(algebra)

    @classmethod
    def mono(cls, algebra, m, coeff=ONE):
        return cls(algebra, {m: coeff})

    # -- queries -------------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def key(self):
        return (self.algebra, tuple(sorted((m, c.key()) for m, c in self.terms.items())))

    def __eq__(self, other):
        return (isinstance(other, AlgebraElem) and self.algebra == other.algebra
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def degree(self):
        return max((mono_degree(self.algebra, m) for m in self.terms), default=0)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if self.algebra != other.algebra:
            raise AlgebraMismatch(f"{self.algebra} element combined with {other.algebra}")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            c2 = t.get(m, ZERO) + c
            if c2.is_zero:
                t.pop(m, None)
            else:
                t[m] = c2
        return AlgebraElem(self.algebra, t)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraElem(self.algebra, {m: -c for m, c in self.terms.items()})

    def scale(self, coeff):
        if coeff.is_zero:
            return AlgebraElem.zero(self.algebra)
        return AlgebraElem(self.algebra, {m: c * coeff for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (FieldElem, int, Fraction)):
            return self.scale(FieldElem._coerce(other))
        self._check(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (FieldElem, int, Fraction)):
            return self.scale(FieldElem._coerce(other))
        return NotImplemented

    def __str__(self):
        return elem_str(self)

    def __repr__(self):
        return f"<{self.algebra}: {elem_str(self)}>"


def unit_mono(algebra):
    return A_UNIT if algebra == ALG_A else H_UNIT


def mono_degree(algebra, m):
    if algebra == ALG_A:
        return m[1] + m[2] + m[3]
    return m[0] + abs(m[1]) + m[2]


# Generator shorthands.
def gen(algebra, name):
    table = {
        ALG_A: {"a": (1, 1, 0, 0), "a!": (2, 1, 0, 0), "c": (1, 0, 1, 0), "c!": (1, 0, 0, 1)},
        ALG_H: {"E": (0, 0, 1), "F": (1, 0, 0), "K": (0, 1, 0), "K^-1": (0, -1, 0)},
    }
    return AlgebraElem.mono(algebra, table[algebra][name])


GEN_A = gen(ALG_A, "a")
GEN_ASTAR = gen(ALG_A, "a!")
GEN_C = gen(ALG_A, "c")
GEN_CSTAR = gen(ALG_A, "c!")
GEN_E = gen(ALG_H, "E")
GEN_F = gen(ALG_H, "F")
GEN_K = gen(ALG_H, "K")
GEN_KINV = gen(ALG_H, "K^-1")

UNIT_A = AlgebraElem.unit(ALG_A)
UNIT_H = AlgebraElem.unit(ALG_H)


# ---------------------------------------------------------------------------
# Letters: single-generator factors of a normal-form monomial
# ---------------------------------------------------------------------------

def mono_letters(algebra, m):
    if algebra == ALG_H:
        f, k, e = m
        letters = ["F"] * f
        letters += (["K"] * k if k >= 0 else ["K^-1"] * (-k))
        letters += ["E"] * e
        return letters
    fam, p, l, mm = m
    letters = (["a"] if fam == 1 else ["a!"]) * p
    letters += ["c"] * l + ["c!"] * mm
    return letters


_LETTER_MONO = {
    ALG_H: {"E": (0, 0, 1), "F": (1, 0, 0), "K": (0, 1, 0), "K^-1": (0, -1, 0)},
    ALG_A: {"a": (1, 1, 0, 0), "a!": (2, 1, 0, 0), "c": (1, 0, 1, 0), "c!": (1, 0, 0, 1)},
}


# ---------------------------------------------------------------------------
# Multiplication
# ---------------------------------------------------------------------------

_MUL_CACHE = {ALG_A: {}, ALG_H: {}}


def _h_mono_times_letter(m, letter):
    """(F^f K^k E^e) * letter, as a term dict."""
    f, k, e = m
    if letter == "E":
        return {(f, k, e + 1): ONE}
    if letter in ("K", "K^-1"):
        j = 1 if letter == "K" else -1
        return {(f, k + j, e): q_int(-j * e)}
    # letter == "F"
    if e == 0:
        return {(f + 1, k, 0): q_int(-k)}
    # E^e F = (E^{e-1} F) E + lambda^{-1} E^{e-1}(K^2 - K^-2)
    lam_inv = (Q - QINV).inverse()
    out = {}
    left = _h_mono_times_letter((f, k, e - 1), "F")
    for m2, c in left.items():
        f2, k2, e2 = m2
        _acc(out, (f2, k2, e2 + 1), c)
    for sign, jj in ((ONE, 1), (-ONE, -1)):
        step1 = _h_mono_times_letter((f, k, e - 1), "K" if jj > 0 else "K^-1")
        for m2, c in step1.items():
            step2 = _h_mono_times_letter(m2, "K" if jj > 0 else "K^-1")
            for m3, c2 in step2.items():
                _acc(out, m3, sign * lam_inv * c * c2)
    return out


def _a_mono_times_letter(m, letter):
    fam, p, l, mm = m
    if letter == "c":
        return {(fam, p, l + 1, mm): ONE}
    if letter == "c!":
        return {(fam, p, l, mm + 1): ONE}
    if letter == "a":
        qf = q_int(-(l + mm))
        if fam == 1:
            return {(1, p + 1, l, mm): qf}
        # (a!)^p a = (a!)^{p-1} (1 - c c!)
        nf = 1 if p == 1 else 2
        return {(nf, p - 1, l, mm): qf, (nf, p - 1, l + 1, mm + 1): -qf}
    # letter == "a!"
    qf = q_int(l + mm)
    if fam == 2:
        return {(2, p + 1, l, mm): qf}
    if p == 0:
        return {(2, 1, l, mm): qf}
    # a^p a! = a^{p-1} (1 - q^2 c c!)
    return {(1, p - 1, l, mm): qf, (1, p - 1, l + 1, mm + 1): -(Q * Q * qf)}


def _acc(d, m, c):
    c2 = d.get(m, ZERO) + c
    if c2.is_zero:
        d.pop(m, None)
    else:
        d[m] = c2


def _mono_mul(algebra, m1, m2):
    cache = _MUL_CACHE[algebra]
    key = (m1, m2)
    hit = cache.get(key)
    if hit is not None:
        return hit
    times_letter = _h_mono_times_letter if algebra == ALG_H else _a_mono_times_letter
    acc = {m1: ONE}
    for letter in mono_letters(algebra, m2):
        nxt = {}
        for m, c in acc.items():
            for m2_, c2 in times_letter(m, letter).items():
                _acc(nxt, m2_, c * c2)
        acc = nxt
    cache[key] = acc
    return acc


def multiply(x, y):
    """Product in normal form."""
    if x.algebra != y.algebra:
        raise AlgebraMismatch("cannot multiply elements of different algebras")
    out = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            c = c1 * c2
            for m, cm in _mono_mul(x.algebra, m1, m2).items():
                _acc(out, m, c * cm)
    return AlgebraElem(x.algebra, out)


# ---------------------------------------------------------------------------
# Tensor elements
# ---------------------------------------------------------------------------

class TensorElem:
    """Element of X (x) Y for X, Y in {A, H}, both legs normal form."""

    __slots__ = ("algebras", "terms")

    def __init__(self, algebras, terms=None):
        self.algebras = tuple(algebras)
        t = {}
        if terms:
            for mm, c in terms.items():
                if not c.is_zero:
                    t[mm] = c
        self.terms = t

    @classmethod
    def of(cls, x, y):
        out = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                _acc(out, (m1, m2), c1 * c2)
        return cls((x.algebra, y.algebra), out)

    @property
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, TensorElem) and self.algebras == other.algebras
                and self.terms == other.terms)

    def __add__(self, other):
        t = dict(self.terms)
        for mm, c in other.terms.items():
            _acc(t, mm, c)
        return TensorElem(self.algebras, t)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, coeff):
        return TensorElem(self.algebras, {mm: c * coeff for mm, c in self.terms.items()})

    def __mul__(self, other):
        a1, a2 = self.algebras
        out = {}
        for (m1, m2), c1 in self.terms.items():
            for (n1, n2), c2 in other.terms.items():
                c = c1 * c2
                left = _mono_mul(a1, m1, n1)
                right = _mono_mul(a2, m2, n2)
                for ml, cl in left.items():
                    for mr, cr in right.items():
                        _acc(out, (ml, mr), c * cl * cr)
        return TensorElem(self.algebras, out)

    def leg(self, which):
        """Collapse to a dict leg-monomial -> AlgebraElem of the other leg."""
        a1, a2 = self.algebras
        out = {}
        for (m1, m2), c in self.terms.items():
            if which == 0:
                out.setdefault(m1, {})
                _acc(out[m1], m2, c)
            else:
                out.setdefault(m2, {})
                _acc(out[m2], m1, c)
        other_alg = a2 if which == 0 else a1
        return {m: AlgebraElem(other_alg, d) for m, d in out.items()}

    def map_leg(self, which, fn):
        """Apply a linear map (AlgebraElem -> AlgebraElem) to one leg."""
        a1, a2 = self.algebras
        out = {}
        new_alg = None
        for (m1, m2), c in self.terms.items():
            if which == 0:
                img = fn(AlgebraElem.mono(a1, m1))
                new_alg = img.algebra
                for m, cm in img.terms.items():
                    _acc(out, (m, m2), c * cm)
            else:
                img = fn(AlgebraElem.mono(a2, m2))
                new_alg = img.algebra
                for m, cm in img.terms.items():
                    _acc(out, (m1, m), c * cm)
        algebras = (new_alg or a1, a2) if which == 0 else (a1, new_alg or a2)
        return TensorElem(algebras, out)


def tensor_unit(algebras):
    return TensorElem(algebras, {(unit_mono(algebras[0]), unit_mono(algebras[1])): ONE})


# ---------------------------------------------------------------------------
# Costructures
# ---------------------------------------------------------------------------

def _letter_coproduct(algebra, letter):
    q = Q
    A, H = ALG_A, ALG_H
    if algebra == A:
        a, as_, c, cs = (1, 1, 0, 0), (2, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1)
        table = {
            "a": {(a, a): ONE, (cs, c): -q},
            "c": {(c, a): ONE, (as_, c): ONE},
            "a!": {(as_, as_): ONE, (c, cs): -q},
            "c!": {(cs, as_): ONE, (a, cs): ONE},
        }
    else:
        e, f, k, ki = (0, 0, 1), (1, 0, 0), (0, 1, 0), (0, -1, 0)
        table = {
            "E": {(e, k): ONE, (ki, e): ONE},
            "F": {(f, k): ONE, (ki, f): ONE},
            "K": {(k, k): ONE},
            "K^-1": {(ki, ki): ONE},
        }
    return TensorElem((algebra, algebra), table[letter])


_COPROD_CACHE = {ALG_A: {}, ALG_H: {}}


def _mono_coproduct(algebra, m):
    cache = _COPROD_CACHE[algebra]
    hit = cache.get(m)
    if hit is not None:
        return hit
    acc = tensor_unit((algebra, algebra))
    for letter in mono_letters(algebra, m):
        acc = acc * _letter_coproduct(algebra, letter)
    cache[m] = acc
    return acc


def coproduct(x):
    out = TensorElem((x.algebra, x.algebra))
    for m, c in x.terms.items():
        out = out + _mono_coproduct(x.algebra, m).scale(c)
    return out


_COUNIT_LETTER = {
    "a": ONE, "a!": ONE, "c": ZERO, "c!": ZERO,
    "E": ZERO, "F": ZERO, "K": ONE, "K^-1": ONE,
}


def _mono_counit(algebra, m):
    acc = ONE
    for letter in mono_letters(algebra, m):
        v = _COUNIT_LETTER[letter]
        if v.is_zero:
            return ZERO
        acc = acc * v
    return acc


def counit(x):
    acc = ZERO
    for m, c in x.terms.items():
        v = _mono_counit(x.algebra, m)
        if not v.is_zero:
            acc = acc + c * v
    return acc


def _letter_antipode(algebra, letter, inverse):
    """S(letter) or S^{-1}(letter) as an AlgebraElem.

    The generator values on stars follow from S being compatible with the
    star structure (derived, not tabulated in the source conventions):
    S(a!) = a and S(c!) = -q^{-1} c!.
    """
    q = Q
    qi = QINV
    A, H = ALG_A, ALG_H
    if algebra == A:
        table = {
            "a": AlgebraElem.mono(A, (2, 1, 0, 0)),
            "a!": AlgebraElem.mono(A, (1, 1, 0, 0)),
            "c": AlgebraElem.mono(A, (1, 0, 1, 0), (-qi if inverse else -q)),
            "c!": AlgebraElem.mono(A, (1, 0, 0, 1), (-q if inverse else -qi)),
        }
    else:
        table = {
            "E": AlgebraElem.mono(H, (0, 0, 1), (-qi if inverse else -q)),
            "F": AlgebraElem.mono(H, (1, 0, 0), (-q if inverse else -qi)),
            "K": AlgebraElem.mono(H, (0, -1, 0)),
            "K^-1": AlgebraElem.mono(H, (0, 1, 0)),
        }
    return table[letter]


_ANTIPODE_CACHE = {(ALG_A, False): {}, (ALG_A, True): {}, (ALG_H, False): {}, (ALG_H, True): {}}


def _mono_antipode(algebra, m, inverse):
    cache = _ANTIPODE_CACHE[(algebra, inverse)]
    hit = cache.get(m)
    if hit is not None:
        return hit
    acc = AlgebraElem.unit(algebra)
    for letter in reversed(mono_letters(algebra, m)):
        acc = acc * _letter_antipode(algebra, letter, inverse)
    cache[m] = acc
    return acc


def antipode(x, inverse=False):
    out = AlgebraElem.zero(x.algebra)
    for m, c in x.terms.items():
        out = out + _mono_antipode(x.algebra, m, inverse).scale(c)
    return out


def antipode_pow(x, n):
    """S^n for n of either sign."""
    inverse = n < 0
    for _ in range(abs(n)):
        x = antipode(x, inverse=inverse)
    return x


_STAR_LETTER = {"a": "a!", "a!": "a", "c": "c!", "c!": "c",
                "E": "F", "F": "E", "K": "K", "K^-1": "K^-1"}

_STAR_CACHE = {ALG_A: {}, ALG_H: {}}


def star(x):
    """Antilinear anti-homomorphism; coefficients are fixed (s real)."""
    out = AlgebraElem.zero(x.algebra)
    cache = _STAR_CACHE[x.algebra]
    for m, c in x.terms.items():
        img = cache.get(m)
        if img is None:
            acc = AlgebraElem.unit(x.algebra)
            for letter in reversed(mono_letters(x.algebra, m)):
                acc = acc * AlgebraElem.mono(x.algebra, _LETTER_MONO[x.algebra][_STAR_LETTER[letter]])
            cache[m] = img = acc
        out = out + img.scale(c)
    return out


# ---------------------------------------------------------------------------
# Dual pairing and actions
# ---------------------------------------------------------------------------

# Nonzero generator pairings <h, x>.
_PAIR_BASE = {
    ("K", "a"): FieldElem.s_power(-1),
    ("K^-1", "a"): FieldElem.s_power(1),
    ("K", "a!"): FieldElem.s_power(1),
    ("K^-1", "a!"): FieldElem.s_power(-1),
    ("E", "c"): ONE,
    ("F", "c!"): -QINV,
}

_PAIR_CACHE = {}


def _letter_pair(h_letter, a_letter):
    return _PAIR_BASE.get((h_letter, a_letter), ZERO)


def _pair_mono(hm, am):
    key = (hm, am)
    hit = _PAIR_CACHE.get(key)
    if hit is not None:
        return hit
    h_letters = mono_letters(ALG_H, hm)
    a_letters = mono_letters(ALG_A, am)
    if not h_letters:
        out = _mono_counit(ALG_A, am)
    elif not a_letters:
        out = _mono_counit(ALG_H, hm)
    elif len(h_letters) == 1 and len(a_letters) == 1:
        out = _letter_pair(h_letters[0], a_letters[0])
    elif len(h_letters) == 1:
        # <h, y z> = sum <h_(1), y> <h_(2), z> with y the first letter.
        y = _LETTER_MONO[ALG_A][a_letters[0]]
        z_letters = a_letters[1:]
        z = A_UNIT
        for letter in z_letters:
            z = _letter_concat(ALG_A, z, letter)
        out = ZERO
        for (g1, g2), c in _letter_coproduct(ALG_H, h_letters[0]).terms.items():
            v1 = _pair_mono(g1, y)
            if v1.is_zero:
                continue
            v2 = _pair_mono(g2, z)
            if not v2.is_zero:
                out = out + c * v1 * v2
    else:
        # <g h', x> = sum <g, x_(1)> <h', x_(2)> with g the first letter.
        g = _LETTER_MONO[ALG_H][h_letters[0]]
        hrest = H_UNIT
        for letter in h_letters[1:]:
            hrest = _letter_concat(ALG_H, hrest, letter)
        out = ZERO
        for (m1, m2), c in _mono_coproduct(ALG_A, am).terms.items():
            v1 = _pair_mono(g, m1)
            if v1.is_zero:
                continue
            v2 = _pair_mono(hrest, m2)
            if not v2.is_zero:
                out = out + c * v1 * v2
    _PAIR_CACHE[key] = out
    return out


def _letter_concat(algebra, m, letter):
    """Append a letter to a normal-form word known to stay normal."""
    if algebra == ALG_H:
        f, k, e = m
        if letter == "F":
            return (f + 1, k, e)
        if letter == "K":
            return (f, k + 1, e)
        if letter == "K^-1":
            return (f, k - 1, e)
        return (f, k, e + 1)
    fam, p, l, mm = m
    if letter == "a":
        return (1, p + 1, l, mm)
    if letter == "a!":
        return (2, p + 1, l, mm)
    if letter == "c":
        return (fam, p, l + 1, mm)
    return (fam, p, l, mm + 1)


def pair(h, x):
    """Dual pairing <h, x> for h in H, x in A."""
    if h.algebra != ALG_H or x.algebra != ALG_A:
        raise AlgebraMismatch("pair expects (H element, A element)")
    acc = ZERO
    for hm, hc in h.terms.items():
        for am, ac in x.terms.items():
            v = _pair_mono(hm, am)
            if not v.is_zero:
                acc = acc + hc * ac * v
    return acc


_ACT_CACHE = {}


def _act_mono(side, am, hm, stwist):
    key = (side, am, hm, stwist)
    hit = _ACT_CACHE.get(key)
    if hit is not None:
        return hit
    h = AlgebraElem.mono(ALG_H, hm)
    out = {}
    for (m1, m2), c in _mono_coproduct(ALG_A, am).terms.items():
        paired, kept = (m2, m1) if side == "L" else (m1, m2)
        leg = AlgebraElem.mono(ALG_A, paired)
        if stwist:
            leg = antipode_pow(leg, stwist)
        v = pair(h, leg)
        if not v.is_zero:
            _acc(out, kept, c * v)
    hit = AlgebraElem(ALG_A, out)
    _ACT_CACHE[key] = hit
    return hit


def act_left(h, x, stwist=0):
    """h acting from the left: x_(1) <h, S^stwist(x_(2))>."""
    if h.algebra != ALG_H or x.algebra != ALG_A:
        raise AlgebraMismatch("act_left expects (H element, A element)")
    out = AlgebraElem.zero(ALG_A)
    for am, ac in x.terms.items():
        for hm, hc in h.terms.items():
            out = out + _act_mono("L", am, hm, stwist).scale(ac * hc)
    return out


def act_right(x, h, stwist=0):
    """h acting from the right: <h, S^stwist(x_(1))> x_(2)."""
    if h.algebra != ALG_H or x.algebra != ALG_A:
        raise AlgebraMismatch("act_right expects (A element, H element)")
    out = AlgebraElem.zero(ALG_A)
    for am, ac in x.terms.items():
        for hm, hc in h.terms.items():
            out = out + _act_mono("R", am, hm, stwist).scale(ac * hc)
    return out


_TRANSLATE_CACHE = {}


def translate_right(h, y):
    """h_(1) <h_(2), y> for h in H, y in A: the right translate of h by y."""
    if h.algebra != ALG_H or y.algebra != ALG_A:
        raise AlgebraMismatch("translate_right expects (H element, A element)")
    out = AlgebraElem.zero(ALG_H)
    for hm, hc in h.terms.items():
        for ym, yc in y.terms.items():
            key = (hm, ym)
            img = _TRANSLATE_CACHE.get(key)
            if img is None:
                d = {}
                for (m1, m2), c in _mono_coproduct(ALG_H, hm).terms.items():
                    v = _pair_mono(m2, ym)
                    if not v.is_zero:
                        _acc(d, m1, c * v)
                img = AlgebraElem(ALG_H, d)
                _TRANSLATE_CACHE[key] = img
            out = out + img.scale(hc * yc)
    return out


# ---------------------------------------------------------------------------
# Monomial text format
# ---------------------------------------------------------------------------

def mono_str(algebra, m):
    letters = []
    if algebra == ALG_H:
        f, k, e = m
        if f:
            letters.append("F" if f == 1 else f"F^{f}")
        if k:
            letters.append(f"K^{k}" if k != 1 else "K")
        if e:
            letters.append("E" if e == 1 else f"E^{e}")
    else:
        fam, p, l, mm = m
        if p:
            base = "a" if fam == 1 else "a!"
            letters.append(base if p == 1 else f"{base}^{p}")
        if l:
            letters.append("c" if l == 1 else f"c^{l}")
        if mm:
            letters.append("c!" if mm == 1 else f"c!^{mm}")
    return " ".join(letters) if letters else "1"


def parse_mono(algebra, text):
    """Parse the space-separated monomial format, e.g. "F K^-1" or "a! c^2"."""
    text = text.strip()
    if text == "1":
        return unit_mono(algebra)
    m = unit_mono(algebra)
    fam = 1
    counts = {}
    for tokstr in text.split():
        if "^" in tokstr:
            base, _, exp = tokstr.partition("^")
            # K^-1 is a base of its own when the exponent is part of K powers
            n = int(exp)
        else:
            base, n = tokstr, 1
        counts[base] = counts.get(base, 0) + n
    if algebra == ALG_H:
        return (counts.get("F", 0), counts.get("K", 0), counts.get("E", 0))
    p = counts.get("a", 0)
    ps = counts.get("a!", 0)
    if p and ps:
        raise ValueError("A monomial cannot mix a and a!")
    fam = 2 if ps else 1
    return (fam, ps if ps else p, counts.get("c", 0), counts.get("c!", 0))


def elem_str(x):
    if x.is_zero:
        return "0"
    parts = []
    for m in sorted(x.terms):
        c = x.terms[m]
        ms = mono_str(x.algebra, m)
        cs = str(c)
        neg = cs.startswith("-") and "+" not in cs and cs.count("-") == 1 and "/" not in cs
        if neg:
            sign, cs = "-", cs[1:]
        else:
            sign = "+"
        if ms == "1":
            body = cs
        elif cs == "1":
            body = ms.replace(" ", " * ")
        else:
            if any(op in cs for op in (" + ", " - ", ")/(")):
                cs = f"({cs})"
            body = f"{cs} * " + ms.replace(" ", " * ")
        parts.append((sign, body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# Enumeration and random sampling
# ---------------------------------------------------------------------------

def monomials_up_to(algebra, bound):
    out = []
    if algebra == ALG_H:
        for f in range(bound + 1):
            for e in range(bound + 1 - f):
                for k in range(-(bound - f - e), bound - f - e + 1):
                    out.append((f, k, e))
    else:
        for p in range(bound + 1):
            for l in range(bound + 1 - p):
                for mm in range(bound + 1 - p - l):
                    out.append((1, p, l, mm))
                    if p >= 1:
                        out.append((2, p, l, mm))
    return sorted(out)


_COEFF_POOL = (ONE, -ONE, Q, QINV, FieldElem.from_int(2), Q - QINV)


def random_elem(algebra, rng, degree=2, nterms=2):
    monos = [m for m in monomials_up_to(algebra, degree)]
    terms = {}
    for _ in range(nterms):
        m = rng.choice(monos)
        c = rng.choice(_COEFF_POOL)
        terms[m] = terms.get(m, ZERO) + c
    return AlgebraElem(algebra, terms)


# ---------------------------------------------------------------------------
# Hopf axiom verification
# ---------------------------------------------------------------------------

def _triple_coproduct(x, first):
    """(Delta (x) id) Delta(x) if first else (id (x) Delta) Delta(x), as a dict."""
    out = {}
    for (m1, m2), c in coproduct(x).terms.items():
        inner = _mono_coproduct(x.algebra, m1 if first else m2)
        for (n1, n2), c2 in inner.terms.items():
            key = (n1, n2, m2) if first else (m1, n1, n2)
            cc = out.get(key, ZERO) + c * c2
            if cc.is_zero:
                out.pop(key, None)
            else:
                out[key] = cc
    return out


def verify_hopf_axioms(algebra, degree_bound, antipode_fn=None):
    """Check coassociativity, counit, antipode laws on all PBW monomials up
    to the degree bound; returns a list of (check_id, ok, witness) tuples.
    """
    if degree_bound < 1:
        raise ValueError("degree bound must be >= 1")
    S = antipode_fn or antipode
    results = []
    monos = monomials_up_to(algebra, degree_bound)

    bad = None
    for m in monos:
        x = AlgebraElem.mono(algebra, m)
        if _triple_coproduct(x, True) != _triple_coproduct(x, False):
            bad = mono_str(algebra, m)
            break
    results.append((f"hopf.{algebra}.coassoc", bad is None, bad))

    bad = None
    for m in monos:
        x = AlgebraElem.mono(algebra, m)
        left = AlgebraElem.zero(algebra)
        right = AlgebraElem.zero(algebra)
        for (m1, m2), c in coproduct(x).terms.items():
            left = left + AlgebraElem.mono(algebra, m2, c * _mono_counit(algebra, m1))
            right = right + AlgebraElem.mono(algebra, m1, c * _mono_counit(algebra, m2))
        if left != x or right != x:
            bad = mono_str(algebra, m)
            break
    results.append((f"hopf.{algebra}.counit", bad is None, bad))

    bad = None
    for m in monos:
        x = AlgebraElem.mono(algebra, m)
        want = AlgebraElem.unit(algebra, _mono_counit(algebra, m))
        lhs = AlgebraElem.zero(algebra)
        rhs = AlgebraElem.zero(algebra)
        for (m1, m2), c in coproduct(x).terms.items():
            lhs = lhs + (S(AlgebraElem.mono(algebra, m1)) * AlgebraElem.mono(algebra, m2)).scale(c)
            rhs = rhs + (AlgebraElem.mono(algebra, m1) * S(AlgebraElem.mono(algebra, m2))).scale(c)
        if lhs != want or rhs != want:
            bad = mono_str(algebra, m)
            break
    results.append((f"hopf.{algebra}.antipode-law", bad is None, bad))

    import random as _random
    rng = _random.Random(20240 + (0 if algebra == ALG_A else 1))
    bad = None
    for _ in range(20):
        x = random_elem(algebra, rng, degree=2)
        y = random_elem(algebra, rng, degree=2)
        if S(x * y) != S(y) * S(x):
            bad = f"S anti-hom failed on {elem_str(x)} , {elem_str(y)}"
            break
        if antipode(antipode(x, inverse=True)) != x:
            bad = f"S S^-1 roundtrip failed on {elem_str(x)}"
            break
    results.append((f"hopf.{algebra}.antipode-antihom", bad is None, bad))
    return results
