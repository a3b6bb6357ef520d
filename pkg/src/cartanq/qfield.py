"""Exact arithmetic in Q(s), s = q^(1/2), and linear algebra over it.

Every coefficient in the engine is a FieldElem: a reduced fraction of
Laurent polynomials in s with rational coefficients.  Working in s rather
than q keeps the half-integer q-powers that show up in the pairing and in
the tangent-space elements polynomial.
"""

from fractions import Fraction
from math import gcd as _int_gcd


class QFieldError(Exception):
    pass


class DivisionByZero(QFieldError, ZeroDivisionError):
    """Division by the zero element of Q(s)."""


class PoleAtEvaluationPoint(QFieldError):
    """The denominator vanishes at the requested value of s."""


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Sparse Laurent polynomial in s over Q.  Immutable by convention."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            for e, c in terms.items():
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c != 0:
                    t[int(e)] = c
        self.terms = t
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def const(cls, c):
        return cls({0: Fraction(c)})

    @classmethod
    def s_power(cls, e, coeff=1):
        return cls({e: Fraction(coeff)})

    # -- queries -------------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def min_exp(self):
        return min(self.terms) if self.terms else 0

    def max_exp(self):
        return max(self.terms) if self.terms else 0

    def degree(self):
        return self.max_exp()

    def leading(self):
        return self.terms[self.max_exp()] if self.terms else Fraction(0)

    def key(self):
        return tuple(sorted(self.terms.items()))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        t = dict(self.terms)
        for e, c in other.terms.items():
            c2 = t.get(e, Fraction(0)) + c
            if c2:
                t[e] = c2
            else:
                t.pop(e, None)
        return LaurentPoly(t)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            t = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = e1 + e2
                    c = t.get(e, Fraction(0)) + c1 * c2
                    if c:
                        t[e] = c
                    else:
                        t.pop(e, None)
            return LaurentPoly(t)
        return LaurentPoly({e: c * Fraction(other) for e, c in self.terms.items()})

    __rmul__ = __mul__

    def shifted(self, k):
        if k == 0 or self.is_zero:
            return self
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def evaluate(self, s_value):
        s_value = Fraction(s_value)
        if s_value == 0:
            raise ValueError("s must be nonzero")
        acc = Fraction(0)
        for e, c in self.terms.items():
            acc += c * s_value ** e
        return acc

    def __repr__(self):
        return f"LaurentPoly({self.terms!r})"


def poly_divmod(a, b):
    """Division with remainder for ordinary (min_exp >= 0) polynomials."""
    assert not b.is_zero
    q = {}
    r = dict(a.terms)
    db, lb = b.max_exp(), b.leading()
    while r:
        dr = max(r)
        if dr < db:
            break
        f = r[dr] / lb
        q[dr - db] = f
        for e, c in b.terms.items():
            e2 = e + dr - db
            c2 = r.get(e2, Fraction(0)) - f * c
            if c2:
                r[e2] = c2
            else:
                r.pop(e2, None)
    return LaurentPoly(q), LaurentPoly(r)


def poly_gcd(a, b):
    """Monic gcd of two ordinary polynomials (min_exp >= 0)."""
    while not b.is_zero:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a.is_zero:
        return a
    return a * (1 / a.leading())


def _content_scale(*polys):
    """lcm of coefficient denominators / gcd of numerators across polys."""
    num_gcd = 0
    den_lcm = 1
    for p in polys:
        for c in p.terms.values():
            num_gcd = _int_gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // _int_gcd(den_lcm, c.denominator)
    if num_gcd == 0:
        num_gcd = 1
    return Fraction(den_lcm, num_gcd)


# ---------------------------------------------------------------------------
# Field elements
# ---------------------------------------------------------------------------

class FieldElem:
    """Element of Q(s) in canonical form.

    Canonical form: num/den with den an ordinary polynomial (lowest exponent
    0) with positive integer leading coefficient, num a Laurent polynomial
    with integer coefficients, gcd(num, den) = 1 as polynomials and joint
    integer content 1.  Zero is 0/1.  Equality and hashing compare canonical
    data, so FieldElems are usable as exact table entries.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _normalized=False):
        if den is None:
            den = LaurentPoly.one()
        if not _normalized:
            num, den = self._normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _normalize(num, den):
        if den.is_zero:
            raise DivisionByZero("denominator is zero in Q(s)")
        if num.is_zero:
            return LaurentPoly.zero(), LaurentPoly.one()
        shift = den.min_exp()
        den = den.shifted(-shift)
        num = num.shifted(-shift)
        nshift = num.min_exp()
        npoly = num.shifted(-nshift)
        g = poly_gcd(npoly, den)
        if g.max_exp() > 0:
            npoly, _ = poly_divmod(npoly, g)
            den, _ = poly_divmod(den, g)
        num = npoly.shifted(nshift)
        scale = _content_scale(num, den)
        if den.leading() < 0:
            scale = -scale
        return num * scale, den * scale

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_int(cls, n):
        return cls(LaurentPoly.const(n))

    @classmethod
    def from_fraction(cls, f):
        return cls(LaurentPoly.const(Fraction(f)))

    @classmethod
    def s_power(cls, e, coeff=1):
        return cls(LaurentPoly.s_power(e, coeff))

    @classmethod
    def q_power(cls, e, coeff=1):
        return cls(LaurentPoly.s_power(2 * e, coeff))

    # -- queries -------------------------------------------------------------

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_one(self):
        return self.num == LaurentPoly.one() and self.den == LaurentPoly.one()

    def key(self):
        return (self.num.key(), self.den.key())

    def __eq__(self, other):
        if isinstance(other, int):
            other = FieldElem.from_int(other)
        return isinstance(other, FieldElem) and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, FieldElem):
            return x
        if isinstance(x, (int, Fraction)):
            return FieldElem.from_fraction(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElem(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElem(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return FieldElem(-self.num, self.den, _normalized=True)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElem(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise DivisionByZero("division by zero in Q(s)")
        return FieldElem(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def inverse(self):
        if self.is_zero:
            raise DivisionByZero("inverse of zero in Q(s)")
        return FieldElem(self.den, self.num)

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        acc = ONE
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def evaluate(self, s_value):
        """Exact rational value at s = s_value.  s_value must be nonzero."""
        s_value = Fraction(s_value)
        if s_value == 0:
            raise ValueError("s must be nonzero")
        d = self.den.evaluate(s_value)
        if d == 0:
            raise PoleAtEvaluationPoint(f"denominator vanishes at s = {s_value}")
        return self.num.evaluate(s_value) / d

    # -- text ----------------------------------------------------------------

    def __str__(self):
        return field_str(self)

    def __repr__(self):
        return f"FieldElem({field_str(self)!r})"


def laurent_str(p):
    if p.is_zero:
        return "0"
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if e == 0:
            body = str(c)
        else:
            var = "s" if e == 1 else f"s^{e}"
            body = var if c == 1 else f"{c}*{var}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def field_str(x):
    """Canonical textual form, e.g. "s^2 - s^-2" or "(s^2)/(s^4 - 1)"."""
    if x.den == LaurentPoly.one():
        return laurent_str(x.num)
    return f"({laurent_str(x.num)})/({laurent_str(x.den)})"


# Common constants.
ZERO = FieldElem(LaurentPoly.zero())
ONE = FieldElem(LaurentPoly.one())
S = FieldElem.s_power(1)
Q = FieldElem.s_power(2)
QINV = FieldElem.s_power(-2)
LAMBDA = Q - QINV  # q - q^{-1}


def q_int(n):
    """q^n as a FieldElem."""
    return FieldElem.s_power(2 * n)


# ---------------------------------------------------------------------------
# Scalar expression parser (canonical textual form and small extensions)
# ---------------------------------------------------------------------------

class ScalarParseError(QFieldError):
    pass


def _tokenize_scalar(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch in "sq":
            tokens.append(("sym", ch, i))
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ScalarParseError(f"unexpected character {ch!r} at position {i}")
    tokens.append(("end", None, n))
    return tokens


class _ScalarParser:
    def __init__(self, text):
        self.tokens = _tokenize_scalar(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ScalarParseError(f"expected {kind!r} at position {tok[2]}")
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ScalarParseError(f"trailing input at position {tok[2]}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.power()
        while self.peek()[0] in ("*", "/"):
            op = self.next()[0]
            rhs = self.power()
            value = value * rhs if op == "*" else value / rhs
        return value

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.next()
            sign = 1
            if self.peek()[0] == "-":
                self.next()
                sign = -1
            tok = self.expect("int")
            return base ** (sign * tok[1])
        return base

    def atom(self):
        tok = self.next()
        kind, value, pos = tok
        if kind == "int":
            return FieldElem.from_int(value)
        if kind == "sym":
            return S if value == "s" else Q
        if kind == "-":
            return -self.power()
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ScalarParseError(f"unexpected token at position {pos}")


def parse_scalar(text):
    """Parse the canonical coefficient grammar (ints, s, q, + - * / ^)."""
    return _ScalarParser(text).parse()


# ---------------------------------------------------------------------------
# Dense matrices over Q(s)
# ---------------------------------------------------------------------------

class FMatrix:
    """Dense matrix of FieldElems."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, r, c):
        return cls([[ZERO] * c for _ in range(r)])

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, FMatrix) and self.entries == other.entries

    def transpose(self):
        return FMatrix([[self.entries[i][j] for i in range(self.rows)]
                        for j in range(self.cols)])

    def __sub__(self, other):
        return FMatrix([[a - b for a, b in zip(r1, r2)]
                        for r1, r2 in zip(self.entries, other.entries)])

    def __add__(self, other):
        return FMatrix([[a + b for a, b in zip(r1, r2)]
                        for r1, r2 in zip(self.entries, other.entries)])

    def __matmul__(self, other):
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.is_zero:
                        continue
                    b = other.entries[k][j]
                    if not b.is_zero:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return FMatrix(out)

    def mat_vec(self, v):
        out = []
        for i in range(self.rows):
            acc = ZERO
            for k, x in zip(self.entries[i], v):
                if not k.is_zero and not x.is_zero:
                    acc = acc + k * x
            out.append(acc)
        return tuple(out)

    def kernel_basis(self):
        return kernel_basis(self)

    def rank(self):
        _, pivots = rref([list(r) for r in self.entries], self.cols)
        return len(pivots)


def rref(rows, ncols, col_order=None):
    """Reduced row echelon form in place; returns (rows, pivot list).

    col_order gives the pivot-search order over columns; pivots are
    normalized to 1 and cleared from all other rows.  The result is the
    canonical RREF for that column order.
    """
    if col_order is None:
        col_order = range(ncols)
    pivots = []
    used = [False] * len(rows)
    for col in col_order:
        sel = None
        for r in range(len(rows)):
            if not used[r] and not rows[r][col].is_zero:
                sel = r
                break
        if sel is None:
            continue
        used[sel] = True
        inv = rows[sel][col].inverse()
        rows[sel] = [x * inv for x in rows[sel]]
        for r in range(len(rows)):
            if r != sel and not rows[r][col].is_zero:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[sel])]
        pivots.append((sel, col))
    return rows, pivots


def kernel_basis(m):
    """Canonical reduced basis of the right null space of an FMatrix."""
    rows = [list(r) for r in m.entries]
    rows, pivots = rref(rows, m.cols)
    pivot_cols = {c: r for r, c in pivots}
    free_cols = [c for c in range(m.cols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [ZERO] * m.cols
        v[fc] = ONE
        for c, r in pivot_cols.items():
            v[c] = -rows[r][fc]
        basis.append(tuple(v))
    return basis


def echelonize(vectors, ncols, col_order):
    """Reduced echelon basis of span(vectors) for the given column order.

    Returns a list of (pivot_col, row) pairs with pivot coefficient 1 and
    zero coefficient at every other pivot column.
    """
    rows = [list(v) for v in vectors]
    rows, pivots = rref(rows, ncols, col_order)
    return [(col, tuple(rows[r])) for r, col in pivots]


def vectors_rank(vectors, ncols):
    if not vectors:
        return 0
    rows = [list(v) for v in vectors]
    _, pivots = rref(rows, ncols)
    return len(pivots)


def in_span(vectors, v, ncols):
    """Whether v lies in the span of vectors (all length-ncols tuples)."""
    base = vectors_rank(vectors, ncols)
    return vectors_rank(list(vectors) + [v], ncols) == base


def same_span(vs1, vs2, ncols):
    r1 = vectors_rank(vs1, ncols)
    r2 = vectors_rank(vs2, ncols)
    rall = vectors_rank(list(vs1) + list(vs2), ncols)
    return r1 == r2 == rall
