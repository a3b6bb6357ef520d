"""Command-line front end: expression parsing, table export, normal forms,
operator application, exact evaluation and the verification suite.

Grammar: rational literals, q, s, the generator tokens a, a!, c, c!, E, F,
K, K^-1, w-, w+, wz, w0, e-, e+, ez, e0, xi-, xi+, xiz, xi0, del, with
operators ^ (power), * (product), /\\ (wedge), + and -, and / restricted to
scalar subexpressions.  a* and c* are accepted as aliases of a! and c!.
Every printed canonical form parses back to the same value.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from .qfield import (FieldElem, ONE, field_str, PoleAtEvaluationPoint,
                     DivisionByZero)
from . import hopfcore as hc
from .hopfcore import (ALG_A, ALG_H, AlgebraElem, elem_str)
from . import calculus4d as c4
from .calculus4d import IDX, IDX_OF, build_tables, export_table, kernel_vectors
from .exterior import ExteriorCalculus, Form
from .cartan import CartanCalculus, CartanElem, ODD_NAMES
from .report import VerifyReport, CheckResult, PASS, FAIL


class ParseError(Exception):
    def __init__(self, message, pos=None):
        super().__init__(message if pos is None else f"{message} (at position {pos})")
        self.pos = pos


class SortError(Exception):
    """Operands of incompatible sorts."""


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_WORD_TOKENS = [
    "xi-", "xi+", "xiz", "xi0", "del",
    "w-", "w+", "wz", "w0", "e-", "e+", "ez", "e0",
    "a!", "a*", "c!", "c*", "K^-1", "a", "c", "E", "F", "K", "q", "s",
]


def tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("/\\", i):
            tokens.append(("wedge", "/\\", i))
            i += 2
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        matched = False
        for word in _WORD_TOKENS:
            if text.startswith(word, i):
                # "K^-1" must not shadow "K^2": only match when followed
                # by the full token
                tokens.append(("gen", word, i))
                i += len(word)
                matched = True
                break
        if matched:
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


# ---------------------------------------------------------------------------
# Typed values
# ---------------------------------------------------------------------------

SCALAR, AELEM, HELEM, FORM, CARTAN = "scalar", "A", "H", "form", "cartan"


class Value:
    __slots__ = ("sort", "data")

    def __init__(self, sort, data):
        self.sort = sort
        self.data = data


class Elaborator:
    """Parses and evaluates expressions against a fixed calculus."""

    def __init__(self, engine):
        self.engine = engine

    def parse(self, text):
        self.tokens = tokenize(text)
        self.pos = 0
        value = self.expr()
        kind, _, p = self.peek()
        if kind != "end":
            raise ParseError("trailing input", p)
        return value

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    # precedence: ^  >  * /  >  /\  >  + -
    def expr(self):
        value = self.wedge_level()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.wedge_level()
            value = self.add(value, rhs, op == "-")
        return value

    def wedge_level(self):
        value = self.term()
        while self.peek()[0] == "wedge":
            self.next()
            rhs = self.term()
            value = self.wedge(value, rhs)
        return value

    def term(self):
        value = self.power()
        while True:
            kind = self.peek()[0]
            if kind in ("*", "/"):
                op = self.next()[0]
                rhs = self.power()
                value = self.mul(value, rhs) if op == "*" else self.div(value, rhs)
            elif kind in ("gen", "int", "("):
                # juxtaposition binds like *
                rhs = self.power()
                value = self.mul(value, rhs)
            else:
                return value

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.next()
            sign = 1
            if self.peek()[0] == "-":
                self.next()
                sign = -1
            kind, v, p = self.next()
            if kind != "int":
                raise ParseError("integer exponent expected", p)
            return self.pow(base, sign * v)
        return base

    def atom(self):
        kind, v, p = self.next()
        if kind == "int":
            return Value(SCALAR, FieldElem.from_int(v))
        if kind == "-":
            inner = self.power()
            return self.negate(inner)
        if kind == "(":
            inner = self.expr()
            kind2, _, p2 = self.next()
            if kind2 != ")":
                raise ParseError("expected ')'", p2)
            return inner
        if kind == "gen":
            return self.generator(v)
        raise ParseError("unexpected token", p)

    def generator(self, name):
        eng = self.engine
        if name == "q":
            return Value(SCALAR, FieldElem.s_power(2))
        if name == "s":
            return Value(SCALAR, FieldElem.s_power(1))
        if name in ("a", "c"):
            return Value(AELEM, hc.gen(ALG_A, name))
        if name in ("a!", "a*"):
            return Value(AELEM, hc.GEN_ASTAR)
        if name in ("c!", "c*"):
            return Value(AELEM, hc.GEN_CSTAR)
        if name in ("E", "F", "K", "K^-1"):
            return Value(HELEM, hc.gen(ALG_H, name))
        if name.startswith("w"):
            return Value(FORM, Form.basis(IDX_OF[name[1]]))
        if name.startswith("e"):
            return Value(FORM, eng.ext.eta_form(IDX_OF[name[1]]))
        if name.startswith("xi"):
            return Value(CARTAN, eng.cartan.xi(IDX_OF[name[2]]))
        if name == "del":
            return Value(CARTAN, eng.cartan.delta())
        raise ParseError(f"unknown generator {name}")

    # -- sort-aware operations ------------------------------------------------

    def coerce(self, v, sort):
        if v.sort == sort:
            return v
        if v.sort == SCALAR:
            if sort == AELEM:
                return Value(AELEM, AlgebraElem.unit(ALG_A, v.data))
            if sort == HELEM:
                return Value(HELEM, AlgebraElem.unit(ALG_H, v.data))
            if sort == FORM:
                return Value(FORM, Form.scalar(AlgebraElem.unit(ALG_A, v.data)))
            if sort == CARTAN:
                return Value(CARTAN, CartanElem.unit(v.data))
        if v.sort == HELEM and sort == CARTAN:
            return Value(CARTAN, self.engine.cartan.embed_h(v.data))
        raise SortError(f"cannot use a {v.sort} value as {sort}")

    def add(self, x, y, subtract=False):
        if y.sort == SCALAR and x.sort != SCALAR:
            y = self.coerce(y, x.sort)
        if x.sort == SCALAR and y.sort != SCALAR:
            x = self.coerce(x, y.sort)
        if x.sort != y.sort:
            if CARTAN in (x.sort, y.sort) and HELEM in (x.sort, y.sort):
                x, y = self.coerce(x, CARTAN), self.coerce(y, CARTAN)
            else:
                raise SortError(f"cannot add {x.sort} and {y.sort}")
        if subtract:
            if x.sort == SCALAR:
                return Value(SCALAR, x.data - y.data)
            return Value(x.sort, x.data - y.data)
        if x.sort == SCALAR:
            return Value(SCALAR, x.data + y.data)
        return Value(x.sort, x.data + y.data)

    def negate(self, x):
        return Value(x.sort, -x.data)

    def mul(self, x, y):
        eng = self.engine
        if x.sort == SCALAR and y.sort == SCALAR:
            return Value(SCALAR, x.data * y.data)
        if x.sort == SCALAR:
            return Value(y.sort, y.data.scale(x.data) if y.sort != SCALAR else 0)
        if y.sort == SCALAR:
            return Value(x.sort, x.data.scale(y.data))
        if x.sort == AELEM and y.sort == AELEM:
            return Value(AELEM, x.data * y.data)
        if x.sort == HELEM and y.sort == HELEM:
            return Value(HELEM, x.data * y.data)
        if x.sort == AELEM and y.sort == FORM:
            return Value(FORM, y.data.lmul(x.data))
        if x.sort == FORM and y.sort == AELEM:
            return Value(FORM, eng.ext.form_rmul(x.data, y.data))
        if x.sort == FORM and y.sort == FORM:
            raise SortError("use /\\ for products of forms")
        if x.sort in (HELEM, CARTAN) and y.sort in (HELEM, CARTAN):
            cx = self.coerce(x, CARTAN)
            cy = self.coerce(y, CARTAN)
            return Value(CARTAN, eng.cartan.multiply(cx.data, cy.data))
        raise SortError(f"cannot multiply {x.sort} and {y.sort}")

    def div(self, x, y):
        if x.sort == SCALAR and y.sort == SCALAR:
            return Value(SCALAR, x.data / y.data)
        raise SortError("division is defined for scalar subexpressions only")

    def pow(self, x, n):
        if x.sort == SCALAR:
            return Value(SCALAR, x.data ** n)
        if n < 0:
            if x.sort == HELEM and list(x.data.terms) in ([(0, 1, 0)], [(0, -1, 0)]):
                (m, c), = x.data.terms.items()
                return Value(HELEM, AlgebraElem.mono(ALG_H, (0, m[1] * n, 0), c ** n))
            raise SortError("negative exponents only on K, q and s")
        out = None
        for _ in range(n):
            out = x if out is None else self.mul(out, x)
        if out is None:
            return Value(SCALAR, ONE)
        return out

    def wedge(self, x, y):
        if x.sort != FORM or y.sort != FORM:
            raise SortError(
                f"/\\ requires forms; got {x.sort} and {y.sort} "
                "(coefficients go in explicit product position, e.g. \"(c!) * w-\")")
        return Value(FORM, self.engine.ext.wedge(x.data, y.data))


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def print_scalar(x):
    return field_str(x)


def print_aelem(x):
    return elem_str(x)


def print_form(a):
    if a.is_zero:
        return "0"
    parts = []
    for w in sorted(a.terms, key=lambda w: (len(w), w)):
        x = a.terms[w]
        word = " /\\ ".join("w" + IDX[i] for i in w)
        xs = elem_str(x)
        if not w:
            body, neg = _strip_sign(xs)
            parts.append((neg, body))
            continue
        body, neg = _strip_sign(xs)
        if body == "1":
            parts.append((neg, word))
        elif " + " in body or " - " in body:
            parts.append((neg, f"({body}) * {word}"))
        else:
            parts.append((neg, f"{body} * {word}"))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _strip_sign(text):
    if text.startswith("-") and " + " not in text and " - " not in text:
        return text[1:], "-"
    return text, "+"


def print_cartan(c):
    if c.is_zero:
        return "0"
    parts = []
    for w in sorted(c.terms):
        h = c.terms[w]
        word = " * ".join(ODD_NAMES[i] for i in w)
        hs = elem_str(h)
        if not w:
            body, neg = _strip_sign(hs)
            parts.append((neg, body))
        else:
            body, neg = _strip_sign(hs)
            if body == "1":
                parts.append((neg, word))
            elif " + " in body or " - " in body:
                parts.append((neg, f"({body}) * {word}"))
            else:
                parts.append((neg, f"{body} * {word}"))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def print_value(v):
    if v.sort == SCALAR:
        return print_scalar(v.data)
    if v.sort in (AELEM, HELEM):
        return print_aelem(v.data)
    if v.sort == FORM:
        return print_form(v.data)
    return print_cartan(v.data)


# ---------------------------------------------------------------------------
# Engine: lazily built shared state
# ---------------------------------------------------------------------------

class Engine:
    def __init__(self, degree_cap=None, golden_overrides=None):
        self.tables = build_tables(golden_overrides)
        self.ext = ExteriorCalculus(self.tables, degree_cap=degree_cap)
        self.cartan = CartanCalculus(self.tables, self.ext)

    def elaborator(self):
        return Elaborator(self)


# ---------------------------------------------------------------------------
# Operator names
# ---------------------------------------------------------------------------

def parse_operator(engine, name):
    """Map operator names (L-, Lz, Lf[i][j], i-, d; right-prefixed R:) to
    callables on forms."""
    ext = engine.ext
    right = name.startswith("R:")
    base = name[2:] if right else name
    if base == "d":
        return ext.differential
    if base.startswith("Lf[") and base.endswith("]"):
        inner = base[3:-1]
        parts = inner.split("][")
        if len(parts) != 2 or any(p not in IDX_OF for p in parts):
            raise ParseError(f"bad operator name {name!r}")
        i, j = IDX_OF[parts[0]], IDX_OF[parts[1]]
        if right:
            return lambda a: ext.LRf(i, j, a)
        return lambda a: ext.Lf(i, j, a)
    if base.startswith("L") and base[1:] in IDX_OF:
        i = IDX_OF[base[1:]]
        if right:
            return lambda a: ext.LR(i, a)
        return lambda a: ext.L(i, a)
    if base.startswith("i") and base[1:] in IDX_OF:
        i = IDX_OF[base[1:]]
        if right:
            return lambda a: ext.inner_right(i, a)
        return lambda a: ext.inner(i, a)
    raise ParseError(f"unknown operator {name!r}")


# ---------------------------------------------------------------------------
# Verification groups
# ---------------------------------------------------------------------------

VERIFY_GROUPS = ("hopf", "tables", "kernels", "identities", "bialgebra",
                 "antipode", "left-rep", "right-rep", "exterior")


def run_group(engine, group, degree_cap, seed):
    from . import verifyext
    tables = engine.tables
    if group == "hopf":
        out = []
        for alg in (ALG_A, ALG_H):
            for cid, ok, wit in hc.verify_hopf_axioms(alg, 2):
                out.append(CheckResult(cid, PASS if ok else FAIL, wit))
        out.extend(verifyext.verify_pairing_properties(seed))
        return out
    if group == "tables":
        return c4.verify_golden_tables(tables) + c4.verify_Sf_matrices(tables)
    if group == "kernels":
        return c4.verify_kernels(tables) + c4.verify_t_matrix(tables)
    if group == "identities":
        return (c4.verify_fundamental_identities(tables)
                + verifyext.verify_ids2(engine.cartan))
    if group == "bialgebra":
        return engine.cartan.verify_bialgebra()
    if group == "antipode":
        return engine.cartan.verify_antipode(seed=seed)
    if group == "left-rep":
        return engine.cartan.verify_left_representation(degree_cap, seed=seed)
    if group == "right-rep":
        return engine.cartan.verify_right_representation(degree_cap, seed=seed)
    if group == "exterior":
        return verifyext.verify_exterior(engine.ext, seed)
    raise KeyError(group)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _default_cap():
    return int(os.environ.get("CARTANQ_DEGREE_CAP", "3"))


def cmd_normal_form(engine, args):
    v = engine.elaborator().parse(args.expr)
    print(print_value(v))
    return 0


def cmd_d(engine, args):
    v = engine.elaborator().parse(args.expr)
    if v.sort == AELEM:
        v = Value(FORM, Form.scalar(v.data))
    elif v.sort == SCALAR:
        v = Value(FORM, Form.scalar(AlgebraElem.unit(ALG_A, v.data)))
    if v.sort != FORM:
        raise SortError("d applies to forms and A elements")
    print(print_form(engine.ext.differential(v.data)))
    return 0


def cmd_apply(engine, args):
    op = parse_operator(engine, args.op)
    v = engine.elaborator().parse(args.expr)
    if v.sort == AELEM:
        v = Value(FORM, Form.scalar(v.data))
    elif v.sort == SCALAR:
        v = Value(FORM, Form.scalar(AlgebraElem.unit(ALG_A, v.data)))
    if v.sort != FORM:
        raise SortError("operators apply to forms")
    print(print_form(op(v.data)))
    return 0


def cmd_eval(engine, args):
    v = engine.elaborator().parse(args.expr)
    if v.sort != SCALAR:
        raise SortError("eval requires a scalar expression")
    print(v.data.evaluate(Fraction(args.s)))
    return 0


def cmd_tables(engine, args):
    data = export_table(engine.tables, args.name)
    if args.format == "json":
        print(json.dumps(data, indent=1, sort_keys=True))
    else:
        _print_table_text(engine.tables, args.name, data)
    return 0


def _print_table_text(tables, name, data):
    if name in ("sigma", "t", "t-morphism"):
        for i in range(4):
            for j in range(4):
                for k in range(4):
                    for l in range(4):
                        v = data["entries"][i][j][k][l]
                        if v != "0":
                            print(f"{name}[{IDX[i]}{IDX[j]}][{IDX[k]}{IDX[l]}] = {v}")
    elif name == "C":
        for k in range(4):
            for i in range(4):
                for j in range(4):
                    v = data["entries"][k][i][j]
                    if v != "0":
                        print(f"C^{IDX[k]}[{IDX[i]}{IDX[j]}] = {v}")
    elif name == "X":
        for i in range(4):
            print(f"X[{IDX[i]}] = {elem_str(tables.X[i])}")
    else:
        grid = {"f": tables.f, "J": tables.J,
                "Sf": [[tables.Sf(i, j) for j in range(4)] for i in range(4)],
                "Sf-inv": [[tables.Sf_inv(i, j) for j in range(4)] for i in range(4)]}[name]
        for i in range(4):
            for j in range(4):
                if not grid[i][j].is_zero:
                    print(f"{name}[{IDX[i]}{IDX[j]}] = {elem_str(grid[i][j])}")


def cmd_kernel(engine, args):
    which = "sigma" if args.which == "sigma" else "sigma-t"
    vectors = kernel_vectors(engine.tables, "sigma" if which == "sigma" else "t")
    print(json.dumps({"kernel": which, "basis": list(IDX), "vectors": vectors},
                     indent=1, sort_keys=True))
    return 0


def cmd_verify(engine, args):
    groups = args.groups or ["all"]
    if "all" in groups:
        groups = list(VERIFY_GROUPS)
    bad = [g for g in groups if g not in VERIFY_GROUPS]
    if bad:
        print(f"unknown verification group(s): {', '.join(bad)}", file=sys.stderr)
        return 2
    report = VerifyReport()
    for group in groups:
        report.extend(run_group(engine, group, args.degree_cap, args.seed))
    for line in report.lines():
        print(line)
    return 0 if report.all_ok else 1


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="cartanq",
        description="Exact engine for the q-deformed Cartan calculus on the "
                    "quantum SU(2).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normal-form", help="parse and print in canonical form")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_normal_form)

    p = sub.add_parser("d", help="apply the differential")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_d)

    p = sub.add_parser("apply", help="apply a Cartan operator to a form")
    p.add_argument("op", help="L-, L+, Lz, L0, Lf[i][j], i-, ..., i0, d; "
                              "right versions prefixed R:")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_apply)

    p = sub.add_parser("eval", help="evaluate a scalar exactly at s")
    p.add_argument("expr")
    p.add_argument("--s", required=True, help="rational value of s, e.g. 3/2")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("tables", help="export a table")
    p.add_argument("name", choices=["sigma", "C", "t", "t-morphism", "f", "J",
                                    "X", "Sf", "Sf-inv"])
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const",
                     const="json", default="json")
    fmt.add_argument("--text", dest="format", action="store_const", const="text")
    p.set_defaults(fn=cmd_tables)

    p = sub.add_parser("kernel", help="print a braiding kernel basis")
    p.add_argument("which", choices=["sigma", "sigma-t"])
    p.set_defaults(fn=cmd_kernel)

    p = sub.add_parser("verify", help="run verification groups")
    p.add_argument("groups", nargs="*",
                   help=f"groups: {', '.join(VERIFY_GROUPS)} or all")
    p.add_argument("--degree-cap", type=int, default=_default_cap())
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)

    args = parser.parse_args(argv)
    try:
        engine = Engine()
        return args.fn(engine, args)
    except (ParseError, SortError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PoleAtEvaluationPoint, DivisionByZero) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
