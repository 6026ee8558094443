"""Textual operator expressions: parse to OpExpr and pretty-print back.

Grammar (whitespace-insensitive, explicit '*', no juxtaposition):

    expr    := ['-'] term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := atom ['^' ['-'] INT]
    atom    := INT ['/' INT]
             | 'a' | 'b' | 'w2' | 'r' | 'z' | 'zeta' | 'i'
             | 'dr' | 'dphi' | 'R' | 'I' | 'S'
             | TRIG '(' 'phi' [('+' | '-') INT '*' 'pi' '/' 'k'] ')'
             | '(' expr ')'
    TRIG    := 'tan' | 'cot' | 'sec2' | 'csc2' | 'seck' | 'tank'

'z' is e^{i phi}, 'zeta' the primitive N-th root of unity of the field
context, 'i' the imaginary unit.  Trig sugar elaborates immediately to the
exact rational function of z: tan/cot/sec2/csc2 take an optional shift
(phi + j*pi/k), seck and tank abbreviate 1/cos(k phi) and tan(k phi) and
take a bare phi.  Negative powers are allowed for r, z, zeta and for any
parenthesized group whose value is an invertible multiplication operator;
generator powers must be nonnegative (R^n is reduced mod 2k).  Syntax and
elaboration errors carry the offending position.

``pretty`` emits canonically ordered text that re-parses to an equal
OpExpr; it never uses the trig sugar, only exact z-rational coefficients.

>>> from dunklops.builders import build_Dr, build_Dphi
>>> ctx = ctx_new(3)
>>> elaborate(parse("dr - r^-1*(a*R + b)*(1 + R^2 + R^4)*I"), ctx) == build_Dr(3)
True
>>> parse_op("I*I", ctx) == op_one(ctx)
True
>>> parse_op("tan(phi + 2*pi/k)", ctx) == op_coeff(ctx, trig(ctx, "tan_shift", 2))
True
>>> pretty(build_S(4))
'1 + R^4'
>>> parse_op(pretty(build_Dphi(2)), ctx_new(2)) == build_Dphi(2)
True
"""

from __future__ import annotations

import re

from ._rat import RAT
from .builders import build_S
from .coeffring import ATOM_Z, Coefficient, ZRat, trig
from .cyclofield import FieldCtx, ctx_new
from .errors import CoeffError, ParseError
from .opalgebra import (OpExpr, op_I, op_R, op_coeff, op_dphi, op_dr, op_one,
                        op_param, op_r, op_scalar, op_zero)

__all__ = ["parse", "elaborate", "parse_op", "pretty", "pretty_coefficient",
           "pretty_zrat"]

_TRIG_SUGAR = {
    "tan": "tan_shift", "cot": "cot_shift",
    "sec2": "sec2_shift", "csc2": "csc2_shift",
    "seck": "sec_k", "tank": "tan_k",
}
_NAMES = {"a", "b", "w2", "r", "z", "zeta", "i", "dr", "dphi", "R", "I", "S"}
_KEYWORDS = _NAMES | set(_TRIG_SUGAR) | {"phi", "pi", "k"}

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*^()/]))")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at, text)
        start = m.start(1) if m.group(1) else (
            m.start(2) if m.group(2) else m.start(3))
        if m.group(1):
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2):
            word = m.group(2)
            if word not in _KEYWORDS:
                raise ParseError(f"unknown name {word!r}", start, text)
            toks.append(("word", word, start))
        else:
            toks.append(("sym", m.group(3), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.idx = 0

    def peek(self):
        return self.toks[self.idx]

    def advance(self):
        tok = self.toks[self.idx]
        self.idx += 1
        return tok

    def fail(self, message: str, pos: int | None = None):
        if pos is None:
            pos = self.peek()[2]
        raise ParseError(message, pos, self.text)

    def expect(self, kind: str, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            self.fail(f"expected {want!r}")
        return self.advance()

    def at_sym(self, *values) -> bool:
        tok = self.peek()
        return tok[0] == "sym" and tok[1] in values

    # -- grammar -------------------------------------------------------------

    def expr(self):
        pos = self.peek()[2]
        sign = 1
        if self.at_sym("-"):
            self.advance()
            sign = -1
        parts = [(sign, self.term())]
        while self.at_sym("+", "-"):
            s = 1 if self.advance()[1] == "+" else -1
            parts.append((s, self.term()))
        return ("sum", parts, pos)

    def term(self):
        pos = self.peek()[2]
        factors = [self.factor()]
        while self.at_sym("*"):
            self.advance()
            factors.append(self.factor())
        return ("prod", factors, pos)

    def factor(self):
        base = self.atom()
        if not self.at_sym("^"):
            return base
        self.advance()
        neg = False
        if self.at_sym("-"):
            self.advance()
            neg = True
        tok = self.expect("int")
        n = -tok[1] if neg else tok[1]
        return ("pow", base, n, base[-1])

    def atom(self):
        tok = self.peek()
        kind, value, pos = tok
        if kind == "int":
            self.advance()
            if self.at_sym("/"):
                self.advance()
                den = self.expect("int")[1]
                if den == 0:
                    self.fail("zero denominator", pos)
                return ("rat", RAT(value, den), pos)
            return ("rat", RAT(value), pos)
        if kind == "word" and value in _TRIG_SUGAR:
            self.advance()
            self.expect("sym", "(")
            self.expect("word", "phi")
            shift = 0
            if self.at_sym("+", "-"):
                s = 1 if self.advance()[1] == "+" else -1
                shift = s * self.expect("int")[1]
                self.expect("sym", "*")
                self.expect("word", "pi")
                self.expect("sym", "/")
                self.expect("word", "k")
            self.expect("sym", ")")
            return ("trig", value, shift, pos)
        if kind == "word" and value in _NAMES:
            self.advance()
            return ("name", value, pos)
        if kind == "sym" and value == "(":
            self.advance()
            inner = self.expr()
            self.expect("sym", ")")
            return ("group", inner, pos)
        self.fail("expected a value")


def parse(text: str, ctx: FieldCtx | None = None):
    """Parse operator-expression text into an AST (tuples); the context is
    accepted for signature symmetry and not needed until elaboration."""
    parser = _Parser(text)
    ast = parser.expr()
    if parser.peek()[0] != "end":
        parser.fail("trailing input")
    return ast


# ---------------------------------------------------------------------------
# elaboration
# ---------------------------------------------------------------------------


def _invert_op(op: OpExpr, n: int, pos: int, ctx) -> OpExpr:
    """op^(-n) for n > 0; defined only for invertible multiplication
    operators r^m * u(z)."""
    items = op.items()
    if len(items) != 1 or items[0][0] != (0, 0, 0, 0):
        raise ParseError("negative power of a non-coefficient operator", pos)
    coeff = items[0][1]
    monos = coeff.items()
    if len(monos) != 1 or monos[0][0][1:] != (0, 0, 0):
        raise ParseError("negative power of a non-invertible coefficient",
                         pos)
    (m, _, _, _), u = monos[0]
    try:
        inv = u.inv()
    except CoeffError as exc:
        raise ParseError(f"cannot invert coefficient: {exc}", pos)
    return op_coeff(ctx, Coefficient.monomial(ctx, inv ** n, m=-m * n))


def elaborate(ast, ctx: FieldCtx) -> OpExpr:
    """Evaluate an AST in the operator algebra over ``ctx``."""
    kind = ast[0]
    if kind == "sum":
        total = op_zero(ctx)
        for sign, node in ast[1]:
            part = elaborate(node, ctx)
            total = total + part if sign > 0 else total - part
        return total
    if kind == "prod":
        total = op_one(ctx)
        for node in ast[1]:
            total = total * elaborate(node, ctx)
        return total
    if kind == "pow":
        _, base, n, pos = ast
        base_op = elaborate(base, ctx)
        if n >= 0:
            return base_op ** n
        return _invert_op(base_op, -n, pos, ctx)
    if kind == "rat":
        return op_scalar(ctx, ast[1])
    if kind == "trig":
        _, name, shift, pos = ast
        tkind = _TRIG_SUGAR[name]
        if tkind in ("sec_k", "tan_k"):
            if shift:
                raise ParseError(f"{name} takes a bare phi argument", pos)
            return op_coeff(ctx, trig(ctx, tkind))
        return op_coeff(ctx, trig(ctx, tkind, shift % ctx.k))
    if kind == "group":
        return elaborate(ast[1], ctx)
    # names
    _, name, pos = ast
    if name in ("a", "b", "w2"):
        return op_param(ctx, name)
    if name == "r":
        return op_r(ctx, 1)
    if name == "z":
        return op_coeff(ctx, ZRat.z_power(ctx, 1))
    if name == "zeta":
        return op_scalar(ctx, ctx.root_power(1))
    if name == "i":
        return op_scalar(ctx, ctx.imag_unit())
    if name == "dr":
        return op_dr(ctx)
    if name == "dphi":
        return op_dphi(ctx)
    if name == "R":
        return op_R(ctx)
    if name == "I":
        return op_I(ctx)
    if name == "S":
        if ctx.k % 2:
            raise ParseError("S needs an even k", pos)
        return build_S(ctx)
    raise ParseError(f"unknown name {name!r}", pos)  # pragma: no cover


def parse_op(text: str, ctx: FieldCtx) -> OpExpr:
    """Parse and elaborate in one step."""
    ast = parse(text, ctx)
    try:
        return elaborate(ast, ctx)
    except ParseError as exc:
        if exc.text is None:
            raise ParseError(exc.args[0], exc.pos, text) from None
        raise


# ---------------------------------------------------------------------------
# pretty-printing
# ---------------------------------------------------------------------------


def _join_signed(parts) -> str:
    out = []
    for idx, (sign, txt) in enumerate(parts):
        if idx == 0:
            out.append(("-" if sign < 0 else "") + txt)
        else:
            out.append((" - " if sign < 0 else " + ") + txt)
    return "".join(out)


def _pow_factor(name: str, n: int) -> list:
    if n == 0:
        return []
    if n == 1:
        return [name]
    return [f"{name}^{n}"]


def _scalar_factors(c) -> tuple:
    """(sign, factors) for one field scalar as rational combinations of
    zeta powers; multi-term scalars come back as one parenthesized factor."""
    nz = [(j, q) for j, q in enumerate(c.coeffs) if q]
    if not nz:
        return 1, ["0"]
    if len(nz) == 1:
        j, q = nz[0]
        sign = -1 if q < 0 else 1
        aq = abs(q)
        factors = [] if (aq == 1 and j) else [str(aq)]
        factors += _pow_factor("zeta", j)
        return sign, factors
    parts = []
    for j, q in nz:
        sign = -1 if q < 0 else 1
        aq = abs(q)
        factors = ([] if (aq == 1 and j) else [str(aq)]) \
            + _pow_factor("zeta", j)
        parts.append((sign, "*".join(factors) or "1"))
    return 1, ["(" + _join_signed(parts) + ")"]


def _atom_base(atom) -> str:
    if atom == ATOM_Z:
        return "z"
    stem = "z" if atom[0] == "lin" else "z^2"
    s = atom[1]
    root = "1" if s == 0 else ("zeta" if s == 1 else f"zeta^{s}")
    return f"({stem} - {root})"


def _drop_unit(factors: list) -> list:
    if len(factors) > 1 and factors[0] == "1":
        return factors[1:]
    return factors


def _zrat_factors(zr: ZRat) -> tuple:
    nz = [(d, c) for d, c in enumerate(zr.num) if not c.is_zero()]
    if not nz:
        return 1, ["0"]
    if len(nz) == 1:
        d, c = nz[0]
        sign, factors = _scalar_factors(c)
        factors = _drop_unit(factors + _pow_factor("z", d))
    else:
        sign = 1
        parts = []
        for d, c in nz:
            s, f = _scalar_factors(c)
            f = _drop_unit(f + _pow_factor("z", d))
            parts.append((s, "*".join(f) or "1"))
        factors = ["(" + _join_signed(parts) + ")"]
    for atom, mult in zr.den:
        if atom == ATOM_Z:
            factors.append(f"z^-{mult}")
        else:
            factors.append(f"{_atom_base(atom)}^-{mult}")
    return sign, _drop_unit(factors)


def pretty_zrat(zr: ZRat) -> str:
    sign, factors = _zrat_factors(zr)
    txt = "*".join(factors) or "1"
    return "-" + txt if sign < 0 else txt


def _monomial_factors(mkey, zr) -> tuple:
    m, al, be, ga = mkey
    sign, factors = _zrat_factors(zr)
    if factors == ["1"] and (m or al or be or ga):
        factors = []
    factors += _pow_factor("r", m) + _pow_factor("a", al) \
        + _pow_factor("b", be) + _pow_factor("w2", ga)
    return sign, factors


def _coeff_parts(coeff: Coefficient) -> list:
    parts = []
    for mkey, zr in coeff.items():
        sign, factors = _monomial_factors(mkey, zr)
        parts.append((sign, "*".join(factors) or "1"))
    return parts


def pretty_coefficient(coeff: Coefficient) -> str:
    if coeff.is_zero():
        return "0"
    return _join_signed(_coeff_parts(coeff))


def _gen_factors(p: int, q: int, i: int, e: int) -> list:
    return (_pow_factor("dr", p) + _pow_factor("dphi", q)
            + _pow_factor("R", i) + (["I"] if e else []))


def pretty(op: OpExpr) -> str:
    """Canonical text form; re-parsing gives back an equal operator."""
    if op.is_zero():
        return "0"
    parts = []
    for (p, q, i, e), coeff in op.items():
        gens = _gen_factors(p, q, i, e)
        monos = coeff.items()
        if len(monos) == 1:
            sign, factors = _monomial_factors(monos[0][0], monos[0][1])
            if factors == ["1"] and gens:
                factors = []
        else:
            sign = 1
            factors = ["(" + _join_signed(_coeff_parts(coeff)) + ")"]
        factors += gens
        parts.append((sign, "*".join(factors) or "1"))
    return _join_signed(parts)
