"""Text syntax for rings, polynomials, maps and certificates.

Grammar (EBNF):

    ring     = "ZZ" | "QQ" | "GF" "(" integer ")" | ring "[t]/(t^" integer ")" ;
    map      = "(" expr "," expr ")" ;
    expr     = term { ("+" | "-") term } ;
    term     = unary { ["*"] unary } ;
    unary    = "-" unary | power ;
    power    = atom [ "^" integer ] ;
    atom     = number | "X" | "Y" | "t" | "(" expr ")" ;
    number   = integer [ "/" integer ] ;

"*" is optional between factors, "^" is the power operator, rationals are
written a/b, and t denotes the nilpotent generator of a truncated ring.
Formatting emits canonical text: terms in descending graded-lexicographic
order with truncated-ring coefficients expanded into one addend per t-layer,
so parse(format(x)) == x.
"""

import json
import re

from gmpy2 import mpq

from .autmap import (
    AffineShift,
    AutoMap,
    Certificate,
    ElementaryX,
    ElementaryY,
    LinearFactor,
)
from .errors import ParseError, UnknownRing
from .poly import Poly2
from .ring import GF, QQ, ZZ, PrimeField, RationalRing, IntegerRing, TruncatedRing, truncated

_RING_RE = re.compile(
    r"^\s*(ZZ|QQ|GF\(\s*(\d+)\s*\))\s*((?:\[t\]/\(t\^\d+\)\s*)*)$"
)
_TRUNC_RE = re.compile(r"\[t\]/\(t\^(\d+)\)")


def parse_ring(text):
    m = _RING_RE.match(text)
    if not m:
        raise UnknownRing(f"unrecognized ring {text!r}")
    if m.group(1) == "ZZ":
        ring = ZZ
    elif m.group(1) == "QQ":
        ring = QQ
    else:
        try:
            ring = GF(int(m.group(2)))
        except ValueError as exc:
            raise UnknownRing(str(exc)) from None
    for order in _TRUNC_RE.findall(m.group(3)):
        ring = truncated(ring, int(order))
    return ring


def format_ring(ring):
    if isinstance(ring, IntegerRing):
        return "ZZ"
    if isinstance(ring, RationalRing):
        return "QQ"
    if isinstance(ring, PrimeField):
        return f"GF({ring.p})"
    if isinstance(ring, TruncatedRing):
        return f"{format_ring(ring.base)}[t]/(t^{ring.m})"
    raise UnknownRing(f"cannot format {ring!r}")


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([XYt])|([+\-*/^(),])|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.group(4):
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r}", pos)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent over the expression grammar, building Poly2 values
    directly over the target ring."""

    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def at_op(self, op):
        kind, val, _ = self.peek()
        return kind == "op" and val == op

    def parse_expr(self):
        if self.at_op("-"):
            self.take()
            acc = -self.parse_term()
        else:
            acc = self.parse_term()
        while True:
            if self.at_op("+"):
                self.take()
                acc = acc + self.parse_term()
            elif self.at_op("-"):
                self.take()
                acc = acc - self.parse_term()
            else:
                return acc

    def parse_term(self):
        acc = self.parse_unary()
        while True:
            if self.at_op("*"):
                self.take()
                acc = acc * self.parse_unary()
                continue
            kind, val, _ = self.peek()
            if kind in ("int", "name") or (kind == "op" and val == "("):
                acc = acc * self.parse_unary()
                continue
            return acc

    def parse_unary(self):
        if self.at_op("-"):
            self.take()
            return -self.parse_unary()
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.at_op("^"):
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", pos)
            return base**val
        return base

    def parse_atom(self):
        kind, val, pos = self.take()
        R = self.ring
        if kind == "int":
            if self.at_op("/"):
                self.take()
                k2, den, p2 = self.take()
                if k2 != "int" or den == 0:
                    raise ParseError("expected a nonzero denominator", p2)
                return Poly2.constant(R, R.from_rational(mpq(val, den)))
            return Poly2.constant(R, R.from_int(val))
        if kind == "name":
            if val in ("X", "Y"):
                return Poly2.variable(R, val)
            if not isinstance(R, TruncatedRing):
                raise ParseError(f"t is not an element of {format_ring(R)}", pos)
            return Poly2.constant(R, R.t)
        if kind == "op" and val == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise ParseError("expected a number, variable or parenthesized term", pos)


def parse_poly(text, ring):
    parser = _Parser(text, ring)
    out = parser.parse_expr()
    kind, _, pos = parser.peek()
    if kind != "end":
        raise ParseError("trailing input after the expression", pos)
    return out


def parse_map(text, ring):
    parser = _Parser(text, ring)
    parser.expect_op("(")
    F = parser.parse_expr()
    parser.expect_op(",")
    G = parser.parse_expr()
    parser.expect_op(")")
    kind, _, pos = parser.peek()
    if kind != "end":
        raise ParseError("trailing input after the map", pos)
    return AutoMap(ring, F, G)


def _addends(f):
    """Flatten a polynomial into (sign, coeff_text, i, j, t_power) addends in
    canonical order."""
    R = f.ring
    out = []
    for (i, j), c in f.sorted_terms():
        if isinstance(R, TruncatedRing):
            for k, ck in enumerate(c):
                if R.base.is_zero(ck):
                    continue
                out.append((_coeff_text(R.base, ck), i, j, k))
        else:
            out.append((_coeff_text(R, c), i, j, None))
    return out


def _coeff_text(ring, c):
    if isinstance(ring, TruncatedRing):
        raise UnknownRing("nested truncated rings have no text form")
    return str(c)


def format_poly(f):
    addends = _addends(f)
    if not addends:
        return "0"
    parts = []
    for idx, (coeff, i, j, k) in enumerate(addends):
        neg = coeff.startswith("-")
        mag = coeff[1:] if neg else coeff
        bits = []
        if k:
            bits.append("t" if k == 1 else f"t^{k}")
        if i:
            bits.append("X" if i == 1 else f"X^{i}")
        if j:
            bits.append("Y" if j == 1 else f"Y^{j}")
        if mag != "1" or not bits:
            bits.insert(0, mag)
        text = "*".join(bits)
        if idx == 0:
            parts.append(f"-{text}" if neg else text)
        else:
            parts.append(f"- {text}" if neg else f"+ {text}")
    return " ".join(parts)


def format_map(phi):
    return f"({format_poly(phi.F)}, {format_poly(phi.G)})"


def format_element(ring, x):
    """Element text in the polynomial grammar (used inside factor data)."""
    if isinstance(ring, TruncatedRing):
        return format_poly(Poly2.constant(ring, x))
    return str(x)


def parse_element(text, ring):
    f = parse_poly(text, ring)
    if not f.is_constant():
        raise ParseError(f"{text!r} is not a ring element")
    return f.constant_value()


# -- certificate JSON schema -------------------------------------------------

_FACTOR_KINDS = {
    ElementaryX: "elemX",
    ElementaryY: "elemY",
    LinearFactor: "linear",
    AffineShift: "shift",
}


def factor_to_obj(fac):
    kind = _FACTOR_KINDS[type(fac)]
    if isinstance(fac, (ElementaryX, ElementaryY)):
        data = format_poly(fac.f)
    elif isinstance(fac, LinearFactor):
        R = fac.ring
        data = (
            f"[[{format_element(R, fac.a)}, {format_element(R, fac.b)}], "
            f"[{format_element(R, fac.c)}, {format_element(R, fac.d)}]]"
        )
    else:
        R = fac.ring
        data = f"({format_element(R, fac.a)}, {format_element(R, fac.b)})"
    return {"kind": kind, "data": data}


_LINEAR_DATA_RE = re.compile(
    r"^\s*\[\s*\[(?P<a>[^,\]]+),(?P<b>[^,\]]+)\]\s*,\s*\[(?P<c>[^,\]]+),(?P<d>[^,\]]+)\]\s*\]\s*$"
)


def factor_from_obj(obj, ring):
    kind = obj["kind"]
    data = obj["data"]
    if kind == "elemX":
        return ElementaryX(parse_poly(data, ring))
    if kind == "elemY":
        return ElementaryY(parse_poly(data, ring))
    if kind == "linear":
        m = _LINEAR_DATA_RE.match(data)
        if not m:
            raise ParseError(f"bad linear factor data {data!r}")
        a, b, c, d = (parse_element(m.group(g), ring) for g in "abcd")
        return LinearFactor(ring, a, b, c, d)
    if kind == "shift":
        stripped = data.strip()
        if not (stripped.startswith("(") and stripped.endswith(")")):
            raise ParseError(f"bad shift factor data {data!r}")
        a_text, b_text = stripped[1:-1].split(",", 1)
        return AffineShift(ring, parse_element(a_text, ring), parse_element(b_text, ring))
    raise ParseError(f"unknown factor kind {kind!r}")


def certificate_to_obj(cert, verdict="tame", witness=None):
    obj = {
        "ring": format_ring(cert.ring),
        "target": format_map(cert.target),
        "factors": [factor_to_obj(f) for f in cert.factors],
        "verdict": verdict,
    }
    if witness is not None:
        obj["witness"] = {
            "monomial": list(witness.monomial),
            "congruences": [list(witness.cong_u), list(witness.cong_v)],
            "modulus": witness.modulus,
        }
    return obj


def certificate_from_obj(obj):
    ring = parse_ring(obj["ring"])
    target = parse_map(obj["target"], ring)
    factors = [factor_from_obj(o, ring) for o in obj["factors"]]
    return Certificate(ring, target, factors)


def dump_json(obj):
    return json.dumps(obj, indent=2)
