"""Polynomials with quadratic-field coefficients and a small expression parser.

The parser reads things like ``"x^2 + i"``, ``"(9i-7)/8"``, ``"4*y^4 - 4*x^2*y^2 + (4i+3)*x^2"``
or ``"zeta6*x^6 + sqrt(-3)"``.  The field is inferred from the constants; two
incompatible quadratic constants (say ``i`` and ``zeta3``) raise :class:`ParseError`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .numberfield import (
    QQ,
    QI,
    QZ3,
    FieldMismatch,
    QuadElem,
    QuadField,
    field_of,
    squarefree_part,
)

__all__ = ["Poly", "BiPoly", "ParseError", "parse_expr", "parse_number", "as_elem"]


def as_elem(x) -> QuadElem:
    if isinstance(x, QuadElem):
        return x
    if isinstance(x, (int, Fraction)):
        return QQ(x)
    raise TypeError(f"cannot interpret {x!r} as a field element")


# ---------------------------------------------------------------------------
# univariate


class Poly:
    """Univariate polynomial; ``coeffs[k]`` is the coefficient of ``x^k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [as_elem(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[QuadElem, ...] = tuple(cs)

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> Poly:
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def lead(self) -> QuadElem:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x):
        x = as_elem(x)
        acc = QQ(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _lift(self, other) -> Poly:
        return other if isinstance(other, Poly) else Poly([other])

    def __add__(self, other) -> Poly:
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        zero = QQ(0)
        return Poly(
            (self.coeffs[k] if k < len(self.coeffs) else zero)
            + (o.coeffs[k] if k < len(o.coeffs) else zero)
            for k in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> Poly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Poly:
        return self._lift(other) - self

    def __mul__(self, other) -> Poly:
        o = self._lift(other)
        if not self.coeffs or not o.coeffs:
            return Poly([])
        out = [QQ(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def compose(self, inner: Poly) -> Poly:
        """``self(inner(x))``."""
        acc = Poly([])
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def derivative(self) -> Poly:
        return Poly(c * k for k, c in enumerate(self.coeffs) if k > 0)

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [QQ(0)] * max(0, len(rem) - other.degree)
        inv = other.lead.inverse()
        while len(rem) - 1 >= other.degree and any(rem):
            shift = len(rem) - 1 - other.degree
            factor = rem[-1] * inv
            q[shift] = factor
            for k, c in enumerate(other.coeffs):
                rem[shift + k] = rem[shift + k] - factor * c
            rem.pop()
            while rem and not rem[-1]:
                rem.pop()
        return Poly(q), Poly(rem)

    def monic(self) -> Poly:
        return self * self.lead.inverse()

    def gcd(self, other: Poly) -> Poly:
        a, b = self, other
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic() if a else a

    def is_squarefree(self) -> bool:
        """No repeated roots over an algebraic closure (characteristic zero)."""
        return self.gcd(self.derivative()).degree == 0

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"


# ---------------------------------------------------------------------------
# bivariate


class BiPoly:
    """Polynomial in ``x, y``: a map ``(ex, ey) -> coefficient`` without zero entries."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean: dict[tuple[int, int], QuadElem] = {}
        for key, c in (terms or {}).items():
            c = as_elem(c)
            if c:
                clean[(int(key[0]), int(key[1]))] = c
        self.terms = clean

    @classmethod
    def var(cls, index: int) -> BiPoly:
        return cls({(1, 0) if index == 0 else (0, 1): 1})

    @classmethod
    def const(cls, c) -> BiPoly:
        return cls({(0, 0): c})

    @property
    def field(self) -> QuadField:
        return field_of(self.terms.values())

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def constant(self) -> QuadElem:
        return self.terms.get((0, 0), QQ(0))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def _lift(self, other) -> BiPoly:
        return other if isinstance(other, BiPoly) else BiPoly.const(other)

    def __add__(self, other) -> BiPoly:
        o = self._lift(other)
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out[k] + c if k in out else c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> BiPoly:
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> BiPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> BiPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> BiPoly:
        o = self._lift(other)
        out: dict[tuple[int, int], QuadElem] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in o.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out[k] + c1 * c2 if k in out else c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> BiPoly:
        result, base = BiPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x, y=0) -> QuadElem:
        x, y = as_elem(x), as_elem(y)
        acc = QQ(0)
        for (ex, ey), c in self.terms.items():
            acc = acc + c * x**ex * y**ey
        return acc

    def sorted_terms(self) -> list[tuple[int, int, QuadElem]]:
        return [(ex, ey, self.terms[(ex, ey)]) for ex, ey in sorted(self.terms, reverse=True)]

    def __repr__(self) -> str:
        return "BiPoly(" + ", ".join(f"{ex},{ey}:{c}" for ex, ey, c in self.sorted_terms()) + ")"


# ---------------------------------------------------------------------------
# parser


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")

_CONSTANTS = {
    "i": QI(0, 1),
    "zeta3": QZ3(Fraction(-1, 2), Fraction(1, 2)),
    "zeta6": QZ3(Fraction(1, 2), Fraction(1, 2)),
}


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def _sqrt_const(v: QuadElem) -> QuadElem:
    if v.b != 0:
        raise ParseError("sqrt() takes a rational argument")
    r = v.a
    if r == 0:
        return QQ(0)
    # sqrt(p/q) = sqrt(p*q)/q
    n, q = r.numerator * r.denominator, r.denominator
    s, f = squarefree_part(n)
    if s == 1:
        return QQ(Fraction(f, q))
    return QuadField(s)(0, Fraction(f, q))


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.toks = _tokenize(text)
        self.pos = 0
        self.variables = tuple(variables)
        if len(self.variables) > 2:
            raise ValueError("at most two variables")

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op: str):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}")

    def parse(self) -> BiPoly:
        if not self.toks:
            raise ParseError("empty expression")
        out = self.expr()
        if self.pos != len(self.toks):
            raise ParseError(f"trailing input at token {self.peek()[1]!r}")
        return out

    def expr(self) -> BiPoly:
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def _starts_primary(self) -> bool:
        kind, val = self.peek()
        return kind in ("num", "id") or (kind == "op" and val == "(")

    def term(self) -> BiPoly:
        acc = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in ("*", "/"):
                self.take()
                rhs = self.unary()
                if val == "*":
                    acc = acc * rhs
                else:
                    if not rhs.is_constant() or not rhs:
                        raise ParseError("division only by nonzero constants")
                    acc = acc * BiPoly.const(rhs.constant().inverse())
            elif self._starts_primary():
                acc = acc * self.power()
            else:
                return acc

    def unary(self) -> BiPoly:
        kind, val = self.peek()
        if kind == "op" and val in ("+", "-"):
            self.take()
            inner = self.unary()
            return -inner if val == "-" else inner
        return self.power()

    def power(self) -> BiPoly:
        base = self.primary()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer literal")
            e = sign * int(val)
            if e < 0:
                if not base.is_constant() or not base:
                    raise ParseError("negative exponents only on nonzero constants")
                return BiPoly.const(base.constant() ** e)
            return base**e
        return base

    def primary(self) -> BiPoly:
        kind, val = self.take()
        if kind == "num":
            return BiPoly.const(int(val))
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "id":
            if val in self.variables:
                return BiPoly.var(self.variables.index(val))
            if val in _CONSTANTS:
                return BiPoly.const(_CONSTANTS[val])
            if val == "sqrt":
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                if not arg.is_constant():
                    raise ParseError("sqrt() of a non-constant")
                return BiPoly.const(_sqrt_const(arg.constant()))
            raise ParseError(f"unknown identifier {val!r}")
        raise ParseError(f"unexpected token {val!r}")


def parse_expr(text: str, variables: Sequence[str] = ("x", "y")) -> BiPoly:
    try:
        return _Parser(text, variables).parse()
    except FieldMismatch as exc:
        raise ParseError(f"constants from different fields: {exc}") from exc
    except ZeroDivisionError as exc:
        raise ParseError("division by zero") from exc


def parse_number(text: str) -> QuadElem:
    poly = parse_expr(text, variables=())
    return poly.constant()

