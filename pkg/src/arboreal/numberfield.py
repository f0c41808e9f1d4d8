"""Exact arithmetic in Q and in quadratic fields Q(sqrt(D)).

Every decision here (absolute value bounds, Mahler measure, integrality) is made
with rational arithmetic only; floats appear in ``approx`` for diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Union

from sympy import factorint

__all__ = [
    "QuadField",
    "QuadElem",
    "QQ",
    "QI",
    "QZ3",
    "MinimalPolynomial",
    "FieldMismatch",
    "squarefree_part",
    "field_of",
    "abs_cmp",
    "abs_leq",
    "abs_compare",
    "real_sign",
    "all_places_leq",
    "minimal_polynomial",
    "mahler_leq",
    "weil_height_leq_log",
    "is_algebraic_integer",
    "is_root_of_unity",
    "enumerate_height_bounded",
    "northcott_count",
    "I",
    "ZETA3",
    "ZETA6",
]

Number = Union[int, Fraction]


class FieldMismatch(ValueError):
    pass


def squarefree_part(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == f*f*s`` and ``s`` squarefree (sign kept in ``s``)."""
    if n == 0:
        raise ValueError("0 has no squarefree part")
    s, f = (1 if n > 0 else -1), 1
    for p, e in factorint(abs(n)).items():
        f *= p ** (e // 2)
        if e % 2:
            s *= p
    return s, f


@dataclass(frozen=True)
class QuadField:
    """Q(sqrt(D)) for squarefree D; ``D == 1`` is reserved for Q itself."""

    D: int

    def __post_init__(self):
        if self.D == 0:
            raise ValueError("D must be nonzero")
        if self.D != 1 and squarefree_part(self.D) != (self.D, 1):
            raise ValueError(f"D={self.D} is not squarefree")

    @property
    def is_rational(self) -> bool:
        return self.D == 1

    @property
    def is_imaginary(self) -> bool:
        return self.D < 0

    @property
    def degree(self) -> int:
        return 1 if self.is_rational else 2

    def places(self) -> tuple[int, ...]:
        """Archimedean places up to conjugation: two for real quadratic fields."""
        return (0, 1) if self.D > 1 else (0,)

    def __call__(self, a: Number = 0, b: Number = 0) -> QuadElem:
        return QuadElem(self, a, b)

    @cached_property
    def sqrt(self) -> QuadElem:
        if self.is_rational:
            raise ValueError("Q has no distinguished square root")
        return QuadElem(self, 0, 1)

    def __str__(self) -> str:
        return "Q" if self.is_rational else f"Q(sqrt({self.D}))"

    def __repr__(self) -> str:
        return f"QuadField({self.D})"


QQ = QuadField(1)
QI = QuadField(-1)
QZ3 = QuadField(-3)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if hasattr(x, "__index__") and not isinstance(x, bool):
        return Fraction(x.__index__())  # e.g. gmpy2 integers handed back by sympy
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class QuadElem:
    """The number ``a + b*sqrt(D)`` with rational ``a, b``.

    Elements of Q carry ``b == 0`` and coerce silently into any quadratic field;
    mixing two different quadratic fields raises :class:`FieldMismatch`.
    """

    __slots__ = ("field", "a", "b")

    def __init__(self, field: QuadField, a: Number = 0, b: Number = 0):
        a, b = _frac(a), _frac(b)
        if field.is_rational and b != 0:
            raise ValueError("elements of Q must have b == 0")
        self.field = field
        self.a = a
        self.b = b

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other) -> QuadElem | None:
        if isinstance(other, QuadElem):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.field, other)
        return None

    @staticmethod
    def _common(x: QuadElem, y: QuadElem) -> QuadField:
        if x.field == y.field:
            return x.field
        # rationals carry b == 0 whatever their field tag
        if x.b == 0:
            return y.field
        if y.b == 0:
            return x.field
        raise FieldMismatch(f"{x.field} vs {y.field}")

    def to_field(self, field: QuadField) -> QuadElem:
        if field == self.field:
            return self
        if self.b == 0:
            return QuadElem(field, self.a)
        raise FieldMismatch(f"cannot move {self} into {field}")

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self._common(self, o), self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.field, -self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self._common(self, o), self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self._common(self, o)
        D = F.D if not F.is_rational else 0
        return QuadElem(F, self.a * o.a + D * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadElem(self.field, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = QuadElem(self.field, 1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- invariants ---------------------------------------------------------
    def conj(self) -> QuadElem:
        return QuadElem(self.field, self.a, -self.b)

    def norm(self) -> Fraction:
        """``x * conj(x)``; for an element of Q this is ``a**2``, the norm from any K."""
        if self.b == 0:
            return self.a * self.a
        return self.a * self.a - self.field.D * self.b * self.b

    def trace(self) -> Fraction:
        """``x + conj(x)``."""
        return 2 * self.a

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def degree(self) -> int:
        return 1 if self.b == 0 else 2

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.a != o.a or self.b != o.b:
            return False
        return self.b == 0 or self.field == o.field

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.field.D if self.b else None))

    def approx(self, place: int = 0) -> complex:
        """Floating value under the given embedding; diagnostics only."""
        D = self.field.D
        if self.field.is_rational:
            return complex(float(self.a))
        if D < 0:
            return complex(float(self.a), float(self.b) * (-D) ** 0.5)
        s = 1 if place == 0 else -1
        return complex(float(self.a) + s * float(self.b) * D**0.5)

    def sort_key(self) -> tuple:
        return (self.degree, self.field.D if self.b else 1, self.a, self.b)

    # -- text / json --------------------------------------------------------
    def __str__(self) -> str:
        parts = []
        if self.a != 0 or self.b == 0:
            parts.append(str(self.a))
        if self.b != 0:
            coeff = self.b
            sign = "-" if coeff < 0 else "+"
            rad = f"sqrt({self.field.D})"
            mag = abs(coeff)
            body = rad if mag == 1 else f"{mag}*{rad}"
            if parts:
                parts.append(f"{sign} {body}")
            else:
                parts.append(body if sign == "+" else f"-{body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"QuadElem({self.field.D}, {self.a}, {self.b})"

    def to_json(self) -> dict:
        return {
            "D": self.field.D,
            "a": [self.a.numerator, self.a.denominator],
            "b": [self.b.numerator, self.b.denominator],
        }

    @classmethod
    def from_json(cls, obj: dict) -> QuadElem:
        return cls(QuadField(obj["D"]), Fraction(*obj["a"]), Fraction(*obj["b"]))


I = QI(0, 1)
ZETA3 = QZ3(Fraction(-1, 2), Fraction(1, 2))
ZETA6 = QZ3(Fraction(1, 2), Fraction(1, 2))


def field_of(values: Iterable[QuadElem]) -> QuadField:
    """Smallest common field of the given elements (Q if all rational)."""
    field = QQ
    for v in values:
        if v.b == 0:
            continue
        if field.is_rational:
            field = v.field
        elif field != v.field:
            raise FieldMismatch(f"{field} vs {v.field}")
    return field


# ---------------------------------------------------------------------------
# archimedean absolute values


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _cmp_sqrt(y: Fraction, D: int, r: Fraction) -> int:
    """Sign of ``y*sqrt(D) - r`` for D > 0, decided exactly."""
    if y == 0:
        return _sign(-r)
    if y > 0:
        if r <= 0:
            return 1
        return _sign(y * y * D - r * r)
    if r >= 0:
        return -1
    return -_sign(y * y * D - r * r)


def abs_cmp(x: QuadElem, t: Number, place: int = 0) -> int:
    """Sign of ``|x|_v - t`` at the archimedean place ``v``; ``t >= 0``."""
    t = _frac(t)
    if t < 0:
        raise ValueError("threshold must be nonnegative")
    F = x.field
    if x.b == 0 or F.is_rational:
        return _sign(abs(x.a) - t)
    if F.D < 0:
        return _sign(x.a * x.a - F.D * x.b * x.b - t * t)
    if place not in (0, 1):
        raise ValueError("real quadratic fields have places 0 and 1")
    y = x.b if place == 0 else -x.b
    upper = _cmp_sqrt(y, F.D, t - x.a)  # sign(x_v - t)
    lower = _cmp_sqrt(y, F.D, -t - x.a)  # sign(x_v + t)
    if upper > 0 or lower < 0:
        return 1
    if upper == 0 or lower == 0:
        return 0
    return -1


def real_sign(x: QuadElem, place: int = 0) -> int:
    """Sign of ``x`` under a real embedding (Q, or a real quadratic field)."""
    if x.b == 0:
        return _sign(x.a)
    if x.field.D < 0:
        raise ValueError("no real embedding")
    y = x.b if place == 0 else -x.b
    return _cmp_sqrt(y, x.field.D, -x.a)


def abs_compare(x: QuadElem, y: QuadElem, place: int = 0) -> int:
    """Sign of ``|x|_v - |y|_v``, decided exactly."""
    F = QuadElem._common(x, y)
    if F.D < 0 or (x.b == 0 and y.b == 0):
        return _sign(x.norm() - y.norm())
    x, y = x.to_field(F), y.to_field(F)
    diff = real_sign(x, place) * x - real_sign(y, place) * y
    return real_sign(diff, place)


def abs_leq(x: QuadElem, t: Number, place: int = 0) -> bool:
    return abs_cmp(x, t, place) <= 0


def all_places_leq(x: QuadElem, t: Number) -> bool:
    return all(abs_leq(x, t, v) for v in x.field.places())


# ---------------------------------------------------------------------------
# minimal polynomials, Mahler measure, heights


@dataclass(frozen=True)
class MinimalPolynomial:
    coeffs: tuple[int, ...]  # constant term first; primitive, positive leading coefficient

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def minimal_polynomial(x: QuadElem) -> MinimalPolynomial:
    if x.b == 0:
        p, q = x.a.numerator, x.a.denominator
        return MinimalPolynomial((-p, q))
    t, n = x.trace(), x.norm()
    lead = _lcm(t.denominator, n.denominator)
    c = [int(n * lead), int(-t * lead), lead]
    g = gcd(gcd(c[0], c[1]), c[2])
    return MinimalPolynomial(tuple(v // g for v in c))


def is_algebraic_integer(x: QuadElem) -> bool:
    if x.b == 0:
        return x.a.denominator == 1
    return x.trace().denominator == 1 and x.norm().denominator == 1


def mahler_leq(x: QuadElem, bound: Number) -> bool:
    """Decide ``M(x) <= bound`` exactly, M the Mahler measure of x's minimal polynomial."""
    bound = _frac(bound)
    mp = minimal_polynomial(x)
    if mp.degree == 1:
        return max(abs(x.a.numerator), x.a.denominator) <= bound
    lead = mp.lead
    if x.field.D < 0:
        return lead * max(Fraction(1), x.norm()) <= bound
    big = [v for v in (0, 1) if abs_cmp(x, 1, v) > 0]
    if not big:
        return lead <= bound
    if len(big) == 1:
        return abs_leq(x, bound / lead, big[0])
    return lead * abs(x.norm()) <= bound


def weil_height_leq_log(x: QuadElem, q: Number) -> bool:
    """Decide ``h(x) <= log q`` via ``M(x) <= q**deg(x)``."""
    q = _frac(q)
    if q <= 0:
        raise ValueError("q must be positive")
    if not x:
        raise ValueError("height comparison needs x != 0")
    return mahler_leq(x, q ** x.degree)


def is_root_of_unity(x: QuadElem) -> int | None:
    """Multiplicative order of ``x`` if it is a root of unity, else ``None``."""
    if not x:
        return None
    # roots of unity of degree <= 2 have order in {1, 2, 3, 4, 6}
    for k in (1, 2, 3, 4, 6):
        if x**k == 1:
            return k
    return None


# ---------------------------------------------------------------------------
# Northcott enumeration


def _squarefree_range(lo: int, hi: int) -> list[int]:
    out = []
    for D in range(lo, hi + 1):
        if D in (0, 1):
            continue
        if squarefree_part(D) == (D, 1):
            out.append(D)
    return out


def enumerate_height_bounded() -> list[QuadElem]:
    """Algebraic integers of degree <= 2 whose conjugates all have absolute value <= 2.

    One representative per conjugacy class (``b > 0`` for quadratic elements),
    degree-1 elements first.  Every member has ``h <= log 2``; the converse fails
    (``1 + sqrt(2)`` has Mahler measure below 4 but a conjugate of size > 2), and it
    is the absolute value bound that post-critically finite parameters satisfy.
    """
    found = [QQ(a) for a in range(-2, 3) if all_places_leq(QQ(a), 2)]
    # |x - conj(x)| = 2|b|sqrt|D| <= 4 and b >= 1/2 give |D| <= 16; |trace| <= 4.
    halves = [Fraction(k, 2) for k in range(-4, 5)]
    for D in _squarefree_range(-16, 16):
        F = QuadField(D)
        for a in halves:
            for b in halves:
                if b <= 0:
                    continue
                x = F(a, b)
                if is_algebraic_integer(x) and all_places_leq(x, 2):
                    found.append(x)
    found.sort(key=lambda x: x.sort_key())
    return found


def northcott_count() -> int:
    """Number of elements (conjugates counted) in :func:`enumerate_height_bounded`."""
    return sum(x.degree for x in enumerate_height_bounded())
