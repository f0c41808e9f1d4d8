"""Unicritical maps ``a*x^d + b`` over Q and quadratic fields.

Critical orbits are indexed from ``f^0(0) = 0``; adjusted orbits from ``n = 1``.
PCF decisions are exact and restricted to monic maps, where an escaping
iterate or a repeated value settles the question within a bound coming from
the Northcott enumeration.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

from sympy import factorint

from .numberfield import (
    QQ,
    QuadElem,
    QuadField,
    ZETA3,
    ZETA6,
    I,
    abs_compare,
    abs_leq,
    enumerate_height_bounded,
    field_of,
    is_algebraic_integer,
    is_root_of_unity,
    northcott_count,
)
from .poly import ParseError, Poly, as_elem, parse_expr

__all__ = [
    "UnicriticalMap",
    "Step",
    "PolySequence",
    "Periodic",
    "Escaped",
    "NonIntegral",
    "Truncated",
    "OrbitReport",
    "PcfVerdict",
    "parse_map",
    "p_sequence",
    "critical_orbit",
    "adjusted_orbit",
    "sequence_adjusted_orbit",
    "iterate_value",
    "iterate_poly",
    "leading_coefficient",
    "tilde_c",
    "product_formula_value",
    "pcf_bound",
    "is_pcf",
    "AtlasRow",
    "classify_pcf",
    "expected_pcf_parameters",
    "period_of_zero",
    "is_exceptional",
    "periodic_case_filter",
]


@dataclass(frozen=True)
class UnicriticalMap:
    a: QuadElem
    b: QuadElem
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", as_elem(self.a))
        object.__setattr__(self, "b", as_elem(self.b))
        if not self.a:
            raise ValueError("leading coefficient must be nonzero")
        if self.d < 2:
            raise ValueError("degree must be at least 2")
        field_of([self.a, self.b])  # raises on mixed fields

    @classmethod
    def monic(cls, b, d: int) -> UnicriticalMap:
        return cls(QQ(1), as_elem(b), d)

    @property
    def field(self) -> QuadField:
        return field_of([self.a, self.b])

    @property
    def is_monic(self) -> bool:
        return self.a == 1

    def __call__(self, x) -> QuadElem:
        return self.a * as_elem(x) ** self.d + self.b

    def as_poly(self) -> Poly:
        return Poly([self.b] + [0] * (self.d - 1) + [self.a])

    def __str__(self) -> str:
        lead = "" if self.a == 1 else f"({self.a})*"
        tail = "" if not self.b else f" + ({self.b})"
        return f"{lead}x^{self.d}{tail}"


def parse_map(text: str) -> UnicriticalMap:
    """Read ``"a*x^d + b"``; anything that is not of this shape is a :class:`ParseError`."""
    poly = parse_expr(text, variables=("x",))
    exps = sorted(ex for ex, _ in poly.terms)
    top = [e for e in exps if e > 0]
    if len(top) != 1 or top[0] < 2:
        raise ParseError(f"{text!r} is not of the form a*x^d + b with d >= 2")
    d = top[0]
    return UnicriticalMap(poly.terms[(d, 0)], poly.constant(), d)


# ---------------------------------------------------------------------------
# polynomial sequences


@dataclass(frozen=True)
class Step:
    a: QuadElem
    b: QuadElem
    n: int

    def __post_init__(self):
        object.__setattr__(self, "a", as_elem(self.a))
        object.__setattr__(self, "b", as_elem(self.b))
        if not self.a or self.n < 2:
            raise ValueError("need a != 0 and n >= 2")

    def __call__(self, x: QuadElem) -> QuadElem:
        return self.a * x**self.n + self.b


@dataclass(frozen=True)
class PolySequence:
    """``f_k = a_k x^{n_k} + b_k``; with ``cyclic`` the steps repeat with period ``len(steps)``."""

    steps: tuple[Step, ...]
    cyclic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise ValueError("empty sequence")

    def step(self, k: int) -> Step:
        if k < 1:
            raise IndexError("steps are one-based")
        if self.cyclic:
            return self.steps[(k - 1) % len(self.steps)]
        if k > len(self.steps):
            raise IndexError(f"sequence has only {len(self.steps)} steps")
        return self.steps[k - 1]

    def level_size(self, k: int) -> int:
        """``#L_k = n_1 * ... * n_k``."""
        out = 1
        for j in range(1, k + 1):
            out *= self.step(j).n
        return out


def _primes_with_multiplicity(d: int) -> list[int]:
    return [p for p, e in sorted(factorint(d).items()) for _ in range(e)]


def p_sequence(f: UnicriticalMap, p: int) -> PolySequence:
    """The block ``a x^p + b, x^p, ..., x^p, x^{q_1}, ..., x^{q_r}`` repeated forever."""
    primes = _primes_with_multiplicity(f.d)
    if p not in primes:
        raise ValueError(f"{p} does not divide {f.d}")
    n = primes.count(p)
    others = [q for q in primes if q != p]
    block = [Step(f.a, f.b, p)] + [Step(1, 0, p)] * (n - 1) + [Step(1, 0, q) for q in others]
    return PolySequence(tuple(block), cyclic=True)


def iterate_value(seq: PolySequence, k: int, x=0) -> QuadElem:
    """``f^{(k)}(x) = f_1(f_2(...f_k(x)))``."""
    x = as_elem(x)
    for j in range(k, 0, -1):
        x = seq.step(j)(x)
    return x


def iterate_poly(seq: PolySequence, k: int) -> Poly:
    out = Poly.x()
    for j in range(k, 0, -1):
        s = seq.step(j)
        out = Poly([s.b] + [0] * (s.n - 1) + [s.a]).compose(out)
    return out


def leading_coefficient(seq: PolySequence, k: int) -> QuadElem:
    """``lc(f^{(k)}) = prod_i a_i^{#L_{i-1}}``."""
    out = QQ(1)
    for i in range(1, k + 1):
        out = out * seq.step(i).a ** seq.level_size(i - 1)
    return out


def tilde_c(seq: PolySequence, alpha, k: int) -> QuadElem:
    """``(-1)^{#L_{k-1}} (f^{(k)}(0) - alpha) / lc(f^{(k)})``."""
    if k < 1:
        raise ValueError("k >= 1")
    alpha = as_elem(alpha)
    sign = -1 if seq.level_size(k - 1) % 2 else 1
    return sign * (iterate_value(seq, k) - alpha) / leading_coefficient(seq, k)


def product_formula_value(seq: PolySequence, alpha, k: int) -> QuadElem:
    """Independent evaluation of ``prod_{g(w)=0} (w - b_k)/a_k`` for ``g = f^{(k-1)} - alpha``.

    Uses the explicit polynomial ``g``: the product equals
    ``(-1)^N g(b_k) / (lc(g) a_k^N)`` with ``N = deg g``.
    """
    alpha = as_elem(alpha)
    g = iterate_poly(seq, k - 1) - Poly([alpha])
    step = seq.step(k)
    N = g.degree
    sign = -1 if N % 2 else 1
    return sign * g(step.b) / (g.lead * step.a**N)


# ---------------------------------------------------------------------------
# orbit reports


@dataclass(frozen=True)
class Periodic:
    preperiod: int
    period: int
    kind: str = "periodic"


@dataclass(frozen=True)
class Escaped:
    place: int
    index: int
    kind: str = "escaped"


@dataclass(frozen=True)
class NonIntegral:
    witness: str
    kind: str = "non-integral"


@dataclass(frozen=True)
class Truncated:
    N: int
    kind: str = "truncated"


Status = Union[Periodic, Escaped, NonIntegral, Truncated]


def _status_json(status: Status) -> dict:
    return dict(status.__dict__)


@dataclass
class OrbitReport:
    entries: list[QuadElem]
    status: Status
    zeros: list[int] = field(default_factory=list)
    first_index: int = 0

    def to_json(self) -> dict:
        out = {
            "entries": [str(x) for x in self.entries],
            "first_index": self.first_index,
            "status": _status_json(self.status),
        }
        if self.zeros:
            out["zeros"] = self.zeros
        return out


def _escape_place(x: QuadElem, field: QuadField) -> int | None:
    for v in field.places():
        if not abs_leq(x, 2, v):
            return v
    return None


def critical_orbit(f: UnicriticalMap, N: int, confirm_steps: int = 2) -> OrbitReport:
    """``f^n(0)`` for ``n = 0..N`` with exact cycle detection.

    For monic maps an iterate with some ``|.|_v > 2`` yields :class:`Escaped`; the
    orbit is then extended by ``confirm_steps`` iterates and their strict growth at
    ``v`` is asserted.
    """
    if N < 1:
        raise ValueError("N >= 1")
    K = f.field
    entries = [QQ(0)]
    seen = {entries[0]: 0}
    for n in range(1, N + 1):
        x = f(entries[-1])
        if x in seen:
            pre = seen[x]
            return OrbitReport(entries, Periodic(pre, n - pre))
        seen[x] = n
        entries.append(x)
        if f.is_monic:
            v = _escape_place(x, K)
            if v is not None:
                y = x
                for _ in range(confirm_steps):
                    z = f(y)
                    if abs_compare(z, y, v) <= 0:
                        raise AssertionError("escaped orbit failed to increase strictly")
                    entries.append(z)
                    y = z
                return OrbitReport(entries, Escaped(v, n))
    return OrbitReport(entries, Truncated(N))


def _smallest_prime(d: int) -> int:
    return min(factorint(d))


def adjusted_orbit(f: UnicriticalMap, alpha, N: int, p: int | None = None) -> OrbitReport:
    """``c^p_n``: ``-f(0) + alpha`` at ``n = 1`` when ``p = 2``, else ``f^n(0) - alpha``.

    ``p`` defaults to the smallest prime factor of ``d``.  Indices ``n`` with
    ``c_n = 0`` are listed in ``zeros``; the status is that of the critical orbit.
    """
    if N < 1:
        raise ValueError("N >= 1")
    alpha = as_elem(alpha)
    field_of([f.a, f.b, alpha])
    p = _smallest_prime(f.d) if p is None else p
    if f.d % p:
        raise ValueError(f"{p} does not divide {f.d}")
    values = []
    x = QQ(0)
    for _ in range(N):
        x = f(x)
        values.append(x)
    entries = [(-values[0] + alpha) if p == 2 else values[0] - alpha]
    entries += [v - alpha for v in values[1:]]
    zeros = [n + 1 for n, c in enumerate(entries) if not c]
    status = critical_orbit(f, N, confirm_steps=0).status
    return OrbitReport(entries, status, zeros, first_index=1)


def sequence_adjusted_orbit(seq: PolySequence, alpha, N: int) -> list[QuadElem]:
    """``c_n(F)``: ``-f_1(0) + alpha`` at ``n = 1`` when ``n_1 = 2``, else ``f^{(n)}(0) - alpha``."""
    alpha = as_elem(alpha)
    out = []
    for n in range(1, N + 1):
        v = iterate_value(seq, n)
        if n == 1 and seq.step(1).n == 2:
            out.append(-v + alpha)
        else:
            out.append(v - alpha)
    return out


# ---------------------------------------------------------------------------
# PCF decision


@lru_cache(maxsize=1)
def pcf_bound() -> int:
    """One more than the number of points (conjugates counted) any PCF orbit can visit."""
    return northcott_count() + 1


@dataclass
class PcfVerdict:
    pcf: bool
    witness: OrbitReport

    def to_json(self) -> dict:
        return {"pcf": self.pcf, "witness": self.witness.to_json()}


def is_pcf(f: UnicriticalMap) -> PcfVerdict:
    if not f.is_monic:
        raise ValueError("PCF decision is only implemented for monic maps")
    if not is_algebraic_integer(f.b):
        return PcfVerdict(False, OrbitReport([QQ(0), f.b], NonIntegral(f"{f.b} is not integral")))
    rep = critical_orbit(f, pcf_bound())
    if isinstance(rep.status, Periodic):
        return PcfVerdict(True, rep)
    if isinstance(rep.status, Escaped):
        return PcfVerdict(False, rep)
    raise AssertionError("orbit neither cycled nor escaped within the Northcott bound")


@dataclass(frozen=True)
class AtlasRow:
    c: QuadElem
    d: int
    pcf: bool
    witness: str

    @property
    def D(self) -> int:
        return self.c.field.D if self.c.b else 1

    def csv(self) -> str:
        return f"{self.D},{self.c},{self.d},{int(self.pcf)},{self.witness}"


def _witness_text(rep: OrbitReport) -> str:
    s = rep.status
    if isinstance(s, Periodic):
        return f"periodic preperiod={s.preperiod} period={s.period}"
    if isinstance(s, Escaped):
        return f"escaped n={s.index} place={s.place}"
    if isinstance(s, NonIntegral):
        return "non-integral"
    return f"truncated N={s.N}"


def _atlas_cell(args: tuple[QuadElem, int]) -> AtlasRow:
    c, d = args
    verdict = is_pcf(UnicriticalMap.monic(c, d))
    return AtlasRow(c, d, verdict.pcf, _witness_text(verdict.witness))


def atlas_candidates() -> list[QuadElem]:
    out = []
    for c in enumerate_height_bounded():
        out.append(c)
        if c.b:
            out.append(c.conj())
    return out


def classify_pcf(dmax: int, jobs: int = 1) -> list[AtlasRow]:
    """Run :func:`is_pcf` on ``x^d + c`` for ``2 <= d <= dmax`` and every candidate ``c``."""
    if dmax < 2:
        raise ValueError("dmax >= 2")
    cells = [(c, d) for d in range(2, dmax + 1) for c in atlas_candidates()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_atlas_cell, cells, chunksize=16))
    return [_atlas_cell(cell) for cell in cells]


def expected_pcf_parameters(d: int) -> set[QuadElem]:
    """The constants ``c`` with ``x^d + c`` PCF according to the classification theorem."""
    out = {QQ(0)}
    if d == 2:
        out |= {QQ(-2), I, -I}
    if d % 2 == 0:
        out.add(QQ(-1))
    if d % 4 == 3:
        out |= {I, -I}
    if d % 6 == 4:
        out |= {ZETA6, ZETA6.conj()}
    if d % 6 == 0:
        out |= {ZETA3, ZETA3.conj()}
    return out


# ---------------------------------------------------------------------------
# periodicity


def period_of_zero(f: UnicriticalMap, cap: int = 64) -> int | None | Truncated:
    """Least ``n >= 1`` with ``f^n(0) = 0``; ``None`` when 0 is provably not periodic.

    Monic maps are decided via :func:`is_pcf`.  Other maps are iterated up to ``cap``:
    a cycle avoiding 0 decides ``None``, otherwise :class:`Truncated` is returned.
    """
    if f.is_monic:
        verdict = is_pcf(f)
        s = verdict.witness.status
        if isinstance(s, Periodic) and s.preperiod == 0:
            return s.period
        return None
    seen = {QQ(0): 0}
    x = QQ(0)
    for n in range(1, cap + 1):
        x = f(x)
        if not x:
            return n
        if x in seen:
            return None
        seen[x] = n
    return Truncated(cap)


def is_exceptional(f: UnicriticalMap, alpha) -> bool:
    return not f.b and not as_elem(alpha)


def periodic_case_filter(f: UnicriticalMap, alpha) -> str:
    """Statement-level filter for maps whose critical point is periodic."""
    per = period_of_zero(f)
    if not isinstance(per, int):
        raise ValueError("0 is not known to be periodic for this map")
    alpha = as_elem(alpha)
    if not f.b and (not alpha or is_root_of_unity(alpha) is not None):
        return "conjectural-abelian"
    return "non-abelian by Theorem"
