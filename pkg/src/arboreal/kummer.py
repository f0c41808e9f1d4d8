"""Factorisation in Z, Z[i], Z[zeta3] and power classes in K^x / (K^x)^n.

Every supported ring is a PID with a finite cyclic unit group, so

    K^x / (K^x)^n  =  Z/gcd(n, m)  x  (Z/n)^(primes)

where ``m`` is the number of units.  A :class:`PowerClass` stores exactly these
coordinates; span and cyclicity tests are linear algebra on them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from sympy import factorint
from sympy.ntheory import sqrt_mod

from .dynamics import UnicriticalMap, adjusted_orbit
from .numberfield import QQ, QI, QZ3, ZETA3, ZETA6, I, QuadElem, QuadField, field_of
from .poly import as_elem

__all__ = [
    "Ring",
    "RING_Z",
    "RING_ZI",
    "RING_ZW",
    "UnsupportedRing",
    "FactorBudgetExceeded",
    "ring_of",
    "FactoredElem",
    "factor",
    "PowerClass",
    "power_class",
    "is_pth_power",
    "is_nth_power",
    "nth_root",
    "class_matrix",
    "span_dim",
    "Certificate",
    "onedim_certificate",
    "cyclic_class_certificate",
    "xr_minus_a_irreducible",
]

FACTOR_BITS = 256


class UnsupportedRing(ValueError):
    pass


class FactorBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Ring:
    name: str
    field: QuadField
    unit_gen: QuadElem
    unit_order: int

    @property
    def D(self) -> int:
        return self.field.D

    # -- coordinates in the basis (1, omega), omega = i or zeta3 -------------
    def coords(self, x: QuadElem) -> tuple[Fraction, Fraction]:
        if self.D == 1:
            return (x.a, Fraction(0))
        if self.D == -1:
            return (x.a, x.b)
        return (x.a + x.b, 2 * x.b)

    def from_coords(self, x, y) -> QuadElem:
        if self.D == 1:
            return QQ(x)
        if self.D == -1:
            return QI(x, y)
        return QZ3(Fraction(x) - Fraction(y, 2), Fraction(y, 2))

    def is_integral(self, x: QuadElem) -> bool:
        return all(c.denominator == 1 for c in self.coords(x))

    def norm(self, x: QuadElem) -> int:
        n = x.norm() if self.D != 1 else abs(x.a)
        return int(n)

    def unit_power(self, k: int) -> QuadElem:
        return self.unit_gen ** (k % self.unit_order)

    def unit_index(self, u: QuadElem) -> int:
        for k in range(self.unit_order):
            if self.unit_power(k) == u:
                return k
        raise ValueError(f"{u} is not a unit of {self.name}")

    def round_div(self, a: QuadElem, b: QuadElem) -> QuadElem:
        x, y = self.coords(a / b)
        return self.from_coords(_round(x), _round(y))

    def gcd(self, a: QuadElem, b: QuadElem) -> QuadElem:
        while b:
            a, b = b, a - self.round_div(a, b) * b
        return a

    def canonical(self, p: QuadElem) -> QuadElem:
        """Distinguished associate of a prime element."""
        if self.D == 1:
            return QQ(abs(p.a))
        if self.D == -3 and self.norm(p) == 3:
            return self.from_coords(1, 2)  # sqrt(-3) = 1 + 2*zeta3
        for k in range(self.unit_order):
            q = self.unit_power(k) * p
            x, y = self.coords(q)
            if self.D == -1 and x > 0 and y >= 0:
                return q
            if self.D == -3 and x > y >= 0:
                return q
        raise AssertionError("no canonical associate found")

    def primes_above(self, p: int) -> list[QuadElem]:
        if self.D == 1:
            return [QQ(p)]
        if self.D == -1:
            if p == 2:
                return [QI(1, 1)]
            if p % 4 == 3:
                return [QI(p)]
            t = int(sqrt_mod(-1, p))
            pi = self.canonical(self.gcd(QI(p), QI(t, 1)))
            return sorted({pi, self.canonical(pi.conj())}, key=self.prime_key)
        if p == 3:
            return [self.from_coords(1, 2)]
        if p % 3 == 2:
            return [QZ3(p)]
        s = int(sqrt_mod(-3, p))
        t = (s - 1) * pow(2, -1, p) % p  # t^2 + t + 1 = 0 mod p
        pi = self.canonical(self.gcd(QZ3(p), QZ3(t) - ZETA3))
        return sorted({pi, self.canonical(pi.conj())}, key=self.prime_key)

    def prime_key(self, p: QuadElem) -> tuple:
        return (self.norm(p), self.coords(p))

    def __repr__(self) -> str:
        return f"Ring({self.name})"


def _round(q: Fraction) -> int:
    return math.floor(q + Fraction(1, 2))


RING_Z = Ring("Z", QQ, QQ(-1), 2)
RING_ZI = Ring("Z[i]", QI, I, 4)
RING_ZW = Ring("Z[zeta3]", QZ3, ZETA6, 6)
_RINGS = {1: RING_Z, -1: RING_ZI, -3: RING_ZW}


def ring_of(field: QuadField) -> Ring:
    try:
        return _RINGS[field.D]
    except KeyError:
        raise UnsupportedRing(f"no factorisation support for {field}") from None


def _target_ring(x: QuadElem, field: QuadField | None) -> tuple[Ring, QuadElem]:
    F = field if field is not None else x.field
    if not x.is_rational and x.field != F:
        raise UnsupportedRing(f"{x} does not lie in {F}")
    ring = ring_of(F)
    return ring, x.to_field(F)


# ---------------------------------------------------------------------------
# factorisation


@dataclass(frozen=True)
class FactoredElem:
    ring: Ring
    unit: int
    factors: tuple[tuple[QuadElem, int], ...]

    def value(self) -> QuadElem:
        out = self.ring.unit_power(self.unit)
        for p, e in self.factors:
            out = out * p**e
        return out

    def exponent(self, p: QuadElem) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def to_json(self) -> dict:
        return {
            "ring": self.ring.name,
            "unit": f"({self.ring.unit_gen})^{self.unit}",
            "factors": [[str(p), e] for p, e in self.factors],
        }


def _factor_integral(ring: Ring, x: QuadElem) -> tuple[int, dict[QuadElem, int]]:
    N = ring.norm(x)
    if N.bit_length() > FACTOR_BITS:
        raise FactorBudgetExceeded(f"norm has {N.bit_length()} bits")
    exps: dict[QuadElem, int] = {}
    for p in sorted(factorint(N)):
        for pi in ring.primes_above(p):
            while True:
                q = x / pi
                if not ring.is_integral(q):
                    break
                x = q
                exps[pi] = exps.get(pi, 0) + 1
    return ring.unit_index(x), exps


@lru_cache(maxsize=65536)
def _factor_cached(ring: Ring, x: QuadElem) -> FactoredElem:
    xs = ring.coords(x)
    den = math.lcm(*(c.denominator for c in xs))
    u1, e1 = _factor_integral(ring, x * den)
    u2, e2 = _factor_integral(ring, QQ(den).to_field(ring.field) if ring.D != 1 else QQ(den))
    exps = dict(e1)
    for p, e in e2.items():
        exps[p] = exps.get(p, 0) - e
    factors = tuple(sorted(((p, e) for p, e in exps.items() if e), key=lambda t: ring.prime_key(t[0])))
    return FactoredElem(ring, (u1 - u2) % ring.unit_order, factors)


def factor(x, field: QuadField | None = None) -> FactoredElem:
    """Unit times canonical primes; negative exponents for non-integral elements."""
    x = as_elem(x)
    if not x:
        raise ValueError("cannot factor 0")
    ring, x = _target_ring(x, field)
    return _factor_cached(ring, x)


# ---------------------------------------------------------------------------
# power classes


@dataclass(frozen=True)
class PowerClass:
    n: int
    ring: Ring
    unit: int  # residue mod gcd(n, unit_order)
    exps: tuple[tuple[QuadElem, int], ...]  # nonzero residues mod n

    @property
    def unit_modulus(self) -> int:
        return math.gcd(self.n, self.ring.unit_order)

    def is_trivial(self) -> bool:
        return self.unit == 0 and not self.exps

    def to_json(self) -> dict:
        return {"n": self.n, "unit": self.unit, "exps": [[str(p), e] for p, e in self.exps]}


def _class_of(fe: FactoredElem, n: int) -> PowerClass:
    g = math.gcd(n, fe.ring.unit_order)
    exps = tuple((p, e % n) for p, e in fe.factors if e % n)
    return PowerClass(n, fe.ring, fe.unit % g, exps)


def power_class(x, p: int, field: QuadField | None = None) -> PowerClass:
    return _class_of(factor(x, field), p)


def is_nth_power(x, n: int, field: QuadField | None = None) -> bool:
    return power_class(x, n, field).is_trivial()


def is_pth_power(x, p: int, field: QuadField | None = None) -> bool:
    return is_nth_power(x, p, field)


def nth_root(x, n: int, field: QuadField | None = None) -> QuadElem | None:
    """Some ``y`` with ``y**n == x``, or ``None`` if ``x`` is not an n-th power."""
    fe = factor(x, field)
    if not _class_of(fe, n).is_trivial():
        return None
    m = fe.ring.unit_order
    k = next(k for k in range(m) if (n * k - fe.unit) % m == 0)
    y = fe.ring.unit_power(k)
    for p, e in fe.factors:
        y = y * p ** (e // n)
    assert y**n == fe.value()
    return y


def class_matrix(classes: Sequence[PowerClass], p: int) -> tuple[list, list[list[int]]]:
    """Rows over F_p: optional unit coordinate, then the union of supports."""
    if not classes:
        return [], []
    ring = classes[0].ring
    columns: list = []
    if math.gcd(p, ring.unit_order) == p:
        columns.append("unit")
    primes = sorted({q for c in classes for q, _ in c.exps}, key=ring.prime_key)
    columns += primes
    rows = []
    for c in classes:
        d = dict(c.exps)
        row = [c.unit % p] if columns and columns[0] == "unit" else []
        row += [d.get(q, 0) % p for q in primes]
        rows.append(row)
    return columns, rows


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [list(r) for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] % p:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _infer_field(xs: Sequence[QuadElem]) -> QuadField:
    # rationals carry their tag too, matching what factor() does for a single element
    F = field_of(xs)
    if F.is_rational:
        tags = {x.field for x in xs}
        if len(tags) == 1:
            F = tags.pop()
    return F


def span_dim(xs: Sequence, p: int, field: QuadField | None = None) -> int:
    """F_p-dimension of the span of the classes of ``xs`` in K^x/(K^x)^p."""
    xs = [as_elem(x) for x in xs]
    if not xs:
        return 0
    F = field if field is not None else _infer_field(xs)
    classes = [power_class(x, p, F) for x in xs]
    _, rows = class_matrix(classes, p)
    return _rank_mod_p(rows, p) if rows and rows[0] else 0


# ---------------------------------------------------------------------------
# certificates


@dataclass
class Certificate:
    kind: str  # NonAbelianSpan | PreconditionFail | Inconclusive | CyclicPass
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"verdict": self.kind, **self.data}


def _required_field(F: QuadField, p: int) -> Ring:
    ring = ring_of(F)
    if p == 2:
        return ring
    if p == 3 and F.D == -3:
        return ring
    raise UnsupportedRing(f"{F} does not contain a primitive {p}-th root of unity")


def onedim_certificate(f: UnicriticalMap, alpha, p: int, N: int = 6) -> Certificate:
    """Test whether the classes of ``c^p_n / a`` (``n <= N``) span a line in K^x/(K^x)^p.

    Rank at least 2 proves the arboreal group of ``(f, alpha)`` non-abelian and is
    re-verified from scratch before being returned.  Rank at most 1 is reported as
    Inconclusive together with the square (or cube) roots that witness it.
    """
    alpha = as_elem(alpha)
    if f.d % p:
        raise ValueError(f"p={p} does not divide d={f.d}")
    F = field_of([f.a, f.b, alpha])
    _required_field(F, p)
    provenance = {"map": str(f), "alpha": str(alpha), "p": p, "N": N, "field": str(F)}
    base = (alpha - f.b) / f.a
    if not base:
        return Certificate("PreconditionFail", {**provenance, "reason": "(alpha - b)/a = 0"})
    sign = QQ(-1) ** (p - 1)
    for target, label in ((base, "K^p"), (sign * base, "(-1)^(p-1) K^p")):
        if is_pth_power(target, p, F):
            return Certificate(
                "PreconditionFail",
                {**provenance, "reason": f"(alpha - b)/a lies in {label}", "value": str(base)},
            )
    orbit = adjusted_orbit(f, alpha, N, p)
    if orbit.zeros:
        raise ValueError(f"adjusted orbit vanishes at n = {orbit.zeros}")
    values = [c / f.a for c in orbit.entries]
    classes = [power_class(v, p, F) for v in values]
    columns, rows = class_matrix(classes, p)
    rank = _rank_mod_p(rows, p) if rows and rows[0] else 0
    provenance.update(
        {
            "orbit": [str(c) for c in orbit.entries],
            "columns": [str(c) for c in columns],
            "matrix": rows,
            "rank": rank,
        }
    )
    if rank >= 2:
        i, j = _independent_pair(rows, p)
        for e1, e2 in itertools.product(range(p), repeat=2):
            if (e1, e2) == (0, 0):
                continue
            prod = values[i] ** e1 * values[j] ** e2
            if is_pth_power(prod, p, F):
                raise AssertionError("independence re-check failed")
        return Certificate("NonAbelianSpan", {**provenance, "indices": [i + 1, j + 1]})
    gamma_idx = next((k for k, c in enumerate(classes) if not c.is_trivial()), None)
    roots = []
    if gamma_idx is not None:
        gamma = values[gamma_idx]
        g_row = rows[gamma_idx]
        piv = next(k for k, v in enumerate(g_row) if v)
        for k, v in enumerate(values):
            e = rows[k][piv] * pow(g_row[piv], -1, p) % p
            target = v * gamma ** ((p - e) % p)
            r = nth_root(target, p, F)
            assert r is not None
            roots.append({"n": k + 1, "e": e, "root": str(r), "root_json": r.to_json()})
        provenance["gamma"] = {"n": gamma_idx + 1, "value": str(gamma)}
    else:
        for k, v in enumerate(values):
            r = nth_root(v, p, F)
            roots.append({"n": k + 1, "e": 0, "root": str(r), "root_json": r.to_json()})
    return Certificate("Inconclusive", {**provenance, "roots": roots})


def _independent_pair(rows: list[list[int]], p: int) -> tuple[int, int]:
    for i, j in itertools.combinations(range(len(rows)), 2):
        if _rank_mod_p([rows[i], rows[j]], p) == 2:
            return i, j
    raise AssertionError("rank >= 2 without an independent pair")


def _vector(fe: FactoredElem, primes: list, d1: int) -> tuple[int, ...]:
    g = math.gcd(d1, fe.ring.unit_order)
    return (fe.unit % g,) + tuple(fe.exponent(q) % d1 for q in primes)


def cyclic_class_certificate(classes: Sequence, d1: int, field: QuadField | None = None, budget: int = 10**6) -> Certificate:
    """Do the classes of ``classes`` in K^x/(K^x)^d1 lie in one cyclic subgroup?"""
    if d1 < 1:
        raise ValueError("d1 >= 1")
    fes = [c if isinstance(c, FactoredElem) else factor(as_elem(c), field) for c in classes]
    if not fes:
        return Certificate("CyclicPass", {"d1": d1, "order": 1, "generator": "1"})
    ring = fes[0].ring
    primes = sorted({q for fe in fes for q, _ in fe.factors}, key=ring.prime_key)
    g = math.gcd(d1, ring.unit_order)
    mods = (g,) + (d1,) * len(primes)
    gens = [_vector(fe, primes, d1) for fe in fes]

    data = {
        "d1": d1,
        "columns": ["unit"] + [str(q) for q in primes],
        "vectors": [list(v) for v in gens],
    }
    gen, size = _cyclic_generator(gens, mods, budget)
    data["order"] = size
    if gen is not None:
        elem = ring.unit_power(gen[0])
        for q, e in zip(primes, gen[1:]):
            elem = elem * q**e
        return Certificate("CyclicPass", {**data, "generator": str(elem), "generator_vector": list(gen)})
    for i, j in itertools.combinations(range(len(gens)), 2):
        if _cyclic_generator([gens[i], gens[j]], mods, budget)[0] is None:
            return Certificate("NonAbelianSpan", {**data, "indices": [i, j]})
    raise AssertionError("non-cyclic span without a non-cyclic pair")


def _cyclic_generator(gens: list[tuple], mods: tuple, budget: int) -> tuple[tuple | None, int]:
    """A generator of the subgroup spanned by ``gens`` in prod Z/mods (or None), and its order."""

    def add(u, v):
        return tuple((a + b) % m for a, b, m in zip(u, v, mods))

    zero = tuple(0 for _ in mods)
    H = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for v in gens:
                y = add(x, v)
                if y not in H:
                    H.add(y)
                    nxt.append(y)
                    if len(H) > budget:
                        raise RuntimeError("class subgroup exceeds budget")
        frontier = nxt

    def order(v):
        k, x = 1, v
        while x != zero:
            x = add(x, v)
            k += 1
        return k

    for v in sorted(H):
        if order(v) == len(H):
            return v, len(H)
    return None, len(H)


def xr_minus_a_irreducible(a, r: int, field: QuadField | None = None) -> bool:
    """``x^r - a`` is irreducible iff ``a`` is no p-th power for primes ``p | r`` and,
    when ``4 | r``, ``a`` is not in ``-4 K^4``."""
    a = as_elem(a)
    if not a:
        raise ValueError("a must be nonzero")
    if r < 1:
        raise ValueError("r >= 1")
    for p in factorint(r):
        if is_nth_power(a, p, field):
            return False
    if r % 4 == 0 and is_nth_power(-a / 4, 4, field):
        return False
    return True
