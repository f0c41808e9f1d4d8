"""Certified height floors and the radical bound sweep.

Logarithms are enclosed in rational intervals through the series
``log y = 2 * sum z^(2j+1)/(2j+1)``, ``z = (y-1)/(y+1)``, with ``y`` reduced to
``[1, 2)`` by powers of two.  Intervals are rounded outward to dyadic rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime

from .numberfield import QuadElem, is_root_of_unity, weil_height_leq_log

__all__ = [
    "Interval",
    "log_enclosure",
    "breusch_prime",
    "az_floor",
    "RadicalBoundReport",
    "radical_bound_check",
    "radical_sweep",
    "height_gate",
    "UndecidedAtPrecision",
]

MAX_BITS = 3400  # about 10^3 decimal digits


class UndecidedAtPrecision(RuntimeError):
    pass


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other: Interval) -> Interval:
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: Interval) -> Interval:
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def scale(self, c: Fraction) -> Interval:
        c = Fraction(c)
        a, b = self.lo * c, self.hi * c
        return Interval(min(a, b), max(a, b))

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "approx": float((self.lo + self.hi) / 2)}


def _down(q: Fraction, bits: int) -> Fraction:
    return Fraction(math.floor(q * (1 << bits)), 1 << bits)


def _up(q: Fraction, bits: int) -> Fraction:
    return Fraction(math.ceil(q * (1 << bits)), 1 << bits)


def _artanh2(z: Fraction, bits: int) -> Interval:
    """Enclosure of ``2*artanh(z) = log((1+z)/(1-z))`` for ``0 <= z <= 1/3``."""
    if not z:
        return Interval(Fraction(0), Fraction(0))
    eps = Fraction(1, 1 << bits)
    work = bits + 8
    z2 = z * z
    p_lo = p_hi = z
    s_lo = s_hi = Fraction(0)
    j = 0
    while True:
        s_lo = _down(s_lo + p_lo / (2 * j + 1), work)
        s_hi = _up(s_hi + p_hi / (2 * j + 1), work)
        j += 1
        p_lo = _down(p_lo * z2, work)
        p_hi = _up(p_hi * z2, work)
        tail = p_hi / ((2 * j + 1) * (1 - z2))
        if tail < eps / 4:
            break
    return Interval(2 * s_lo, 2 * (s_hi + tail))


def log_enclosure(x, bits: int = 64) -> Interval:
    """Rational interval of width about ``2^-bits`` containing ``log x`` (``x > 0`` rational)."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log of a nonpositive number")
    k = x.numerator.bit_length() - x.denominator.bit_length()
    y = x / Fraction(2) ** k
    while y >= 2:
        y /= 2
        k += 1
    while y < 1:
        y *= 2
        k -= 1
    guard = bits + abs(k).bit_length() + 4
    ly = _artanh2((y - 1) / (y + 1), guard)
    l2 = _artanh2(Fraction(1, 3), guard)
    return ly + l2.scale(k)


def breusch_prime(k: int) -> int:
    """Least prime ``p = 1 mod 3`` with ``6k < p <= 12k``."""
    if k < 2:
        raise ValueError("k >= 2")
    for p in range(6 * k + 1, 12 * k + 1):
        if p % 3 == 1 and isprime(p):
            return p
    raise RuntimeError(f"no prime 1 mod 3 in ({6 * k}, {12 * k}]: contradicts Breusch's theorem")


def _floor_enclosure(num: int, den: int, bits: int) -> Interval:
    """Enclosure of ``log(sqrt(num)/2) / den``."""
    half_log = log_enclosure(num, bits + 4).scale(Fraction(1, 2))
    l2 = log_enclosure(2, bits + 4)
    return (half_log - l2).scale(Fraction(1, den))


def az_floor(p: int, bits: int = 40) -> Interval:
    """Certified enclosure of ``log(sqrt(p)/2)/(p+1)``, width at most ``1e-9``."""
    if p < 5:
        raise ValueError("p >= 5")
    while True:
        iv = _floor_enclosure(p, p + 1, bits)
        if iv.width <= Fraction(1, 10**9):
            return iv
        bits *= 2


@dataclass(frozen=True)
class RadicalBoundReport:
    k: int
    p: int
    floor: Interval  # log(sqrt(p)/2)/(p+1)
    bound: Interval  # log(sqrt(6k)/2)/(12k+1)
    upper: Fraction  # 1/(6k)
    verdict: bool

    def csv(self) -> str:
        return (
            f"{self.k},{self.p},{float(self.floor.lo):.12g},{float(self.floor.hi):.12g},"
            f"{float(self.bound.lo):.12g},{float(self.bound.hi):.12g},{self.upper},{str(self.verdict).lower()}"
        )

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "p": self.p,
            "floor": self.floor.to_json(),
            "bound": self.bound.to_json(),
            "upper": str(self.upper),
            "verdict": self.verdict,
        }


CSV_HEADER = "k,p,floor_lo,floor_hi,bound_lo,bound_hi,upper,verdict"


def radical_bound_check(k: int) -> RadicalBoundReport:
    """Decide ``1/(6k) >= log(sqrt(6k)/2)/(12k+1)`` with certified logarithms."""
    if k < 2:
        raise ValueError("k >= 2")
    upper = Fraction(1, 6 * k)
    bits = 48
    while True:
        iv = _floor_enclosure(6 * k, 12 * k + 1, bits)
        if iv.hi <= upper:
            verdict = True
            break
        if iv.lo > upper:
            verdict = False
            break
        bits *= 2
        if bits > MAX_BITS:
            raise UndecidedAtPrecision(f"k={k} undecided at {MAX_BITS} bits")
    p = breusch_prime(k)
    return RadicalBoundReport(k, p, az_floor(p), iv, upper, verdict)


def radical_sweep(kmax: int, kmin: int = 2) -> list[RadicalBoundReport]:
    return [radical_bound_check(k) for k in range(kmin, kmax + 1)]


def height_gate(x: QuadElem) -> bool:
    """``0 < h(x) <= log 2``, decided exactly through the Mahler measure."""
    if not x or is_root_of_unity(x) is not None:
        return False
    return weil_height_leq_log(x, 2)
