from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import isprime, primerange

from arboreal.bounds import (
    CSV_HEADER,
    Interval,
    az_floor,
    breusch_prime,
    height_gate,
    log_enclosure,
    radical_bound_check,
    radical_sweep,
)
from arboreal.numberfield import QI, QQ, QZ3, ZETA3, I, QuadField, enumerate_height_bounded, is_root_of_unity

mpmath.mp.dps = 60


def _mp(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


# -- logarithm enclosures ---------------------------------------------------------------------------


@pytest.mark.parametrize("x", [1, 2, 3, Fraction(1, 2), Fraction(13, 4), 10**6, Fraction(1, 10**9), Fraction(7, 3)])
def test_log_enclosure_examples(x):
    iv = log_enclosure(x, 80)
    ref = mpmath.log(_mp(Fraction(x)))
    assert _mp(iv.lo) <= ref <= _mp(iv.hi)
    assert iv.width <= Fraction(1, 2**76)


@settings(max_examples=200)
@given(st.fractions(min_value=Fraction(1, 10**6), max_value=10**6), st.integers(8, 120))
def test_log_enclosure_contains_reference(x, bits):
    iv = log_enclosure(x, bits)
    ref = mpmath.log(_mp(x))
    assert _mp(iv.lo) <= ref <= _mp(iv.hi)
    assert iv.width <= Fraction(1, 2 ** (bits - 4))


def test_log_enclosure_errors_and_interval():
    with pytest.raises(ValueError):
        log_enclosure(0)
    with pytest.raises(ValueError):
        Interval(Fraction(1), Fraction(0))
    a = Interval(Fraction(1), Fraction(2))
    assert (a - a) == Interval(Fraction(-1), Fraction(1))
    assert a.scale(-1) == Interval(Fraction(-2), Fraction(-1))
    assert log_enclosure(1) == Interval(Fraction(0), Fraction(0))


# -- Breusch primes ------------------------------------------------------------------------------


def test_breusch_prime_examples():
    assert breusch_prime(2) == 13
    assert breusch_prime(3) == 19
    assert breusch_prime(36) == 223
    with pytest.raises(ValueError):
        breusch_prime(1)


def test_breusch_prime_sieve_oracle():
    for k in range(2, 201):
        sieve = [p for p in primerange(6 * k + 1, 12 * k + 1) if p % 3 == 1]
        p = breusch_prime(k)
        assert sieve and p == sieve[0]
        assert isprime(p) and p % 3 == 1 and 6 * k < p <= 12 * k


# -- height floors ---------------------------------------------------------------------------------


def test_az_floor_examples():
    iv = az_floor(13)
    ref = mpmath.log(mpmath.sqrt(13) / 2) / 14
    assert _mp(iv.lo) <= ref <= _mp(iv.hi)
    assert iv.width <= Fraction(1, 10**9)
    assert abs(float(iv.lo) - 0.0420948) < 1e-7
    assert az_floor(7).lo > 0
    assert az_floor(5).lo > 0  # sqrt(5)/2 > 1
    with pytest.raises(ValueError):
        az_floor(3)


def test_az_floor_decreasing_from_13():
    primes = [p for p in primerange(13, 2000) if p % 3 == 1][::7]
    ivs = [az_floor(p) for p in primes]
    assert all(a.lo > b.hi for a, b in zip(ivs, ivs[1:]))


@pytest.mark.parametrize("p", [5, 7, 13, 19, 31, 97, 223, 433, 10007])
def test_az_floor_contains_reference(p):
    iv = az_floor(p)
    ref = mpmath.log(mpmath.sqrt(p) / 2) / (p + 1)
    assert _mp(iv.lo) <= ref <= _mp(iv.hi)


# -- the radical bound -----------------------------------------------------------------------------


def test_radical_bound_boundary():
    r36, r37, r1000 = radical_bound_check(36), radical_bound_check(37), radical_bound_check(1000)
    assert r36.verdict and not r37.verdict and not r1000.verdict
    assert r36.p == 223
    for r in (r36, r37, r1000):
        k = r.k
        ref = mpmath.log(mpmath.sqrt(6 * k) / 2) / (12 * k + 1)
        assert _mp(r.bound.lo) <= ref <= _mp(r.bound.hi)
        # strict decision: the enclosure lies on one side of 1/(6k)
        assert r.bound.hi <= r.upper if r.verdict else r.bound.lo > r.upper
    with pytest.raises(ValueError):
        radical_bound_check(1)


def test_radical_sweep_antitone():
    rows = radical_sweep(120)
    verdicts = [r.verdict for r in rows]
    first_false = verdicts.index(False)
    assert rows[first_false].k == 37
    assert all(verdicts[:first_false]) and not any(verdicts[first_false:])
    assert CSV_HEADER.count(",") == rows[0].csv().count(",")


def test_height_gate():
    assert not height_gate(QQ(0)) and not height_gate(QQ(1)) and not height_gate(I)
    assert height_gate(QQ(2))
    assert not height_gate(QQ(3))
    assert height_gate(QI(1, 1))  # h = log(2)/2
    zeta9_free = ZETA3 - 1  # norm 3, house sqrt(3)
    assert height_gate(zeta9_free)
    assert not height_gate(QQ(Fraction(1, 3)))


def test_height_gate_against_numeric():
    """Compare with a floating evaluation of h(x) through the Mahler measure."""
    samples = [x for x in enumerate_height_bounded() if x]
    for F in (QI, QZ3, QuadField(2), QuadField(5)):
        samples += [F(Fraction(a, c), b) for a in range(-3, 4) for b in range(1, 3) for c in (1, 2)]
    decided = 0
    for x in samples:
        if is_root_of_unity(x) is not None:
            assert not height_gate(x)
            continue
        h = _numeric_height(x)
        if abs(h - math.log(2)) > 1e-9:
            assert height_gate(x) == (h <= math.log(2)), x
            decided += 1
    assert decided > 100


def _numeric_height(x) -> float:
    """Weil height via the minimal polynomial's Mahler measure."""
    import sympy

    t = sympy.Symbol("t")
    mp = sympy.Poly(sympy.minimal_polynomial(_sym(x), t), t)
    lead = abs(float(mp.LC()))
    m = lead * math.prod(max(1.0, abs(complex(r))) for r in mp.nroots(n=30))
    return math.log(m) / mp.degree()


def _sym(x):
    import sympy

    return sympy.Rational(x.a.numerator, x.a.denominator) + sympy.Rational(x.b.numerator, x.b.denominator) * sympy.sqrt(x.field.D)
