from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import factorint, integer_nthroot

from arboreal.dynamics import UnicriticalMap
from arboreal.kummer import (
    RING_Z,
    RING_ZI,
    RING_ZW,
    FactorBudgetExceeded,
    UnsupportedRing,
    cyclic_class_certificate,
    factor,
    is_nth_power,
    is_pth_power,
    nth_root,
    onedim_certificate,
    power_class,
    span_dim,
    xr_minus_a_irreducible,
)
from arboreal.numberfield import QI, QQ, QZ3, ZETA3, ZETA6, I, QuadElem, QuadField
from strategies import elements, integral

RINGS = {QQ: RING_Z, QI: RING_ZI, QZ3: RING_ZW}
F_GAUSS = UnicriticalMap.monic(I, 2)
ring_fields = st.sampled_from([QQ, QI, QZ3])


# -- factorisation ----------------------------------------------------------------------------


def test_factor_examples():
    fe = factor(QI(5))
    assert [p for p, _ in fe.factors] == [QI(1, 2), QI(2, 1)]
    assert all(e == 1 for _, e in fe.factors) and fe.value() == 5
    fe = factor(QI(-4))
    assert fe.factors == ((QI(1, 1), 4),) and fe.value() == -4
    fe = factor((7 - 17 * I) / 8)
    assert fe.exponent(QI(1, 1)) == -5
    assert fe.exponent(QI(3, 2)) == 2
    assert fe.value() == (7 - 17 * I) / 8
    assert [p for p, _ in factor(QZ3(3)).factors] == [RING_ZW.from_coords(1, 2)]
    assert factor(QQ(-12)).value() == -12 and factor(QQ(-12)).unit == 1


def test_factor_errors():
    with pytest.raises(ValueError):
        factor(0)
    with pytest.raises(UnsupportedRing):
        factor(QuadField(2)(1, 1))
    with pytest.raises(UnsupportedRing):
        factor(QI(1, 1), QZ3)
    with pytest.raises(FactorBudgetExceeded):
        factor(QQ(2**300 + 1))


@settings(max_examples=200)
@given(ring_fields.flatmap(lambda F: st.tuples(st.just(F), elements(F, nonzero=True))))
def test_factor_round_trip_and_norms(arg):
    F, x = arg
    fe = factor(x, F)
    assert fe.value() == x
    ring = RINGS[F]
    for p, _ in fe.factors:
        assert ring.canonical(p) == p
    # the Z-factorisation of the norm is the norm of the factorisation
    N = x.norm() if F != QQ else abs(x.a)
    expected = {}
    for p, e in fe.factors:
        for q, k in factorint(ring.norm(p)).items():
            expected[q] = expected.get(q, 0) + k * e
    num, den = factorint(N.numerator), factorint(N.denominator)
    got = {q: num.get(q, 0) - den.get(q, 0) for q in set(num) | set(den)}
    assert {q: e for q, e in expected.items() if e} == {q: e for q, e in got.items() if e}


@pytest.mark.parametrize("field", [QI, QZ3])
def test_primes_above_split_correctly(field):
    ring = RINGS[field]
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 37, 101):
        pis = ring.primes_above(p)
        prod = QQ(1)
        for pi in pis:
            prod = prod * pi ** (2 // len(pis) if ring.norm(pi) == p else 1)
        assert factor(QQ(p), field).value() == p
        assert all(math.prod([ring.norm(pi)]) in (p, p * p) for pi in pis)


# -- power classes ---------------------------------------------------------------------------------


def test_pth_power_examples():
    assert is_pth_power(-4, 2, QI)
    assert not is_pth_power(-4, 2, QQ)
    assert not is_pth_power(-2, 2, QI)
    assert not is_pth_power(I, 2, QI)
    assert is_pth_power(-1, 2, QI) and not is_pth_power(-1, 4, QI)
    assert is_pth_power(ZETA3, 3, QZ3) is False
    assert is_pth_power(ZETA3, 2, QZ3)  # zeta3 = zeta3^4 = (zeta3^2)^2
    assert is_nth_power(QQ(-8), 3, QQ)


def _box_roots(x, p, field):
    """Exhaustive search for y with y^p = x among integral y of bounded norm."""
    ring = RINGS[field]
    # |y| = N(x)^(1/2p) and each coordinate of y is at most 2|y|
    bound = 2 * (integer_nthroot(int(ring.norm(x)), 2 * p)[0] + 1)
    r = range(-bound, bound + 1)
    return [y for y in (ring.from_coords(a, b) for a in r for b in (r if field != QQ else [0])) if y**p == x]


@settings(max_examples=150)
@given(
    st.sampled_from([(QQ, 2), (QQ, 3), (QI, 2), (QZ3, 2), (QZ3, 3)]).flatmap(
        lambda fp: st.tuples(st.just(fp), integral(fp[0], 6, nonzero=True), st.booleans())
    )
)
def test_pth_power_against_box_search(arg):
    (F, p), y, take_power = arg
    x = y**p if take_power else y
    roots = _box_roots(x, p, F)
    assert is_pth_power(x, p, F) == bool(roots)
    r = nth_root(x, p, F)
    assert (r is not None) == bool(roots)
    if r is not None:
        assert r**p == x


@settings(max_examples=150)
@given(ring_fields.flatmap(lambda F: st.tuples(elements(F, True), elements(F, True))), st.sampled_from([2, 3]))
def test_power_class_invariance(xy, p):
    x, y = xy
    assert power_class(x * y**p, p) == power_class(x, p)
    assert span_dim([x, x * y**p], p) == span_dim([x], p)
    assert is_pth_power(y**p, p)


@settings(max_examples=100)
@given(ring_fields.flatmap(lambda F: st.lists(elements(F, True), min_size=1, max_size=5)))
def test_span_dim_properties(xs):
    d = span_dim(xs, 2)
    assert 0 <= d <= len(xs)
    assert span_dim(xs + [xs[0] * xs[-1]], 2) == d
    assert span_dim(xs[:-1], 2) <= d if len(xs) > 1 else True
    assert (d == 0) == all(is_pth_power(x, 2) for x in xs)


def test_span_dim_examples():
    alpha = (9 * I - 7) / 8
    c = [(I - 7) / 8, (-1 - I) / 8, (7 - 17 * I) / 8]
    assert span_dim(c, 2, QI) == 1
    assert c[0] * c[1] == ((3 + I) / 8) ** 2
    assert c[0] * c[2] == ((7 + 9 * I) / 8) ** 2
    assert span_dim([1 - I, -2 + I, -1 - I], 2, QI) >= 2
    for u, v in itertools.combinations([1 - I, -2 + I, -1 - I], 2):
        assert not is_pth_power(u * v, 2, QI)
    assert alpha  # keeps the value documented next to its orbit
    # a rational tagged with Q(i) is classified in Q(i), as factor() does
    assert span_dim([QI(-1)], 2) == 0 and span_dim([-1], 2) == 1


# -- certificates --------------------------------------------------------------------------------


def test_onedim_nonabelian_for_alpha_one():
    cert = onedim_certificate(F_GAUSS, 1, 2, 3)
    assert cert.kind == "NonAbelianSpan"
    assert cert.data["rank"] >= 2
    assert onedim_certificate(F_GAUSS, 1, 2).kind == "NonAbelianSpan"


def test_onedim_inconclusive_with_square_roots():
    cert = onedim_certificate(F_GAUSS, (9 * I - 7) / 8, 2, 3)
    assert cert.kind == "Inconclusive" and cert.data["rank"] == 1
    gamma = (I - 7) / 8
    assert cert.data["gamma"] == {"n": 1, "value": str(gamma)}
    values = [gamma, (-1 - I) / 8, (7 - 17 * I) / 8]
    expected = [-gamma, -(3 + I) / 8, -(7 + 9 * I) / 8]
    for entry, v, root in zip(cert.data["roots"], values, expected):
        r = QuadElem.from_json(entry["root_json"])
        assert entry["e"] == 1 and r == root
        assert r**2 == v * gamma


def test_onedim_eisenstein_cases():
    f = UnicriticalMap.monic(ZETA3, 6)
    for p in (2, 3):
        cert = onedim_certificate(f, ZETA6, p, 4)
        assert cert.kind == "PreconditionFail"  # (alpha - b)/a = 1
    assert onedim_certificate(f, ZETA6 + 1, 2, 4).kind == "NonAbelianSpan"
    cert = onedim_certificate(f, ZETA6 + 1, 3, 4)
    assert cert.kind == "Inconclusive" and cert.data["rank"] == 1


def test_onedim_errors():
    with pytest.raises(ValueError):
        onedim_certificate(F_GAUSS, 1, 3, 3)  # 3 does not divide 2
    with pytest.raises(UnsupportedRing):
        onedim_certificate(UnicriticalMap.monic(I, 3), 2, 3, 3)  # no cube roots of unity in Q(i)
    # alpha = f(y) makes (alpha - b)/a = y^p, so a vanishing orbit entry is always
    # caught by the precondition first
    for alpha in (I, -1 + I, -I):
        assert onedim_certificate(F_GAUSS, alpha, 2, 3).kind == "PreconditionFail"
    assert onedim_certificate(F_GAUSS, I, 2, 3).kind == "PreconditionFail"
    assert onedim_certificate(F_GAUSS, 1 + I, 2, 3).kind == "PreconditionFail"  # base 1


def test_cyclic_class_certificate():
    assert cyclic_class_certificate([QQ(6)], 2, QQ).kind == "CyclicPass"
    assert cyclic_class_certificate([QQ(6)], 2, QQ).data["generator"] == "6"
    x = QI(2, 1)
    assert cyclic_class_certificate([x, x**2], 4).kind == "CyclicPass"
    cert = cyclic_class_certificate([QQ(2), QQ(3)], 2, QQ)
    assert cert.kind == "NonAbelianSpan" and cert.data["indices"] == [0, 1]
    assert cyclic_class_certificate([], 3).kind == "CyclicPass"
    # the unit coordinate counts: i and 1+i generate Z/4 x Z/4 mod 4th powers
    assert cyclic_class_certificate([I, QI(1, 1)], 4).kind == "NonAbelianSpan"
    assert cyclic_class_certificate([I, -QQ(1)], 4, QI).kind == "CyclicPass"
    with pytest.raises(ValueError):
        cyclic_class_certificate([QQ(2)], 0)


@settings(max_examples=80)
@given(ring_fields.flatmap(lambda F: st.tuples(elements(F, True), st.lists(st.integers(-5, 5), min_size=1, max_size=4))),
       st.integers(2, 6))
def test_powers_of_one_class_are_cyclic(arg, d1):
    x, ks = arg
    assume(all(k for k in ks))
    assert cyclic_class_certificate([x**k for k in ks], d1).kind == "CyclicPass"


def test_xr_minus_a():
    assert xr_minus_a_irreducible(2, 6, QQ)
    assert not xr_minus_a_irreducible(4, 2, QQ)
    assert not xr_minus_a_irreducible(-4, 4, QQ)
    assert xr_minus_a_irreducible(-4, 2, QQ)
    assert not xr_minus_a_irreducible(-4, 2, QI)
    assert not xr_minus_a_irreducible(8, 3, QQ)
    with pytest.raises(ValueError):
        xr_minus_a_irreducible(0, 2)


@pytest.mark.parametrize("a", [2, 3, -4, 4, -1, 8, 16, -27, 12, 5])
@pytest.mark.parametrize("r", [2, 3, 4, 6])
def test_xr_minus_a_against_sympy(a, r):
    import sympy

    x = sympy.Symbol("x")
    assert xr_minus_a_irreducible(a, r, QQ) == sympy.Poly(x**r - a, x).is_irreducible
