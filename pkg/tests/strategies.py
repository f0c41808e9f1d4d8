"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from arboreal.numberfield import QI, QQ, QZ3, QuadField

FIELDS = [QQ, QI, QZ3, QuadField(2), QuadField(5), QuadField(-7)]

small_ints = st.integers(min_value=-40, max_value=40)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=12))


def elements(field: QuadField, nonzero: bool = False):
    s = st.builds(lambda a, b: field(a, 0 if field.is_rational else b), rationals, rationals)
    return s.filter(bool) if nonzero else s


def integral(field: QuadField, bound: int = 30, nonzero: bool = False):
    """Elements of the maximal order of Q(i) or Q(zeta3) via integer coordinates."""
    from arboreal.kummer import ring_of

    ring = ring_of(field)
    r = st.integers(min_value=-bound, max_value=bound)
    s = st.builds(ring.from_coords, r, r)
    return s.filter(bool) if nonzero else s


field_st = st.sampled_from(FIELDS)
