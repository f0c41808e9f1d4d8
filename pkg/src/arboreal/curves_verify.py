"""Exact membership and integrality checks for the printed point lists.

Curves are stored as JSON fixtures (one per curve) under ``arboreal/fixtures``.
The harness checks that every listed point lies on its curve and meets the
stated integrality condition.  It does not show that a list is complete.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

from .dynamics import UnicriticalMap, adjusted_orbit
from .kummer import factor, span_dim
from .numberfield import QI, FieldMismatch, QuadElem, QuadField, field_of
from .poly import BiPoly, as_elem, parse_number

__all__ = [
    "PlaneCurve",
    "ClaimedPointSet",
    "PointResult",
    "VerificationReport",
    "AlphaDerivation",
    "SCOPE_NOTE",
    "CASES",
    "load_fixture",
    "load_fixtures",
    "fixture_dir",
    "is_on_curve",
    "is_2_integral",
    "verify_point_set",
    "verify_all",
    "alpha_consistency",
    "parse_point",
]

SCOPE_NOTE = (
    "membership and integrality of each listed point are checked exactly; "
    "completeness of the lists is not checked"
)

INTEGRALITY = ("none", "2-integral")


@dataclass(frozen=True)
class PlaneCurve:
    name: str
    field: QuadField
    poly: BiPoly
    variables: tuple[str, str] = ("x", "y")
    equation: str = ""

    def __post_init__(self):
        if not self.poly:
            raise ValueError(f"{self.name}: zero polynomial")
        K = field_of(self.poly.terms.values())
        if K != self.field and not K.is_rational:
            raise FieldMismatch(f"{self.name}: coefficients in {K}, declared {self.field}")

    def __call__(self, x, y) -> QuadElem:
        return self.poly(x, y)


@dataclass(frozen=True)
class ClaimedPointSet:
    curve: PlaneCurve
    points: tuple[tuple[QuadElem, QuadElem], ...]
    integrality: str = "none"
    notes: str = ""

    def __post_init__(self):
        if self.integrality not in INTEGRALITY:
            raise ValueError(f"unknown integrality spec {self.integrality!r}")


def fixture_dir() -> Path:
    return Path(str(resources.files("arboreal") / "fixtures"))


def _curve_from_json(obj: dict) -> PlaneCurve:
    K = QuadField(int(obj["field"]))
    poly = BiPoly({(int(ex), int(ey)): parse_number(c) for ex, ey, c in obj["poly"]})
    return PlaneCurve(obj["name"], K, poly, tuple(obj.get("variables", ("x", "y"))), obj.get("equation", ""))


def load_fixture(path) -> ClaimedPointSet:
    """Read one curve fixture.

    Coefficients and coordinates are strings such as ``"1/2 + 1/2*sqrt(-3)"`` or
    ``"zeta6"``; symbols for roots of unity are rewritten in the declared field at load time.
    """
    obj = json.loads(Path(path).read_text())
    curve = _curve_from_json(obj)
    points = tuple(
        (parse_number(x).to_field(curve.field), parse_number(y).to_field(curve.field)) for x, y in obj["points"]
    )
    return ClaimedPointSet(curve, points, obj.get("integrality", "none"), obj.get("notes", ""))


def load_fixtures(directory=None) -> list[ClaimedPointSet]:
    directory = fixture_dir() if directory is None else Path(directory)
    paths = sorted(directory.glob("*.json"))
    if not paths:
        raise FileNotFoundError(f"no fixtures in {directory}")
    return [load_fixture(p) for p in paths]


def is_on_curve(curve: PlaneCurve, point: Sequence) -> bool:
    x, y = (as_elem(c) for c in point)
    for c in (x, y):
        if c.field != curve.field and not c.is_rational:
            raise FieldMismatch(f"coordinate {c} is not in {curve.field}")
    return not curve(x, y)


def is_2_integral(x) -> bool:
    """True iff ``x`` in Q(i) has no denominator away from ``1+i``."""
    x = as_elem(x)
    if x.field != QI and not x.is_rational:
        raise FieldMismatch(f"{x} is not in Q(i)")
    if not x:
        return True
    fe = factor(x, QI)
    two = QI(1, 1)
    return all(e >= 0 for p, e in fe.factors if p != two)


@dataclass
class PointResult:
    point: tuple[QuadElem, QuadElem]
    on_curve: bool
    integral: bool
    residual: QuadElem

    @property
    def ok(self) -> bool:
        return self.on_curve and self.integral

    def to_json(self) -> dict:
        return {
            "point": [str(c) for c in self.point],
            "on_curve": self.on_curve,
            "integral": self.integral,
            "residual": str(self.residual),
        }


@dataclass
class VerificationReport:
    name: str
    field: str
    integrality: str
    results: list[PointResult] = field(default_factory=list)
    notes: str = ""

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> list[PointResult]:
        return [r for r in self.results if not r.ok]

    def to_json(self) -> dict:
        out = {
            "curve": self.name,
            "field": self.field,
            "integrality": self.integrality,
            "points": len(self.results),
            "ok": self.ok,
            "results": [r.to_json() for r in self.results],
        }
        if self.notes:
            out["notes"] = self.notes
        return out

    def table_row(self) -> str:
        status = "pass" if self.ok else f"FAIL ({len(self.failures)})"
        return f"{self.name:<14} {self.field:<14} {self.integrality:<11} {len(self.results):>3}  {status}"


def verify_point_set(claim: ClaimedPointSet) -> VerificationReport:
    report = VerificationReport(claim.curve.name, str(claim.curve.field), claim.integrality, notes=claim.notes)
    for P in claim.points:
        residual = claim.curve(*P)
        if claim.integrality == "2-integral":
            integral = all(is_2_integral(c) for c in P)
        else:
            integral = True
        report.results.append(PointResult(P, not residual, integral, residual))
    return report


def verify_all(directory=None) -> list[VerificationReport]:
    return [verify_point_set(c) for c in load_fixtures(directory)]


# ---------------------------------------------------------------------------
# alpha derivations for f = x^2 + i


F_GAUSS = UnicriticalMap(QI(1), QI(0, 1), 2)

# case tag -> (fixture name, description of the point's coordinates)
CASES = {
    "A": ("E_A", "(u, v): c3 = u^2, c1*c2 = v^2"),
    "B": ("E_B", "(u, v): c2 = u^2, c1*c3 = v^2"),
    "C": ("genus0_1", "(u, v): c1*c2 = u^2, c1*c3 = v^2"),
    "D": ("E_D", "(x, v): c3 = v^2, 4x^4 + 4i x^2 + c1 = 0"),
    "D(i)": ("C_D_prime", "(x, u): c2 = u^2, 4x^4 - 4(i-1)x^2 + c1 = 0"),
    "D(ii)": ("genus0_2", "(u, x): c2 = u^2, 4x^4 - 4(i+1-c1)x^2 - (3+4i)c1 = 0"),
}


@dataclass
class AlphaDerivation:
    case: str
    point: tuple[QuadElem, QuadElem]
    alpha: QuadElem
    orbit: list[QuadElem]
    relations: dict[str, bool]
    span: int | None  # dim of <c1, c2, c3> mod squares; None when some c_n vanishes

    @property
    def ok(self) -> bool:
        return all(self.relations.values())

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "point": [str(c) for c in self.point],
            "alpha": str(self.alpha),
            "orbit": [str(c) for c in self.orbit],
            "relations": self.relations,
            "span_dim": self.span,
        }


def _derive_alpha(case: str, P) -> QuadElem:
    i = QI(0, 1)
    s, t = P
    if case == "A":
        return -i - s**2
    if case == "B":
        return -1 + i - s**2
    if case == "C":
        return (s**2 - t**2 - 2 - i) / (2 * i - 1)
    if case == "D":
        return -i - t**2
    if case == "D(i)":
        return -1 + i - t**2
    if case == "D(ii)":
        return -1 + i - s**2
    raise ValueError(f"unknown case {case!r}")


def _relations(case: str, P, c) -> dict[str, bool]:
    i = QI(0, 1)
    s, t = P
    c1, c2, c3 = c
    if case == "A":
        return {"c3 = u^2": c3 == s**2, "c1*c2 = v^2": c1 * c2 == t**2}
    if case == "B":
        return {"c2 = u^2": c2 == s**2, "c1*c3 = v^2": c1 * c3 == t**2}
    if case == "C":
        return {"c1*c2 = u^2": c1 * c2 == s**2, "c1*c3 = v^2": c1 * c3 == t**2}
    if case == "D":
        return {"c3 = v^2": c3 == t**2, "4x^4 + 4i x^2 + c1 = 0": not (4 * s**4 + 4 * i * s**2 + c1)}
    if case == "D(i)":
        return {"c2 = u^2": c2 == t**2, "4x^4 - 4(i-1)x^2 + c1 = 0": not (4 * s**4 - 4 * (i - 1) * s**2 + c1)}
    if case == "D(ii)":
        rel = 4 * t**4 - 4 * (i + 1 - c1) * t**2 - (3 + 4 * i) * c1
        return {"c2 = u^2": c2 == s**2, "4x^4 - 4(i+1-c1)x^2 - (3+4i)c1 = 0": not rel}
    raise ValueError(f"unknown case {case!r}")


def alpha_consistency(case: str, point: Sequence, directory=None) -> AlphaDerivation:
    """Recover ``alpha`` from a point on the case's curve and re-check its relations.

    The relations are evaluated on ``adjusted_orbit(x^2 + i, alpha, 3)``.
    """
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}; expected one of {sorted(CASES)}")
    name = CASES[case][0]
    directory = fixture_dir() if directory is None else Path(directory)
    curve = load_fixture(directory / f"{name}.json").curve
    P = tuple(as_elem(c).to_field(QI) for c in point)
    if not is_on_curve(curve, P):
        raise ValueError(f"{tuple(map(str, P))} is not on {name}")
    alpha = _derive_alpha(case, P)
    c = adjusted_orbit(F_GAUSS, alpha, 3, p=2).entries
    span = span_dim(c, 2, QI) if all(c) else None
    return AlphaDerivation(case, P, alpha, c, _relations(case, P, c), span)


def parse_point(text: str) -> tuple[QuadElem, QuadElem]:
    """``"(a, b)"`` or ``"a,b"`` to a coordinate pair."""
    body = text.strip().removeprefix("(").removesuffix(")")
    depth, cut = 0, None
    for k, ch in enumerate(body):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "," and depth == 0:
            cut = k
    if cut is None:
        raise ValueError(f"not a point: {text!r}")
    return parse_number(body[:cut]), parse_number(body[cut + 1 :])

