"""Regenerate the curve fixtures in src/arboreal/fixtures from the transcribed equations.

Each equation is written as ``lhs - (rhs)`` in the variables x, y (the curve's own
variable names are kept in the ``variables`` field).  Run from the repository root.
"""

from __future__ import annotations

import json
from pathlib import Path

from arboreal.poly import parse_expr, parse_number

OUT = Path(__file__).resolve().parents[1] / "src" / "arboreal" / "fixtures"

Z = "zeta3"
POW = {1: "zeta3", 2: "zeta3^2", 3: "1"}


def pm(*coords):
    """Expand '±' prefixes: each coordinate string may start with '+-'."""
    out = [[]]
    for c in coords:
        if c.startswith("+-"):
            body = c[2:]
            out = [p + [v] for p in out for v in (f"{body}", f"-({body})")]
        else:
            out = [p + [c] for p in out]
    return [tuple(p) for p in out]


CURVES = [
    # --- genus 0 curves over Q(i), 2-integral points ------------------------
    dict(
        name="genus0_1",
        field=-1,
        variables=["x", "y"],
        equation="(x^2-y^2)^2 - (2i+4)*x^2 + (1-2i)*y^2",
        points=[("0", "0")] + pm("+-(3+i)/8", "+-(7+9i)/8"),
        integrality="2-integral",
    ),
    dict(
        name="genus0_2",
        field=-1,
        variables=["x", "y"],
        equation="4*y^4 - 4*x^2*y^2 + (4i+3)*x^2 + (-4i-8)*y^2 + 4i+3",
        points=pm("+-i", "0") + pm("+-(7i-5)/8", "+-(2-i)/2"),
        integrality="2-integral",
    ),
    # --- curves of the x^2 + i case analysis ---------------------------------
    dict(
        name="E_A",
        field=-1,
        variables=["u", "v"],
        equation="y^2 - (-x^4 + (-4i+1)*x^2 + 2i + 4)",
        points=pm("+-(1-i)", "0"),
        integrality="none",
    ),
    dict(
        name="E_B",
        field=-1,
        variables=["u", "v"],
        equation="y^2 - (-x^4 + (2i-2)*x^2 + 2i - 1)",
        points=pm("+-i", "0"),
        integrality="none",
    ),
    dict(
        name="E_D",
        field=-1,
        variables=["x", "v"],
        equation="y^2 - (4*x^4 + 4i*x^2 - 2i)",
        points=pm("0", "+-(1-i)"),
        integrality="none",
    ),
    dict(
        name="C_D_prime",
        field=-1,
        variables=["x", "u"],
        equation="y^2 - (4*x^4 - 4*(i-1)*x^2 - 1)",
        points=pm("0", "+-i") + pm("+-(1+i)/2", "+-(1+i)"),
        integrality="none",
    ),
    # --- Eisenstein curves, case (A): variables X, Y ---------------------------
    dict(
        name="B_caseA_1",
        field=-3,
        variables=["X", "Y"],
        equation="x*(y^2+zeta6) - zeta6*y*(x^2+zeta6)",
        points=[("0", "0")] + pm("+-zeta3", "+-zeta3"),
        integrality="none",
    ),
    dict(
        name="B_caseA_2",
        field=-3,
        variables=["X", "Y"],
        equation="-2*zeta6*x*(y^2+1) - (zeta6*y^2 - 2*zeta3*y - zeta6)*(x^2+zeta6)",
        points=[],
        integrality="none",
    ),
    dict(
        name="B_caseA_3",
        field=-3,
        variables=["X", "Y"],
        equation="(zeta6*x^2 + 2*x - zeta6)*(y^2+zeta6) + 2*zeta3*y*(x^2+1)",
        points=[],
        integrality="none",
    ),
    dict(
        name="B_caseA_4",
        field=-3,
        variables=["X", "Y"],
        equation="(zeta6*x^2 + 2*x - zeta6)*(y^2+1) - (zeta6*y^2 - 2*zeta3*y - zeta6)*(x^2+1)",
        points=[("zeta3", "0"), ("0", "0"), ("zeta6", "zeta3"), ("0", "zeta6"), ("zeta3", "zeta6")],
        integrality="none",
    ),
    # --- Eisenstein curves, case (B): variables t, y ---------------------------
    dict(
        name="B_caseB_1",
        field=-3,
        variables=["t", "y"],
        equation="1 - zeta6*x^3 - y^3",
        points=[("0", "1"), ("0", "zeta3"), ("0", "zeta3^2")],
        integrality="none",
    ),
    dict(
        name="B_caseB_2",
        field=-3,
        variables=["t", "y"],
        equation="zeta6*(1 - zeta6*x^3) - y^3",
        points=[
            ("1", "-zeta6"), ("-zeta6", "1"), ("zeta3", "zeta3"), ("zeta3", "-zeta6"), ("1", "1"),
            ("-zeta6", "zeta3"), ("1", "zeta3"), ("-zeta6", "-zeta6"), ("zeta3", "1"),
        ],
        integrality="none",
    ),
    dict(
        name="B_caseB_3",
        field=-3,
        variables=["t", "y"],
        equation="zeta6^2*(1 - zeta6*x^3) - y^3",
        points=[],
        integrality="none",
    ),
    dict(
        name="B_caseB_4",
        field=-3,
        variables=["t", "y"],
        equation="1 - zeta6^2*x^3 - y^3",
        points=[("0", "zeta3"), ("0", "1"), ("0", "-zeta6")],
        integrality="none",
    ),
    dict(
        name="B_caseB_5",
        field=-3,
        variables=["t", "y"],
        equation="zeta6*(1 - zeta6^2*x^3) - y^3",
        points=[],
        integrality="none",
    ),
    dict(
        name="B_caseB_6",
        field=-3,
        variables=["t", "y"],
        equation="zeta6^2*(1 - zeta6^2*x^3) - y^3",
        points=[
            ("-1", "-1"), ("-zeta3", "zeta6"), ("zeta6", "-zeta3"), ("-1", "-zeta3"), ("-zeta3", "-1"),
            ("zeta6", "zeta6"), ("zeta6", "-1"), ("-1", "zeta6"), ("-zeta3", "-zeta3"),
        ],
        integrality="none",
    ),
    # --- Eisenstein curves, case (C): variables t, y ---------------------------
    dict(
        name="B_caseC_1",
        field=-3,
        variables=["t", "y"],
        equation="1 - zeta6*x^2 - y^3",
        points=[("0", "1"), ("0", "zeta3"), ("0", "zeta3^2")],
        integrality="none",
    ),
    dict(
        name="B_caseC_2",
        field=-3,
        variables=["t", "y"],
        equation="zeta6*x^2*(1 - zeta6*x^2) - y^3",
        points=[("0", "0")]
        + pm("+-1", "zeta3") + pm("+-zeta3", "1") + pm("+-1", "-zeta6")
        + pm("+-zeta3", "-zeta6") + pm("+-1", "1") + pm("+-zeta3", "zeta3"),
        integrality="none",
    ),
    dict(
        name="B_caseC_3",
        field=-3,
        variables=["t", "y"],
        equation="zeta6^2*x*(1 - zeta6*x^2) - y^3",
        points=[("0", "0")],
        integrality="none",
    ),
    dict(
        name="B_caseC_4",
        field=-3,
        variables=["t", "y"],
        equation="x*(1-x) - y^3",
        points=[
            ("0", "0"), ("-zeta3", "zeta3"), ("zeta6", "-zeta6"), ("-zeta3", "1"), ("zeta6", "1"),
            ("1", "0"), ("-zeta3", "-zeta6"), ("zeta6", "zeta3"),
        ],
        integrality="none",
    ),
    dict(
        name="B_caseC_5",
        field=-3,
        variables=["t", "y"],
        equation="(1 - x^3)*x - y^2",
        points=[("1", "0"), ("0", "0"), ("-zeta6", "0"), ("zeta3", "0")],
        integrality="none",
    ),
    dict(
        name="B_caseC_6",
        field=-3,
        variables=["t", "y"],
        equation="x^2*(1 - x^2) - y^3",
        points=[("0", "0")] + pm("+-1", "0"),
        integrality="none",
    ),
    dict(
        name="B_caseC_7",
        field=-3,
        variables=["t", "y"],
        equation="(1 - x^2)*x - y^3",
        points=[("0", "0")] + pm("+-1", "0")
        + [("1/3", f"2/3*{POW[k]}") for k in (3, 1, 2)]
        + [("-1/3", f"-2/3*{POW[k]}") for k in (3, 1, 2)],
        integrality="none",
    ),
    # --- Eisenstein curves, cases (1),(2): variables x, y ----------------------
    dict(
        name="B_cases12_1",
        field=-3,
        variables=["x", "y"],
        equation="y^2 - (x^3 + 1)",
        points=pm("0", "+-1")
        + [(f"-{POW[k]}", "0") for k in (1, 2, 3)]
        + [p for k in (1, 2, 3) for p in pm(f"2*{POW[k]}", "+-3")],
        integrality="none",
    ),
    dict(
        name="B_cases12_2",
        field=-3,
        variables=["x", "y"],
        equation="y^2 - (x^3 - 1)",
        points=[(POW[k], "0") for k in (1, 2, 3)],
        integrality="none",
    ),
    dict(
        name="B_cases12_3",
        field=-3,
        variables=["x", "y"],
        equation=(
            "3*y^4*x - 4*zeta3^2*y^3*x^2 - 8*zeta3^2*y^3 + 18*zeta3*y^2*x"
            " - 12*y*x^2 + 4*zeta3^2*x^3 - zeta3^2*x"
        ),
        points=[("-1", "zeta6"), ("1", "-zeta6"), ("1/2", "0"), ("-1/2", "0"), ("0", "0"),
                ("-2", "zeta6"), ("2", "-zeta6")],
        integrality="none",
    ),
    # --- the Picard curve -------------------------------------------------------
    dict(
        name="picard",
        field=-3,
        variables=["x", "y"],
        equation="x^4 + 18*x^2 - 27 - y^3",
        points=[("0", f"-3*{POW[k]}") for k in (1, 2, 3)]
        + [p for k in (1, 2, 3) for p in pm("+-1", f"-2*{POW[k]}")]
        + [p for k in (1, 2, 3) for p in pm("+-3", f"6*{POW[k]}")]
        + [p for k in (1, 2, 3) for p in pm("+-(3+6*zeta3)", f"6*{POW[k]}")],
        integrality="none",
        notes="The listed set also contains the point at infinity. The claim is over Q(zeta3, i); "
        "every listed point lies in Q(zeta3), where membership is checked. The ambient-field "
        "claim itself is not machine-checked.",
    ),
]


def build(entry: dict) -> dict:
    poly = parse_expr(entry["equation"])
    field = entry["field"]
    points = []
    for x, y in entry["points"]:
        points.append([str(parse_number(x)), str(parse_number(y))])
    out = {
        "name": entry["name"],
        "field": field,
        "variables": entry["variables"],
        "equation": entry["equation"],
        "poly": [[ex, ey, str(c)] for ex, ey, c in poly.sorted_terms()],
        "points": points,
        "source_points": [list(p) for p in entry["points"]],
        "integrality": entry["integrality"],
    }
    if "notes" in entry:
        out["notes"] = entry["notes"]
    return out


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for entry in CURVES:
        path = OUT / f"{entry['name']}.json"
        path.write_text(json.dumps(build(entry), indent=1) + "\n")
        print(path.relative_to(OUT.parents[2]))


if __name__ == "__main__":
    main()
