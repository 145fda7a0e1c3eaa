import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quartics.detrep import (
    CurveC3Form, DegenerateCurveError, SymMat4, c6_equations,
    combined_equations, diag_entries, a_ratio_defect, pencil_det, residual_system,
    solve_c6, specialize_c6, verify,
)
from quartics.parser import parse
from quartics.polyring import variables

x, y, z, r, s, a, b, c, d, e, f = variables("x y z r s a b c d e f")

# the six coefficient equations of the reference derivation
REFERENCE = [
    "-c^2*s-b^2*s-a^2*s-e^2*r-d^2*r-a^2*r-f^2-d^2-b^2",
    "a^2*r*s+b^2*s+d^2*r",
    "2*a*b*c*s+2*a*d*e*r+2*b*d*f-1",
    "f^2+e^2+d^2+c^2+b^2+a^2",
    "-2*c*e*f-2*b*d*f-2*a*d*e-2*a*b*c",
    "-a^2*f^2+2*a*b*e*f+2*a*c*d*f-b^2*e^2+2*b*c*d*e-c^2*d^2",
]


def test_pencil_det_examples():
    ident = SymMat4.identity()
    B = SymMat4.diagonal([0, -1, -r, -s])
    zero = SymMat4.diagonal([0, 0, 0, 0])
    assert pencil_det(ident, B, zero) == x * (x - y) * (x - r * y) * (x - s * y)
    assert pencil_det(ident, ident, ident) == (x + y + z) ** 4


def test_symmetric_matrix():
    m = SymMat4.from_upper([1, 2, 3, 4, 5, 6])
    assert all(m[i, j] == m[j, i] for i in range(4) for j in range(4))
    assert [m[i, i] for i in range(4)] == [0, 0, 0, 0]
    with pytest.raises(ValueError):
        SymMat4(((0, 1, 0, 0), (2, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)))


def test_curve_normal_form():
    curve = CurveC3Form()
    assert curve.check_normal_form()
    assert curve.poly.derive("z") == -3 * y * z**2


def test_diag_entries_vanish_on_the_family():
    assert diag_entries(CurveC3Form()) == (0, 0, 0, 0)
    assert diag_entries(CurveC3Form(Fraction(1, 3), Fraction(5, 7))) == (0, 0, 0, 0)


def test_diag_entries_of_a_modified_quartic():
    rv, sv = Fraction(1, 3), Fraction(5, 7)
    base = CurveC3Form(rv, sv).poly
    poly = base + x * z**3 + x**3 * z
    got = diag_entries(CurveC3Form(rv, sv, poly))
    fy, fz = poly.derive("y"), poly.derive("z")
    for beta, val in zip((-1, -rv, -sv), got[1:]):
        pt = {"x": -beta, "y": 1, "z": 0}
        want = beta * fz.evaluate(pt) / fy.evaluate(pt)
        assert val == want
    assert got[0] == 0 and got[1] != 0


def test_diag_entries_degenerate():
    with pytest.raises(DegenerateCurveError):
        diag_entries(CurveC3Form(Fraction(1, 2), Fraction(1, 2)))
    with pytest.raises(DegenerateCurveError):
        diag_entries(CurveC3Form(1, Fraction(1, 2)))


def test_residual_system_matches_reference():
    system = residual_system()
    assert len(system) == 6
    reference = [parse(t) for t in REFERENCE]
    assert list(system) == reference
    for p in reference:
        assert any(q == p or q == -p for q in system)


def test_residual_system_is_the_determinant_identity():
    C = SymMat4.from_upper([a, b, d, c, e, f])
    target = x * (x - y) * (x - r * y) * (x - s * y) - y * z**3
    diff = target - pencil_det(SymMat4.identity(), SymMat4.diagonal([0, -1, -r, -s]), C)
    nonzero = [p for p in diff.collect(("x", "y", "z")).values() if not p.is_zero()]
    assert sorted(map(str, nonzero)) == sorted(map(str, residual_system()))


def test_combined_equations():
    system = residual_system()
    e14, e124 = combined_equations(system)
    assert e14 == a**2 * (1 - r - s) + c**2 * (1 - s) + e**2 * (1 - r) - b**2 * s - d**2 * r
    assert e124 == a**2 * (1 - r) * (1 - s) + c**2 * (1 - s) + e**2 * (1 - r)


def test_eliminating_a_gives_the_four_term_equation():
    system = residual_system()
    _, e124 = combined_equations(system)
    lhs = (1 - r) * (1 - s) * system[1] - r * s * e124
    want = b**2 * s * (r - 1) * (s - 1) + c**2 * r * s * (s - 1) + d**2 * r * (r - 1) * (s - 1) \
        + e**2 * r * s * (r - 1)
    assert lhs == want


def test_specialize_c6():
    reduced = specialize_c6(residual_system())
    assert reduced == c6_equations()
    assert reduced[0] == a**2 * r * (1 - r) + b**2 * (1 - r) + c**2 * r
    assert reduced[1] == 2 * a * b * c * ((1 - r) - r) - 2 * b * c * f - 1
    fifth = residual_system()[4].substitute({"e": b, "d": -c, "s": 1 - r})
    assert fifth.is_zero()


def test_specialize_c6_rejects_wrong_input():
    system = list(residual_system())
    system[2] = system[2] + a
    with pytest.raises(RuntimeError):
        specialize_c6(system)


@pytest.mark.parametrize("rv", [Fraction(1, 8), Fraction(1, 3), Fraction(2, 5), Fraction(3, 7), Fraction(5, 9)])
def test_solve_c6(rv):
    sol = solve_c6(rv)
    assert sol.residual < 1e-8
    C = sol.C
    curve = CurveC3Form(rv, 1 - rv)
    res = verify(curve.poly, SymMat4.identity(), SymMat4.diagonal([0, -1, -rv, -(1 - rv)]), C)
    assert res < 1e-8
    v = sol.values
    assert abs(v["a"] * v["f"] - (v["b"] + 1j * v["c"]) ** 2) < 1e-8
    assert a_ratio_defect(sol, rv) < 1e-8


def test_solve_c6_degenerate():
    for bad in (Fraction(1, 2), 0, 1):
        with pytest.raises(DegenerateCurveError):
            solve_c6(bad)


def test_perturbed_solution_fails_verification():
    rv = Fraction(1, 8)
    sol = solve_c6(rv)
    entries = [list(row) for row in sol.C.entries]
    entries[0][1] = entries[1][0] = entries[0][1] + 0.1
    bad = SymMat4(tuple(map(tuple, entries)))
    B = SymMat4.diagonal([0, -1, -rv, -(1 - rv)])
    assert verify(CurveC3Form(rv, 1 - rv).poly, SymMat4.identity(), B, bad) > 1e-3


def test_verify_diagonal_case_is_exact():
    rv, sv = Fraction(2, 3), Fraction(1, 5)
    B = SymMat4.diagonal([0, -1, -rv, -sv])
    target = x * (x - y) * (x - rv * y) * (x - sv * y)
    assert verify(target, SymMat4.identity(), B, SymMat4.diagonal([0, 0, 0, 0])) == 0


def test_solution_json():
    sol = solve_c6(Fraction(1, 3))
    data = json.loads(sol.to_json())
    assert set(data) >= {"C", "branch", "residual"}
    assert np.array(data["C"]).shape == (4, 4, 2)
    assert set(data["branch"]) == {"q_index", "c_index", "a_sign"}


@settings(max_examples=20)
@given(st.fractions(min_value=Fraction(1, 100), max_value=Fraction(99, 100), max_denominator=100)
       .filter(lambda v: v != Fraction(1, 2)))
def test_some_branch_verifies(rv):
    assert solve_c6(rv).residual < 1e-8
