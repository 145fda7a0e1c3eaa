import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quartics.dixmier import (
    DixmierSet, adjugate, binary_psi, binary_sigma, c6_relation_residual,
    cleared_c6_invariants, diff_pair, dixmier_invariants, hessian, j_functional,
    make_curve, mdot, sigma_psi, transform, transvectant,
)
from quartics.parser import parse
from quartics.polyring import MPoly, variables

from conftest import load_poly, small_fractions, ternary_quartics

x, y, z, u, v, r, s = variables("x y z u v r s")


def test_family_models():
    c3 = make_curve("C3").poly
    assert c3 == parse(
        "r*s*x*z^3 - r*s*x^2*z^2 - s*x^2*z^2 - r*x^2*z^2 + y^3*z"
        " + s*x^3*z + r*x^3*z + x^3*z - x^4"
    )
    assert make_curve("C3", convention="y").poly == x * (x - y) * (x - r * y) * (x - s * y) - y * z**3
    assert make_curve("C9").poly == y**3 * z - x**4 + x * z**3
    assert make_curve("C6").poly == c3.substitute({"s": 1 - r})
    assert all(sum(e) == 4 for e, _ in make_curve("C9").poly.terms.items())


def test_diff_pair_examples():
    assert diff_pair(x**2, x**2) == 2
    assert diff_pair(x**3, x**2) == 0
    assert diff_pair(x, x**2 * y) == 2 * x * y


def test_matrix_helpers():
    q = x**2 + y**2 + z**2
    two = MPoly.constant(2)
    assert hessian(q) == ((two, 0, 0), (0, two, 0), (0, 0, two))
    assert adjugate(((1, 0, 0), (0, 2, 0), (0, 0, 3))) == ((6, 0, 0), (0, 3, 0), (0, 0, 2))
    ident = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert mdot(ident, ident) == 3
    assert j_functional("J30", q) == 8
    assert j_functional("J11", x**2, y**2) == 0
    assert j_functional("J22", q, q) == 48
    with pytest.raises(ValueError):
        j_functional("J44", q, q)


def test_transvectant_examples():
    assert transvectant(x**4, x**4, 4) == 0
    assert binary_sigma(x**2 * y**2) == Fraction(1, 12)
    with pytest.raises(ValueError):
        transvectant(x**2, y**3, 3)


def _binary_invariants(c):
    """Classical S = ae - 4bd + 3c^2 and T = ace + 2bcd - c^3 - b^2 e - a d^2."""
    a, b, cc, d, e = c[0], c[1] / 4, c[2] / 6, c[3] / 4, c[4]
    return a * e - 4 * b * d + 3 * cc**2, a * cc * e + 2 * b * cc * d - cc**3 - b * b * e - a * d * d


def _cayley_transvectant(F, G, k):
    """Omega^k applied to F(x, y) G(u, v), then u -> x, v -> y."""
    prod = F * G.substitute({"x": u, "y": v})
    for _ in range(k):
        prod = prod.derive("x").derive("v") - prod.derive("y").derive("u")
    out = prod.substitute({"u": x, "v": y})
    m, n = F.degree_in(("x", "y")), G.degree_in(("x", "y"))
    return out * Fraction(math.factorial(m - k) * math.factorial(n - k),
                           math.factorial(m) * math.factorial(n))


def binary_forms(deg):
    return st.lists(small_fractions, min_size=deg + 1, max_size=deg + 1).map(
        lambda cs: sum((c * x ** (deg - i) * y**i for i, c in enumerate(cs)), MPoly.constant(0))
    ).filter(lambda p: not p.is_zero())


@given(binary_forms(4), binary_forms(3), st.integers(0, 3))
def test_transvectant_matches_cayley_operator(F, G, k):
    assert transvectant(F, G, k) == _cayley_transvectant(F, G, k)


@given(binary_forms(4), binary_forms(4), st.integers(0, 4))
def test_transvectant_symmetry(F, G, k):
    assert transvectant(F, G, k) == (-1) ** k * transvectant(G, F, k)


@given(binary_forms(3), binary_forms(3), binary_forms(3), st.integers(0, 3))
def test_transvectant_bilinear(F, G1, G2, k):
    if (G1 + G2).is_zero():
        return
    assert transvectant(F, G1 + G2, k) == transvectant(F, G1, k) + transvectant(F, G2, k)


@given(st.lists(small_fractions, min_size=5, max_size=5))
def test_sigma_psi_are_classical_invariants(cs):
    P = sum((c * x ** (4 - i) * y**i for i, c in enumerate(cs)), MPoly.constant(0))
    if P.is_zero():
        return
    S, T = _binary_invariants(cs)
    assert binary_sigma(P) == S
    assert binary_psi(P) == T


def test_fermat_sigma():
    f = x**4 + y**4 + z**4
    sigma, _ = sigma_psi(f)
    assert sigma == f


def test_sigma_of_z_free_quartic():
    f = x**4 + 3 * x**2 * y**2 - y**4
    sigma, _ = sigma_psi(f)
    assert sigma == binary_sigma(f) * z**4


@given(ternary_quartics(), ternary_quartics(), ternary_quartics())
def test_diff_pair_bilinear(f, g, h):
    assert diff_pair(f + g, h) == diff_pair(f, h) + diff_pair(g, h)
    assert diff_pair(f, g + h) == diff_pair(f, g) + diff_pair(f, h)


@given(st.lists(st.lists(small_fractions, min_size=3, max_size=3), min_size=3, max_size=3))
def test_adjugate_law(rows):
    m = tuple(tuple(MPoly.constant(c) for c in row) for row in rows)
    adj = adjugate(m)
    d = rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1]) \
        - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0]) \
        + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
    for i in range(3):
        for j in range(3):
            entry = sum((m[i][k] * adj[k][j] for k in range(3)), MPoly.constant(0))
            assert entry == (d if i == j else 0)


def random_unimodular(rng, steps=6):
    """Product of integer elementary matrices, so the determinant is 1."""
    m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(steps):
        i, j = rng.sample(range(3), 2)
        k = rng.choice([-2, -1, 1, 2])
        m[i] = [m[i][c] + k * m[j][c] for c in range(3)]
    return tuple(map(tuple, m))


@settings(max_examples=15)
@given(ternary_quartics(max_terms=15), st.integers(0, 10**6))
def test_sl3_invariance(f, seed):
    rng = random.Random(seed)
    M = random_unimodular(rng)
    assert dixmier_invariants(transform(f, M)) == dixmier_invariants(f)


@settings(max_examples=15)
@given(ternary_quartics(max_terms=15), small_fractions.filter(lambda c: c != 0))
def test_scaling_weights(f, lam):
    base = dixmier_invariants(f).as_dict()
    scaled = dixmier_invariants(f * lam).as_dict()
    for name, weight in zip(DixmierSet.NAMES, DixmierSet.WEIGHTS):
        assert scaled[name] == base[name] * lam**weight


def test_c3_invariants_match_reference():
    inv = dixmier_invariants(make_curve("C3"))
    assert inv.I9 == load_poly("c3_i9.txt")
    assert inv.I18 == load_poly("c3_i18.txt")
    for name in ("I3", "I6", "I12", "I15"):
        assert getattr(inv, name).is_zero()


def test_c6_invariants_match_reference():
    inv = dixmier_invariants(make_curve("C6"))
    assert inv.I9 == load_poly("c6_i9.txt")
    assert inv.I18 == load_poly("c6_i18.txt")
    c3 = dixmier_invariants(make_curve("C3")).substitute({"s": 1 - r})
    assert c3 == inv


def test_c9_invariants_vanish():
    assert dixmier_invariants(make_curve("C9")).is_zero()


def test_c6_relation():
    assert c6_relation_residual(0, 0) == 960605665900794374400
    assert c6_relation_residual(1, 0) != 0
    inv = dixmier_invariants(make_curve("C6"))
    assert c6_relation_residual(*cleared_c6_invariants(inv.I9, inv.I18)).is_zero()
    # the relation is tied to the integer normalization
    assert not c6_relation_residual(inv.I9, inv.I18).is_zero()


def test_json_round_trip():
    inv = dixmier_invariants(make_curve("C3"))
    assert DixmierSet.from_json(inv.to_json()) == inv
