"""Dixmier invariants of ternary quartics.

The construction goes through the contravariants sigma and psi: restrict the
quartic to the pencil of lines ``z = -u x - v y``, take the degree-2 and
degree-3 invariants of the resulting binary quartic as forms in ``u, v``,
homogenize with ``w`` and rename ``(u, v, w) -> (x, y, z)``.  Differential
pairings of these with the quartic and its Hessian give I3, ..., I18.

Everything is exact, including for quartics whose coefficients involve the
parameters ``r`` and ``s``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .parser import format_poly, parse
from .polyring import MPoly, det, variables

__all__ = [
    "TernaryQuartic",
    "DixmierSet",
    "make_curve",
    "diff_pair",
    "hessian",
    "adjugate",
    "mdot",
    "j_functional",
    "transvectant",
    "binary_sigma",
    "binary_psi",
    "sigma_psi",
    "dixmier_invariants",
    "transform",
    "c6_relation_residual",
    "cleared_c6_invariants",
]

XYZ = ("x", "y", "z")
PARAMS = ("r", "s")

x, y, z, u, v, w = variables("x y z u v w")


@dataclass(frozen=True)
class TernaryQuartic:
    """A homogeneous quartic in x, y, z, possibly with parameters r and s.

    ``convention`` records how the affine model was homogenized: ``"z"`` for
    ``y^3 z = ...`` style models and ``"y"`` for ``x(x-y)(x-ry)(x-sy) - y z^3``.
    """

    poly: MPoly
    params: tuple = ()
    convention: str = "raw"

    def __post_init__(self):
        p = self.poly
        if p.is_zero() or not p.is_homogeneous(XYZ, 4):
            raise ValueError(f"not a homogeneous quartic in x, y, z: {p}")
        extra = [n for n in p.vars if n not in XYZ]
        object.__setattr__(self, "params", tuple(extra))

    def __str__(self):
        return format_poly(self.poly)

    def is_exact(self):
        return self.poly.is_exact()

    def specialize(self, **values):
        """Substitute numeric values for parameters."""
        return TernaryQuartic(self.poly.substitute(values), convention=self.convention)


def _c3_z(r, s):
    return y**3 * z - x * (x - z) * (x - r * z) * (x - s * z)


def _c3_y(r, s):
    return x * (x - y) * (x - r * y) * (x - s * y) - y * z**3


def make_curve(family, r=None, s=None, convention="z", poly=None):
    """Build one of the cyclic families as a :class:`TernaryQuartic`.

    ``family`` is ``"C3"`` (needs r, s), ``"C6"`` (needs r, uses s = 1 - r),
    ``"C9"`` or ``"raw"`` (needs ``poly``, an MPoly or expression string).
    ``r`` and ``s`` may be numbers or MPoly; they default to the formal
    parameters.  ``convention`` selects ``"z"`` (``y^3 z - x(x-z)(x-rz)(x-sz)``)
    or ``"y"`` (``x(x-y)(x-ry)(x-sy) - y z^3``).
    """
    family = family.upper() if family.lower() != "raw" else "raw"
    if family == "raw":
        if poly is None:
            raise ValueError("raw family needs a polynomial")
        if isinstance(poly, str):
            poly = parse(poly)
        return TernaryQuartic(poly, convention="raw")
    if convention not in ("z", "y"):
        raise ValueError(f"unknown convention {convention!r}")
    build = _c3_z if convention == "z" else _c3_y
    if family == "C3":
        r = MPoly.variable("r") if r is None else r
        s = MPoly.variable("s") if s is None else s
        p = build(r, s)
    elif family == "C6":
        r = MPoly.variable("r") if r is None else r
        p = build(r, 1 - r)
    elif family == "C9":
        # y^3 = x(x^3 - 1)
        p = y**3 * z - x**4 + x * z**3
        if convention == "y":
            p = -p.substitute({"y": z, "z": y})
    else:
        raise ValueError(f"unknown family {family!r}")
    return TernaryQuartic(p, convention=convention)


def diff_pair(f, g, names=XYZ):
    """Apply the differential operator of ``f`` to ``g``.

    Each monomial of ``f`` in ``names`` becomes the matching iterated partial
    derivative; coefficients (which may involve other variables) multiply.
    Yields 0 when ``f`` has larger degree than ``g``.
    """
    out = MPoly.constant(0)
    for mono, coeff in f.collect(names).items():
        dg = g
        for name, k in mono:
            dg = dg.derive(name, k)
            if dg.is_zero():
                break
        if not dg.is_zero():
            out = out + coeff * dg
    return out


def hessian(f, names=XYZ, half=False):
    """3x3 matrix of second partial derivatives of ``f`` (halved if ``half``)."""
    first = [f.derive(n) for n in names]
    scale = Fraction(1, 2) if half else 1
    return tuple(tuple(first[i].derive(names[j]) * scale for j in range(3)) for i in range(3))


def adjugate(m):
    """Classical adjoint (transposed cofactor matrix) of a 3x3 matrix."""
    def cof(i, j):
        rows = [k for k in range(3) if k != i]
        cols = [k for k in range(3) if k != j]
        minor = m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]
        return minor if (i + j) % 2 == 0 else -minor

    return tuple(tuple(cof(j, i) for j in range(3)) for i in range(3))


def mdot(a, b):
    """Trace pairing ``sum a_ij b_ji``."""
    n = len(a)
    total = MPoly.constant(0)
    for i in range(n):
        for j in range(n):
            total = total + a[i][j] * b[j][i]
    return total


def j_functional(kind, f, g=None, half=False):
    """The J_{1,1}, J_{2,2}, J_{3,0}, J_{0,3} pairings of two ternary quadrics.

    ``J30`` only looks at ``f`` and ``J03`` only at ``g``.
    """
    if kind == "J11":
        return mdot(hessian(f, half=half), hessian(g, half=half))
    if kind == "J22":
        return mdot(adjugate(hessian(f, half=half)), adjugate(hessian(g, half=half)))
    if kind == "J30":
        return det(hessian(f, half=half))
    if kind == "J03":
        return det(hessian(g, half=half))
    raise ValueError(f"unknown functional {kind!r}")


def transvectant(F, G, k, names=("x", "y")):
    """k-th transvectant of two binary forms in ``names``.

    ``(F, G)^k = (r-k)!(s-k)!/(r! s!) * sum_i (-1)^i C(k, i)
    d^k F / dx^(k-i) dy^i * d^k G / dx^i dy^(k-i)``, which is the expansion of
    the Cayley operator applied to two separated copies of the variables.
    """
    X, Y = names
    rdeg, sdeg = F.degree_in(names), G.degree_in(names)
    if F.is_zero() or G.is_zero():
        return MPoly.constant(0)
    if not (F.is_homogeneous(names) and G.is_homogeneous(names)):
        raise ValueError("transvectant needs binary forms")
    if k < 0 or k > min(rdeg, sdeg):
        raise ValueError(f"order {k} exceeds min degree {min(rdeg, sdeg)}")
    total = MPoly.constant(0)
    for i in range(k + 1):
        dF = F.derive(X, k - i).derive(Y, i)
        dG = G.derive(X, i).derive(Y, k - i)
        if dF.is_zero() or dG.is_zero():
            continue
        term = dF * dG * math.comb(k, i)
        total = total - term if i % 2 else total + term
    scale = Fraction(math.factorial(rdeg - k) * math.factorial(sdeg - k),
                     math.factorial(rdeg) * math.factorial(sdeg))
    return total * scale


def binary_sigma(P, names=("x", "y")):
    """Degree-2 invariant of a binary quartic, half its fourth transvectant with itself."""
    return transvectant(P, P, 4, names) * Fraction(1, 2)


def binary_psi(P, names=("x", "y")):
    """Degree-3 invariant of a binary quartic, ``(P, (P, P)^2)^4 / 6``."""
    hess = transvectant(P, P, 2, names)
    return transvectant(P, hess, 4, names) * Fraction(1, 6)


def sigma_psi(f):
    """The contravariants sigma (degree 4) and psi (degree 6) of a quartic."""
    poly = f.poly if isinstance(f, TernaryQuartic) else f
    g = poly.substitute({"z": -u * x - v * y})
    S = binary_sigma(g)
    P = binary_psi(g)
    rename = {"u": x, "v": y, "w": z}
    sigma = S.homogenize("w", 4, ("u", "v")).substitute(rename)
    psi = P.homogenize("w", 6, ("u", "v")).substitute(rename)
    return sigma, psi


@dataclass(frozen=True)
class DixmierSet:
    """I3, I6, I9, I12, I15, I18, each an MPoly in the curve's parameters."""

    I3: MPoly
    I6: MPoly
    I9: MPoly
    I12: MPoly
    I15: MPoly
    I18: MPoly

    NAMES = ("I3", "I6", "I9", "I12", "I15", "I18")
    WEIGHTS = (3, 6, 9, 12, 15, 18)

    def as_dict(self):
        return {name: getattr(self, name) for name in self.NAMES}

    def to_json(self, **kwargs):
        return json.dumps({k: format_poly(p) for k, p in self.as_dict().items()}, **kwargs)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(**{k: parse(data[k]) for k in cls.NAMES})

    def substitute(self, assignment):
        return DixmierSet(**{k: p.substitute(assignment) for k, p in self.as_dict().items()})

    def is_zero(self):
        return all(p.is_zero() for p in self.as_dict().values())


def dixmier_invariants(f):
    """Exact Dixmier invariants I3..I18 of a ternary quartic.

    With ``(sigma, psi) = sigma_psi(f)`` and the half Hessian ``H``::

        rho = D_f(psi) / 144          tau = D_rho(f) / 12
        I3  = D_sigma(f)              I6  = D_psi(det H(f)) - 8 I3^2
        I9  = <H(tau), H(rho)>        I12 = det H(rho)
        I15 = det H(tau)              I18 = <adj H(tau), adj H(rho)>

    The constants 1/144 and 1/12 together with the halved Hessian fix the
    overall scale of I9 and I18; they do not affect invariance.
    """
    poly = f.poly if isinstance(f, TernaryQuartic) else f
    sigma, psi = sigma_psi(poly)
    rho = diff_pair(poly, psi) * Fraction(1, 144)
    tau = diff_pair(rho, poly) * Fraction(1, 12)
    hess_det = det(hessian(poly, half=True))
    I3 = diff_pair(sigma, poly)
    I6 = diff_pair(psi, hess_det) - 8 * I3**2
    I9 = j_functional("J11", tau, rho, half=True)
    I12 = j_functional("J03", tau, rho, half=True)
    I15 = j_functional("J30", tau, rho, half=True)
    I18 = j_functional("J22", tau, rho, half=True)
    return DixmierSet(I3, I6, I9, I12, I15, I18)


def transform(f, matrix):
    """Linear change of coordinates ``(x, y, z) -> M (x, y, z)``."""
    poly = f.poly if isinstance(f, TernaryQuartic) else f
    new = [sum((MPoly.variable(n) * matrix[i][j] for j, n in enumerate(XYZ)), MPoly.constant(0))
           for i in range(3)]
    out = poly.substitute(dict(zip(XYZ, new)))
    return TernaryQuartic(out, convention="raw") if isinstance(f, TernaryQuartic) else out


# Degree-8 relation between the cleared invariants of the C6 family, as a
# polynomial in the names I9 and I18.
_C6_RELATION_TEXT = (
    "4000000*I9^8 - 676000000*I18*I9^6 - 1998092052000*I9^7 + "
    "42841500000*I18^2*I9^4 + 224328787434000*I18*I9^5 - 71509053768117831*I9^6 - "
    "1206702250000*I18^3*I9^2 - 8372335651553250*I18^2*I9^3 + "
    "8460248600243212740*I18*I9^4 - 395361312253919627346*I9^5 + "
    "12745792515625*I18^4 + 103850637726127500*I18^3*I9 - "
    "332936970436116610650*I18^2*I9^2 + 31914880192757153442492*I18*I9^3 + "
    "36392104317997507611465*I9^4 + 4362752394549791982000*I18^3 - "
    "644187721569909674246640*I18^2*I9 - 9875439964247275663003440*I18*I9^2 - "
    "826890695963630262273456*I9^3 + 474410438868202394564990304*I18^2 + "
    "30826420907787244648372032*I18*I9 - 168880832609781468337056*I9^2 + "
    "6939213188282316797541120*I18 + 2545539129474834804480*I9 + "
    "960605665900794374400"
)
C6_I9_SCALE = -331776
C6_I18_SCALE = 12230590464


def _c6_relation():
    return parse(_C6_RELATION_TEXT, registry=("I9", "I18"))


def c6_relation_residual(i9, i18):
    """Evaluate the degree-8 C6 relation at ``(i9, i18)``; exact for rationals and MPolys.

    The relation is written for the integer-normalized invariants, so feed it
    ``cleared_c6_invariants(I9, I18)`` rather than the raw values.
    """
    rel = _c6_relation()
    if isinstance(i9, MPoly) or isinstance(i18, MPoly):
        a = i9 if isinstance(i9, MPoly) else MPoly.constant(i9)
        b = i18 if isinstance(i18, MPoly) else MPoly.constant(i18)
        return rel.substitute({"I9": a, "I18": b})
    return rel.evaluate({"I9": Fraction(i9), "I18": Fraction(i18)}, field="exact")


def cleared_c6_invariants(i9, i18):
    """Rescale (I9, I18) of the C6 family to its integer-coefficient normalization."""
    return i9 * C6_I9_SCALE, i18 * C6_I18_SCALE
