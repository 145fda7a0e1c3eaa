"""Symmetric determinantal representations ``f = det(x A + y B + z C)``.

For the cyclic family ``x(x-y)(x-ry)(x-sy) - y z^3`` the matrices ``A`` and
``B`` can be taken diagonal, ``A = I`` and ``B = diag(0, -1, -r, -s)``, and
``C`` has zero diagonal.  Writing the six off-diagonal entries of ``C`` as

    c12 = a, c13 = b, c14 = d, c23 = c, c24 = e, c34 = f

and comparing coefficients gives six polynomial equations.  Along
``e = b, d = -c, s = 1 - r`` they collapse to four, which are solved by
reducing to a quartic in ``q = b / c`` and a sixth-root extraction.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .dixmier import XYZ, TernaryQuartic
from .numroots import all_roots, kth_roots
from .polyring import MPoly, det, variables

__all__ = [
    "SymMat4",
    "CurveC3Form",
    "DetRepSolution",
    "DegenerateCurveError",
    "DetRepError",
    "pencil_det",
    "diag_entries",
    "residual_system",
    "combined_equations",
    "specialize_c6",
    "c6_equations",
    "solve_c6",
    "verify",
    "a_ratio_defect",
]

x, y, z = variables("x y z")
A_, B_, C_, D_, E_, F_ = variables("a b c d e f")
R_, S_ = variables("r s")


class DegenerateCurveError(ValueError):
    """Repeated branch points: the diagonal normal form does not exist."""


class DetRepError(RuntimeError):
    """No branch of the solver verified."""

    def __init__(self, message, best_residual=None):
        super().__init__(message)
        self.best_residual = best_residual


def _cpair(v):
    v = complex(v)
    return [v.real, v.imag]


@dataclass(frozen=True)
class SymMat4:
    """Symmetric 4x4 matrix with MPoly or numeric entries."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        if len(rows) != 4 or any(len(row) != 4 for row in rows):
            raise ValueError("SymMat4 needs a 4x4 array")
        for i in range(4):
            for j in range(i + 1, 4):
                if not _same(rows[i][j], rows[j][i]):
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) differ")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls):
        return cls.diagonal([1, 1, 1, 1])

    @classmethod
    def diagonal(cls, values):
        return cls(tuple(tuple(values[i] if i == j else 0 for j in range(4)) for i in range(4)))

    @classmethod
    def from_upper(cls, upper, diagonal=(0, 0, 0, 0)):
        """Build from the six entries above the diagonal, row by row (12, 13, 14, 23, 24, 34)."""
        u = list(upper)
        if len(u) != 6:
            raise ValueError("need six upper-triangular entries")
        m = [[0] * 4 for _ in range(4)]
        k = 0
        for i in range(4):
            m[i][i] = diagonal[i]
            for j in range(i + 1, 4):
                m[i][j] = m[j][i] = u[k]
                k += 1
        return cls(tuple(map(tuple, m)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def to_complex(self):
        return np.array([[complex(_num(v)) for v in row] for row in self.entries])

    def to_json(self):
        return [[_cpair(_num(v)) for v in row] for row in self.entries]


def _same(u, v):
    if isinstance(u, MPoly) or isinstance(v, MPoly):
        return MPoly._coerce(u) == MPoly._coerce(v)
    return u == v


def _num(v):
    return v.constant_value() if isinstance(v, MPoly) else v


def pencil_det(A, B, C):
    """``det(x A + y B + z C)`` as an MPoly in x, y, z (and any symbols in the entries)."""
    mats = [m.entries if isinstance(m, SymMat4) else m for m in (A, B, C)]
    pencil = [[x * mats[0][i][j] + y * mats[1][i][j] + z * mats[2][i][j] for j in range(4)]
              for i in range(4)]
    return det(pencil)


@dataclass(frozen=True)
class CurveC3Form:
    """``x(x-y)(x-ry)(x-sy) - y z^3``, or a custom quartic with the same slice at z = 0."""

    r: object = None
    s: object = None
    poly: MPoly = None

    def __post_init__(self):
        r = R_ if self.r is None else self.r
        s = S_ if self.s is None else self.s
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)
        if self.poly is None:
            p = x * (x - y) * (x - r * y) * (x - s * y) - y * z**3
            object.__setattr__(self, "poly", p)

    @property
    def betas(self):
        return (0, -1, -self.r, -self.s)

    def check_normal_form(self):
        """``f(x,0,0) = x^4`` and ``f(x,y,0) = prod (x + beta_i y)``."""
        f = self.poly
        slice_ = MPoly.constant(1)
        for b in self.betas:
            slice_ = slice_ * (x + b * y)
        return f.substitute({"y": 0, "z": 0}) == x**4 and f.substitute({"z": 0}) == slice_

    def curve(self):
        return TernaryQuartic(self.poly, convention="y")


def _distinct(values):
    vals = [MPoly._coerce(v) for v in values]
    return all(not (vals[i] - vals[j]).is_zero() for i in range(4) for j in range(i + 1, 4))


def diag_entries(curve):
    """Diagonal of C: ``c_ii = beta_i f_z(-beta_i, 1, 0) / f_y(-beta_i, 1, 0)``."""
    if not _distinct(curve.betas):
        raise DegenerateCurveError("branch points repeat (r = s or r, s in {0, 1})")
    fy, fz = curve.poly.derive("y"), curve.poly.derive("z")
    out = []
    for beta in curve.betas:
        if MPoly._coerce(beta).is_zero():
            out.append(0)
            continue
        pt = {"x": -beta, "y": 1, "z": 0}
        num = fz.substitute(pt)
        den = fy.substitute(pt)
        if den.is_zero():
            raise DegenerateCurveError(f"f_y vanishes at (-{beta}, 1, 0)")
        val = (MPoly._coerce(beta) * num)
        if den.is_constant():
            val = val / den.constant_value()
        elif not val.is_zero():
            val = val.divexact(den)
        out.append(val.constant_value() if val.is_constant() else val)
    return tuple(out)


def _normal_pencil(r, s):
    A = SymMat4.identity()
    B = SymMat4.diagonal([0, -1, -MPoly._coerce(r) if isinstance(r, MPoly) else -r,
                          -MPoly._coerce(s) if isinstance(s, MPoly) else -s])
    return A, B


# the x, y, z monomial each residual equation comes from, in output order
_RESIDUAL_MONOMIALS = (
    (("x", 1), ("y", 1), ("z", 2)),
    (("y", 2), ("z", 2)),
    (("y", 1), ("z", 3)),
    (("x", 2), ("z", 2)),
    (("x", 1), ("z", 3)),
    (("z", 4),),
)


def residual_system(r=None, s=None):
    """The six coefficient equations of ``f - det(x I + y B + z C)`` in a..f.

    ``C`` has zero diagonal and upper entries ``a, b, d`` (first row),
    ``c, e`` (second row) and ``f``.  Equations are listed by the monomial
    they come from: ``x y z^2, y^2 z^2, y z^3, x^2 z^2, x z^3, z^4``.
    All other coefficients agree identically.
    """
    curve = CurveC3Form(r, s)
    A, B = _normal_pencil(curve.r, curve.s)
    C = SymMat4.from_upper([A_, B_, D_, C_, E_, F_])
    diff = curve.poly - pencil_det(A, B, C)
    eqs = {tuple(sorted(m)): p for m, p in diff.collect(XYZ).items() if not p.is_zero()}
    out = [eqs.pop(tuple(sorted(key)), None) for key in _RESIDUAL_MONOMIALS]
    if eqs or any(p is None for p in out):
        raise RuntimeError("residual equations do not have the expected shape")
    return out


def combined_equations(system):
    """Sums used to eliminate variables from the residual system.

    Returns ``(E1 + E4, E1 + E2 + E4)``; the second equals
    ``a^2 (1-r)(1-s) + c^2 (1-s) + e^2 (1-r)``.
    """
    e = list(system)
    return e[0] + e[3], e[0] + e[1] + e[3]


def c6_equations(r=None):
    """The four equations left along ``e = b, d = -c``, with ``s = 1 - r``."""
    r = R_ if r is None else r
    s = 1 - r
    a, b, c, f = A_, B_, C_, F_
    return [
        a**2 * r * s + b**2 * s + c**2 * r,
        2 * a * b * c * (s - r) - 2 * b * c * f - 1,
        a**2 + f**2 + 2 * (b**2 + c**2),
        a**2 * f**2 - 2 * a * f * (b**2 - c**2) + (b**2 + c**2) ** 2,
    ]


def specialize_c6(system, r=None):
    """Substitute ``e = b, d = -c, s = 1 - r`` and reduce to four equations.

    The fifth equation must vanish identically and the rest must agree, up
    to sign and repetition, with :func:`c6_equations`; anything else raises.
    """
    r = R_ if r is None else r
    sub = {"e": B_, "d": -C_, "s": 1 - r}
    if not isinstance(r, MPoly) or r != R_:
        sub["r"] = r
    specialized = [p.substitute(sub) for p in system]
    if not specialized[4].is_zero():
        raise RuntimeError("fifth equation did not vanish after specialization")
    target = c6_equations(r)
    remaining = [p for p in specialized if not p.is_zero()]
    for p in remaining:
        if not any(p == t or p == -t for t in target):
            raise RuntimeError(f"unexpected specialized equation {p}")
    for t in target:
        if not any(p == t or p == -t for p in remaining):
            raise RuntimeError(f"missing specialized equation {t}")
    return target


@dataclass(frozen=True)
class DetRepSolution:
    C: SymMat4
    branch: dict
    residual: float
    values: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "C": self.C.to_json(),
            "branch": dict(self.branch),
            "residual": float(self.residual),
            "values": {k: _cpair(v) for k, v in self.values.items()},
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


def verify(f, A, B, C):
    """Largest coefficient deviation of ``det(x A + y B + z C)`` from ``f``, relative to ``f``."""
    poly = f.poly if isinstance(f, (TernaryQuartic, CurveC3Form)) else f
    P = pencil_det(A, B, C)
    diff = P - poly
    if any(v not in XYZ for v in diff.vars):
        raise ValueError("verify needs numeric matrices")
    scale = max(abs(complex(c)) for c in poly.terms.values())
    if diff.is_zero():
        return 0.0
    return max(abs(complex(c)) for c in diff.terms.values()) / scale


def _q_quartic(r, s):
    """Ascending coefficients of ``(q+i)^4 - (-q^2/r - 1/s)(-2(q^2+1) + q^2/r + 1/s)``."""
    P = np.polynomial.polynomial
    lhs = P.polypow([1j, 1], 4)
    g = np.array([-1 / s, 0, -1 / r], dtype=complex)
    h = np.array([-2 + 1 / s, 0, -2 + 1 / r], dtype=complex)
    rhs = P.polymul(g, h)
    return P.polysub(lhs, rhs)


def _equation_residual(eqs, point):
    worst = 0.0
    for p in eqs:
        val = 0j
        size = 0.0
        for mono, coef in p.items():
            t = complex(coef)
            for name, k in mono:
                t *= complex(point[name]) ** k
            val += t
            size += abs(t)
        worst = max(worst, abs(val) / size if size else abs(val))
    return worst


def solve_c6(r, tol=1e-8):
    """Numeric symmetric representation of ``x(x-y)(x-ry)(x-sy) - y z^3`` with ``s = 1 - r``.

    All 4 x 6 x 2 branches (q-root, sixth root of c, sign of a) are tried in
    a fixed order; branches satisfying the four reduced equations are
    assembled into C and checked against the curve by expanding the
    determinant.  The branch with the smallest residual is returned.
    """
    r = Fraction(r)
    s = 1 - r
    if r in (0, 1) or r == s:
        raise DegenerateCurveError(f"r = {r} gives repeated branch points")
    rf, sf = float(r), float(s)
    curve = CurveC3Form(r, s)
    A, B = _normal_pencil(r, s)
    eqs = c6_equations(r)
    qs = all_roots(_q_quartic(rf, sf))
    qs = sorted(qs, key=lambda q: (round(q.real, 10), round(q.imag, 10)))
    best = None
    best_res = np.inf
    for qi, q in enumerate(qs):
        Q = 4 * (q * q * sf + rf) - 2 * (sf - rf) * (q + 1j) ** 2 - 2 * (q * q + 1)
        if q == 0 or Q == 0:
            continue
        for ci, c in enumerate(kth_roots(1 / (4 * q * q * Q), 6)):
            b = q * c
            a0 = cmath.sqrt(-b * b / rf - c * c / sf)
            for sign in (1, -1):
                a = sign * a0
                if a == 0:
                    continue
                f = (b + 1j * c) ** 2 / a
                point = {"a": a, "b": b, "c": c, "f": f}
                if _equation_residual(eqs, point) > tol:
                    continue
                C = SymMat4.from_upper([a, b, -c, c, b, f])
                res = verify(curve.poly, A, B, C)
                best_res = min(best_res, res)
                if res <= tol and (best is None or res < best.residual):
                    branch = {"q_index": qi, "c_index": ci, "a_sign": sign}
                    best = DetRepSolution(C, branch, res, point)
    if best is None:
        raise DetRepError(f"no branch verified (best residual {best_res:.3g})", best_res)
    return best


def a_ratio_defect(sol, r):
    """``|a * det - (b d + c e)|`` for the 2x2 determinant giving a, with ``d = -c, e = b``."""
    r = float(Fraction(r))
    s = 1 - r
    v = sol.values
    a, b, c = v["a"], v["b"], v["c"]
    d, e = -c, b
    det2 = (b * c * s + d * e * r) * (c * e) - (b * d) * (b * c * (1 - s) + d * e * (1 - r))
    return abs(a * det2 - (b * d + c * e))
