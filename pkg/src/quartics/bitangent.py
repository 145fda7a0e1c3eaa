"""Bitangents of plane quartics.

A line is a bitangent exactly when the quartic restricted to it is the
square of a binary quadratic.  Lines are searched chart by chart:

* ``a x + b y + z = 0`` (two unknowns),
* ``a x + y = 0`` (one unknown),
* the single line ``x = 0``.

On each chart the square condition is turned into polynomial equations in
the line coordinates.  With ``c0..c4`` the coefficients of the restricted
quartic, a square with ``c0 != 0`` is characterised by::

    E1 = 4 c0 c1 c2 - c1^3 - 8 c0^2 c3 = 0
    E2 = (4 c0 c2 - c1^2)^2 - 64 c0^3 c4 = 0

and when ``c0 = 0`` a square forces ``c1 = 0`` so both expressions vanish
anyway.  Every root of the system is therefore a candidate, and spurious
candidates are discarded by an explicit square decomposition.  For rational
quartics the elimination is exact; only the final root extraction is done
in floating point, followed by Newton refinement of the full square system.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dixmier import XYZ, TernaryQuartic, make_curve, transform
from .numroots import all_roots, exact_to_complex, kth_roots
from .polyring import (
    MPoly,
    resultant,
    squarefree_part,
    to_dense,
    univariate_gcd,
)

__all__ = [
    "Line",
    "SquareWitness",
    "BitangentRecord",
    "SyzygyVerdict",
    "BitangentError",
    "restrict",
    "square_decompose",
    "find_bitangents",
    "tangency_points",
    "horizontal_bitangents",
    "horizontal_b_cubed",
    "syzygy_test",
    "conic_determinant",
    "smoothness_check",
    "c9_u_radicals",
    "c9_bitangents",
    "projective_distance",
]

VERIFY_TOL = 1e-8
DEDUP_TOL = 1e-7
SYZYGY_TOL = 1e-8

# fixed unimodular matrices used when a chart degenerates
_FALLBACK_MATRICES = (
    ((1, 0, 0), (2, 1, 0), (3, -1, 1)),
    ((1, 3, 0), (0, 1, 0), (-2, 5, 1)),
    ((1, 1, 2), (0, 1, 7), (0, 0, 1)),
)


class BitangentError(RuntimeError):
    """The search did not produce exactly 28 verified lines."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


def _poly(f):
    return f.poly if isinstance(f, TernaryQuartic) else f


def _is_exact_number(v):
    return isinstance(v, (int, Fraction))


def _scalar(v):
    """Python scalar from an exact or complex value, keeping exact types."""
    if isinstance(v, MPoly):
        v = v.constant_value()
    if _is_exact_number(v):
        return Fraction(v)
    v = complex(v)
    return v


def _cpair(v):
    v = complex(v)
    return [v.real, v.imag]


# -- domain types -------------------------------------------------------------


@dataclass(frozen=True)
class Line:
    """The line ``a x + b y + c z = 0``, scaled so its last nonzero coordinate is 1."""

    a: object
    b: object
    c: object

    def __post_init__(self):
        coords = [_scalar(v) for v in (self.a, self.b, self.c)]
        nz = [i for i, v in enumerate(coords) if v != 0]
        if not nz:
            raise ValueError("a line needs a nonzero coordinate")
        last = coords[nz[-1]]
        coords = [v / last for v in coords]
        coords[nz[-1]] = Fraction(1) if _is_exact_number(coords[nz[-1]]) else 1 + 0j
        for name, v in zip("abc", coords):
            object.__setattr__(self, name, v)

    @property
    def coords(self):
        return (self.a, self.b, self.c)

    @property
    def chart(self):
        """Which coordinate was scaled to 1: ``"c"``, ``"b"`` or ``"a"``."""
        if self.c != 0:
            return "c"
        if self.b != 0:
            return "b"
        return "a"

    def is_exact(self):
        return all(_is_exact_number(v) for v in self.coords)

    def as_complex(self):
        return np.array([complex(v) for v in self.coords])

    def __call__(self, point):
        return sum(complex(l) * complex(p) for l, p in zip(self.coords, point))

    def to_json(self):
        return [_cpair(v) for v in self.coords]


@dataclass(frozen=True)
class SquareWitness:
    """Coefficients of a quadratic ``l0 X^2 + l1 X Y + l2 Y^2`` whose square is a binary quartic."""

    l0: object
    l1: object
    l2: object

    def as_tuple(self):
        return (self.l0, self.l1, self.l2)

    def square(self):
        l0, l1, l2 = self.as_tuple()
        return [l0 * l0, 2 * l0 * l1, l1 * l1 + 2 * l0 * l2, 2 * l1 * l2, l2 * l2]


@dataclass(frozen=True)
class BitangentRecord:
    line: Line
    witness: SquareWitness
    p1: tuple
    p2: tuple
    residual: float
    exact: bool = False

    @property
    def repeated_point(self):
        return projective_distance(self.p1, self.p2) < DEDUP_TOL

    def to_dict(self):
        return {
            "line": self.line.to_json(),
            "points": [[_cpair(v) for v in self.p1], [_cpair(v) for v in self.p2]],
            "residual": float(self.residual),
            "exact": bool(self.exact),
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


@dataclass(frozen=True)
class SyzygyVerdict:
    determinant: complex
    classification: str
    repeated_points: bool = False

    @property
    def syzygetic(self):
        return self.classification == "syzygetic"

    def to_dict(self):
        return {
            "determinant": _cpair(self.determinant),
            "classification": self.classification,
            "repeated_points": self.repeated_points,
        }


def projective_distance(p, q):
    """Sine of the angle between two points of complex projective space."""
    u = np.asarray([complex(v) for v in p])
    v = np.asarray([complex(w) for w in q])
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        raise ValueError("zero vector is not a projective point")
    overlap = abs(np.vdot(u, v)) / (nu * nv)
    return float(np.sqrt(max(0.0, 1.0 - overlap * overlap)))


# -- restriction ------------------------------------------------------------------

a_, b_ = MPoly.variable("a"), MPoly.variable("b")

# chart name -> (substitution, free variables)
_CHARTS = {
    "c": ({"z": -a_ * MPoly.variable("x") - b_ * MPoly.variable("y")}, ("x", "y")),
    "b": ({"y": -a_ * MPoly.variable("x")}, ("x", "z")),
    "a": ({"x": MPoly.constant(0)}, ("y", "z")),
}
_CHART_PARAMS = {"c": ("a", "b"), "b": ("a",), "a": ()}


def _coeff_poly(g, mono, free):
    """Coefficient of a monomial in ``free`` as an MPoly in the remaining variables."""
    key = tuple(sorted((n, e) for n, e in mono.items() if e))
    for m, c in g.collect(free).items():
        if tuple(sorted(m)) == key:
            return c
    return MPoly.constant(0)


def _chart_family(poly, chart):
    """The five restricted coefficients as polynomials in the chart's line coordinates."""
    sub, free = _CHARTS[chart]
    return [_coeff_poly(poly.substitute(sub), {free[0]: 4 - k, free[1]: k}, free) for k in range(5)]


def restrict(f, line):
    """Binary quartic obtained by restricting ``f`` to ``line``.

    The coordinate belonging to the line's last nonzero coefficient is
    eliminated; the result lists the coefficients of ``X^4, X^3 Y, ..., Y^4``
    in the two remaining coordinates (in x, y, z order).  Parameters of
    ``f`` survive as MPoly coefficients.
    """
    poly = _poly(f)
    if not isinstance(line, Line):
        line = Line(*line)
    chart = line.chart
    family = _chart_family(poly, chart)
    values = dict(zip(("a", "b"), line.coords))
    out = []
    for c in family:
        if line.is_exact():
            v = c.substitute({k: values[k] for k in _CHART_PARAMS[chart]})
        else:
            v = c.substitute({k: complex(values[k]) for k in _CHART_PARAMS[chart]})
        out.append(v.constant_value() if v.is_constant() else v)
    return out


# -- perfect squares ----------------------------------------------------------------


def _exact_sqrt(q):
    """Rational square root of a non-negative Fraction, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    from math import isqrt

    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _fit_square(c):
    """Fit ``(l0, l1, l2)`` to five coefficients, anchoring on the larger end coefficient."""
    c0, c1, c2, c3, c4 = c
    exact = all(_is_exact_number(v) for v in c)
    sqrt = _exact_sqrt if exact else None
    if abs(c0) == 0 and abs(c4) == 0:
        # only the middle term can survive: (l1 X Y)^2
        root = sqrt(c2) if sqrt else None
        if root is None:
            root = cmath.sqrt(complex(c2))
        return (0, root, 0)
    if abs(c0) >= abs(c4):
        l0 = sqrt(c0) if sqrt else None
        if l0 is None:
            l0 = cmath.sqrt(complex(c0))
        l1 = c1 / (2 * l0)
        l2 = (c2 - l1 * l1) / (2 * l0)
        return (l0, l1, l2)
    l2 = sqrt(c4) if sqrt else None
    if l2 is None:
        l2 = cmath.sqrt(complex(c4))
    l1 = c3 / (2 * l2)
    l0 = (c2 - l1 * l1) / (2 * l2)
    return (l0, l1, l2)


def _square_residual(c, lam):
    scale = max(abs(complex(v)) for v in c)
    if scale == 0:
        return 0.0
    sq = SquareWitness(*lam).square()
    return max(abs(complex(v) - complex(w)) for v, w in zip(c, sq)) / scale


def square_decompose(q, tol=VERIFY_TOL):
    """Write a binary quartic as ``(l0 X^2 + l1 X Y + l2 Y^2)^2``.

    ``q`` holds the coefficients ``c0..c4`` of ``X^4 .. Y^4``.  Returns a
    :class:`SquareWitness` when all five coefficients match to relative
    tolerance ``tol``, otherwise None.  Rational input with rational square
    roots produces an exact witness.
    """
    c = [v.constant_value() if isinstance(v, MPoly) else v for v in q]
    if len(c) != 5:
        raise ValueError("a binary quartic has five coefficients")
    c = [Fraction(v) if _is_exact_number(v) else complex(v) for v in c]
    lam = _fit_square(c)
    if all(_is_exact_number(v) for v in c) and all(_is_exact_number(v) for v in lam):
        if SquareWitness(*lam).square() == c:
            return SquareWitness(*(Fraction(v) for v in lam))
    if _square_residual(c, lam) <= tol:
        return SquareWitness(*(complex(v) for v in lam))
    return None


def _is_exact_square(c):
    """Decide over Q whether a rational binary quartic is a constant times a square."""
    c = [Fraction(v) for v in c]
    if not any(c):
        return True
    # dehomogenize Y = 1: p(X) = sum c_k X^(4-k); roots at infinity come from leading zeros
    lead_zeros = next(k for k, v in enumerate(c) if v != 0)
    if lead_zeros % 2:
        return False
    p = [c[4 - i] for i in range(5 - lead_zeros)]  # ascending in X
    lc = p[-1]
    p = [v / lc for v in p]
    d = len(p) - 1
    if d % 2:
        return False
    half = d // 2
    # monic square root by matching the top coefficients
    h = [Fraction(0)] * (half + 1)
    h[half] = Fraction(1)
    for k in range(1, half + 1):
        acc = p[d - k]
        for i in range(1, k):
            acc -= h[half - i] * h[half - k + i]
        h[half - k] = acc / 2
    sq = [Fraction(0)] * (d + 1)
    for i, u in enumerate(h):
        for j, v in enumerate(h):
            sq[i + j] += u * v
    return sq == p


# -- tangency points -------------------------------------------------------------------


def _normalize_point(p):
    p = np.asarray([complex(v) for v in p])
    big = np.max(np.abs(p))
    if big == 0:
        raise ValueError("zero point")
    p = p / p[np.argmax(np.abs(p))]
    p[np.abs(p) < 1e-13] = 0
    nz = np.nonzero(p)[0]
    p = p / p[nz[-1]]
    return tuple(complex(v) for v in p)


def _quadratic_roots(l0, l1, l2):
    """Projective roots ``(X, Y)`` of ``l0 X^2 + l1 X Y + l2 Y^2``."""
    l0, l1, l2 = complex(l0), complex(l1), complex(l2)
    big = max(abs(l0), abs(l1), abs(l2))
    if big == 0:
        raise ValueError("the zero quadratic has no isolated roots")
    l0, l1, l2 = l0 / big, l1 / big, l2 / big
    disc = l1 * l1 - 4 * l0 * l2
    if abs(disc) <= 1e-12:
        # double root
        if abs(l0) >= abs(l2):
            return [(-l1 / (2 * l0), 1)] * 2 if l0 != 0 else [(1, 0)] * 2
        return [(1, -l1 / (2 * l2))] * 2
    sq = cmath.sqrt(disc)
    # pick the sign that avoids cancellation
    if (l1.conjugate() * sq).real < 0:
        sq = -sq
    qv = -(l1 + sq) / 2
    # X/Y roots are qv/l0 and l2/qv; written projectively to allow l0 = 0
    return [(qv, l0), (l2, qv)]


def _lift(chart, line, X, Y):
    a, b = complex(line.a), complex(line.b)
    if chart == "c":
        return (X, Y, -a * X - b * Y)
    if chart == "b":
        return (X, -a * X, Y)
    return (0, X, Y)


def tangency_points(f, rec, tol=VERIFY_TOL):
    """The two contact points of a bitangent (equal for a hyperflex-type line)."""
    line, witness = rec.line, rec.witness
    c = restrict(f, line)
    if any(isinstance(v, MPoly) for v in c):
        raise ValueError("tangency points need a curve without free parameters")
    res = _square_residual(c, witness.as_tuple())
    if res > tol:
        raise ValueError(f"witness residual {res:.3g} exceeds tolerance")
    roots = _quadratic_roots(*witness.as_tuple())
    pts = [_normalize_point(_lift(line.chart, line, X, Y)) for X, Y in roots]
    return pts[0], pts[1]


def _point_residual(poly, line, p):
    pt = dict(zip(XYZ, p))
    size = max(abs(v) for v in p)
    fval = abs(poly.evaluate(pt, field="complex"))
    fscale = sum(abs(complex(c)) for c in poly.terms.values()) * size**4
    lval = abs(line(p))
    lscale = sum(abs(complex(v)) for v in line.coords) * size
    return max(fval / fscale, lval / lscale)


def _make_record(poly, line, tol):
    coeffs = restrict(poly, line)
    exact = line.is_exact() and all(_is_exact_number(v) for v in coeffs)
    if exact and not _is_exact_square(coeffs):
        return None
    witness = square_decompose(coeffs, tol=np.inf if exact else tol)
    if witness is None:
        return None
    lam = witness.as_tuple()
    res = 0.0 if exact else _square_residual(coeffs, lam)
    if res > tol:
        return None
    rec = BitangentRecord(line, witness, (0, 0, 1), (0, 0, 1), res, exact)
    p1, p2 = tangency_points(poly, rec, tol=tol if not exact else np.inf)
    pres = max(_point_residual(poly, line, p1), _point_residual(poly, line, p2))
    if pres > tol:
        return None
    return BitangentRecord(line, witness, p1, p2, max(res, pres) if not exact else 0.0, exact)


# -- numeric helpers -------------------------------------------------------------------


class _Compiled:
    """Fast complex evaluation of an MPoly in a fixed list of variables."""

    def __init__(self, p, names):
        extra = [v for v in p.vars if v not in names]
        if extra:
            raise ValueError(f"unexpected variables {extra}")
        idx = [p.vars.index(n) if n in p.vars else None for n in names]
        self.coef = np.array([complex(c) for c in p.terms.values()])
        self.exps = np.array([[e[i] if i is not None else 0 for i in idx] for e in p.terms],
                             dtype=int).reshape(len(p.terms), len(names))

    def __call__(self, *vals):
        if self.coef.size == 0:
            return 0j
        v = np.asarray(vals, dtype=complex)
        return complex(np.sum(self.coef * np.prod(v ** self.exps, axis=1)))


def _refine(family, derivs, params0, lam0, maxiter=30):
    """Newton/Gauss-Newton on ``c_k(params) = s_k(lambda)``, k = 0..4."""
    theta = np.concatenate([np.asarray(params0, dtype=complex), np.asarray(lam0, dtype=complex)])
    npar = len(params0)

    def residual(th):
        p, lam = th[:npar], th[npar:]
        c = np.array([fk(*p) for fk in family])
        l0, l1, l2 = lam
        s = np.array([l0 * l0, 2 * l0 * l1, l1 * l1 + 2 * l0 * l2, 2 * l1 * l2, l2 * l2])
        return c - s, c

    r, c = residual(theta)
    best = np.max(np.abs(r)) / max(np.max(np.abs(c)), 1e-300)
    for _ in range(maxiter):
        p, lam = theta[:npar], theta[npar:]
        l0, l1, l2 = lam
        J = np.zeros((5, npar + 3), dtype=complex)
        for k in range(5):
            for j in range(npar):
                J[k, j] = derivs[k][j](*p)
        J[:, npar:] = -np.array([
            [2 * l0, 0, 0],
            [2 * l1, 2 * l0, 0],
            [2 * l2, 2 * l1, 2 * l0],
            [0, 2 * l2, 2 * l1],
            [0, 0, 2 * l2],
        ])
        step = np.linalg.lstsq(J, -r, rcond=None)[0]
        trial = theta + step
        r_new, c_new = residual(trial)
        rel = np.max(np.abs(r_new)) / max(np.max(np.abs(c_new)), 1e-300)
        if not np.isfinite(rel) or rel >= best:
            break
        theta, r, best = trial, r_new, rel
        if best < 1e-15:
            break
    return theta[:npar], theta[npar:]


def _gaussian_lift(poly):
    """Exact copy of a complex polynomial with ``i`` written as the variable ``t``.

    Real and imaginary parts of float coefficients are converted exactly.
    """
    t = MPoly.variable("t")
    out = MPoly.constant(0)
    for mono, c in poly.items():
        c = complex(c) if not _is_exact_number(c) else c
        m = MPoly.from_monomial(mono)
        if isinstance(c, complex):
            out = out + m * Fraction(c.real) + m * t * Fraction(c.imag)
        else:
            out = out + m * c
    return out


def _norm_over_q(p):
    """``N = R^2 + I^2`` where ``p = R + i I`` after setting ``t^2 = -1``.

    The roots of ``N`` contain those of ``p`` (and of its conjugate).
    """
    if "t" not in p.vars:
        return p
    re, im = MPoly.constant(0), MPoly.constant(0)
    for k, c in enumerate(p.coefficients("t")):
        sign = -1 if k % 4 >= 2 else 1
        if k % 2:
            im = im + c * sign
        else:
            re = re + c * sign
    return re * re + im * im


def _trimmed_roots(coeffs, seed, rel=1e-11):
    c = np.asarray(coeffs, dtype=complex)
    if c.size == 0:
        return []
    big = np.max(np.abs(c))
    if big == 0:
        return None
    c = np.where(np.abs(c) < rel * big, 0, c)
    nz = np.nonzero(c)[0]
    if nz[-1] == 0:
        return []
    return all_roots(c[: nz[-1] + 1], seed=seed)


# -- smoothness -----------------------------------------------------------------------

_SMOOTH_MATRIX = ((1, 2, 3), (0, 1, 5), (0, 0, 1))


def _common_root_check(g, xs, tol=1e-8, seed=0):
    """Is there a y making all of ``g`` (polys in x, y) vanish at one of the ``xs``?"""
    comp = [_Compiled(p, ("x", "y")) for p in g]
    scales = [sum(abs(complex(c)) for c in p.terms.values()) or 1.0 for p in g]
    for x0 in xs:
        ys = None
        for p in g:
            coeffs = [_Compiled(c, ("x",))(x0) for c in p.coefficients("y")]
            ys = _trimmed_roots(coeffs, seed)
            if ys:
                break
        for y0 in ys or []:
            size = max(1.0, abs(x0), abs(y0)) ** 3
            if all(abs(fn(x0, y0)) <= tol * s * size for fn, s in zip(comp, scales)):
                return True
    return False


def _exact_lift(poly):
    return poly if poly.is_exact() else _gaussian_lift(poly)


def _real_roots_of(p, var, seed):
    """Numeric roots of a univariate polynomial over Q (empty for constants)."""
    if p.degree(var) <= 0:
        return []
    return all_roots(exact_to_complex(to_dense(p, var)), seed=seed)


def _gcd_all(polys):
    g = polys[0]
    for p in polys[1:]:
        if not g.vars:
            break
        g = univariate_gcd(g, p) if p.vars else MPoly.constant(1)
    return g


def smoothness_check(f, seed=0):
    """True when the quartic has no singular point in the complex projective plane.

    Works chart by chart on the partial derivatives after a fixed unimodular
    change of coordinates.  Elimination is exact; for complex coefficients
    it runs over Q with ``i`` adjoined formally, and common roots found that
    way are confirmed numerically.
    """
    poly = _poly(f)
    if any(v not in XYZ for v in poly.vars):
        raise ValueError("smoothness_check needs numeric coefficients")
    poly = transform(poly, _SMOOTH_MATRIX)
    exact = poly.is_exact()
    lifted = _exact_lift(poly)
    grads = [poly.derive(v) for v in XYZ]
    lgrads = [lifted.derive(v) for v in XYZ]
    if any(g.is_zero() for g in grads):
        return False

    # the line z = 0
    inf = [g.substitute({"z": 0}) for g in lgrads]
    if all(_norm_over_q(g.substitute({"x": 1, "y": 0})).is_zero() for g in inf):
        return False  # (1, 0, 0) is singular
    dehom = [_norm_over_q(g.substitute({"y": 1})) for g in inf]
    nonzero = [g for g in dehom if not g.is_zero()]
    if not nonzero:
        return False
    common = _gcd_all(nonzero)
    if common.degree("x") > 0:
        if exact:
            return False
        for x0 in _real_roots_of(common, "x", seed):
            pt = {"x": x0, "y": 1, "z": 0}
            if all(abs(g.evaluate(pt, "complex")) <= 1e-8 * _size(g) for g in grads):
                return False

    # the chart z = 1
    g = [p.substitute({"z": 1}) for p in grads]
    lg = [p.substitute({"z": 1}) for p in lgrads]
    if any(p.degree("y") <= 0 for p in lg):
        raise RuntimeError("smoothness test needs every partial to involve y")
    n12 = _norm_over_q(resultant(lg[0], lg[1], "y"))
    n13 = _norm_over_q(resultant(lg[0], lg[2], "y"))
    if n12.is_zero() or n13.is_zero():
        return False  # two partials share a curve, which meets the third
    h = _gcd_all([n12, n13])
    if h.degree("x") <= 0:
        return True
    return not _common_root_check(g, _real_roots_of(h, "x", seed), seed=seed)


def _size(p):
    return sum(abs(complex(c)) for c in p.terms.values()) or 1.0


# -- the search -------------------------------------------------------------------------


def _e_conditions(c):
    c0, c1, c2, c3, c4 = c
    e1 = 4 * c0 * c1 * c2 - c1**3 - 8 * c0**2 * c3
    e2 = (4 * c0 * c2 - c1**2) ** 2 - 64 * c0**3 * c4
    return e1, e2


class _ChartFailure(Exception):
    pass


def _compile_family(family, params):
    comp = [_Compiled(c, params) for c in family]
    derivs = [[_Compiled(c.derive(p), params) for p in params] for c in family]
    return comp, derivs


def _accept(poly, comp, derivs, params, tol, found):
    """Refine a candidate line and keep it if it verifies."""
    vals = [fn(*params) for fn in comp]
    lam = _fit_square(vals)
    if _square_residual(vals, lam) > 1e-3:
        return
    p, lam = _refine(comp, derivs, params, lam)
    coords = (p[0], p[1], 1) if len(p) == 2 else (p[0], 1, 0)
    line = Line(*[complex(v) for v in coords])
    rec = _make_record(poly, line, tol)
    if rec is not None:
        found.append(rec)


def _chart_c(poly, tol, seed, found):
    family = _chart_family(poly, "c")
    comp, derivs = _compile_family(family, ("a", "b"))
    e1, e2 = _e_conditions(family)
    if e1.is_zero() or e2.is_zero():
        raise _ChartFailure("square conditions degenerate on chart c = 1")
    l1, l2 = _e_conditions(_chart_family(_exact_lift(poly), "c"))
    if l1.degree("b") <= 0 and l2.degree("b") <= 0:
        raise _ChartFailure("square conditions free of b")
    res = _norm_over_q(resultant(l1, l2, "b"))
    if res.is_zero():
        raise _ChartFailure("E1 and E2 share a factor")
    a_roots = _real_roots_of(squarefree_part(res), "a", seed) if res.vars else []
    e1b = [_Compiled(c, ("a",)) for c in e1.coefficients("b")]
    e2b = [_Compiled(c, ("a",)) for c in e2.coefficients("b")]
    for a0 in a_roots:
        b_roots = _trimmed_roots([fn(a0) for fn in e1b], seed)
        if not b_roots:
            b_roots = _trimmed_roots([fn(a0) for fn in e2b], seed) or []
        for b0 in b_roots:
            _accept(poly, comp, derivs, (a0, b0), tol, found)


def _chart_b(poly, tol, seed, found):
    family = _chart_family(poly, "b")
    comp, derivs = _compile_family(family, ("a",))
    lifted = [_norm_over_q(p) for p in _e_conditions(_chart_family(_exact_lift(poly), "b"))]
    polys = [p for p in lifted if not p.is_zero()]
    if not polys:
        raise _ChartFailure("square conditions vanish on chart b = 1")
    for a0 in _real_roots_of(_gcd_all(polys), "a", seed):
        _accept(poly, comp, derivs, (a0,), tol, found)


def _chart_a(poly, tol, found):
    line = Line(Fraction(1), Fraction(0), Fraction(0)) if poly.is_exact() else Line(1 + 0j, 0j, 0j)
    rec = _make_record(poly, line, tol)
    if rec is not None:
        found.append(rec)


def _line_key(line):
    order = {"c": 0, "b": 1, "a": 2}[line.chart]
    vals = [complex(v) for v in line.coords]
    return (order,) + tuple(round(t, 8) + 0.0 for v in vals for t in (v.real, v.imag))


def _dedup(records):
    records = sorted(records, key=lambda r: (r.residual, not r.exact))
    kept = []
    for rec in records:
        if all(projective_distance(rec.line.coords, k.line.coords) >= DEDUP_TOL for k in kept):
            kept.append(rec)
    return sorted(kept, key=lambda r: _line_key(r.line))


def _search(poly, tol, seed):
    found = []
    _chart_c(poly, tol, seed, found)
    _chart_b(poly, tol, seed, found)
    _chart_a(poly, tol, found)
    return _dedup(found)


def _snap(v, tol=1e-13):
    """Tidy a numeric coordinate: tiny parts become 0."""
    v = complex(v)
    re = 0.0 if abs(v.real) < tol else v.real
    im = 0.0 if abs(v.imag) < tol else v.imag
    return complex(re, im)


def _exactify(poly, rec):
    """Replace a numeric line by an exact rational one when that verifies exactly."""
    if not poly.is_exact() or rec.exact:
        return rec
    coords = []
    for v in rec.line.coords:
        v = complex(v)
        if abs(v.imag) > 1e-12:
            return rec
        q = Fraction(v.real).limit_denominator(10**6)
        if abs(float(q) - v.real) > 1e-12 * max(1.0, abs(v.real)):
            return rec
        coords.append(q)
    exact = _make_record(poly, Line(*coords), VERIFY_TOL)
    return exact if exact is not None and exact.exact else rec


def find_bitangents(f, tol=VERIFY_TOL, seed=0, check_smooth=True):
    """All 28 bitangents of a smooth plane quartic, sorted deterministically.

    Raises ValueError for a singular curve and :class:`BitangentError` when
    the verified count is not 28 after trying a few coordinate changes.
    """
    poly = _poly(f)
    if any(v not in XYZ for v in poly.vars):
        raise ValueError("find_bitangents needs numeric coefficients")
    if check_smooth and not smoothness_check(poly, seed=seed):
        raise ValueError("the quartic is singular")
    diagnostics = {}
    attempts = [None] + list(_FALLBACK_MATRICES)
    for matrix in attempts:
        work = poly if matrix is None else transform(poly, matrix)
        try:
            recs = _search(work, tol, seed)
        except _ChartFailure as err:
            diagnostics[str(matrix)] = str(err)
            continue
        if matrix is not None:
            recs = _pull_back(poly, recs, matrix, tol)
        recs = _dedup([_exactify(poly, r) for r in recs])
        if len(recs) == 28:
            return recs
        diagnostics[str(matrix)] = f"{len(recs)} verified lines"
    raise BitangentError("could not verify 28 bitangents", diagnostics)


def _pull_back(poly, recs, matrix, tol):
    """Map lines of ``f(M p)`` back to lines of ``f``: l -> l M^-1."""
    inv = np.linalg.inv(np.asarray(matrix, dtype=float))
    out = []
    for rec in recs:
        l = rec.line.as_complex() @ inv
        line = Line(*[_snap(v) for v in l])
        new = _make_record(poly, line, tol)
        if new is not None:
            out.append(new)
    return out


# -- special families ---------------------------------------------------------------------


def horizontal_b_cubed(r, s):
    """Exact value of ``b^3`` for the lines ``b y + z = 0`` tangent twice to C3(r, s)."""
    r, s = Fraction(r), Fraction(s)
    if r - s == 1:
        den = s * s
    elif r + s == 1:
        den = s * s * (s - 1) ** 2
    elif r - s == -1:
        den = (s - 1) ** 2
    else:
        raise ValueError(f"no horizontal bitangent for (r, s) = ({r}, {s})")
    if den == 0:
        raise ValueError("degenerate curve: the cyclic model is singular")
    return 4 / den


def horizontal_bitangents(r, s, tol=VERIFY_TOL):
    """The three lines ``b y + z = 0`` tangent twice to ``y^3 z = x(x-z)(x-rz)(x-sz)``."""
    b3 = horizontal_b_cubed(r, s)
    curve = make_curve("C3", Fraction(r), Fraction(s))
    lines = []
    for b in kth_roots(b3, 3):
        line = Line(0j, complex(b), 1 + 0j)
        if square_decompose(restrict(curve, line), tol) is None:
            raise RuntimeError(f"horizontal line with b = {b} failed verification")
        lines.append(line)
    return lines


def c9_u_radicals():
    """The three roots of ``u^3 - 96 u^2 + 48 u + 64`` from their radical expressions.

    All radicals take principal branches.
    """
    s3 = cmath.sqrt(3)
    K = 32 * 3**3.5 * 1j + 31968
    k1 = K ** (1 / 3)
    k2 = k1 * k1
    u1 = -((s3 * 1j + 1) * k2 - 64 * k1 - 112 * 3**2.5 * 1j + 1008) / (2 * k1)
    u2 = ((s3 * 1j - 1) * k2 + 64 * k1 - 112 * 3**2.5 * 1j - 1008) / (2 * k1)
    u3 = (k2 + 32 * k1 + 1008) / k1
    return [u1, u2, u3]


def c9_bitangents(tol=1e-6):
    """Closed-form bitangents of ``y^3 z = x^4 - x z^3``.

    ``z = 0`` plus, for each radical root ``u`` and each cube root ``a`` of
    ``u``, the three lines ``a x + b y + z = 0`` whose ``b`` (a root of
    ``b^27 - 29496 b^18 + 401808 b^9 - 64``) makes the restriction a square.
    """
    poly = make_curve("C9").poly
    b_values = []
    for v in all_roots([-64, 401808, -29496, 1]):
        b_values.extend(kth_roots(v, 9))
    lines = [Line(Fraction(0), Fraction(0), Fraction(1))]
    for u in c9_u_radicals():
        for a in kth_roots(u, 3):
            matched = []
            for b in b_values:
                coeffs = restrict(poly, Line(a, b, 1 + 0j))
                if _square_residual(coeffs, _fit_square(coeffs)) <= tol:
                    matched.append(Line(a, b, 1 + 0j))
            if len(matched) != 3:
                raise RuntimeError(f"expected 3 partners for a = {a}, found {len(matched)}")
            lines.extend(matched)
    return lines


# -- syzygy ------------------------------------------------------------------------------


def _veronese(p):
    x, y, z = (complex(v) for v in p)
    return [x * x, y * y, z * z, x * y, y * z, z * x]


def conic_determinant(points):
    """Determinant of the row-normalized 6x6 Veronese matrix of six points."""
    if len(points) != 6:
        raise ValueError("need exactly six points")
    rows = np.array([_veronese(p) for p in points])
    norms = np.linalg.norm(rows, axis=1)
    if np.any(norms == 0):
        raise ValueError("zero point")
    return complex(np.linalg.det(rows / norms[:, None]))


def syzygy_test(f, triple, tol=SYZYGY_TOL):
    """Do the six contact points of three bitangents lie on one conic?"""
    if len(triple) != 3:
        raise ValueError("need three bitangents")
    lines = [rec.line for rec in triple]
    for i in range(3):
        for j in range(i + 1, 3):
            if projective_distance(lines[i].coords, lines[j].coords) < DEDUP_TOL:
                raise ValueError("the triple repeats a line")
    points = []
    for rec in triple:
        if isinstance(rec, BitangentRecord):
            p1, p2 = tangency_points(f, rec)
        else:
            raise TypeError("syzygy_test expects BitangentRecord entries")
        points.extend([p1, p2])
    repeated = any(projective_distance(points[2 * k], points[2 * k + 1]) < DEDUP_TOL for k in range(3))
    d = conic_determinant(points)
    label = "syzygetic" if abs(d) <= tol else "asyzygetic"
    return SyzygyVerdict(d, label, repeated)


def record_for_line(f, line, tol=VERIFY_TOL):
    """Verify a single line and build its record (None when it is not a bitangent)."""
    if not isinstance(line, Line):
        line = Line(*line)
    return _make_record(_poly(f), line, tol)


__all__.append("record_for_line")
