"""Sparse multivariate polynomials with exact rational coefficients.

An :class:`MPoly` is a dictionary from exponent tuples to coefficients,
together with the tuple of variable names the exponents refer to.  Variable
tuples are always kept in registry order and trimmed to the variables that
actually occur, so two polynomials are equal exactly when their variable
tuples and term dictionaries are equal.

Coefficients are ``int`` or :class:`fractions.Fraction`.  Floating point and
complex coefficients are tolerated (arithmetic is duck-typed) so that numeric
quartics can flow through the same code, but every exactness guarantee in this
module assumes rational input.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations
from numbers import Number
from operator import add

__all__ = [
    "REGISTRY",
    "Monomial",
    "MPoly",
    "var",
    "variables",
    "const",
    "merge_vars",
    "resultant",
    "sylvester_matrix",
    "bareiss_det",
    "det",
    "univariate_gcd",
    "squarefree_part",
    "to_dense",
    "from_dense",
]

REGISTRY = (
    "x", "y", "z", "u", "v", "w", "r", "s",
    "a", "b", "c", "d", "e", "f",
    "l0", "l1", "l2", "q", "t",
)
_RANK = {name: i for i, name in enumerate(REGISTRY)}


def _rank(name):
    return (_RANK.get(name, len(REGISTRY)), name)


def merge_vars(*groups):
    """Union of variable tuples, in registry order (unknown names sorted after)."""
    seen = set()
    for g in groups:
        seen.update(g)
    return tuple(sorted(seen, key=_rank))


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Monomial(tuple):
    """A power product, stored as sorted ``(name, exponent)`` pairs.

    Zero exponents are never stored, so ``Monomial({})`` is the unit monomial.
    """

    __slots__ = ()

    def __new__(cls, exponents=()):
        if isinstance(exponents, dict):
            items = exponents.items()
        else:
            items = exponents
        pairs = []
        for name, k in items:
            if k < 0 or int(k) != k:
                raise ValueError(f"bad exponent {k!r} for {name!r}")
            if k:
                pairs.append((name, int(k)))
        pairs.sort(key=lambda p: _rank(p[0]))
        return super().__new__(cls, pairs)

    @property
    def degree(self):
        return sum(k for _, k in self)

    def as_dict(self):
        return dict(self)

    def __repr__(self):
        if not self:
            return "Monomial(1)"
        return "Monomial(" + "*".join(n if k == 1 else f"{n}^{k}" for n, k in self) + ")"


class MPoly:
    """Exact sparse polynomial.

    Instances are immutable; every operation returns a new polynomial.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms=None, vars=()):
        # Public constructor: cleans zero coefficients and trims variables.
        vars = tuple(vars)
        if merge_vars(vars) != vars or len(set(vars)) != len(vars):
            order = merge_vars(vars)
            idx = [vars.index(v) for v in order]
            clean = {}
            for e, c in (terms or {}).items():
                ne = tuple(e[i] for i in idx)
                clean[ne] = clean.get(ne, 0) + c
            vars, terms = order, clean
        n = len(vars)
        out = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError("exponent length does not match variables")
            if c != 0:
                out[e] = _norm_coeff(c)
        self._set(*_trim(out, vars))

    def _set(self, terms, vars):
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    @classmethod
    def _make(cls, terms, vars):
        # Internal: terms already free of zeros, exponents aligned with vars.
        p = object.__new__(cls)
        p._set(*_trim(terms, vars))
        return p

    # -- construction helpers -------------------------------------------

    @classmethod
    def constant(cls, c):
        if c == 0:
            return cls._make({}, ())
        return cls._make({(): _norm_coeff(c)}, ())

    @classmethod
    def variable(cls, name):
        return cls._make({(1,): 1}, (name,))

    @classmethod
    def from_monomial(cls, mono, coeff=1):
        mono = Monomial(mono)
        vars = tuple(n for n, _ in mono)
        return cls._make({tuple(k for _, k in mono): coeff} if coeff != 0 else {}, vars)

    # -- basic queries --------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.vars

    def constant_value(self):
        """The value of a constant polynomial (raises if not constant)."""
        if self.vars:
            raise ValueError(f"not a constant: {self}")
        return self.terms.get((), 0)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        """Iterate ``(Monomial, coefficient)`` pairs in canonical order."""
        for e in self._ordered_exponents():
            yield Monomial(zip(self.vars, e)), self.terms[e]

    def _ordered_exponents(self):
        # graded lexicographic, descending
        return sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)

    def coeff(self, mono):
        """Coefficient of a monomial given as a dict, Monomial or pairs."""
        mono = dict(Monomial(mono))
        if any(v not in self.vars for v in mono):
            return 0
        e = tuple(mono.get(v, 0) for v in self.vars)
        return self.terms.get(e, 0)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, name=None):
        """Degree in ``name`` (total degree when ``name`` is None); -1 for zero."""
        if name is None:
            return self.total_degree()
        if not self.terms:
            return -1
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def degree_in(self, names):
        """Total degree in a subset of the variables."""
        if not self.terms:
            return -1
        idx = [i for i, v in enumerate(self.vars) if v in names]
        return max(sum(e[i] for i in idx) for e in self.terms)

    def is_homogeneous(self, names=None, degree=None):
        names = self.vars if names is None else names
        idx = [i for i, v in enumerate(self.vars) if v in names]
        degs = {sum(e[i] for i in idx) for e in self.terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs.pop() == degree

    def is_exact(self):
        return all(isinstance(c, (int, Fraction)) for c in self.terms.values())

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, Number):
            return MPoly.constant(other)
        return NotImplemented

    def _aligned(self, other):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        vars = merge_vars(self.vars, other.vars)
        return vars, _embed(self.terms, self.vars, vars), _embed(other.terms, other.vars, vars)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        vars, t1, t2 = self._aligned(other)
        out = dict(t1)
        for e, c in t2.items():
            v = out.get(e, 0) + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return MPoly._make(out, vars)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._make({e: -c for e, c in self.terms.items()}, self.vars)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        if c == 0:
            return MPoly._make({}, ())
        if c == 1:
            return self
        out = {}
        for e, v in self.terms.items():
            w = v * c
            if w != 0:
                out[e] = _norm_coeff(w)
        return MPoly._make(out, self.vars)

    def __mul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return MPoly._make({}, ())
        if not other.vars:
            return self.scale(other.terms[()])
        if not self.vars:
            return other.scale(self.terms[()])
        vars, t1, t2 = self._aligned(other)
        if len(t1) < len(t2):
            t1, t2 = t2, t1
        out = {}
        get = out.get
        items2 = list(t2.items())
        for e1, c1 in t1.items():
            for e2, c2 in items2:
                e = tuple(map(add, e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return MPoly._make({e: _norm_coeff(c) for e, c in out.items() if c != 0}, vars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            if other.is_constant():
                other = other.constant_value()
            else:
                return self.divexact(other)
        if other == 0:
            raise ZeroDivisionError("polynomial division by zero")
        if isinstance(other, int):
            other = Fraction(other)
        return self.scale(1 / other)

    def __pow__(self, k):
        if not isinstance(k, int) or isinstance(k, bool):
            raise TypeError("exponent must be an int")
        if k < 0:
            raise ValueError("negative exponent")
        result = MPoly.constant(1)
        base = self
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return MPoly._make({tuple(i * k for i in e): _norm_coeff(c ** k)}, self.vars)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, Number):
            if other == 0:
                return not self.terms
            return not self.vars and self.terms.get((), 0) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.vars, frozenset(self.terms.items()))))
        return self._hash

    # -- calculus and transformations -----------------------------------

    def derive(self, name, order=1):
        """Iterated partial derivative with respect to ``name``."""
        if order < 0:
            raise ValueError("derivative order must be non-negative")
        if order == 0:
            return self
        if name not in self.vars:
            return MPoly._make({}, ())
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k < order:
                continue
            ne = e[:i] + (k - order,) + e[i + 1:]
            out[ne] = c * math.perm(k, order)
        return MPoly._make(out, self.vars)

    def diff(self, *spec):
        """``p.diff('x', 'x', 'y')`` or ``p.diff(('x', 2), 'y')``."""
        p = self
        for item in spec:
            if isinstance(item, tuple):
                p = p.derive(*item)
            else:
                p = p.derive(item)
        return p

    def substitute(self, assignment):
        """Simultaneous substitution ``{name: MPoly or number}``."""
        assignment = {k: v for k, v in assignment.items() if k in self.vars}
        if not assignment:
            return self
        keep = tuple(v for v in self.vars if v not in assignment)
        keep_idx = [self.vars.index(v) for v in keep]
        subs = [(self.vars.index(k), MPoly._coerce(v)) for k, v in assignment.items()]
        powers = [{} for _ in subs]

        def power(j, k):
            cache = powers[j]
            if k not in cache:
                cache[k] = subs[j][1] ** k
            return cache[k]

        # group terms by the exponents of substituted variables
        groups = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i, _ in subs)
            groups.setdefault(key, {})[tuple(e[i] for i in keep_idx)] = c
        result = MPoly._make({}, ())
        for key, rest in groups.items():
            factor = MPoly._make(rest, keep)
            for j, k in enumerate(key):
                if k:
                    factor = factor * power(j, k)
            result = result + factor
        return result

    def homogenize(self, name, d, names=None):
        """Multiply each term by ``name`` to the power making it degree ``d``.

        Degree is measured in ``names`` (all variables by default), so
        parameters can ride along in the coefficients.
        """
        if name in self.vars:
            raise ValueError(f"{name} already occurs in the polynomial")
        names = self.vars if names is None else names
        idx = [i for i, v in enumerate(self.vars) if v in names]
        if self.terms and self.degree_in(names) > d:
            raise ValueError(f"degree {self.degree_in(names)} exceeds {d}")
        vars = merge_vars(self.vars, (name,))
        pos = vars.index(name)
        out = {}
        for e, c in self.terms.items():
            out[e[:pos] + (d - sum(e[i] for i in idx),) + e[pos:]] = c
        return MPoly._make(out, vars)

    def collect(self, names):
        """Split into ``{Monomial in names: coefficient MPoly in the rest}``."""
        names = [n for n in self.vars if n in names]
        idx = [self.vars.index(n) for n in names]
        rest = tuple(v for v in self.vars if v not in names)
        rest_idx = [self.vars.index(v) for v in rest]
        groups = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            groups.setdefault(key, {})[tuple(e[i] for i in rest_idx)] = c
        return {Monomial(zip(names, k)): MPoly._make(t, rest) for k, t in groups.items()}

    def coefficients(self, name):
        """Coefficients in ``name``, ascending, as polynomials in the other variables."""
        d = self.degree(name)
        if d < 0:
            return []
        out = [MPoly._make({}, ())] * (d + 1)
        for mono, c in self.collect([name]).items():
            out[dict(mono).get(name, 0)] = c
        return out

    def evaluate(self, point, field="exact"):
        """Evaluate at ``point`` (a mapping name -> scalar).

        ``field`` is ``"exact"`` (Fraction arithmetic) or ``"complex"``.
        Every variable of the polynomial must be assigned.
        """
        missing = [v for v in self.vars if v not in point]
        if missing:
            raise ValueError(f"no value for {', '.join(missing)}")
        if field == "exact":
            vals = [Fraction(point[v]) for v in self.vars]
            zero = Fraction(0)
        elif field == "complex":
            vals = [complex(point[v]) for v in self.vars]
            zero = 0j
        else:
            raise ValueError(f"unknown field {field!r}")
        total = zero
        for e, c in self.terms.items():
            t = c if field == "exact" else complex(c)
            for x, k in zip(vals, e):
                if k:
                    t = t * x ** k
            total += t
        if field == "exact":
            return _norm_coeff(total)
        return total

    def map_coefficients(self, fn):
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v != 0:
                out[e] = v
        return MPoly._make(out, self.vars)

    def leading(self, order_vars=None):
        """Leading (exponent dict, coefficient) in lex order over ``order_vars``."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        order_vars = order_vars or self.vars
        idx = [self.vars.index(v) if v in self.vars else None for v in order_vars]
        best = max(self.terms, key=lambda e: tuple(e[i] if i is not None else 0 for i in idx))
        return dict(zip(self.vars, best)), self.terms[best]

    def divexact(self, other):
        """Exact quotient ``self / other``; raises ArithmeticError if inexact."""
        other = MPoly._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not other.vars:
            return self / other.terms[()]
        if not self.terms:
            return self
        vars = merge_vars(self.vars, other.vars)
        num = _embed(self.terms, self.vars, vars)
        den = _embed(other.terms, other.vars, vars)
        lead_d = max(den)
        lc_d = den[lead_d]
        quot = {}
        num = dict(num)
        while num:
            lead = max(num)
            diff = tuple(a - b for a, b in zip(lead, lead_d))
            if min(diff) < 0:
                raise ArithmeticError("polynomial division is not exact")
            coef = Fraction(num[lead]) / lc_d
            coef = _norm_coeff(coef)
            quot[diff] = coef
            for e, c in den.items():
                ne = tuple(map(add, e, diff))
                v = num.get(ne, 0) - coef * c
                if v == 0:
                    num.pop(ne, None)
                else:
                    num[ne] = _norm_coeff(v)
        return MPoly._make(quot, vars)

    # -- printing -------------------------------------------------------

    def __str__(self):
        from .parser import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"MPoly({str(self)!r})"


def _trim(terms, vars):
    if not vars:
        return terms, vars
    n = len(vars)
    used = [i for i in range(n) if any(e[i] for e in terms)]
    if len(used) == n:
        return terms, vars
    return {tuple(e[i] for i in used): c for e, c in terms.items()}, tuple(vars[i] for i in used)


def _embed(terms, vars, new_vars):
    if vars == new_vars:
        return terms
    pos = [new_vars.index(v) for v in vars]
    n = len(new_vars)
    out = {}
    for e, c in terms.items():
        ne = [0] * n
        for p, k in zip(pos, e):
            ne[p] = k
        out[tuple(ne)] = c
    return out


def var(name):
    return MPoly.variable(name)


def variables(names):
    """``x, y, z = variables("x y z")``"""
    return tuple(MPoly.variable(n) for n in names.replace(",", " ").split())


def const(c):
    return MPoly.constant(c)


# -- matrices and determinants ----------------------------------------------


def det(matrix):
    """Division-free determinant (Leibniz expansion) for small square matrices."""
    n = len(matrix)
    if n == 0:
        return MPoly.constant(1)
    if n == 1:
        return MPoly._coerce(matrix[0][0])
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = matrix
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    total = MPoly.constant(0)
    for perm in permutations(range(n)):
        term = MPoly.constant(_perm_sign(perm))
        for i, j in enumerate(perm):
            entry = matrix[i][j]
            if entry == 0:
                break
            term = term * entry
        else:
            total = total + term
    return total


def _perm_sign(perm):
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def bareiss_det(matrix):
    """Fraction-free (Bareiss) determinant of a square matrix of MPoly entries."""
    m = [[MPoly._coerce(x) for x in row] for row in matrix]
    n = len(m)
    if n == 0:
        return MPoly.constant(1)
    sign = 1
    prev = MPoly.constant(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MPoly.constant(0)
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                num = row_i[j] * pivot - mik * row_k[j]
                row_i[j] = num.divexact(prev) if not prev.is_constant() else num / prev.constant_value()
            row_i[k] = MPoly.constant(0)
        prev = pivot
    result = m[n - 1][n - 1]
    return -result if sign < 0 else result


def sylvester_matrix(p, q, name):
    """Sylvester matrix of ``p`` and ``q`` in ``name``; rows of ``p`` first."""
    cp = p.coefficients(name)[::-1]
    cq = q.coefficients(name)[::-1]
    m, n = len(cp) - 1, len(cq) - 1
    size = m + n
    zero = MPoly.constant(0)
    rows = []
    for i in range(n):
        rows.append([zero] * i + cp + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + cq + [zero] * (size - n - 1 - i))
    return rows


def resultant(p, q, name):
    """Resultant of ``p`` and ``q`` with respect to ``name``.

    Computed as the determinant of the Sylvester matrix with the rows of ``p``
    first, so ``Res(p, q) = lc(p)^deg(q) * prod q(alpha)`` over the roots of
    ``p``.  A constant argument ``c`` against a polynomial of degree ``n``
    gives ``c^n``.
    """
    p, q = MPoly._coerce(p), MPoly._coerce(q)
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined")
    m, n = p.degree(name), q.degree(name)
    if m == 0 and n == 0:
        return MPoly.constant(1)
    if m == 0:
        return p ** n
    if n == 0:
        return q ** m
    return bareiss_det(sylvester_matrix(p, q, name))


# -- dense univariate helpers over Q --------------------------------------------


def to_dense(p, name=None):
    """Ascending Fraction coefficient list of a univariate polynomial."""
    others = [v for v in p.vars if v != name] if name else p.vars[1:]
    if others:
        raise ValueError(f"not univariate: {p}")
    name = name or (p.vars[0] if p.vars else "x")
    d = p.degree(name)
    out = [Fraction(0)] * (d + 1)
    for mono, c in p.collect([name]).items():
        out[dict(mono).get(name, 0)] = Fraction(c.constant_value())
    return out


def from_dense(coeffs, name):
    return MPoly({(k,): c for k, c in enumerate(coeffs) if c != 0}, (name,))


def _dense_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _dense_divmod(a, b):
    a, b = _dense_trim(a), _dense_trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    a = [Fraction(c) for c in a]
    lb = Fraction(b[-1])
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        coef = a[-1] / lb
        q[k] = coef
        for i, c in enumerate(b):
            a[i + k] -= coef * c
        a.pop()
        a = _dense_trim(a)
    return _dense_trim(q), a


def _dense_gcd(a, b):
    a, b = _dense_trim(a), _dense_trim(b)
    while b:
        _, r = _dense_divmod(a, b)
        a, b = b, r
        # keep coefficients small
        if b:
            lead = b[-1]
            b = [c / lead for c in b]
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(c) / lead for c in a]


def _dense_derivative(a):
    return [k * c for k, c in enumerate(a)][1:]


def univariate_gcd(p, q):
    """Monic gcd over Q of two polynomials in (at most) one common variable."""
    names = merge_vars(p.vars, q.vars)
    if len(names) > 1:
        raise ValueError("univariate_gcd needs univariate input")
    name = names[0] if names else "x"
    g = _dense_gcd(to_dense(p, name), to_dense(q, name))
    return from_dense(g, name)


def squarefree_part(p):
    """``p / gcd(p, p')`` for a univariate polynomial over Q (made monic)."""
    if not p.vars:
        return MPoly.constant(1) if not p.is_zero() else p
    name = p.vars[0]
    a = to_dense(p, name)
    g = _dense_gcd(a, _dense_derivative(a))
    quo, rem = _dense_divmod(a, g)
    assert not rem
    lead = quo[-1]
    return from_dense([c / lead for c in quo], name)
