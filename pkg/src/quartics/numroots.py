"""Double precision complex root finding.

The workhorse is the Aberth-Ehrlich simultaneous iteration, started from
circles read off the Newton polygon of the coefficient moduli (so roots of
very different sizes get sensible starting points), followed by Newton
polishing and merging of numerically multiple roots.

Polynomials are coefficient sequences in *ascending* degree order.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

__all__ = [
    "all_roots",
    "kth_roots",
    "polish",
    "polyval",
    "relative_residual",
    "exact_to_complex",
]


def _as_array(coeffs):
    c = np.asarray([complex(v) for v in coeffs], dtype=complex)
    if not np.all(np.isfinite(c)):
        raise ValueError("non-finite coefficient")
    nz = np.nonzero(c)[0]
    if nz.size == 0:
        raise ValueError("zero polynomial has no roots")
    return c[: nz[-1] + 1]


def exact_to_complex(coeffs):
    """Convert exact (possibly huge) rational coefficients to a scaled complex array.

    Everything is divided by a power of two close to the largest coefficient
    before conversion, so no intermediate float overflows.
    """
    fr = [Fraction(c) for c in coeffs]
    big = max((abs(c) for c in fr if c != 0), default=Fraction(1))
    shift = big.numerator.bit_length() - big.denominator.bit_length()
    scale = Fraction(1, 2**shift) if shift >= 0 else Fraction(2**-shift)
    out = []
    for c in fr:
        v = c * scale
        out.append(float(v) if abs(v) > Fraction(1, 2**1000) else 0.0)
    return np.asarray(out, dtype=complex)


def polyval(coeffs, x):
    """Horner evaluation of an ascending coefficient array."""
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _ratio(c, dc, z):
    """Newton ratio p(z)/p'(z), evaluated stably for |z| > 1 via the reversed polynomial."""
    n = len(c) - 1
    if abs(z) <= 1:
        p = np.polyval(c[::-1], z)
        dp = np.polyval(dc[::-1], z)
        if dp == 0:
            return complex("inf") if p != 0 else 0j
        return p / dp
    w = 1 / z
    rev = c[::-1]
    pr = np.polyval(rev[::-1], w)
    drev = np.arange(1, n + 1) * rev[1:]
    dpr = np.polyval(drev[::-1], w)
    # p(z) = z^n P(w), p'(z) = z^(n-1) (n P(w) - w P'(w))
    denom = n * pr - w * dpr
    if denom == 0:
        return complex("inf") if pr != 0 else 0j
    return z * pr / denom


def relative_residual(coeffs, z):
    """``|p(z)| / sum |c_i| |z|^i``, the backward error of an approximate root."""
    c = _as_array(coeffs)
    if abs(z) <= 1:
        num = abs(np.polyval(c[::-1], z))
        den = float(np.polyval(np.abs(c)[::-1], abs(z)))
    else:
        w = 1 / z
        rev = c[::-1]
        num = abs(np.polyval(rev[::-1], w))
        den = float(np.polyval(np.abs(rev)[::-1], abs(w)))
    return num / den if den else 0.0


def polish(coeffs, x0, tol=1e-14, maxiter=50):
    """Newton-polish an approximate root.

    Returns ``(root, converged)``.  On divergence or a vanishing derivative the
    input is returned with ``converged=False``.
    """
    c = _as_array(coeffs)
    if len(c) < 2:
        return complex(x0), False
    dc = np.arange(1, len(c)) * c[1:]
    x = complex(x0)
    start_res = relative_residual(c, x)
    for _ in range(maxiter):
        if relative_residual(c, x) == 0:
            return x, True
        step = _ratio(c, dc, x)
        if not cmath.isfinite(step):
            return complex(x0), False
        x -= step
        if abs(step) < tol * max(1.0, abs(x)):
            return x, True
    if relative_residual(c, x) <= max(start_res, 1e-12):
        return x, True
    return complex(x0), False


def _initial_guesses(c, rng):
    """Points on circles given by the upper convex hull of (i, log|c_i|)."""
    n = len(c) - 1
    logs = np.full(n + 1, -np.inf)
    nz = np.abs(c) > 0
    logs[nz] = np.log(np.abs(c[nz]))
    pts = [i for i in range(n + 1) if nz[i]]
    hull = []
    for i in pts:
        while len(hull) >= 2:
            i1, i2 = hull[-2], hull[-1]
            # drop i2 if it lies on or below the segment i1 -> i
            if (logs[i2] - logs[i1]) * (i - i1) <= (logs[i] - logs[i1]) * (i2 - i1):
                hull.pop()
            else:
                break
        hull.append(i)
    guesses = []
    offset = rng.uniform(0, 2 * np.pi)
    for a, b in zip(hull, hull[1:]):
        m = b - a
        radius = math.exp((logs[a] - logs[b]) / m)
        angles = offset + 2 * np.pi * np.arange(m) / m + rng.uniform(-0.1, 0.1, m)
        guesses.extend(radius * np.exp(1j * angles))
    return np.asarray(guesses, dtype=complex)


def _aberth(c, rng, tol=1e-15, maxiter=800):
    n = len(c) - 1
    dc = np.arange(1, n + 1) * c[1:]
    z = _initial_guesses(c, rng)
    active = np.ones(n, dtype=bool)
    for _ in range(maxiter):
        if not active.any():
            break
        for i in np.nonzero(active)[0]:
            ratio = _ratio(c, dc, z[i])
            diffs = z[i] - np.delete(z, i)
            if np.any(diffs == 0):
                z[i] += 1e-8 * (1 + abs(z[i])) * np.exp(2j * np.pi * rng.random())
                continue
            if not cmath.isfinite(ratio):
                z[i] += 1e-3 * (1 + abs(z[i]))
                continue
            s = np.sum(1 / diffs)
            w = ratio / (1 - ratio * s)
            if not cmath.isfinite(w):
                w = ratio
            z[i] -= w
            if abs(w) <= tol * max(1.0, abs(z[i])):
                active[i] = False
    return z


def _merge_clusters(c, z):
    """Replace clusters of numerically coincident roots by repeated centroids."""
    n = len(z)
    if n < 2:
        return z
    eps = np.finfo(float).eps
    radius = np.empty(n)
    for i, zi in enumerate(z):
        # Weierstrass inclusion radius, with the rounding noise of p(z_i) added
        mag = abs(zi)
        if mag <= 1:
            pv = abs(np.polyval(c[::-1], zi))
            noise = eps * float(np.polyval(np.abs(c)[::-1], mag))
            prod = abs(c[-1]) * np.prod(np.abs(zi - np.delete(z, i)))
        else:
            # divide numerator and denominator by |z|^n to stay in range
            w = 1 / zi
            pv = abs(np.polyval(c, w)) * mag
            noise = eps * float(np.polyval(np.abs(c), abs(w))) * mag
            prod = abs(c[-1]) * np.prod(np.abs(zi - np.delete(z, i)) * abs(w))
        r = n * (pv + 4 * noise) / prod if prod > 0 else np.inf
        radius[i] = max(min(r, 1e-3 * max(1.0, mag)), 1e-7 * max(1.0, mag))
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= radius[i] + radius[j]:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = z.copy()
    for members in groups.values():
        m = len(members)
        if m == 1:
            continue
        centre = np.mean(z[members])
        # a root of multiplicity m is a simple root of the (m-1)-th derivative
        d = c.copy()
        for _ in range(m - 1):
            d = np.arange(1, len(d)) * d[1:]
        refined, ok = polish(d, centre)
        if ok and abs(refined - centre) <= max(radius[members].max(), 1e-12):
            centre = refined
        out[members] = centre
    return out


def all_roots(coeffs, seed=0):
    """All complex roots of a polynomial, repeated according to multiplicity.

    ``coeffs`` are in ascending order.  ``seed`` fixes the random rotation
    of the starting circles, making results reproducible.
    """
    c = _as_array(coeffs)
    if len(c) < 2:
        raise ValueError("polynomial must have degree at least 1")
    nz = np.nonzero(c)[0]
    zeros = int(nz[0])
    c = c[zeros:]
    roots = [0j] * zeros
    if len(c) == 1:
        return roots
    c = c / np.max(np.abs(c))
    if len(c) == 2:
        return roots + [complex(-c[0] / c[1])]
    rng = np.random.default_rng(seed)
    z = _aberth(c, rng)
    polished = []
    for zi in z:
        p, ok = polish(c, zi)
        polished.append(p if ok else zi)
    z = _merge_clusters(c, np.asarray(polished))
    roots.extend(complex(v) for v in z)
    return roots


def kth_roots(value, k):
    """The ``k`` complex k-th roots of ``value``: principal root first, then counterclockwise."""
    if k < 1:
        raise ValueError("k must be positive")
    value = complex(value)
    if value == 0:
        return [0j] * k
    mod = abs(value) ** (1.0 / k)
    arg = cmath.phase(value) / k
    return [cmath.rect(mod, arg + 2 * math.pi * j / k) for j in range(k)]
