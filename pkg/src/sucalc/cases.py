"""Seeded random test data: commuting tuples, expressions, polynomials.

Everything is driven by :class:`~sucalc.rng.Lcg64`, so a seed fully
determines the generated cases.
"""

from fractions import Fraction

import numpy as np

from . import expr as E
from .matrix import make_commuting_tuple
from .poly import GaussianRational, Polynomial
from .rng import Lcg64

__all__ = [
    "random_diagonals",
    "random_tuple",
    "random_real_expr",
    "random_complex_expr",
    "vanishing_on",
    "random_polynomial",
    "random_sos_input",
]

# Half-integers in [-5, 5]: the nodes of a 21-point grid per axis.
GRID_VALUES = [k / 2 for k in range(-10, 11)]


def random_diagonals(rng: Lcg64, d, n, on_grid=0.7, repeat=0.25, distinct=False):
    """``n`` diagonals of length ``d`` describing ``d`` joint eigenvalues.

    Points are grid nodes with probability ``on_grid`` and uniform in
    ``[-5, 5]^n`` otherwise; with probability ``repeat`` a point duplicates an
    earlier one.  ``distinct=True`` forbids duplicates.
    """
    pts = []
    while len(pts) < d:
        if pts and not distinct and rng.random() < repeat:
            pts.append(rng.choice(pts))
            continue
        if rng.random() < on_grid:
            p = tuple(rng.choice(GRID_VALUES) for _ in range(n))
        else:
            p = tuple(rng.uniform(-5.0, 5.0) for _ in range(n))
        if distinct and p in pts:
            continue
        pts.append(p)
    return [[p[k] for p in pts] for k in range(n)]


def random_tuple(rng: Lcg64, d_max=16, n_max=3, d_min=1, **kwargs):
    d = rng.randint(d_min, d_max)
    n = rng.randint(1, n_max)
    diagonals = random_diagonals(rng, d, n, **kwargs)
    return make_commuting_tuple(rng.next_u64(), diagonals), diagonals


def _const(rng, complex_ok):
    re = round(rng.uniform(-2.0, 2.0), 3)
    if complex_ok and rng.random() < 0.5:
        return E.const(complex(re, round(rng.uniform(-2.0, 2.0), 3)))
    return E.const(re)


def random_real_expr(rng: Lcg64, n, depth=3):
    """Random real-valued expression, evaluable everywhere on R^n."""
    if depth <= 0 or rng.random() < 0.25:
        return E.pr(rng.randint(1, n)) if rng.random() < 0.7 else _const(rng, False)
    kind = rng.randint(0, 10)
    a = random_real_expr(rng, n, depth - 1)
    if kind == 0:
        return a + random_real_expr(rng, n, depth - 1)
    if kind == 1:
        return a - random_real_expr(rng, n, depth - 1)
    if kind == 2:
        return a * random_real_expr(rng, n, depth - 1)
    if kind == 3:
        return E.absval(a)
    if kind == 4:
        return E.pos_part(a)
    if kind == 5:
        return E.neg_part(a)
    if kind == 6:
        return E.max2(a, random_real_expr(rng, n, depth - 1))
    if kind == 7:
        return E.min2(a, random_real_expr(rng, n, depth - 1))
    if kind == 8:
        return E.sqrt_pos(E.absval(a))
    if kind == 9:
        return E.coercive_inverse(a * a + 1, 1.0)
    return E.gamma_rho(a, rng.uniform(0.5, 4.0))


def random_complex_expr(rng: Lcg64, n, depth=3):
    """Random complex-valued expression built on top of real ones."""
    if depth <= 0 or rng.random() < 0.25:
        return random_real_expr(rng, n, 1) if rng.random() < 0.5 else _const(rng, True)
    kind = rng.randint(0, 5)
    a = random_complex_expr(rng, n, depth - 1)
    if kind == 0:
        return a + random_complex_expr(rng, n, depth - 1)
    if kind == 1:
        return a * random_complex_expr(rng, n, depth - 1)
    if kind == 2:
        return a.conj()
    if kind == 3:
        return E.gamma_rho(a, rng.uniform(0.5, 4.0))
    if kind == 4:
        return E.absval(a)
    return a * E.const(1j) + random_real_expr(rng, n, depth - 1)


def vanishing_on(points):
    """Continuous function zero exactly at the given points: min sup-distance."""
    pts = np.asarray(points, dtype=float)
    n = pts.shape[1]
    out = None
    for x in pts:
        dist = E.absval(E.pr(1) - float(x[0]))
        for k in range(1, n):
            dist = E.max2(dist, E.absval(E.pr(k + 1) - float(x[k])))
        out = dist if out is None else E.min2(out, dist)
    return out


def random_polynomial(rng: Lcg64, num_vars, max_degree, n_terms=6, den=4, complex_ok=False):
    terms = {}
    for _ in range(n_terms):
        while True:
            exps = tuple(rng.randint(0, max_degree) for _ in range(num_vars))
            if sum(exps) <= max_degree:
                break
        c = Fraction(rng.randint(-2 * den, 2 * den), den)
        if complex_ok and rng.random() < 0.3:
            terms[exps] = GaussianRational(c, Fraction(rng.randint(-den, den), den))
        else:
            terms[exps] = terms.get(exps, 0) + c
    return Polynomial(num_vars, terms)


def random_sos_input(rng: Lcg64, n, squares=2, den=4):
    """Polynomial in ``(s, t_1..t_n)`` that is pointwise nonnegative on the curve
    ``s = (1 + |x|^2)^-1``: sums of squares in ``t`` (degree <= 4) plus
    ``s``- and ``s^2``-multiples of squares."""
    nv = n + 1
    s = Polynomial.variable(nv, 0)
    total = Polynomial(nv)

    def square_of_random(max_deg):
        q = Polynomial(nv)
        for _ in range(3):
            while True:
                exps = (0,) + tuple(rng.randint(0, max_deg) for _ in range(n))
                if sum(exps) <= max_deg:
                    break
            q = q + Polynomial(nv, {exps: Fraction(rng.randint(-2 * den, 2 * den), den)})
        return q * q

    for _ in range(squares):
        total = total + square_of_random(2)
    k = rng.randint(0, 2)
    if k:
        total = total + s**k * square_of_random(1)
    if rng.random() < 0.5:
        total = total + Polynomial.constant(nv, Fraction(rng.randint(0, den), den))
    return total
