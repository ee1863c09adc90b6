"""Sampled model of algebras of continuous functions on closed X in R^N.

Closed sets are represented by finite point clouds.  Every check here is
one-sided: a sampled supremum is a lower bound for the true one, and the
properness test only inspects the samples it is given.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .expr import FunctionExpr, coercive_inverse, const, pr

__all__ = [
    "SampledDomain",
    "grid_domain",
    "spherical_generator",
    "tietze_extend",
    "is_proper_sampled",
    "ProperWitness",
    "sup_norm_sampled",
]


@dataclass(frozen=True, eq=False)
class SampledDomain:
    n: int
    points: np.ndarray
    label: str = ""

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, self.n)
        if len(np.unique(pts, axis=0)) != len(pts):
            raise ValueError("sample points must be pairwise distinct")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def to_json(self):
        return {"n": self.n, "points": self.points.tolist()}

    @classmethod
    def from_json(cls, data, label=""):
        return cls(int(data["n"]), np.asarray(data["points"], dtype=float), label)


def grid_domain(lo, hi, num, n=1):
    """Tensor grid with ``num`` points per axis over ``[lo, hi]^n``."""
    axis = np.linspace(lo, hi, num)
    mesh = np.meshgrid(*([axis] * n), indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    return SampledDomain(n, pts, f"grid [{lo}, {hi}]^{n}, {num} per axis")


def spherical_generator(index, n) -> FunctionExpr:
    """``r_0 = (1 + |x|^2)^-1`` and ``r_k = x_k (1 + |x|^2)^-1`` for ``k = 1..n``.

    These extend continuously to the one-point compactification and separate
    its points.
    """
    if not 0 <= index <= n:
        raise IndexError(f"spherical generator index {index} not in 0..{n}")
    p = const(1)
    for k in range(1, n + 1):
        p = p + pr(k) * pr(k)
    r0 = coercive_inverse(p, 1.0)
    return r0 if index == 0 else pr(index) * r0


def _distances(z, x, metric):
    diff = z - x
    if metric == "sup":
        return np.max(np.abs(diff), axis=1)
    if metric == "euclidean":
        return np.sqrt(np.sum(diff * diff, axis=1))
    raise ValueError(f"unknown metric {metric!r}")


def tietze_extend(f_on_z, domain: SampledDomain, x, metric="sup"):
    """Continuous extension of real ``f`` from the samples of Z to the point ``x``.

    Uses ``inf_z f(z) + (d(z, x) - d_Z(x)) / d_Z(x)``, which reproduces ``f`` on
    Z and stays within ``[-||f||, ||f||]``.
    """
    values = np.asarray(f_on_z, dtype=float)
    if len(domain) == 0:
        raise ValueError("cannot extend from an empty set")
    if values.shape != (len(domain),):
        raise ValueError("need exactly one value per sample of Z")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    dist = _distances(domain.points, x, metric)
    d_z = dist.min()
    if d_z == 0.0:
        return float(values[int(np.argmin(dist))])
    return float(np.min(values + (dist - d_z) / d_z))


@dataclass(frozen=True)
class ProperWitness:
    proper: bool
    box: object  # (lo, hi) arrays of the sublevel bounding box, or None if empty
    inner: tuple

    def __bool__(self):
        return self.proper


def is_proper_sampled(p_expr: FunctionExpr, domain: SampledDomain, level):
    """Sampled compactness proxy for the sublevel set ``{p <= level}``.

    The sublevel samples must stay inside the bounding box of the cloud with
    the outermost layer of coordinate values removed on every axis; a
    sublevel set reaching the edge of the samples is treated as unbounded.
    """
    vals = p_expr(domain.points)
    if np.any(np.abs(vals.imag) > 1e-12 * (1 + np.abs(vals.real))):
        raise ValueError("p must be real-valued on the samples")
    vals = vals.real
    if np.any(vals < 0):
        i = int(np.argmin(vals))
        raise ValueError(f"p is negative ({vals[i]}) at sample {domain.points[i]}")
    lo_in = []
    hi_in = []
    for k in range(domain.n):
        coords = np.unique(domain.points[:, k])
        if len(coords) < 3:
            lo_in.append(np.inf)
            hi_in.append(-np.inf)
        else:
            lo_in.append(coords[1])
            hi_in.append(coords[-2])
    lo_in = np.array(lo_in)
    hi_in = np.array(hi_in)
    sub = domain.points[vals <= level]
    if len(sub) == 0:
        return ProperWitness(True, None, (lo_in, hi_in))
    lo, hi = sub.min(axis=0), sub.max(axis=0)
    proper = bool(np.all(lo >= lo_in) and np.all(hi <= hi_in))
    return ProperWitness(proper, (lo, hi), (lo_in, hi_in))


def sup_norm_sampled(f: FunctionExpr, domain: SampledDomain):
    """Max of ``|f|`` over the samples (a lower bound for the true sup)."""
    if len(domain) == 0:
        return 0.0
    return float(np.max(np.abs(f(domain.points))))
