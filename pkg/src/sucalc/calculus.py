"""The continuous calculus of a commuting Hermitian tuple, with self-checks.

``gamma`` realizes the calculus on the finite joint spectrum.  The remaining
functions check its structural properties (homomorphism laws, order
embedding, kernel description, agreement with the rational calculus,
spectral mapping) and collect residuals in a :class:`CalculusReport`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .expr import FunctionExpr, absval, coercive_inverse, const, max2, poly_to_expr, pos_part, pr
from .functions import spherical_generator
from .matrix import (
    CommutingTuple,
    apply_function,
    bicommutant_dimension,
    hermitian,
    is_coercive,
    joint_spectrum,
    min_eigenvalue,
    rational_evaluate,
    sup_norm,
)

__all__ = [
    "Check",
    "CalculusReport",
    "QuotientFormulaError",
    "SpectralMappingError",
    "NonNormalError",
    "spectrum",
    "spectrum_scan",
    "axis_grid",
    "gamma",
    "spec_complex",
    "spectral_map",
    "hausdorff_distance",
    "homomorphism_check",
    "order_embedding_check",
    "nullstellensatz_check",
    "pipeline_consistency",
    "coercive_inverse_check",
    "representation_check",
    "interpolating_basis",
]

DEFAULT_TOL = 1e-8
# Relative size below which the real or imaginary part of a normal matrix is round-off.
NEGLIGIBLE_PART = 1e-12


class QuotientFormulaError(ArithmeticError):
    pass


class SpectralMappingError(ArithmeticError):
    pass


class NonNormalError(ValueError):
    pass


@dataclass
class Check:
    name: str
    anchor: str
    passed: bool
    residual: float = 0.0
    witness: object = None

    def to_json(self):
        return {
            "check": self.name,
            "anchor": self.anchor,
            "pass": bool(self.passed),
            "residual": float(self.residual),
            "witness": self.witness,
        }


@dataclass
class CalculusReport:
    checks: list = field(default_factory=list)
    tolerances: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, name, anchor, passed, residual=0.0, witness=None):
        self.checks.append(Check(name, anchor, bool(passed), float(residual), witness))

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_json(self):
        return {
            "checks": [c.to_json() for c in self.checks],
            "tolerances": dict(self.tolerances),
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


# ---------------------------------------------------------------------------
# spectrum

def spectrum(t: CommutingTuple, clustering_tol=1e-7):
    return joint_spectrum(t, clustering_tol)


def distance_square_sum(t: CommutingTuple, x):
    """``sum_n (x_n I - a_n)^2``."""
    eye = np.eye(t.dim)
    return sum((xn * eye - a) @ (xn * eye - a) for xn, a in zip(x, t.matrices))


def spectrum_scan(t: CommutingTuple, grid, delta=1e-10):
    """Grid points at which ``sum (x_n I - a_n)^2`` fails to be coercive.

    The threshold is absolute: ``x`` is reported iff the smallest eigenvalue,
    which equals the squared Euclidean distance from ``x`` to the joint
    spectrum, is at most ``delta``.  Eigenvalues come from LAPACK, not from
    the Jacobi oracle behind :func:`spectrum`.
    """
    grid = np.asarray(grid, dtype=float).reshape(-1, t.n)
    if len(grid) == 0:
        return grid
    gens = np.array(t.matrices)
    squares = sum(a @ a for a in t.matrices)
    hits = []
    for start in range(0, len(grid), 2048):
        x = grid[start:start + 2048]
        # (x_n I - a_n)^2 summed: |x|^2 I - 2 sum x_n a_n + sum a_n^2
        b = (np.einsum("m,ij->mij", np.sum(x * x, axis=1), np.eye(t.dim))
             - 2.0 * np.einsum("mn,nij->mij", x, gens) + squares)
        lam = np.linalg.eigvalsh(0.5 * (b + np.conj(np.swapaxes(b, 1, 2))))[:, 0]
        hits.extend(x[lam <= delta])
    return np.array(hits, dtype=float).reshape(-1, t.n)


def axis_grid(lo, hi, num, n):
    """All points of the tensor grid with ``num`` nodes per axis on ``[lo, hi]^n``."""
    axis = np.linspace(lo, hi, num)
    mesh = np.meshgrid(*([axis] * n), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


# ---------------------------------------------------------------------------
# the calculus

def _bounded_parts(f: FunctionExpr, n):
    """``(f (f* f + p)^-1, (f* f + p)^-1)`` with ``p = 1 + |x|^2``."""
    q = f.conj() * f + const(1)
    for k in range(1, n + 1):
        q = q + pr(k) * pr(k)
    inv = coercive_inverse(q, 1.0)
    return f * inv, inv


def gamma(t: CommutingTuple, f: FunctionExpr, tol=DEFAULT_TOL, check_quotient=True):
    """Image of ``f`` restricted to the joint spectrum.

    Raises :class:`~sucalc.expr.DomainViolation` if ``f`` cannot be evaluated
    at some spectrum point.  With ``check_quotient`` the result is also
    validated against the quotient of the two bounded functions
    ``f (f* f + p)^-1`` and ``(f* f + p)^-1``.
    """
    result = apply_function(t, f)
    if check_quotient:
        num, den = _bounded_parts(f, t.n)
        lhs = result @ apply_function(t, den)
        rhs = apply_function(t, num)
        residual = sup_norm(lhs - rhs)
        if residual > tol * max(1.0, sup_norm(result)):
            raise QuotientFormulaError(f"quotient formula residual {residual:.3e}")
    return result


def spec_complex(a, normality_tol=1e-10, clustering_tol=1e-7):
    """Spectrum of a normal matrix via the joint spectrum of its real and imaginary parts."""
    a = np.asarray(a, dtype=complex)
    norm = sup_norm(a)
    defect = sup_norm(a @ a.conj().T - a.conj().T @ a)
    if defect > normality_tol * max(norm * norm, 1e-300):
        raise NonNormalError(f"matrix is not normal (defect {defect:.3e})")
    re_part = hermitian(0.5 * (a + a.conj().T), tol=1e-9)
    im_part = hermitian(-0.5j * (a - a.conj().T), tol=1e-9)
    # A part at round-off level (e.g. Im of a real result) has no meaningful
    # eigenbasis of its own; treat it as exactly zero.
    floor = NEGLIGIBLE_PART * norm
    if sup_norm(re_part) <= floor:
        re_part = np.zeros_like(re_part)
    if sup_norm(im_part) <= floor:
        im_part = np.zeros_like(im_part)
    pts = joint_spectrum(CommutingTuple([re_part, im_part]), clustering_tol).points
    return sorted((complex(x, y) for x, y in pts), key=lambda z: (z.real, z.imag))


def hausdorff_distance(a, b):
    a = np.asarray(list(a), dtype=complex)
    b = np.asarray(list(b), dtype=complex)
    if len(a) == 0 or len(b) == 0:
        return 0.0 if len(a) == len(b) else np.inf
    dist = np.abs(a[:, None] - b[None, :])
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))


def spectral_map(t: CommutingTuple, f: FunctionExpr, tol=1e-7):
    """``{f(x) : x in spec}``, checked against the spectrum of ``gamma(t, f)``."""
    pts = spectrum(t).as_array()
    image = sorted(set(complex(v) for v in f(pts)), key=lambda z: (z.real, z.imag))
    observed = spec_complex(gamma(t, f))
    dist = hausdorff_distance(image, observed)
    if dist > tol:
        raise SpectralMappingError(f"Hausdorff distance {dist:.3e} exceeds {tol}")
    return image


# ---------------------------------------------------------------------------
# property checks

def homomorphism_check(t, f, g, tol=DEFAULT_TOL, gamma_fn=None):
    """Residuals of additivity, multiplicativity, *-compatibility and unitality."""
    gamma_fn = gamma_fn or (lambda tt, h: gamma(tt, h, check_quotient=False))
    gf, gg = gamma_fn(t, f), gamma_fn(t, g)
    nf, ng = sup_norm(gf), sup_norm(gg)
    report = CalculusReport(tolerances={"tol": tol})
    r = sup_norm(gamma_fn(t, f + g) - gf - gg)
    report.add("add", "unital *-homomorphism: additive", r <= tol * (1 + nf + ng), r)
    r = sup_norm(gamma_fn(t, f * g) - gf @ gg)
    report.add("mul", "unital *-homomorphism: multiplicative", r <= tol * (1 + nf * ng), r)
    r = sup_norm(gamma_fn(t, f.conj()) - gf.conj().T)
    report.add("star", "unital *-homomorphism: commutes with adjoint", r <= tol * (1 + nf), r)
    r = sup_norm(gamma_fn(t, const(1)) - np.eye(t.dim))
    report.add("unit", "unital *-homomorphism: unit to unit", r <= tol, r)
    return report


def _real_values(f, pts):
    vals = f(pts)
    if np.any(np.abs(vals.imag) > 1e-10 * (1 + np.abs(vals.real))):
        raise ValueError("function is not real-valued on the spectrum")
    return vals.real


def order_embedding_check(t, f, tol=DEFAULT_TOL, pos_tol=1e-10):
    """Positivity of ``gamma(f)`` iff ``f >= 0`` on the spectrum; and then ``gamma(f) = gamma(f_+)``."""
    pts = spectrum(t).as_array()
    vals = _real_values(f, pts)
    gf = gamma(t, f, check_quotient=False)
    scale = max(1.0, sup_norm(gf))
    lam = min_eigenvalue(hermitian(gf, tol=1e-9))
    psd = lam >= -tol * scale
    nonneg = float(vals.min()) >= -tol * scale
    report = CalculusReport(tolerances={"tol": tol, "pos_tol": pos_tol})
    report.add("order", "order embedding: positive iff pointwise positive on spectrum",
               psd == nonneg, max(-lam, 0.0),
               {"min_eigenvalue": lam, "min_value": float(vals.min())})
    if psd:
        r = sup_norm(gf - gamma(t, pos_part(f), check_quotient=False))
        report.add("positive_part", "positive morphisms ignore the negative part",
                   r <= pos_tol * scale, r)
    return report


def nullstellensatz_check(t, f, tol=DEFAULT_TOL):
    """``gamma(f) = 0`` iff ``f`` vanishes on the joint spectrum."""
    pts = spectrum(t).as_array()
    vmax = float(np.max(np.abs(f(pts))))
    gnorm = sup_norm(gamma(t, f, check_quotient=False))
    report = CalculusReport(tolerances={"tol": tol})
    report.add("kernel", "kernel is the vanishing ideal of the spectrum",
               (gnorm <= tol) == (vmax <= tol), abs(gnorm - vmax),
               {"norm": gnorm, "max_abs_on_spectrum": vmax})
    return report


def pipeline_consistency(t, pi, cert=None, tol=DEFAULT_TOL, psd_tol=1e-9):
    """Rational calculus vs ``gamma`` of ``pi`` with ``s -> (1 + |x|^2)^-1``.

    With a certificate, it is verified first and the matrix value of ``pi``
    is then required to be positive semidefinite.
    """
    from .polya import verify_certificate

    direct = rational_evaluate(t, pi)
    via_gamma = gamma(t, poly_to_expr(pi, spherical_generator(0, t.n)))
    scale = max(1.0, sup_norm(direct))
    report = CalculusReport(tolerances={"tol": tol, "psd_tol": psd_tol})
    r = sup_norm(direct - via_gamma)
    report.add("rational_vs_gamma", "continuous calculus extends the rational calculus",
               r <= tol * scale, r)
    if cert is not None:
        verdict = verify_certificate(cert, pi)
        if not verdict.passed:
            raise ValueError(f"certificate does not verify for this polynomial:\n{verdict}")
        lam = min_eigenvalue(hermitian(direct, tol=1e-9))
        report.add("certified_positive", "certified rational expression is positive",
                   lam >= -psd_tol * scale, max(-lam, 0.0), {"min_eigenvalue": lam})
    return report


def coercive_inverse_check(t, f, eps, tol=DEFAULT_TOL):
    """For ``f >= eps > 0`` on the spectrum: ``gamma(f)`` coercive, ``gamma(1/f) = gamma(f)^-1``."""
    gf = gamma(t, f, check_quotient=False)
    ginv = gamma(t, coercive_inverse(f, eps), check_quotient=False)
    report = CalculusReport(tolerances={"tol": tol})
    report.add("coercive", "coercive functions map to coercive elements",
               is_coercive(gf, delta=0.5 * eps, scale=1.0), min_eigenvalue(gf))
    inv = np.linalg.inv(gf)
    r = sup_norm(ginv - inv)
    report.add("inverse", "image of the inverse is the inverse of the image",
               r <= tol * max(1.0, sup_norm(inv)), r)
    return report


def interpolating_basis(points):
    """Continuous bumps ``phi_j`` with ``phi_j(x_k) = [j == k]`` on the given points."""
    pts = np.asarray(points, dtype=float)
    m, n = pts.shape
    if m == 1:
        return [const(1)]
    sep = min(
        np.max(np.abs(pts[i] - pts[j])) for i in range(m) for j in range(i + 1, m)
    )
    basis = []
    for x in pts:
        dist = absval(pr(1) - float(x[0]))
        for k in range(1, n):
            dist = max2(dist, absval(pr(k + 1) - float(x[k])))
        basis.append(pos_part(1 - dist * (1.0 / sep)))
    return basis


def representation_check(t, rank_tol=1e-8):
    """Images of an interpolating basis span a space whose dimension is the
    number of spectrum points and equals the bicommutant dimension; every
    image commutes with the generators."""
    spec = spectrum(t)
    images = [gamma(t, phi, check_quotient=False) for phi in interpolating_basis(spec.as_array())]
    stack = np.array([m.ravel() for m in images])
    sv = np.linalg.svd(stack, compute_uv=False)
    rank = int(np.sum(sv > rank_tol * max(1.0, sv[0])))
    report = CalculusReport(tolerances={"rank_tol": rank_tol})
    dim = bicommutant_dimension(t)
    report.add("span", "calculus is onto the bicommutant",
               rank == dim == len(spec), abs(rank - dim),
               {"rank": rank, "bicommutant": dim, "points": len(spec)})
    comm = max(
        sup_norm(m @ a - a @ m) / max(1.0, sup_norm(a)) for m in images for a in t.matrices
    )
    report.add("bicommutant", "image lies in the bicommutant of the generators",
               comm <= 1e-8, comm)
    return report
