"""Commuting tuples of Hermitian matrices as a concrete Su*-algebra backend.

The joint eigenbasis comes from the in-house Jacobi solver applied to a
random positive combination of the generators.  Norms, coercivity and the
resolvent test use numpy's LAPACK eigensolvers instead, so the two routes
can be checked against each other.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .expr import FunctionExpr
from .jacobi import jacobi_eigh
from .rng import Lcg64

__all__ = [
    "NotHermitianError",
    "NonCommutingError",
    "DiagonalizationError",
    "hermitian",
    "CommutingTuple",
    "JointSpectrum",
    "random_unitary",
    "make_commuting_tuple",
    "joint_diagonalize",
    "joint_spectrum",
    "apply_function",
    "rational_evaluate",
    "sup_norm",
    "uniform_distance",
    "min_eigenvalue",
    "is_coercive",
    "resolvent_test",
    "bicommutant_dimension",
]

HERMITIAN_TOL = 1e-12
COMMUTATOR_TOL = 1e-10
RESIDUAL_TOL = 1e-8
CLUSTERING_TOL = 1e-7
MAX_RESAMPLES = 10


class NotHermitianError(ValueError):
    pass


class NonCommutingError(ValueError):
    def __init__(self, i, j, norm):
        super().__init__(f"generators {i + 1} and {j + 1} do not commute (commutator norm {norm:.3e})")
        self.pair = (i, j)
        self.norm = norm


class DiagonalizationError(RuntimeError):
    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


def hermitian(a, tol=HERMITIAN_TOL):
    """Validate and symmetrize a complex square matrix."""
    a = np.array(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotHermitianError(f"expected a square matrix, got shape {a.shape}")
    scale = np.max(np.abs(a)) if a.size else 0.0
    dev = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if dev > tol * scale:
        raise NotHermitianError(f"matrix deviates from its adjoint by {dev:.3e}")
    return 0.5 * (a + a.conj().T)


def sup_norm(a):
    """Largest singular value."""
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def uniform_distance(a, b):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return min(sup_norm(a - b), 1.0)


def min_eigenvalue(a):
    return float(np.linalg.eigvalsh(np.asarray(a, dtype=complex))[0])


def is_coercive(a, delta=1e-10, scale=None):
    """Smallest eigenvalue exceeds ``delta * scale``.

    ``scale`` defaults to the norm of ``a``; pass ``scale=1`` for an
    absolute threshold.
    """
    a = hermitian(a, tol=1e-9)
    if scale is None:
        scale = sup_norm(a)
    return min_eigenvalue(a) > delta * scale


def resolvent_test(a, lam, delta=1e-10):
    """Whether ``lam*I - a`` is invertible, i.e. ``lam`` is off the spectrum."""
    a = hermitian(a, tol=1e-9)
    scale = max(1.0, sup_norm(a), abs(lam))
    eig = np.linalg.eigvalsh(lam * np.eye(a.shape[0]) - a)
    return float(np.min(np.abs(eig))) > delta * scale


@dataclass(frozen=True)
class JointSpectrum:
    """Finite joint spectrum: distinct points in R^N with multiplicities."""

    points: tuple
    multiplicities: tuple
    clustering_tol: float = CLUSTERING_TOL

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(zip(self.points, self.multiplicities))

    def as_array(self):
        return np.array(self.points, dtype=float).reshape(len(self.points), -1)

    def contains(self, x, tol=None):
        tol = self.clustering_tol if tol is None else tol
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if not self.points:
            return False
        return bool(np.min(np.max(np.abs(self.as_array() - x), axis=1)) <= tol)

    def to_json(self):
        return [[list(map(float, p)), int(m)] for p, m in self]


class CommutingTuple:
    """Pairwise commuting Hermitian ``d x d`` matrices ``a_1..a_N``."""

    def __init__(self, matrices, commutator_tol=COMMUTATOR_TOL):
        mats = [hermitian(m) for m in matrices]
        if not mats:
            raise ValueError("need at least one generator")
        d = mats[0].shape[0]
        if any(m.shape != (d, d) for m in mats):
            raise ValueError("generators must share one dimension")
        norms = [sup_norm(m) for m in mats]
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                if norms[i] == 0.0 or norms[j] == 0.0:
                    continue
                comm = np.linalg.norm(mats[i] @ mats[j] - mats[j] @ mats[i])
                if comm > commutator_tol * norms[i] * norms[j]:
                    raise NonCommutingError(i, j, comm)
        self.matrices = tuple(mats)
        for m in self.matrices:
            m.setflags(write=False)
        self.norms = tuple(norms)
        self._cache = {}
        self._lock = threading.Lock()

    @property
    def n(self):
        return len(self.matrices)

    @property
    def dim(self):
        return self.matrices[0].shape[0]

    def __getitem__(self, k):
        return self.matrices[k]

    def diagonalization(self, seed=0):
        """Cached ``(U, joint_values)``; at most one value per seed is ever stored."""
        with self._lock:
            if seed not in self._cache:
                self._cache[seed] = joint_diagonalize(self, seed)
            return self._cache[seed]

    def to_json(self):
        return {"n": self.n, "matrices": [matrix_to_json(m) for m in self.matrices]}

    @classmethod
    def from_json(cls, data):
        mats = [matrix_from_json(m) for m in data["matrices"]]
        if "n" in data and int(data["n"]) != len(mats):
            raise ValueError(f"tuple declares n={data['n']} but has {len(mats)} matrices")
        return cls(mats)


def matrix_to_json(a):
    a = np.asarray(a, dtype=complex)
    return {
        "dim": int(a.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in a],
    }


def matrix_from_json(data):
    a = np.array([[complex(re, im) for re, im in row] for row in data["entries"]])
    a = a.reshape(len(data["entries"]), -1)
    if a.shape != (int(data["dim"]), int(data["dim"])):
        raise ValueError(f"matrix entries do not match dim={data['dim']}")
    return a


def random_unitary(rng: Lcg64, d):
    """QR of a complex Gaussian matrix with the phase of R's diagonal removed."""
    z = np.array([[complex(rng.normal(), rng.normal()) for _ in range(d)] for _ in range(d)])
    z /= np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    phases = diag / np.where(np.abs(diag) == 0, 1.0, np.abs(diag))
    return q * phases


def make_commuting_tuple(unitary_seed, diagonals):
    """``a_k = U diag(diagonals[k]) U^*`` with ``U`` random from the seed.

    ``unitary_seed=None`` gives ``U = I``.
    """
    diagonals = [np.asarray(d, dtype=float) for d in diagonals]
    if not diagonals:
        raise ValueError("need at least one diagonal")
    d = len(diagonals[0])
    if any(len(x) != d for x in diagonals):
        raise ValueError("diagonal lists must share one length")
    if unitary_seed is None:
        u = np.eye(d, dtype=complex)
    else:
        u = random_unitary(Lcg64(unitary_seed), d)
    return CommutingTuple([u @ np.diag(x) @ u.conj().T for x in diagonals])


def joint_diagonalize(t: CommutingTuple, seed=0):
    """Common eigenbasis of the tuple.

    Diagonalizes ``sum c_k a_k`` with ``c`` uniform in ``[1, 2]^N`` and checks
    that every generator becomes diagonal in that basis; a bad draw (two
    distinct joint eigenvalues mapped to nearly the same combined value) is
    retried with fresh coefficients.

    Returns ``(U, joint_values)`` where ``joint_values[j]`` is the point of
    R^N belonging to column ``j`` of ``U``.
    """
    rng = Lcg64(seed)
    worst = np.inf
    for _ in range(MAX_RESAMPLES):
        c = [rng.uniform(1.0, 2.0) for _ in range(t.n)]
        combo = sum(ck * a for ck, a in zip(c, t.matrices))
        _, u = jacobi_eigh(combo, tol=1e-13, max_sweeps=100)
        values = np.empty((t.dim, t.n))
        residual = 0.0
        for k, a in enumerate(t.matrices):
            b = u.conj().T @ a @ u
            off = np.linalg.norm(b - np.diag(np.diag(b)))
            scale = t.norms[k]
            residual = max(residual, off / scale if scale else off)
            values[:, k] = np.diag(b).real
        if residual <= RESIDUAL_TOL:
            return u, values
        worst = min(worst, residual)
    raise DiagonalizationError(f"no separating combination after {MAX_RESAMPLES} draws", worst)


def _cluster(values, tol):
    """Single-linkage clusters of rows in the max-norm."""
    m = values.shape[0]
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if np.max(np.abs(values[i] - values[j])) <= tol:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def joint_spectrum(t: CommutingTuple, clustering_tol=CLUSTERING_TOL, seed=0) -> JointSpectrum:
    _, values = t.diagonalization(seed)
    groups = _cluster(values, clustering_tol)
    pts = sorted(
        (tuple(float(v) for v in values[g].mean(axis=0)), len(g)) for g in groups
    )
    return JointSpectrum(
        tuple(p for p, _ in pts), tuple(m for _, m in pts), clustering_tol
    )


def apply_function(t: CommutingTuple, f: FunctionExpr, seed=0):
    """``U diag(f(x_j)) U^*`` over the joint eigenvalues ``x_j``."""
    u, values = t.diagonalization(seed)
    fx = f(values)
    out = (u * fx) @ u.conj().T
    if np.all(np.abs(fx.imag) <= 1e-12 * (1.0 + np.abs(fx.real))):
        out = 0.5 * (out + out.conj().T)
    return out


def rational_evaluate(t: CommutingTuple, pi):
    """``pi((I + sum a_n^2)^-1, a_1, .., a_N)`` by dense matrix arithmetic.

    ``pi`` is a polynomial in ``(s, t_1..t_N)``.  This path deliberately does
    not use the joint eigenbasis.
    """
    if pi.num_vars != t.n + 1:
        raise ValueError(f"pi has {pi.num_vars} variables, expected {t.n + 1}")
    d = t.dim
    eye = np.eye(d, dtype=complex)
    p = eye + sum(a @ a for a in t.matrices)
    gens = [np.linalg.inv(p)] + list(t.matrices)
    powers = [{0: eye, 1: g} for g in gens]

    def power(i, e):
        table = powers[i]
        if e not in table:
            table[e] = power(i, e - 1) @ gens[i]
        return table[e]

    out = np.zeros((d, d), dtype=complex)
    for exps in sorted(pi.terms):
        term = complex(pi.terms[exps]) * eye
        for i, e in enumerate(exps):
            if e:
                term = term @ power(i, e)
        out += term
    if pi.is_hermitian():
        out = 0.5 * (out + out.conj().T)
    return out


def bicommutant_dimension(t: CommutingTuple, rel_tol=1e-9):
    """Dimension of the unital algebra generated by the tuple.

    For a commuting Hermitian set this algebra is the bicommutant, and its
    dimension is the number of distinct joint eigenvalues.  Computed without
    any eigen-decomposition: products of an orthonormal basis (Frobenius
    inner product) with the generators are orthogonalized until closure.
    """
    d = t.dim
    scale = max([1.0] + [sup_norm(a) for a in t.matrices])
    basis = [np.eye(d, dtype=complex).ravel() / np.sqrt(d)]
    frontier = list(basis)
    while frontier:
        fresh = []
        for b in frontier:
            for a in t.matrices:
                v = (a @ b.reshape(d, d)).ravel()
                for _ in range(2):  # twice is enough for Gram-Schmidt
                    for q in basis:
                        v = v - np.vdot(q, v) * q
                norm = np.linalg.norm(v)
                if norm > rel_tol * scale:
                    v = v / norm
                    basis.append(v)
                    fresh.append(v)
        frontier = fresh
    return len(basis)
