"""Seeded property suites over random commuting tuples.

Each suite draws its cases from its own child generator, so suites can be
run individually and still reproduce the exact cases of a full run.
"""

from __future__ import annotations

import numpy as np

from . import calculus as C
from .cases import (
    random_complex_expr,
    random_diagonals,
    random_polynomial,
    random_real_expr,
    random_tuple,
    vanishing_on,
)
from .matrix import DiagonalizationError, joint_spectrum, make_commuting_tuple, resolvent_test, sup_norm
from .rng import Lcg64

__all__ = ["SUITES", "SuiteResult", "run_suite", "run_all"]


class SuiteResult:
    def __init__(self, name, cases=0, failures=None, max_residual=0.0):
        self.name = name
        self.cases = cases
        self.failures = failures or []
        self.max_residual = max_residual

    @property
    def passed(self):
        return self.cases - len(self.failures)

    @property
    def ok(self):
        return not self.failures

    def record(self, ok, residual=0.0, witness=None):
        self.cases += 1
        self.max_residual = max(self.max_residual, float(residual))
        if not ok:
            self.failures.append(witness)

    def to_json(self):
        return {
            "suite": self.name,
            "cases": self.cases,
            "passed": self.passed,
            "failed": len(self.failures),
            "max_residual": float(f"{self.max_residual:.17g}"),
        }


def _match_up_to_permutation(values, diagonals, tol):
    """Greedy matching of computed joint eigenvalues to constructed ones."""
    want = [tuple(col) for col in np.array(diagonals, dtype=float).T]
    got = [tuple(row) for row in values]
    worst = 0.0
    remaining = list(want)
    for g in got:
        dists = [max(abs(a - b) for a, b in zip(g, w)) for w in remaining]
        j = int(np.argmin(dists))
        worst = max(worst, dists[j])
        remaining.pop(j)
    return worst <= tol, worst


def suite_oracle(rng, cases):
    """Joint spectrum matches the construction; grid scan agrees with it."""
    res = SuiteResult("oracle")
    delta = 1e-10
    for i in range(cases):
        t, diags = random_tuple(rng, d_max=16, n_max=3)
        _, values = t.diagonalization()
        ok, worst = _match_up_to_permutation(values, diags, 1e-8)
        spec = joint_spectrum(t)
        grid = C.axis_grid(-5.0, 5.0, 21, t.n)
        hits = C.spectrum_scan(t, grid, delta)
        hit_set = {tuple(x) for x in hits}
        spec_pts = spec.as_array()
        dist = np.sqrt(np.min(np.sum((grid[:, None, :] - spec_pts[None, :, :]) ** 2, axis=2), axis=1))
        disagree = 0
        for x, dx in zip(grid, dist):
            in_scan = tuple(x) in hit_set
            if dx > np.sqrt(delta):
                disagree += in_scan
            elif spec.contains(x):
                disagree += not in_scan
        res.record(ok and disagree == 0, worst, {"case": i, "worst": worst, "disagreements": disagree})
    return res


def suite_homomorphism(rng, cases):
    res = SuiteResult("homomorphism")
    for i in range(cases):
        t, _ = random_tuple(rng, d_max=8, n_max=3)
        f = random_complex_expr(rng, t.n)
        g = random_complex_expr(rng, t.n)
        report = C.homomorphism_check(t, f, g)
        worst = max(c.residual for c in report.checks)
        res.record(report.passed, worst, {"case": i, "f": str(f), "g": str(g)})
    return res


def suite_order(rng, cases):
    res = SuiteResult("order_embedding")
    for i in range(cases):
        t, _ = random_tuple(rng, d_max=8, n_max=3)
        f = random_real_expr(rng, t.n)
        shift = rng.uniform(-3.0, 3.0)
        if rng.random() < 0.5:
            f = f * f + shift
        report = C.order_embedding_check(t, f)
        residual = report["positive_part"].residual if len(report.checks) > 1 else 0.0
        res.record(report.passed, residual, {"case": i, "f": str(f)})
    return res


def suite_nullstellensatz(rng, cases):
    res = SuiteResult("nullstellensatz")
    for i in range(cases):
        t, _ = random_tuple(rng, d_max=8, n_max=3)
        f = random_real_expr(rng, t.n)
        mode = rng.randint(0, 2)
        if mode == 0:
            f = f * vanishing_on(joint_spectrum(t).as_array())
        elif mode == 1:
            f = f * vanishing_on(joint_spectrum(t).as_array()) + rng.uniform(0.1, 1.0)
        report = C.nullstellensatz_check(t, f)
        res.record(report.passed, 0.0, {"case": i, "f": str(f)})
    return res


def suite_pipeline(rng, cases):
    res = SuiteResult("pipeline")
    for i in range(cases):
        t, _ = random_tuple(rng, d_max=8, n_max=3)
        pi = random_polynomial(rng, t.n + 1, 4, complex_ok=rng.random() < 0.3)
        report = C.pipeline_consistency(t, pi)
        res.record(report.passed, report["rational_vs_gamma"].residual, {"case": i})
    return res


def suite_coercive_inverse(rng, cases):
    res = SuiteResult("coercive_inverse")
    for i in range(cases):
        t, _ = random_tuple(rng, d_max=8, n_max=3)
        h = random_real_expr(rng, t.n)
        eps = rng.uniform(0.1, 1.0)
        report = C.coercive_inverse_check(t, h * h + eps, eps)
        res.record(report.passed, report["inverse"].residual, {"case": i})
    return res


def suite_spectral_map(rng, cases):
    res = SuiteResult("spectral_map")
    for i in range(cases):
        t, _ = random_tuple(rng, d_max=8, n_max=3)
        f = random_complex_expr(rng, t.n)
        try:
            image = C.spectral_map(t, f)
            dist = C.hausdorff_distance(image, C.spec_complex(C.gamma(t, f)))
            res.record(True, dist)
        except (C.SpectralMappingError, C.NonNormalError, DiagonalizationError) as exc:
            res.record(False, 0.0, {"case": i, "f": str(f), "error": str(exc)})
    return res


def suite_representation(rng, cases):
    res = SuiteResult("representation")
    for i in range(cases):
        d = rng.randint(1, 8)
        n = rng.randint(1, 3)
        diags = random_diagonals(rng, d, n, distinct=True)
        t = make_commuting_tuple(rng.next_u64(), diags)
        report = C.representation_check(t)
        res.record(report.passed, report["bicommutant"].residual, {"case": i})
    return res


def suite_resolvent(rng, cases):
    res = SuiteResult("resolvent")
    for i in range(cases):
        t, _ = random_tuple(rng, d_max=8, n_max=1)
        spec = joint_spectrum(t)
        if rng.random() < 0.5:
            lam = rng.choice(spec.points)[0]
        else:
            lam = rng.uniform(-6.0, 6.0)
        ok = resolvent_test(t[0], lam) == (not spec.contains([lam]))
        res.record(ok, 0.0, {"case": i, "lambda": lam})
    return res


def suite_ordered_algebra(rng, cases):
    """d*(b - a)d stays positive for a <= b."""
    res = SuiteResult("ordered_algebra")
    for i in range(cases):
        d = rng.randint(1, 8)
        x = np.array([[complex(rng.normal(), rng.normal()) for _ in range(d)] for _ in range(d)])
        y = np.array([[complex(rng.normal(), rng.normal()) for _ in range(d)] for _ in range(d)])
        a = x @ x.conj().T
        b = a + y @ y.conj().T
        z = np.array([[complex(rng.normal(), rng.normal()) for _ in range(d)] for _ in range(d)])
        m = z.conj().T @ (b - a) @ z
        lam = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0])
        res.record(lam >= -1e-10 * max(1.0, sup_norm(m)), max(-lam, 0.0), {"case": i})
    return res


SUITES = {
    "oracle": suite_oracle,
    "homomorphism": suite_homomorphism,
    "order_embedding": suite_order,
    "nullstellensatz": suite_nullstellensatz,
    "pipeline": suite_pipeline,
    "coercive_inverse": suite_coercive_inverse,
    "spectral_map": suite_spectral_map,
    "representation": suite_representation,
    "resolvent": suite_resolvent,
    "ordered_algebra": suite_ordered_algebra,
}


def run_suite(name, seed=0, cases=20):
    # Child seed depends only on (seed, suite position) so suites are separable.
    index = list(SUITES).index(name)
    rng = Lcg64(seed)
    for _ in range(index):
        rng.next_u64()
    return SUITES[name](rng.spawn(), cases)


def run_all(seed=0, cases=20, names=None):
    return [run_suite(name, seed, cases) for name in (names or SUITES)]
