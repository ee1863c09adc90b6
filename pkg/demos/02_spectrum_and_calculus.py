"""Joint spectrum of a commuting Hermitian pair and the calculus built on it.

Run with ``python demos/02_spectrum_and_calculus.py``.
"""

import numpy as np

from sucalc.calculus import (
    axis_grid,
    gamma,
    homomorphism_check,
    nullstellensatz_check,
    order_embedding_check,
    pipeline_consistency,
    representation_check,
    spectral_map,
    spectrum_scan,
)
from sucalc.expr import absval, coercive_inverse, max2, pr, sqrt_pos
from sucalc.matrix import joint_spectrum, make_commuting_tuple, rational_evaluate
from sucalc.poly import parse_poly
from sucalc.polya import RationalPositivityInput, certify

np.set_printoptions(precision=4, suppress=True)

# %% Two commuting 5x5 matrices hidden behind a random unitary.
t = make_commuting_tuple(42, [[1, 1, 2, -1, 3], [0, 0, 2, 1, -2]])
spec = joint_spectrum(t)
for point, mult in spec:
    print("joint eigenvalue", point, "multiplicity", mult)

# %% Same answer from a grid scan: x is in the spectrum iff sum (x_n - a_n)^2 is not coercive.
hits = spectrum_scan(t, axis_grid(-3, 3, 13, 2))
print("grid points in the spectrum:", hits.tolist())

# %% Apply continuous functions of both generators.
f = sqrt_pos(absval(pr(1) * pr(2))) + max2(pr(1), pr(2))
print("gamma(f) eigenvalues:", np.linalg.eigvalsh(gamma(t, f)))
print("f on the spectrum:", np.sort(f(spec.as_array()).real))  # sqrt amplifies round-off near 0
print("spectral map of pr1 + i pr2:", np.round(spectral_map(t, pr(1) + 1j * pr(2)), 6))

# %% Structural checks, each with residuals.
for report in (
    homomorphism_check(t, f, pr(1) * pr(1)),
    order_embedding_check(t, pr(1) * pr(2) + 7),
    nullstellensatz_check(t, (pr(1) - 1) * (pr(1) - 2) * (pr(1) + 1) * (pr(1) - 3)),
    representation_check(t),
):
    for check in report.checks:
        print(f"{check.name:18s} {'ok' if check.passed else 'FAIL'}  residual {check.residual:.1e}")

# %% Rational expressions: direct matrix evaluation agrees with the calculus.
inp = RationalPositivityInput.parse("t1^4*t2^2 + t1^2*t2^4 - 3*t1^2*t2^2 + 1", 2)
report = pipeline_consistency(t, inp.pi, certify(inp))
print(report["rational_vs_gamma"].residual, report["certified_positive"].witness)

# %% s stands for (1 + a1^2 + a2^2)^-1.
s = rational_evaluate(t, parse_poly("s", ["s", "t1", "t2"]))
r0 = gamma(t, coercive_inverse(1 + pr(1) * pr(1) + pr(2) * pr(2), 1.0))
print("s vs r0:", np.max(np.abs(s - r0)))
