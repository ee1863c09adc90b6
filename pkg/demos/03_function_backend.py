"""Expression trees as functions on sampled subsets of R^N.

Run with ``python demos/03_function_backend.py``.
"""

import numpy as np

from sucalc.expr import gamma_rho, neg_part, parse_sexpr, pos_part, pr, to_sexpr
from sucalc.functions import (
    SampledDomain,
    grid_domain,
    is_proper_sampled,
    spherical_generator,
    sup_norm_sampled,
    tietze_extend,
)

# %% Parse, evaluate on many points at once, print back.
f = parse_sexpr("(abs (sub (pr 1) (const 2 0)))")
xs = np.linspace(-1, 4, 6).reshape(-1, 1)
print(to_sexpr(f), f(xs).real)

# %% Positive and negative parts: f = f+ - f-, f+ f- = 0.
g = pr(1) * pr(1) - 1
print(pos_part(g)(xs).real, neg_part(g)(xs).real)

# %% The spherical generators are bounded: |r1| <= 1/2.
r1 = spherical_generator(1, 1)
print("sup |r1| on [-100, 100]:", sup_norm_sampled(r1, grid_domain(-100, 100, 2001)))

# %% gamma_rho clamps into a disc without changing values inside it.
print("sup |gamma_1(pr1)| on [-9, 9]:", sup_norm_sampled(gamma_rho(pr(1), 1.0), grid_domain(-9, 9, 37)))

# %% Tietze extension from a finite set to any point.
z = SampledDomain(1, [[-1.0], [1.0]])
for x in (-2.0, 0.0, 0.5, 1.0):
    print(f"extension at {x}: {tietze_extend([0.0, 2.0], z, [x])}")

# %% Properness on samples: 1 + x^2 has bounded sublevel sets, the constant 1 does not.
dom = grid_domain(-10, 10, 201)
print(is_proper_sampled(1 + pr(1) * pr(1), dom, 5).box)
print(bool(is_proper_sampled(pr(1) * 0 + 1, dom, 2)))
