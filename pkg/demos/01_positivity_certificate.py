"""Certify that the Motzkin polynomial is nonnegative, then check the certificate.

Run with ``python demos/01_positivity_certificate.py``.
"""

from fractions import Fraction

from sucalc.poly import evaluate
from sucalc.polya import (
    NegativeValueError,
    RationalPositivityInput,
    certificate_to_json,
    certify,
    homogenize,
    polya_search,
    verify_certificate,
)

# %% The input: a polynomial in s and t1, t2, read with s = (1 + |x|^2)^-1.
motzkin = RationalPositivityInput.parse("t1^4*t2^2 + t1^2*t2^4 - 3*t1^2*t2^2 + 1", n=2)
print("K, L =", motzkin.K, motzkin.L)
print("value at (1, 1):", evaluate(motzkin.pi, [Fraction(1, 3), 1, 1]))  # a zero

# %% Homogenize into u, v, w. The form has negative coefficients.
rho = homogenize(motzkin)
negative = sum(1 for c in rho.terms.values() if c.re < 0)
print(f"rho: {len(rho)} terms, {negative} negative")

# %% Multiply by powers of (sum u + sum v + w) until every coefficient is >= 0.
cert = certify(motzkin, epsilon=1)
print(f"epsilon=1: M={cert.M}, sigma has {len(cert.sigma)} terms")

for eps in (Fraction(1, 16), Fraction(1, 64)):
    M, _ = polya_search(rho, eps)
    print(f"epsilon={eps}: M={M}")  # smaller epsilon needs a larger M

# %% The verifier re-derives everything from scratch.
print(verify_certificate(cert))

# %% A negative input is rejected with an explicit witness.
try:
    certify(RationalPositivityInput.parse("-1", n=1))
except NegativeValueError as exc:
    print("rejected:", exc)

# %% Certificates serialize to canonical JSON.
data = certificate_to_json(cert)
print(sorted(data), "samples:", len(data["samples"]))
