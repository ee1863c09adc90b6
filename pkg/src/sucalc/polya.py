"""Polya-type positivity certificates for rational expressions in
commuting Hermitian elements.

Input is a real polynomial ``pi(s, t_1..t_N)`` that is nonnegative at
``s = (1 + |x|^2)^-1, t = x`` for all real ``x``.  The pipeline

1. homogenizes ``pi`` into ``rho(u_1..u_N, v_1..v_N, w)`` of degree 2K+L,
2. searches the smallest ``M`` such that
   ``(sum u + sum v + w)^M * (rho + eps * (sum u + sum v + w)^(2K+L))``
   has only nonnegative coefficients,
3. records the expansion together with rational sample points at which the
   pull-back identity can be checked exactly.

The verifier recomputes everything from scratch and trusts nothing in the
certificate except what it checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .chi import AlgebraicChi
from .poly import GaussianRational, Polynomial, degree_info, evaluate, parse_poly, render_poly
from .rng import Lcg64

__all__ = [
    "RationalPositivityInput",
    "PolyaCertificate",
    "PolyaSearchExhausted",
    "NegativeValueError",
    "scalar_value",
    "CheckResult",
    "VerificationReport",
    "input_var_names",
    "sigma_var_names",
    "homogenize",
    "polya_search",
    "certify",
    "verify_certificate",
    "identity_samples",
    "pull_back_value",
    "certificate_to_json",
    "certificate_from_json",
]

DEFAULT_EPSILON = Fraction(1)
DEFAULT_M_MAX = 50
DEFAULT_SAMPLES = 10


class NegativeValueError(ArithmeticError):
    """``pi(p^-1, x) < 0`` at an explicit rational point, so no certificate exists."""

    def __init__(self, point, value, witness=None, coefficient=None):
        self.point = point
        self.value = value
        self.witness = witness
        self.coefficient = coefficient
        msg = f"pi((1+|x|^2)^-1, x) = {value} < 0 at x = ({', '.join(map(str, point))})"
        if witness is not None:
            msg += f"; most negative coefficient {coefficient} at monomial {witness}"
        super().__init__(msg)


class PolyaSearchExhausted(ArithmeticError):
    """No admissible exponent up to ``m_max``.

    ``witness`` is the exponent vector of the most negative coefficient at
    ``m_max`` and ``value`` that coefficient.
    """

    def __init__(self, m_max, witness, value):
        self.m_max = m_max
        self.witness = witness
        self.value = value
        super().__init__(
            f"no nonnegative expansion for M <= {m_max}; most negative coefficient "
            f"{value} at monomial {witness}"
        )


def input_var_names(n):
    return ["s"] + [f"t{i}" for i in range(1, n + 1)]


def sigma_var_names(n):
    return [f"u{i}" for i in range(1, n + 1)] + [f"v{i}" for i in range(1, n + 1)] + ["w"]


@dataclass(frozen=True)
class RationalPositivityInput:
    """``pi`` in variables ``(s, t_1..t_N)`` with its degree bounds.

    ``K`` bounds the degree in ``s`` and ``L`` the total degree in the ``t``;
    both default to the minimal values and may be raised.
    """

    pi: Polynomial
    n: int
    K: Optional[int] = None
    L: Optional[int] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one generator")
        if self.pi.num_vars != self.n + 1:
            raise ValueError(
                f"pi has {self.pi.num_vars} variables, expected {self.n + 1} (s, t1..tN)"
            )
        if not self.pi.is_hermitian():
            raise ValueError("pi must be Hermitian (real coefficients)")
        k_min = self.pi.degree_in([0])
        l_min = self.pi.degree_in(range(1, self.n + 1))
        if self.K is None:
            object.__setattr__(self, "K", k_min)
        if self.L is None:
            object.__setattr__(self, "L", l_min)
        if self.K < k_min or self.L < l_min:
            raise ValueError(
                f"degree bounds K={self.K}, L={self.L} below pi's degrees ({k_min}, {l_min})"
            )

    @property
    def degree(self):
        return 2 * self.K + self.L

    @classmethod
    def parse(cls, text, n, K=None, L=None):
        return cls(parse_poly(text, input_var_names(n)), n, K, L)


def homogenize(inp: RationalPositivityInput) -> Polynomial:
    """rho = sum pi_{k,l} w^(L-|l|+2k) (w^2 + sum (u-v)^2)^(K-k) prod (u-v)^l."""
    n, K, L = inp.n, inp.K, inp.L
    nv = 2 * n + 1
    w = Polynomial.variable(nv, 2 * n)
    diffs = [Polynomial.variable(nv, i) - Polynomial.variable(nv, n + i) for i in range(n)]
    quad = w * w
    for d in diffs:
        quad = quad + d * d

    cache = {}

    def power(key, base, k):
        if (key, k) not in cache:
            cache[(key, k)] = base**k
        return cache[(key, k)]

    rho = Polynomial(nv)
    for exps, c in inp.pi.terms.items():
        k, ell = exps[0], exps[1:]
        term = power("w", w, L - sum(ell) + 2 * k) * power("q", quad, K - k)
        for i, e in enumerate(ell):
            if e:
                term = term * power(i, diffs[i], e)
        rho = rho + term.scale(c.re)
    return rho


def _simplex_power(nv, degree):
    """(x_1 + ... + x_nv)^degree as an exponent -> int map (multinomial)."""
    out = {}
    fact = math.factorial(degree)

    def rec(prefix, remaining, slots):
        if slots == 1:
            exps = prefix + (remaining,)
            denom = 1
            for e in exps:
                denom *= math.factorial(e)
            out[exps] = fact // denom
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nv)
    return out


def _integer_scaled(terms):
    """Clear denominators: returns (scale, integer terms) with terms = ints/scale."""
    den = 1
    for c in terms.values():
        den = math.lcm(den, Fraction(c).denominator)
    return den, {e: int(Fraction(c) * den) for e, c in terms.items() if c}


def _times_simplex(terms, nv):
    out = {}
    get = out.get
    for e, c in terms.items():
        for i in range(nv):
            f = e[:i] + (e[i] + 1,) + e[i + 1:]
            out[f] = get(f, 0) + c
    return out


def _perturbed(rho: Polynomial, epsilon: Fraction, degree: int):
    base = {e: c for e, c in rho.real_terms().items()}
    for e, c in _simplex_power(rho.num_vars, degree).items():
        base[e] = base.get(e, 0) + epsilon * c
    return {e: c for e, c in base.items() if c}


def polya_search(rho: Polynomial, epsilon=DEFAULT_EPSILON, m_max=DEFAULT_M_MAX, degree=None):
    """Smallest ``M`` in ``[0, m_max]`` giving a nonnegative expansion.

    Returns ``(M, sigma)``.  ``degree`` is only needed when ``rho`` is the
    zero polynomial (whose degree is otherwise undefined).
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if not rho.is_hermitian():
        raise ValueError("rho must have real coefficients")
    deg, homogeneous = degree_info(rho)
    if not homogeneous:
        raise ValueError("rho is not homogeneous")
    if rho.is_zero():
        if degree is None:
            raise ValueError("degree must be given for the zero polynomial")
        deg = degree
    elif degree is not None and degree != deg:
        raise ValueError(f"rho has degree {deg}, expected {degree}")
    nv = rho.num_vars
    scale, current = _integer_scaled(_perturbed(rho, epsilon, deg))
    m = 0
    while True:
        worst = min(current.items(), key=lambda kv: (kv[1], kv[0]), default=None)
        if worst is None or worst[1] >= 0:
            sigma = Polynomial.from_real_terms(
                nv, {e: Fraction(c, scale) for e, c in current.items()}
            )
            return m, sigma
        if m >= m_max:
            raise PolyaSearchExhausted(m_max, worst[0], Fraction(worst[1], scale))
        current = _times_simplex(current, nv)
        m += 1


def identity_samples(n, count=DEFAULT_SAMPLES, seed=0):
    """Random rational points in [-8, 8)^n; 2**32 values per coordinate."""
    rng = Lcg64(seed)
    return [
        tuple(Fraction(int(rng.next_u64() >> 32) - (1 << 31), 1 << 28) for _ in range(n))
        for _ in range(count)
    ]


def scalar_value(pi: Polynomial, x) -> Fraction:
    """Exact ``pi((1 + |x|^2)^-1, x)`` at a rational point."""
    x = [Fraction(v) for v in x]
    p = 1 + sum(v * v for v in x)
    value = evaluate(pi, [1 / p] + x)
    if not value.is_real():
        raise ValueError("pi is not real at a real point")
    return value.re


def _falsify(inp, rho, points):
    for x in points:
        value = scalar_value(inp.pi, x)
        if value < 0:
            worst = min(rho.real_terms().items(), key=lambda kv: (kv[1], kv[0]), default=None)
            if worst is None or worst[1] >= 0:
                raise NegativeValueError(tuple(x), value)
            raise NegativeValueError(tuple(x), value, worst[0], worst[1])


@dataclass
class PolyaCertificate:
    input: RationalPositivityInput
    epsilon: Fraction
    M: int
    sigma: Polynomial
    identity_samples: list = field(default_factory=list)

    @property
    def degree(self):
        return self.input.degree + self.M


def certify(inp: RationalPositivityInput, epsilon=DEFAULT_EPSILON, m_max=DEFAULT_M_MAX,
            samples=DEFAULT_SAMPLES, seed=0) -> PolyaCertificate:
    """Homogenize, run the Polya search and attach identity sample points.

    Raises :class:`NegativeValueError` if ``pi`` is negative at the origin or
    at one of the sample points, and :class:`PolyaSearchExhausted` if no
    ``M <= m_max`` works.
    """
    if not isinstance(inp, RationalPositivityInput):
        raise TypeError("expected a RationalPositivityInput")
    epsilon = Fraction(epsilon)
    points = identity_samples(inp.n, samples, seed)
    # A fixed-epsilon expansion only bounds pi from below by -epsilon*(...);
    # reject inputs that are visibly negative before searching.
    rho = homogenize(inp)
    _falsify(inp, rho, [(0,) * inp.n] + points)
    M, sigma = polya_search(rho, epsilon, m_max, degree=inp.degree)
    return PolyaCertificate(inp, epsilon, M, sigma, points)


# ---------------------------------------------------------------------------
# verification

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: object = None
    expected: object = None
    actual: object = None


@dataclass
class VerificationReport:
    checks: list

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def lines(self):
        out = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"{c.name:9s} {status}"
            if c.detail:
                line += f"  {c.detail}"
            if not c.passed:
                line += f"  witness={c.witness} expected={c.expected} actual={c.actual}"
            out.append(line)
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _check_coefficients(cert):
    for exps in sorted(cert.sigma.terms):
        c = cert.sigma.terms[exps]
        if not c.is_real() or c.re < 0:
            return CheckResult("COEFF", False, "negative or non-real coefficient",
                               witness=exps, expected=">= 0", actual=str(c))
    return CheckResult("COEFF", True, f"{len(cert.sigma)} coefficients, all >= 0")


def _check_algebra(cert):
    inp = cert.input
    nv = 2 * inp.n + 1
    if cert.sigma.num_vars != nv:
        return CheckResult("ALGEBRA", False, "sigma has wrong number of variables",
                           expected=nv, actual=cert.sigma.num_vars)
    # Independent route: S^M from the multinomial formula, times the perturbed
    # form, multiplied out in one shot (the search multiplies by S stepwise).
    rho = homogenize(inp)
    perturbed = Polynomial.from_real_terms(nv, _perturbed(rho, cert.epsilon, inp.degree))
    s_power = Polynomial.from_real_terms(nv, _simplex_power(nv, cert.M))
    expected = s_power * perturbed
    for exps in sorted(set(expected.terms) | set(cert.sigma.terms)):
        a = expected.coefficient(exps)
        b = cert.sigma.coefficient(exps)
        if a != b:
            return CheckResult("ALGEBRA", False, "re-expansion differs",
                               witness=exps, expected=str(a), actual=str(b))
    return CheckResult("ALGEBRA", True, f"M={cert.M}, degree {inp.degree + cert.M}")


def pull_back_value(sigma: Polynomial, x, n):
    """sigma at u_n = (chi + x_n/chi)^2/4, v_n = (chi - x_n/chi)^2/4, w = 1.

    Computed exactly with chi^2 represented by ``AlgebraicChi.z(n)``.
    """
    z = AlgebraicChi.z(n)
    zi = AlgebraicChi.z_inverse(n)
    quarter = Fraction(1, 4)
    us = [(z + 2 * xi + xi * xi * zi) * quarter for xi in x]
    vs = [(z - 2 * xi + xi * xi * zi) * quarter for xi in x]
    base = us + vs
    powers = [[AlgebraicChi(n, 1)] for _ in base]
    total_c0 = Fraction(0)
    total_c1 = Fraction(0)
    for exps, c in sigma.terms.items():
        term = AlgebraicChi(n, 1)
        for i, e in enumerate(exps[:-1]):
            if e:
                table = powers[i]
                while len(table) <= e:
                    table.append(table[-1] * base[i])
                term = term * table[e]
        total_c0 += c.re * term.c0
        total_c1 += c.re * term.c1
    return AlgebraicChi(n, total_c0, total_c1)


def pull_back_target(inp: RationalPositivityInput, pi: Polynomial, epsilon, M, x):
    """(2z)^-M p^M (p^K pi(1/p, x) + eps (2z)^-(2K+L) p^(2K+L)), p = 1 + |x|^2."""
    n = inp.n
    p = 1 + sum(xi * xi for xi in x)
    pi_val = evaluate(pi, [1 / p] + list(x))
    if not pi_val.is_real():
        raise ValueError("pi is not real at a real point")
    two_z_inv = AlgebraicChi.z_inverse(n) * Fraction(1, 2)
    deg = inp.degree
    inner = AlgebraicChi(n, p**inp.K * pi_val.re) + two_z_inv**deg * (Fraction(epsilon) * p**deg)
    return two_z_inv**M * p**M * inner


def _check_identity(cert, pi, samples, min_samples):
    if len(samples) < min_samples:
        return CheckResult("IDENTITY", False, f"only {len(samples)} sample points",
                           expected=f">= {min_samples}", actual=len(samples))
    n = cert.input.n
    for x in samples:
        if len(x) != n:
            return CheckResult("IDENTITY", False, "sample point has wrong dimension",
                               witness=x)
        lhs = pull_back_value(cert.sigma, x, n)
        rhs = pull_back_target(cert.input, pi, cert.epsilon, cert.M, x)
        if lhs != rhs:
            return CheckResult("IDENTITY", False, "substitution identity violated",
                               witness=tuple(str(v) for v in x),
                               expected=repr(rhs), actual=repr(lhs))
    return CheckResult("IDENTITY", True, f"exact at {len(samples)} rational points")


def _check_sign(pi, points):
    for x in points:
        value = scalar_value(pi, x)
        if value < 0:
            return CheckResult("SIGN", False, "pi negative at a sample point",
                               witness=tuple(str(v) for v in x), expected=">= 0",
                               actual=str(value))
    return CheckResult("SIGN", True, f"pi >= 0 at {len(points)} rational points")


def verify_certificate(cert: PolyaCertificate, pi: Optional[Polynomial] = None,
                       samples=None, min_samples=DEFAULT_SAMPLES) -> VerificationReport:
    """Run the COEFF, ALGEBRA and IDENTITY checks independently, plus SIGN.

    ALGEBRA re-expands from the certificate's own input polynomial; IDENTITY
    ties the expansion to ``pi`` (defaults to the certificate's), so a
    certificate paired with the wrong polynomial is caught there.  SIGN
    evaluates ``pi`` itself at the sample points: an expansion for one fixed
    epsilon only shows ``pi`` is bounded below by ``-epsilon * (...)``.
    """
    if pi is None:
        pi = cert.input.pi
    if samples is None:
        samples = cert.identity_samples
    checks = [_check_coefficients(cert), _check_algebra(cert)]
    if pi.num_vars != cert.input.n + 1:
        checks.append(CheckResult("IDENTITY", False, "pi has wrong number of variables",
                                  expected=cert.input.n + 1, actual=pi.num_vars))
    else:
        checks.append(_check_identity(cert, pi, samples, min_samples))
        checks.append(_check_sign(pi, [(0,) * cert.input.n] + list(samples)))
    return VerificationReport(checks)


# ---------------------------------------------------------------------------
# JSON

def _frac_text(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def certificate_to_json(cert: PolyaCertificate) -> dict:
    inp = cert.input
    sigma = [
        [list(e), _frac_text(c.re), _frac_text(c.im)]
        for e, c in sorted(cert.sigma.terms.items())
    ]
    return {
        "n": inp.n,
        "k": inp.K,
        "l": inp.L,
        "epsilon": _frac_text(cert.epsilon),
        "m": cert.M,
        "sigma": sigma,
        "pi": render_poly(inp.pi, input_var_names(inp.n)),
        "samples": [[_frac_text(v) for v in x] for x in cert.identity_samples],
    }


def certificate_from_json(data: dict, pi: Optional[Polynomial] = None) -> PolyaCertificate:
    """Rebuild a certificate; ``pi`` overrides the embedded polynomial text."""
    n = int(data["n"])
    if pi is None:
        pi = parse_poly(data["pi"], input_var_names(n))
    inp = RationalPositivityInput(pi, n, int(data["k"]), int(data["l"]))
    terms = {}
    for exps, re_text, im_text in data["sigma"]:
        terms[tuple(int(e) for e in exps)] = GaussianRational(Fraction(re_text), Fraction(im_text))
    sigma = Polynomial(2 * n + 1, terms)
    samples = [tuple(Fraction(v) for v in x) for x in data.get("samples", [])]
    return PolyaCertificate(inp, Fraction(data["epsilon"]), int(data["m"]), sigma, samples)
