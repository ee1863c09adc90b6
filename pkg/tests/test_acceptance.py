"""Acceptance criteria 1-9, one test each.

Every test records a single PASS/FAIL line; the lines are printed at the end
of the pytest run (see conftest.py) and by ``python tests/test_acceptance.py``.
"""

import os
import subprocess
import sys
import tempfile
import time

import numpy as np
import pytest

from sucalc import jsonio
from sucalc.cases import random_diagonals, random_sos_input
from sucalc.matrix import make_commuting_tuple, rational_evaluate, sup_norm
from sucalc.polya import RationalPositivityInput, certify, scalar_value, verify_certificate
from sucalc.props import run_suite
from sucalc.rng import Lcg64

MOTZKIN = "t1^4*t2^2 + t1^2*t2^4 - 3*t1^2*t2^2 + 1"
SEED = 2026
RESULTS = {}


def record(number, title, ok, detail):
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    RESULTS[number] = line
    print(line)
    return ok


def criterion_1():
    inp = RationalPositivityInput.parse(MOTZKIN, 2)
    start = time.perf_counter()
    cert = certify(inp, epsilon=1)
    report = verify_certificate(cert)
    elapsed = time.perf_counter() - start
    again = certify(inp, epsilon=1)
    stable = again.M == cert.M and again.sigma == cert.sigma
    core = all(report[name].passed for name in ("COEFF", "ALGEBRA", "IDENTITY"))
    samples = len(cert.identity_samples)
    ok = core and report.passed and stable and elapsed < 60 and samples >= 10
    return record(1, "Motzkin certificate", ok,
                  f"M={cert.M}, {len(cert.sigma)} terms, {samples} identity points, "
                  f"{elapsed:.2f}s, stable={stable}")


def criterion_2():
    rng = Lcg64(SEED)
    failures = []
    lowest = np.inf
    for i in range(25):
        n = rng.randint(1, 2)
        inp = RationalPositivityInput(random_sos_input(rng, n), n)
        cert = certify(inp, seed=i)
        if not verify_certificate(cert).passed:
            failures.append((i, "verify"))
            continue
        for _ in range(1000):
            x = [rng.rational(-10, 10, 1 << 12) for _ in range(n)]
            if scalar_value(inp.pi, x) < 0:
                failures.append((i, "scalar", x))
                break
        for _ in range(5):
            d = rng.randint(1, 8)
            t = make_commuting_tuple(rng.next_u64(), random_diagonals(rng, d, n))
            m = rational_evaluate(t, inp.pi)
            lam = float(np.linalg.eigvalsh(m)[0])
            scale = max(1.0, sup_norm(m))
            lowest = min(lowest, lam / scale)
            if lam < -1e-9 * scale:
                failures.append((i, "matrix", lam))
    return record(2, "certificate soundness", not failures,
                  f"25 inputs x 1000 exact points + 5 tuples each, smallest "
                  f"eigenvalue/scale {lowest:.2e}, failures={failures[:3]}")


def _suite(number, title, names_and_counts):
    parts = []
    ok = True
    for name, count in names_and_counts:
        res = run_suite(name, SEED, count)
        ok &= res.ok and res.cases == count
        parts.append(f"{name} {res.passed}/{res.cases} (max residual {res.max_residual:.1e})")
    return record(number, title, ok, "; ".join(parts))


def criterion_3():
    return _suite(3, "oracle equivalence", [("oracle", 200)])


def criterion_4():
    return _suite(4, "homomorphism", [("homomorphism", 500)])


def criterion_5():
    return _suite(5, "order embedding + Nullstellensatz",
                  [("order_embedding", 200), ("nullstellensatz", 200)])


def criterion_6():
    return _suite(6, "pipeline consistency", [("pipeline", 100), ("coercive_inverse", 100)])


def criterion_7():
    return _suite(7, "spectral mapping", [("spectral_map", 100)])


def criterion_8():
    return _suite(8, "representation", [("representation", 50)])


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "sucalc", *args],
                          capture_output=True, check=False)


def criterion_9():
    props = [_cli("props", "--seed", "7") for _ in range(2)]
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "tuple.json")
        diags = random_diagonals(Lcg64(9), 12, 3)
        jsonio.write_atomic(path, jsonio.dumps(make_commuting_tuple(9, diags).to_json()))
        spec = [_cli("spectrum", path) for _ in range(2)]
    same_props = props[0].stdout == props[1].stdout and props[0].returncode == 0
    same_spec = spec[0].stdout == spec[1].stdout and spec[0].returncode == 0
    ok = same_props and same_spec and len(props[0].stdout) > 0
    return record(9, "determinism", ok,
                  f"props --seed 7 identical={same_props} ({len(props[0].stdout)} bytes), "
                  f"spectrum identical={same_spec}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
