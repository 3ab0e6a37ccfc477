"""Acceptance criteria, each run at its stated size, tolerance (exact) and time bound.

Run with ``pytest tests/test_acceptance.py`` (a pass/fail line per criterion is
printed in the terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

import io
import json
import time
from contextlib import redirect_stdout

from ffhyper import cli
from ffhyper.verify import (
    fourier_suite,
    gauss_suite,
    lbeta_suite,
    mccarthy_suite,
    orthogonality_suite,
    prime_powers,
    theorem_suite,
    twist_suite,
)

SEED = 0
RESULTS: dict[str, tuple[bool, str]] = {}


def _record(label, checks, elapsed, limit=None):
    failed = [c.name for c in checks if not c.passed]
    passed = bool(checks) and not failed and (limit is None or elapsed < limit)
    detail = f"{len(checks) - len(failed)}/{len(checks)} checks, {elapsed:.2f}s"
    if limit is not None:
        detail += f" (limit {limit}s)"
    if failed:
        detail += f"; first failure: {failed[0]}"
    RESULTS[label] = (passed, detail)
    return passed, detail


def _timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


def test_1_theorem_suite():
    checks, dt = _timed(theorem_suite, [3, 4, 5, 7, 8, 9], SEED, instances=25, lambdas=10)
    assert len(checks) == 6 * 25
    ok, detail = _record("1 theorem S_A = F_A", checks, dt, limit=60)
    assert ok, detail


def test_2_gauss_suite():
    qs = prime_powers(2, 27)
    checks, dt = _timed(gauss_suite, qs, SEED)
    ok, detail = _record("2 gauss sums g(eps)=-1, |g|^2=q, q<=27", checks, dt, limit=10)
    assert ok, detail


def test_3_twist_suites():
    checks, dt = _timed(twist_suite, [5, 7], SEED, instances=5)
    assert len(checks) == 2 * (1 + 5)
    ok, detail = _record("3 twist relations for Gauss sums and F_A", checks, dt)
    assert ok, detail


def test_4_fourier_suite():
    checks, dt = _timed(fourier_suite, [5], SEED)
    ok, detail = _record("4 Fourier coefficients and reconstruction, q=5 n=1 N=2", checks, dt, limit=5)
    assert ok, detail
    # every coefficient check covers all 16 characters, every reconstruction all 16 lambdas
    assert all(c.detail == "16/16" for c in checks)


def test_5_orthogonality_suites():
    checks, dt = _timed(orthogonality_suite, [3, 5, 7], SEED, dim_max=3)
    assert len(checks) == 3 * 6
    ok, detail = _record("5 orthogonality of torus and monomial character sums", checks, dt)
    assert ok, detail


def test_6_mccarthy_suite():
    checks, dt = _timed(mccarthy_suite, [5, 7], SEED, ks=(1, 2))
    # per (q, k): one lattice-size check, then two identities per t
    assert len(checks) == 2 * (1 + 2 * 4) + 2 * (1 + 2 * 6)
    ok, detail = _record("6 kFk-1 normalization and specialized exponential sum", checks, dt, limit=30)
    assert ok, detail


def test_7_lbeta_soundness():
    checks, dt = _timed(lbeta_suite, [5], SEED, instances=50)
    ok, detail = _record("7 L_beta parametrization vs enumeration, q=5", checks, dt)
    assert ok, detail
    assert checks[0].detail == "50/50"


def _verify_report(seed):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(["verify", "--suite", "all", "--qmax", "9", "--seed", str(seed)])
    data = json.loads(buf.getvalue())
    data.pop("elapsed_ms")
    return code, json.dumps(data, sort_keys=False)


def test_8_determinism():
    start = time.perf_counter()
    (code_a, a), (code_b, b) = _verify_report(11), _verify_report(11)
    dt = time.perf_counter() - start
    same = a == b and code_a == code_b == 0
    RESULTS["8 verify reports identical across runs"] = (
        same,
        f"{len(a)} bytes, identical={a == b}, exit codes {code_a}/{code_b}, {dt:.2f}s",
    )
    assert same


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
    for label, (ok, detail) in sorted(RESULTS.items()):
        print(f"{'PASS' if ok else 'FAIL'}  criterion {label}: {detail}")
