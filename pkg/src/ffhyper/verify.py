"""Seeded property suites over small fields.

Each suite returns a list of :class:`Check`. Randomness is drawn from
``random.Random`` seeded by a string built from the user seed, the suite
name and q, so suites are reproducible independently of each other.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable

from .character import (
    AddCharTwist,
    MultChar,
    character_sum_over_torus,
    conductor,
    gauss_sum,
    monomial_character_sum,
    twist_relation_check,
)
from .field import field_of_order, prime_power
from .hypergeometric import (
    F_A_batch,
    HypergeometricInstance,
    S_A_batch,
    dwork_loeser_instance,
    fourier_coefficient,
    fourier_coefficient_by_projection,
    mccarthy_hypergeometric,
    normalization_C,
    scale_lambda,
    solve_L_beta,
    specialized_lambda,
)
from .value import CycValue

EXHAUSTIVE_LIMIT = 10**4
# suites other than gauss only visit fields up to this size when run by name
DESK_QMAX = 9
SAMPLES = 100


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "pass": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


def prime_powers(lo: int, hi: int) -> list[int]:
    out = []
    for q in range(max(lo, 2), hi + 1):
        try:
            prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


def _rng(seed: int, *tags) -> random.Random:
    return random.Random(":".join(str(t) for t in (seed, *tags)))


def random_instance(f, rng: random.Random, n_max: int = 3, N_max: int = 4) -> HypergeometricInstance:
    M = f.order
    n = rng.randint(1, n_max)
    N = rng.randint(1, N_max)
    A = tuple(tuple(rng.randrange(M) for _ in range(n)) for _ in range(N))
    beta = tuple(rng.randrange(M) for _ in range(n))
    return HypergeometricInstance(f, A, beta)


def random_lambda(f, N: int, rng: random.Random) -> tuple[int, ...]:
    return tuple(rng.randrange(1, f.q) for _ in range(N))


def _tally(name: str, results: Iterable[bool]) -> Check:
    results = list(results)
    ok = sum(results)
    return Check(name, ok == len(results) and bool(results), f"{ok}/{len(results)}")


# suites

def gauss_suite(qs: Iterable[int], seed: int = 0) -> list[Check]:
    checks = []
    for q in qs:
        f = field_of_order(q)
        checks.append(Check(f"gauss q={q} g(eps)=-1", gauss_sum(MultChar(f, 0)) == -1))
        norms = []
        for k in range(1, f.order):
            g = gauss_sum(MultChar(f, k))
            norms.append(g * g.conj() == q)
        if norms:
            checks.append(_tally(f"gauss q={q} |g(chi)|^2=q", norms))
    return checks


def twist_suite(qs: Iterable[int], seed: int = 0, instances: int = 5) -> list[Check]:
    checks = []
    for q in qs:
        f = field_of_order(q)
        rng = _rng(seed, "twist", q)
        checks.append(
            _tally(
                f"twist q={q} g_c(chi)=conj(chi)(c)g(chi)",
                (twist_relation_check(MultChar(f, k), c) for k in range(f.order) for c in range(1, q)),
            )
        )
        for r in range(instances):
            inst = random_instance(f, rng)
            lam = random_lambda(f, inst.N, rng)
            base = F_A_batch(inst, [scale_lambda(f, c, lam) for c in range(1, q)])
            twisted = [F_A_batch(inst, [lam], AddCharTwist(c))[0] for c in range(1, q)]
            checks.append(
                _tally(
                    f"twist q={q} instance {r} F'_A(lam)=F_A(c lam)",
                    (x == y for x, y in zip(twisted, base)),
                )
            )
    return checks


def _character_tuples(M: int, count: int, rng: random.Random):
    if M**count <= EXHAUSTIVE_LIMIT:
        return list(product(range(M), repeat=count))
    return [tuple(rng.randrange(M) for _ in range(count)) for _ in range(SAMPLES)]


def orthogonality_suite(qs: Iterable[int], seed: int = 0, dim_max: int = 3) -> list[Check]:
    checks = []
    for q in qs:
        f = field_of_order(q)
        M = f.order
        rng = _rng(seed, "orthogonality", q)
        for N in range(1, dim_max + 1):
            results = []
            for ks in _character_tuples(M, N, rng):
                total = character_sum_over_torus([MultChar(f, k) for k in ks])
                expected = M**N if not any(ks) else 0
                results.append(total == expected)
            checks.append(_tally(f"orthogonality q={q} N={N} torus character sum", results))
        for n in range(1, dim_max + 1):
            N = rng.randint(1, dim_max)
            A = [[rng.randrange(M) for _ in range(n)] for _ in range(N)]
            beta = [rng.randrange(M) for _ in range(n)]
            results = []
            for rho in _character_tuples(M, N, rng):
                total = monomial_character_sum(f, A, rho, beta)
                hit = all(
                    sum(rho[i] * A[i][j] for i in range(N)) % M == beta[j] for j in range(n)
                )
                results.append(total == (M**n if hit else 0))
            checks.append(_tally(f"orthogonality q={q} n={n} N={N} monomial character sum", results))
    return checks


def fourier_suite(qs: Iterable[int], seed: int = 0, instances: int = 3) -> list[Check]:
    checks = []
    for q in qs:
        f = field_of_order(q)
        M = f.order
        rng = _rng(seed, "fourier", q)
        for r in range(instances):
            A = ((rng.randrange(M),), (rng.randrange(M),))
            inst = HypergeometricInstance(f, A, (rng.randrange(M),))
            lams = list(product(range(1, q), repeat=2))
            s_values = dict(zip(lams, S_A_batch(inst, lams)))
            rhos = list(product(range(M), repeat=2))
            coeffs = {rho: fourier_coefficient(inst, rho) for rho in rhos}
            checks.append(
                _tally(
                    f"fourier q={q} instance {r} A={list(A)} projection=closed form",
                    (
                        fourier_coefficient_by_projection(inst, rho, s_values=s_values) == coeffs[rho]
                        for rho in rhos
                    ),
                )
            )
            checks.append(
                _tally(
                    f"fourier q={q} instance {r} reconstruction of S_A",
                    (_reconstruct(f, coeffs, lam) == s_values[lam] for lam in lams),
                )
            )
    return checks


def _reconstruct(f, coeffs: dict, lam) -> CycValue:
    m = conductor(f)
    total = CycValue.zero(m)
    for rho, c in coeffs.items():
        if c.is_zero():
            continue
        for k, x in zip(rho, lam):
            c = c * MultChar(f, k)(x)
        total = total + c
    return total


def theorem_suite(
    qs: Iterable[int], seed: int = 0, instances: int = 25, lambdas: int = 10
) -> list[Check]:
    checks = []
    for q in qs:
        f = field_of_order(q)
        rng = _rng(seed, "theorem13", q)
        for r in range(instances):
            inst = random_instance(f, rng)
            lams = [random_lambda(f, inst.N, rng) for _ in range(lambdas)]
            fa = F_A_batch(inst, lams)
            sa = S_A_batch(inst, lams)
            checks.append(
                _tally(
                    f"theorem q={q} instance {r} n={inst.n} N={inst.N} S_A=F_A",
                    (x == y for x, y in zip(fa, sa)),
                )
            )
    return checks


def mccarthy_suite(qs: Iterable[int], seed: int = 0, ks: Iterable[int] = (1, 2)) -> list[Check]:
    checks = []
    for q in qs:
        f = field_of_order(q)
        rng = _rng(seed, "mccarthy", q)
        for k in ks:
            alphas = [MultChar(f, rng.randrange(f.order)) for _ in range(2 * k - 1)]
            inst = dwork_loeser_instance(alphas)
            C = normalization_C(alphas)
            tag = f"mccarthy q={q} k={k} alpha={[a.k for a in alphas]}"
            checks.append(Check(f"{tag} |L_beta|=q-1", solve_L_beta(inst).count == f.order))
            ts = list(range(1, q))
            lams = [specialized_lambda(alphas, t) for t in ts]
            fa = F_A_batch(inst, lams)
            sa = S_A_batch(inst, lams)
            for t, x, y in zip(ts, fa, sa):
                kf = mccarthy_hypergeometric(alphas, t)
                checks.append(Check(f"{tag} t={t} F_A/C = kFk-1", x / C == kf))
                checks.append(Check(f"{tag} t={t} C*kFk-1 = S_A", C * kf == y))
    return checks


def enumerate_solutions(inst: HypergeometricInstance) -> set[tuple[int, ...]]:
    """Brute-force L_beta over all of (Z/(q-1))^N."""
    M = inst.field.order
    b = inst.beta_exponents
    out = set()
    for c in product(range(M), repeat=inst.N):
        if all(sum(c[i] * inst.A[i][j] for i in range(inst.N)) % M == b[j] for j in range(inst.n)):
            out.add(c)
    return out


def lbeta_suite(qs: Iterable[int], seed: int = 0, instances: int = 50) -> list[Check]:
    checks = []
    for q in qs:
        f = field_of_order(q)
        rng = _rng(seed, "lbeta", q)
        results = []
        for _ in range(instances):
            inst = random_instance(f, rng, n_max=3, N_max=3)
            sols = solve_L_beta(inst)
            members = list(sols)
            brute = enumerate_solutions(inst)
            results.append(
                len(members) == sols.count == len(brute) and set(members) == brute
            )
        checks.append(_tally(f"lbeta q={q} SNF parametrization = enumeration", results))
        eps = [MultChar(f, 0)] * 3
        checks.append(
            Check(f"lbeta q={q} k=2 Dwork-Loeser count", solve_L_beta(dwork_loeser_instance(eps)).count == f.order)
        )
    return checks


# suite name -> (runner, q filter applied to the 2..qmax range)
SUITES: dict[str, tuple[Callable[..., list[Check]], Callable[[int], bool]]] = {
    "gauss": (gauss_suite, lambda q: True),
    "orthogonality": (orthogonality_suite, lambda q: q <= DESK_QMAX),
    "fourier": (fourier_suite, lambda q: q <= DESK_QMAX),
    "twist": (twist_suite, lambda q: q <= DESK_QMAX),
    "theorem13": (theorem_suite, lambda q: q <= DESK_QMAX),
    "mccarthy": (mccarthy_suite, lambda q: q <= DESK_QMAX),
    "lbeta": (lbeta_suite, lambda q: q <= DESK_QMAX),
}


def run_suite(name: str, qmax: int, seed: int = 0) -> list[Check]:
    names = list(SUITES) if name == "all" else [name]
    checks = []
    for nm in names:
        runner, keep = SUITES[nm]
        checks.extend(runner([q for q in prime_powers(2, qmax) if keep(q)], seed))
    return checks
