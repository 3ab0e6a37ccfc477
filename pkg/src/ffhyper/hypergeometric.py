"""Finite field A-hypergeometric functions and torus exponential sums.

Both ``F_A`` and ``S_A`` are reductions over an index set (members of the
character coset L_beta, resp. points of the torus). The kernels process the
index set in chunks and accumulate integer histograms over exponents of
zeta_m, so partial results from any chunking merge by plain addition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .character import (
    MultChar,
    as_twist,
    conductor,
    gauss_sum,
    gauss_vector,
    mult_char_eval,
    twisted_trace_table,
)
from .field import FieldDesc, ZeroArgumentError
from .smith import matvec, smith_normal_form
from .value import CycValue

CHUNK = 1 << 14
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class HypergeometricInstance:
    """The data (A, beta): N exponent vectors in (Z/(q-1))^n and n characters.

    Signed entries of A are accepted and reduced mod q-1. beta may be given
    as MultChar objects or as exponents.
    """

    field: FieldDesc
    A: tuple[tuple[int, ...], ...]
    beta: tuple[MultChar, ...]

    def __post_init__(self):
        M = self.field.order
        A = tuple(tuple(int(x) % M for x in row) for row in self.A)
        if not A or not A[0]:
            raise ValueError("A must have N >= 1 rows and n >= 1 columns")
        if any(len(row) != len(A[0]) for row in A):
            raise ValueError("rows of A must all have length n")
        beta = tuple(
            b if isinstance(b, MultChar) else MultChar(self.field, int(b)) for b in self.beta
        )
        if len(beta) != len(A[0]):
            raise ValueError(f"beta has length {len(beta)}, expected n = {len(A[0])}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "beta", beta)

    @property
    def n(self) -> int:
        return len(self.A[0])

    @property
    def N(self) -> int:
        return len(self.A)

    @property
    def beta_exponents(self) -> tuple[int, ...]:
        return tuple(b.k for b in self.beta)

    def to_json(self) -> dict:
        return {
            "field": {"p": self.field.p, "a": self.field.a},
            "A": [list(r) for r in self.A],
            "beta": list(self.beta_exponents),
        }


@dataclass
class CharSolutionSet:
    """Solutions c in (Z/M)^N of sum_i c_i a_i = b, as particular + kernel span.

    The kernel generators are independent: every solution is
    particular + sum_j t_j gen_j for a unique choice of 0 <= t_j < order_j.
    """

    modulus: int
    N: int
    particular: tuple[int, ...] | None
    kernel_basis: list[tuple[tuple[int, ...], int]] = dc_field(default_factory=list)

    @property
    def count(self) -> int:
        if self.particular is None:
            return 0
        return math.prod(order for _, order in self.kernel_basis)

    def __len__(self) -> int:
        return self.count

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        if self.particular is None:
            return
        M = self.modulus
        gens = [g for g, _ in self.kernel_basis]
        for ts in product(*(range(o) for _, o in self.kernel_basis)):
            c = list(self.particular)
            for t, g in zip(ts, gens):
                if t:
                    for i in range(self.N):
                        c[i] += t * g[i]
            yield tuple(x % M for x in c)

    def chunks(self, size: int | None = None) -> Iterator[np.ndarray]:
        """Members as int64 arrays of shape (<= size, N), in enumeration order."""
        if self.particular is None:
            return
        size = size or CHUNK
        M = self.modulus
        orders = [o for _, o in self.kernel_basis]
        G = np.array([g for g, _ in self.kernel_basis], dtype=np.int64).reshape(len(orders), self.N)
        base = np.array(self.particular, dtype=np.int64)
        total = self.count
        for start in range(0, total, size):
            idx = np.arange(start, min(start + size, total), dtype=np.int64)
            # mixed-radix digits, last coordinate fastest (lexicographic order)
            T = np.empty((len(idx), len(orders)), dtype=np.int64)
            for j in range(len(orders) - 1, -1, -1):
                idx, T[:, j] = np.divmod(idx, orders[j])
            yield (base + T @ G) % M


def solve_L_beta(inst: HypergeometricInstance) -> CharSolutionSet:
    """Parametrize L_beta = {chi : prod chi_i^{a_i} = beta} by exponent vectors.

    With U A^T V = D in Smith form and z = V^{-1} c, the system
    A^T c = b (mod q-1) decouples into d_i z_i = (U b)_i (mod q-1).
    """
    M = inst.field.order
    N, n = inst.N, inst.n
    At = [[inst.A[i][j] for i in range(N)] for j in range(n)]
    U, D, V = smith_normal_form(At)
    e = [x % M for x in matvec(U, inst.beta_exponents)]

    for i in range(N, n):
        if e[i] % M:
            return CharSolutionSet(M, N, None)

    z0 = [0] * N
    kernel = []
    for i in range(N):
        d = D[i][i] if i < n else 0
        rhs = e[i] if i < n else 0
        g = math.gcd(d, M)
        if rhs % g:
            return CharSolutionSet(M, N, None)
        if d:
            step = M // g
            z0[i] = (rhs // g) * pow(d // g, -1, step) % step if step > 1 else 0
        if g > 1:
            col = [V[r][i] * (M // g) % M for r in range(N)]
            kernel.append((tuple(col), g))
    particular = tuple(x % M for x in matvec(V, z0))
    return CharSolutionSet(M, N, particular, kernel)


def _lambda_logs(inst: HypergeometricInstance, lams: Sequence[Sequence]) -> np.ndarray:
    f = inst.field
    out = np.empty((len(lams), inst.N), dtype=np.int64)
    for r, lam in enumerate(lams):
        if len(lam) != inst.N:
            raise ValueError(f"lambda has length {len(lam)}, expected N = {inst.N}")
        for i, x in enumerate(lam):
            v = f.value_of(x)
            if v == 0:
                raise ZeroArgumentError("lambda entries must be nonzero")
            out[r, i] = f.log_table[v]
    return out


def _torus_chunks(M: int, n: int, size: int | None = None) -> Iterator[np.ndarray]:
    size = size or CHUNK
    total = M**n
    for start in range(0, total, size):
        idx = np.arange(start, min(start + size, total), dtype=np.int64)
        L = np.empty((len(idx), n), dtype=np.int64)
        for j in range(n - 1, -1, -1):
            idx, L[:, j] = np.divmod(idx, M)
        yield L


def S_A_histograms(
    inst: HypergeometricInstance, lams: Sequence[Sequence], twist=None
) -> np.ndarray:
    """Group-ring vectors (rows) of S_A(beta, lam) for each lam."""
    f = inst.field
    M, p = f.order, f.p
    m = p * M
    tr = twisted_trace_table(f, as_twist(f, twist).c)
    loglams = _lambda_logs(inst, lams)
    A = np.array(inst.A, dtype=np.int64)
    b = np.array(inst.beta_exponents, dtype=np.int64)
    hist = np.zeros((len(lams), m), dtype=np.int64)
    for L in _torus_chunks(M, inst.n):
        # log of x^{a_i} for every point, and exponent of conj(beta)(x)
        E = (L @ A.T) % M
        mult = (-(L @ b)) % M
        for r, ll in enumerate(loglams):
            s = tr[(E + ll) % M].sum(axis=1) % p
            hist[r] += np.bincount((p * mult + M * s) % m, minlength=m)
    return hist


def S_A_batch(inst: HypergeometricInstance, lams: Sequence[Sequence], twist=None) -> list[CycValue]:
    m = conductor(inst.field)
    return [CycValue.from_group_ring(m, h.tolist()) for h in S_A_histograms(inst, lams, twist)]


def S_A(inst: HypergeometricInstance, lam: Sequence, twist=None) -> CycValue:
    """sum over x in (F_q^*)^n of conj(beta)(x) Psi(sum_i lam_i x^{a_i})."""
    return S_A_batch(inst, [lam], twist)[0]


def _cyclic_conv_rows(P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    m = P.shape[1]
    idx = (np.arange(m)[None, :] - np.arange(m)[:, None]) % m  # idx[j, k] = k - j
    return np.einsum("bj,bjk->bk", P, Q[:, idx])


def F_A_histograms(
    inst: HypergeometricInstance,
    lams: Sequence[Sequence],
    twist=None,
    solutions: CharSolutionSet | None = None,
) -> np.ndarray:
    """Group-ring vectors of sum_{chi in L_beta} prod g(conj chi_i) chi_i(lam_i).

    The (q-1)^(n-N) prefactor is not applied here.
    """
    f = inst.field
    M, p = f.order, f.p
    m = p * M
    c = as_twist(f, twist).c
    sols = solve_L_beta(inst) if solutions is None else solutions
    loglams = _lambda_logs(inst, lams)
    # sum of |coefficients| of each product is at most (q-1)^N
    dtype = np.int64 if sols.count * M**inst.N < _INT64_SAFE else object
    hist = np.zeros((len(lams), m), dtype=dtype)
    ar = np.arange(m, dtype=np.int64)
    chunk = max(1, min(CHUNK, (1 << 22) // (m * m)))
    for C in sols.chunks(chunk):
        neg = (-C) % M
        ks, inv = np.unique(neg, return_inverse=True)
        G = np.stack([gauss_vector(f, c, int(k)) for k in ks]).astype(dtype)
        rows = G[inv.reshape(neg.shape)]  # (B, N, m)
        P = rows[:, 0, :]
        for i in range(1, inst.N):
            P = _cyclic_conv_rows(P, rows[:, i, :])
        for r, ll in enumerate(loglams):
            s = (C @ ll) % M
            np.add.at(hist[r], (ar[None, :] + p * s[:, None]) % m, P)
    return hist


def F_A_batch(
    inst: HypergeometricInstance, lams: Sequence[Sequence], twist=None
) -> list[CycValue]:
    m = conductor(inst.field)
    scale = Fraction(inst.field.order) ** (inst.n - inst.N)
    return [
        CycValue.from_group_ring(m, [int(x) for x in h]) * scale
        for h in F_A_histograms(inst, lams, twist)
    ]


def F_A(inst: HypergeometricInstance, lam: Sequence, twist=None) -> CycValue:
    """(q-1)^(n-N) sum_{chi in L_beta} g(conj chi_1)...g(conj chi_N) chi(lam)."""
    return F_A_batch(inst, [lam], twist)[0]


def fourier_coefficient(
    inst: HypergeometricInstance, rho: Sequence, twist=None
) -> CycValue:
    """Closed form of the coefficient of rho(lam) in the expansion of S_A."""
    f = inst.field
    M = f.order
    ks = [r.k if isinstance(r, MultChar) else int(r) % M for r in rho]
    if len(ks) != inst.N:
        raise ValueError(f"rho has length {len(ks)}, expected N = {inst.N}")
    m = conductor(f)
    for j in range(inst.n):
        if sum(ks[i] * inst.A[i][j] for i in range(inst.N)) % M != inst.beta[j].k:
            return CycValue.zero(m)
    value = CycValue.rational(m, Fraction(M) ** (inst.n - inst.N))
    for k in ks:
        value = value * gauss_sum(MultChar(f, -k), twist)
    return value


def fourier_coefficient_by_projection(
    inst: HypergeometricInstance, rho: Sequence, twist=None, s_values: dict | None = None
) -> CycValue:
    """(q-1)^(-N) sum_lam S_A(lam) conj(rho)(lam), by enumerating all lam."""
    f = inst.field
    M = f.order
    ks = [r.k if isinstance(r, MultChar) else int(r) % M for r in rho]
    lams = list(product(range(1, f.q), repeat=inst.N)) if s_values is None else list(s_values)
    if s_values is None:
        s_values = dict(zip(lams, S_A_batch(inst, lams, twist)))
    m = conductor(f)
    total = CycValue.zero(m)
    for lam, s in s_values.items():
        phase = sum(k * f.log_table[f.value_of(x)] for k, x in zip(ks, lam))
        total = total + s * _zeta(m, -f.p * phase)
    return total / Fraction(M) ** inst.N


def _zeta(m: int, e: int) -> CycValue:
    vec = [0] * m
    vec[e % m] = 1
    return CycValue.from_group_ring(m, vec)


# comparison with the finite field kFk-1 function

def _split_alphas(alphas: Sequence[MultChar]) -> int:
    if len(alphas) % 2 == 0 or not alphas:
        raise ValueError("need 2k-1 characters alpha_1..alpha_{2k-1}, k >= 1")
    return (len(alphas) + 1) // 2


def _signed_t(f: FieldDesc, t, k: int) -> int:
    tv = f.value_of(t)
    if tv == 0:
        raise ZeroArgumentError("t must be nonzero")
    return f.neg(tv) if k % 2 else tv


def normalization_C(alphas: Sequence[MultChar], twist=None) -> CycValue:
    """prod_{i<=k} g(alpha_i) * prod_{j>k} g(conj alpha_j)."""
    k = _split_alphas(alphas)
    value = gauss_sum(alphas[0], twist)
    for a in alphas[1:k]:
        value = value * gauss_sum(a, twist)
    for a in alphas[k:]:
        value = value * gauss_sum(a.conj(), twist)
    return value


def mccarthy_hypergeometric(alphas: Sequence[MultChar], t, twist=None) -> CycValue:
    """McCarthy's kFk-1(alpha | t), a single sum over the character group."""
    k = _split_alphas(alphas)
    f = alphas[0].field
    arg = _signed_t(f, t, k)
    m = conductor(f)
    total = CycValue.zero(m)
    for x in range(f.order):
        chi = MultChar(f, x)
        term = gauss_sum(chi.conj(), twist) * mult_char_eval(chi, arg)
        for a in alphas[:k]:
            term = term * gauss_sum(a * chi, twist)
        for a in alphas[k:]:
            term = term * gauss_sum(a.conj() * chi.conj(), twist)
        total = total + term
    return total / normalization_C(alphas, twist) / f.order


def dwork_loeser_instance(alphas: Sequence[MultChar]) -> HypergeometricInstance:
    """The (A, beta) whose A-hypergeometric function specializes to kFk-1."""
    k = _split_alphas(alphas)
    f = alphas[0].field
    n = 2 * k - 1
    rows = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rows.append(tuple([1] * k + [-1] * (k - 1)))
    beta = [a.conj() for a in alphas[:k]] + list(alphas[k:])
    return HypergeometricInstance(f, tuple(rows), tuple(beta))


def specialized_lambda(alphas: Sequence[MultChar], t) -> tuple[int, ...]:
    """lam = (1, ..., 1, (-1)^k t) as element encodings."""
    k = _split_alphas(alphas)
    f = alphas[0].field
    return (1,) * (2 * k - 1) + (_signed_t(f, t, k),)


def specialization_identity_check(alphas: Sequence[MultChar], t, twist=None) -> bool:
    """C * kFk-1(alpha | t) == S_A(beta, (1,...,1,(-1)^k t)) on the Dwork-Loeser instance."""
    inst = dwork_loeser_instance(alphas)
    lam = specialized_lambda(alphas, t)
    lhs = normalization_C(alphas, twist) * mccarthy_hypergeometric(alphas, t, twist)
    return lhs == S_A(inst, lam, twist)


def scale_lambda(f: FieldDesc, c, lam: Sequence) -> tuple[int, ...]:
    cv = f.value_of(c)
    return tuple(f.mul(cv, f.value_of(x)) for x in lam)
