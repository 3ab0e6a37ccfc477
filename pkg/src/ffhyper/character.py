"""Multiplicative and additive characters of F_q, and Gauss sums.

Every character value is taken in Q(zeta_m) with m = p(q-1). Since
gcd(p, q-1) = 1, zeta_{q-1} = zeta_m^p and zeta_p = zeta_m^(q-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .field import FieldDesc, ZeroArgumentError
from .value import CycValue


def conductor(f: FieldDesc) -> int:
    return f.p * f.order


@dataclass(frozen=True)
class MultChar:
    """chi_k: generator^j -> zeta_{q-1}^(k j)."""

    field: FieldDesc
    k: int

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % self.field.order)

    def is_trivial(self) -> bool:
        return self.k == 0

    def __mul__(self, other: MultChar) -> MultChar:
        return MultChar(self.field, self.k + other.k)

    def __pow__(self, e: int) -> MultChar:
        return MultChar(self.field, self.k * e)

    def conj(self) -> MultChar:
        return MultChar(self.field, -self.k)

    def __call__(self, x) -> CycValue:
        return mult_char_eval(self, x)

    def __repr__(self) -> str:
        return f"MultChar(k={self.k}, q={self.field.q})"


@dataclass(frozen=True)
class AddCharTwist:
    """Selects Psi_c(x) = zeta_p^Tr(c x); c = 1 is the default character."""

    c: int = 1  # element encoding, nonzero

    def __post_init__(self):
        if self.c == 0:
            raise ZeroArgumentError("additive character twist must be nonzero")


STANDARD_TWIST = AddCharTwist(1)


def as_twist(f: FieldDesc, twist) -> AddCharTwist:
    """Accept None, an AddCharTwist, or anything FieldDesc.value_of understands."""
    if twist is None:
        return STANDARD_TWIST
    if isinstance(twist, AddCharTwist):
        return twist
    return AddCharTwist(f.value_of(twist))


def mult_char_eval(chi: MultChar, x) -> CycValue:
    f = chi.field
    v = f.value_of(x)
    if v == 0:
        raise ZeroArgumentError("multiplicative character evaluated at zero")
    m = conductor(f)
    vec = [0] * m
    vec[f.p * chi.k * f.log_table[v] % m] = 1
    return CycValue.from_group_ring(m, vec)


def additive_char_eval(f: FieldDesc, twist, x) -> CycValue:
    c = as_twist(f, twist).c
    m = conductor(f)
    vec = [0] * m
    vec[f.order * f.trace_value(f.mul(c, f.value_of(x))) % m] = 1
    return CycValue.from_group_ring(m, vec)


@lru_cache(maxsize=64)
def twisted_trace_table(f: FieldDesc, c: int) -> np.ndarray:
    """Entry j is Tr(c * generator^j) for 0 <= j < q-1."""
    return np.array([f.trace_value(f.mul(c, g)) for g in f.exp_table], dtype=np.int64)


@lru_cache(maxsize=4096)
def gauss_vector(f: FieldDesc, c: int, k: int) -> np.ndarray:
    """Group-ring vector of the Gauss sum g(chi_k) for twist c.

    Entry e counts the x in F_q^* with chi_k(x) Psi_c(x) = zeta_m^e. The
    cache fill is idempotent, so concurrent readers at worst compute the
    same row twice.
    """
    M, p = f.order, f.p
    m = p * M
    j = np.arange(M, dtype=np.int64)
    e = (p * (k % M) * j + M * twisted_trace_table(f, c)) % m
    row = np.bincount(e, minlength=m).astype(np.int64)
    row.setflags(write=False)
    return row


def gauss_sum(chi: MultChar, twist=None) -> CycValue:
    """sum over x in F_q^* of chi(x) Psi_c(x)."""
    f = chi.field
    c = as_twist(f, twist).c
    return CycValue.from_group_ring(conductor(f), gauss_vector(f, c, chi.k).tolist())


def twist_relation_check(chi: MultChar, c) -> bool:
    """Check g_c(chi) == conj(chi)(c) * g_1(chi) exactly."""
    f = chi.field
    cv = f.value_of(c)
    if cv == 0:
        raise ZeroArgumentError("twist must be nonzero")
    lhs = gauss_sum(chi, AddCharTwist(cv))
    rhs = mult_char_eval(chi.conj(), cv) * gauss_sum(chi, STANDARD_TWIST)
    return lhs == rhs


def _histogram_value(f: FieldDesc, zeta_q1_exponents: np.ndarray) -> CycValue:
    m = conductor(f)
    e = (f.p * zeta_q1_exponents) % m
    return CycValue.from_group_ring(m, np.bincount(e, minlength=m).tolist())


def _torus_logs(f: FieldDesc, dim: int) -> np.ndarray:
    """All points of (Z/(q-1))^dim, one per row, i.e. discrete logs of (F_q^*)^dim."""
    M = f.order
    grids = np.indices((M,) * dim, dtype=np.int64).reshape(dim, -1)
    return grids.T


def character_sum_over_torus(chars: Sequence[MultChar]) -> CycValue:
    """sum over lam in (F_q^*)^N of chi_1(lam_1)...chi_N(lam_N), by enumeration."""
    f = chars[0].field
    ks = np.array([c.k for c in chars], dtype=np.int64)
    L = _torus_logs(f, len(chars))
    return _histogram_value(f, (L @ ks) % f.order)


def monomial_character_sum(
    f: FieldDesc, A: Sequence[Sequence[int]], rho: Sequence[int], beta: Sequence[int]
) -> CycValue:
    """sum over x in (F_q^*)^n of prod_i rho_i(x^{a_i}) * conj(beta)(x), by enumeration.

    A is N x n (rows a_i), rho has length N, beta has length n; all given as
    exponents mod q-1.
    """
    M = f.order
    A = np.array(A, dtype=np.int64).reshape(len(rho), -1)
    n = A.shape[1]
    L = _torus_logs(f, n)
    # exponent of zeta_{q-1} contributed by rho_i(x^{a_i}) is rho_i * <a_i, log x>
    e = (L @ A.T % M) @ np.array(rho, dtype=np.int64) - L @ np.array(beta, dtype=np.int64)
    return _histogram_value(f, e % M)


def all_characters(f: FieldDesc, count: int):
    for ks in product(range(f.order), repeat=count):
        yield tuple(MultChar(f, k) for k in ks)
