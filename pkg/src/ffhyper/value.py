"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A :class:`CycValue` is stored as an integer numerator vector in the power
basis 1, z, ..., z^(phi(m)-1) reduced modulo the m-th cyclotomic polynomial,
together with one shared positive denominator.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


def _divisors(m: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    # integer polynomials, constant term first, den monic
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, constant term first."""
    if m < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        poly = _poly_exact_div(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def euler_phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


@lru_cache(maxsize=None)
def reduction_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row i holds the power-basis coordinates of z^i mod Phi_m, 0 <= i < m."""
    phi_poly = cyclotomic_poly(m)
    deg = len(phi_poly) - 1
    rows = []
    cur = [0] * deg
    if deg:
        cur[0] = 1
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by z and reduce
        top = cur[-1] if deg else 0
        cur = [0] + cur[:-1] if deg else []
        if top:
            cur = [c - top * f for c, f in zip(cur, phi_poly[:deg])]
    return tuple(rows)


def _reduce_group_ring(m: int, vec: Iterable[int]) -> list[int]:
    """Map sum_i vec[i] z^i (exponents mod m) to power-basis coordinates."""
    table = reduction_table(m)
    deg = euler_phi(m)
    out = [0] * deg
    for i, c in enumerate(vec):
        if c:
            row = table[i % m]
            for j in range(deg):
                if row[j]:
                    out[j] += c * row[j]
    return out


class CycValue:
    """An element of Q(zeta_m) in canonical reduced form.

    Two values at the same conductor are equal iff their coefficient lists
    and denominators match. Values at different conductors are compared
    (and combined) after lifting both to the lcm of the conductors.
    """

    __slots__ = ("m", "coeffs", "den")

    def __init__(self, m: int, coeffs: Sequence[int], den: int = 1):
        if m < 1:
            raise ValueError("conductor must be positive")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        deg = euler_phi(m)
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) > deg:
            # not yet reduced: treat as a polynomial in z
            coeffs = _reduce_group_ring(m, coeffs + [0] * (-len(coeffs) % m))
        coeffs += [0] * (deg - len(coeffs))
        den = int(den)
        if den < 0:
            den, coeffs = -den, [-c for c in coeffs]
        g = math.gcd(den, *coeffs)
        if g > 1:
            den //= g
            coeffs = [c // g for c in coeffs]
        self.m = m
        self.coeffs = tuple(coeffs)
        self.den = den

    # construction

    @classmethod
    def zero(cls, m: int = 1) -> CycValue:
        return cls(m, [])

    @classmethod
    def rational(cls, m: int, value: int | Fraction) -> CycValue:
        value = Fraction(value)
        deg = euler_phi(m)
        return cls(m, [value.numerator] + [0] * (deg - 1), value.denominator)

    @classmethod
    def from_group_ring(cls, m: int, vec: Iterable[int], den: int = 1) -> CycValue:
        """Build sum_i vec[i] * zeta_m^i / den; indices are taken mod m."""
        return cls(m, _reduce_group_ring(m, vec), den)

    # predicates / views

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.coeffs[0] if self.coeffs else 0, self.den)

    def to_complex(self) -> complex:
        total = 0j
        for i, c in enumerate(self.coeffs):
            if c:
                total += c * cmath.exp(2j * math.pi * i / self.m)
        return total / self.den

    def to_json(self) -> dict:
        return {"m": self.m, "den": self.den, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> CycValue:
        return cls(int(data["m"]), [int(c) for c in data["coeffs"]], int(data.get("den", 1)))

    # conductor changes

    def lift(self, big_m: int) -> CycValue:
        """Re-express in the basis of Q(zeta_M), M a multiple of m."""
        if big_m == self.m:
            return self
        if big_m % self.m:
            raise ValueError(f"conductor {self.m} does not divide {big_m}")
        step = big_m // self.m
        vec = [0] * big_m
        for i, c in enumerate(self.coeffs):
            vec[i * step] += c
        return CycValue.from_group_ring(big_m, vec, self.den)

    def normalize_conductor(self) -> CycValue:
        """Return the same number at the smallest conductor dividing m that holds it."""
        for d in _divisors(self.m):
            if d == self.m:
                return self
            if self.m % d:
                continue
            # try to write self as a polynomial in zeta_m^(m/d)
            candidate = self._try_descend(d)
            if candidate is not None:
                return candidate
        return self

    def _try_descend(self, d: int) -> CycValue | None:
        # group-ring representations are not unique, so solve over Q against
        # the lifted power basis of Q(zeta_d)
        step = self.m // d
        basis = [
            CycValue.from_group_ring(self.m, [0] * (i * step) + [1]) for i in range(euler_phi(d))
        ]
        sol = _solve_rational(basis, self)
        if sol is None:
            return None
        common = math.lcm(*(f.denominator for f in sol)) if sol else 1
        return CycValue(d, [int(f * common) for f in sol], common)

    # arithmetic

    def _coerce(self, other) -> tuple[CycValue, CycValue]:
        if isinstance(other, CycValue):
            if other.m == self.m:
                return self, other
            big = math.lcm(self.m, other.m)
            return self.lift(big), other.lift(big)
        if isinstance(other, (int, Fraction)):
            return self, CycValue.rational(self.m, other)
        return NotImplemented, NotImplemented

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        den = a.den * b.den // math.gcd(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        return CycValue(a.m, [x * fa + y * fb for x, y in zip(a.coeffs, b.coeffs)], den)

    __radd__ = __add__

    def __neg__(self) -> CycValue:
        return CycValue(self.m, [-c for c in self.coeffs], self.den)

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return CycValue(
                self.m, [c * other.numerator for c in self.coeffs], self.den * other.denominator
            )
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        m = a.m
        vec = [0] * m
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        vec[(i + j) % m] += x * y
        return CycValue.from_group_ring(m, vec, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / other)
        if isinstance(other, CycValue):
            # only divisors with rational absolute square are supported
            norm = other * other.conj()
            if not norm.is_rational():
                raise ValueError("division requires a divisor with rational |v|^2")
            r = norm.as_rational()
            if r == 0:
                raise ZeroDivisionError("division by zero")
            return self * other.conj() * (1 / r)
        return NotImplemented

    def conj(self) -> CycValue:
        """Complex conjugate, i.e. the automorphism zeta_m -> zeta_m^-1."""
        m = self.m
        vec = [0] * m
        for i, c in enumerate(self.coeffs):
            vec[-i % m] += c
        return CycValue.from_group_ring(m, vec, self.den)

    def __pow__(self, e: int) -> CycValue:
        if e < 0:
            return CycValue.rational(self.m, 1) / (self ** (-e))
        result = CycValue.rational(self.m, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycValue.rational(self.m, other)
        if not isinstance(other, CycValue):
            return NotImplemented
        a, b = self._coerce(other)
        return a.coeffs == b.coeffs and a.den == b.den

    def __hash__(self) -> int:
        # hash on the minimal-conductor form so equal values hash equally
        v = self.normalize_conductor()
        return hash((v.m, v.coeffs, v.den))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z{self.m}^{i}")
        body = " + ".join(terms) or "0"
        if self.den != 1:
            body = f"({body})/{self.den}"
        return f"CycValue({body})"


def _solve_rational(basis: list[CycValue], target: CycValue) -> list[Fraction] | None:
    """Solve sum_i x_i basis[i] = target over Q; None if inconsistent."""
    deg = len(target.coeffs)
    k = len(basis)
    rows = [
        [Fraction(basis[j].coeffs[r], basis[j].den) for j in range(k)]
        + [Fraction(target.coeffs[r], target.den)]
        for r in range(deg)
    ]
    pivots = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, deg) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(deg):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    sol = [Fraction(0)] * k
    for i, col in enumerate(pivots):
        sol[col] = rows[i][-1]
    return sol


def root_of_unity(m: int, k: int) -> CycValue:
    """zeta_m^k in canonical form."""
    if m < 1:
        raise ValueError("conductor must be positive")
    vec = [0] * m
    vec[k % m] = 1
    return CycValue.from_group_ring(m, vec)


def value_op(kind: str, u: CycValue, v) -> CycValue:
    """Dispatch add / mul / neg / scalar_div on cyclotomic values."""
    if kind == "add":
        return u + v
    if kind == "mul":
        return u * v
    if kind == "neg":
        return -u
    if kind == "scalar_div":
        if isinstance(v, CycValue):
            v = v.as_rational()
        return u / Fraction(v)
    raise ValueError(f"unknown value op {kind!r}")


def to_complex(u: CycValue) -> tuple[float, float]:
    z = u.to_complex()
    return z.real, z.imag
