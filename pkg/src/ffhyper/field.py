"""Deterministic construction of F_q, q = p^a, with log tables and trace.

Elements are encoded as integers  v = sum_i c_i p^i  where c_i are the
coefficients of the polynomial representative (constant term first). The
modulus is the monic irreducible polynomial of degree a with the smallest
encoding, and the generator is the primitive element with the smallest
encoding. These are not Conway polynomials; the choice is made purely for
reproducibility.
"""

from __future__ import annotations

import os
from functools import lru_cache
from typing import Iterator, Sequence

DEFAULT_QMAX = 2**20


class FieldSizeError(ValueError):
    """Requested field exceeds the configured size bound."""


class ZeroArgumentError(ValueError):
    """A nonzero field element was required."""


def qmax() -> int:
    env = os.environ.get("FFHYPER_QMAX")
    return int(env) if env else DEFAULT_QMAX


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^a; raises ValueError if q is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    a, r = 0, q
    while r % p == 0:
        r //= p
        a += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, a


# polynomials over Z/p: coefficient lists, constant term first, no trailing zeros

def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _polymod(f: list[int], g: list[int], p: int) -> list[int]:
    f = _trim([c % p for c in f])
    dg = len(g) - 1
    inv_lead = pow(g[-1], -1, p)
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv_lead % p
        shift = len(f) - 1 - dg
        for i, gc in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gc) % p
        _trim(f)
    return f


def _polymul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _polymulmod(f: list[int], g: list[int], mod: list[int], p: int) -> list[int]:
    return _polymod(_polymul(f, g, p), mod, p)


def _polypowmod(f: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _polymod(f, mod, p)
    while e:
        if e & 1:
            result = _polymulmod(result, base, mod, p)
        base = _polymulmod(base, base, mod, p)
        e >>= 1
    return result


def _polygcd(f: list[int], g: list[int], p: int) -> list[int]:
    f, g = _trim([c % p for c in f]), _trim([c % p for c in g])
    while g:
        f, g = g, _polymod(f, g, p)
    return f


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Exact irreducibility test for a polynomial over Z/p.

    f has degree d; it is irreducible iff gcd(f, x^(p^i) - x) = 1 for all
    1 <= i <= d/2.
    """
    f = _trim([c % p for c in f])
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    h = [0, 1]
    for _ in range(d // 2):
        h = _polypowmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_polygcd(f, _trim(diff), p)) > 1:
            return False
    return True


def _encode(coeffs: Sequence[int], p: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


def _decode(v: int, p: int, a: int) -> list[int]:
    out = []
    for _ in range(a):
        v, c = divmod(v, p)
        out.append(c)
    return out


class FieldDesc:
    """A constructed finite field F_q; immutable after construction.

    Elements are handled internally as integer encodings; use
    :meth:`element` to get a :class:`FieldElement` wrapper.
    """

    def __init__(self, p: int, a: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if a < 1:
            raise ValueError("extension degree must be >= 1")
        q = p**a
        if q > qmax():
            raise FieldSizeError(f"q = {q} exceeds bound {qmax()}")
        self.p = p
        self.a = a
        self.q = q
        self.order = q - 1
        self.modulus = tuple(self._find_modulus())
        self.generator_value = self._find_generator()
        self._build_tables()

    def _find_modulus(self) -> list[int]:
        p, a = self.p, self.a
        for low in range(p**a):
            f = _decode(low, p, a) + [1]
            if is_irreducible(f, p):
                return f
        raise AssertionError("no irreducible polynomial found")  # unreachable

    def _find_generator(self) -> int:
        p, a, order = self.p, self.a, self.q - 1
        mod = list(self.modulus)
        if order == 1:
            return 1
        cofactors = [order // ell for ell in prime_factors(order)]
        for v in range(1, self.q):
            g = _trim(_decode(v, p, a))
            if all(_polypowmod(g, e, mod, p) != [1] for e in cofactors):
                return v
        raise AssertionError("no generator found")  # unreachable

    def _build_tables(self) -> None:
        p, a, q = self.p, self.a, self.q
        mod = list(self.modulus)
        gen = _trim(_decode(self.generator_value, p, a))
        exp_table = [0] * self.order
        log_table = [-1] * q
        cur = [1]
        for j in range(self.order):
            v = _encode(cur, p)
            if log_table[v] != -1:
                raise AssertionError("generator is not primitive")
            exp_table[j] = v
            log_table[v] = j
            cur = _polymulmod(cur, gen, mod, p)
        self.exp_table = tuple(exp_table)
        self.log_table = tuple(log_table)
        # traces of the basis monomials x^i; trace is F_p-linear
        basis_traces = []
        for i in range(a):
            y = p**i
            acc = 0
            for j in range(a):
                acc = self.add(acc, self.pow(y, p**j))
            if acc >= p:
                raise AssertionError("trace left the prime field")
            basis_traces.append(acc)
        self.basis_traces = tuple(basis_traces)

    # encodings

    def value_of(self, x) -> int:
        """Integer encoding of an element given as int, coefficient list or FieldElement."""
        if isinstance(x, FieldElement):
            if x.field is not self and x.field != self:
                raise ValueError("element belongs to a different field")
            return x.value
        if isinstance(x, int):
            if self.a == 1:
                return x % self.p
            if not 0 <= x < self.q:
                raise ValueError(f"encoding {x} out of range for q = {self.q}")
            return x
        coeffs = list(x)
        if len(coeffs) > self.a:
            raise ValueError(f"too many coefficients for degree {self.a}")
        return _encode([int(c) % self.p for c in coeffs], self.p)

    def element(self, x) -> FieldElement:
        return FieldElement(self, self.value_of(x))

    def coeffs(self, v: int) -> list[int]:
        return _decode(v, self.p, self.a)

    @property
    def generator(self) -> FieldElement:
        return FieldElement(self, self.generator_value)

    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> Iterator[FieldElement]:
        for v in range(self.q):
            yield FieldElement(self, v)

    def units(self) -> Iterator[FieldElement]:
        for v in range(1, self.q):
            yield FieldElement(self, v)

    # raw arithmetic on encodings

    def add(self, u: int, v: int) -> int:
        p = self.p
        if p == 2:
            return u ^ v
        out, scale = 0, 1
        while u or v:
            u, cu = divmod(u, p)
            v, cv = divmod(v, p)
            out += ((cu + cv) % p) * scale
            scale *= p
        return out

    def neg(self, u: int) -> int:
        p = self.p
        if p == 2:
            return u
        out, scale = 0, 1
        while u:
            u, c = divmod(u, p)
            out += (-c % p) * scale
            scale *= p
        return out

    def mul(self, u: int, v: int) -> int:
        if u == 0 or v == 0:
            return 0
        return self.exp_table[(self.log_table[u] + self.log_table[v]) % self.order]

    def inv(self, u: int) -> int:
        if u == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp_table[-self.log_table[u] % self.order]

    def pow(self, u: int, e: int) -> int:
        if u == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self.exp_table[self.log_table[u] * e % self.order]

    def log(self, u: int) -> int:
        if u == 0:
            raise ZeroArgumentError("discrete log of zero")
        return self.log_table[u]

    def trace_value(self, u: int) -> int:
        p = self.p
        t = 0
        for tb in self.basis_traces:
            u, c = divmod(u, p)
            t += c * tb
        return t % p

    # serialization / identity

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "a": self.a,
            "modulus": list(self.modulus),
            "generator": self.coeffs(self.generator_value),
        }

    def _key(self) -> tuple:
        return (self.p, self.a, self.modulus, self.generator_value)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldDesc):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"FieldDesc(p={self.p}, a={self.a})"


class FieldElement:
    """An element of a :class:`FieldDesc`, stored as its integer encoding."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldDesc, value: int):
        self.field = field
        self.value = value

    @property
    def coeffs(self) -> list[int]:
        return self.field.coeffs(self.value)

    def _other(self, other) -> int:
        return self.field.value_of(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __sub__(self, other):
        return self + (-self.field.element(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        return self * self.field.element(other).inverse()

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def log(self) -> int:
        return self.field.log(self.value)

    def trace(self) -> int:
        return self.field.trace_value(self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field == other.field
        if isinstance(other, (int, list, tuple)):
            try:
                return self.value == self.field.value_of(other)
            except ValueError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.a, self.value))

    def __repr__(self) -> str:
        return f"FieldElement({self.coeffs}, q={self.field.q})"


@lru_cache(maxsize=32)
def _cached_field(p: int, a: int) -> FieldDesc:
    return FieldDesc(p, a)


def build_field(p: int, a: int = 1) -> FieldDesc:
    """Construct (or fetch the cached) F_{p^a}."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if a < 1:
        raise ValueError("extension degree must be >= 1")
    if p**a > qmax():
        raise FieldSizeError(f"q = {p**a} exceeds bound {qmax()}")
    return _cached_field(p, a)


def field_of_order(q: int) -> FieldDesc:
    p, a = prime_power(q)
    return build_field(p, a)


def element_op(f: FieldDesc, kind: str, x, y=None) -> FieldElement:
    u = f.value_of(x)
    if kind == "add":
        return FieldElement(f, f.add(u, f.value_of(y)))
    if kind == "mul":
        return FieldElement(f, f.mul(u, f.value_of(y)))
    if kind == "neg":
        return FieldElement(f, f.neg(u))
    if kind == "inv":
        return FieldElement(f, f.inv(u))
    if kind == "pow":
        return FieldElement(f, f.pow(u, int(y)))
    raise ValueError(f"unknown element op {kind!r}")


def discrete_log(f: FieldDesc, x) -> int:
    return f.log(f.value_of(x))


def trace(f: FieldDesc, x) -> int:
    return f.trace_value(f.value_of(x))
