"""Arithmetic in GF(2^n) on bit-packed polynomial-basis elements.

Elements are plain Python ints: bit i is the coefficient of x^i, so 0 is
the zero element and 1 the multiplicative identity. The interpretation is
carried by an immutable :class:`FieldCtx` passed to every operation, never
by the elements themselves. Addition is XOR; multiplication is carry-less
multiplication reduced by the context's irreducible modulus.

For n <= ``TABLE_MAX`` a discrete log/antilog table pair over the canonical
generator is built lazily and used to make scalar multiply, inverse and
powering O(1); the semantics are identical to the loop-based fallback used
above that bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import isqrt

import numpy as np

from . import _kernels
from .errors import (
    DegreeMismatch,
    DivisionByZero,
    NotADivisor,
    NotDivisible,
    ReducibleModulus,
    ZeroArgument,
)

#: largest degree for which log/antilog tables are built (8 MiB per table).
TABLE_MAX = 20

#: largest degree accepted by make_field.
DEGREE_MAX = 32


# ---------------------------------------------------------------------------
# polynomials over GF(2), packed as ints (bit i = coefficient of x^i)
# ---------------------------------------------------------------------------

def poly_degree(p: int) -> int:
    """Degree of a packed GF(2) polynomial (-1 for the zero polynomial)."""
    return p.bit_length() - 1


def _poly_mulmod(a: int, b: int, mod: int) -> int:
    d = poly_degree(mod)
    res = 0
    while b:
        if b & 1:
            res ^= a
        b >>= 1
        a <<= 1
        if (a >> d) & 1:
            a ^= mod
    return res


def _poly_gcd(a: int, b: int) -> int:
    while b:
        while a.bit_length() >= b.bit_length() and a:
            a ^= b << (a.bit_length() - b.bit_length())
        a, b = b, a
    return a


def _factorize(x: int) -> list[int]:
    """Distinct prime factors of x (trial division; fine for x < 2^64)."""
    primes = []
    for p in [2, 3]:
        if x % p == 0:
            primes.append(p)
            while x % p == 0:
                x //= p
    d = 5
    while d <= isqrt(x):
        for p in (d, d + 2):
            if x % p == 0:
                primes.append(p)
                while x % p == 0:
                    x //= p
        d += 6
    if x > 1:
        primes.append(x)
    return primes


def is_irreducible(p: int) -> bool:
    """Rabin irreducibility test for a packed GF(2) polynomial."""
    d = poly_degree(p)
    if d <= 0:
        return False
    if d == 1:
        return True
    if not (p & 1):
        return False  # divisible by x
    # x^(2^d) == x mod p, and gcd(x^(2^(d/q)) - x, p) == 1 for prime q | d
    t = 2
    powers = {}
    for i in range(1, d + 1):
        t = _poly_mulmod(t, t, p)
        powers[i] = t
    if powers[d] != 2:
        return False
    for q in _factorize(d):
        if _poly_gcd(powers[d // q] ^ 2, p) != 1:
            return False
    return True


def smallest_irreducible(n: int) -> int:
    """Smallest (as an integer bitmask) irreducible polynomial of degree n."""
    for p in range(1 << n, 1 << (n + 1)):
        if is_irreducible(p):
            return p
    raise AssertionError("unreachable: irreducibles exist in every degree")


# ---------------------------------------------------------------------------
# field context
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldCtx:
    """Immutable description of GF(2^n).

    Attributes
    ----------
    n : extension degree over GF(2), 2 <= n <= 32.
    modulus : packed irreducible polynomial of degree exactly n.

    When n is even the quadratic-tower constants m = n/2, q_minus = 2^m-1
    and q_plus = 2^m+1 are available; they are None for odd n.
    """

    n: int
    modulus: int

    @property
    def mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def red(self) -> int:
        """Modulus with the leading x^n term stripped (reduction value)."""
        return self.modulus & self.mask

    @property
    def group_order(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int | None:
        return self.n // 2 if self.n % 2 == 0 else None

    @property
    def q_minus(self) -> int | None:
        return (1 << self.m) - 1 if self.m is not None else None

    @property
    def q_plus(self) -> int | None:
        return (1 << self.m) + 1 if self.m is not None else None

    @cached_property
    def generator(self) -> int:
        """Canonical generator: smallest bitmask of multiplicative order 2^n-1."""
        order = self.group_order
        primes = _factorize(order)
        for g in range(2, 1 << self.n):
            if all(_pow_int(g, order // p, self.n, self.red) != 1 for p in primes):
                return g
        raise AssertionError("unreachable: the multiplicative group is cyclic")

    @cached_property
    def exp_log(self) -> tuple[np.ndarray, np.ndarray] | None:
        """(exp, log) tables over the canonical generator, or None if n > TABLE_MAX.

        exp[i] = g^i for 0 <= i < 2^n-1; log[exp[i]] = i, log[0] = -1.
        """
        if self.n > TABLE_MAX:
            return None
        exp = _kernels.exp_table(self.n, self.red, self.generator)
        log = np.empty(1 << self.n, dtype=np.int64)
        log[0] = -1
        log[exp] = np.arange(self.group_order, dtype=np.int64)
        return exp, log

    @cached_property
    def trace_mask(self) -> int:
        """Bitmask T with parity(x & T) = absolute trace of x (trace is GF(2)-linear)."""
        t = 0
        for i in range(self.n):
            if _trace_by_squaring(self, 1 << i):
                t |= 1 << i
        return t

    def to_hex(self) -> str:
        return hex(self.modulus)


def _pow_int(x: int, e: int, n: int, red: int) -> int:
    """Square-and-multiply x^e (e >= 0) without tables."""
    res = 1
    mask = (1 << n) - 1
    while e > 0:
        if e & 1:
            res = _mul_int(res, x, n, red, mask)
        e >>= 1
        if e:
            x = _mul_int(x, x, n, red, mask)
    return res


def _mul_int(a: int, b: int, n: int, red: int, mask: int) -> int:
    res = 0
    for _ in range(n):
        if b & 1:
            res ^= a
        b >>= 1
        carry = (a >> (n - 1)) & 1
        a = (a << 1) & mask
        if carry:
            a ^= red
    return res


def _trace_by_squaring(ctx: FieldCtx, x: int) -> int:
    acc = 0
    y = x
    for _ in range(ctx.n):
        acc ^= y
        y = mul(ctx, y, y)
    assert acc in (0, 1)
    return acc


def make_field(n: int, modulus: int | None = None) -> FieldCtx:
    """Build a GF(2^n) context, 2 <= n <= 32.

    With ``modulus=None`` the lexicographically smallest irreducible
    polynomial of degree n is selected, so contexts are reproducible
    across runs. A supplied modulus must have degree exactly n
    (:class:`DegreeMismatch`) and be irreducible (:class:`ReducibleModulus`).
    """
    if not 2 <= n <= DEGREE_MAX:
        raise ValueError(f"extension degree must be in [2, {DEGREE_MAX}], got {n}")
    if modulus is None:
        modulus = smallest_irreducible(n)
    else:
        if poly_degree(modulus) != n:
            raise DegreeMismatch(
                f"modulus {hex(modulus)} has degree {poly_degree(modulus)}, expected {n}"
            )
        if not is_irreducible(modulus):
            raise ReducibleModulus(f"modulus {hex(modulus)} factors over GF(2)")
    return FieldCtx(n=n, modulus=modulus)


def field_from_hex(n: int, hex_modulus: str) -> FieldCtx:
    """Build a context from a hexadecimal modulus string such as "0x13"."""
    return make_field(n, int(hex_modulus, 16))


# ---------------------------------------------------------------------------
# element operations (pure functions of (ctx, inputs))
# ---------------------------------------------------------------------------

def add(ctx: FieldCtx, a: int, b: int) -> int:
    """Field addition (= subtraction): XOR of coefficient masks."""
    return a ^ b


def mul(ctx: FieldCtx, a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    tables = ctx.exp_log
    if tables is not None:
        exp, log = tables
        return int(exp[(log[a] + log[b]) % ctx.group_order])
    return _mul_int(a, b, ctx.n, ctx.red, ctx.mask)


def square(ctx: FieldCtx, a: int) -> int:
    return mul(ctx, a, a)


def inv(ctx: FieldCtx, a: int) -> int:
    """Multiplicative inverse; raises DivisionByZero on 0."""
    if a == 0:
        raise DivisionByZero("0 has no multiplicative inverse")
    tables = ctx.exp_log
    if tables is not None:
        exp, log = tables
        return int(exp[(ctx.group_order - log[a]) % ctx.group_order])
    return _pow_int(a, ctx.group_order - 1, ctx.n, ctx.red)


def div(ctx: FieldCtx, a: int, b: int) -> int:
    return mul(ctx, a, inv(ctx, b))


def power(ctx: FieldCtx, x: int, e: int) -> int:
    """x^e for any integer e.

    For nonzero x the exponent is reduced mod 2^n-1 (negative exponents go
    through the inverse). For x = 0: 0^0 = 1, 0^e = 0 for e > 0, and e < 0
    raises DivisionByZero. The x=0 rules keep polynomial evaluation total.
    """
    if x == 0:
        if e == 0:
            return 1
        if e > 0:
            return 0
        raise DivisionByZero("0 cannot be raised to a negative power")
    e %= ctx.group_order
    tables = ctx.exp_log
    if tables is not None:
        exp, log = tables
        return int(exp[(log[x] * e) % ctx.group_order])
    return _pow_int(x, e, ctx.n, ctx.red)


def sqrt(ctx: FieldCtx, x: int) -> int:
    """The unique square root of x (squaring is a bijection in char 2)."""
    return power(ctx, x, 1 << (ctx.n - 1))


def frobenius(ctx: FieldCtx, x: int, j: int) -> int:
    """x^(2^j); j is taken mod n, so frobenius(x, n) = x."""
    return power(ctx, x, 1 << (j % ctx.n))


def trace_abs(ctx: FieldCtx, x: int) -> int:
    """Absolute trace Tr(x) = sum of x^(2^i) for 0 <= i < n, in {0, 1}."""
    return (x & ctx.trace_mask).bit_count() & 1


def trace_rel(ctx: FieldCtx, x: int, k: int) -> int:
    """Relative trace into GF(2^k): sum of x^(2^(k*i)) for 0 <= i < n/k.

    Requires k to divide n (:class:`NotADivisor`). The result lies in the
    degree-k subfield.
    """
    if k <= 0 or ctx.n % k != 0:
        raise NotADivisor(f"{k} does not divide {ctx.n}")
    acc = 0
    y = x
    for _ in range(ctx.n // k):
        acc ^= y
        y = frobenius(ctx, y, k)
    return acc


def multiplicative_order(ctx: FieldCtx, x: int) -> int:
    """Order of x in the multiplicative group; ZeroArgument on 0."""
    if x == 0:
        raise ZeroArgument("0 is not in the multiplicative group")
    order = ctx.group_order
    for p in _factorize(order):
        while order % p == 0 and power(ctx, x, order // p) == 1:
            order //= p
    return order


def cube_coset_index(ctx: FieldCtx, x: int) -> int:
    """Discrete log of x mod 3 with respect to the canonical generator.

    Defined when 3 divides 2^n-1 (every even n); 0 exactly on the cubes.
    """
    if ctx.group_order % 3 != 0:
        raise NotDivisible(f"3 does not divide 2^{ctx.n}-1")
    if x == 0:
        raise ZeroArgument("0 has no discrete log")
    tables = ctx.exp_log
    if tables is not None:
        _, log = tables
        return int(log[x]) % 3
    third = ctx.group_order // 3
    y = power(ctx, x, third)
    if y == 1:
        return 0
    a = power(ctx, ctx.generator, third)
    if y == a:
        return 1
    assert y == mul(ctx, a, a)
    return 2


def elements(ctx: FieldCtx) -> range:
    """All field elements in bitmask order."""
    return range(1 << ctx.n)
