"""GF(2^n) core arithmetic against independent oracles."""

import random

import pytest

from nihoperm import field as gf
from nihoperm.errors import (
    DegreeMismatch,
    DivisionByZero,
    NotADivisor,
    NotDivisible,
    ReducibleModulus,
    ZeroArgument,
)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def poly_mul_plain(a: int, b: int) -> int:
    res = 0
    i = 0
    while b >> i:
        if (b >> i) & 1:
            res ^= a << i
        i += 1
    return res


def poly_divides(d: int, p: int) -> bool:
    while p.bit_length() >= d.bit_length() and p:
        p ^= d << (p.bit_length() - d.bit_length())
    return p == 0


def irreducible_by_trial_division(p: int) -> bool:
    deg = p.bit_length() - 1
    if deg <= 0:
        return False
    for d in range(2, 1 << (deg // 2 + 1)):
        if d.bit_length() - 1 < 1:
            continue
        if poly_divides(d, p):
            return False
    return True


def brute_inverse(ctx, a: int) -> int:
    for y in gf.elements(ctx):
        if gf.mul(ctx, a, y) == 1:
            return y
    raise AssertionError


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def test_default_modulus_is_first_irreducible_in_lex_order():
    # oracle: ascending integer scan with trial-division irreducibility
    for n in range(2, 11):
        first = next(
            p for p in range(1 << n, 1 << (n + 1))
            if irreducible_by_trial_division(p)
        )
        assert gf.make_field(n).modulus == first


def test_default_modulus_f16(f16):
    assert f16.modulus == 0b10011  # x^4 + x + 1
    assert f16.to_hex() == "0x13"


def test_f4_unique_quadratic():
    ctx = gf.make_field(2, 0b111)
    assert ctx.modulus == 0b111


def test_reducible_modulus_rejected():
    # x^4 + x^2 + 1 = (x^2+x+1)^2
    assert not irreducible_by_trial_division(0b10101)
    with pytest.raises(ReducibleModulus):
        gf.make_field(4, 0b10101)


def test_quartic_cyclotomic_is_accepted():
    # x^4+x^3+x^2+x+1 is irreducible (2 has order 4 mod 5)
    assert irreducible_by_trial_division(0b11111)
    ctx = gf.make_field(4, 0b11111)
    assert ctx.modulus == 0b11111


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        gf.make_field(4, 0b111)


def test_degree_bounds():
    with pytest.raises(ValueError):
        gf.make_field(1)
    with pytest.raises(ValueError):
        gf.make_field(33)


def test_tower_constants(f16):
    assert (f16.m, f16.q_minus, f16.q_plus) == (2, 3, 5)
    assert f16.q_minus * f16.q_plus == f16.group_order == 15
    assert gf.make_field(3).m is None


def test_hex_roundtrip(f16):
    assert gf.field_from_hex(4, f16.to_hex()).modulus == f16.modulus


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

def test_omega_squared_in_f4():
    ctx = gf.make_field(2, 0b111)
    w = 0b10
    assert gf.mul(ctx, w, w) == w ^ 1  # omega^2 = omega + 1 forced by modulus


def test_inverse_of_x_in_f16(f16):
    assert brute_inverse(f16, 0b0010) == 0b1001
    assert gf.inv(f16, 0b0010) == 0b1001


def test_inverses_match_brute_force_everywhere(f16):
    for a in range(1, 16):
        assert gf.inv(f16, a) == brute_inverse(f16, a)


def test_inv_zero_raises(f16):
    with pytest.raises(DivisionByZero):
        gf.inv(f16, 0)


def test_pow_group_order(f256):
    for x in range(1, 1 << 8):
        assert gf.power(f256, x, f256.group_order) == 1


def test_pow_zero_base_conventions(f16):
    assert gf.power(f16, 0, 0) == 1
    assert gf.power(f16, 0, 5) == 0
    with pytest.raises(DivisionByZero):
        gf.power(f16, 0, -1)


def test_pow_negative_exponent(f16):
    for x in range(1, 16):
        assert gf.power(f16, x, -1) == gf.inv(f16, x)
        assert gf.power(f16, x, -7) == gf.inv(f16, gf.power(f16, x, 7))


def test_pow_frobenius_fixed_field():
    # x^(2^n) = x for every element, exhaustively
    for n in (2, 3, 4, 8, 16):
        ctx = gf.make_field(n)
        for x in gf.elements(ctx):
            assert gf.power(ctx, x, 1 << n) == x


@pytest.mark.parametrize("n", [4, 7, 8, 12])
def test_field_axioms_random(n):
    ctx = gf.make_field(n)
    rng = random.Random(12345 + n)
    size = 1 << n
    for _ in range(10_000):
        a = rng.randrange(size)
        b = rng.randrange(size)
        c = rng.randrange(size)
        assert a ^ a == 0  # additive self-inverse
        assert gf.mul(ctx, a, b) == gf.mul(ctx, b, a)
        assert gf.mul(ctx, gf.mul(ctx, a, b), c) == gf.mul(ctx, a, gf.mul(ctx, b, c))
        assert gf.mul(ctx, a, b ^ c) == gf.mul(ctx, a, b) ^ gf.mul(ctx, a, c)
        if a:
            assert gf.mul(ctx, a, gf.inv(ctx, a)) == 1


def test_scalar_mul_agrees_with_loop_fallback(f256):
    # the table path and the bit-serial loop implement the same product
    rng = random.Random(99)
    for _ in range(2000):
        a = rng.randrange(256)
        b = rng.randrange(256)
        assert gf.mul(f256, a, b) == gf._mul_int(a, b, 8, f256.red, f256.mask)


# ---------------------------------------------------------------------------
# traces and Frobenius
# ---------------------------------------------------------------------------

def naive_trace(ctx, x):
    acc = 0
    y = x
    for _ in range(ctx.n):
        acc ^= y
        y = gf.mul(ctx, y, y)
    return acc


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8, 12])
def test_trace_matches_naive_sum_exhaustively(n):
    ctx = gf.make_field(n)
    for x in gf.elements(ctx):
        assert gf.trace_abs(ctx, x) == naive_trace(ctx, x)


def test_trace_of_zero_and_omega():
    ctx = gf.make_field(2, 0b111)
    assert gf.trace_abs(ctx, 0) == 0
    assert gf.trace_abs(ctx, 0b10) == 1  # omega + omega^2 = 1


def test_trace_frobenius_invariant(f256):
    rng = random.Random(5)
    for _ in range(200):
        x = rng.randrange(256)
        assert gf.trace_abs(f256, gf.square(f256, x)) == gf.trace_abs(f256, x)


def test_trace_rel_identity_and_transitivity(f256):
    rng = random.Random(6)
    for _ in range(100):
        x = rng.randrange(256)
        assert gf.trace_rel(f256, x, 8) == x
        for k in (1, 2, 4):
            y = gf.trace_rel(f256, x, k)
            # fold the intermediate trace down to GF(2) by hand
            acc, t = 0, y
            for _ in range(k):
                acc ^= t
                t = gf.square(f256, t)
            assert acc == gf.trace_abs(f256, x)


def test_trace_rel_lands_in_subfield(f16):
    for x in gf.elements(f16):
        y = gf.trace_rel(f16, x, 2)
        assert y == gf.power(f16, y, 4)  # fixed by x -> x^4, i.e. in GF(4)
        assert y == gf.power(f16, x, 4) ^ x  # definition: x + x^4


def test_trace_rel_divisor_check(f16):
    with pytest.raises(NotADivisor):
        gf.trace_rel(f16, 1, 3)


def test_frobenius_basics(f16):
    rng = random.Random(7)
    for _ in range(100):
        x = rng.randrange(16)
        y = rng.randrange(16)
        assert gf.frobenius(f16, x, 0) == x
        assert gf.frobenius(f16, x ^ y, 3) == gf.frobenius(f16, x, 3) ^ gf.frobenius(f16, y, 3)
    for x in gf.elements(f16):
        assert gf.frobenius(f16, x, 4) == x


# ---------------------------------------------------------------------------
# generator and cube cosets
# ---------------------------------------------------------------------------

def brute_order(ctx, x):
    y = x
    k = 1
    while y != 1:
        y = gf.mul(ctx, y, x)
        k += 1
    return k


def test_canonical_generator_is_smallest_primitive(f16, f256):
    for ctx in (f16, f256):
        expected = next(
            g for g in range(2, 1 << ctx.n)
            if brute_order(ctx, g) == ctx.group_order
        )
        assert ctx.generator == expected
        assert gf.multiplicative_order(ctx, ctx.generator) == ctx.group_order


def test_cube_coset_basics(f16):
    assert gf.cube_coset_index(f16, 1) == 0
    assert gf.cube_coset_index(f16, f16.generator) == 1
    rng = random.Random(8)
    for _ in range(200):
        y = rng.randrange(1, 16)
        assert gf.cube_coset_index(f16, gf.power(f16, y, 3)) == 0


def test_cube_coset_homomorphism(f256):
    rng = random.Random(9)
    for _ in range(300):
        x = rng.randrange(1, 256)
        y = rng.randrange(1, 256)
        assert (
            gf.cube_coset_index(f256, gf.mul(f256, x, y))
            == (gf.cube_coset_index(f256, x) + gf.cube_coset_index(f256, y)) % 3
        )


def test_cube_coset_errors(f16):
    with pytest.raises(ZeroArgument):
        gf.cube_coset_index(f16, 0)
    odd = gf.make_field(3)
    with pytest.raises(NotDivisible):
        gf.cube_coset_index(odd, 1)
