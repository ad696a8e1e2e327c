"""Engine behavior: exhaustive scan, subgroup checks, cross-validation."""

import json
import random

import pytest

from nihoperm import field as gf
from nihoperm import niho
from nihoperm import permcheck as pc
from nihoperm import tower as tw
from nihoperm.errors import BadFactorization, FieldTooLarge
from nihoperm.niho import NihoPair, TrinomialSpec


def brute_is_permutation(ctx, spec):
    return len({spec.evaluate(x) for x in gf.elements(ctx)}) == 1 << ctx.n


# ---------------------------------------------------------------------------
# exhaustive engine
# ---------------------------------------------------------------------------

def test_identity_and_square_are_permutations(f16):
    for terms in ([(1, 1)], [(1, 2)]):
        rep = pc.is_permutation_exhaustive(f16, TrinomialSpec.make(f16, terms))
        assert rep.is_permutation
        assert rep.evaluations == 16
        assert rep.counterexample is None


def test_known_pair_m2(tower2):
    # (s,t) = (2, 2^m) = (2,-1) holds for every m
    spec = niho.pair_to_trinomial(tower2, NihoPair(2, 2, 4))
    assert pc.is_permutation_exhaustive(tower2.field, spec).is_permutation


def test_cube_is_not_permutation_with_valid_counterexample(f16):
    spec = TrinomialSpec.make(f16, [(1, 3)])
    assert not brute_is_permutation(f16, spec)
    rep = pc.is_permutation_exhaustive(f16, spec)
    assert not rep.is_permutation
    x, y = rep.counterexample
    assert x < y
    assert spec.evaluate(x) == spec.evaluate(y)


def test_counterexample_is_canonical_first_repeat(f16):
    spec = TrinomialSpec.make(f16, [(1, 3)])
    images = [spec.evaluate(x) for x in gf.elements(f16)]
    first_y = next(
        y for y in range(16) if images[y] in images[:y]
    )
    partner = images.index(images[first_y])
    rep = pc.is_permutation_exhaustive(f16, spec)
    assert rep.counterexample == (partner, first_y)


@pytest.mark.parametrize("chunk_bits", [2, 3, 20])
@pytest.mark.parametrize("threads", [1, 4])
def test_exhaustive_deterministic_across_chunking_and_threads(
    f16, monkeypatch, chunk_bits, threads
):
    monkeypatch.setattr(pc, "_CHUNK_BITS", chunk_bits)
    spec = TrinomialSpec.make(f16, [(1, 3)])
    rep = pc.is_permutation_exhaustive(f16, spec, threads=threads)
    assert rep.counterexample == (1, 6)
    good = niho.pair_to_trinomial(tw.tower_over(f16), NihoPair(2, 2, 4))
    assert pc.is_permutation_exhaustive(f16, good, threads=threads).is_permutation


def test_exhaustive_without_tables(f16, monkeypatch):
    # force the generic kernel path by hiding the log tables
    ctx = gf.FieldCtx(n=4, modulus=f16.modulus)
    ctx.__dict__["exp_log"] = None
    for terms, expected in ([(1, 3)], False), ([(1, 2)], True):
        spec = TrinomialSpec.make(ctx, terms)
        rep = pc.is_permutation_exhaustive(ctx, spec)
        assert rep.is_permutation == expected


def test_exhaustive_coefficient_terms(f256):
    # a non-trivial coefficient polynomial: a*x^2 is a bijection for a != 0
    spec = TrinomialSpec.make(f256, [(7, 2)])
    assert pc.is_permutation_exhaustive(f256, spec).is_permutation


def test_field_too_large():
    ctx = gf.make_field(30)
    with pytest.raises(FieldTooLarge):
        pc.is_permutation_exhaustive(ctx, TrinomialSpec.make(ctx, [(1, 1)]))


def test_report_json_schema(tower2):
    rep = pc.unit_circle_check(tower2, NihoPair(2, 2, 4))
    data = json.loads(rep.to_json())
    assert data["method"] == "unit_circle"
    assert data["is_permutation"] is True
    assert data["evaluations"] == 5
    assert data["counterexample"] is None
    assert data["pair"] == {"m": 2, "s": 2, "t": 4}
    assert isinstance(data["elapsed_ms"], float)


# ---------------------------------------------------------------------------
# subgroup criterion
# ---------------------------------------------------------------------------

def test_zieve_constant_h(f16):
    one = TrinomialSpec.make(f16, [(1, 0)])
    assert pc.zieve_check(f16, 1, 3, one)  # x itself
    assert pc.zieve_check(f16, 2, 3, one)  # x^2
    assert not pc.zieve_check(f16, 3, 3, one)  # gcd(r, s) = 3


def test_zieve_matches_exhaustive_on_worked_factorization(f16):
    # x + x^7 + x^13 = x * h(x^3) with h(y) = 1 + y^2 + y^4
    h = TrinomialSpec.make(f16, [(1, 0), (1, 2), (1, 4)])
    f = TrinomialSpec.make(f16, [(1, 1), (1, 7), (1, 13)])
    assert pc.is_permutation_exhaustive(f16, f).is_permutation
    assert pc.zieve_check(f16, 1, 3, h)


def test_zieve_rejects_non_permutation(f16):
    one = TrinomialSpec.make(f16, [(1, 0)])
    # x^3: gcd(3, 5) = 1 but x^3 is constant 1 on the cube roots of unity
    assert not pc.zieve_check(f16, 3, 5, one)
    assert not brute_is_permutation(f16, TrinomialSpec.make(f16, [(1, 3)]))


def test_zieve_bad_factorization(f16):
    with pytest.raises(BadFactorization):
        pc.zieve_check(f16, 1, 7, TrinomialSpec.make(f16, [(1, 0)]))


# ---------------------------------------------------------------------------
# unit-circle engine
# ---------------------------------------------------------------------------

def test_new_pairs_on_unit_circle():
    cases = [
        (4, (11, 7)),    # (-1/3, 4/3) at m=4
        (4, (3, 16)),    # (3, -1) = (3, 2^m)
        (3, (2, 8)),     # (1/5, 4/5) at m=3: 5^(-1) mod 9 = 2
    ]
    for m, (s, t) in cases:
        tower = tw.make_tower(m)
        rep = pc.unit_circle_check(tower, NihoPair(m, s, t))
        assert rep.is_permutation
        assert rep.evaluations == (1 << m) + 1


def test_unit_circle_zero_hit_reported(tower3):
    # found by scanning: h(x) = 1 + x + x^2 vanishes on U at m=3
    rep = pc.unit_circle_check(tower3, NihoPair(3, 1, 2))
    assert not rep.is_permutation
    assert rep.zero_at is not None
    ctx = tower3.field
    x = rep.zero_at
    assert 1 ^ gf.power(ctx, x, 1) ^ gf.power(ctx, x, 2) == 0
    data = rep.to_json_dict()
    assert data["counterexample"] == {"maps_to_zero": hex(x)}


def test_unit_circle_collision_counterexample():
    tower = tw.make_tower(3)
    # (1,4) = (1,-1/2) fails at m=3 (condition m % 3 != 0 is violated)
    rep = pc.unit_circle_check(tower, NihoPair(3, 1, 4))
    assert not rep.is_permutation
    if rep.counterexample is not None:
        ctx = tower.field
        x, y = rep.counterexample

        def phi(u):
            h = 1 ^ gf.power(ctx, u, 1) ^ gf.power(ctx, u, 4)
            return gf.mul(ctx, u, gf.mul(ctx, tw.conjugate(tower, h), gf.inv(ctx, h)))

        assert x != y and phi(x) == phi(y)


# ---------------------------------------------------------------------------
# engine agreement
# ---------------------------------------------------------------------------

def test_cross_validation_full_sweep_m3(tower3):
    # all 81 ordered pairs collapse to these unordered ones; engines agree
    checked = 0
    for s in range(9):
        for t in range(9):
            assert pc.cross_validate(tower3, NihoPair(3, s, t))
            checked += 1
    assert checked == 81


def test_cross_validation_table_rows_m4(tower4):
    for row in niho.known_pairs_table1(4):
        if row.pair is not None and row.condition_ok:
            assert pc.cross_validate(tower4, row.pair)


def test_cross_validation_random_m6():
    tower = tw.make_tower(6)
    rng = random.Random(60)
    for _ in range(100):
        pair = NihoPair(6, rng.randrange(65), rng.randrange(65))
        assert pc.cross_validate(tower, pair)


def test_composition_with_coprime_power_stays_permutation(tower3):
    # if p permutes the field and gcd(e, 2^n-1) = 1 then p(x^e) permutes too
    p = niho.pair_to_trinomial(tower3, NihoPair(3, 2, 8))
    assert pc.is_permutation_exhaustive(tower3.field, p).is_permutation
    for e in (2, 5, 11):
        composed = p.compose_power(e)
        assert pc.is_permutation_exhaustive(tower3.field, composed).is_permutation
