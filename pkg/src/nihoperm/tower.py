"""The quadratic extension GF(2^m) inside GF(2^(2m)).

Provides conjugation x -> x^(2^m), the norm-1 subgroup ("unit circle")
U = {x : x^(2^m+1) = 1} of order 2^m+1, and the rational parametrization
z -> (z+gamma)/(z+conj(gamma)) that maps the subfield bijectively onto
U minus 1.

Subfield elements are represented inside the big field; membership is the
Frobenius fixed-point test x^(2^m) = x. There is no separate GF(2^m)
context and no embedding maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from . import field as gf
from .errors import GammaInSubfield, ZNotInSubfield
from .field import FieldCtx


@dataclass(frozen=True)
class TowerCtx:
    """GF(2^m) < GF(2^n) with n = 2m; immutable and freely shareable."""

    field: FieldCtx
    m: int

    @property
    def unit_circle_order(self) -> int:
        return (1 << self.m) + 1

    @property
    def subfield_order(self) -> int:
        return 1 << self.m


def make_tower(m: int, modulus: int | None = None) -> TowerCtx:
    """Tower context for GF(2^(2m)) over GF(2^m), 1 <= m <= 16."""
    ctx = gf.make_field(2 * m, modulus)
    return TowerCtx(field=ctx, m=m)


def tower_over(ctx: FieldCtx) -> TowerCtx:
    """Wrap an existing even-degree field context."""
    if ctx.n % 2 != 0:
        raise ValueError(f"tower needs even extension degree, got n={ctx.n}")
    return TowerCtx(field=ctx, m=ctx.n // 2)


def conjugate(tower: TowerCtx, x: int) -> int:
    """x^(2^m), the subfield-fixing involution."""
    return gf.frobenius(tower.field, x, tower.m)


def norm(tower: TowerCtx, x: int) -> int:
    """x * conjugate(x) = x^(2^m+1); always lies in the subfield."""
    return gf.mul(tower.field, x, conjugate(tower, x))


def in_subfield(tower: TowerCtx, x: int) -> bool:
    return conjugate(tower, x) == x


def in_unit_circle(tower: TowerCtx, x: int) -> bool:
    """True iff x^(2^m+1) = 1."""
    return norm(tower, x) == 1


def unit_circle_iter(tower: TowerCtx) -> Iterator[int]:
    """All 2^m+1 norm-1 elements, as g^(k(2^m-1)) for k = 0..2^m.

    The order is fixed by the canonical generator g, giving stable
    reports and counterexamples.
    """
    ctx = tower.field
    step = gf.power(ctx, ctx.generator, ctx.q_minus)
    x = 1
    for _ in range(tower.unit_circle_order):
        yield x
        x = gf.mul(ctx, x, step)


def subfield_iter(tower: TowerCtx) -> Iterator[int]:
    """All 2^m elements fixed by conjugation: 0 then powers of g^(2^m+1)."""
    ctx = tower.field
    yield 0
    step = gf.power(ctx, ctx.generator, ctx.q_plus)
    x = 1
    for _ in range(tower.subfield_order - 1):
        yield x
        x = gf.mul(ctx, x, step)


def canonical_gamma(tower: TowerCtx) -> int:
    """Smallest-bitmask element outside the subfield (deterministic)."""
    for x in gf.elements(tower.field):
        if not in_subfield(tower, x):
            return x
    raise AssertionError("unreachable: the subfield is proper")


def cayley_image(tower: TowerCtx, gamma: int) -> list[int]:
    """Images of the whole subfield under the parametrization, in order."""
    return [cayley_param(tower, gamma, z) for z in subfield_iter(tower)]


def cayley_is_bijection(tower: TowerCtx, gamma: int) -> bool:
    """True iff z -> (z+gamma)/(z+conj(gamma)) hits U \\ {1} exactly once each."""
    image = set(cayley_image(tower, gamma))
    target = set(unit_circle_iter(tower))
    target.discard(1)
    return len(image) == tower.subfield_order and image == target


def subfield_trace(tower: TowerCtx, y: int) -> int:
    """Trace of a subfield element down to GF(2): sum of y^(2^i), i < m.

    Distinct from the absolute trace of the big field, which vanishes
    identically on the subfield. Raises ZNotInSubfield for arguments
    outside the subfield.
    """
    if not in_subfield(tower, y):
        raise ZNotInSubfield(f"{hex(y)} is not fixed by x -> x^(2^{tower.m})")
    acc = 0
    t = y
    for _ in range(tower.m):
        acc ^= t
        t = gf.square(tower.field, t)
    assert acc in (0, 1)
    return acc


def cayley_param(tower: TowerCtx, gamma: int, z: int) -> int:
    """(z+gamma)/(z+conj(gamma)) for subfield z and non-subfield gamma.

    Over all z in the subfield this is a bijection onto the unit circle
    minus 1; the denominator is automatically nonzero under the
    preconditions.
    """
    if in_subfield(tower, gamma):
        raise GammaInSubfield(f"gamma={hex(gamma)} lies in the subfield")
    if not in_subfield(tower, z):
        raise ZNotInSubfield(f"z={hex(z)} is not in the subfield")
    ctx = tower.field
    return gf.div(ctx, z ^ gamma, z ^ conjugate(tower, gamma))
