"""Two independent permutation-verification engines.

* exhaustive: evaluate the polynomial at all 2^n field elements and track
  images in an occupancy bitset (chunked, so memory stays bounded up to the
  n = 28 desk-scale cap). The reported counterexample is canonical: the
  first scan-order repeat together with its earlier preimage, recomputed in
  a post-pass so it is independent of chunking and thread count.

* unit_circle: for a Niho pair (s, t) the trinomial permutes GF(2^n) iff
  phi(x) = x * (1 + x^s + x^t)^(2^m-1) permutes the norm-1 subgroup U, so
  only 2^m+1 points are evaluated. The power h^(2^m-1) is computed as
  conjugate(h) * inverse(h); h = 0 at any point is an immediate failure
  (phi would map into 0, which is not in U).

The subgroup reduction is also exposed in its general form
(:func:`zieve_check`): x^r h(x^s) permutes the field iff gcd(r, s) = 1 and
x^r h(x)^s permutes the d-th roots of unity, where d*s = 2^n-1.
cross_validate runs both engines on a pair and reports agreement.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd
from typing import Optional

import numpy as np

from . import _kernels
from . import field as gf
from . import tower as tw
from .errors import BadFactorization, FieldTooLarge
from .field import FieldCtx
from .niho import NihoPair, TrinomialSpec, pair_to_trinomial
from .tower import TowerCtx

#: exhaustive verification bound: the occupancy bitset is 32 MiB at n = 28.
EXHAUSTIVE_MAX_N = 28

_CHUNK_BITS = 20


@dataclass(frozen=True)
class PermReport:
    """Verdict of one engine run.

    counterexample is a colliding pair (x, y), x < y in scan order with
    f(x) = f(y); zero_at is a unit-circle element at which 1 + x^s + x^t
    vanishes (unit-circle engine only). On success the evaluation count is
    the full domain size (2^n or 2^m+1).
    """

    is_permutation: bool
    method: str  # "exhaustive" or "unit_circle"
    counterexample: Optional[tuple[int, int]]
    zero_at: Optional[int]
    evaluations: int
    elapsed: float
    pair: Optional[NihoPair] = None

    def to_json_dict(self) -> dict:
        if self.zero_at is not None:
            cex = {"maps_to_zero": hex(self.zero_at)}
        elif self.counterexample is not None:
            cex = [hex(self.counterexample[0]), hex(self.counterexample[1])]
        else:
            cex = None
        return {
            "pair": self.pair.to_json_dict() if self.pair else None,
            "method": self.method,
            "is_permutation": self.is_permutation,
            "counterexample": cex,
            "evaluations": self.evaluations,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


# ---------------------------------------------------------------------------
# exhaustive engine
# ---------------------------------------------------------------------------

def _images_range(ctx: FieldCtx, terms, start: int, stop: int) -> np.ndarray:
    """Images of [start, stop) under the sparse polynomial, in domain order."""
    order = ctx.group_order
    acc = np.zeros(stop - start, dtype=np.int64)
    tables = ctx.exp_log
    if tables is not None:
        exp, log = tables
        lv = log[start:stop]  # elements are their own indices
        for coef, e in terms:
            if e == 0:
                acc ^= coef
                continue
            vals = exp[(lv * e + log[coef]) % order]
            if start == 0:
                vals[0] = 0  # 0^e = 0 for e > 0; the log sentinel lied
            acc ^= vals
    else:
        xs = np.arange(start, stop, dtype=np.int64)
        for coef, e in terms:
            if e == 0:
                acc ^= coef
                continue
            vals = _kernels.pow_vec(xs, e, ctx.n, ctx.red)
            if coef != 1:
                vals = _kernels.mul_vec(
                    vals, np.full(vals.size, coef, dtype=np.int64), ctx.n, ctx.red
                )
            acc ^= vals
    return acc


def _images_chunk(ctx, terms, start, stop, threads) -> np.ndarray:
    if threads <= 1 or stop - start < (1 << 16):
        return _images_range(ctx, terms, start, stop)
    bounds = np.linspace(start, stop, threads + 1, dtype=np.int64)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(
            pool.map(lambda ab: _images_range(ctx, terms, int(ab[0]), int(ab[1])),
                     zip(bounds[:-1], bounds[1:]))
        )
    return np.concatenate(parts)


def is_permutation_exhaustive(
    ctx: FieldCtx, poly: TrinomialSpec, threads: int = 1
) -> PermReport:
    """Full-domain permutation check with occupancy bitset.

    Raises FieldTooLarge above n = 28. Early-exits on the first chunk
    containing a collision, then recomputes the canonical minimal
    counterexample deterministically.
    """
    if ctx.n > EXHAUSTIVE_MAX_N:
        raise FieldTooLarge(f"exhaustive check capped at n={EXHAUSTIVE_MAX_N}, got n={ctx.n}")
    t0 = time.perf_counter()
    terms = poly.terms
    size = 1 << ctx.n
    chunk = 1 << min(ctx.n, _CHUNK_BITS)
    bits = np.zeros(max(size >> 6, 1), dtype=np.uint64)
    collision_y = None
    evaluated = 0
    for cstart in range(0, size, chunk):
        v = _images_chunk(ctx, terms, cstart, cstart + chunk, threads)
        evaluated += v.size
        order = np.argsort(v, kind="stable")
        sv = v[order]
        dup = np.empty(v.size, dtype=bool)
        dup[0] = False
        dup[1:] = sv[1:] == sv[:-1]
        repeat = np.zeros(v.size, dtype=bool)
        repeat[order[dup]] = True  # non-first occurrences within the chunk
        idx = v >> 6
        pos = (v & 63).astype(np.uint64)
        repeat |= ((bits[idx] >> pos) & 1).astype(bool)  # seen in earlier chunks
        if repeat.any():
            collision_y = cstart + int(np.flatnonzero(repeat)[0])
            break
        np.bitwise_or.at(bits, idx, np.uint64(1) << pos)
    if collision_y is None:
        return PermReport(
            is_permutation=True, method="exhaustive", counterexample=None,
            zero_at=None, evaluations=size, elapsed=time.perf_counter() - t0,
        )
    target = poly.evaluate(collision_y)
    partner = None
    for cstart in range(0, collision_y + 1, chunk):
        v = _images_chunk(ctx, terms, cstart, min(cstart + chunk, collision_y), threads)
        hits = np.flatnonzero(v == target)
        if hits.size:
            partner = cstart + int(hits[0])
            break
    assert partner is not None and partner < collision_y
    return PermReport(
        is_permutation=False, method="exhaustive",
        counterexample=(partner, collision_y), zero_at=None,
        evaluations=evaluated, elapsed=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# subgroup engines
# ---------------------------------------------------------------------------

def zieve_check(ctx: FieldCtx, r: int, s_div: int, h: TrinomialSpec) -> bool:
    """Subgroup criterion for x^r h(x^s): gcd(r, s) = 1 and x^r h(x)^s
    injective (hence a permutation) on the d-th roots of unity, d*s = 2^n-1.

    Any zero of h on the roots of unity fails the check. Raises
    BadFactorization unless s_div divides 2^n-1.
    """
    order = ctx.group_order
    if s_div <= 0 or order % s_div != 0:
        raise BadFactorization(f"{s_div} does not divide 2^{ctx.n}-1")
    if gcd(r, s_div) != 1:
        return False
    d = order // s_div
    step = gf.power(ctx, ctx.generator, s_div)
    seen = set()
    x = 1
    for _ in range(d):
        hx = h.evaluate(x)
        if hx == 0:
            return False
        y = gf.mul(ctx, gf.power(ctx, x, r), gf.power(ctx, hx, s_div))
        if y in seen:
            return False
        seen.add(y)
        x = gf.mul(ctx, x, step)
    return True


def unit_circle_check(tower: TowerCtx, pair: NihoPair) -> PermReport:
    """Pair verification on the norm-1 subgroup only (2^m+1 evaluations).

    Failures are reported at the first point in the canonical subgroup
    iteration order, either as a vanishing 1 + x^s + x^t or as a phi
    collision with the earlier colliding point.
    """
    ctx = tower.field
    t0 = time.perf_counter()
    seen: dict[int, int] = {}
    count = 0
    for x in tw.unit_circle_iter(tower):
        count += 1
        h = 1 ^ gf.power(ctx, x, pair.s) ^ gf.power(ctx, x, pair.t)
        if h == 0:
            return PermReport(
                is_permutation=False, method="unit_circle", counterexample=None,
                zero_at=x, evaluations=count, elapsed=time.perf_counter() - t0,
                pair=pair,
            )
        phi = gf.mul(ctx, x, gf.mul(ctx, tw.conjugate(tower, h), gf.inv(ctx, h)))
        if phi in seen:
            return PermReport(
                is_permutation=False, method="unit_circle",
                counterexample=(seen[phi], x), zero_at=None, evaluations=count,
                elapsed=time.perf_counter() - t0, pair=pair,
            )
        seen[phi] = x
    return PermReport(
        is_permutation=True, method="unit_circle", counterexample=None,
        zero_at=None, evaluations=count, elapsed=time.perf_counter() - t0,
        pair=pair,
    )


def cross_validate(tower: TowerCtx, pair: NihoPair, threads: int = 1) -> bool:
    """True iff the exhaustive and unit-circle engines agree on the pair."""
    ex = is_permutation_exhaustive(
        tower.field, pair_to_trinomial(tower, pair), threads=threads
    )
    uc = unit_circle_check(tower, pair)
    return ex.is_permutation == uc.is_permutation
