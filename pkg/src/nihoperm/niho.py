"""Niho pairs, their trinomials, and every named construction family.

A pair (s, t) of residues mod 2^m+1 defines the trinomial

    f(x) = x + x^(s(2^m-1)+1) + x^(t(2^m-1)+1)   over GF(2^(2m)).

Pairs are unordered (the polynomial is symmetric in s and t) and may be
entered as fractions a/b, meaning a * b^(-1) mod 2^m+1. Degenerate inputs
collapse instead of erroring: s = t cancels the two trailing terms down to
x, and s = 0 or t = 0 merges a term into the leading x.

Besides raw pairs the module materializes:

* the inverse-exponent transforms that map a permutation pair to further
  permutation pairs (closing these out gives the pair's orbit);
* the trinomial families F1-F9 (previously published shapes with their
  hypotheses), T3-T6 (the fractional pairs (-1/3,4/3), (3,-1), (-2/3,5/3),
  (1/5,4/5)) and C1-C4 (monomial-shifted variants of T3-T6);
* the known-pair survey table with per-m conditions and equivalent pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Any, Optional

from . import field as gf
from . import tower as tw
from .errors import ConditionViolated, NonInvertibleDenominator
from .field import FieldCtx
from .tower import TowerCtx


def exp3(k: int) -> int:
    """3-adic valuation of a positive integer."""
    if k <= 0:
        raise ValueError("3-adic valuation needs a positive integer")
    v = 0
    while k % 3 == 0:
        k //= 3
        v += 1
    return v


def resolve_fraction(num: int, den: int, m: int) -> int:
    """num/den as a residue mod 2^m+1.

    Raises NonInvertibleDenominator when gcd(den, 2^m+1) != 1.
    """
    if den == 0:
        raise NonInvertibleDenominator("denominator is zero")
    mod = (1 << m) + 1
    d = den % mod
    if gcd(d, mod) != 1:
        raise NonInvertibleDenominator(
            f"gcd({den}, 2^{m}+1={mod}) = {gcd(d, mod)} != 1"
        )
    return (num * pow(d, -1, mod)) % mod


def parse_ratio(token: str, m: int) -> int:
    """Parse an integer or fraction token ("3", "-1", "4/3") to a residue."""
    token = token.strip()
    try:
        if "/" in token:
            a, b = token.split("/", 1)
            return resolve_fraction(int(a), int(b), m)
        return int(token) % ((1 << m) + 1)
    except ValueError as exc:
        raise ValueError(f"bad pair component {token!r}") from exc


@dataclass(frozen=True)
class NihoPair:
    """Unordered pair of residues mod 2^m+1, stored reduced with s <= t."""

    m: int
    s: int
    t: int

    def __post_init__(self):
        mod = (1 << self.m) + 1
        s = self.s % mod
        t = self.t % mod
        if s > t:
            s, t = t, s
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    @property
    def modulus(self) -> int:
        return (1 << self.m) + 1

    @property
    def degenerate(self) -> bool:
        """True when the trinomial collapses: equal entries or a zero entry."""
        return self.s == self.t or self.s == 0

    def label(self) -> str:
        return f"{self.s},{self.t}"

    def to_json_dict(self) -> dict:
        return {"m": self.m, "s": self.s, "t": self.t}


def parse_pair(text: str, m: int) -> NihoPair:
    """Parse "S,T" where each component is an integer or fraction."""
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"pair must be 'S,T', got {text!r}")
    return NihoPair(m, parse_ratio(parts[0], m), parse_ratio(parts[1], m))


# ---------------------------------------------------------------------------
# sparse trinomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TrinomialSpec:
    """Canonical sparse polynomial over a field context.

    Terms are (coefficient, exponent) with nonzero coefficients and strictly
    increasing exponents. Positive exponents are reduced into [1, 2^n-1]
    (never folded onto the constant term, so evaluation at 0 is preserved);
    exponent 0 is a genuine constant term.
    """

    ctx: FieldCtx
    terms: tuple[tuple[int, int], ...]

    @classmethod
    def make(cls, ctx: FieldCtx, terms) -> "TrinomialSpec":
        order = ctx.group_order
        merged: dict[int, int] = {}
        for coef, e in terms:
            if coef == 0:
                continue
            if e != 0:
                e = (e - 1) % order + 1
            merged[e] = merged.get(e, 0) ^ coef
        canon = tuple(
            (c, e) for e, c in sorted(merged.items()) if c != 0
        )
        return cls(ctx=ctx, terms=canon)

    def evaluate(self, x: int) -> int:
        acc = 0
        for coef, e in self.terms:
            acc ^= gf.mul(self.ctx, coef, gf.power(self.ctx, x, e))
        return acc

    def exponents(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.terms)

    def compose_power(self, e: int) -> "TrinomialSpec":
        """The polynomial p(x^e)."""
        return TrinomialSpec.make(
            self.ctx, [(c, exp * e) for c, exp in self.terms]
        )

    def to_json_dict(self) -> dict:
        return {
            "modulus": self.ctx.to_hex(),
            "terms": [{"coef_hex": hex(c), "exp": e} for c, e in self.terms],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def pair_to_trinomial(tower: TowerCtx, pair: NihoPair) -> TrinomialSpec:
    """Expand a pair into x + x^(s(2^m-1)+1) + x^(t(2^m-1)+1), canonicalized."""
    q_minus = (1 << tower.m) - 1
    return TrinomialSpec.make(
        tower.field,
        [(1, 1), (1, pair.s * q_minus + 1), (1, pair.t * q_minus + 1)],
    )


def is_niho_exponent(d: int, m: int) -> Optional[int]:
    """Smallest j in [0, m) with d = 2^j mod 2^m-1, or None.

    j = 0 flags a normalized exponent; every exponent produced by
    pair_to_trinomial is normalized.
    """
    if d <= 0:
        raise ValueError("exponent must be positive")
    mod = (1 << m) - 1
    if mod == 1:
        return 0
    r = d % mod
    p = 1
    for j in range(m):
        if r == p:
            return j
        p = (p * 2) % mod
    return None


# ---------------------------------------------------------------------------
# inverse-exponent transforms
# ---------------------------------------------------------------------------

def _transform(m: int, i: int, j: int) -> Optional[NihoPair]:
    # (i, j) -> (i/(2i-1), (i-j)/(2i-1)) when 2i-1 is invertible mod 2^m+1;
    # composing with the inverse of the exponent i(2^m-1)+1 preserves the
    # permutation property in both directions.
    mod = (1 << m) + 1
    den = (2 * i - 1) % mod
    if gcd(den, mod) != 1:
        return None
    dinv = pow(den, -1, mod)
    return NihoPair(m, (i * dinv) % mod, ((i - j) * dinv) % mod)


def equivalent_pairs(m: int, pair: NihoPair) -> list[NihoPair]:
    """The 0, 1 or 2 transformed pairs whose denominators are invertible.

    Swaps are already identified by the canonical pair representation, so
    only the two transform directions are materialized (deduplicated).
    """
    out: list[NihoPair] = []
    for i, j in ((pair.s, pair.t), (pair.t, pair.s)):
        p = _transform(m, i, j)
        if p is not None and p not in out:
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# construction families
# ---------------------------------------------------------------------------

FAMILY_IDS = (
    "F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8", "F9",
    "T3", "T4", "T5", "T6",
    "C1", "C2", "C3", "C4",
)

#: the fractional pair behind each of T3-T6
PAIR_FAMILIES = {
    "T3": ((-1, 3), (4, 3)),
    "T4": ((3, 1), (-1, 1)),
    "T5": ((-2, 3), (5, 3)),
    "T6": ((1, 5), (4, 5)),
}


@dataclass(frozen=True)
class FamilyInstance:
    """A family id plus its parameters; hypotheses are re-checked on use."""

    family_id: str
    params: dict[str, Any]

    def __post_init__(self):
        fid = self.family_id.upper()
        if fid not in FAMILY_IDS:
            raise ValueError(f"unknown family {self.family_id!r}")
        object.__setattr__(self, "family_id", fid)


def _pair_family_condition(tower: TowerCtx, fid: str) -> tuple[bool, str]:
    m = tower.m
    if fid in ("T3", "T4", "T5"):
        if m % 2 != 0:
            return False, f"{fid} needs even m, got m={m}"
    else:  # T6
        if gcd(5, (1 << m) + 1) != 1:
            return False, f"T6 needs gcd(5, 2^m+1)=1, fails at m={m}"
    return True, ""


def check_family_conditions(tower: TowerCtx, inst: FamilyInstance) -> tuple[bool, str]:
    """Evaluate the stated hypotheses of a family instance.

    Returns (ok, reason); reason names the first failing hypothesis.
    Never cached: always recomputed from the parameters.
    """
    fid = inst.family_id
    p = inst.params
    ctx = tower.field
    m = tower.m
    n = ctx.n
    q = 1 << m

    if fid in PAIR_FAMILIES:
        return _pair_family_condition(tower, fid)

    if fid in ("F1", "F2"):
        k = p["k"]
        if n != 3 * k:
            return False, f"{fid} needs n = 3k, got n={n}, k={k}"
        if fid == "F1":
            a = p["a"]
            if a == 0 or gf.power(ctx, a, (1 << (2 * k)) + (1 << k) + 1) == 1:
                return False, "F1 needs a^(2^(2k)+2^k+1) != 1"
        else:
            v = p["v"]
            if v == 0:
                return False, "F2 needs v != 0"
            if gf.power(ctx, v, 1 << k) != v:
                return False, "F2 needs v in GF(2^k)"
        return True, ""

    if fid == "F3":
        if ctx.group_order % 3 != 0:
            return False, "F3 needs 3 | 2^n-1 (even n)"
        s = ctx.group_order // 3
        r, a, b, c = p["r"], p["a"], p["b"], p["c"]
        if gcd(r, s) != 1:
            return False, f"F3 needs gcd(r, s)=1 with s={s}"
        w = gf.power(ctx, ctx.generator, s)
        h = [c ^ gf.mul(ctx, b, wi) ^ gf.mul(ctx, a, gf.square(ctx, wi))
             for wi in (1, w, gf.square(ctx, w))]
        if 0 in h:
            return False, "F3 needs h(w^i) != 0 for i = 0, 1, 2"
        i1 = gf.cube_coset_index(ctx, gf.div(ctx, h[0], h[1]))
        i2 = gf.cube_coset_index(ctx, gf.div(ctx, h[1], h[2]))
        if i1 != i2 or i1 == r % 3:
            return False, "F3 needs idx(h(1)/h(w)) = idx(h(w)/h(w^2)) != r mod 3"
        return True, ""

    if fid == "F4":
        k = p["k"]
        if k < 0:
            return False, "F4 needs k >= 0"
        if gcd(2 * k + 3, q - 1) != 1:
            return False, f"F4 needs gcd(2k+3, 2^m-1)=1, fails at k={k}"
        return True, ""

    if fid == "F5":
        a = p["a"]
        if a == 0 or gf.power(ctx, a, q + 1) != 1:
            return False, "F5 needs a^(2^m+1) = 1"
        return True, ""

    if fid == "F6":
        k = p["k"]
        if k < 1:
            return False, "F6 needs a positive k"
        if m % 2 != 0 and exp3(k) < exp3(q + 1):
            return False, "F6 at odd m needs v3(k) >= v3(2^m+1)"
        return True, ""

    if fid == "F7":
        a, b = p["a"], p["b"]
        if a == 0 or b == 0:
            return False, "F7 needs ab != 0"
        b_pow = gf.power(ctx, b, 1 - q)
        if a == b_pow:
            if tw.subfield_trace(tower, gf.power(ctx, b, -1 - q)) != 0:
                return False, "F7 (first branch) needs Tr_m(b^(-1-2^m)) = 0"
            return True, ""
        u = gf.mul(ctx, a, gf.inv(ctx, gf.square(ctx, b)))
        if not tw.in_subfield(tower, u):
            return False, "F7 (second branch) needs a*b^(-2) in GF(2^m)"
        if tw.subfield_trace(tower, u) != 0:
            return False, "F7 (second branch) needs Tr_m(a*b^(-2)) = 0"
        if gf.square(ctx, b) ^ gf.mul(ctx, gf.square(ctx, a), gf.power(ctx, b, q - 1)) ^ a != 0:
            return False, "F7 (second branch) needs b^2 + a^2*b^(2^m-1) + a = 0"
        return True, ""

    if fid == "F8":
        if m % 3 == 0:
            return False, f"F8 needs m != 0 mod 3, got m={m}"
        return True, ""

    if fid == "F9":
        if m % 2 == 0:
            return False, f"F9 needs odd m, got m={m}"
        return True, ""

    # C1..C4
    k = p["k"]
    if k < 1:
        return False, f"{fid} needs a positive k"
    if gcd(2 * k + 1, q - 1) != 1:
        return False, f"{fid} needs gcd(2k+1, 2^m-1)=1, fails at k={k}"
    if fid in ("C1", "C2", "C3") and m % 2 != 0:
        return False, f"{fid} needs even m, got m={m}"
    if fid == "C4" and gcd(5, q + 1) != 1:
        return False, f"C4 needs gcd(5, 2^m+1)=1, fails at m={m}"
    return True, ""


def family_trinomial(
    tower: TowerCtx, inst: FamilyInstance, check: bool = True
) -> TrinomialSpec:
    """Expand a family instance into its sparse polynomial.

    With check=True (the default) a failed hypothesis raises
    ConditionViolated naming it; check=False builds the polynomial anyway,
    which is how hypothesis-violating instances are produced for
    falsification runs.
    """
    ok, reason = check_family_conditions(tower, inst)
    if check and not ok:
        raise ConditionViolated(reason)
    fid = inst.family_id
    p = inst.params
    ctx = tower.field
    m = tower.m
    q = 1 << m

    if fid in PAIR_FAMILIES:
        (sn, sd), (tn, td) = PAIR_FAMILIES[fid]
        pair = NihoPair(m, resolve_fraction(sn, sd, m), resolve_fraction(tn, td, m))
        return pair_to_trinomial(tower, pair)

    if fid == "F1":
        k, a = p["k"], p["a"]
        return TrinomialSpec.make(ctx, [
            (1, (1 << (2 * k)) + 1),
            (gf.power(ctx, a, (1 << k) + 1), (1 << k) + 1),
            (a, 2),
        ])
    if fid == "F2":
        k, v = p["k"], p["v"]
        return TrinomialSpec.make(ctx, [
            (1, (1 << (2 * k)) + 1),
            (1, (1 << k) + 1),
            (v, 1),
        ])
    if fid == "F3":
        s = ctx.group_order // 3
        r, a, b, c = p["r"], p["a"], p["b"], p["c"]
        return TrinomialSpec.make(ctx, [(a, 2 * s + r), (b, s + r), (c, r)])
    if fid == "F4":
        k = p["k"]
        base = k * (q + 1)
        return TrinomialSpec.make(ctx, [
            (1, base + 3), (1, base + q + 2), (1, base + 3 * q),
        ])
    if fid == "F5":
        a = p["a"]
        return TrinomialSpec.make(ctx, [
            (1, 1),
            (a, 2 * (q - 1) + 1),
            (gf.power(ctx, a, 1 << (m - 1)), q * (q - 1) + 1),
        ])
    if fid == "F6":
        k = p["k"]
        return pair_to_trinomial(tower, NihoPair(m, k, -k))
    if fid == "F7":
        a, b = p["a"], p["b"]
        return TrinomialSpec.make(ctx, [(a, 1), (b, q), (1, 2 * (q - 1) + 1)])
    if fid == "F8":
        return TrinomialSpec.make(ctx, [
            (1, 1), (1, q), (1, (q // 2) * (q - 1) + 1),
        ])
    if fid == "F9":
        return TrinomialSpec.make(ctx, [
            (1, 1), (1, q + 2), (1, (q // 2) * (q + 1) + 1),
        ])

    # C1..C4: a monomial shift x^((q+1)k+1) with pair-family tail exponents
    k = p["k"]
    e0 = (q + 1) * k + 1
    if fid == "C1":
        exps = [e0, (q + 1) * k + (2 * q * q - q + 2) // 3,
                (q + 1) * k + (q * q + 4 * q - 2) // 3]
    elif fid == "C2":
        exps = [e0, (q + 1) * k + 3 * q - 2, (q + 1) * k - q + 2]
    elif fid == "C3":
        exps = [e0, e0 + (q - 1) ** 2 // 3,
                (q + 1) * k + (2 * q * q + 5 * q - 4) // 3]
    else:  # C4
        ell = resolve_fraction(1, 5, m)
        exps = [e0, e0 + ell * (q - 1), e0 + 4 * ell * (q - 1)]
    return TrinomialSpec.make(ctx, [(1, e) for e in exps])


# ---------------------------------------------------------------------------
# the known-pair table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Table1Row:
    """One materialized row of the known-pair table at a fixed m."""

    source: str
    condition: str
    condition_ok: bool
    pair: Optional[NihoPair]
    equivalents: tuple[tuple[str, Optional[NihoPair]], ...]


def _try_frac_pair(m, s_frac, t_frac) -> Optional[NihoPair]:
    try:
        return NihoPair(
            m,
            resolve_fraction(s_frac[0], s_frac[1], m),
            resolve_fraction(t_frac[0], t_frac[1], m),
        )
    except NonInvertibleDenominator:
        return None


_FIXED_ROWS = (
    # (source, condition text, condition fn, pair fracs, equivalent fracs)
    ("2,-1", "every positive m", lambda m: True,
     ((2, 1), (-1, 1)), (("1,1/3", ((1, 1), (1, 3))), ("1,2/3", ((1, 1), (2, 3))))),
    ("1,-1/2", "m not divisible by 3", lambda m: m % 3 != 0,
     ((1, 1), (-1, 2)), (("1,3/2", ((1, 1), (3, 2))), ("1/4,3/4", ((1, 4), (3, 4))))),
    ("-1/3,4/3", "m even", lambda m: m % 2 == 0,
     ((-1, 3), (4, 3)), (("1,1/5", ((1, 1), (1, 5))), ("1,4/5", ((1, 1), (4, 5))))),
    ("3,-1", "m even", lambda m: m % 2 == 0,
     ((3, 1), (-1, 1)), (("3/5,4/5", ((3, 5), (4, 5))), ("1/3,4/3", ((1, 3), (4, 3))))),
    ("-2/3,5/3", "m even", lambda m: m % 2 == 0,
     ((-2, 3), (5, 3)), (("1,2/7", ((1, 1), (2, 7))), ("1,5/7", ((1, 1), (5, 7))))),
    ("1/5,4/5", "gcd(5, 2^m+1) = 1", lambda m: gcd(5, (1 << m) + 1) == 1,
     ((1, 5), (4, 5)), (("1,-1/3", ((1, 1), (-1, 3))), ("1,4/3", ((1, 1), (4, 3))))),
)


def known_pairs_table1(m: int, k_max: int | None = None) -> list[Table1Row]:
    """Materialize every known-pair row at the given m.

    The (k,-k) family is expanded over k in [1, k_max] (default 2^m, after
    which residues repeat). Conditions are evaluated per row; fractional
    pairs and equivalents that do not resolve mod 2^m+1 are kept as None so
    callers can render them as undefined.
    """
    if k_max is None:
        k_max = 1 << m
    q_plus = (1 << m) + 1
    rows: list[Table1Row] = []
    kmk_cond = "m even, or m odd with v3(k) >= v3(2^m+1)"
    for k in range(1, k_max + 1):
        ok = m % 2 == 0 or exp3(k) >= exp3(q_plus)
        rows.append(Table1Row(
            source=f"k,-k [k={k}]",
            condition=kmk_cond,
            condition_ok=ok,
            pair=NihoPair(m, k, -k),
            equivalents=(
                (f"{k}/{2*k-1},{2*k}/{2*k-1}",
                 _try_frac_pair(m, (k, 2 * k - 1), (2 * k, 2 * k - 1))),
                (f"{k}/{2*k+1},{2*k}/{2*k+1}",
                 _try_frac_pair(m, (k, 2 * k + 1), (2 * k, 2 * k + 1))),
            ),
        ))
    for source, cond_text, cond_fn, pair_fracs, equiv_fracs in _FIXED_ROWS:
        rows.append(Table1Row(
            source=source,
            condition=cond_text,
            condition_ok=cond_fn(m),
            pair=_try_frac_pair(m, pair_fracs[0], pair_fracs[1]),
            equivalents=tuple(
                (label, _try_frac_pair(m, fr[0], fr[1])) for label, fr in equiv_fracs
            ),
        ))
    return rows
