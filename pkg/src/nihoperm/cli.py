"""Command-line front end.

Commands:
    verify   check a Niho pair with both engines
    family   build a named trinomial family instance and verify it
    table1   machine-checked reproduction of the known-pair table
    lemmas   batch verifications (quartic families, parametrization
             bijection, quadratic trace criterion)
    search   full (s, t) sweep with orbit classification
    open1    sweep the line s + t = 1
    open2    sweep the family (s, t) = (2k, -k)

Exit codes: 0 verified-true / dataset written, 1 verified-false,
2 usage or precondition error. Dataset outputs (table1, search, open1,
open2) carry no timing fields, so reruns are byte-identical regardless of
--threads.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from math import gcd

from . import field as gf
from . import loweq, niho, permcheck, survey
from . import tower as tw
from .errors import NihopermError
from .niho import NihoPair


def _write(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _tower_from(args) -> tw.TowerCtx:
    if getattr(args, "m", None) is not None:
        m = args.m
    elif getattr(args, "n", None) is not None:
        if args.n % 2 != 0:
            raise NihopermError(f"tower commands need even n, got {args.n}")
        m = args.n // 2
    else:
        raise NihopermError("one of --m / --n is required")
    modulus = int(args.modulus, 16) if args.modulus else None
    return tw.make_tower(m, modulus)


def _known_row_notes(m: int, pair: NihoPair) -> list[str]:
    """Warnings when the pair matches a known row whose condition fails."""
    notes = []
    mod = (1 << m) + 1
    if pair.s != pair.t and (pair.s + pair.t) % mod == 0:
        k = min(pair.s, pair.t)
        if not (m % 2 == 0 or niho.exp3(k) >= niho.exp3(mod)):
            notes.append(
                f"matches row k,-k [k={k}] whose condition fails at m={m}; "
                "verdict comes from the engine"
            )
    for row in niho.known_pairs_table1(m, k_max=0):
        if row.pair == pair and not row.condition_ok:
            notes.append(
                f"matches row {row.source} whose condition ({row.condition}) "
                f"fails at m={m}; verdict comes from the engine"
            )
    return notes


def cmd_verify(args) -> int:
    tower = _tower_from(args)
    pair = niho.parse_pair(args.pair, tower.m)
    uc = permcheck.unit_circle_check(tower, pair)
    reports = [uc]
    if tower.field.n <= permcheck.EXHAUSTIVE_MAX_N:
        ex = permcheck.is_permutation_exhaustive(
            tower.field, niho.pair_to_trinomial(tower, pair), threads=args.threads
        )
        reports.append(dataclasses.replace(ex, pair=pair))
    is_pp = all(r.is_permutation for r in reports)
    notes = _known_row_notes(tower.m, pair)
    if args.format == "json":
        payload = {
            "m": tower.m,
            "modulus": tower.field.to_hex(),
            "pair": pair.to_json_dict(),
            "is_permutation": is_pp,
            "reports": [r.to_json_dict() for r in reports],
            "notes": notes,
        }
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [
            f"pair ({pair.label()})  m={tower.m}  modulus={tower.field.to_hex()}"
        ]
        lines += [f"note: {n}" for n in notes]
        for r in reports:
            lines.append(
                f"  {r.method:<12} is_permutation={r.is_permutation} "
                f"evaluations={r.evaluations} elapsed_ms={r.elapsed*1000:.3f}"
            )
        lines.append(f"verdict: {'PERMUTATION' if is_pp else 'NOT a permutation'}")
        _write("\n".join(lines) + "\n", args.out)
    return 0 if is_pp else 1


def cmd_family(args) -> int:
    tower = _tower_from(args)
    params = {}
    for item in args.param or []:
        if "=" not in item:
            raise NihopermError(f"--param expects KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        params[key.strip()] = int(value, 0)
    inst = niho.FamilyInstance(args.family, params)
    spec = niho.family_trinomial(tower, inst)
    if tower.field.n > permcheck.EXHAUSTIVE_MAX_N:
        raise NihopermError("family verification needs n <= 28 for the exhaustive engine")
    report = permcheck.is_permutation_exhaustive(tower.field, spec, threads=args.threads)
    if args.format == "json":
        payload = {
            "family": inst.family_id,
            "params": {k: v for k, v in sorted(params.items())},
            "trinomial": spec.to_json_dict(),
            "report": report.to_json_dict(),
        }
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        terms = " + ".join(f"{hex(c)}*x^{e}" for c, e in spec.terms)
        _write(
            f"family {inst.family_id} over n={tower.field.n}: {terms}\n"
            f"is_permutation={report.is_permutation} "
            f"evaluations={report.evaluations}\n",
            args.out,
        )
    return 0 if report.is_permutation else 1


def _table1_dataset(m_values, threads: int) -> list[dict]:
    checks = []  # (row index in output, "row" | ("equiv", j), pair)
    out_rows = []
    for m in m_values:
        tower = tw.make_tower(m)
        for row in niho.known_pairs_table1(m):
            entry = {
                "m": m,
                "source": row.source,
                "condition": row.condition,
                "condition_ok": row.condition_ok,
                "s": row.pair.s if row.pair else None,
                "t": row.pair.t if row.pair else None,
                "is_pp": None,
                "equivalents": [
                    {"label": label, "s": p.s if p else None,
                     "t": p.t if p else None, "is_pp": None}
                    for label, p in row.equivalents
                ],
            }
            idx = len(out_rows)
            out_rows.append(entry)
            if row.pair is not None:
                checks.append((idx, "row", tower, row.pair))
            for j, (_, p) in enumerate(row.equivalents):
                if p is not None:
                    checks.append((idx, j, tower, p))

    def run(check):
        _, _, tower, pair = check
        return permcheck.unit_circle_check(tower, pair).is_permutation

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(run, checks))
    else:
        verdicts = [run(c) for c in checks]
    for (idx, slot, _, _), verdict in zip(checks, verdicts):
        if slot == "row":
            out_rows[idx]["is_pp"] = verdict
        else:
            out_rows[idx]["equivalents"][slot]["is_pp"] = verdict
    return out_rows


def _table1_failures(rows: list[dict]) -> int:
    bad = 0
    for r in rows:
        if not r["condition_ok"]:
            continue
        if r["is_pp"] is False:
            bad += 1
        bad += sum(1 for e in r["equivalents"] if e["is_pp"] is False)
    return bad


def _fmt_cell(v) -> str:
    if v is None:
        return "undef"
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


def cmd_table1(args) -> int:
    if args.all or args.m is None:
        m_values = list(range(2, 9))
    else:
        m_values = [args.m]
    for m in m_values:
        if m > survey.SURVEY_MAX_M:
            raise NihopermError(f"table capped at m={survey.SURVEY_MAX_M}")
    rows = _table1_dataset(m_values, args.threads)
    if args.format == "json":
        _write(json.dumps({"rows": rows}, indent=2) + "\n", args.out)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([
            "m", "source", "condition_ok", "s", "t", "is_pp",
            "equiv1_label", "equiv1_s", "equiv1_t", "equiv1_is_pp",
            "equiv2_label", "equiv2_s", "equiv2_t", "equiv2_is_pp",
        ])
        for r in rows:
            line = [r["m"], r["source"], _fmt_cell(r["condition_ok"]),
                    _fmt_cell(r["s"]), _fmt_cell(r["t"]), _fmt_cell(r["is_pp"])]
            for e in r["equivalents"]:
                line += [e["label"], _fmt_cell(e["s"]), _fmt_cell(e["t"]),
                         _fmt_cell(e["is_pp"])]
            w.writerow(line)
        _write(buf.getvalue(), args.out)
    else:
        lines = []
        for r in rows:
            eq = "  ".join(
                f"{e['label']}->({_fmt_cell(e['s'])},{_fmt_cell(e['t'])}):"
                f"{_fmt_cell(e['is_pp'])}"
                for e in r["equivalents"]
            )
            lines.append(
                f"m={r['m']:<2} {r['source']:<14} cond={_fmt_cell(r['condition_ok']):<5} "
                f"pair=({_fmt_cell(r['s'])},{_fmt_cell(r['t'])}) "
                f"is_pp={_fmt_cell(r['is_pp']):<5} equiv: {eq}"
            )
        _write("\n".join(lines) + "\n", args.out)
    return 1 if _table1_failures(rows) else 0


def cmd_lemmas(args) -> int:
    which = args.which.lower()
    if which in ("eq4", "eq6", "eq8"):
        tower = _tower_from(args)
        report = loweq.verify_lemma_quartics(tower, which)
        ok = report.all_pass and report.certified
        if args.format == "json":
            _write(report.to_json() + "\n", args.out)
        else:
            _write(
                f"quartic family {which} (pair {loweq.QUARTIC_FAMILY_PAIRS[which]}) "
                f"at m={report.m}: checked={report.checked} "
                f"all_pass={report.all_pass} certified={report.certified}\n",
                args.out,
            )
        return 0 if ok else 1
    if which == "lemma1":
        tower = _tower_from(args)
        gamma = tw.canonical_gamma(tower)
        ok = tw.cayley_is_bijection(tower, gamma)
        count = tower.subfield_order
        if args.format == "json":
            _write(json.dumps({
                "check": "unit_circle_parametrization", "m": tower.m,
                "gamma": hex(gamma), "bijection": ok, "values": count,
            }) + "\n", args.out)
        else:
            _write(
                f"parametrization with gamma={hex(gamma)}: bijection "
                f"{'confirmed' if ok else 'FAILED'}, {count} = 2^m values "
                f"cover the unit circle minus 1\n",
                args.out,
            )
        return 0 if ok else 1
    if which == "lemma2":
        if args.n is not None:
            n = args.n
        elif args.m is not None:
            n = 2 * args.m
        else:
            raise NihopermError("lemma2 needs --n (or --m)")
        modulus = int(args.modulus, 16) if args.modulus else None
        ctx = gf.make_field(n, modulus)
        bad = loweq.quadratic_criterion_disagreements(ctx)
        total = (ctx.group_order) * (1 << ctx.n)
        if args.format == "json":
            _write(json.dumps({
                "check": "quadratic_trace_criterion", "n": n,
                "disagreements": bad, "cases": total,
            }) + "\n", args.out)
        else:
            _write(
                f"quadratic trace criterion over n={n}: {bad} disagreements "
                f"in {total} (a,b) cases\n",
                args.out,
            )
        return 0 if bad == 0 else 1
    raise NihopermError(f"unknown check {args.which!r}")


def cmd_search(args) -> int:
    tower = _tower_from(args)
    rows = survey.search_pairs(tower, threads=args.threads)
    if args.format == "json":
        _write(survey.rows_to_json(rows) + "\n", args.out)
    else:
        _write(survey.rows_to_csv(rows), args.out)
    return 0


def _cmd_open(args, scan, key: str) -> int:
    tower = _tower_from(args)
    hits = scan(tower)
    if args.format == "json":
        _write(json.dumps({"m": tower.m, key: hits}) + "\n", args.out)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", key])
        for h in hits:
            w.writerow([tower.m, h])
        _write(buf.getvalue(), args.out)
    else:
        _write(f"m={tower.m} {key} hits: {' '.join(map(str, hits))}\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nihoperm",
        description="Permutation trinomials from Niho exponents over GF(2^n)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, pair_field=False):
        p.add_argument("--m", type=int, help="tower parameter m (field degree n=2m)")
        p.add_argument("--n", type=int, help="field degree n (must be even)")
        p.add_argument("--modulus", type=str, help="modulus override, hex (e.g. 0x13)")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--out", type=str, help="write output to this path")

    p = sub.add_parser("verify", help="verify a Niho pair with both engines")
    common(p)
    p.add_argument("--pair", required=True,
                   help="pair 'S,T'; components may be fractions like -1/3")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("family", help="build and verify a trinomial family instance")
    common(p)
    p.add_argument("--family", required=True,
                   help="one of F1..F9, T3..T6, C1..C4")
    p.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help="family parameter (repeatable); values parse as int, 0x.. ok")
    p.set_defaults(fn=cmd_family)

    p = sub.add_parser("table1", help="reproduce the known-pair table")
    common(p)
    p.add_argument("--all", action="store_true", help="sweep m = 2..8 (default)")
    p.set_defaults(fn=cmd_table1)

    p = sub.add_parser("lemmas", help="run a batch verification")
    common(p)
    p.add_argument("--which", required=True,
                   help="eq4 | eq6 | eq8 | lemma1 | lemma2")
    p.set_defaults(fn=cmd_lemmas)

    p = sub.add_parser("search", help="full (s,t) sweep with classification")
    common(p)
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("open1", help="sweep the line s+t=1")
    common(p)
    p.set_defaults(fn=lambda a: _cmd_open(a, survey.scan_open_problem_1, "s"))

    p = sub.add_parser("open2", help="sweep the family (2k,-k)")
    common(p)
    p.set_defaults(fn=lambda a: _cmd_open(a, survey.scan_open_problem_2, "k"))

    return parser


def _fix_argv(argv: list[str]) -> list[str]:
    # join "--pair -1/3,4/3" into "--pair=-1/3,4/3" so argparse does not
    # mistake the value for an option
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--pair" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--pair={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(_fix_argv(list(argv)))
    try:
        return args.fn(args)
    except (NihopermError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
