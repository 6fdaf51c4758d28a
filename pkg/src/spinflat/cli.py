"""Command-line driver: ``spinflat verify ...`` and ``spinflat enumerate ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .bruhat import (
    admissible_set,
    cell_keys,
    cochar,
    sort_key,
)
from .permissible import (
    e_of,
    enumerate_faces,
    enumerate_perm,
    enumerate_perm_general,
    orbit_classify,
    permissible_subsets,
    stratum_rank,
    subset_sign,
)
from .suites import SUITES, coset_json, element_json, index_sets_for, run_task, tasks

MAX_N = 6
# suites whose cost is dominated by double cosets of large W_I
HEAVY = {"perm-adm", "vertexwise"}


class UsageError(Exception):
    pass


def _parse_n(text: str) -> list:
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return sorted(set(out))


def _signs(text: str) -> list:
    table = {"+": ["+"], "plus": ["+"], "-": ["-"], "minus": ["-"], "both": ["+", "-"]}
    if text not in table:
        raise UsageError(f"--sign must be +, -, or both (got {text!r})")
    return table[text]


def _check_n(ns: list, allow_large: bool, suite: str | None = None) -> None:
    for n in ns:
        if n < 4:
            raise UsageError("n >= 4 is required")
        limit = MAX_N if suite != "parahoric" else 12
        if n > limit and not allow_large:
            raise UsageError(f"n = {n} exceeds {limit}; pass --allow-large")
        if suite in HEAVY and n >= 6 and not allow_large:
            raise UsageError(
                f"{suite} at n = {n} canonicalizes double cosets over groups of order up "
                "to 23040 (hours of CPU); pass --allow-large")


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _colour(status: str) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return status
    code = {"pass": "32", "fail": "31"}.get(status, "33")
    return f"\033[{code}m{status}\033[0m"


def render(records: list, config: dict, fmt: str, timings: bool) -> str:
    rows = [r.as_dict(timings) for r in records]
    if fmt == "json":
        payload = {"version": __version__, "config": config, "records": rows}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        fields = ["suite", "n", "I", "sign", "ell", "d", "claim", "expected", "computed", "status"]
        if timings:
            fields.append("elapsed_ms")
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            p = r["params"]
            row = {
                "suite": r["suite"],
                "n": p.get("n", ""),
                "I": " ".join(str(x) for x in p.get("I", [])),
                "sign": p.get("sign", ""),
                "ell": p.get("ell", ""),
                "d": p.get("d", ""),
                "claim": r["claim"],
                "expected": json.dumps(r["expected"], sort_keys=True),
                "computed": json.dumps(r["computed"], sort_keys=True),
                "status": r["status"],
            }
            if timings:
                row["elapsed_ms"] = r.get("elapsed_ms", "")
            writer.writerow(row)
        return buf.getvalue()
    lines = []
    for r in rows:
        p = r["params"]
        where = " ".join(f"{k}={v}" for k, v in sorted(p.items()))
        lines.append(f"{_colour(r['status']):>4}  {r['suite']:<10} {where}  {r['claim']}"
                     f"  expected={r['expected']} computed={r['computed']}")
    passed = sum(r["status"] == "pass" for r in rows)
    lines.append(f"{passed}/{len(rows)} passed")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    ns = _parse_n(args.n)
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    signs = _signs(args.sign)
    for suite in suites:
        _check_n(ns, args.allow_large, suite)
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    work = []
    for suite in suites:
        for n in ns:
            try:
                sets = index_sets_for(args.index_sets, n)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            work.extend(tasks(suite, n, sets, signs, mutate=args.mutate_adm))
    records = []
    if args.jobs == 1:
        for fn, a in work:
            records.extend(run_task(fn, a))
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            for chunk in pool.map(run_task, [w[0] for w in work], [w[1] for w in work]):
                records.extend(chunk)
    records.sort(key=lambda r: r.sort_key())
    config = {
        "suites": suites,
        "n": ns,
        "index_sets": args.index_sets or "all",
        "signs": signs,
    }
    _write(render(records, config, args.format, args.timings), args.out)
    return 0 if all(r.status == "pass" for r in records) else 1


def _enum_payload(args) -> dict:
    n = args.n
    _check_n([n], args.allow_large)
    if args.what == "faces":
        faces = enumerate_faces(args.i, n, None if args.sign == "any" else args.sign)
        return {"n": n, "i": args.i, "faces": [
            {"v_i": list(f.vectors[0][0]), "v_minus_i": list(f.vectors[0][1])} for f in faces]}
    if args.what == "subsets":
        subs = sorted(permissible_subsets(args.i, n), key=sorted)
        return {"n": n, "i": args.i, "subsets": [
            {"E": sorted(E), "rank": stratum_rank(E, args.i, n),
             "class": list(orbit_classify(E, args.i, n)), "sign": subset_sign(E, n)}
            for E in subs]}
    signs = _signs(args.sign if args.sign != "any" else "both")
    out = {"n": n, "signs": {}}
    for s in signs:
        if args.what == "adm" and args.index_set is None:
            out["signs"][s] = [element_json(w) for w in sorted(admissible_set(cochar(s, n)))]
            continue
        I = index_sets_for(args.index_set or str(args.i), n)[0]
        if args.what == "adm":
            cosets = cell_keys(admissible_set(cochar(s, n)), I)
        elif len(I) == 1:
            cosets = enumerate_perm(I[0], s, n)
        else:
            cosets = enumerate_perm_general(I, s, n)
        entries = []
        for c in sorted(cosets):
            entry = coset_json(c)
            if len(I) == 1:
                entry["class"] = list(orbit_classify(e_of(c.rep, I[0]), I[0], n))
            entries.append(entry)
        out["signs"][s] = entries
    return out


def cmd_enumerate(args) -> int:
    payload = _enum_payload(args)
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        text = _enum_text(payload)
    _write(text, args.out)
    return 0


def _enum_text(payload: dict) -> str:
    lines = []
    for key in ("faces", "subsets"):
        for item in payload.get(key, []):
            lines.append(" ".join(f"{k}={v}" for k, v in item.items()))
    for s, items in sorted(payload.get("signs", {}).items()):
        lines.append(f"sign {s}: {len(items)}")
        for item in items:
            lines.append("  " + json.dumps(item, sort_keys=True))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinflat",
        description="Exact checks of permissible and admissible sets for spin local models.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=list(SUITES) + ["all"])
    v.add_argument("--n", default="4", help="values of n, e.g. 4,5 or 4-6 (default 4)")
    v.add_argument("--index-sets", default=None,
                   help="'all' (default), 'vertices', or sets like '0,2;3'")
    v.add_argument("--sign", default="both", help="+, -, or both")
    v.add_argument("--format", choices=["json", "csv", "text"], default="text")
    v.add_argument("--out", default=None, help="write the report here instead of stdout")
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    v.add_argument("--allow-large", action="store_true", help="permit n > 6 and heavy n = 6 runs")
    v.add_argument("--timings", action="store_true",
                   help="include elapsed_ms per record (output is then not reproducible)")
    v.add_argument("--mutate-adm", action="store_true", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("enumerate", help="dump raw sets")
    e.add_argument("what", choices=["perm", "adm", "faces", "subsets"])
    e.add_argument("--n", type=int, default=4)
    e.add_argument("--i", type=int, default=0, help="vertex index for faces, subsets, perm")
    e.add_argument("--index-set", default=None, help="index set like '0,2' for perm and adm")
    e.add_argument("--sign", default="any", help="+, -, both or any")
    e.add_argument("--format", choices=["json", "text"], default="json")
    e.add_argument("--out", default=None)
    e.add_argument("--allow-large", action="store_true")
    e.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.exit(2, f"spinflat: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
