"""Verification suites producing flat, serializable records."""

from __future__ import annotations

import time
from itertools import combinations
from typing import NamedTuple

from .bruhat import (
    admissible_set,
    cell_keys,
    cochar,
    sort_key,
    vertexwise_sets,
)
from .lifts import verify_lift
from .parahoric import burnside_count, conjugacy_classes, maximal_classes, xi_group
from .permissible import (
    class_labels,
    e_of,
    enumerate_perm,
    enumerate_perm_general,
    orbit_classify,
    rank_range,
)

SUITES = ("cells", "perm-adm", "vertexwise", "strata", "lifts", "parahoric")


class VerificationRecord(NamedTuple):
    suite: str
    params: dict
    claim: str
    expected: object
    computed: object
    status: str
    witnesses: list = []
    elapsed_ms: int | None = None

    def sort_key(self) -> tuple:
        p = self.params
        return (
            SUITES.index(self.suite) if self.suite in SUITES else len(SUITES),
            p.get("n", 0),
            tuple(p.get("I", ())),
            p.get("sign", ""),
            p.get("ell", -1),
            p.get("d", 0),
            self.claim,
        )

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "params": self.params,
            "claim": self.claim,
            "expected": self.expected,
            "computed": self.computed,
            "status": self.status,
        }
        if self.witnesses:
            out["witnesses"] = self.witnesses
        if timings and self.elapsed_ms is not None:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def _record(suite, params, claim, expected, computed, witnesses=None, ok=None) -> VerificationRecord:
    if ok is None:
        ok = expected == computed
    return VerificationRecord(suite, params, claim, expected, computed,
                              "pass" if ok else "fail", list(witnesses or []))


def element_json(w) -> dict:
    return {"t": list(w.t), "w0": list(w.w0)}


def coset_json(c) -> dict:
    return {"I": [str(x) for x in sorted(c.I, key=sort_key)], "rep": element_json(c.rep)}


def _signs(signs) -> list:
    return [s for s in ("+", "-") if s in signs]


def cells_records(n: int, i: int) -> list:
    perm = {s: enumerate_perm(i, s, n) for s in "+-"}
    if i in (0, n):
        return [
            _record("cells", {"n": n, "I": [i], "sign": s},
                    "single Schubert cell at a hyperspecial vertex", 1, len(perm[s]))
            for s in "+-"
        ]
    expected = min(i, n - i) + 4
    return [_record("cells", {"n": n, "I": [i]}, "precisely min{i,n-i}+4 Schubert cells",
                    expected, len(perm["+"] | perm["-"]))]


def perm_adm_record(n: int, I: tuple, sign: str, mutate: bool = False) -> VerificationRecord:
    adm = cell_keys(admissible_set(cochar(sign, n)), I)
    if mutate:
        adm = adm - {max(adm)}
    if len(I) == 1:
        perm = enumerate_perm(I[0], sign, n)
        claim = "W_i Perm_i W_i equals W_i Adm W_i"
    else:
        perm = enumerate_perm_general(I, sign, n)
        claim = "W_I Perm_I W_I equals W_I Adm W_I"
    witnesses = ([{"only_in": "perm", **coset_json(c)} for c in sorted(perm - adm)]
                 + [{"only_in": "adm", **coset_json(c)} for c in sorted(adm - perm)])
    return _record("perm-adm", {"n": n, "I": list(I), "sign": sign}, claim,
                   len(adm), len(perm), witnesses, ok=perm == adm)


def vertexwise_record(n: int, I: tuple, sign: str) -> VerificationRecord:
    direct, inter = vertexwise_sets(cochar(sign, n), I, n)
    witnesses = ([{"only_in": "intersection", **coset_json(c)} for c in sorted(inter - direct)]
                 + [{"only_in": "adm", **coset_json(c)} for c in sorted(direct - inter)])
    return _record("vertexwise", {"n": n, "I": list(I), "sign": sign},
                   "vertexwise criterion for the admissible set",
                   len(direct), len(inter), witnesses, ok=direct == inter)


def strata_records(n: int, i: int) -> list:
    out = []
    classes = {}
    for s in "+-":
        ranks = {}
        for c in enumerate_perm(i, s, n):
            label = orbit_classify(e_of(c.rep, i), i, n)
            classes.setdefault(label, set()).add(s)
            ranks[label[0]] = ranks.get(label[0], 0) + 1
        expected = {str(ell): (2 if ell == i else 1) for ell in rank_range(i, n)}
        computed = {str(k): v for k, v in sorted(ranks.items())}
        out.append(_record("strata", {"n": n, "I": [i], "sign": s},
                           "two top-rank cells, one cell for each lower rank", expected, computed))
    top = sorted("".join(sorted(v)) for k, v in classes.items() if k[0] == i)
    lower = sorted("".join(sorted(v)) for k, v in classes.items() if k[0] < i)
    out.append(_record("strata", {"n": n, "I": [i]}, "top-rank classes split by sign",
                       ["+", "+", "-", "-"], top))
    out.append(_record("strata", {"n": n, "I": [i]}, "lower-rank classes lie in both signs",
                       ["+-"] * (len(rank_range(i, n)) - 1), lower))
    return out


def lift_record(n: int, i: int, ell: int, d: int) -> VerificationRecord:
    report = verify_lift(ell, d, i, n)
    failed = [{"clause": c.name, "witness": str(c.witness)} for c in report.failed()]
    return _record("lifts", {"n": n, "I": [i], "ell": ell, "d": d},
                   "explicit point lifts to the generic fiber",
                   [c.name for c in report.clauses],
                   [c.name for c in report.clauses if c.passed], failed)


def parahoric_records(n: int) -> list:
    xi = xi_group(n)
    shape = "Z/4" if n % 2 else "Z/2 x Z/2"
    computed_shape = "Z/4" if xi.is_cyclic() and xi.order == 4 else (
        "Z/2 x Z/2" if xi.order == 4 and xi.exponent() == 2 else f"order {xi.order}")
    maximal = [str(x) for x in maximal_classes(n)]
    return [
        _record("parahoric", {"n": n}, "isomorphism type of Xi", shape, computed_shape),
        _record("parahoric", {"n": n}, "maximal classes are {0} and 2..floor(n/2)",
                [str(x) for x in [0] + list(range(2, n // 2 + 1))], maximal),
        _record("parahoric", {"n": n}, "direct orbit count equals Burnside count",
                burnside_count(n), len(conjugacy_classes(n))),
    ]


def index_sets_for(text, n: int) -> list:
    """Parse 'all', 'vertices' or '0,2;3' into sorted tuples."""
    if text in (None, "all"):
        return [I for r in range(1, n + 2) for I in combinations(range(n + 1), r)]
    if text == "vertices":
        return [(i,) for i in range(n + 1)]
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        I = tuple(sorted({int(x) for x in chunk.split(",")}))
        if any(not 0 <= i <= n for i in I):
            raise ValueError(f"index set {chunk!r} is not inside [0, {n}]")
        out.append(I)
    return out


def tasks(suite: str, n: int, index_sets: list, signs, mutate: bool = False) -> list:
    """(callable, args) pairs; each returns a list of records."""
    singles = sorted({I[0] for I in index_sets if len(I) == 1})
    if suite == "cells":
        return [(cells_records, (n, i)) for i in singles]
    if suite == "strata":
        return [(strata_records, (n, i)) for i in singles if 0 < i < n]
    if suite == "lifts":
        return [(_as_list(lift_record), (n, i, ell, d))
                for i in singles if 0 < i < n for ell, d in class_labels(i, n)]
    if suite == "parahoric":
        return [(parahoric_records, (n,))]
    if suite == "perm-adm":
        return [(_as_list(perm_adm_record), (n, I, s, mutate))
                for I in index_sets for s in _signs(signs)]
    if suite == "vertexwise":
        return [(_as_list(vertexwise_record), (n, I, s))
                for I in index_sets for s in _signs(signs)]
    raise ValueError(f"unknown suite {suite!r}")


class _as_list:
    """Picklable wrapper turning a single-record function into a list-valued one."""

    def __init__(self, fn):
        self.fn = fn

    def __call__(self, *args):
        return [self.fn(*args)]


def run_task(fn, args) -> list:
    start = time.perf_counter()
    records = fn(*args)
    ms = int((time.perf_counter() - start) * 1000)
    return [r._replace(elapsed_ms=ms) for r in records]
