"""Acceptance criteria, each printed as one PASS/FAIL line."""

from __future__ import annotations

from itertools import product

import pytest

from spinflat.bruhat import (
    admissible_set,
    bfs_lengths,
    bruhat_leq,
    cochar,
    length,
    lower_set_by_covers,
)
from spinflat.permissible import (
    class_labels,
    is_totally_isotropic,
    permissible_subsets,
    spin_orbit_member,
    spin_orbit_member_brute,
    stratum_rank,
    stratum_rank_matrix,
)
from spinflat.suites import (
    cells_records,
    index_sets_for,
    lift_record,
    parahoric_records,
    perm_adm_record,
    strata_records,
    vertexwise_record,
)
from spinflat.weyl import AffineElement, special_elements


@pytest.fixture
def report(capsys):
    def emit(k: int, label: str, ok: bool, detail: str = "") -> None:
        with capsys.disabled():
            tail = f" ({detail})" if detail else ""
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}: {label}{tail}")
        assert ok, detail
    return emit


def _detail(bad) -> str:
    return f"first failures: {bad[:3]}" if bad else ""


def _failures(records) -> list:
    return [(r.claim, r.params, r.expected, r.computed) for r in records if r.status != "pass"]


def test_criterion_1_cell_counts(report):
    bad = []
    for n in (4, 5, 6):
        for i in range(n + 1):
            bad += _failures(cells_records(n, i))
    report(1, "cell counts min{i,n-i}+4, one cell at i in {0,n}, n = 4,5,6", not bad, _detail(bad))


def test_criterion_2_perm_equals_adm_per_vertex(report):
    bad = []
    for n in (4, 5):
        for i in range(n + 1):
            for s in "+-":
                bad += _failures([perm_adm_record(n, (i,), s)])
    report(2, "W_i Perm_i W_i = W_i Adm W_i for every vertex and sign, n = 4,5",
           not bad, _detail(bad))


def test_criterion_3_vertexwise(report):
    sets = index_sets_for("all", 4)
    bad = _failures([vertexwise_record(4, I, s) for I in sets for s in "+-"])
    report(3, f"vertexwise criterion for all {len(sets)} index sets, n = 4", not bad, _detail(bad))


def test_criterion_4_general_perm_equals_adm(report):
    sets = index_sets_for("all", 4)
    bad = _failures([perm_adm_record(4, I, s) for I in sets for s in "+-"])
    report(4, f"general Perm_I = Adm_I for all {len(sets)} index sets, n = 4", not bad, _detail(bad))


def test_criterion_5_stratification(report):
    bad = []
    for n in (4, 5, 6):
        for i in range(1, n):
            bad += _failures(strata_records(n, i))
    report(5, "rank strata counts and sign split, n = 4,5,6", not bad, _detail(bad))


def test_criterion_6_lifts(report):
    bad = []
    for n in (4, 5, 6):
        for i in range(1, n):
            for ell, d in class_labels(i, n):
                bad += _failures([lift_record(n, i, ell, d)])
    report(6, "every class lifts to the generic fiber, n = 4,5,6", not bad, _detail(bad))


def test_criterion_7_parahoric(report):
    bad = []
    for n in range(4, 11):
        bad += _failures(parahoric_records(n))
    report(7, "Xi type, maximal classes and Burnside count, 4 <= n <= 10", not bad, _detail(bad))


def _length_oracle() -> list:
    n = 4
    sp = special_elements(n)
    bad = []
    total = 0
    # W~° = W_aff . Omega; Omega is <tau_1, tau_2> up to central translations
    for omega in (AffineElement.identity(n), sp.tau1, sp.tau2, sp.tau2 * sp.tau1):
        for w, d in bfs_lengths(n, 8, omega).items():
            total += 1
            if length(w) != d:
                bad.append((w, d, length(w)))
    return bad, total


def _bruhat_oracle() -> tuple:
    bad = []
    pairs = 0
    for s in "+-":
        adm = sorted(admissible_set(cochar(s, 4)))
        for y in adm:
            below = lower_set_by_covers([y])
            for x in adm:
                pairs += 1
                if bruhat_leq(x, y) != (x in below):
                    bad.append((x, y))
    return bad, pairs


def _parity_oracle() -> tuple:
    bad = []
    total = 0
    for n in (4, 5):
        for bits in product((0, 1), repeat=2 * n):
            if not is_totally_isotropic(bits):
                continue
            for s in "+-":
                total += 1
                if spin_orbit_member(bits, s) != spin_orbit_member_brute(bits, s):
                    bad.append((bits, s))
    return bad, total


def _rank_oracle() -> tuple:
    bad = []
    total = 0
    for i in range(5):
        for E in permissible_subsets(i, 4):
            total += 1
            if stratum_rank(E, i, 4) != stratum_rank_matrix(E, i, 4):
                bad.append((i, sorted(E)))
    return bad, total


def test_criterion_8_oracles(report):
    results = {
        "length = BFS length": _length_oracle(),
        "subword Bruhat = cover closure": _bruhat_oracle(),
        "parity spin test = orbit membership": _parity_oracle(),
        "stratum_rank = matrix rank": _rank_oracle(),
    }
    bad = {k: v[0][:3] for k, v in results.items() if v[0]}
    counts = ", ".join(f"{k}: {v[1]} cases" for k, v in results.items())
    report(8, "oracle equivalences", not bad, str(bad) if bad else counts)
