"""Acceptance criteria 1-10, each under its wall-clock budget.

Run under pytest (the PASS/FAIL lines are printed in the terminal summary) or
directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import time
from math import comb
from pathlib import Path

import pytest

from unipotent_strata.coxeter import EigenvalueLabel, coxeter_symbols, lusztig_degree, verify_restriction_recursion
from unipotent_strata.counting import (
    CaseSpec,
    CountingError,
    FormSpace,
    Kind,
    brute_force_isotropic,
    count_isotropic,
    gram_matrix,
    lattice_neighbours,
    nu,
)
from unipotent_strata.exactq import RatPoly
from unipotent_strata.hc import induce
from unipotent_strata.stratum import label_in_window, nonpurity_witnesses, survival_bounds, verify_families, weight_table
from unipotent_strata.symbols import Symbol, degree, enumerate_symbols


SNAPSHOT = Path(__file__).parent / "snapshots" / "symbols_rank2.json"
RESULTS: list[str] = []

q = RatPoly.monomial(1)
S = Symbol.of
PLUS = lambda e: EigenvalueLabel(1, e)  # noqa: E731
MINUS = lambda e: EigenvalueLabel(-1, e)  # noqa: E731


def _record(number: int, title: str, limit: float, check) -> None:
    start = time.perf_counter()
    error = None
    try:
        check()
    except AssertionError as exc:
        error = exc
    elapsed = time.perf_counter() - start
    ok = error is None and elapsed < limit
    reason = "" if ok else (f": {error}" if error else f": over budget {limit:g}s")
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'} ({elapsed:6.2f}s / {limit:g}s) {title}{reason}"
    RESULTS.append(line)
    print(line)
    if error is not None:
        raise error
    assert elapsed < limit, f"criterion {number} took {elapsed:.2f}s, budget {limit}s"


# -- checks ---------------------------------------------------------------------------


def check_inventory():
    got = json.dumps([s.to_json() for s in enumerate_symbols(2)], indent=2) + "\n"
    assert got == SNAPSHOT.read_text(), "rank-2 inventory differs from snapshot"


def check_degrees():
    for k in range(11):
        Ss, Ts = coxeter_symbols(k)
        for i, s in enumerate(Ss):
            assert degree(s) == lusztig_degree(k, "S", i), f"S^{k}_{i}"
        for j, t in enumerate(Ts):
            assert degree(t) == lusztig_degree(k, "T", j), f"T^{k}_{j}"
    two_q_plus_two = (q + 1).scale(2)
    assert degree(coxeter_symbols(1)[0][0]) == q
    assert degree(coxeter_symbols(2)[0][0]) == q**4
    assert degree(coxeter_symbols(3)[1][0]) * two_q_plus_two == q**4 * (q**2 - 1) * (q**3 - 1)
    assert degree(coxeter_symbols(4)[1][2]) * two_q_plus_two == q * (q**3 - 1) * (q**4 - 1)


def check_recursion():
    for k in range(1, 11):
        report = verify_restriction_recursion(k)
        assert report.passed, f"k={k}: {report.mismatches[:1]}"


def check_worked_induction():
    got = induce(S([0, 3], [1]), 3)
    expected = {
        S([0, 3], [4]), S([0, 4], [3]), S([0, 5], [2]), S([0, 6], [1]),
        S([1, 3], [3]), S([2, 3], [2]), S([0, 1, 6], [1, 2]), S([0, 3, 4], [1, 2]),
    }
    assert got == expected and got.rank == 6


def check_families():
    for theta in range(9):
        report = verify_families(theta)
        assert report.passed, f"θ={theta}: {report.mismatches[:1]}"


def check_counting():
    for p in (3, 5):
        for kind in Kind:
            for d in range(7):
                try:
                    space = FormSpace(kind, d)
                except CountingError:
                    continue
                g = gram_matrix(kind, d, p)
                for r in range(space.delta + 1):
                    f, b = count_isotropic(space, r, p), brute_force_isotropic(g, r)
                    assert f == b, f"{kind.value} d={d} r={r} p={p}: {f} != {b}"
    assert count_isotropic(FormSpace(Kind.ORTHOGONAL_EVEN_SPLIT, 2), 1, 3) == 2


def check_nu():
    for p in (3, 5, 7, 11):
        cases = [
            (CaseSpec.of(2, p, "even-split"), 1),
            (CaseSpec.of(3, p), p),
            (CaseSpec.of(4, p, "even-nonsplit"), p**2),
        ]
        for case, expected in cases:
            N = lattice_neighbours(case)
            alternating = sum((-1) ** i * comb(N, i) for i in range(2, N + 1))
            assert nu(case) == expected == alternating == N - 1


def check_corners():
    for theta in range(2, 9):
        b = survival_bounds(theta)
        h0 = b.get(0, PLUS(0))
        top = b.get(2 * theta, PLUS(theta))
        corner = b.get(2 * theta - 2, MINUS(theta - 1))
        assert h0.exact and h0.guaranteed == {S([theta])}, f"H^0 at θ={theta}"
        assert [c.label for c in b.degree_cells(0)] == [PLUS(0)]
        assert top.exact and top.guaranteed == {S([theta])}, f"top at θ={theta}"
        assert [c.label for c in b.degree_cells(2 * theta)] == [PLUS(theta)]
        assert corner.exact and corner.guaranteed == {S([0, 1, theta])}, f"corner at θ={theta}"
    b = survival_bounds(1)
    assert sorted((k, str(lab)) for k, lab in b.cells) == [(0, "+q^0"), (1, "+q^0"), (2, "+q^1")]
    assert b.get(0, PLUS(0)).guaranteed == {S([1])} and b.get(0, PLUS(0)).exact
    assert not b.get(1, PLUS(0)).guaranteed and b.get(1, PLUS(0)).exact
    assert b.get(2, PLUS(1)).guaranteed == {S([1])} and b.get(2, PLUS(1)).exact


def _r(lo, hi):
    return list(range(lo, hi + 1))


def check_guaranteed_families():
    for theta in range(3, 7):
        b = survival_bounds(theta, sharpen=False)
        for tp in range(theta):
            gap = theta - tp
            for i in range(0, tp - 1):
                Y = _r(1, tp - i - 1)
                expected = {S(_r(0, tp - i - 1) + [tp + d], Y + [theta - i - d]) for d in _r(0, gap - 1)}
                expected |= {S(_r(0, tp - i - 2) + [tp - i - 1 + d, tp], Y + [theta - i - d])
                             for d in _r(1, min(i, gap - 1))}
                cell = b.get(tp + i, PLUS(i))
                assert set(cell.guaranteed) == expected, f"S θ={theta} θ'={tp} i={i}"
                assert len(cell.ambiguous) <= 4, f"S θ={theta} θ'={tp} i={i} ambiguous"
            for j in range(0, tp - 3):
                Y = _r(1, tp - j - 3)
                expected = {S(_r(0, tp - j - 1) + [tp + d], Y + [theta - j - 2 - d]) for d in _r(0, gap - 1)}
                expected |= {S(_r(0, tp - j - 2) + [tp - j - 1 + d, tp], Y + [theta - j - 2 - d])
                             for d in _r(1, min(j, gap - 1))}
                cell = b.get(tp + j, MINUS(j + 1))
                assert set(cell.guaranteed) == expected, f"T θ={theta} θ'={tp} j={j}"
                assert len(cell.ambiguous) <= 4, f"T θ={theta} θ'={tp} j={j} ambiguous"


def check_window_and_purity():
    for theta in range(9):
        for row in weight_table(theta):
            if row.max_dim:
                assert label_in_window(theta, row.k, row.label), f"θ={theta} k={row.k} {row.label}"
    assert nonpurity_witnesses(2) == [], "a witness was claimed at θ=2"
    for theta in range(3, 9):
        assert nonpurity_witnesses(theta), f"no witness at θ={theta}"


CRITERIA = [
    (1, "symbol inventory of rank 2", 1, check_inventory),
    (2, "hook formula vs product formula, k <= 10", 30, check_degrees),
    (3, "restriction recursion, 1 <= k <= 10", 30, check_recursion),
    (4, "worked induction example", 1, check_worked_induction),
    (5, "families equal induction, θ <= 8", 60, check_families),
    (6, "isotropic counts vs enumeration", 60, check_counting),
    (7, "multiplicity ν", 1, check_nu),
    (8, "exact corners of H_c(S_θ)", 30, check_corners),
    (9, "guaranteed sets of the generic matcher", 60, check_guaranteed_families),
    (10, "eigenvalue window and non-purity", 30, check_window_and_purity),
]


@pytest.mark.parametrize("number,title,limit,check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_acceptance(number, title, limit, check):
    _record(number, title, limit, check)


if __name__ == "__main__":
    failed = 0
    for number, title, limit, check in CRITERIA:
        try:
            _record(number, title, limit, check)
        except AssertionError:
            failed += 1
    raise SystemExit(1 if failed else 0)
