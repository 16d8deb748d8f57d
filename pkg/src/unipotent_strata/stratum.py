"""The stratification spectral sequence of the closed Bruhat-Tits stratum S_θ.

S_θ is stratified by pieces X_{I_a}(w_a), 0 <= a <= θ, each of which is a
parabolic induction of the Coxeter variety X^a.  The first page is therefore

    E_1^{a,b} = induce(H^{a+b}_c(X^a), θ - a)

and row ``b`` only carries the Frobenius eigenvalues q^b and -q^{b+1}.  The
differentials are never built.  Survival is decided by matching equal symbols
between neighbouring cells of a row, which is all the information available.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from math import ceil

from .coxeter import EigenvalueLabel, coxeter_graded, coxeter_symbols
from .exactq import RatPoly
from .hc import SymbolMultiset, induce
from .symbols import Symbol, degree, reduce_symbol, trivial_symbol

__all__ = [
    "SpectralPage",
    "CellBounds",
    "BoundsReport",
    "FamilyReport",
    "EulerReport",
    "e1_page",
    "family_terms",
    "verify_families",
    "survival_bounds",
    "weight_table",
    "weight_table_csv",
    "nonpurity_witnesses",
    "euler_check",
    "label_in_window",
]


def _row_labels(b: int) -> tuple[EigenvalueLabel, EigenvalueLabel]:
    return EigenvalueLabel(1, b), EigenvalueLabel(-1, b + 1)


def _row_of(label: EigenvalueLabel) -> int:
    return label.exponent if label.sign > 0 else label.exponent - 1


# -- first page ----------------------------------------------------------------


@dataclass
class SpectralPage:
    theta: int
    cells: dict[tuple[int, int], dict[EigenvalueLabel, SymbolMultiset]] = field(default_factory=dict)

    def cell(self, a: int, b: int, label: EigenvalueLabel) -> SymbolMultiset:
        return self.cells.get((a, b), {}).get(label, SymbolMultiset())

    def row_labels(self, b: int) -> set[EigenvalueLabel]:
        return {lab for (a, bb), c in self.cells.items() if bb == b for lab in c}

    def to_json(self) -> dict:
        return {
            "theta": self.theta,
            "cells": [
                {
                    "a": a,
                    "b": b,
                    "cells": [
                        {"eigenvalue": str(lab), "symbols": c[lab].to_json()}
                        for lab in sorted(c)
                    ],
                }
                for (a, b), c in sorted(self.cells.items())
            ],
        }


def e1_page(theta: int) -> SpectralPage:
    """First page, cell (a, b) induced from H^{a+b}_c(X^a) with labels kept."""
    if theta < 0:
        raise ValueError("theta must be non-negative")
    page = SpectralPage(theta)
    for a in range(theta + 1):
        cox = coxeter_graded(a)
        for k in cox.degrees():
            b = k - a
            cells = {}
            for label, ms in cox.by_degree[k].items():
                if _row_of(label) != b:
                    raise AssertionError(f"label {label} outside row {b}")
                acc = SymbolMultiset()
                for s in ms:
                    acc = acc + induce(s, theta - a)
                if not acc.is_multiplicity_free():
                    raise AssertionError(f"E1 cell ({a},{b}) {label} is not multiplicity-free")
                cells[label] = acc
            page.cells[(a, b)] = cells
    return page


# -- explicit families --------------------------------------------------------------


def _sym(X, Y) -> Symbol:
    X, Y = sorted(X), sorted(Y)
    if len(set(X)) != len(X) or len(set(Y)) != len(Y):
        raise AssertionError(f"family template produced repeated entries: {X};{Y}")
    return reduce_symbol(X, Y)


def _r(lo: int, hi: int) -> list[int]:
    """Integers lo..hi inclusive (empty when hi < lo)."""
    return list(range(lo, hi + 1))


def _s_families(theta: int, tp: int, i: int) -> dict[str, list[Symbol]]:
    gap = theta - tp
    out: dict[str, list[Symbol]] = {}
    if i == tp:
        out["S1'"] = [_sym([0, tp + 1 + d], [gap - d]) for d in _r(0, gap)]
        out["S2'"] = [_sym([d, tp + 1], [gap - d]) for d in _r(1, min(tp, gap))]
        return out
    Y = _r(1, tp - i - 1)
    out["S1"] = [_sym(_r(0, tp - i - 1) + [tp + d], Y + [theta - i - d]) for d in _r(0, gap)]
    out["S2"] = [
        _sym(_r(0, tp - i - 2) + [tp - i - 1 + d, tp], Y + [theta - i - d])
        for d in _r(1, min(i, gap))
    ]
    if tp != theta:
        out["S Exc 1"] = [_sym(_r(0, tp - i) + [theta], _r(1, tp - i + 1))]
    if tp not in (theta, theta - 1) and theta <= tp + i + 1:
        out["S Exc 2"] = [_sym(_r(0, tp - i - 1) + [theta - i - 1, tp + 1], _r(1, tp - i + 1))]
    return out


def _t_families(theta: int, tp: int, j: int) -> dict[str, list[Symbol]]:
    gap = theta - tp
    out: dict[str, list[Symbol]] = {}
    if j == tp - 2:
        out["T1'"] = [_sym([0, 1, 2, tp + 1 + d], [gap - d]) for d in _r(0, gap)]
        out["T2'"] = [_sym([0, 1, 2 + d, tp + 1], [gap - d]) for d in _r(1, min(tp - 2, gap))]
        return out
    Y = _r(1, tp - j - 3)
    out["T1"] = [_sym(_r(0, tp - j - 1) + [tp + d], Y + [theta - j - 2 - d]) for d in _r(0, gap)]
    out["T2"] = [
        _sym(_r(0, tp - j - 2) + [tp - j - 1 + d, tp], Y + [theta - j - 2 - d])
        for d in _r(1, min(j, gap))
    ]
    if tp != theta:
        out["T Exc 1"] = [_sym(_r(0, tp - j) + [theta], _r(1, tp - j - 1))]
    if tp not in (theta, theta - 1) and theta <= tp + j + 1:
        out["T Exc 2"] = [_sym(_r(0, tp - j - 1) + [theta - j - 1, tp + 1], _r(1, tp - j - 1))]
    return out


def family_terms(theta: int, theta_prime: int, series: str, index: int) -> dict[str, list[Symbol]]:
    """Tagged symbol families of induce(S^{θ'}_i, θ-θ') (``series="S"``) or of
    induce(T^{θ'}_j, θ-θ') (``series="T"``)."""
    if not 0 <= theta_prime <= theta:
        raise ValueError("need 0 <= theta_prime <= theta")
    if series == "S":
        if not 0 <= index <= theta_prime:
            raise ValueError(f"S index {index} out of range")
        return _s_families(theta, theta_prime, index)
    if series == "T":
        if not 0 <= index <= theta_prime - 2:
            raise ValueError(f"T index {index} out of range")
        return _t_families(theta, theta_prime, index)
    raise ValueError(f"series must be 'S' or 'T', not {series!r}")


@dataclass
class FamilyReport:
    theta: int
    checked: int = 0
    mismatches: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {"theta": self.theta, "checked": self.checked, "passed": self.passed,
                "mismatches": self.mismatches}


def verify_families(theta: int) -> FamilyReport:
    """Compare every family union with direct induction, for all θ' <= θ."""
    report = FamilyReport(theta)
    for tp in range(theta + 1):
        S, T = coxeter_symbols(tp)
        slots = [("S", i, S[i]) for i in range(tp + 1)] + [("T", j, T[j]) for j in range(tp - 1)]
        for series, idx, sym in slots:
            report.checked += 1
            fams = family_terms(theta, tp, series, idx)
            members = [s for lst in fams.values() for s in lst]
            expected = induce(sym, theta - tp)
            problem = None
            if len(members) != len(set(members)):
                problem = "families overlap or repeat a symbol"
            elif set(members) != set(expected) or not expected.is_multiplicity_free():
                problem = "family union differs from induction"
            if problem:
                report.mismatches.append(
                    {
                        "theta_prime": tp,
                        "slot": f"{series}{idx}",
                        "problem": problem,
                        "families": {t: [s.short() for s in l] for t, l in sorted(fams.items())},
                        "induced": [s.short() for s in expected],
                    }
                )
    return report


# -- survival analysis ---------------------------------------------------------------


@dataclass
class CellBounds:
    degree: int
    label: EigenvalueLabel
    a: int
    b: int
    guaranteed: SymbolMultiset
    ambiguous: SymbolMultiset
    beyond_theorem: bool = False

    @property
    def exact(self) -> bool:
        return not self.ambiguous

    def min_dim(self) -> RatPoly:
        return _dim(self.guaranteed)

    def max_dim(self) -> RatPoly:
        return _dim(self.guaranteed) + _dim(self.ambiguous)

    def to_json(self) -> dict:
        return {
            "eigenvalue": str(self.label),
            "a": self.a,
            "b": self.b,
            "guaranteed": self.guaranteed.to_json(),
            "ambiguous": self.ambiguous.to_json(),
            "exact": self.exact,
            "beyond_theorem": self.beyond_theorem,
        }


def _dim(ms: SymbolMultiset) -> RatPoly:
    total = RatPoly()
    for s, m in ms.items():
        total = total + degree(s).scale(m)
    return total


@dataclass
class BoundsReport:
    theta: int
    sharpened: bool
    cells: dict[tuple[int, EigenvalueLabel], CellBounds] = field(default_factory=dict)

    def get(self, k: int, label: EigenvalueLabel) -> CellBounds | None:
        return self.cells.get((k, label))

    def degree_cells(self, k: int) -> list[CellBounds]:
        return [c for (kk, lab), c in sorted(self.cells.items(), key=_cell_key) if kk == k]

    def to_json(self) -> dict:
        degrees = sorted({k for k, _ in self.cells})
        return {
            "theta": self.theta,
            "sharpened": self.sharpened,
            "degrees": [
                {"degree": k, "cells": [c.to_json() for c in self.degree_cells(k)]}
                for k in degrees
            ],
        }


def _cell_key(item):
    (k, label), _ = item
    return (k, label.sort_key)


def _beyond_theorem(theta: int, a: int, label: EigenvalueLabel) -> bool:
    if label.sign > 0:
        i = label.exponent
        return i + 1 == a and not (a == 1 and i == 0)
    j = label.exponent - 1
    return j + 3 == a


def survival_bounds(theta: int, sharpen: bool = True) -> BoundsReport:
    """Guaranteed and ambiguous constituents of each H^k_c(S_θ) eigenspace.

    Within a row every symbol occurs in a run of consecutive cells.  The
    differential between two neighbours of a run is either zero or an
    isomorphism on that constituent, so an occurrence with no live neighbour
    survives and any other occurrence is ambiguous.  With ``sharpen`` the fact
    that H^0_c(S_θ) is the trivial representation is fed in first.
    """
    page = e1_page(theta)
    rows = sorted({b for (_, b) in page.cells})
    seen: dict[EigenvalueLabel, int] = {}
    for b in rows:
        for lab in page.row_labels(b):
            if lab in seen and seen[lab] != b:
                raise AssertionError(f"label {lab} occurs on rows {seen[lab]} and {b}")
            seen[lab] = b
    report = BoundsReport(theta, sharpen)
    triv = trivial_symbol(theta)
    for b in rows:
        for label in sorted(page.row_labels(b)):
            cols = [a for a in range(theta + 1) if page.cell(a, b, label)]
            # live[a] = constituents of cell a whose fate is not yet decided
            dead: dict[int, set[Symbol]] = {a: set() for a in cols}
            forced: dict[int, set[Symbol]] = {a: set() for a in cols}
            # cut[a] = symbols whose differential from column a to a+1 is known to vanish
            cut: dict[int, set[Symbol]] = {a: set() for a in range(-1, theta + 1)}
            if sharpen and b == 0 and label == EigenvalueLabel(1, 0):
                _sharpen_h0(page, label, triv, dead, forced, cut)
            for a in cols:
                here = page.cell(a, b, label)
                left = page.cell(a - 1, b, label)
                right = page.cell(a + 1, b, label)
                guaranteed, ambiguous = {}, {}
                for s in here:
                    if s in dead[a]:
                        continue
                    linked_left = s in left and s not in cut[a - 1] and s not in dead.get(a - 1, ())
                    linked_right = s in right and s not in cut[a]
                    if s in forced[a] or not (linked_left or linked_right):
                        guaranteed[s] = 1
                    else:
                        ambiguous[s] = 1
                k = a + b
                report.cells[(k, label)] = CellBounds(
                    k, label, a, b,
                    SymbolMultiset(guaranteed), SymbolMultiset(ambiguous),
                    _beyond_theorem(theta, a, label),
                )
    _check_corners(report, theta)
    return report


def _sharpen_h0(page, label, triv, dead, forced, cut) -> None:
    """H^0 is exactly the trivial representation.

    Every other constituent of E_1^{0,0} must map isomorphically onto its copy
    in E_1^{1,0}.  Those copies are then boundaries, so the next differential
    vanishes on them.
    """
    cell0 = page.cell(0, 0, label)
    cell1 = page.cell(1, 0, label)
    for s in cell0:
        if s == triv:
            forced[0].add(s)
            cut[0].add(s)
            continue
        if s not in cell1:
            raise AssertionError(f"{s} in E_1^(0,0) has no partner; H^0 cannot be trivial")
        dead[0].add(s)
        dead[1].add(s)
        cut[1].add(s)


def _check_corners(report: BoundsReport, theta: int) -> None:
    top = report.get(2 * theta, EigenvalueLabel(1, theta))
    if top is None or not top.exact or top.guaranteed != {trivial_symbol(theta)}:
        raise AssertionError("top cohomology is not the trivial representation")
    if theta >= 2:
        corner = report.get(2 * theta - 2, EigenvalueLabel(-1, theta - 1))
        expected = {reduce_symbol([0, 1, theta], [])}
        if corner is None or not corner.exact or corner.guaranteed != expected:
            raise AssertionError("the -q^(θ-1) corner is not (0 1 θ;—)")


# -- weights -------------------------------------------------------------------------


def label_in_window(theta: int, k: int, label: EigenvalueLabel) -> bool:
    """Whether ``label`` may occur on H^k_c(S_θ) according to the weight bounds."""
    lo = k - min(k, theta)
    hi = k - ceil(k / 2)
    if label.sign > 0:
        return lo <= label.exponent <= hi and label.exponent <= theta
    j = label.exponent - 1
    return lo <= j <= hi - 1 and j <= theta - 2


@dataclass(frozen=True)
class WeightRow:
    k: int
    label: EigenvalueLabel
    min_dim: RatPoly
    max_dim: RatPoly
    exact: bool

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "eigenvalue": str(self.label),
            "min_dim": self.min_dim.to_json(),
            "max_dim": self.max_dim.to_json(),
            "exact": self.exact,
        }


def weight_table(theta: int, sharpen: bool = True) -> list[WeightRow]:
    bounds = survival_bounds(theta, sharpen)
    rows = []
    for (k, label), cell in sorted(bounds.cells.items(), key=_cell_key):
        if not label_in_window(theta, k, label) and (cell.guaranteed or cell.ambiguous):
            raise AssertionError(f"label {label} in degree {k} lies outside the weight window")
        rows.append(WeightRow(k, label, cell.min_dim(), cell.max_dim(), cell.exact))
    return rows


def weight_table_csv(rows: list[WeightRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "eigenvalue", "min_dim", "max_dim", "exact"])
    for r in rows:
        w.writerow([r.k, str(r.label), str(r.min_dim), str(r.max_dim), str(r.exact).lower()])
    return buf.getvalue()


def nonpurity_witnesses(theta: int, sharpen: bool = True) -> list[tuple[int, EigenvalueLabel, Symbol]]:
    """Guaranteed constituents whose eigenvalue weight differs from the degree."""
    bounds = survival_bounds(theta, sharpen)
    out = []
    for (k, label), cell in sorted(bounds.cells.items(), key=_cell_key):
        if label.weight != k:
            out.extend((k, label, s) for s in cell.guaranteed)
    return out


# -- Euler characteristic ------------------------------------------------------------


@dataclass
class EulerReport:
    theta: int
    checked: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


_SAMPLE_Q = (3, 5, 7, 9, 11, 25, 27)


def euler_check(theta: int, sharpen: bool = True) -> EulerReport:
    """Alternating sums along each row of E_1 against the survival bounds.

    The E_1 sum equals the alternating sum of the true E_2 dimensions, which
    lie between the guaranteed and guaranteed+ambiguous dimensions.
    """
    page = e1_page(theta)
    bounds = survival_bounds(theta, sharpen)
    report = EulerReport(theta)
    rows = sorted({b for (_, b) in page.cells})
    for b in rows:
        for label in sorted(page.row_labels(b)):
            e1 = RatPoly()
            lo = RatPoly()
            hi = RatPoly()
            all_exact = True
            for a in range(theta + 1):
                sign = -1 if a % 2 else 1
                e1 = e1 + _dim(page.cell(a, b, label)).scale(sign)
                cell = bounds.get(a + b, label)
                if cell is None:
                    continue
                all_exact = all_exact and cell.exact
                g, m = cell.min_dim(), cell.max_dim()
                if sign > 0:
                    lo, hi = lo + g, hi + m
                else:
                    lo, hi = lo - m, hi - g
            report.checked += 1
            if all_exact:
                ok = e1 == lo
            else:
                ok = all(lo(q0) <= e1(q0) <= hi(q0) for q0 in _SAMPLE_Q)
            if not ok:
                report.violations.append(
                    {"row": b, "eigenvalue": str(label), "e1": str(e1), "low": str(lo), "high": str(hi)}
                )
    return report
