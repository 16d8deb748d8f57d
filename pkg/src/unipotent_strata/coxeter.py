"""Cohomology of the Coxeter variety X^k of Sp(2k, q), with Frobenius labels."""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

from .exactq import RatPoly, ratfunc_normalize, ratfunc_to_poly
from .hc import SymbolMultiset, restrict
from .symbols import Symbol

__all__ = [
    "EigenvalueLabel",
    "GradedRep",
    "RecursionReport",
    "coxeter_symbols",
    "lusztig_degree",
    "coxeter_graded",
    "verify_restriction_recursion",
]


@dataclass(frozen=True)
class EigenvalueLabel:
    """Frobenius eigenvalue ``sign * q**exponent``; ``sign`` is ``+1`` or ``-1``."""

    sign: int
    exponent: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.exponent < 0:
            raise ValueError("exponent must be non-negative")
        if self.sign == -1 and self.exponent == 0:
            raise ValueError("label -q^0 does not occur")

    @property
    def sort_key(self):
        # '+' cells before '-' cells, then by exponent
        return (0 if self.sign > 0 else 1, self.exponent)

    def __lt__(self, other: "EigenvalueLabel") -> bool:
        return self.sort_key < other.sort_key

    def twist(self, n: int = 1) -> "EigenvalueLabel":
        """Tate-twisted label, exponent moved by ``n``."""
        return EigenvalueLabel(self.sign, self.exponent + n)

    @property
    def weight(self) -> int:
        """Twice the exponent: |sign*q^e| = q^(weight/2)."""
        return 2 * self.exponent

    def value(self, q0: int) -> int:
        return self.sign * q0**self.exponent

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}q^{self.exponent}"

    def pretty(self) -> str:
        s = "+" if self.sign > 0 else "-"
        if self.exponent == 0:
            return f"{s}1"
        return f"{s}q" if self.exponent == 1 else f"{s}q^{self.exponent}"

    _PATTERN = re.compile(r"^([+-])(?:q(?:\^(\d+))?|1)$")

    @classmethod
    def parse(cls, text: str) -> "EigenvalueLabel":
        m = cls._PATTERN.match(text.strip())
        if not m:
            raise ValueError(f"bad eigenvalue label {text!r}")
        sign = 1 if m.group(1) == "+" else -1
        if text.strip()[1:] == "1":
            exponent = 0
        else:
            exponent = int(m.group(2)) if m.group(2) is not None else 1
        return cls(sign, exponent)


PLUS = lambda e: EigenvalueLabel(1, e)  # noqa: E731
MINUS = lambda e: EigenvalueLabel(-1, e)  # noqa: E731


@dataclass
class GradedRep:
    """``by_degree[k][label]`` is the labelled constituent set in degree ``k``."""

    by_degree: dict[int, dict[EigenvalueLabel, SymbolMultiset]] = field(default_factory=dict)

    def cell(self, k: int, label: EigenvalueLabel) -> SymbolMultiset:
        return self.by_degree.get(k, {}).get(label, SymbolMultiset())

    def degrees(self) -> list[int]:
        return sorted(self.by_degree)

    def all_symbols(self) -> list[Symbol]:
        return [s for k in self.degrees() for ms in self.by_degree[k].values() for s in ms]

    def to_json(self) -> list[dict]:
        out = []
        for k in self.degrees():
            cells = self.by_degree[k]
            out.append(
                {
                    "degree": k,
                    "cells": [
                        {"eigenvalue": str(lab), "symbols": cells[lab].to_json()}
                        for lab in sorted(cells)
                    ],
                }
            )
        return out

    @classmethod
    def from_json(cls, data) -> "GradedRep":
        rep = cls()
        for entry in data:
            rep.by_degree[int(entry["degree"])] = {
                EigenvalueLabel.parse(c["eigenvalue"]): SymbolMultiset.from_json(c["symbols"])
                for c in entry["cells"]
            }
        return rep


def _S(k: int, i: int) -> Symbol:
    return Symbol(tuple(range(k - i)) + (k,), tuple(range(1, k - i + 1)))


def _T(k: int, j: int) -> Symbol:
    return Symbol(tuple(range(k - j)) + (k,), tuple(range(1, k - j - 1)))


def coxeter_symbols(k: int) -> tuple[list[Symbol], list[Symbol]]:
    """The symbols S^k_0..S^k_k and T^k_0..T^k_{k-2}."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return [_S(k, i) for i in range(k + 1)], [_T(k, j) for j in range(k - 1)]


def _q(e: int) -> RatPoly:
    return RatPoly.monomial(e)


@lru_cache(maxsize=None)
def lusztig_degree(k: int, slot: str, index: int) -> RatPoly:
    """Eigenspace dimension from Lusztig's product formula.

    ``slot`` is ``"S"`` (eigenvalue q^index) or ``"T"`` (eigenvalue -q^(index+1)).
    """
    num = RatPoly.const(1)
    den = RatPoly.const(1)
    if slot == "S":
        i = index
        if not 0 <= i <= k:
            raise ValueError(f"S index {i} out of range for k={k}")
        num = _q((k - i) ** 2)
        for s in range(1, k - i + 1):
            num = num * RatPoly.q_power_minus(s + i)
            den = den * RatPoly.q_power_minus(s)
        for s in range(0, k - i):
            num = num * RatPoly.q_power_plus(s + i)
            den = den * RatPoly.q_power_plus(s)
    elif slot == "T":
        j = index
        if not 0 <= j <= k - 2:
            raise ValueError(f"T index {j} out of range for k={k}")
        num = _q((k - j - 1) ** 2) * RatPoly.q_power_minus(k - 1) * RatPoly.q_power_minus(k)
        den = RatPoly((2, 2))  # 2(q+1)
        for s in range(1, k - j - 1):
            num = num * RatPoly.q_power_minus(s + j)
            den = den * RatPoly.q_power_minus(s)
        for s in range(2, k - j):
            num = num * RatPoly.q_power_plus(s + j)
            den = den * RatPoly.q_power_plus(s)
    else:
        raise ValueError(f"slot must be 'S' or 'T', not {slot!r}")
    return ratfunc_to_poly(ratfunc_normalize(num, den))


@lru_cache(maxsize=None)
def _graded(k: int) -> GradedRep:
    S, T = coxeter_symbols(k)
    rep = GradedRep()
    for i in range(k + 1):
        cells = {PLUS(i): SymbolMultiset({S[i]})}
        if i <= k - 2:
            cells[MINUS(i + 1)] = SymbolMultiset({T[i]})
        rep.by_degree[k + i] = cells
    return rep


def coxeter_graded(k: int) -> GradedRep:
    """Graded, Frobenius-labelled H_c^*(X^k); non-zero only in degrees k..2k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    g = _graded(k)
    return GradedRep({d: dict(c) for d, c in g.by_degree.items()})


@dataclass
class RecursionReport:
    k: int
    checked: int = 0
    mismatches: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {"k": self.k, "checked": self.checked, "passed": self.passed,
                "mismatches": self.mismatches}


def verify_restriction_recursion(k: int) -> RecursionReport:
    """Check that restricting H^{k+i}(X^k) to Sp(2(k-1)) matches
    H^{k-1+i}(X^{k-1}) ⊕ H^{k-2+i}(X^{k-1})(1) cell by cell."""
    if k < 1:
        raise ValueError("recursion needs k >= 1")
    big = coxeter_graded(k)
    small = coxeter_graded(k - 1)
    report = RecursionReport(k)
    for i in range(k + 1):
        lhs: dict[EigenvalueLabel, SymbolMultiset] = defaultdict(SymbolMultiset)
        for label, ms in big.by_degree.get(k + i, {}).items():
            for s in ms:
                lhs[label] = lhs[label] + restrict(s, 1)
        rhs: dict[EigenvalueLabel, SymbolMultiset] = defaultdict(SymbolMultiset)
        for label, ms in small.by_degree.get(k - 1 + i, {}).items():
            rhs[label] = rhs[label] + ms
        for label, ms in small.by_degree.get(k - 2 + i, {}).items():
            rhs[label.twist(1)] = rhs[label.twist(1)] + ms
        for label in sorted(set(lhs) | set(rhs)):
            report.checked += 1
            if lhs[label] != rhs[label]:
                report.mismatches.append(
                    {
                        "degree": k + i,
                        "eigenvalue": str(label),
                        "restricted": lhs[label].to_json(),
                        "expected": rhs[label].to_json(),
                    }
                )
    return report
