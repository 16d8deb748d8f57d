"""Symbols of odd positive defect and the unipotent characters of Sp(2n, q).

A symbol is a pair of strictly increasing rows ``(X, Y)`` of non-negative
integers with ``len(X) - len(Y)`` odd and positive, taken up to the shift
``(X, Y) -> ({0} + (X+1), {0} + (Y+1))``.  :class:`Symbol` always holds the
reduced representative (0 is never in both rows).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

from .exactq import RatPoly, ratfunc_normalize, ratfunc_to_poly, NotAPolynomialError

__all__ = [
    "Symbol",
    "Hook",
    "Cohook",
    "CuspidalSupport",
    "SymbolError",
    "reduce_symbol",
    "shift",
    "rank_defect",
    "enumerate_symbols",
    "hooks_and_cohooks",
    "degree",
    "core_and_cuspidal",
    "cuspidal_symbol",
    "remove_hook",
    "trivial_symbol",
    "steinberg_symbol",
]

FIRST, SECOND = "first", "second"


class SymbolError(ValueError):
    """Malformed symbol rows."""


def _check_row(row: Sequence[int], name: str) -> tuple[int, ...]:
    row = tuple(row)
    for v in row:
        if not isinstance(v, int) or isinstance(v, bool):
            raise SymbolError(f"row {name} has non-integer entry {v!r}")
        if v < 0:
            raise SymbolError(f"row {name} has negative entry {v}")
    for a, b in zip(row, row[1:]):
        if b <= a:
            raise SymbolError(f"row {name} is not strictly increasing: {row}")
    return row


def _unshift(X: tuple[int, ...], Y: tuple[int, ...]):
    while X and Y and X[0] == 0 and Y[0] == 0:
        X = tuple(x - 1 for x in X[1:])
        Y = tuple(y - 1 for y in Y[1:])
    return X, Y


@dataclass(frozen=True, order=True)
class Symbol:
    """Reduced symbol; construct through :func:`reduce_symbol` or ``Symbol.of``."""

    X: tuple[int, ...]
    Y: tuple[int, ...]

    def __post_init__(self):
        X = _check_row(self.X, "X")
        Y = _check_row(self.Y, "Y")
        d = len(X) - len(Y)
        if d <= 0 or d % 2 == 0:
            raise SymbolError(f"defect {d} is not odd and positive")
        if X and Y and X[0] == 0 and Y[0] == 0:
            raise SymbolError("symbol is not reduced; use reduce_symbol")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @classmethod
    def of(cls, X: Sequence[int], Y: Sequence[int] = ()) -> "Symbol":
        return reduce_symbol(X, Y)

    @property
    def defect(self) -> int:
        return len(self.X) - len(self.Y)

    @property
    def rank(self) -> int:
        n = len(self.X) + len(self.Y)
        return sum(self.X) + sum(self.Y) - (n - 1) ** 2 // 4

    def row(self, which: str) -> tuple[int, ...]:
        if which == FIRST:
            return self.X
        if which == SECOND:
            return self.Y
        raise ValueError(f"unknown row {which!r}")

    def to_json(self) -> dict:
        return {"X": list(self.X), "Y": list(self.Y)}

    @classmethod
    def from_json(cls, data) -> "Symbol":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise SymbolError(f"malformed symbol JSON: {exc}") from None
        if not isinstance(data, dict) or set(data) != {"X", "Y"}:
            raise SymbolError('symbol JSON must be an object with keys "X" and "Y"')
        return reduce_symbol(data["X"], data["Y"])

    def short(self) -> str:
        """One-line rendering such as ``(0 1 2;1 2)`` or ``(2;—)``."""
        x = " ".join(map(str, self.X))
        y = " ".join(map(str, self.Y)) or "—"
        return f"({x};{y})"

    def pretty(self) -> str:
        """Two-row matrix layout."""
        width = max([len(str(v)) for v in self.X + self.Y] + [1])
        top = " ".join(str(v).rjust(width) for v in self.X)
        bottom = " ".join(str(v).rjust(width) for v in self.Y)
        return f"( {top} )\n( {bottom.ljust(len(top))} )"

    def __str__(self) -> str:
        return self.short()


def reduce_symbol(X: Sequence[int], Y: Sequence[int] = ()) -> Symbol:
    X = _check_row(X, "X")
    Y = _check_row(Y, "Y")
    d = len(X) - len(Y)
    if d <= 0 or d % 2 == 0:
        raise SymbolError(f"row lengths give defect {d}, which is not odd and positive")
    X, Y = _unshift(X, Y)
    return Symbol(X, Y)


def shift(S: Symbol, times: int = 1) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Rows of ``shift^times(S)`` (not reduced, hence returned as raw rows)."""
    X, Y = S.X, S.Y
    for _ in range(times):
        X = (0,) + tuple(x + 1 for x in X)
        Y = (0,) + tuple(y + 1 for y in Y)
    return X, Y


def rank_defect(S: Symbol) -> tuple[int, int]:
    return S.rank, S.defect


def trivial_symbol(theta: int) -> Symbol:
    return Symbol((theta,), ())


def steinberg_symbol(theta: int) -> Symbol:
    return reduce_symbol(range(theta + 1), range(1, theta + 1))


def cuspidal_symbol(delta: int) -> Symbol:
    return Symbol(tuple(range(2 * delta + 1)), ())


# -- enumeration -------------------------------------------------------------


def _increasing(length: int, total: int, lo: int) -> Iterator[tuple[int, ...]]:
    """Strictly increasing tuples of given length, entries >= lo, summing to total."""
    if length == 0:
        if total == 0:
            yield ()
        return
    # smallest possible sum with first entry v: v + (v+1) + ... + (v+length-1)
    v = lo
    while length * v + length * (length - 1) // 2 <= total:
        for rest in _increasing(length - 1, total - v, v + 1):
            yield (v,) + rest
        v += 1


def _min_sum(length: int, lo: int = 0) -> int:
    return length * lo + length * (length - 1) // 2


def enumerate_symbols(theta: int) -> list[Symbol]:
    """All reduced symbols of rank ``theta`` (every odd defect), sorted."""
    if theta < 0:
        raise ValueError("rank must be non-negative")
    out = []
    d = 1
    while d * d // 4 <= theta:
        # a reduced symbol with |Y| = r has rank >= r + floor(d^2/4)
        for r in range(theta - d * d // 4 + 1):
            m = r + d
            target = theta + (m + r - 1) ** 2 // 4
            for sx in range(_min_sum(m), target - _min_sum(r) + 1):
                for X in _increasing(m, sx, 0):
                    for Y in _increasing(r, target - sx, 0):
                        if X and Y and X[0] == 0 and Y[0] == 0:
                            continue
                        out.append(Symbol(X, Y))
        d += 2
    return sorted(out)


# -- hooks -------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Hook:
    row: str
    z: int
    length: int
    leg_length: int = 0


@dataclass(frozen=True, order=True)
class Cohook:
    row: str
    z: int
    length: int


def _hooks(S: Symbol) -> list[Hook]:
    out = []
    for which in (FIRST, SECOND):
        row = S.row(which)
        members = set(row)
        for idx, z in enumerate(row):
            for k in range(1, z + 1):
                if z - k not in members:
                    leg = sum(1 for s in row[:idx] if s > z - k)
                    out.append(Hook(which, z, k, leg))
    return out


def _cohooks(S: Symbol) -> list[Cohook]:
    out = []
    for which, other in ((FIRST, S.Y), (SECOND, S.X)):
        members = set(other)
        for z in S.row(which):
            for k in range(1, z + 1):
                if z - k not in members:
                    out.append(Cohook(which, z, k))
    return out


def hooks_and_cohooks(S: Symbol) -> tuple[list[Hook], list[Cohook]]:
    """Every hook and cohook of the reduced representative of ``S``."""
    return _hooks(S), _cohooks(S)


def _a_value(entries: Sequence[int]) -> int:
    s = sorted(entries)
    n = len(s)
    # sum over unordered pairs of min(s, t): the i-th smallest is the min of n-1-i pairs
    pair_mins = sum(v * (n - 1 - i) for i, v in enumerate(s))
    correction = sum(comb(n - 2 * i, 2) for i in range(1, n // 2 + 1))
    return pair_mins - correction


def a_value(S: Symbol) -> int:
    return _a_value(S.X + S.Y)


def b_prime(S: Symbol) -> int:
    n = len(S.X) + len(S.Y)
    return (n - 1) // 2 - len(set(S.X) & set(S.Y))


@lru_cache(maxsize=None)
def degree(S: Symbol) -> RatPoly:
    """Generic degree of the unipotent character of ``S`` from the hook formula."""
    theta = S.rank
    hooks, cohooks = hooks_and_cohooks(S)
    num = RatPoly.monomial(a_value(S))
    for i in range(1, theta + 1):
        num = num * RatPoly.q_power_minus(2 * i)
    den = RatPoly.const(2 ** b_prime(S))
    for h in hooks:
        den = den * RatPoly.q_power_minus(h.length)
    for c in cohooks:
        den = den * RatPoly.q_power_plus(c.length)
    try:
        return ratfunc_to_poly(ratfunc_normalize(num, den))
    except NotAPolynomialError as exc:  # pragma: no cover - would be a bug
        raise RuntimeError(f"hook formula for {S} is not a polynomial") from exc


# -- cuspidal data -------------------------------------------------------------


@dataclass(frozen=True)
class CuspidalSupport:
    """Harish-Chandra series label: Levi GL(1)^a x Sp(2*delta*(delta+1))."""

    delta: int
    a: int

    @property
    def cuspidal_rank(self) -> int:
        return self.delta * (self.delta + 1)


def core_and_cuspidal(S: Symbol) -> tuple[Symbol, bool, CuspidalSupport]:
    delta = (S.defect - 1) // 2
    core = cuspidal_symbol(delta)
    support = CuspidalSupport(delta, S.rank - delta * (delta + 1))
    return core, S == core, support


def remove_hook(S: Symbol, h: Hook) -> Symbol:
    """Replace ``h.z`` by ``h.z - h.length`` in the hook's row and reduce."""
    row = S.row(h.row)
    if h.z not in row or h.length < 1 or h.z - h.length < 0 or h.z - h.length in row:
        raise SymbolError(f"{h} is not a hook of {S}")
    new_row = tuple(sorted((set(row) - {h.z}) | {h.z - h.length}))
    if h.row == FIRST:
        return reduce_symbol(new_row, S.Y)
    return reduce_symbol(S.X, new_row)
