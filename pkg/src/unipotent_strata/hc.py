"""Harish-Chandra induction and restriction through GL(a) x Sp(2n').

Both directions are the Pieri-type rule on symbols: add (or remove) a hook of
leg length 0 to each row, the two lengths summing to ``a``.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Iterator, Mapping

from .symbols import Symbol, SymbolError, reduce_symbol, shift

__all__ = ["SymbolMultiset", "induce", "restrict", "duplicate_paths", "reset_audit"]


class SymbolMultiset(Mapping[Symbol, int]):
    """Immutable homogeneous multiset of reduced symbols.

    All members share one rank; multiplicities are positive.  Iteration and
    JSON output are sorted by ``(X, Y)``.
    """

    __slots__ = ("_entries", "_rank")

    def __init__(self, entries: Mapping[Symbol, int] | Iterable[Symbol] = ()):
        if isinstance(entries, Mapping):
            counts = Counter({s: m for s, m in entries.items() if m})
        else:
            counts = Counter(entries)
        for s, m in counts.items():
            if not isinstance(s, Symbol):
                raise TypeError(f"not a Symbol: {s!r}")
            if m < 0:
                raise ValueError(f"negative multiplicity for {s}")
        ranks = {s.rank for s in counts}
        if len(ranks) > 1:
            raise ValueError(f"multiset mixes ranks {sorted(ranks)}")
        self._entries = dict(sorted(counts.items()))
        self._rank = ranks.pop() if ranks else None

    @property
    def rank(self):
        return self._rank

    def __getitem__(self, s: Symbol) -> int:
        return self._entries[s]

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def size(self) -> int:
        """Number of constituents counted with multiplicity."""
        return sum(self._entries.values())

    def is_multiplicity_free(self) -> bool:
        return all(m == 1 for m in self._entries.values())

    def __eq__(self, other) -> bool:
        if isinstance(other, SymbolMultiset):
            return self._entries == other._entries
        if isinstance(other, (set, frozenset)):
            return self.is_multiplicity_free() and set(self._entries) == other
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._entries.items()))

    def __add__(self, other: "SymbolMultiset") -> "SymbolMultiset":
        c = Counter(self._entries)
        c.update(other._entries)
        return SymbolMultiset(c)

    def __sub__(self, other: "SymbolMultiset") -> "SymbolMultiset":
        c = Counter(self._entries)
        c.subtract(other._entries)
        return SymbolMultiset({s: m for s, m in c.items() if m > 0})

    def __and__(self, other: "SymbolMultiset") -> "SymbolMultiset":
        return SymbolMultiset(
            {s: min(m, other._entries[s]) for s, m in self._entries.items() if s in other._entries}
        )

    def __repr__(self) -> str:
        body = ", ".join(
            s.short() if m == 1 else f"{m}*{s.short()}" for s, m in self._entries.items()
        )
        return f"SymbolMultiset({{{body}}})"

    def to_json(self) -> list[dict]:
        return [{"symbol": s.to_json(), "mult": m} for s, m in self._entries.items()]

    @classmethod
    def from_json(cls, data) -> "SymbolMultiset":
        return cls({Symbol.from_json(item["symbol"]): int(item["mult"]) for item in data})


# How often a symbol was produced by more than one (a1, a2, site) choice.
_duplicate_paths: Counter = Counter()


def duplicate_paths() -> Counter:
    """Audit counter of duplicate production paths seen by induce/restrict."""
    return Counter(_duplicate_paths)


def reset_audit() -> None:
    _duplicate_paths.clear()


def _add_leg0(row: tuple[int, ...], k: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield row
        return
    members = set(row)
    for t in row:
        if all(t + s not in members for s in range(1, k + 1)):
            yield tuple(sorted((members - {t}) | {t + k}))


def _remove_leg0(row: tuple[int, ...], k: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield row
        return
    members = set(row)
    for z in row:
        if z - k >= 0 and all(z - s not in members for s in range(1, k + 1)):
            yield tuple(sorted((members - {z}) | {z - k}))


def _collect(candidates: Iterable[tuple], label: str) -> SymbolMultiset:
    seen: Counter = Counter()
    for X, Y in candidates:
        seen[reduce_symbol(X, Y)] += 1
    for s, m in seen.items():
        if m > 1:
            _duplicate_paths[(label, s)] += m - 1
    return SymbolMultiset(set(seen))


def induce(S_prime: Symbol, a: int) -> SymbolMultiset:
    """Constituents of R_{GL(a) x Sp}^{Sp} (1 ⊠ ρ_{S'}), as a set."""
    if a < 0:
        raise ValueError("induction length must be non-negative")
    if a == 0:
        return SymbolMultiset({S_prime})
    X, Y = shift(S_prime)

    def candidates():
        for a1 in range(a + 1):
            for newX in _add_leg0(X, a1):
                for newY in _add_leg0(Y, a - a1):
                    yield newX, newY

    return _collect(candidates(), "induce")


def restrict(S: Symbol, a: int) -> SymbolMultiset:
    """Constituents of the Harish-Chandra restriction of ρ_S to Sp(2(θ-a))."""
    if a < 0:
        raise ValueError("restriction length must be non-negative")
    if a > S.rank:
        raise SymbolError(f"cannot restrict rank {S.rank} symbol by {a}")
    if a == 0:
        return SymbolMultiset({S})

    def candidates():
        for a1 in range(a + 1):
            for newX in _remove_leg0(S.X, a1):
                for newY in _remove_leg0(S.Y, a - a1):
                    yield newX, newY

    return _collect(candidates(), "restrict")
