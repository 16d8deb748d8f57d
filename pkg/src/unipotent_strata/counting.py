"""Counting totally isotropic subspaces and Bruhat-Tits strata incidences.

``count_isotropic`` is the closed product formula; ``brute_force_isotropic``
enumerates subspaces of F_p^d in reduced row-echelon form and is used as an
independent oracle at small sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from math import comb

__all__ = [
    "Kind",
    "SplitCase",
    "FormSpace",
    "CaseSpec",
    "GramMatrix",
    "CountingError",
    "count_isotropic",
    "brute_force_isotropic",
    "gram_matrix",
    "strata_incidence",
    "k_mult",
    "nu",
    "theta_max",
    "lattice_neighbours",
    "rz_first_page",
    "RZTerm",
    "is_odd_prime",
    "is_odd_prime_power",
]


class CountingError(ValueError):
    """Parameters outside the domain of a counting operation."""


class Kind(str, Enum):
    SYMPLECTIC = "symplectic"
    ORTHOGONAL_ODD = "orthogonal-odd"
    ORTHOGONAL_EVEN_SPLIT = "orthogonal-even-split"
    ORTHOGONAL_EVEN_NONSPLIT = "orthogonal-even-nonsplit"


class SplitCase(str, Enum):
    ODD = "odd"
    EVEN_SPLIT = "even-split"
    EVEN_NONSPLIT = "even-nonsplit"


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def is_odd_prime_power(q: int) -> bool:
    if q < 3 or q % 2 == 0:
        return False
    f = 3
    while f * f <= q and q % f:
        f += 2
    base = f if f * f <= q else q
    while q % base == 0:
        q //= base
    return q == 1


@dataclass(frozen=True)
class FormSpace:
    kind: Kind
    d: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.d < 0:
            raise CountingError("dimension must be non-negative")
        odd = self.kind is Kind.ORTHOGONAL_ODD
        if odd != (self.d % 2 == 1):
            raise CountingError(f"{self.kind.value} space cannot have dimension {self.d}")
        if self.kind is Kind.ORTHOGONAL_EVEN_NONSPLIT and self.d < 2:
            raise CountingError("a non-split even orthogonal space has dimension >= 2")

    @property
    def delta(self) -> int:
        """Witt index."""
        if self.kind is Kind.ORTHOGONAL_EVEN_NONSPLIT:
            return self.d // 2 - 1
        return self.d // 2


@dataclass(frozen=True)
class CaseSpec:
    n: int
    split_case: SplitCase
    p: int

    def __post_init__(self):
        object.__setattr__(self, "split_case", SplitCase(self.split_case))
        if self.n < 1:
            raise CountingError("n must be positive")
        if (self.split_case is SplitCase.ODD) != (self.n % 2 == 1):
            raise CountingError(f"case {self.split_case.value} does not match n={self.n}")
        if not is_odd_prime(self.p):
            raise CountingError(f"p={self.p} is not an odd prime")

    @classmethod
    def of(cls, n: int, p: int, split_case: str | None = None) -> "CaseSpec":
        if split_case is None:
            if n % 2 == 0:
                raise CountingError("even n needs a split case (even-split or even-nonsplit)")
            split_case = SplitCase.ODD
        return cls(n, SplitCase(split_case), p)

    @property
    def orthogonal_kind(self) -> Kind:
        return {
            SplitCase.ODD: Kind.ORTHOGONAL_ODD,
            SplitCase.EVEN_SPLIT: Kind.ORTHOGONAL_EVEN_SPLIT,
            SplitCase.EVEN_NONSPLIT: Kind.ORTHOGONAL_EVEN_NONSPLIT,
        }[self.split_case]


# -- closed formula ------------------------------------------------------------------


def count_isotropic(space: FormSpace, r: int, p: int) -> int:
    """Number of r-dimensional totally isotropic subspaces."""
    delta = space.delta
    if r < 0:
        raise CountingError("r must be non-negative")
    if r > delta:
        raise CountingError(f"r={r} exceeds Witt index {delta}")
    num, den = 1, 1
    for i in range(1, r + 1):
        num *= p ** (2 * (i + delta - r)) - 1
        den *= p**i - 1
    if space.kind is Kind.ORTHOGONAL_EVEN_NONSPLIT:
        num *= p ** (delta + 1) + 1
        den *= p ** (delta + 1 - r) + 1
    elif space.kind is Kind.ORTHOGONAL_EVEN_SPLIT:
        num *= p ** (delta - r) + 1
        den *= p**delta + 1
    q, rem = divmod(num, den)
    assert rem == 0, "isotropic count is not an integer"
    return q


# -- brute force ------------------------------------------------------------------------


@dataclass(frozen=True)
class GramMatrix:
    entries: tuple[tuple[int, ...], ...]
    skew: bool
    p: int

    def __post_init__(self):
        m = tuple(tuple(x % self.p for x in row) for row in self.entries)
        object.__setattr__(self, "entries", m)
        d = len(m)
        if any(len(row) != d for row in m):
            raise CountingError("Gram matrix must be square")
        for i in range(d):
            for j in range(d):
                want = (-m[j][i]) % self.p if self.skew else m[j][i]
                if m[i][j] != want:
                    raise CountingError("Gram matrix lacks the declared symmetry")
            if self.skew and m[i][i]:
                raise CountingError("skew Gram matrix needs a zero diagonal")
        if _det_mod(m, self.p) == 0:
            raise CountingError("Gram matrix is degenerate")

    @property
    def d(self) -> int:
        return len(self.entries)

    def form(self, u, v) -> int:
        m, p = self.entries, self.p
        return sum(u[i] * m[i][j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v))) % p


def _det_mod(m, p: int) -> int:
    a = [list(row) for row in m]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for r in range(c + 1, n):
            f = a[r][c] * inv % p
            if f:
                for k in range(c, n):
                    a[r][k] = (a[r][k] - f * a[c][k]) % p
    return det % p


def _non_square(p: int) -> int:
    squares = {x * x % p for x in range(1, p)}
    return next(e for e in range(2, p) if e not in squares)


def gram_matrix(kind: Kind | str, d: int, p: int) -> GramMatrix:
    """Standard Gram matrix of the given kind, built to have the intended Witt index."""
    kind = Kind(kind)
    FormSpace(kind, d)
    anti = [[1 if i + j == d - 1 else 0 for j in range(d)] for i in range(d)]
    if kind is Kind.SYMPLECTIC:
        h = d // 2
        m = [[0] * d for _ in range(d)]
        for i in range(h):
            m[i][d - 1 - i] = 1
            m[d - 1 - i][i] = -1
        return GramMatrix(tuple(map(tuple, m)), True, p)
    if kind in (Kind.ORTHOGONAL_EVEN_SPLIT, Kind.ORTHOGONAL_ODD):
        return GramMatrix(tuple(map(tuple, anti)), False, p)
    # hyperbolic planes plus the anisotropic plane diag(1, -eps)
    eps = _non_square(p)
    m = [[0] * d for _ in range(d)]
    h = d - 2
    for i in range(h):
        m[i][h - 1 - i] = 1
    m[h][h] = 1
    m[h + 1][h + 1] = -eps
    return GramMatrix(tuple(map(tuple, m)), False, p)


BRUTE_LIMITS = {"p": 7, "d": 6, "r": 3}


def _rref_rows(d: int, r: int, p: int):
    """Yield each r-dimensional subspace of F_p^d once, as RREF rows."""
    for pivots in combinations(range(d), r):
        free = [
            [c for c in range(pivots[i] + 1, d) if c not in pivots]
            for i in range(r)
        ]
        yield pivots, free


def brute_force_isotropic(g: GramMatrix, r: int, p: int | None = None, override: bool = False) -> int:
    """Count r-dimensional totally isotropic subspaces by enumeration."""
    p = g.p if p is None else p
    if p != g.p:
        raise CountingError("p does not match the Gram matrix field")
    d = g.d
    if r < 0 or r > d:
        raise CountingError(f"r={r} out of range for dimension {d}")
    if not override and (p > BRUTE_LIMITS["p"] or d > BRUTE_LIMITS["d"] or r > BRUTE_LIMITS["r"]):
        raise CountingError(
            f"brute force limited to p <= {BRUTE_LIMITS['p']}, d <= {BRUTE_LIMITS['d']}, "
            f"r <= {BRUTE_LIMITS['r']}; pass override to go further"
        )
    if r == 0:
        return 1
    total = 0
    for pivots, free in _rref_rows(d, r, p):
        total += _extend(g, p, d, pivots, free, 0, [])
    return total


def _extend(g, p, d, pivots, free, i, rows) -> int:
    # choose row i, keep only choices isotropic against itself and earlier rows
    if i == len(pivots):
        return 1
    count = 0
    for vals in product(range(p), repeat=len(free[i])):
        v = [0] * d
        v[pivots[i]] = 1
        for c, x in zip(free[i], vals):
            v[c] = x
        if g.form(v, v):
            continue
        if any(g.form(v, w) for w in rows):
            continue
        count += _extend(g, p, d, pivots, free, i + 1, rows + [v])
    return count


# -- lattice-side counts ---------------------------------------------------------------


def theta_max(case: CaseSpec) -> int:
    if case.split_case is SplitCase.ODD:
        return (case.n - 1) // 2
    if case.split_case is SplitCase.EVEN_SPLIT:
        return case.n // 2
    return (case.n - 2) // 2


def strata_incidence(case: CaseSpec, theta: int, theta_prime: int, direction: str) -> int:
    """Number of type-2θ' vertex lattices below (contained in) or above a type-2θ one."""
    tm = theta_max(case)
    if direction == "below":
        if not 0 <= theta_prime <= theta <= tm:
            raise CountingError(f"below needs 0 <= θ' <= θ <= θ_max={tm}")
        return count_isotropic(FormSpace(Kind.SYMPLECTIC, 2 * theta), theta - theta_prime, case.p)
    if direction == "above":
        if not 0 <= theta <= theta_prime <= tm:
            raise CountingError(f"above needs 0 <= θ <= θ' <= θ_max={tm}")
        space = FormSpace(case.orthogonal_kind, case.n - 2 * theta)
        return count_isotropic(space, theta_prime - theta, case.p)
    raise CountingError(f"direction must be 'below' or 'above', not {direction!r}")


def lattice_neighbours(case: CaseSpec) -> int:
    """#N(Λ_0): maximal-type lattices containing a type-0 lattice, when θ_max = 1."""
    _require_theta_max_one(case)
    return strata_incidence(case, 0, 1, "above")


def _require_theta_max_one(case: CaseSpec) -> None:
    if theta_max(case) != 1:
        raise CountingError("general θ_max requires lattice enumeration, out of scope")


def k_mult(case: CaseSpec, s: int, theta: int) -> int:
    """Multiplicity k_{s,θ} of the type-2θ strata among s-fold intersections."""
    _require_theta_max_one(case)
    if s < 1:
        raise CountingError("s must be positive")
    if theta == 1:
        return 1 if s == 1 else 0
    if theta == 0:
        return 0 if s == 1 else comb(lattice_neighbours(case), s)
    raise CountingError("theta must be 0 or 1 when θ_max = 1")


def nu(case: CaseSpec) -> int:
    """Multiplicity ν as the alternating binomial sum, checked against N - 1."""
    N = lattice_neighbours(case)
    value = sum((-1) ** i * comb(N, i) for i in range(2, N + 1))
    if value != N - 1:
        raise AssertionError(f"binomial identity failed: {value} != {N - 1}")
    return value


@dataclass(frozen=True)
class RZTerm:
    """``(c-Ind_{J_θ}^J 1)^multiplicity`` with τ acting by ``sign * p^exponent``."""

    multiplicity: int
    inducing_theta: int
    scalar_exponent: int
    scalar_sign: int = 1

    def to_json(self) -> dict:
        sign = "+" if self.scalar_sign > 0 else "-"
        return {
            "multiplicity": self.multiplicity,
            "inducing_theta": self.inducing_theta,
            "frobenius_scalar": f"{sign}p^{self.scalar_exponent}",
        }


def rz_first_page(case: CaseSpec) -> dict:
    """First page for θ_max = 1: columns a = -(N-1)..0, rows b = 0..2(n-1).

    The top row is a chain of θ=0 terms ending in the θ=1 term; the only
    other non-zero term is a θ=1 term two rows lower.  Empty cells are
    listed explicitly as ``null``.
    """
    _require_theta_max_one(case)
    N = lattice_neighbours(case)
    n = case.n
    top = 2 * (n - 1)
    columns = list(range(-(N - 1), 1))
    rows = list(range(top, -1, -1))
    grid: dict[tuple[int, int], RZTerm | None] = {(a, b): None for a in columns for b in rows}
    for a in columns:
        if a == 0:
            grid[(0, top)] = RZTerm(k_mult(case, 1, 1), 1, n - 1)
        else:
            grid[(a, top)] = RZTerm(k_mult(case, 1 - a, 0), 0, n - 1)
    grid[(0, top - 2)] = RZTerm(1, 1, n - 2)
    return {
        "n": n,
        "case": case.split_case.value,
        "p": case.p,
        "columns": columns,
        "rows": [
            {
                "b": b,
                "cells": [
                    {"a": a, "term": grid[(a, b)].to_json() if grid[(a, b)] else None}
                    for a in columns
                ],
            }
            for b in rows
        ],
    }
