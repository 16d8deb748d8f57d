import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from unipotent_strata.exactq import RatPoly
from unipotent_strata.symbols import (
    Hook,
    Symbol,
    SymbolError,
    core_and_cuspidal,
    cuspidal_symbol,
    degree,
    enumerate_symbols,
    hooks_and_cohooks,
    reduce_symbol,
    remove_hook,
    shift,
    steinberg_symbol,
    trivial_symbol,
)

q = RatPoly.monomial(1)


def test_rank_two_inventory_is_sorted_and_complete(snapshot_dir):
    got = json.dumps([s.to_json() for s in enumerate_symbols(2)], indent=2) + "\n"
    assert got == (snapshot_dir / "symbols_rank2.json").read_text()


def test_inventory_sizes():
    # numbers of unipotent characters of Sp(2n, q), n = 0..6
    assert [len(enumerate_symbols(t)) for t in range(7)] == [1, 2, 6, 12, 25, 46, 86]


def test_inventory_is_reduced_and_distinct():
    for t in range(6):
        syms = enumerate_symbols(t)
        assert len(set(syms)) == len(syms)
        assert all(s.rank == t for s in syms)
        assert syms == sorted(syms)


def test_reduction_strips_common_zero():
    assert reduce_symbol([0, 1, 3], [0, 2]) == Symbol((0, 2), (1,))
    with pytest.raises(SymbolError):
        Symbol((0, 1), (0,))


@pytest.mark.parametrize(
    "X,Y",
    [([1, 1], [0]), ([0, 1], [0, 1]), ([2, 1], []), ([-1], []), ([0, 1], [])],
)
def test_malformed_rows_rejected(X, Y):
    with pytest.raises(SymbolError):
        reduce_symbol(X, Y)


def test_from_json_errors():
    with pytest.raises(SymbolError):
        Symbol.from_json("{not json")
    with pytest.raises(SymbolError):
        Symbol.from_json('{"X": [0]}')
    assert Symbol.from_json('{"X":[0,1],"Y":[1]}') == Symbol((0, 1), (1,))


@given(st.integers(0, 5), st.integers(0, 4))
def test_shift_preserves_rank_and_defect(theta, times):
    for s in enumerate_symbols(theta):
        again = reduce_symbol(*shift(s, times))
        assert again == s
        assert (again.rank, again.defect) == (s.rank, s.defect)


def test_rank_and_defect_examples():
    assert (Symbol((0, 1, 2), ()).rank, Symbol((0, 1, 2), ()).defect) == (2, 3)
    assert Symbol((0, 3), (1,)).rank == 3


def test_degrees_of_small_symbols():
    assert degree(Symbol((0, 1), (1,))) == q
    assert degree(trivial_symbol(4)) == 1
    assert degree(Symbol((0, 1, 2), ())) == (q * (q - 1) ** 2).scale(Fraction(1, 2))
    assert degree(steinberg_symbol(3)) == q**9


def test_rank_two_degrees_match_sp4_table():
    # unipotent degrees of Sp(4, q) as tabulated by Srinivasan
    half = Fraction(1, 2)
    expected = {
        Symbol((2,), ()): RatPoly.const(1),
        Symbol((0, 1, 2), (1, 2)): q**4,
        Symbol((0, 1), (2,)): (q * (q**2 + 1)).scale(half),
        Symbol((1, 2), (0,)): (q * (q**2 + 1)).scale(half),
        Symbol((0, 2), (1,)): (q * (q + 1) ** 2).scale(half),
        Symbol((0, 1, 2), ()): (q * (q - 1) ** 2).scale(half),
    }
    assert {s: degree(s) for s in enumerate_symbols(2)} == expected


@pytest.mark.parametrize("theta", range(1, 6))
def test_degrees_are_integer_valued_at_odd_prime_powers(theta):
    for s in enumerate_symbols(theta):
        d = degree(s)
        for q0 in (3, 5, 9):
            assert d(q0).denominator == 1 and d(q0) > 0


def test_hooks_of_steinberg_like_symbol():
    hooks, cohooks = hooks_and_cohooks(Symbol((0, 1), (1,)))
    assert sorted(h.length for h in hooks) == [1]
    assert [(c.row, c.length) for c in cohooks] == [("first", 1)]


@pytest.mark.parametrize("theta", range(1, 6))
def test_remove_hook_lowers_rank(theta):
    for s in enumerate_symbols(theta):
        hooks, _ = hooks_and_cohooks(s)
        for h in hooks:
            t = remove_hook(s, h)
            assert t.rank == s.rank - h.length
            assert t.defect == s.defect


def test_remove_hook_rejects_non_hooks():
    with pytest.raises(SymbolError):
        remove_hook(Symbol((0, 1), (1,)), Hook("first", 1, 1))


def test_cuspidal_data():
    core, cusp, support = core_and_cuspidal(Symbol((0, 1, 2), ()))
    assert cusp and core == cuspidal_symbol(1)
    assert (support.delta, support.a) == (1, 0)
    core, cusp, support = core_and_cuspidal(Symbol((0, 1, 3), ()))
    assert not cusp and (support.delta, support.a) == (1, 1)
    assert core_and_cuspidal(trivial_symbol(3))[2].delta == 0


def test_cuspidal_symbols_only_at_triangular_ranks():
    for theta in range(0, 7):
        cusp = [s for s in enumerate_symbols(theta) if core_and_cuspidal(s)[1]]
        if theta in (0, 2, 6):
            assert len(cusp) == 1
        else:
            assert cusp == []


def test_rendering():
    s = Symbol((0, 1, 2), (1, 2))
    assert s.short() == "(0 1 2;1 2)"
    assert Symbol((2,), ()).short() == "(2;—)"
    assert s.pretty().splitlines()[0] == "( 0 1 2 )"
