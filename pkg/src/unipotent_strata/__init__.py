"""Unipotent representations of Sp(2n, q), Coxeter varieties and the closed
Bruhat-Tits strata S_θ, all in exact arithmetic."""

from .exactq import RatPoly, RatFunc, NotAPolynomialError, ratfunc_normalize, ratfunc_to_poly, poly_eval
from .symbols import (
    Symbol,
    SymbolError,
    Hook,
    Cohook,
    CuspidalSupport,
    reduce_symbol,
    shift,
    rank_defect,
    enumerate_symbols,
    hooks_and_cohooks,
    degree,
    core_and_cuspidal,
    remove_hook,
)
from .hc import SymbolMultiset, induce, restrict
from .coxeter import EigenvalueLabel, GradedRep, coxeter_symbols, lusztig_degree, coxeter_graded, verify_restriction_recursion
from .stratum import (
    SpectralPage,
    BoundsReport,
    e1_page,
    family_terms,
    verify_families,
    survival_bounds,
    weight_table,
    euler_check,
    nonpurity_witnesses,
)
from .counting import (
    FormSpace,
    CaseSpec,
    GramMatrix,
    CountingError,
    count_isotropic,
    brute_force_isotropic,
    gram_matrix,
    strata_incidence,
    k_mult,
    nu,
    theta_max,
    rz_first_page,
)

__version__ = "0.1.0"

__all__ = [
    "RatPoly",
    "RatFunc",
    "NotAPolynomialError",
    "ratfunc_normalize",
    "ratfunc_to_poly",
    "poly_eval",
    "Symbol",
    "SymbolError",
    "Hook",
    "Cohook",
    "CuspidalSupport",
    "reduce_symbol",
    "shift",
    "rank_defect",
    "enumerate_symbols",
    "hooks_and_cohooks",
    "degree",
    "core_and_cuspidal",
    "remove_hook",
    "SymbolMultiset",
    "induce",
    "restrict",
    "EigenvalueLabel",
    "GradedRep",
    "coxeter_symbols",
    "lusztig_degree",
    "coxeter_graded",
    "verify_restriction_recursion",
    "SpectralPage",
    "BoundsReport",
    "e1_page",
    "family_terms",
    "verify_families",
    "survival_bounds",
    "weight_table",
    "euler_check",
    "nonpurity_witnesses",
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
    "rz_first_page",
]
