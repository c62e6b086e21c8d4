import random

import pytest
from hypothesis import given, settings, strategies as st

from cychom import lincat
from cychom.cohomology import is_cocycle
from cychom.errors import DimensionMismatch, InvalidCategory, NotHomogeneous, NotInvertible
from cychom.exact_linalg import SparseMatrix
from cychom.fredholm import (FredholmModule, block_diag, matrix_inverse, omega_realization,
                             random_fredholm_module, supertrace_axiom_violations)
from cychom.nerve import is_lambda_invariant
from cychom.schema import parse_document
from cychom import catalog


def builtin_module():
    return parse_document(catalog.document("fredholm-idem-arrow")).fredholm


def test_builtin_module_is_valid():
    FM = builtin_module()
    assert FM.violations() == []


def test_frozen_chern_values():
    FM = builtin_module()
    # Tr_s of the idempotent acting as (1 | 0) is 1; in degree 2 the class flips sign
    assert {k: str(v) for k, v in FM.chern_character(0).to_dict().items()} == {"e": "1"}
    assert {k: str(v) for k, v in FM.chern_character(1).to_dict().items()} == {"e|e|e": "-1"}


@settings(max_examples=12)
@given(st.integers(0, 10_000), st.sampled_from([0, 1]))
def test_chern_cocycles_on_random_modules(seed, m):
    FM = random_fredholm_module(random.Random(seed))
    assert FM.violations() == []
    phi = FM.chern_character(m)
    assert is_cocycle(phi) and is_lambda_invariant(phi)


@settings(max_examples=8)
@given(st.integers(0, 10_000))
def test_supertrace_axioms(seed):
    FM = random_fredholm_module(random.Random(seed))
    assert supertrace_axiom_violations(FM, max_degree=2) == []


@settings(max_examples=6)
@given(st.integers(0, 10_000))
def test_realization_is_dg_semifunctor(seed):
    FM = random_fredholm_module(random.Random(seed))
    assert omega_realization(FM, 2).semifunctor_violations() == []


def test_odd_chern_vanishes_for_even_supertrace():
    FM = builtin_module()
    # homogeneous odd degree: the supertrace of an odd operator is zero
    T = FM.commutator(FM.category.mor_index["e"])
    assert FM.supertrace(T, 0) == 0


@given(st.integers(0, 10_000))
def test_conjugation_keeps_chern(seed):
    rng = random.Random(seed)
    FM = random_fredholm_module(rng)
    from cychom.fredholm import random_invertible
    S = {a: block_diag(random_invertible(rng, e), random_invertible(rng, o)) for a, (e, o) in FM.dims.items()}
    G = FM.conjugate(S)
    assert G.violations() == []
    assert G.chern_character(1) == FM.chern_character(1)


def test_bad_modules():
    C = lincat.idempotent_category()
    with pytest.raises(DimensionMismatch):
        FredholmModule(C, {"X": (1, 1)}, {"1": ([[1, 0]], [[1]])}, {"X": ([[1]], [[1]])})
    with pytest.raises(InvalidCategory):
        FredholmModule(C, {}, {}, {})
    FM = FredholmModule(C, {"X": (1, 1)}, {"1": ([[1]], [[1]]), "e": ([[1]], [[1]])},
                        {"X": ([[2]], [[1]])})
    assert any("F^2" in v for v in FM.violations())


def test_parity_detection():
    FM = builtin_module()
    mixed = SparseMatrix.from_dense([[1, 1], [0, 1]])
    with pytest.raises(NotHomogeneous):
        FM.parity(mixed, 0, 0)
    assert FM.parity(FM.F[0], 0, 0) == 1


def test_matrix_inverse():
    M = SparseMatrix.from_dense([[1, "i"], [0, 2]])
    assert M @ matrix_inverse(M) == SparseMatrix.identity(2)
    with pytest.raises(NotInvertible):
        matrix_inverse(SparseMatrix.from_dense([[1, 1], [1, 1]]))


def test_schatten_diagnostic_is_float_side_channel():
    FM = builtin_module()
    d = FM.schatten_diagnostic(2)
    assert set(d) == set(FM.category.morphisms)
    assert all(isinstance(v, float) for v in d.values())


def test_to_dict_roundtrip():
    from cychom.schema import parse_fredholm
    FM = builtin_module()
    G = parse_fredholm(FM.to_dict(), FM.category)
    assert G.action == FM.action and G.F == FM.F
