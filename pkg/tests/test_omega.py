import random

import pytest
from hypothesis import given, strategies as st

from cychom import lincat
from cychom.cohomology import cyclic_cocycle_basis, cyclic_cohomology
from cychom.errors import DegreeOverflow, NotComposable, TraceAxiomViolated
from cychom.exact_linalg import Scalar
from cychom.nerve import Cochain
from cychom.omega import (OmegaCategory, OmegaCycle, cocycle_to_trace, cycle_character, trace_axiom_violations,
                          trace_to_cocycle)

from conftest import small_random


def _random_cocycle(C, n, rng):
    basis = cyclic_cocycle_basis(C, n)
    phi = Cochain(C, n, {})
    for b in basis:
        phi = phi + b.scale(Scalar(rng.randint(-3, 3), rng.randint(-1, 1)))
    return phi


@given(st.integers(0, 10_000), st.integers(0, 3))
def test_roundtrip_cocycle_trace(seed, n):
    C = small_random(seed, max_objects=2)
    phi = _random_cocycle(C, n, random.Random(seed))
    T = cocycle_to_trace(phi)
    assert not trace_axiom_violations(T)
    assert trace_to_cocycle(T) == phi


def test_character_of_cycle_is_cocycle():
    C = lincat.idempotent_arrow_category()
    for phi in cyclic_cohomology(C, 2).representatives[2]:
        T = cocycle_to_trace(phi)
        assert cycle_character(OmegaCycle(T)) == phi


def test_noncocycle_rejected():
    C = lincat.idempotent_category()
    phi = Cochain.from_values(C, 1, {"1|e": "1"})
    with pytest.raises(TraceAxiomViolated) as exc:
        cocycle_to_trace(phi)
    assert exc.value.probe is not None


def test_leibniz_and_d_squared():
    C = lincat.idempotent_arrow_category()
    om = OmegaCategory(C, 3)
    e, a = om.morphism("e"), om.morphism("a")
    # d(a e) = d(a) e + a d(e)
    lhs = om.differentiate(om.compose(a, e))
    rhs = om.compose(om.differentiate(a), e) + om.compose(a, om.differentiate(e))
    assert lhs == rhs
    assert om.differentiate(om.differentiate(a)).is_zero()
    # graded Leibniz in degree 1: d(da . de) = 0 and d(a de) = da de
    ade = om.compose(a, om.differentiate(e))
    assert om.differentiate(ade) == om.compose(om.differentiate(a), om.differentiate(e))


def test_associativity_of_omega_products():
    C = lincat.idempotent_arrow_category()
    om = OmegaCategory(C, 3)
    x = om.d_morphism("e")
    y = om.compose(om.morphism("e"), om.d_morphism("e"))
    z = om.compose(om.d_morphism("a"), om.morphism("e"))
    assert om.compose(om.compose(z, y), x) == om.compose(z, om.compose(y, x))


def test_omega_errors():
    C = lincat.arrow_category()
    om = OmegaCategory(C, 1)
    with pytest.raises(DegreeOverflow):
        om.compose(om.d_morphism("a"), om.d_morphism("1X"))
    with pytest.raises(NotComposable):
        om.compose(om.morphism("1X"), om.morphism("1Y"))


def test_symbol_counts():
    C = lincat.point_category()
    om = OmegaCategory(C, 3)
    # degree n symbols: (1 or unit) d1 ... d1, so 2 for n >= 1 and 1 in degree 0
    assert [len(om.symbols(0, 0, n)) for n in range(4)] == [1, 2, 2, 2]
