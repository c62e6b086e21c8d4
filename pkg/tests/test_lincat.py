import random

import pytest
from hypothesis import given, strategies as st

from cychom import lincat
from cychom.errors import AlreadyUnital, InvalidCategory, NotInvertible
from cychom.exact_linalg import ONE
from cychom.lincat import LinCategory, validate_presentation

from conftest import small_random

BUILTINS = [lincat.point_category, lincat.dual_numbers, lincat.idempotent_category, lincat.arrow_category,
            lincat.idempotent_arrow_category, lambda: lincat.semisimple_category(3),
            lambda: lincat.tensor_matrix(lincat.idempotent_category(), 2)]


@pytest.mark.parametrize("build", BUILTINS)
def test_builtins_validate(build):
    rep = validate_presentation(build())
    assert rep.ok, rep.violations


@given(st.integers(0, 10_000))
def test_random_categories_validate(seed):
    C = small_random(seed)
    assert validate_presentation(C).ok
    assert len(C.objects) <= 3
    assert all(len(ids) <= 2 for ids in C.hom.values())


@given(st.integers(0, 10_000))
def test_random_semicategories_validate(seed):
    C = small_random(seed, semicategory=True)
    assert not C.unital
    assert validate_presentation(C).ok


def test_associativity_violation_reported():
    # e o e = 0 but (e o 1) declared as 0 too: left unit law breaks
    C = LinCategory(["X"], {("X", "X"): ["1", "e"]},
                    {("1", "1"): {"1": 1}, ("e", "1"): {"e": 1}, ("e", "e"): {"1": 1}},
                    {"X": {"1": 1}})
    rep = validate_presentation(C)
    assert not rep.ok
    assert any("identity" in v for v in rep.violations)


def test_nonassociative_table():
    # x*x = y, x*y = 0, y*x = x: (x x) x = y x = x but x (x x) = x y = 0
    C = LinCategory(["X"], {("X", "X"): ["x", "y"]},
                    {("x", "x"): {"y": 1}, ("y", "x"): {"x": 1}})
    rep = validate_presentation(C)
    assert any("associativity" in v for v in rep.violations)


@pytest.mark.parametrize("kwargs,match", [
    (dict(objects=[], homs={}, compose={}), "at least one"),
    (dict(objects=["X", "X"], homs={}, compose={}), "duplicate"),
    (dict(objects=["X"], homs={("X", "Y"): ["f"]}, compose={}), "unknown"),
    (dict(objects=["X"], homs={("X", "X"): ["f"]}, compose={("f", "g"): {}}), "unknown morphism"),
    (dict(objects=["X", "Y"], homs={("X", "Y"): ["f"]}, compose={("f", "f"): {"f": 1}}), "not composable"),
    (dict(objects=["X"], homs={("X", "X"): ["f"]}, compose={}, identities={}), "missing identity"),
])
def test_invalid_presentations(kwargs, match):
    with pytest.raises(InvalidCategory, match=match):
        LinCategory(**kwargs)


def test_unitalize():
    S = lincat.non_identity_part(lincat.idempotent_category())
    assert not S.unital
    U = lincat.unitalize(S)
    assert U.unital and validate_presentation(U).ok
    assert len(U.morphisms) == len(S.morphisms) + 1
    with pytest.raises(AlreadyUnital):
        lincat.unitalize(U)


def test_tensor_matrix_dims():
    C = lincat.idempotent_arrow_category()
    D = lincat.tensor_matrix(C, 3)
    for (a, b), ids in C.hom.items():
        assert len(D.hom[(a, b)]) == 9 * len(ids)
    assert validate_presentation(D).ok


def test_tensor_product():
    D = lincat.tensor_product(lincat.arrow_category(), lincat.idempotent_category())
    assert len(D.objects) == 2 and len(D.morphisms) == 6
    assert validate_presentation(D).ok


def test_group_category_is_group_algebra():
    from cychom.hopf import cyclic_group_table
    els, table = cyclic_group_table(3)
    C = lincat.group_category(els, table)
    assert C.compose("g", "g2") == {C.mor_index["e"]: ONE}
    assert validate_presentation(C).ok


def test_inner_automorphism_and_inverse():
    C = lincat.tensor_matrix(lincat.point_category(), 2)
    eta = {"X" if "X" in C.objects else C.objects[0]: {"1*E1,1": 1, "1*E2,2": 1, "1*E1,2": 1}}
    F = lincat.inner_automorphism(C, eta)
    assert not F.check()
    # E21 -> (1 + E12) E21 (1 - E12) = E21 + E11 - E22 - E12
    img = F.image(C.mor_index["1*E2,1"])
    names = {C.morphisms[k]: str(v) for k, v in img.items()}
    assert names == {"1*E2,1": "1", "1*E1,1": "1", "1*E2,2": "-1", "1*E1,2": "-1"}
    with pytest.raises(NotInvertible):
        lincat.inner_automorphism(C, {C.objects[0]: {"1*E1,1": 1}})


def test_change_basis_preserves_validity():
    rng = random.Random(5)
    for _ in range(5):
        C = lincat.random_category(rng, basis_change=True)
        assert validate_presentation(C).ok


def test_to_dict_roundtrip():
    from cychom.schema import parse_category
    for build in BUILTINS:
        C = build()
        D = parse_category(C.to_dict())
        assert D.morphisms == C.morphisms and D.comp == C.comp and D.identity == C.identity
