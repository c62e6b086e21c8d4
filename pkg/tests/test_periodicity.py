import random

import pytest
from hypothesis import given, settings, strategies as st

from cychom import catalog, lincat
from cychom.cohomology import cyclic_cohomology, is_cyclic_cocycle, verify_witness
from cychom.errors import ClassesDiffer, NotLambdaInvariant
from cychom.exact_linalg import Scalar
from cychom.fredholm import random_fredholm_module
from cychom.nerve import Cochain
from cychom.periodicity import (b0_image_witness, cup_product, homotopy_family_check, periodicity,
                                periodicity_S, point, sb_relation_check, verify_periodicity_theorem)
from cychom.schema import parse_document

from conftest import small_random


def psi_point():
    return Cochain.from_values(point(), 2, {"1|1|1": "1"})


def test_S_of_psi_point():
    S = periodicity_S(psi_point())
    assert S.value("1|1|1|1|1") == Scalar(2)


def test_S_is_cup_with_point_generator():
    C = lincat.idempotent_category()
    for phi in cyclic_cohomology(C, 2).representatives[2]:
        res = periodicity(phi)
        assert all(res.checks.values())


@settings(max_examples=10)
@given(st.integers(0, 10_000))
def test_periodicity_on_random_modules(seed):
    FM = random_fredholm_module(random.Random(seed))
    res = verify_periodicity_theorem(FM, 0)
    assert res["ok"], res["checks"]


def test_periodicity_m1_builtin():
    FM = parse_document(catalog.document("fredholm-idem-arrow")).fredholm
    assert verify_periodicity_theorem(FM, 1)["ok"]


def test_S_lands_in_cocycles_and_is_coboundary():
    C = lincat.arrow_category()
    for phi in cyclic_cohomology(C, 2).representatives[0]:
        S = periodicity_S(phi)
        assert is_cyclic_cocycle(S)


@pytest.mark.parametrize("seed", range(5))
def test_b0_image_witness(seed):
    C = small_random(seed)
    if not C.unital:
        pytest.skip("needs identities")
    for n in range(3):
        for phi in cyclic_cohomology(C, n).representatives[n]:
            psi, ok = b0_image_witness(phi)
            assert ok


def test_b0_image_witness_requires_invariance():
    C = lincat.idempotent_category()
    with pytest.raises(NotLambdaInvariant):
        b0_image_witness(Cochain.from_values(C, 1, {"1|e": "1"}))


def test_sb_relation():
    C = lincat.idempotent_category()
    rng = random.Random(3)
    from cychom.nerve import lambda_invariant_basis
    for n in (1, 2):
        # take psi = b chi + (cyclic cochain), so b psi is lambda-invariant
        P = lambda_invariant_basis(C, n)
        vec = {}
        for col in P.columns()[:3]:
            c = Scalar(rng.randint(1, 3))
            for k, v in col.items():
                vec[k] = vec.get(k, Scalar(0)) + c * v
        res = sb_relation_check(Cochain(C, n, vec))
        assert res["ok"], res["checks"]


def test_cup_product_of_cocycles_is_cocycle():
    C = lincat.idempotent_arrow_category()
    phi = cyclic_cohomology(C, 0).representatives[0][0]
    cup = cup_product(phi, psi_point())
    assert cup.level == 2 and is_cyclic_cocycle(cup)


def _family(name):
    return parse_document(catalog.document(name)).family


def test_constant_and_conjugated_families():
    for name in ("family-constant", "family-conjugated"):
        res = homotopy_family_check(_family(name), 0)
        assert res["ok"]
        assert all(verify_witness(ch - res["cochains"][0], w)
                   for ch, w in zip(res["cochains"][1:], res["witnesses"]))


def test_adversarial_family():
    with pytest.raises(ClassesDiffer) as exc:
        homotopy_family_check(_family("family-adversarial"), 0)
    assert exc.value.certificate is not None
