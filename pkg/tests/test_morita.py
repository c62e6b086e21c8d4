import random

import pytest

from cychom import lincat
from cychom.cohomology import cyclic_cohomology, verify_witness
from cychom.exact_linalg import SparseMatrix
from cychom.nerve import Cochain, apply_b, lambda_invariant_basis
from cychom.morita import (inc_degeneracy_defects, inc_map, inner_automorphism_witness, inner_certificate, morita_certificate, morita_chain_checks,
                           tr_map)
from cychom.cli import INNER_ETA

from conftest import small_random


@pytest.mark.parametrize("build", [lincat.point_category, lincat.idempotent_category, lincat.arrow_category])
def test_chain_relations_r2(build):
    bad = [name for name, ok in morita_chain_checks(build(), 2, 2) if not ok]
    assert not bad


def test_tr_inc_identity():
    C = lincat.idempotent_arrow_category()
    for n in range(3):
        T, I1 = tr_map(C, 2, n), inc_map(C, 2, 1, n)
        assert T @ I1 == SparseMatrix.identity(T.nrows)


def test_inc_is_not_unital():
    # inc_p sends id to id (x) E_pp, so it skips the degeneracies; tr does not
    defects = inc_degeneracy_defects(lincat.point_category(), 2, 1)
    assert defects and all(p in (1, 2) for p, _, _ in defects)


@pytest.mark.parametrize("seed", [0, 2, 5])
def test_certificate_on_random(seed):
    C = small_random(seed, max_objects=2)
    cert = morita_certificate(C, 2, 2)
    assert cert["ok"], [k for k, v in cert["checks"].items() if not v]
    assert cert["dims_C"] == cert["dims_D"]


def test_r3_point():
    cert = morita_certificate(lincat.point_category(), 3, 2)
    assert cert["ok"] and cert["dims_D"] == [1, 0, 1]


def test_inner_automorphism_certificate():
    C = lincat.tensor_matrix(lincat.idempotent_category(), 2)
    assert inner_certificate(C, {C.objects[0]: INNER_ETA}, 2)["ok"]


def test_inner_automorphism_nontrivial_witness():
    # representatives plus a coboundary are moved by the conjugation, by a coboundary
    C = lincat.tensor_matrix(lincat.idempotent_category(), 2)
    rng = random.Random(1)
    moved = 0
    for n in (1, 2):
        P = lambda_invariant_basis(C, n - 1)
        for phi in cyclic_cohomology(C, n).representatives[n] or [Cochain(C, n)]:
            chi = Cochain(C, n - 1, {})
            for col in P.columns()[:4]:
                chi = chi + Cochain(C, n - 1, col).scale(rng.randint(-2, 2))
            target = phi + apply_b(chi)
            _, diff, psi = inner_automorphism_witness(target, {C.objects[0]: INNER_ETA})
            assert verify_witness(diff, psi)
            moved += not diff.is_zero()
    assert moved


def test_inner_on_commutative_is_trivial():
    C = lincat.idempotent_category()
    cert = inner_certificate(C, {"X": {"1": "2", "e": "1"}}, 2)
    assert cert["ok"]
    assert all(diff.is_zero() for _, diff, _ in cert["witnesses"])
