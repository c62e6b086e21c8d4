"""The ten acceptance criteria, each at exact equality with its time budget.

Each test prints one PASS/FAIL line; ``python3 tests/test_acceptance.py``
runs them without pytest.
"""

import random
import sys
import time

import pytest

from cychom import catalog, lincat
from cychom.cohomology import cohomology_dims, cyclic_cocycle_basis, cyclic_cohomology, verify_witness
from cychom.errors import ClassesDiffer, NotInvertible
from cychom.exact_linalg import Scalar, SparseMatrix
from cychom.fredholm import random_fredholm_module, supertrace_axiom_violations
from cychom.hopf import (HopfComplex, conjugation_category, cyclic_group_algebra, hopf_identity_checks,
                         hopf_violations, reduction_check, sayd_violations, symmetric_group_algebra,
                         trivial_sayd)
from cychom.morita import inner_automorphism_witness, morita_certificate
from cychom.nerve import (Cochain, apply_b, cocyclic_identity_checks, connes_identity_checks, hochschild_b,
                          hochschild_b_prime, is_lambda_invariant, lambda_invariant_basis)
from cychom.omega import cocycle_to_trace, trace_axiom_violations, trace_to_cocycle
from cychom.periodicity import (b0_image_witness, homotopy_family_check, periodicity_S, point,
                                verify_periodicity_theorem)
from cychom.schema import parse_document

SUITE_SEED = 7
RESULTS = []


def _suite(count=20):
    return lincat.random_suite(count, seed=SUITE_SEED, max_objects=3, max_dim=2)


def _modules(count=10):
    rng = random.Random(SUITE_SEED)
    out = []
    while len(out) < count:
        FM = random_fredholm_module(rng)
        if len(FM.category.objects) <= 2 and all(e <= 2 and o <= 2 for e, o in FM.dims.values()):
            out.append(FM)
    return out


def _report(number, title, ok, elapsed, budget, capsys=None):
    verdict = "PASS" if ok and elapsed <= budget else "FAIL"
    line = f"criterion {number:2d} {verdict}  {title}  ({elapsed:.2f}s of {budget}s)"
    RESULTS.append(line)
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    return verdict == "PASS"


def _timed(fn):
    start = time.perf_counter()
    ok = fn()
    return ok, time.perf_counter() - start


def criterion_1():
    suite = _suite(20)
    ok = len(suite) >= 20
    for C in suite:
        ok &= all(v for _, v in cocyclic_identity_checks(C, 3))
        for n in range(3):
            ok &= (hochschild_b(C, n + 1) @ hochschild_b(C, n)).is_zero()
            ok &= (hochschild_b_prime(C, n + 1) @ hochschild_b_prime(C, n)).is_zero()
    return ok


def criterion_2():
    C = lincat.point_category()
    # every level is one dimensional and b alternates between 0 and the identity
    hand = all(hochschild_b(C, n) == SparseMatrix.identity(1) if n % 2 else hochschild_b(C, n).is_zero()
               for n in range(4))
    return hand and cohomology_dims(C, 4) == [1, 0, 1, 0, 1]


def _random_cocycle(C, n, rng):
    phi = Cochain(C, n, {})
    for b in cyclic_cocycle_basis(C, n):
        phi = phi + b.scale(Scalar(rng.randint(-3, 3), rng.randint(-2, 2)))
    return phi


def criterion_3():
    rng = random.Random(SUITE_SEED)
    ok = True
    for C in _suite(20):
        for n in range(4):
            phi = _random_cocycle(C, n, rng)
            T = cocycle_to_trace(phi)
            ok &= not trace_axiom_violations(T, first_only=True)
            ok &= trace_to_cocycle(T) == phi
    return ok


def criterion_4():
    ok = True
    for FM in _modules(10):
        ok &= not FM.violations()
        for m in (0, 1):
            phi = FM.chern_character(m)
            ok &= apply_b(phi).is_zero() and is_lambda_invariant(phi)
        ok &= not supertrace_axiom_violations(FM, max_degree=2)
    return ok


def criterion_5():
    ok = True
    for FM in _modules(10):
        res = verify_periodicity_theorem(FM, 0)
        ok &= res["ok"]
        ok &= apply_b(res["witness"]) == res["S_phi"] + res["phi_hi"]
    psi = Cochain.from_values(point(), 2, {"1|1|1": "1"})
    ok &= periodicity_S(psi).value("1|1|1|1|1") == Scalar(2)
    return ok


def criterion_6():
    ok = True
    for C in _suite(20):
        checks = connes_identity_checks(C, 2)
        ok &= all(v for _, v in checks)
        ok &= any(k.startswith("bA=Ab'") for k, _ in checks)
        if not C.unital:
            continue
        ok &= any(k.startswith("bB+Bb=0") for k, _ in checks)
        for n in range(3):
            for col in lambda_invariant_basis(C, n).columns()[:6]:
                _, good = b0_image_witness(Cochain(C, n, col))
                ok &= good
    return ok


def criterion_7():
    cats = [lincat.point_category(), lincat.idempotent_category(), lincat.arrow_category(),
            lincat.idempotent_arrow_category()] + [C for C in _suite(6) if C.unital][:3]
    ok = True
    for C in cats:
        cert = morita_certificate(C, 2, 2)
        ok &= cert["ok"] and cert["dims_C"] == cert["dims_D"]
    return ok


def _random_eta(C, rng):
    eta = {}
    for a, x in enumerate(C.objects):
        while True:
            vec = {k: Scalar(rng.randint(-2, 2), rng.randint(-1, 1)) for k in C.hom[(a, a)]}
            vec = {k: c for k, c in vec.items() if c}
            try:
                lincat.endo_inverse(C, a, vec)
                break
            except NotInvertible:
                continue
        eta[x] = vec
    return eta


def _inner_suite(rng):
    M2 = lincat.tensor_matrix(lincat.idempotent_category(), 2)
    out = [(M2, {M2.objects[0]: {"1*E1,1": "1", "1*E2,2": "1", "1*E1,2": "1"}})]
    out.append((M2, _random_eta(M2, rng)))
    for C in _suite(20):
        if C.unital and _small(C):
            out.append((C, _random_eta(C, rng)))
    return out


def _small(C):
    return sum(len(v) for v in C.hom.values()) <= 8


def criterion_8():
    rng = random.Random(SUITE_SEED)
    ok = True
    moved = 0
    for C, eta in _inner_suite(rng):
        for n in range(3):
            reps = cyclic_cohomology(C, n).representatives[n] or [Cochain(C, n)]
            for phi in reps:
                target = phi
                if n:
                    # shift by a coboundary so the conjugation has something to move
                    chi = Cochain(C, n - 1, {})
                    for col in lambda_invariant_basis(C, n - 1).columns()[:4]:
                        chi = chi + Cochain(C, n - 1, col).scale(rng.randint(-2, 2))
                    target = phi + apply_b(chi)
                _, diff, psi = inner_automorphism_witness(target, eta)
                ok &= verify_witness(diff, psi)
                moved += not diff.is_zero()
    return ok and moved > 0


def criterion_9():
    z2, s3 = cyclic_group_algebra(2), symmetric_group_algebra(3)
    ok = not hopf_violations(z2) and not hopf_violations(s3)
    ok &= not sayd_violations(trivial_sayd(z2)) and not sayd_violations(trivial_sayd(s3))
    for H, nmax in ((z2, 3), (s3, 2)):
        cx = HopfComplex(H, trivial_sayd(H), conjugation_category(H))
        checks = hopf_identity_checks(cx, nmax, "cochain")
        ok &= all(v for _, v in checks)
        ok &= any(k.startswith("tt") for k, _ in checks)
    wb = parse_document(catalog.document("z2-swap"))
    cx = HopfComplex(wb.hopf, wb.sayd, wb.hcategory)
    ok &= all(v for _, v in hopf_identity_checks(cx, 3, "cochain"))
    for C in _suite(8):
        checks, hd, pd = reduction_check(C, 2)
        ok &= all(v for _, v in checks) and hd == pd
    return ok


def criterion_10():
    ok = True
    for name in ("family-constant", "family-conjugated"):
        fam = parse_document(catalog.document(name)).family
        for m in (0, 1):
            res = homotopy_family_check(fam, m)
            ok &= res["ok"]
            ok &= all(verify_witness(ch - res["cochains"][0], w)
                      for ch, w in zip(res["cochains"][1:], res["witnesses"]))
    try:
        homotopy_family_check(parse_document(catalog.document("family-adversarial")).family, 0)
        ok = False
    except ClassesDiffer as exc:
        ok &= exc.certificate is not None
    return ok


CRITERIA = [
    (1, "cocyclic identities on 20 random categories, n <= 3", criterion_1, 60),
    (2, "point category HC dims 1,0,1,0,1", criterion_2, 1),
    (3, "trace and cocycle roundtrips, n <= 3", criterion_3, 60),
    (4, "Chern cocycles and supertrace axioms, m in {0, 1}", criterion_4, 120),
    (5, "periodicity S(phi^0) + phi^2 = b psi and S(psi_point)(1^5) = 2", criterion_5, 120),
    (6, "bA = Ab', bB + Bb = 0 and B psi = 2(n+1) phi", criterion_6, 60),
    (7, "Morita invariance for r = 2, n <= 2", criterion_7, 120),
    (8, "inner automorphisms move cocycles by exact coboundaries", criterion_8, 60),
    (9, "Hopf layer axioms, C_H identities, H = k reduction", criterion_9, 120),
    (10, "homotopy families and the adversarial pair", criterion_10, 120),
]


@pytest.mark.parametrize("number,title,fn,budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, budget, capsys):
    ok, elapsed = _timed(fn)
    assert _report(number, title, ok, elapsed, budget, capsys)


if __name__ == "__main__":
    good = True
    for number, title, fn, budget in CRITERIA:
        ok, elapsed = _timed(fn)
        good &= _report(number, title, ok, elapsed, budget)
    sys.exit(0 if good else 1)
