"""Cup products of cyclic cocycles, the periodicity operator S and Chern classes.

The cup product of phi on C and phi' on C' is the character of the tensor
product of the two traced Omega-cycles, expanded symbol by symbol.  S is the
cup product with the basic 2-cocycle of the point, evaluated through a
contraction formula that never builds the tensor category.
"""

import itertools
from dataclasses import dataclass, field

from .cohomology import (class_equal, coboundary_witness, is_cyclic_cocycle, require_cyclic_cocycle)
from .errors import AssertionFailed, ClassesDiffer, NotLambdaInvariant
from .exact_linalg import ONE, ZERO, Scalar, SparseMatrix
from .fredholm import trace
from .lincat import point_category, tensor_product
from .nerve import (Cochain, apply_b, apply_B, apply_B0, is_lambda_invariant, lambda_power, nerve_basis)
from .omega import OmegaCategory, cocycle_to_trace

_POINT = None


def point():
    """Shared point category, so cochains on it can be compared."""
    global _POINT
    if _POINT is None:
        _POINT = point_category()
    return _POINT


def point_generator():
    """The 2-cocycle on the point with value 1 on (1, 1, 1)."""
    P = point()
    return Cochain.from_values(P, 2, {("1", "1", "1"): ONE})


def tensor_category(C, C2):
    """C tensor C2, cached on C so repeated cup products share it."""
    key = ("tensor", id(C2))
    hit = C._cache.get(key)
    if hit is None or hit[0] is not C2:
        hit = (C2, tensor_product(C, C2))
        C._cache[key] = hit
    return hit[1]


class _TraceEvaluator:
    """Evaluates T_phi(f0 y1 ... yn) with yk = dfk (k in S) or fk."""

    def __init__(self, phi):
        self.trace = cocycle_to_trace(phi, check=False)
        self.omega = OmegaCategory(phi.category, max(phi.level, 1))
        self.memo = {}

    def product_value(self, x, dset):
        key = (x, dset)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        om = self.omega
        om.category
        w = om.morphism(x[0])
        for k in range(1, len(x)):
            if k in dset:
                w = om.append_d(w, x[k])
            else:
                w = om.times_morphism(w, {x[k]: ONE})
            if w.is_zero():
                break
        v = self.trace.evaluate(w) if not w.is_zero() else ZERO
        self.memo[key] = v
        return v


def cup_product(phi, phi2):
    """phi # phi2 on C tensor C2, level p + q."""
    C, C2 = phi.category, phi2.category
    p, q = phi.level, phi2.level
    n = p + q
    D = tensor_category(C, C2)
    left, right = _TraceEvaluator(phi), _TraceEvaluator(phi2)
    split = D.tensor_split
    subsets = [frozenset(s) for s in itertools.combinations(range(1, n + 1), p)]
    everything = frozenset(range(1, n + 1))

    def value(t):
        x = tuple(split[f][0] for f in t)
        y = tuple(split[f][1] for f in t)
        acc = ZERO
        for S in subsets:
            sign = 0
            right_deg = 0
            for k in range(1, n + 1):
                if k in S:
                    sign += right_deg
                else:
                    right_deg += 1
            a = left.product_value(x, S)
            if not a:
                continue
            b = right.product_value(y, everything - S)
            if not b:
                continue
            acc = acc + (a * b if sign % 2 == 0 else -(a * b))
        return acc

    return Cochain.from_function(D, n, value)


def from_point_tensor(phi, C):
    """Transport a cochain on C tensor point back to C."""
    D = phi.category
    basis = nerve_basis(D, phi.level)
    target = nerve_basis(C, phi.level)
    vec = {}
    for j, v in phi.vec.items():
        t = tuple(D.tensor_split[f][0] for f in basis.tuples[j])
        vec[target.index[t]] = v
    return Cochain(C, phi.level, vec)


def _contraction_value(ev, C, x, i):
    """T(f0 df1 .. df(i-1) (fi f(i+1)) df(i+2) .. df(r+2))."""
    om = ev.omega
    w = om.morphism(x[0])
    for k in range(1, i):
        w = om.append_d(w, x[k])
    w = om.times_morphism(w, C.comp.get((x[i], x[i + 1]), {}))
    if w.is_zero():
        return ZERO
    for k in range(i + 2, len(x)):
        w = om.append_d(w, x[k])
    return ev.trace.evaluate(w)


def _leading(ev, x, j):
    """T(f0 df1 .. df(j-1) fj df(j+1) .. df(r+1))."""
    om = ev.omega
    w = om.morphism(x[0])
    for k in range(1, j):
        w = om.append_d(w, x[k])
    w = om.times_morphism(w, {x[j]: ONE})
    if w.is_zero():
        return ZERO
    for k in range(j + 1, len(x)):
        w = om.append_d(w, x[k])
    return ev.trace.evaluate(w)


def periodicity_S(phi):
    """S(phi) at level r + 2 through the contraction formula."""
    C, r = phi.category, phi.level
    ev = _TraceEvaluator(phi)

    def value(x):
        acc = ZERO
        for i in range(1, r + 2):
            acc = acc + _contraction_value(ev, C, x, i)
        return acc

    return Cochain.from_function(C, r + 2, value)


def periodicity_S_witness(phi):
    """psi at level r + 1 with b psi = S(phi) for a cyclic cocycle phi."""
    C, r = phi.category, phi.level
    ev = _TraceEvaluator(phi)

    def value(x):
        acc = ZERO
        for j in range(1, r + 2):
            v = _leading(ev, x, j)
            acc = acc + (v if (j - 1) % 2 == 0 else -v)
        return acc

    return Cochain.from_function(C, r + 1, value)


@dataclass
class PeriodicityResult:
    S_phi: Cochain
    witness: Cochain
    via_cup: Cochain = None
    checks: dict = field(default_factory=dict)


def periodicity(phi, cross_check=True):
    """S(phi) with its Hochschild witness, optionally compared with phi # psi_point."""
    require_cyclic_cocycle(phi)
    S = periodicity_S(phi)
    psi = periodicity_S_witness(phi)
    res = PeriodicityResult(S, psi)
    res.checks["S cyclic cocycle"] = is_cyclic_cocycle(S)
    res.checks["b witness = S"] = apply_b(psi) == S
    if cross_check:
        cup = from_point_tensor(cup_product(phi, point_generator()), phi.category)
        res.via_cup = cup
        res.checks["S = phi # psi"] = cup == S
    return res


def fredholm_periodicity_witness(FM, m):
    """1/2 sum_j (-1)^(j-1) Tr(eps F fj [F, f(j+1)] .. [F, f(2m+1)] [F, f0] .. [F, f(j-1)])."""
    C = FM.category
    n = 2 * m + 1
    half = Scalar(1) / Scalar(2)

    def value(x):
        acc = ZERO
        for j in range(n + 1):
            X = C.tgt[x[j]]
            M = FM.F[X] @ FM.action[x[j]]
            for k in itertools.chain(range(j + 1, n + 1), range(0, j)):
                M = M @ FM._comm(x[k])
            v = trace(FM.epsilon(X) @ M)
            acc = acc + (v if (j - 1) % 2 == 0 else -v)
        return half * acc

    return Cochain.from_function(C, n, value)


def verify_periodicity_theorem(FM, m):
    """Certificate for S(phi^(2m)) + (m+1) phi^(2m+2) = b psi with psi lambda-invariant."""
    lo = FM.chern_character(m)
    hi = FM.chern_character(m + 1)
    S = periodicity_S(lo)
    psi = fredholm_periodicity_witness(FM, m)
    lhs = S + hi.scale(m + 1)
    checks = {
        "phi_lo cyclic cocycle": is_cyclic_cocycle(lo),
        "phi_hi cyclic cocycle": is_cyclic_cocycle(hi),
        "witness lambda-invariant": is_lambda_invariant(psi),
        "S + (m+1) phi = b psi": apply_b(psi) == lhs,
    }
    return {"m": m, "phi_lo": lo, "phi_hi": hi, "S_phi": S, "witness": psi, "checks": checks,
            "ok": all(checks.values())}


def sb_relation_check(psi):
    """Certificate that S(B psi) - n(n+1) b psi is a cyclic coboundary.

    ``psi`` is a level n cochain whose coboundary is lambda-invariant.  The
    witness is built as zeta = psi' - n(n+1) psi'' with psi' the S-witness
    of B psi and psi'' = psi - b psi1 the lambda-invariant correction.
    """
    C, n = psi.category, psi.level
    bpsi = apply_b(psi)
    if not is_lambda_invariant(bpsi):
        raise NotLambdaInvariant("b psi is not lambda-invariant")
    if n < 1:
        raise ValueError("needs a cochain of level at least 1")
    phi = apply_B(psi)
    checks = {"B psi cyclic cocycle": is_cyclic_cocycle(phi)}
    S = periodicity_S(phi)
    target = S - bpsi.scale(n * (n + 1))
    psi_p = periodicity_S_witness(phi)
    theta = apply_B0(psi)
    inv_n = Scalar(1) / Scalar(n)
    theta2 = theta - phi.scale(inv_n)
    psi1 = Cochain(C, n - 1, {})
    for k in range(n):
        term = theta2.apply(lambda_power(C, n - 1, k), n - 1)
        psi1 = psi1 + term.scale(k + 1)
    psi1 = psi1.scale(-inv_n)
    psi2 = psi - apply_b(psi1)
    zeta = psi_p - psi2.scale(n * (n + 1))
    construction = "explicit"
    if not (is_lambda_invariant(zeta) and apply_b(zeta) == target):
        zeta = coboundary_witness(target)
        construction = "solved"
    checks["witness lambda-invariant"] = is_lambda_invariant(zeta)
    checks["b witness = S(B psi) - n(n+1) b psi"] = apply_b(zeta) == target
    return {"phi": phi, "target": target, "witness": zeta, "construction": construction,
            "checks": checks, "ok": all(checks.values())}


def b0_image_witness(phi):
    """For phi in C^n_lambda: psi at level n+1 with B psi = 2(n+1) phi.

    Uses the functional eta with eta(f) = 1/c on the first basis morphism f
    in the support of id_X (coefficient c) and 0 elsewhere.
    """
    from .nerve import require_lambda_invariant

    C, n = phi.category, phi.level
    require_lambda_invariant(phi)
    eta = {}
    for a in range(len(C.objects)):
        v = C.identity_vec(a)
        k = min(v)
        eta[k] = ONE / v[k]
    basis_n = nerve_basis(C, n)

    def phi_at(t):
        j = basis_n.index.get(t)
        return phi.vec.get(j, ZERO) if j is not None else ZERO

    def phi_id_front(t, X1):
        # phi(id_X1, f1, ..., fn) with id expanded in the basis
        acc = ZERO
        for u, c in C.identity[X1].items():
            acc = acc + c * phi_at((u,) + t)
        return acc

    sign = ONE if n % 2 == 0 else -ONE

    def value(x):
        e0 = eta.get(x[0], ZERO)
        e1 = eta.get(x[-1], ZERO)
        acc = ZERO
        if e0:
            acc = acc + e0 * phi_at(x[1:])
        if e1:
            acc = acc + sign * phi_at(x[:-1]) * e1
            if e0:
                acc = acc - sign * e0 * phi_id_front(x[1:-1], C.src[x[0]]) * e1
        return acc

    psi = Cochain.from_function(C, n + 1, value)
    ok = apply_B(psi) == phi.scale(2 * (n + 1))
    return psi, ok


def conjugate_to_swap(FM):
    """Conjugate by T_X = diag(1, Q_X), Q_X the even_from_odd block, making F the swap."""
    S = {}
    for a, (e, o) in FM.dims.items():
        rows = {i: {i: ONE} for i in range(e)}
        for i, r in FM.F[a].rows.items():
            if i < e:
                # row i of Q becomes row e + i of T, shifted into the odd block
                rows[e + i] = dict(r)
        S[a] = SparseMatrix(e + o, e + o, rows)
    return FM.conjugate(S), S


def chern_class_equal(FM1, FM2, degree):
    """class_equal on the Chern cocycles of two modules over the same category."""
    if degree % 2:
        raise ValueError("Chern cocycles live in even degrees")
    a, b = FM1.chern_character(degree // 2), FM2.chern_character(degree // 2)
    return class_equal(a, b)


def homotopy_family_check(family, m, conjugated=True):
    """Equal ch^(2m+2) classes across a sampled family; raises ClassesDiffer otherwise."""
    if not family:
        raise ValueError("empty family")
    C = family[0].category
    for FM in family:
        if FM.category is not C:
            raise ValueError("family members must share their category")
        bad = FM.violations()
        if bad:
            raise AssertionFailed(f"family member is not a Fredholm module: {bad[0]}", bad[0])
    chs = []
    for FM in family:
        ch = FM.chern_character(m + 1)
        require_cyclic_cocycle(ch)
        chs.append(ch)
    conj_checks = []
    if conjugated:
        for FM, ch in zip(family, chs):
            G, _ = conjugate_to_swap(FM)
            conj_checks.append(G.chern_character(m + 1) == ch)
    witnesses = []
    for k in range(1, len(chs)):
        eq, w = class_equal(chs[k], chs[0])
        if not eq:
            raise ClassesDiffer(f"sample {k} has a different ch^{2 * m + 2} class than sample 0", w)
        witnesses.append(w)
    return {"cochains": chs, "witnesses": witnesses, "conjugation_invariant": conj_checks,
            "ok": all(conj_checks)}
