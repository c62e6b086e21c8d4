"""Hopf algebras by structure tables, SAYD coefficients, H-categories and
Hopf-cyclic cohomology.

The twisted chain space M (x) CN_n has basis pairs (m, x) indexed
m * |CN_n| + x.  Cochain operators follow the nerve convention: the row of a
basis pair holds its chain image.  The equivariant subcomplex C^n_H is the
kernel of the constraints phi((m (x) x) h) = eps(h) phi(m (x) x); the
homology side M (x)_H CN_n is a quotient with a section picked by
elimination order.
"""

import itertools

from .cohomology import CohomologyReport, subcomplex_level
from .errors import (AssertionFailed, CotensorNotSubmodule, DimensionMismatch, NotACocycle, NotAGroup,
                     NotCocommutative, NotInvertible, NotLambdaInvariant, TraceAxiomViolated)
from .exact_linalg import ONE, ZERO, Echelon, Scalar, SparseMatrix, _gi_div, hstack, kernel_basis, rank, solve
from .lincat import ValidationReport, group_category
from .nerve import (Cochain, cocyclic_identity_checks, degeneracy_image, face_image, hochschild_b,
                    nerve_basis)
from .omega import UNIT, OmegaCategory
from .periodicity import cup_product, tensor_category


def _acc(out, k, c):
    w = out.get(k)
    w = c if w is None else w + c
    if w:
        out[k] = w
    else:
        out.pop(k, None)


def _vec(d):
    return {k: Scalar.coerce(v) for k, v in d.items() if Scalar.coerce(v)}


class HopfAlgebra:
    """Finite dimensional Hopf algebra on basis indices 0..dim-1.

    mult[(a, b)], unit, comult[a] (keys (b, c)), counit[a], antipode[a] are
    sparse coordinate dicts; missing products are zero.
    """

    def __init__(self, basis, mult, unit, comult, counit, antipode, antipode_inverse=None, name=None):
        self.basis = list(basis)
        self.index = {b: k for k, b in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.mult = {k: _vec(v) for k, v in mult.items()}
        self.unit = _vec(unit)
        self.comult = {a: _vec(comult.get(a, {})) for a in range(self.dim)}
        self.counit = [Scalar.coerce(counit.get(a, 0)) for a in range(self.dim)]
        self.antipode = {a: _vec(antipode.get(a, {})) for a in range(self.dim)}
        self.name = name
        if antipode_inverse is None:
            antipode_inverse = self._invert_antipode()
        self.antipode_inverse = {a: _vec(antipode_inverse.get(a, {})) for a in range(self.dim)}
        self._iter = {}

    def __repr__(self):
        return f"<Hopf algebra {self.name or ''} of dim {self.dim}>"

    def _invert_antipode(self):
        S = SparseMatrix.from_columns(self.dim, [self.antipode[a] for a in range(self.dim)])
        out = {}
        for a in range(self.dim):
            x = solve(S, {a: ONE})
            if x is None:
                raise NotInvertible("antipode is not bijective")
            out[a] = x
        return out

    def h(self, name):
        if isinstance(name, int):
            return name
        return self.index[name]

    def mul(self, u, v):
        out = {}
        for a, x in u.items():
            for b, y in v.items():
                for c, z in self.mult.get((a, b), {}).items():
                    _acc(out, c, x * y * z)
        return out

    def eps(self, u):
        acc = ZERO
        for a, x in u.items():
            acc = acc + x * self.counit[a]
        return acc

    def S(self, u):
        out = {}
        for a, x in u.items():
            for b, y in self.antipode[a].items():
                _acc(out, b, x * y)
        return out

    def S_inv(self, u):
        out = {}
        for a, x in u.items():
            for b, y in self.antipode_inverse[a].items():
                _acc(out, b, x * y)
        return out

    def coproduct(self, u):
        out = {}
        for a, x in u.items():
            for k, y in self.comult[a].items():
                _acc(out, k, x * y)
        return out

    def iterated(self, a, k):
        """Delta^(k)(a) as {(a1, ..., ak): c}; k = 1 gives a itself."""
        key = (a, k)
        hit = self._iter.get(key)
        if hit is not None:
            return hit
        if k == 1:
            out = {(a,): ONE}
        else:
            out = {}
            for (b, c), x in self.comult[a].items():
                for rest, y in self.iterated(c, k - 1).items():
                    _acc(out, (b,) + rest, x * y)
        self._iter[key] = out
        return out

    def is_cocommutative(self):
        return all(self.comult[a] == {(c, b): v for (b, c), v in self.comult[a].items()} for a in range(self.dim))

    def to_dict(self):
        nm = self.basis

        def vec(v):
            return {nm[k]: str(c) for k, c in sorted(v.items())}

        return {
            "basis": list(nm),
            "mult": [{"a": nm[a], "b": nm[b], "result": vec(v)} for (a, b), v in sorted(self.mult.items()) if v],
            "unit": vec(self.unit),
            "comult": [{"a": nm[a], "result": [{"left": nm[b], "right": nm[c], "coeff": str(x)}
                                               for (b, c), x in sorted(self.comult[a].items())]}
                       for a in range(self.dim)],
            "counit": {nm[a]: str(self.counit[a]) for a in range(self.dim)},
            "antipode": {nm[a]: vec(self.antipode[a]) for a in range(self.dim)},
        }


def _e(a):
    return {a: ONE}


def hopf_violations(H):
    """Bialgebra and antipode axioms on all basis probes."""
    bad = []
    d = H.dim
    for a in range(d):
        if H.mul(H.unit, _e(a)) != _e(a) or H.mul(_e(a), H.unit) != _e(a):
            bad.append(f"unit law fails on {H.basis[a]}")
        for b in range(d):
            ab = H.mul(_e(a), _e(b))
            for c in range(d):
                if H.mul(ab, _e(c)) != H.mul(_e(a), H.mul(_e(b), _e(c))):
                    bad.append(f"associativity fails on ({H.basis[a]}, {H.basis[b]}, {H.basis[c]})")
            # Delta and eps are algebra maps
            lhs = H.coproduct(ab)
            rhs = {}
            for (a1, a2), x in H.comult[a].items():
                for (b1, b2), y in H.comult[b].items():
                    for c1, u in H.mult.get((a1, b1), {}).items():
                        for c2, v in H.mult.get((a2, b2), {}).items():
                            _acc(rhs, (c1, c2), x * y * u * v)
            if lhs != rhs:
                bad.append(f"comultiplication is not multiplicative on ({H.basis[a]}, {H.basis[b]})")
            if H.eps(ab) != H.counit[a] * H.counit[b]:
                bad.append(f"counit is not multiplicative on ({H.basis[a]}, {H.basis[b]})")
        # coassociativity and counit
        left, right = {}, {}
        for (b, c), x in H.comult[a].items():
            for (b1, b2), y in H.comult[b].items():
                _acc(left, (b1, b2, c), x * y)
            for (c1, c2), y in H.comult[c].items():
                _acc(right, (b, c1, c2), x * y)
        if left != right:
            bad.append(f"coassociativity fails on {H.basis[a]}")
        l_eps, r_eps = {}, {}
        for (b, c), x in H.comult[a].items():
            _acc(l_eps, c, x * H.counit[b])
            _acc(r_eps, b, x * H.counit[c])
        if l_eps != _e(a) or r_eps != _e(a):
            bad.append(f"counit law fails on {H.basis[a]}")
        # S(a1) a2 = eps(a) 1 = a1 S(a2)
        s_left, s_right = {}, {}
        for (b, c), x in H.comult[a].items():
            for k, y in H.mul(H.S(_e(b)), _e(c)).items():
                _acc(s_left, k, x * y)
            for k, y in H.mul(_e(b), H.S(_e(c))).items():
                _acc(s_right, k, x * y)
        target = {k: v * H.counit[a] for k, v in H.unit.items() if v * H.counit[a]}
        if s_left != target or s_right != target:
            bad.append(f"antipode axiom fails on {H.basis[a]}")
        if H.S(H.S_inv(_e(a))) != _e(a) or H.S_inv(H.S(_e(a))) != _e(a):
            bad.append(f"antipode inverse fails on {H.basis[a]}")
    one_one = {}
    for u, x in H.unit.items():
        for v, y in H.unit.items():
            _acc(one_one, (u, v), x * y)
    if H.coproduct(H.unit) != one_one:
        bad.append("Delta(1) != 1 (x) 1")
    if H.eps(H.unit) != ONE:
        bad.append("eps(1) != 1")
    return bad


def check_group_table(elements, table):
    """Raise NotAGroup unless ``table[(g, h)]`` is a group law on ``elements``."""
    els = list(elements)
    S = set(els)
    if len(S) != len(els):
        raise NotAGroup("repeated group elements")
    for g in els:
        for h in els:
            if table.get((g, h)) not in S:
                raise NotAGroup(f"product {g}*{h} missing or outside the set")
    for g in els:
        for h in els:
            for k in els:
                if table[(table[(g, h)], k)] != table[(g, table[(h, k)])]:
                    raise NotAGroup(f"associativity fails on ({g}, {h}, {k})")
    units = [e for e in els if all(table[(e, g)] == g == table[(g, e)] for g in els)]
    if not units:
        raise NotAGroup("no identity element")
    e = units[0]
    inv = {}
    for g in els:
        cands = [h for h in els if table[(g, h)] == e and table[(h, g)] == e]
        if not cands:
            raise NotAGroup(f"{g} has no inverse")
        inv[g] = cands[0]
    return e, inv


def group_algebra(elements, table, name=None):
    """k[G]: Delta(g) = g (x) g, eps(g) = 1, S(g) = g^-1."""
    e, inv = check_group_table(elements, table)
    els = list(elements)
    idx = {g: k for k, g in enumerate(els)}
    mult = {(idx[g], idx[h]): {idx[table[(g, h)]]: ONE} for g in els for h in els}
    comult = {idx[g]: {(idx[g], idx[g]): ONE} for g in els}
    counit = {idx[g]: ONE for g in els}
    anti = {idx[g]: {idx[inv[g]]: ONE} for g in els}
    H = HopfAlgebra(els, mult, {idx[e]: ONE}, comult, counit, anti, anti, name=name or "k[G]")
    H.group_table = dict(table)
    H.group_unit = e
    H.group_inverse = inv
    return H


def cyclic_group_table(n):
    els = ["e"] + [f"g{k}" if k > 1 else "g" for k in range(1, n)]
    return els, {(els[a], els[b]): els[(a + b) % n] for a in range(n) for b in range(n)}


def symmetric_group_table(n=3):
    """S_n as permutations in one-line notation, identity first."""
    perms = sorted(itertools.permutations(range(1, n + 1)))
    els = ["".join(map(str, p)) for p in perms]

    def compose(p, q):
        # (p q)(i) = p(q(i))
        return tuple(p[q[i] - 1] for i in range(n))

    table = {}
    for p in perms:
        for q in perms:
            table[("".join(map(str, p)), "".join(map(str, q)))] = "".join(map(str, compose(p, q)))
    return els, table


def cyclic_group_algebra(n):
    els, table = cyclic_group_table(n)
    return group_algebra(els, table, name=f"k[Z/{n}]")


def symmetric_group_algebra(n=3):
    els, table = symmetric_group_table(n)
    return group_algebra(els, table, name=f"k[S{n}]")


def trivial_hopf():
    """H = k, the group algebra of the trivial group."""
    return group_algebra(["e"], {("e", "e"): "e"}, name="k")


def dual_group_algebra(elements, table, name=None):
    """k^G: delta_g delta_h = [g = h] delta_g, Delta(delta_g) = sum_(ab=g) delta_a (x) delta_b."""
    e, inv = check_group_table(elements, table)
    els = list(elements)
    idx = {g: k for k, g in enumerate(els)}
    mult = {(idx[g], idx[g]): {idx[g]: ONE} for g in els}
    comult = {}
    for a in els:
        for b in els:
            comult.setdefault(idx[table[(a, b)]], {})[(idx[a], idx[b])] = ONE
    anti = {idx[g]: {idx[inv[g]]: ONE} for g in els}
    H = HopfAlgebra([f"d_{g}" for g in els], mult, {idx[g]: ONE for g in els}, comult,
                    {idx[e]: ONE}, anti, anti, name=name or "k^G")
    return H


class SAYDModule:
    """Right H-module, left H-comodule.

    act[(m, h)] = m.h as a coordinate dict; coact[m] = {(h, m0): c} for
    rho(m) = m_(-1) (x) m_(0).
    """

    def __init__(self, hopf, basis, act, coact, name=None):
        self.hopf = hopf
        self.basis = list(basis)
        self.index = {b: k for k, b in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.act = {k: _vec(v) for k, v in act.items()}
        self.coact = {m: _vec(coact.get(m, {})) for m in range(self.dim)}
        self.name = name

    def __repr__(self):
        return f"<SAYD module {self.name or ''} of dim {self.dim}>"

    def right(self, u, hv):
        """u . hv for coordinate vectors u over M and hv over H."""
        out = {}
        for m, x in u.items():
            for h, y in hv.items():
                for k, z in self.act.get((m, h), {}).items():
                    _acc(out, k, x * y * z)
        return out

    def rho(self, u):
        out = {}
        for m, x in u.items():
            for k, y in self.coact[m].items():
                _acc(out, k, x * y)
        return out

    def to_dict(self):
        H = self.hopf
        return {
            "basis": list(self.basis),
            "action": [{"m": self.basis[m], "h": H.basis[h], "result": {self.basis[k]: str(c) for k, c in sorted(v.items())}}
                       for (m, h), v in sorted(self.act.items()) if v],
            "coaction": [{"m": self.basis[m], "result": [{"h": H.basis[h], "m0": self.basis[k], "coeff": str(c)}
                                                         for (h, k), c in sorted(self.coact[m].items())]}
                         for m in range(self.dim)],
        }


def sayd_violations(M):
    """Module, comodule, anti-Yetter-Drinfeld and stability probes."""
    H = M.hopf
    bad = []
    for m in range(M.dim):
        em = _e(m)
        if M.right(em, H.unit) != em:
            bad.append(f"m.1 != m for {M.basis[m]}")
        for a in range(H.dim):
            for b in range(H.dim):
                if M.right(M.right(em, _e(a)), _e(b)) != M.right(em, H.mul(_e(a), _e(b))):
                    bad.append(f"module law fails on ({M.basis[m]}, {H.basis[a]}, {H.basis[b]})")
        # (Delta (x) id) rho = (id (x) rho) rho and (eps (x) id) rho = id
        rm = M.rho(em)
        left, right, counit = {}, {}, {}
        for (h, k), x in rm.items():
            for (h1, h2), y in H.comult[h].items():
                _acc(left, (h1, h2, k), x * y)
            for (h2, k2), y in M.coact[k].items():
                _acc(right, (h, h2, k2), x * y)
            _acc(counit, k, x * H.counit[h])
        if left != right:
            bad.append(f"coassociativity of the coaction fails on {M.basis[m]}")
        if counit != em:
            bad.append(f"counit law of the coaction fails on {M.basis[m]}")
        # rho(m h) = S(h3) m_(-1) h1 (x) m_(0) h2
        for h in range(H.dim):
            lhs = M.rho(M.right(em, _e(h)))
            rhs = {}
            for (h1, h2, h3), x in H.iterated(h, 3).items():
                for (g, k), y in rm.items():
                    coef = H.mul(H.mul(H.S(_e(h3)), _e(g)), _e(h1))
                    mod = M.right(_e(k), _e(h2))
                    for a, u in coef.items():
                        for b, v in mod.items():
                            _acc(rhs, (a, b), x * y * u * v)
            if lhs != rhs:
                bad.append(f"AYD condition fails on ({M.basis[m]}, {H.basis[h]})")
        # m_(0) m_(-1) = m
        st = {}
        for (g, k), x in rm.items():
            for j, y in M.right(_e(k), _e(g)).items():
                _acc(st, j, x * y)
        if st != em:
            bad.append(f"stability fails on {M.basis[m]}")
    return bad


def trivial_sayd(H):
    """M = k with m h = eps(h) m and rho(m) = 1 (x) m."""
    act = {(0, h): ({0: H.counit[h]} if H.counit[h] else {}) for h in range(H.dim)}
    coact = {0: {(u, 0): c for u, c in H.unit.items()}}
    return SAYDModule(H, ["m"], act, coact, name="k")


def group_sayd(H, degrees, characters=None, name=None):
    """SAYD module over k[G] spanned by m_i with rho(m_i) = sigma_i (x) m_i and
    m_i g = chi_i(g) m_i.  ``degrees`` lists the sigma_i, ``characters`` the
    chi_i as dicts g -> scalar (default trivial).  Valid when each sigma_i is
    central and chi_i(sigma_i) = 1; validation reports otherwise.
    """
    if not hasattr(H, "group_table"):
        raise ValueError("group_sayd needs a group algebra")
    basis = [f"m{i}" for i in range(len(degrees))]
    act = {}
    coact = {}
    for i, sigma in enumerate(degrees):
        chi = characters[i] if characters else {}
        for g in H.basis:
            c = Scalar.coerce(chi.get(g, 1))
            act[(i, H.index[g])] = {i: c} if c else {}
        coact[i] = {(H.index[sigma], i): ONE}
    return SAYDModule(H, basis, act, coact, name=name or "graded")


class HCategory:
    """Linear category with a left H-action on every hom space.

    action[h][f] = coordinate dict of h.f inside the hom space of f; basis
    morphisms missing from action[h] are sent to zero.
    """

    def __init__(self, hopf, cat, action, name=None):
        self.hopf = hopf
        self.cat = cat
        self.action = {h: {f: _vec(v) for f, v in action.get(h, {}).items()} for h in range(hopf.dim)}
        self.name = name or cat.name
        self._tuple_cache = {}

    def __repr__(self):
        return f"<H-category {self.name} over {self.hopf.name}>"

    def act(self, hv, fv):
        out = {}
        for h, x in hv.items():
            table = self.action[h]
            for f, y in fv.items():
                for g, z in table.get(f, {}).items():
                    _acc(out, g, x * y * z)
        return out

    def act_tuple(self, h, x):
        """h . (f0 (x) ... (x) fn) = h1 f0 (x) ... (x) h(n+1) fn for basis h."""
        key = (h, x)
        hit = self._tuple_cache.get(key)
        if hit is not None:
            return hit
        H = self.hopf
        out = {}
        for hs, c in H.iterated(h, len(x)).items():
            parts = [list(self.action[hk].get(f, {}).items()) for hk, f in zip(hs, x)]
            for combo in itertools.product(*parts):
                w = c
                for _, v in combo:
                    w = w * v
                _acc(out, tuple(g for g, _ in combo), w)
        self._tuple_cache[key] = out
        return out

    def act_tuple_vec(self, hv, x):
        out = {}
        for h, c in hv.items():
            for y, v in self.act_tuple(h, x).items():
                _acc(out, y, c * v)
        return out


def hcategory_violations(D):
    H, C = D.hopf, D.cat
    bad = []
    nm = C.morphisms
    for h in range(H.dim):
        for f, img in D.action[h].items():
            for g in img:
                if (C.src[g], C.tgt[g]) != (C.src[f], C.tgt[f]):
                    bad.append(f"{H.basis[h]} moves {nm[f]} out of its hom space")
    for f in range(len(nm)):
        if D.act(H.unit, _e(f)) != _e(f):
            bad.append(f"1.f != f for {nm[f]}")
        for a in range(H.dim):
            for b in range(H.dim):
                if D.act(_e(a), D.act(_e(b), _e(f))) != D.act(H.mul(_e(a), _e(b)), _e(f)):
                    bad.append(f"module law fails on ({H.basis[a]}, {H.basis[b]}, {nm[f]})")
    if C.identity is not None:
        for x, ident in C.identity.items():
            for h in range(H.dim):
                want = {k: v * H.counit[h] for k, v in ident.items() if v * H.counit[h]}
                if D.act(_e(h), ident) != want:
                    bad.append(f"h(id) != eps(h) id for ({H.basis[h]}, {C.objects[x]})")
    for (g, f), res in C.comp.items():
        for h in range(H.dim):
            lhs = D.act(_e(h), res)
            rhs = {}
            for (h1, h2), x in H.comult[h].items():
                for k, y in C.compose_vec(D.act(_e(h1), _e(g)), D.act(_e(h2), _e(f))).items():
                    _acc(rhs, k, x * y)
            if lhs != rhs:
                bad.append(f"h(gf) != (h1 g)(h2 f) for ({H.basis[h]}, {nm[g]}, {nm[f]})")
    # also composable pairs with zero product
    for g in range(len(nm)):
        for f in range(len(nm)):
            if C.src[g] != C.tgt[f] or (g, f) in C.comp:
                continue
            for h in range(H.dim):
                rhs = {}
                for (h1, h2), x in H.comult[h].items():
                    for k, y in C.compose_vec(D.act(_e(h1), _e(g)), D.act(_e(h2), _e(f))).items():
                        _acc(rhs, k, x * y)
                if rhs:
                    bad.append(f"h(gf) != (h1 g)(h2 f) for ({H.basis[h]}, {nm[g]}, {nm[f]})")
    return bad


def validate_hopf_inputs(H, M=None, D=None):
    """All axiom probes; violations are prefixed by the failing structure."""
    bad = [f"hopf: {v}" for v in hopf_violations(H)]
    if M is not None:
        if M.hopf is not H:
            bad.append("sayd: module is over a different Hopf algebra")
        bad += [f"sayd: {v}" for v in sayd_violations(M)]
    if D is not None:
        if D.hopf is not H:
            bad.append("hcategory: action is by a different Hopf algebra")
        bad += [f"hcategory: {v}" for v in hcategory_violations(D)]
    return ValidationReport(not bad, bad)


def trivial_action(H, C):
    """h . f = eps(h) f."""
    action = {h: {f: ({f: H.counit[h]} if H.counit[h] else {}) for f in range(len(C.morphisms))}
              for h in range(H.dim)}
    return HCategory(H, C, action)


def conjugation_category(H):
    """One object with endomorphisms k[G] and g . a = g a g^-1."""
    if not hasattr(H, "group_table"):
        raise ValueError("conjugation needs a group algebra")
    els, table, inv = H.basis, H.group_table, H.group_inverse
    C = group_category(els, table, name=f"{H.name}-conj")
    action = {}
    for g in els:
        action[H.index[g]] = {C.mor_index[a]: {C.mor_index[table[(table[(g, a)], inv[g])]]: ONE} for a in els}
    return HCategory(H, C, action, name=C.name)


def permutation_action(H, C, perms):
    """k[G] acting by basis permutations: perms[g][f] = image name of f."""
    action = {}
    for g in H.basis:
        p = perms.get(g, {})
        action[H.index[g]] = {k: {C.mor_index[p.get(f, f)]: ONE} for k, f in enumerate(C.morphisms)}
    return HCategory(H, C, action)


def matrix_hcategory(D, r):
    """D tensor M_r with h (f (x) E) = (h f) (x) E."""
    from .morita import matrix_category
    C = D.cat
    T = matrix_category(C, r)
    action = {}
    for h in range(D.hopf.dim):
        table = {}
        for k, (f, i, j) in enumerate(T.matrix_pair):
            table[k] = {T.matrix_index[(g, i, j)]: c for g, c in D.act(_e(h), _e(f)).items()}
        action[h] = table
    return HCategory(D.hopf, T, action, name=T.name)


def tensor_hcategory(D1, D2):
    """D1 tensor D2 with the diagonal action h (f (x) f') = h1 f (x) h2 f'."""
    H = D1.hopf
    if D2.hopf is not H:
        raise DimensionMismatch("both categories must carry the same Hopf algebra")
    T = tensor_category(D1.cat, D2.cat)
    action = {}
    for h in range(H.dim):
        table = {}
        for k, (f, f2) in T.tensor_split.items():
            out = {}
            for (h1, h2), x in H.comult[h].items():
                for g, y in D1.act(_e(h1), _e(f)).items():
                    for g2, z in D2.act(_e(h2), _e(f2)).items():
                        _acc(out, T.mor_index[f"{D1.cat.morphisms[g]}@{D2.cat.morphisms[g2]}"], x * y * z)
            table[k] = out
        action[h] = table
    return HCategory(H, T, action, name=T.name)


def _kernel_with_free(A):
    """Kernel basis of A and the free columns carrying its unit entries."""
    ech = Echelon([A.rows.get(i, {}) for i in range(A.nrows)], A.ncols)
    vecs = ech.kernel()
    piv = set(ech.pivot_columns)
    free = [j for j in range(A.ncols) if j not in piv]
    return SparseMatrix.from_columns(A.ncols, vecs), free


class HopfComplex:
    """The para-cocyclic module C^n(D, M) and its equivariant part C^n_H."""

    def __init__(self, hopf, module, hcat):
        if module.hopf is not hopf or hcat.hopf is not hopf:
            raise DimensionMismatch("module and category must share the Hopf algebra")
        self.hopf = hopf
        self.module = module
        self.hcat = hcat
        self.cat = hcat.cat
        self._cache = {}

    def _cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def nerve(self, n):
        return nerve_basis(self.cat, n)

    def size(self, n):
        return self.module.dim * len(self.nerve(n))

    def pair(self, n, j):
        N = len(self.nerve(n))
        return j // N, self.nerve(n).tuples[j % N]

    def index(self, n, m, x):
        return m * len(self.nerve(n)) + self.nerve(n).index[x]

    # chain images on M (x) CN

    def _twist(self, m):
        """Terms (m0, S^-1(m_(-1)) as an H vector, coefficient)."""
        H, M = self.hopf, self.module
        return [(k, H.S_inv(_e(h)), c) for (h, k), c in M.coact[m].items()]

    def face(self, m, x, i):
        n = len(x) - 1
        if i < n:
            return {(m, y): c for y, c in face_image(self.cat, x, i).items()}
        C = self.cat
        out = {}
        for k, hv, c in self._twist(m):
            moved = self.hcat.act(hv, _e(x[n]))
            for f, a in moved.items():
                for h, b in C.comp.get((f, x[0]), {}).items():
                    _acc(out, (k, (h,) + x[1:n]), c * a * b)
        return out

    def degeneracy(self, m, x, i):
        return {(m, y): c for y, c in degeneracy_image(self.cat, x, i).items()}

    def rotation(self, m, x):
        n = len(x) - 1
        out = {}
        for k, hv, c in self._twist(m):
            for f, a in self.hcat.act(hv, _e(x[n])).items():
                _acc(out, (k, (f,) + x[:n]), c * a)
        return out

    def right_action(self, m, x, h):
        """(m (x) x) h = m h1 (x) S(h2) x."""
        H, M, D = self.hopf, self.module, self.hcat
        out = {}
        for (h1, h2), c in H.comult[h].items():
            mh = M.right(_e(m), _e(h1))
            if not mh:
                continue
            moved = D.act_tuple_vec(H.S(_e(h2)), x)
            for k, a in mh.items():
                for y, b in moved.items():
                    _acc(out, (k, y), c * a * b)
        return out

    def _rows(self, tgt, src, image):
        rows = {}
        for j in range(self.size(tgt)):
            m, x = self.pair(tgt, j)
            r = {}
            for (k, y), c in image(m, x).items():
                _acc(r, self.index(src, k, y), c)
            if r:
                rows[j] = r
        return SparseMatrix(self.size(tgt), self.size(src), rows)

    # cochain operators on the full space C^n(D, M)

    def delta(self, n, i):
        return self._cached(("delta", n, i), lambda: self._rows(n, n - 1, lambda m, x: self.face(m, x, i)))

    def sigma(self, n, i):
        return self._cached(("sigma", n, i), lambda: self._rows(n, n + 1, lambda m, x: self.degeneracy(m, x, i)))

    def tau(self, n):
        return self._cached(("tau", n), lambda: self._rows(n, n, self.rotation))

    def b(self, n):
        def build():
            out = SparseMatrix(self.size(n + 1), self.size(n))
            for i in range(n + 2):
                out = out + self.delta(n + 1, i) if i % 2 == 0 else out - self.delta(n + 1, i)
            return out
        return self._cached(("b", n), build)

    def lam(self, n):
        return self._cached(("lambda", n), lambda: self.tau(n).scale(ONE if n % 2 == 0 else -ONE))

    # the equivariant subspace

    def constraints(self, n):
        """Rows phi must kill: (m (x) x) h - eps(h) (m (x) x) over basis h, m, x."""
        def build():
            H = self.hopf
            rows = {}
            r = 0
            for h in range(H.dim):
                for j in range(self.size(n)):
                    m, x = self.pair(n, j)
                    row = {}
                    for (k, y), c in self.right_action(m, x, h).items():
                        _acc(row, self.index(n, k, y), c)
                    _acc(row, j, -H.counit[h])
                    if row:
                        rows[r] = row
                    r += 1
            return SparseMatrix(r, self.size(n), rows)
        return self._cached(("constraints", n), build)

    def invariant_basis(self, n):
        """(P, free): columns spanning C^n_H and the free coordinates of P."""
        return self._cached(("P", n), lambda: _kernel_with_free(self.constraints(n)))

    def restrict(self, T, a, b):
        """Matrix of T: C^a -> C^b on the bases of C^a_H and C^b_H."""
        Pa, _ = self.invariant_basis(a)
        Pb, free = self.invariant_basis(b)
        img = T @ Pa
        R = img.select_rows(free)
        if Pb @ R != img:
            raise AssertionFailed(f"structure map does not preserve C_H between levels {a} and {b}", (a, b))
        return R

    def delta_H(self, n, i):
        return self._cached(("deltaH", n, i), lambda: self.restrict(self.delta(n, i), n - 1, n))

    def sigma_H(self, n, i):
        return self._cached(("sigmaH", n, i), lambda: self.restrict(self.sigma(n, i), n + 1, n))

    def tau_H(self, n):
        return self._cached(("tauH", n), lambda: self.restrict(self.tau(n), n, n))

    def cyclic_basis(self, n):
        """Ambient columns spanning Ker(1 - lambda) inside C^n_H."""
        def build():
            P, _ = self.invariant_basis(n)
            L = self.restrict(self.lam(n), n, n)
            K = kernel_basis(SparseMatrix.identity(L.nrows) - L)
            return P @ SparseMatrix.from_columns(P.ncols, K)
        return self._cached(("Plambda", n), build)

    def is_equivariant(self, n, vec):
        return self.constraints(n).apply(vec) == {}

    def cochain(self, n, vec):
        return TwistedCochain(self, n, vec)

    # homology side

    def relations(self, n):
        """Columns m h (x) x - m (x) h x spanning the kernel of M (x) CN_n -> M (x)_H CN_n."""
        def build():
            H, M, D = self.hopf, self.module, self.hcat
            cols = []
            for h in range(H.dim):
                for j in range(self.size(n)):
                    m, x = self.pair(n, j)
                    col = {}
                    for k, c in M.right(_e(m), _e(h)).items():
                        _acc(col, self.index(n, k, x), c)
                    for y, c in D.act_tuple(h, x).items():
                        _acc(col, self.index(n, m, y), -c)
                    if col:
                        cols.append(col)
            return SparseMatrix.from_columns(self.size(n), cols)
        return self._cached(("rel", n), build)

    def quotient(self, n):
        """Section coordinates of M (x)_H CN_n and the reduced relation rows.

        The relations are brought to reduced echelon form; its non-pivot
        coordinates index the quotient basis.
        """
        def build():
            W = self.relations(n).T
            ech = Echelon([W.rows.get(i, {}) for i in range(W.nrows)], self.size(n), reduced=True)
            normal = {}
            for c, r in ech.pivots:
                p = r[c]
                normal[c] = {j: _gi_div(v, p) for j, v in r.items() if j != c}
            piv = set(normal)
            section = [j for j in range(self.size(n)) if j not in piv]
            return section, normal
        return self._cached(("Q", n), build)

    def project(self, n, vecs):
        """Quotient coordinates of chain vectors (relative to the section)."""
        section, normal = self.quotient(n)
        pos = {j: k for k, j in enumerate(section)}
        out = []
        for v in vecs:
            y = {}
            for j, c in v.items():
                k = pos.get(j)
                if k is not None:
                    _acc(y, k, c)
                else:
                    # e_c = -sum_j r_j e_j modulo relations
                    for i, w in normal[j].items():
                        _acc(y, pos[i], -c * w)
            out.append(y)
        return out

    def _chain_matrix(self, src, tgt, image):
        section = self.quotient(src)[0]
        imgs = []
        for j in section:
            m, x = self.pair(src, j)
            col = {}
            for (k, y), c in image(m, x).items():
                _acc(col, self.index(tgt, k, y), c)
            imgs.append(col)
        cols = self.project(tgt, imgs)
        return SparseMatrix.from_columns(len(self.quotient(tgt)[0]), cols)

    def chain_d(self, n, i):
        """d_i: M (x)_H CN_n -> M (x)_H CN_(n-1) in section coordinates."""
        return self._cached(("d", n, i), lambda: self._chain_matrix(n, n - 1, lambda m, x: self.face(m, x, i)))

    def chain_s(self, n, i):
        return self._cached(("s", n, i), lambda: self._chain_matrix(n, n + 1, lambda m, x: self.degeneracy(m, x, i)))

    def chain_t(self, n):
        return self._cached(("t", n), lambda: self._chain_matrix(n, n, self.rotation))

    def well_defined(self, n, kind, i=None):
        """The chain map kills the relations, so it descends to the quotient."""
        W = self.relations(n)
        if kind == "d":
            tgt, image = n - 1, lambda m, x: self.face(m, x, i)
        elif kind == "s":
            tgt, image = n + 1, lambda m, x: self.degeneracy(m, x, i)
        else:
            tgt, image = n, self.rotation
        full = self._rows(n, tgt, image).T  # chain matrix on M (x) CN
        imgs = [full.apply(col) for col in W.columns()] if W.ncols else []
        return all(not v for v in self.project(tgt, imgs)) if imgs else True


class TwistedCochain:
    """Functional on M (x) CN_n, stored in the ambient coordinates."""

    def __init__(self, cx, level, vec):
        self.complex = cx
        self.level = level
        self.vec = {k: v for k, v in vec.items() if v}

    def value(self, m, x):
        return self.vec.get(self.complex.index(self.level, m, x), ZERO)

    def slice(self, m):
        """phi(m (x) -) as an ordinary cochain on the category."""
        cx = self.complex
        N = len(cx.nerve(self.level))
        return Cochain(cx.cat, self.level, {j - m * N: v for j, v in self.vec.items() if m * N <= j < (m + 1) * N})

    def __eq__(self, other):
        return self.complex is other.complex and self.level == other.level and self.vec == other.vec

    def __repr__(self):
        return f"TwistedCochain(level={self.level}, nnz={len(self.vec)})"


def hopf_complex(H, M, D):
    return HopfComplex(H, M, D)


def hopf_cocyclic_structure(H, M, D, n, side="cochain", cx=None):
    """Structure maps at level n.

    side='cochain': delta_i into C^n_H, sigma_i onto C^n_H, tau_n, on the
    bases of the equivariant subspaces; side='para': the same on the full
    C^n(D, M); side='chain': d_i, s_i, t_n on M (x)_H CN_n.
    """
    cx = cx or HopfComplex(H, M, D)
    unital = cx.cat.unital
    if side == "cochain":
        return {"delta": [cx.delta_H(n, i) for i in range(n + 1)] if n else [],
                "sigma": [cx.sigma_H(n, i) for i in range(n + 1)] if unital else [],
                "tau": cx.tau_H(n), "basis": cx.invariant_basis(n)[0]}
    if side == "para":
        return {"delta": [cx.delta(n, i) for i in range(n + 1)] if n else [],
                "sigma": [cx.sigma(n, i) for i in range(n + 1)] if unital else [],
                "tau": cx.tau(n)}
    if side == "chain":
        return {"d": [cx.chain_d(n, i) for i in range(n + 1)] if n else [],
                "s": [cx.chain_s(n, i) for i in range(n + 1)] if unital else [],
                "t": cx.chain_t(n), "section": cx.quotient(n)[0]}
    raise ValueError(f"unknown side {side!r}")


def hopf_identity_checks(cx, nmax, side="cochain"):
    """Cocyclic identities on C_H (side 'cochain'), the para-cocyclic subset on
    the full space ('para'), or the cyclic identities of the quotient ('chain').

    Chain matrices enter transposed, which turns cyclic identities into the
    cocyclic ones checked by the nerve module.
    """
    unital = cx.cat.unital
    if side == "cochain":
        maps = (cx.delta_H, cx.sigma_H if unital else None, cx.tau_H)
        return cocyclic_identity_checks(cx.cat, nmax, cyclic=True, maps=maps)
    if side == "para":
        maps = (cx.delta, cx.sigma if unital else None, cx.tau)
        return cocyclic_identity_checks(cx.cat, nmax, cyclic=False, maps=maps)
    if side == "chain":
        maps = (lambda n, i: cx.chain_d(n, i).T,
                (lambda n, i: cx.chain_s(n, i).T) if unital else None,
                lambda n: cx.chain_t(n).T)
        out = cocyclic_identity_checks(cx.cat, nmax, cyclic=True, maps=maps)
        for n in range(nmax + 1):
            out.append((f"t well defined[{n}]", cx.well_defined(n, "t")))
            for i in range(n + 1 if n else 0):
                out.append((f"d well defined[{n},{i}]", cx.well_defined(n, "d", i)))
        return out
    raise ValueError(f"unknown side {side!r}")


def tau_power_is_identity(cx, n, restricted=False):
    T = cx.tau_H(n) if restricted else cx.tau(n)
    P = SparseMatrix.identity(T.nrows)
    for _ in range(n + 1):
        P = T @ P
    return P == SparseMatrix.identity(T.nrows)


def hopf_cyclic_cohomology(H, M, D, max_degree, cx=None):
    """HC^n_H(D, M) for n <= max_degree over Ker(1 - lambda) inside C^n_H."""
    cx = cx or HopfComplex(H, M, D)
    report = CohomologyReport("hopf-cyclic", [])
    for n in range(max_degree + 1):
        P_prev = cx.cyclic_basis(n - 1) if n else None
        b_prev = cx.b(n - 1) if n else None
        Z, dimB, reps = subcomplex_level(P_prev, cx.cyclic_basis(n), b_prev, cx.b(n))
        report.dims.append(len(Z) - dimB)
        report.cocycle_dims.append(len(Z))
        report.coboundary_dims.append(dimB)
        report.representatives.append([TwistedCochain(cx, n, v) for v in reps])
    report.complex = cx
    return report


def hopf_cyclic_homology_dims(cx, max_degree):
    """dim HC^H_n from the quotient complex.

    Connes' complex Q_n / Im(1 - t'), t' = (-1)^n t, with b = sum (-1)^i d_i;
    the rank of b on the quotients is rank [b | R] - rank R.
    """
    def rel(k):
        t = cx.chain_t(k).scale(ONE if k % 2 == 0 else -ONE)
        return SparseMatrix.identity(t.nrows) - t

    def bmat(k):
        out = SparseMatrix(len(cx.quotient(k - 1)[0]), len(cx.quotient(k)[0]))
        for i in range(k + 1):
            out = out + cx.chain_d(k, i) if i % 2 == 0 else out - cx.chain_d(k, i)
        return out

    def rank_b(k):
        if k == 0:
            return 0
        R = rel(k - 1)
        return rank(hstack([bmat(k), R])) - rank(R)

    dims = []
    for n in range(max_degree + 1):
        lam_dim = len(cx.quotient(n)[0]) - rank(rel(n))
        dims.append(lam_dim - rank_b(n) - rank_b(n + 1))
    return dims


def brute_force_hc0(cx):
    """HC^0_H directly: functionals killing the constraints and the image of b^T."""
    A = cx.constraints(0)
    B = cx.b(0)
    both = SparseMatrix(A.nrows + B.nrows, A.ncols, dict(A.rows))
    for i, r in B.rows.items():
        both.rows[A.nrows + i] = dict(r)
    return len(kernel_basis(both))


def reduction_check(C, max_degree=3):
    """H = k, M = k: twisted operators equal the nerve ones and dimensions agree."""
    from .cohomology import cohomology_dims
    from .nerve import coface, codegeneracy, cyclic_operator
    H = trivial_hopf()
    M = trivial_sayd(H)
    D = trivial_action(H, C)
    cx = HopfComplex(H, M, D)
    out = []
    for n in range(max_degree + 1):
        out.append((f"tau[{n}]", cx.tau(n) == cyclic_operator(C, n)))
        out.append((f"b[{n}]", cx.b(n) == hochschild_b(C, n)))
        for i in (range(n + 1) if n else []):
            out.append((f"delta[{n},{i}]", cx.delta(n, i) == coface(C, n, i)))
        if C.unital:
            for i in range(n + 1):
                out.append((f"sigma[{n},{i}]", cx.sigma(n, i) == codegeneracy(C, n, i)))
    hd = hopf_cyclic_cohomology(H, M, D, max_degree, cx=cx).dims
    pd = cohomology_dims(C, max_degree)
    out.append(("dims", hd == pd))
    return out, hd, pd


# cotensor products and the pairing

class Cotensor:
    """M box_H M' as a SAYD module with its embedding into M (x) M'."""

    def __init__(self, module, embedding, left, right):
        self.module = module
        self.embedding = embedding  # list of coordinate dicts over (a, b) pairs
        self.left = left
        self.right = right


def cotensor(M, M2, check=True):
    """Kernel of rho_M (x) id - id (x) rho_M' with M a right comodule (H cocommutative)."""
    H = M.hopf
    if M2.hopf is not H:
        raise DimensionMismatch("modules over different Hopf algebras")
    if not H.is_cocommutative():
        raise NotCocommutative("cotensor pairing needs a cocommutative Hopf algebra")
    d1, d2 = M.dim, M2.dim
    pidx = lambda a, b: a * d2 + b
    # target M (x) H (x) M' indexed (a, h, b)
    tidx = lambda a, h, b: (a * H.dim + h) * d2 + b
    cols = []
    for a in range(d1):
        for b in range(d2):
            col = {}
            for (h, k), c in M.coact[a].items():
                _acc(col, tidx(k, h, b), c)
            for (h, k), c in M2.coact[b].items():
                _acc(col, tidx(a, h, k), -c)
            cols.append(col)
    A = SparseMatrix.from_columns(d1 * H.dim * d2, cols)
    K, free = _kernel_with_free(A)
    basis_vecs = [K.column(j) for j in range(K.ncols)]

    def coords(v):
        """Kernel coordinates of a vector in M (x) M' (None if outside)."""
        y = {k: v.get(f) for k, f in enumerate(free) if v.get(f)}
        back = K.apply(y)
        return y if back == {k: w for k, w in v.items() if w} else None

    act = {}
    for k, v in enumerate(basis_vecs):
        for h in range(H.dim):
            out = {}
            for (h1, h2), c in H.comult[h].items():
                for p, x in v.items():
                    a, b = divmod(p, d2)
                    for a2, y in M.right(_e(a), _e(h1)).items():
                        for b2, z in M2.right(_e(b), _e(h2)).items():
                            _acc(out, pidx(a2, b2), c * x * y * z)
            y = coords(out)
            if y is None:
                raise CotensorNotSubmodule(f"diagonal action of {H.basis[h]} leaves the cotensor product")
            act[(k, h)] = y
    coact = {}
    for k, v in enumerate(basis_vecs):
        # rho(m (x) m') = m_(-1) (x) m_(0) (x) m'
        per_h = {}
        for p, x in v.items():
            a, b = divmod(p, d2)
            for (h, a2), c in M.coact[a].items():
                _acc(per_h.setdefault(h, {}), pidx(a2, b), c * x)
        out = {}
        for h, vec in per_h.items():
            y = coords(vec)
            if y is None:
                raise CotensorNotSubmodule("coaction leaves the cotensor product")
            for j, c in y.items():
                _acc(out, (h, j), c)
        coact[k] = out
    names = [f"c{k}" for k in range(len(basis_vecs))]
    module = SAYDModule(H, names, act, coact, name=f"{M.name} box {M2.name}")
    if check:
        bad = sayd_violations(module)
        if bad:
            raise AssertionFailed(f"cotensor product is not SAYD: {bad[0]}", bad)
    return Cotensor(module, [{divmod(p, d2): x for p, x in v.items()} for v in basis_vecs], M, M2)


def _require_z_h(phi):
    cx, n = phi.complex, phi.level
    if not cx.is_equivariant(n, phi.vec):
        raise NotACocycle(f"level {n} cochain is not H-equivariant")
    if cx.lam(n).apply(phi.vec) != phi.vec:
        raise NotLambdaInvariant(f"level {n} cochain is not lambda-invariant")
    if cx.b(n).apply(phi.vec):
        raise NotACocycle(f"level {n} cochain is not a cocycle")


def cotensor_pairing(phi, phi2, check=True):
    """phi # phi' in Z^(p+q)_H(D (x) D', M box M'); verified unless check=False.

    Each cotensor basis vector sum c_ab m_a (x) m'_b contributes
    sum c_ab (phi(m_a (x) -) # phi'(m'_b (x) -)), the cup product of slices.
    """
    cx1, cx2 = phi.complex, phi2.complex
    H = cx1.hopf
    if cx2.hopf is not H:
        raise DimensionMismatch("cocycles over different Hopf algebras")
    if not H.is_cocommutative():
        raise NotCocommutative("cotensor pairing needs a cocommutative Hopf algebra")
    if check:
        _require_z_h(phi)
        _require_z_h(phi2)
    cot = cotensor(cx1.module, cx2.module)
    D = tensor_hcategory(cx1.hcat, cx2.hcat)
    cx = HopfComplex(H, cot.module, D)
    n = phi.level + phi2.level
    N = len(nerve_basis(D.cat, n))
    cups = {}
    vec = {}
    for k, emb in enumerate(cot.embedding):
        for (a, b), c in emb.items():
            if (a, b) not in cups:
                cups[(a, b)] = cup_product(phi.slice(a), phi2.slice(b))
            for j, v in cups[(a, b)].vec.items():
                _acc(vec, k * N + j, c * v)
    out = TwistedCochain(cx, n, vec)
    if check:
        _require_z_h(out)
    out.cotensor = cot
    return out


# (H, M)-traces on Omega(D)

class HopfTrace:
    """T(m (x) w) for basis m of M and Omega symbols w of degree n."""

    def __init__(self, cx, degree, values):
        self.complex = cx
        self.degree = degree
        self.values = values

    def evaluate(self, m, coords):
        acc = ZERO
        for s, c in coords.items():
            v = self.values.get((m, s))
            if v is not None:
                acc = acc + c * v
        return acc


def omega_act(cx, hv, sym):
    """h . ((f0 + mu) df1 .. dfn) = (h1 f0 + mu eps(h1)) d(h2 f1) .. d(h(n+1) fn)."""
    H, D = cx.hopf, cx.hcat
    lead, tail = sym
    out = {}
    for h, c in hv.items():
        if lead is UNIT:
            # eps(h1) collapses one tensor leg
            for hs, x in H.iterated(h, len(tail)).items():
                parts = [list(D.action[hk].get(f, {}).items()) for hk, f in zip(hs, tail)]
                for combo in itertools.product(*parts):
                    w = c * x
                    for _, v in combo:
                        w = w * v
                    _acc(out, (UNIT, tuple(g for g, _ in combo)), w)
        else:
            full = (lead,) + tail
            for y, x in D.act_tuple(h, full).items():
                _acc(out, (y[0], y[1:]), c * x)
    return out


def _omega_act_coords(cx, hv, coords):
    out = {}
    for s, c in coords.items():
        for t, v in omega_act(cx, hv, s).items():
            _acc(out, t, c * v)
    return out


def h_cocycle_to_trace(phi, check=True):
    """T(m (x) (f0 + mu) df1..dfn) = phi(m (x) f0 (x) .. (x) fn)."""
    cx, n = phi.complex, phi.level
    N = len(cx.nerve(n))
    values = {}
    for j, v in phi.vec.items():
        m, t = divmod(j, N)
        x = cx.nerve(n).tuples[t]
        values[(m, (x[0], x[1:]))] = v
    T = HopfTrace(cx, n, values)
    if check:
        bad = h_trace_violations(T, first_only=True)
        if bad:
            raise TraceAxiomViolated(f"not a closed graded (H,M)-trace: {bad[0]}", bad[0])
    return T


def h_trace_to_cocycle(T, check=True):
    if check:
        bad = h_trace_violations(T, first_only=True)
        if bad:
            raise TraceAxiomViolated(f"not a closed graded (H,M)-trace: {bad[0]}", bad[0])
    cx, n = T.complex, T.degree
    vec = {}
    for (m, (lead, tail)), v in T.values.items():
        if lead is UNIT or not v:
            continue
        vec[cx.index(n, m, (lead,) + tail)] = v
    return TwistedCochain(cx, n, vec)


def h_trace_violations(T, first_only=False):
    """Probes of gt0 (equivariance), gt1 (closedness) and gt2 (twisted trace law)."""
    cx, n = T.complex, T.degree
    H, M, C = cx.hopf, cx.module, cx.cat
    om = OmegaCategory(C, n)
    nobj = len(C.objects)
    bad = []
    cache = {}

    def syms(a, b, d):
        key = (a, b, d)
        if key not in cache:
            cache[key] = om.symbols(a, b, d)
        return cache[key]

    def T_vec(mv, coords):
        acc = ZERO
        for m, c in mv.items():
            acc = acc + c * T.evaluate(m, coords)
        return acc

    for x in range(nobj):
        for sym in syms(x, x, n):
            for m in range(M.dim):
                base = T.evaluate(m, {sym: ONE})
                for h in range(H.dim):
                    acc = ZERO
                    for (h1, h2), c in H.comult[h].items():
                        w = _omega_act_coords(cx, H.S(_e(h2)), {sym: ONE})
                        acc = acc + c * T_vec(M.right(_e(m), _e(h1)), w)
                    if acc != H.counit[h] * base:
                        bad.append(("gt0", (H.basis[h], M.basis[m], sym)))
                        if first_only:
                            return bad
    if n >= 1:
        for x in range(nobj):
            for sym in syms(x, x, n - 1):
                if sym[0] is UNIT and not sym[1]:
                    continue
                dw = om.differentiate(om.element(sym)).coords
                for m in range(M.dim):
                    if T.evaluate(m, dw):
                        bad.append(("gt1", (M.basis[m], sym)))
                        if first_only:
                            return bad
    for x in range(nobj):
        for y in range(nobj):
            for i in range(n + 1):
                j = n - i
                sign = ONE if (i * j) % 2 == 0 else -ONE
                for g in syms(x, y, i):
                    for gp in syms(y, x, j):
                        lhs_coords = om.mul_symbols(gp, g)
                        for m in range(M.dim):
                            lhs = T.evaluate(m, lhs_coords)
                            rhs = ZERO
                            for (h, k), c in M.coact[m].items():
                                moved = omega_act(cx, H.S_inv(_e(h)), g)
                                prod = {}
                                for s, a in moved.items():
                                    for t, bcoef in om.mul_symbols(s, gp).items():
                                        _acc(prod, t, a * bcoef)
                                rhs = rhs + c * T.evaluate(k, prod)
                            if lhs != sign * rhs:
                                bad.append(("gt2", (M.basis[m], gp, g)))
                                if first_only:
                                    return bad
    return bad


def h_character(T):
    """phi(m (x) x) = T(m (x) f0 df1 .. dfn), products computed in Omega(D)."""
    cx, n = T.complex, T.degree
    om = OmegaCategory(cx.cat, n)
    vec = {}
    for m in range(cx.module.dim):
        for t in cx.nerve(n).tuples:
            w = om.morphism(t[0])
            for f in t[1:]:
                w = om.compose(w, om.differentiate(om.morphism(f)))
            v = T.evaluate(m, w.coords)
            if v:
                vec[cx.index(n, m, t)] = v
    return TwistedCochain(cx, n, vec)


def omega_h_action_trace(phi, check=True):
    """Trace of a Hopf-cyclic cocycle, with the roundtrip and the character.

    Returns (trace, roundtrip_ok, character_ok).
    """
    if check:
        _require_z_h(phi)
    T = h_cocycle_to_trace(phi, check=check)
    back = h_trace_to_cocycle(T, check=False)
    char = h_character(T)
    return T, back == phi, char == phi


# Morita maps against the H-action

def nerve_action_matrix(D, h, n):
    """Chain matrix of h on CN_n(D)."""
    basis = nerve_basis(D.cat, n)
    cols = []
    for x in basis.tuples:
        col = {}
        for y, c in D.act_tuple(h, x).items():
            _acc(col, basis.index[y], c)
        cols.append(col)
    return SparseMatrix.from_columns(len(basis), cols)


def morita_h_linearity(D, r, nmax):
    """tr and inc_p commute with the action of every basis h of H."""
    from .morita import inc_map, tr_map
    Dr = matrix_hcategory(D, r)
    out = []
    for n in range(nmax + 1):
        for h in range(D.hopf.dim):
            A, Ar = nerve_action_matrix(D, h, n), nerve_action_matrix(Dr, h, n)
            out.append((f"tr h[{D.hopf.basis[h]},{n}]", tr_map(D.cat, r, n) @ Ar == A @ tr_map(D.cat, r, n)))
            for p in range(1, r + 1):
                out.append((f"inc{p} h[{D.hopf.basis[h]},{n}]",
                            inc_map(D.cat, r, p, n) @ A == Ar @ inc_map(D.cat, r, p, n)))
    return out


def morita_h_equivariance(M, D, r, nmax):
    """Pullback along id_M (x) tr maps C^n_H(D, M) into C^n_H(D (x) M_r, M)."""
    from .morita import tr_map
    H = D.hopf
    cx = HopfComplex(H, M, D)
    cxr = HopfComplex(H, M, matrix_hcategory(D, r))
    out = []
    for n in range(nmax + 1):
        tr = tr_map(D.cat, r, n)
        Nd, Nc = len(cxr.nerve(n)), len(cx.nerve(n))
        # block diagonal id_M (x) tr
        rows = {}
        for m in range(M.dim):
            for i, row in tr.rows.items():
                rows[m * Nc + i] = {m * Nd + j: v for j, v in row.items()}
        big = SparseMatrix(M.dim * Nc, M.dim * Nd, rows)
        P, _ = cx.invariant_basis(n)
        pulled = big.T @ P
        ok = all(cxr.is_equivariant(n, pulled.column(j)) for j in range(pulled.ncols))
        out.append((f"tr pullback equivariant[{n}]", ok))
    return out
