"""Morita invariance for C tensor M_r and invariance under inner automorphisms.

Chain maps are SparseMatrix objects acting on nerve coordinates (rows are
target tuples, columns source tuples).  The cochain maps are their
transposes, since pulling back phi along a chain map M is phi o M.
"""

from .cohomology import class_equal, coboundary_witness, cyclic_cohomology, verify_witness
from .exact_linalg import ONE, ZERO, SparseMatrix
from .lincat import inner_automorphism, tensor_matrix
from .nerve import (Cochain, coface, codegeneracy, cyclic_operator, hochschild_b, nerve_basis)


def matrix_category(C, r):
    """C tensor M_r, cached on C."""
    key = ("matrix", r)
    if key not in C._cache:
        C._cache[key] = tensor_matrix(C, r)
    return C._cache[key]


def _chain(src_basis, dst_basis, image):
    rows = {}
    idx = dst_basis.index
    for j, x in enumerate(src_basis.tuples):
        for y, c in image(x).items():
            if not c:
                continue
            r = rows.setdefault(idx[y], {})
            w = r.get(j)
            w = c if w is None else w + c
            if w:
                r[j] = w
            else:
                r.pop(j)
    rows = {i: r for i, r in rows.items() if r}
    return SparseMatrix(len(dst_basis), len(src_basis), rows)


def chain_face(C, n, i):
    """d_i: CN_n -> CN_(n-1) as a chain matrix."""
    return coface(C, n, i).T


def chain_degeneracy(C, n, i):
    """s_i: CN_n -> CN_(n+1)."""
    return codegeneracy(C, n, i).T


def chain_rotation(C, n):
    return cyclic_operator(C, n).T


def chain_b(C, n):
    """b: CN_n -> CN_(n-1)."""
    return hochschild_b(C, n - 1).T


def inc_map(C, r, p, n):
    """inc_p: CN_n(C) -> CN_n(C tensor M_r), f -> f tensor E_pp."""
    D = matrix_category(C, r)
    key = ("inc", r, p, n)
    if key not in C._cache:
        C._cache[key] = _chain(nerve_basis(C, n), nerve_basis(D, n),
                               lambda x: {tuple(D.matrix_index[(f, p, p)] for f in x): ONE})
    return C._cache[key]


def tr_map(C, r, n):
    """tr: CN_n(C tensor M_r) -> CN_n(C), (f_i tensor B_i) -> (f_i) trace(B_0 ... B_n)."""
    D = matrix_category(C, r)
    key = ("tr", r, n)

    def image(x):
        pairs = [D.matrix_pair[g] for g in x]
        for k in range(len(pairs)):
            # E_(i_k j_k) E_(i_(k+1) j_(k+1)) ... nonzero iff j_k = i_(k+1), cyclically
            if pairs[k][2] != pairs[(k + 1) % len(pairs)][1]:
                return {}
        return {tuple(f for f, _, _ in pairs): ONE}

    if key not in C._cache:
        C._cache[key] = _chain(nerve_basis(D, n), nerve_basis(C, n), image)
    return C._cache[key]


def hbar_map(C, r, n, i):
    """The homotopy piece hbar_i: CN_n(D) -> CN_(n+1)(D), D = C tensor M_r.

    On basis tuples (f_k tensor E_(a_k b_k)) it is nonzero only when
    b_(k-1) = a_k for 1 <= k <= i; it then returns
    (f0 E_(a0,1), f1 E_11, ..., fi E_11, id E_(1,b_i), f_(i+1) E.., ..., fn E..),
    the identity being inserted after slot i (at the end when i = n).
    """
    D = matrix_category(C, r)
    key = ("hbar", r, n, i)
    if not 0 <= i <= n:
        raise ValueError(f"hbar_{i} undefined on level {n}")

    def image(x):
        pairs = [D.matrix_pair[g] for g in x]
        for k in range(1, i + 1):
            if pairs[k - 1][2] != pairs[k][1]:
                return {}
        f0, a0, _ = pairs[0]
        out = [D.matrix_index[(f0, a0, 1)]]
        for k in range(1, i + 1):
            out.append(D.matrix_index[(pairs[k][0], 1, 1)])
        bi = pairs[i][2]
        X = C.src[pairs[i][0]]
        res = {}
        for u, c in C.identity[X].items():
            ins = D.matrix_index[(u, 1, bi)]
            t = tuple(out) + (ins,) + tuple(x[i + 1:])
            res[t] = res.get(t, ZERO) + c
        return res

    if key not in C._cache:
        C._cache[key] = _chain(nerve_basis(D, n), nerve_basis(D, n + 1), image)
    return C._cache[key]


def hbar_total(C, r, n):
    D = matrix_category(C, r)
    out = SparseMatrix(len(nerve_basis(D, n + 1)), len(nerve_basis(D, n)))
    for i in range(n + 1):
        h = hbar_map(C, r, n, i)
        out = out + h if i % 2 == 0 else out - h
    return out


def morita_chain_checks(C, r, nmax):
    """Every chain-level relation of inc, tr and hbar up to level nmax."""
    D = matrix_category(C, r)
    out = []
    for n in range(nmax + 1):
        tr, inc1 = tr_map(C, r, n), inc_map(C, r, 1, n)
        ident_C = SparseMatrix.identity(len(nerve_basis(C, n)))
        ident_D = SparseMatrix.identity(len(nerve_basis(D, n)))
        out.append((f"tr inc1 = id [{n}]", tr @ inc1 == ident_C))
        for p in range(1, r + 1):
            inc = inc_map(C, r, p, n)
            out.append((f"tr inc{p} = id [{n}]", tr @ inc == ident_C))
            out.append((f"inc{p} t = t inc{p} [{n}]", inc @ chain_rotation(C, n) == chain_rotation(D, n) @ inc))
            if n >= 1:
                for i in range(n + 1):
                    out.append((f"inc{p} d{i} [{n}]",
                                inc_map(C, r, p, n - 1) @ chain_face(C, n, i) == chain_face(D, n, i) @ inc))
        out.append((f"tr t = t tr [{n}]", tr @ chain_rotation(D, n) == chain_rotation(C, n) @ tr))
        if n >= 1:
            for i in range(n + 1):
                out.append((f"tr d{i} [{n}]", tr_map(C, r, n - 1) @ chain_face(D, n, i) == chain_face(C, n, i) @ tr))
        for i in range(n + 1):
            out.append((f"tr s{i} [{n}]", tr_map(C, r, n + 1) @ chain_degeneracy(D, n, i) == chain_degeneracy(C, n, i) @ tr))
        # relations between faces of level n+1 and hbar on level n
        for ip in range(n + 1):
            h = hbar_map(C, r, n, ip)
            for i in range(n + 2):
                lhs = chain_face(D, n + 1, i) @ h
                if i < ip:
                    rhs = hbar_map(C, r, n - 1, ip - 1) @ chain_face(D, n, i)
                    out.append((f"d{i} h{ip} = h{ip - 1} d{i} [{n}]", lhs == rhs))
                elif i == ip and 0 < i <= n:
                    rhs = chain_face(D, n + 1, i) @ hbar_map(C, r, n, i - 1)
                    out.append((f"d{i} h{i} = d{i} h{i - 1} [{n}]", lhs == rhs))
                elif i > ip + 1:
                    rhs = hbar_map(C, r, n - 1, ip) @ chain_face(D, n, i - 1)
                    out.append((f"d{i} h{ip} = h{ip} d{i - 1} [{n}]", lhs == rhs))
        out.append((f"d0 h0 = id [{n}]", chain_face(D, n + 1, 0) @ hbar_map(C, r, n, 0) == ident_D))
        out.append((f"d(n+1) hn = inc1 tr [{n}]",
                    chain_face(D, n + 1, n + 1) @ hbar_map(C, r, n, n) == inc1 @ tr))
        lhs = chain_b(D, n + 1) @ hbar_total(C, r, n)
        if n >= 1:
            lhs = lhs + hbar_total(C, r, n - 1) @ chain_b(D, n)
        out.append((f"b h + h b = id - inc1 tr [{n}]", lhs == ident_D - inc1 @ tr))
    return out


def inc_degeneracy_defects(C, r, nmax):
    """Pairs (p, n, i) where inc_p s_i != s_i inc_p.

    inc_p sends id_X to id_X tensor E_pp rather than to the identity of
    C tensor M_r, so it only respects faces and rotation; this lists the
    degeneracies it fails to commute with.
    """
    D = matrix_category(C, r)
    out = []
    for n in range(nmax + 1):
        for p in range(1, r + 1):
            inc = inc_map(C, r, p, n)
            for i in range(n + 1):
                if inc_map(C, r, p, n + 1) @ chain_degeneracy(C, n, i) != chain_degeneracy(D, n, i) @ inc:
                    out.append((p, n, i))
    return out


def pullback(phi, chain_map, target_category):
    """phi o M as a cochain on the source complex of M."""
    return Cochain(target_category, phi.level, chain_map.T.apply(phi.vec))


def morita_certificate(C, r, max_degree):
    """Relations, equal HC dimensions and class-level inverse maps."""
    D = matrix_category(C, r)
    checks = dict(morita_chain_checks(C, r, max_degree))
    hc_C = cyclic_cohomology(C, max_degree)
    hc_D = cyclic_cohomology(D, max_degree)
    checks["equal HC dims"] = hc_C.dims == hc_D.dims
    witnesses = []
    for n in range(max_degree + 1):
        for phi in hc_C.representatives[n]:
            back = pullback(pullback(phi, tr_map(C, r, n), D), inc_map(C, r, 1, n), C)
            checks.setdefault(f"inc1* tr* = id on reps [{n}]", True)
            checks[f"inc1* tr* = id on reps [{n}]"] &= back == phi
        for phi in hc_D.representatives[n]:
            there = pullback(pullback(phi, inc_map(C, r, 1, n), C), tr_map(C, r, n), D)
            ok, w = class_equal(there, phi)
            checks.setdefault(f"tr* inc1* = id in HC [{n}]", True)
            checks[f"tr* inc1* = id in HC [{n}]"] &= ok
            witnesses.append(w)
    return {"dims_C": hc_C.dims, "dims_D": hc_D.dims, "checks": checks, "witnesses": witnesses,
            "ok": all(checks.values())}


# inner automorphisms

def nerve_functor_map(F, n):
    """CN_n(F): tuple -> tensor product of the images of its entries."""
    C, D = F.source, F.target

    def image(x):
        out = {(): ONE}
        for f in x:
            nxt = {}
            for t, c in out.items():
                for h, a in F.image(f).items():
                    key = t + (h,)
                    nxt[key] = nxt.get(key, ZERO) + c * a
            out = {k: v for k, v in nxt.items() if v}
        return out

    return _chain(nerve_basis(C, n), nerve_basis(D, n), image)


def inner_pullback(phi, F):
    return pullback(phi, nerve_functor_map(F, phi.level), phi.category)


def inner_automorphism_witness(phi, eta):
    """psi with phi o CN(Phi_eta) - phi = b psi (psi lambda-invariant)."""
    C = phi.category
    F = inner_automorphism(C, eta)
    diff = inner_pullback(phi, F) - phi
    psi = coboundary_witness(diff)
    return F, diff, psi


def conjugation_on_matrix_category(C, eta):
    """Inner automorphism of C tensor M_2 by id tensor E_11 + eta tensor E_22."""
    D = matrix_category(C, 2)
    u = {}
    for a in range(len(C.objects)):
        vec = {}
        for k, c in C.identity[a].items():
            vec[D.matrix_index[(k, 1, 1)]] = c
        for k, c in eta[a].items():
            vec[D.matrix_index[(k, 2, 2)]] = vec.get(D.matrix_index[(k, 2, 2)], ZERO) + c
        u[D.objects[a]] = vec
    return inner_automorphism(D, u)


def inner_certificate(C, eta, max_degree):
    """Coboundary witnesses for phi o CN(Phi_eta) - phi on HC representatives.

    Also checks that conjugation by id E_11 + eta E_22 on C tensor M_2 fixes
    inc_1 and intertwines inc_2 with Phi_eta.
    """
    F = inner_automorphism(C, eta)
    checks = {"functor": not F.check()}
    Ft = conjugation_on_matrix_category(C, F.eta)
    D = Ft.source
    checks["conjugation functor"] = not Ft.check()
    ok1 = ok2 = True
    for f in range(len(C.morphisms)):
        img1 = Ft.image(D.matrix_index[(f, 1, 1)])
        ok1 &= img1 == {D.matrix_index[(f, 1, 1)]: ONE}
        img2 = Ft.image(D.matrix_index[(f, 2, 2)])
        want = {D.matrix_index[(h, 2, 2)]: c for h, c in F.image(f).items()}
        ok2 &= img2 == want
    checks["conj o inc1 = inc1"] = ok1
    checks["conj o inc2 = inc2 o Phi"] = ok2
    witnesses = []
    reps = cyclic_cohomology(C, max_degree).representatives
    for n in range(max_degree + 1):
        for phi in reps[n]:
            diff = inner_pullback(phi, F) - phi
            psi = coboundary_witness(diff)
            good = verify_witness(diff, psi)
            checks.setdefault(f"witnesses [{n}]", True)
            checks[f"witnesses [{n}]"] &= good
            witnesses.append((phi, diff, psi))
    return {"functor": F, "checks": checks, "witnesses": witnesses, "ok": all(checks.values())}
