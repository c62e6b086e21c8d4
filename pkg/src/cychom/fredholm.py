"""Finite dimensional Fredholm modules over a linear category.

Each object X gets a Z/2-graded space H(X) = even + odd with the even
coordinates first.  Morphisms act by even (block diagonal) matrices and F_X
is an odd involution.  With finite dimensions every operator is trace class,
so the supertrace 1/2 Tr(eps F [F, T]) is always defined.
"""

import random

from .errors import DimensionMismatch, InvalidCategory, NotHomogeneous
from .exact_linalg import ONE, ZERO, Scalar, SparseMatrix, rank, solve
from .nerve import Cochain
from .omega import UNIT, OmegaCategory

HALF = Scalar(1) / Scalar(2)


def block_diag(a, b):
    rows = {i: dict(r) for i, r in a.rows.items()}
    for i, r in b.rows.items():
        rows[i + a.nrows] = {j + a.ncols: v for j, v in r.items()}
    return SparseMatrix(a.nrows + b.nrows, a.ncols + b.ncols, rows)


def odd_block(even_from_odd, odd_from_even):
    """[[0, even_from_odd], [odd_from_even, 0]] on even + odd coordinates."""
    e, o = even_from_odd.nrows, odd_from_even.nrows
    rows = {}
    for i, r in even_from_odd.rows.items():
        rows[i] = {j + e: v for j, v in r.items()}
    for i, r in odd_from_even.rows.items():
        rows[i + e] = dict(r)
    return SparseMatrix(e + o, odd_from_even.ncols + even_from_odd.ncols, rows)


def trace(M):
    acc = ZERO
    for i, r in M.rows.items():
        v = r.get(i)
        if v is not None:
            acc = acc + v
    return acc


def _mat(data, nrows, ncols, where):
    if data is None:
        return SparseMatrix(nrows, ncols)
    if isinstance(data, SparseMatrix):
        m = data
    else:
        if nrows == 0 or ncols == 0:
            return SparseMatrix(nrows, ncols)
        m = SparseMatrix.from_dense(data)
    if m.shape != (nrows, ncols):
        raise DimensionMismatch(f"{where}: expected {nrows}x{ncols}, got {m.nrows}x{m.ncols}")
    return m


class FredholmModule:
    """Graded representation H of C with odd involutions F.

    ``spaces[X] = (even, odd)``; ``action[f] = (even block, odd block)``;
    ``F[X] = (odd_from_even, even_from_odd)``.  Blocks may be dense lists of
    scalars/literals or SparseMatrix; missing actions are zero.
    """

    def __init__(self, C, spaces, action, F):
        self.category = C
        self.dims = {}
        for x in C.objects:
            if x not in spaces:
                raise InvalidCategory(f"no graded space for object {x}")
            e, o = spaces[x]
            self.dims[C._obj(x)] = (int(e), int(o))
        self.action = {}
        for f in range(len(C.morphisms)):
            s, t = C.src[f], C.tgt[f]
            (se, so), (te, to) = self.dims[s], self.dims[t]
            blocks = action.get(C.morphisms[f], action.get(f))
            ev, od = (blocks if blocks is not None else (None, None))
            name = C.morphisms[f]
            self.action[f] = block_diag(_mat(ev, te, se, f"action {name} even"),
                                        _mat(od, to, so, f"action {name} odd"))
        self.F = {}
        for x in C.objects:
            a = C._obj(x)
            e, o = self.dims[a]
            ofe, efo = F[x]
            self.F[a] = odd_block(_mat(efo, e, o, f"F {x} even_from_odd"), _mat(ofe, o, e, f"F {x} odd_from_even"))

    def size(self, x):
        e, o = self.dims[x]
        return e + o

    def epsilon(self, x):
        e, o = self.dims[x]
        return SparseMatrix(e + o, e + o, {i: {i: ONE if i < e else -ONE} for i in range(e + o)})

    def rep_vec(self, x, y, vec):
        """H of a coordinate vector in Hom(x, y)."""
        out = SparseMatrix(self.size(y), self.size(x))
        for f, c in vec.items():
            out = out + self.action[f].scale(c)
        return out

    def violations(self):
        """Module axioms that fail: functoriality, parity, F^2 = 1, dims."""
        C = self.category
        bad = []
        for a, (e, o) in self.dims.items():
            F = self.F[a]
            if F @ F != SparseMatrix.identity(e + o):
                bad.append(f"F^2 != 1 at {C.objects[a]}")
            if e != o:
                bad.append(f"even and odd dimensions differ at {C.objects[a]}")
            if C.unital and self.rep_vec(a, a, C.identity[a]) != SparseMatrix.identity(e + o):
                bad.append(f"identity of {C.objects[a]} not represented by 1")
        for g in range(len(C.morphisms)):
            for f in range(len(C.morphisms)):
                if C.src[g] != C.tgt[f]:
                    continue
                lhs = self.action[g] @ self.action[f]
                rhs = self.rep_vec(C.src[f], C.tgt[g], C.comp.get((g, f), {}))
                if lhs != rhs:
                    bad.append(f"H({C.morphisms[g]}) H({C.morphisms[f]}) != H({C.morphisms[g]} o {C.morphisms[f]})")
        return bad

    def parity(self, T, x, y):
        """0 for even, 1 for odd; NotHomogeneous otherwise (zero counts as even)."""
        ex, _ = self.dims[x]
        ey, _ = self.dims[y]
        even = odd = False
        for i, r in T.rows.items():
            for j in r:
                if (i < ey) == (j < ex):
                    even = True
                else:
                    odd = True
        if even and odd:
            raise NotHomogeneous("operator mixes parities")
        return 1 if odd else 0

    def graded_commutator(self, T, x, y, degree=None):
        """[F, T] = F_Y T - (-1)^|T| T F_X for T: H(x) -> H(y)."""
        if T.shape != (self.size(y), self.size(x)):
            raise DimensionMismatch("operator does not map H(x) to H(y)")
        if degree is None:
            degree = self.parity(T, x, y)
        left = self.F[y] @ T
        right = T @ self.F[x]
        return left - right if degree % 2 == 0 else left + right

    def supertrace(self, T, x):
        """1/2 Tr(eps F [F, T]) for a homogeneous endomorphism T of H(x)."""
        c = self.graded_commutator(T, x, x)
        return HALF * trace(self.epsilon(x) @ self.F[x] @ c)

    def plain_supertrace(self, T, x):
        return trace(self.epsilon(x) @ T)

    def commutator(self, f):
        C = self.category
        return self.graded_commutator(self.action[f], C.src[f], C.tgt[f], 0)

    def chern_value(self, t):
        """Tr_s(H(f0) [F, f1] ... [F, fn]) for a nerve tuple."""
        M = self.action[t[0]]
        for f in t[1:]:
            M = M @ self._comm(f)
        return self.supertrace(M, self.category.src[t[-1]])

    def _comm(self, f):
        cache = self.__dict__.setdefault("_comm_cache", {})
        if f not in cache:
            cache[f] = self.commutator(f)
        return cache[f]

    def chern_character(self, m):
        """The level 2m cochain phi^(2m)."""
        C = self.category
        return Cochain.from_function(C, 2 * m, self.chern_value)

    def schatten_diagnostic(self, p):
        """Float Schatten p-norms of [F, H(f)] per basis morphism (diagnostic only)."""
        import numpy as np

        out = {}
        for f in range(len(self.category.morphisms)):
            s = np.linalg.svd(self.commutator(f).to_numpy(), compute_uv=False)
            out[self.category.morphisms[f]] = float(np.sum(s ** p) ** (1.0 / p)) if s.size else 0.0
        return out

    def conjugate(self, S):
        """Conjugate by even invertible operators S[X]: H -> S H S^-1, F -> S F S^-1."""
        C = self.category
        inv = {a: matrix_inverse(S[a]) for a in S}
        new = FredholmModule.__new__(FredholmModule)
        new.category = C
        new.dims = dict(self.dims)
        new.action = {f: S[C.tgt[f]] @ self.action[f] @ inv[C.src[f]] for f in self.action}
        new.F = {a: S[a] @ self.F[a] @ inv[a] for a in self.F}
        return new

    def to_dict(self):
        C = self.category
        spaces = {C.objects[a]: {"even": e, "odd": o} for a, (e, o) in sorted(self.dims.items())}
        action = {}
        for f, M in self.action.items():
            (se, so), (te, to) = self.dims[C.src[f]], self.dims[C.tgt[f]]
            dense = M.to_dense()
            action[C.morphisms[f]] = {
                "even": [[str(dense[i][j]) for j in range(se)] for i in range(te)],
                "odd": [[str(dense[te + i][se + j]) for j in range(so)] for i in range(to)],
            }
        Fd = {}
        for a, M in self.F.items():
            e, o = self.dims[a]
            dense = M.to_dense()
            Fd[C.objects[a]] = {
                "odd_from_even": [[str(dense[e + i][j]) for j in range(e)] for i in range(o)],
                "even_from_odd": [[str(dense[i][e + j]) for j in range(o)] for i in range(e)],
            }
        return {"spaces": spaces, "action": action, "F": Fd}


def matrix_inverse(M):
    n = M.nrows
    if M.ncols != n:
        raise DimensionMismatch("only square matrices are invertible")
    cols = []
    for j in range(n):
        x = solve(M, {j: ONE})
        if x is None:
            from .errors import NotInvertible
            raise NotInvertible("matrix is singular")
        cols.append(x)
    return SparseMatrix.from_columns(n, cols)


class FredholmRealization:
    """The DG-semifunctor Omega(C) -> operators, lead df1..dfn -> H(lead)[F,f1]..[F,fn]."""

    def __init__(self, FM, max_degree):
        self.module = FM
        self.omega = OmegaCategory(FM.category, max_degree)

    def realize(self, elem):
        FM = self.module
        out = SparseMatrix(FM.size(elem.target), FM.size(elem.source))
        for (lead, tail), c in elem.coords.items():
            if lead is UNIT:
                M = SparseMatrix.identity(FM.size(elem.target))
            else:
                M = FM.action[lead]
            for f in tail:
                M = M @ FM._comm(f)
            out = out + M.scale(c)
        return out

    def semifunctor_violations(self, degree_pairs=None):
        """Check multiplicativity and compatibility with d on basis symbols."""
        om, FM = self.omega, self.module
        C = FM.category
        nobj = len(C.objects)
        bad = []
        top = om.max_degree
        for x in range(nobj):
            for y in range(nobj):
                for i in range(top):
                    for s in om.symbols(x, y, i):
                        w = om.element(s)
                        lhs = self.realize(om.differentiate(w))
                        rhs = FM.graded_commutator(self.realize(w), x, y, i)
                        if lhs != rhs:
                            bad.append(("d", s))
        for x in range(nobj):
            for y in range(nobj):
                for z in range(nobj):
                    for i in range(top + 1):
                        for j in range(top + 1 - i):
                            for sb in om.symbols(x, y, i):
                                for sa in om.symbols(y, z, j):
                                    a, b = om.element(sa), om.element(sb)
                                    if self.realize(om.compose(a, b)) != self.realize(a) @ self.realize(b):
                                        bad.append(("mul", sa, sb))
        return bad


def omega_realization(FM, max_degree=2):
    return FredholmRealization(FM, max_degree)


class FredholmCycle:
    """Cycle whose character is the Chern cocycle of a Fredholm module."""

    def __init__(self, FM, m):
        self.module = FM
        self.category = FM.category
        self.degree = 2 * m

    def character_value(self, t):
        return self.module.chern_value(t)


def supertrace_axiom_violations(FM, max_degree=2):
    """Tr_s closedness, graded trace law and agreement with Tr(eps T) on realized symbols."""
    real = FredholmRealization(FM, max_degree)
    om = real.omega
    C = FM.category
    nobj = len(C.objects)
    bad = []
    for n in range(0, max_degree + 1):
        for x in range(nobj):
            for s in om.symbols(x, x, n):
                T = real.realize(om.element(s))
                st = FM.supertrace(T, x)
                if n % 2 == 0 and st != FM.plain_supertrace(T, x):
                    bad.append(("even-trace", s))
                if n % 2 == 1 and st:
                    bad.append(("odd-trace", s))
                if n >= 1 and FM.supertrace(FM.graded_commutator(T, x, x, n), x):
                    bad.append(("closed", s))
        for x in range(nobj):
            for y in range(nobj):
                for i in range(n + 1):
                    j = n - i
                    sign = ONE if (i * j) % 2 == 0 else -ONE
                    for sg in om.symbols(x, y, i):
                        for sgp in om.symbols(y, x, j):
                            g, gp = real.realize(om.element(sg)), real.realize(om.element(sgp))
                            if FM.supertrace(gp @ g, x) != sign * FM.supertrace(g @ gp, y):
                                bad.append(("graded", sg, sgp))
    return bad


# random modules

def _rand_q(rng, small=2):
    while True:
        v = Scalar(rng.randint(-small, small))
        if rng.random() < 0.3:
            v = v / Scalar(rng.randint(1, 3))
        if rng.random() < 0.2:
            v = v + Scalar(0, rng.choice((-1, 1)))
        return v


def random_matrix(rng, nrows, ncols, density=0.8):
    return SparseMatrix.from_dense([[(_rand_q(rng) if rng.random() < density else ZERO) for _ in range(ncols)]
                                    for _ in range(nrows)], ncols) if nrows and ncols else SparseMatrix(nrows, ncols)


def random_invertible(rng, n):
    while True:
        M = random_matrix(rng, n, n)
        if rank(M) == n:
            return M


def random_idempotent(rng, n):
    S = random_invertible(rng, n)
    D = SparseMatrix(n, n, {i: {i: ONE} for i in range(n) if rng.random() < 0.5})
    return S @ D @ matrix_inverse(S)


def random_nilpotent(rng, n):
    if n < 2 or rng.random() < 0.25:
        return SparseMatrix(n, n)
    S = random_invertible(rng, n)
    J = SparseMatrix(n, n, {0: {1: ONE}})
    return S @ J @ matrix_inverse(S)


def random_involution_pair(rng, d):
    Q = random_invertible(rng, d)
    return Q, matrix_inverse(Q)


def _matrix_category():
    from .lincat import point_category, tensor_matrix

    return tensor_matrix(point_category(), 2)


def _iso_category():
    from .lincat import preorder_category

    return preorder_category(2, {(0, 1), (1, 0)}, name="iso")


def random_fredholm_module(rng=None, C=None):
    """Random module over one of a few small categories, dims (d|d), d <= 2."""
    from .lincat import (arrow_category, dual_numbers, idempotent_arrow_category, idempotent_category,
                         point_category, semisimple_category)

    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    if C is None:
        C = rng.choice([point_category, dual_numbers, idempotent_category, arrow_category,
                        idempotent_arrow_category, _matrix_category, _iso_category,
                        lambda: semisimple_category(3)])()
    dims = {x: rng.randint(1, 2) for x in C.objects}
    if C.name in ("point(x)M2",) or C.name.startswith("k^"):
        dims = {x: 2 for x in C.objects}
    if C.name == "iso":
        d = rng.randint(1, 2)
        dims = {x: d for x in C.objects}
    spaces = {x: (d, d) for x, d in dims.items()}
    action = {}
    ident = SparseMatrix.identity
    name = C.name
    if name == "point":
        action["1"] = (ident(dims["pt"]), ident(dims["pt"]))
    elif name == "dual":
        d = dims["X"]
        action["1"] = (ident(d), ident(d))
        action["x"] = (random_nilpotent(rng, d), random_nilpotent(rng, d))
    elif name == "idem":
        d = dims["X"]
        action["1"] = (ident(d), ident(d))
        action["e"] = (random_idempotent(rng, d), random_idempotent(rng, d))
    elif name == "arrow":
        dx, dy = dims["X"], dims["Y"]
        action["1X"] = (ident(dx), ident(dx))
        action["1Y"] = (ident(dy), ident(dy))
        action["a"] = (random_matrix(rng, dy, dx), random_matrix(rng, dy, dx))
    elif name == "idem-arrow":
        dx, dy = dims["X"], dims["Y"]
        action["1X"] = (ident(dx), ident(dx))
        action["1Y"] = (ident(dy), ident(dy))
        E = (random_idempotent(rng, dx), random_idempotent(rng, dx))
        A = (random_matrix(rng, dy, dx), random_matrix(rng, dy, dx))
        action["e"] = E
        action["a"] = A
        action["ae"] = (A[0] @ E[0], A[1] @ E[1])
    elif name.startswith("k^"):
        r = len(C.morphisms)
        d = dims["X"]
        S = (random_invertible(rng, d), random_invertible(rng, d))
        Si = (matrix_inverse(S[0]), matrix_inverse(S[1]))
        labels = ([rng.randrange(r) for _ in range(d)], [rng.randrange(r) for _ in range(d)])
        action["1"] = (ident(d), ident(d))
        for t in range(1, r):
            blocks = []
            for h in (0, 1):
                D = SparseMatrix(d, d, {i: {i: ONE} for i in range(d) if labels[h][i] == t})
                blocks.append(S[h] @ D @ Si[h])
            action[f"e{t}"] = tuple(blocks)
    elif name == "point(x)M2":
        S = (random_invertible(rng, 2), random_invertible(rng, 2))
        Si = (matrix_inverse(S[0]), matrix_inverse(S[1]))
        for f, (_, i, j) in zip(C.morphisms, C.matrix_pair):
            Eij = SparseMatrix(2, 2, {i - 1: {j - 1: ONE}})
            action[f] = (S[0] @ Eij @ Si[0], S[1] @ Eij @ Si[1])
    elif name == "iso":
        d = dims["X0"]
        A = (random_invertible(rng, d), random_invertible(rng, d))
        action["e00"] = (ident(d), ident(d))
        action["e11"] = (ident(d), ident(d))
        action["e10"] = A
        action["e01"] = (matrix_inverse(A[0]), matrix_inverse(A[1]))
    else:
        raise ValueError(f"no random module recipe for category {name!r}")
    F = {}
    for x, d in dims.items():
        Q, Qi = random_involution_pair(rng, d)
        F[x] = (Q, Qi)
    return FredholmModule(C, spaces, action, F)
