"""Cyclic nerve of a linear category and the cocyclic operators on its cochains.

Level n of the nerve has basis the tuples (f0, ..., fn) of basis morphisms
with f0: X1 -> X0, fi: X(i+1) -> Xi and fn: X0 -> Xn, enumerated by object
tuple and then by hom basis order.  A cochain of level n is a sparse vector
over that basis.  Every cochain operator is a SparseMatrix whose row for a
tuple x is the chain image of x, since (delta phi)(x) = phi(d x).
"""

import itertools
import os

from .errors import DimensionMismatch, NotLambdaInvariant, SemicategoryHasNoIdentities, SizeLimitExceeded
from .exact_linalg import ONE, ZERO, Scalar, SparseMatrix, vec_add

DEFAULT_BASIS_LIMIT = 200_000


def basis_limit():
    raw = os.environ.get("CYCHOM_BASIS_LIMIT")
    if raw:
        return int(raw)
    return DEFAULT_BASIS_LIMIT


def _cached(C, key, build):
    cache = C._cache
    if key not in cache:
        cache[key] = build()
    return cache[key]


def nerve_size(C, n):
    """Number of basis tuples at level n, computed without enumerating them."""
    k = len(C.objects)
    # M[x][y] = dim Hom(y, x); size = trace(M^(n+1))
    M = [[len(C.hom[(y, x)]) for y in range(k)] for x in range(k)]
    P = [[int(i == j) for j in range(k)] for i in range(k)]
    for _ in range(n + 1):
        P = [[sum(P[i][t] * M[t][j] for t in range(k)) for j in range(k)] for i in range(k)]
    return sum(P[i][i] for i in range(k))


class NerveBasis:
    """Ordered basis of level n of the cyclic nerve."""

    def __init__(self, C, n, limit=None):
        if n < 0:
            raise ValueError("nerve level must be nonnegative")
        limit = basis_limit() if limit is None else limit
        size = nerve_size(C, n)
        if size > limit:
            raise SizeLimitExceeded(n, size, limit)
        self.category = C
        self.level = n
        tuples = []
        k = len(C.objects)
        for objs in itertools.product(range(k), repeat=n + 1):
            spaces = []
            for i in range(n + 1):
                spaces.append(C.hom[(objs[(i + 1) % (n + 1)], objs[i])])
            if all(spaces):
                tuples.extend(itertools.product(*spaces))
        self.tuples = tuples
        self.index = {t: j for j, t in enumerate(tuples)}

    def __len__(self):
        return len(self.tuples)

    def __iter__(self):
        return iter(self.tuples)

    def label(self, j):
        C = self.category
        return "|".join(C.morphisms[f] for f in self.tuples[j])

    def parse_label(self, text):
        C = self.category
        t = tuple(C._mor(f) for f in text.split("|"))
        if t not in self.index:
            raise KeyError(f"{text!r} is not a level {self.level} nerve tuple")
        return self.index[t]


def nerve_basis(C, n):
    return _cached(C, ("nerve", n), lambda: NerveBasis(C, n))


class Cochain:
    """Linear functional on level ``level`` of the cyclic nerve."""

    __slots__ = ("category", "level", "vec")

    def __init__(self, C, level, vec=None):
        self.category = C
        self.level = level
        self.vec = {k: v for k, v in (vec or {}).items() if v}

    @classmethod
    def from_values(cls, C, level, values):
        """``values`` maps tuples of morphism ids (or '|' joined labels) to scalars."""
        basis = nerve_basis(C, level)
        vec = {}
        for key, v in values.items():
            if isinstance(key, str):
                j = basis.parse_label(key)
            else:
                j = basis.index[tuple(C._mor(f) for f in key)]
            v = Scalar.coerce(v)
            if v:
                vec[j] = v
        return cls(C, level, vec)

    @classmethod
    def from_function(cls, C, level, fn):
        basis = nerve_basis(C, level)
        vec = {}
        for j, t in enumerate(basis.tuples):
            v = Scalar.coerce(fn(t))
            if v:
                vec[j] = v
        return cls(C, level, vec)

    def basis(self):
        return nerve_basis(self.category, self.level)

    def value(self, key):
        basis = self.basis()
        if isinstance(key, str):
            j = basis.parse_label(key)
        else:
            j = basis.index[tuple(self.category._mor(f) for f in key)]
        return self.vec.get(j, ZERO)

    def _check(self, other):
        if other.category is not self.category or other.level != self.level:
            raise DimensionMismatch("cochains live on different complexes")

    def __add__(self, other):
        self._check(other)
        return Cochain(self.category, self.level, vec_add(self.vec, other.vec))

    def __sub__(self, other):
        self._check(other)
        return Cochain(self.category, self.level, vec_add(self.vec, other.vec, -ONE))

    def __neg__(self):
        return Cochain(self.category, self.level, {k: -v for k, v in self.vec.items()})

    def scale(self, c):
        c = Scalar.coerce(c)
        return Cochain(self.category, self.level, {k: c * v for k, v in self.vec.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return other.category is self.category and other.level == self.level and self.vec == other.vec

    __hash__ = None

    def is_zero(self):
        return not self.vec

    def apply(self, op, level):
        """Apply a cochain operator matrix, producing a cochain of ``level``."""
        if op.ncols != len(self.basis()):
            raise DimensionMismatch(f"operator expects {op.ncols} coordinates, cochain has {len(self.basis())}")
        return Cochain(self.category, level, op.apply(self.vec))

    def to_dict(self):
        basis = self.basis()
        return {basis.label(j): str(v) for j, v in sorted(self.vec.items())}

    @classmethod
    def from_dict(cls, C, level, data):
        return cls.from_values(C, level, data)

    def __repr__(self):
        return f"Cochain(level={self.level}, nnz={len(self.vec)})"


# chain-level images of a basis tuple

def face_image(C, x, i):
    """d_i of a tuple of length n+1 as ``{tuple: coeff}``."""
    n = len(x) - 1
    if not 0 <= i <= n:
        raise ValueError(f"face index {i} out of range for level {n}")
    if i < n:
        res = C.comp.get((x[i], x[i + 1]), {})
        return {x[:i] + (h,) + x[i + 2:]: c for h, c in res.items()}
    res = C.comp.get((x[n], x[0]), {})
    return {(h,) + x[1:n]: c for h, c in res.items()}


def degeneracy_image(C, x, i):
    """s_i: insert the identity of X(i+1) after slot i (i = n appends id_X0)."""
    n = len(x) - 1
    if not C.unital:
        raise SemicategoryHasNoIdentities("degeneracies need identities")
    if not 0 <= i <= n:
        raise ValueError(f"degeneracy index {i} out of range for level {n}")
    obj = C.src[x[i]]
    ident = C.identity[obj]
    return {x[:i + 1] + (u,) + x[i + 1:]: c for u, c in ident.items()}


def rotate(x):
    """t(f0, ..., fn) = (fn, f0, ..., f(n-1))."""
    return (x[-1],) + x[:-1]


def _rows_from_images(C, tgt_level, src_level, image):
    dst = nerve_basis(C, tgt_level)
    src = nerve_basis(C, src_level)
    idx = src.index
    rows = {}
    for j, x in enumerate(dst.tuples):
        r = {}
        for y, c in image(x).items():
            k = idx[y]
            w = r.get(k)
            w = c if w is None else w + c
            if w:
                r[k] = w
            else:
                r.pop(k, None)
        if r:
            rows[j] = r
    return SparseMatrix(len(dst), len(src), rows)


def coface(C, n, i):
    """delta_i: C^(n-1) -> C^n for 0 <= i <= n."""
    if n < 1 or not 0 <= i <= n:
        raise ValueError(f"coface delta_{i} into level {n} is undefined")
    return _cached(C, ("delta", n, i), lambda: _rows_from_images(C, n, n - 1, lambda x: face_image(C, x, i)))


def codegeneracy(C, n, i):
    """sigma_i: C^(n+1) -> C^n for 0 <= i <= n."""
    if not 0 <= i <= n:
        raise ValueError(f"codegeneracy sigma_{i} on level {n} is undefined")
    return _cached(C, ("sigma", n, i),
                   lambda: _rows_from_images(C, n, n + 1, lambda x: degeneracy_image(C, x, i)))


def cyclic_operator(C, n):
    """tau_n on C^n: (tau phi)(f0..fn) = phi(fn, f0, ..., f(n-1))."""
    return _cached(C, ("tau", n), lambda: _rows_from_images(C, n, n, lambda x: {rotate(x): ONE}))


def cocyclic_structure_maps(C, n, kind, i=None):
    """Structure map by name: 'delta' (into level n), 'sigma' (onto level n) or 'tau'."""
    if kind == "delta":
        return coface(C, n, i)
    if kind == "sigma":
        return codegeneracy(C, n, i)
    if kind == "tau":
        return cyclic_operator(C, n)
    raise ValueError(f"unknown structure map {kind!r}")


def _sign(k):
    return ONE if k % 2 == 0 else -ONE


def _signed_sum(mats_with_signs, nrows, ncols):
    out = SparseMatrix(nrows, ncols)
    for s, M in mats_with_signs:
        out = out + M if s > 0 else out - M
    return out


def hochschild_b(C, n):
    """b = sum_{i=0}^{n+1} (-1)^i delta_i : C^n -> C^(n+1)."""
    def build():
        rows, cols = len(nerve_basis(C, n + 1)), len(nerve_basis(C, n))
        return _signed_sum([((-1) ** i, coface(C, n + 1, i)) for i in range(n + 2)], rows, cols)
    return _cached(C, ("b", n), build)


def hochschild_b_prime(C, n):
    """b' = sum_{i=0}^{n} (-1)^i delta_i : C^n -> C^(n+1) (last face omitted)."""
    def build():
        rows, cols = len(nerve_basis(C, n + 1)), len(nerve_basis(C, n))
        return _signed_sum([((-1) ** i, coface(C, n + 1, i)) for i in range(n + 1)], rows, cols)
    return _cached(C, ("b'", n), build)


def lambda_operator(C, n):
    """lambda = (-1)^n tau_n."""
    return _cached(C, ("lambda", n), lambda: cyclic_operator(C, n).scale(_sign(n)))


def lambda_power(C, n, k):
    def build():
        size = len(nerve_basis(C, n))
        M = SparseMatrix.identity(size)
        L = lambda_operator(C, n)
        for _ in range(k):
            M = L @ M
        return M
    return _cached(C, ("lambda^", n, k), build)


def cyclic_antisymmetrizer(C, n):
    """A = 1 + lambda + ... + lambda^n on C^n."""
    def build():
        size = len(nerve_basis(C, n))
        out = SparseMatrix(size, size)
        for k in range(n + 1):
            out = out + lambda_power(C, n, k)
        return out
    return _cached(C, ("A", n), build)


def one_minus_lambda(C, n):
    return _cached(C, ("1-lambda", n),
                   lambda: SparseMatrix.identity(len(nerve_basis(C, n))) - lambda_operator(C, n))


def connes_B0(C, n):
    """B0: C^(n+1) -> C^n, phi(id, f0..fn) - (-1)^(n+1) phi(f0..fn, id)."""
    def image(x):
        if not C.unital:
            raise SemicategoryHasNoIdentities("B0 needs identities")
        ident = C.identity[C.tgt[x[0]]]
        out = {}
        s = -_sign(n + 1)
        for u, c in ident.items():
            y = (u,) + x
            out[y] = out.get(y, ZERO) + c
            z = x + (u,)
            out[z] = out.get(z, ZERO) + s * c
        return {k: v for k, v in out.items() if v}
    return _cached(C, ("B0", n), lambda: _rows_from_images(C, n, n + 1, image))


def connes_B(C, n):
    """B = A B0 : C^(n+1) -> C^n."""
    return _cached(C, ("B", n), lambda: cyclic_antisymmetrizer(C, n) @ connes_B0(C, n))


def connes_operators(C, n, op):
    """Operator by name at level n: 'b', "b'", 'lambda', 'A', 'B0', 'B'."""
    table = {"b": hochschild_b, "b'": hochschild_b_prime, "lambda": lambda_operator,
             "A": cyclic_antisymmetrizer, "B0": connes_B0, "B": connes_B}
    if op not in table:
        raise ValueError(f"unknown operator {op!r}")
    return table[op](C, n)


def lambda_invariant_basis(C, n):
    """Columns spanning Ker(1 - lambda) on C^n, one signed orbit sum per orbit.

    Rotation permutes basis tuples, so invariants are orbit sums with the
    sign pattern of lambda; an orbit whose returning sign is -1 carries none.
    """
    def build():
        basis = nerve_basis(C, n)
        s = -1 if n % 2 else 1
        seen = set()
        cols = []
        for j, x in enumerate(basis.tuples):
            if j in seen:
                continue
            orbit = [x]
            y = rotate(x)
            while y != x:
                orbit.append(y)
                y = rotate(y)
            L = len(orbit)
            for y in orbit:
                seen.add(basis.index[y])
            if s == -1 and L % 2 == 1:
                continue
            col = {}
            # (lambda phi)(x) = s phi(t x); invariance: phi(t^k x) = s^k phi(x)
            for k, y in enumerate(orbit):
                col[basis.index[y]] = ONE if (s == 1 or k % 2 == 0) else -ONE
            cols.append(col)
        return SparseMatrix.from_columns(len(basis), cols)
    return _cached(C, ("Clambda", n), build)


def is_lambda_invariant(phi):
    M = lambda_operator(phi.category, phi.level)
    return M.apply(phi.vec) == phi.vec


def require_lambda_invariant(phi):
    if not is_lambda_invariant(phi):
        raise NotLambdaInvariant(f"level {phi.level} cochain is not lambda-invariant")


def apply_b(phi):
    return phi.apply(hochschild_b(phi.category, phi.level), phi.level + 1)


def apply_lambda(phi):
    return phi.apply(lambda_operator(phi.category, phi.level), phi.level)


def apply_A(phi):
    return phi.apply(cyclic_antisymmetrizer(phi.category, phi.level), phi.level)


def apply_B0(phi):
    return phi.apply(connes_B0(phi.category, phi.level - 1), phi.level - 1)


def apply_B(phi):
    return phi.apply(connes_B(phi.category, phi.level - 1), phi.level - 1)


def _fmt(kind, *idx):
    return f"{kind}[{','.join(str(i) for i in idx)}]"


def cocyclic_identity_checks(C, nmax, cyclic=True, maps=None):
    """Evaluate every cocyclic identity up to level ``nmax``.

    ``maps`` may supply (delta, sigma, tau) callables with the signatures of
    coface/codegeneracy/cyclic_operator; defaults to the nerve maps of C.
    Returns a list of (name, holds) pairs.
    """
    if maps is None:
        delta = lambda n, i: coface(C, n, i)
        sigma = (lambda n, i: codegeneracy(C, n, i)) if C.unital else None
        tau = lambda n: cyclic_operator(C, n)
    else:
        delta, sigma, tau = maps
    out = []
    for n in range(1, nmax + 1):
        # delta_j delta_i = delta_i delta_(j-1), i < j, into level n+1
        if n + 1 <= nmax:
            for j in range(n + 2):
                for i in range(j):
                    out.append((_fmt("dd", n + 1, i, j),
                                delta(n + 1, j) @ delta(n, i) == delta(n + 1, i) @ delta(n, j - 1)))
        # tau_n delta_i = delta_(i-1) tau_(n-1), tau_n delta_0 = delta_n
        for i in range(1, n + 1):
            out.append((_fmt("td", n, i), tau(n) @ delta(n, i) == delta(n, i - 1) @ tau(n - 1)))
        out.append((_fmt("td", n, 0), tau(n) @ delta(n, 0) == delta(n, n)))
    if sigma is not None:
        for n in range(0, nmax):
            # sigma_j sigma_i = sigma_i sigma_(j+1), i <= j, from level n+2 (needs n+2 <= nmax+1)
            if n + 2 <= nmax:
                for j in range(n + 1):
                    for i in range(j + 1):
                        out.append((_fmt("ss", n, i, j),
                                    sigma(n, j) @ sigma(n + 1, i) == sigma(n, i) @ sigma(n + 1, j + 1)))
            # tau_n sigma_i = sigma_(i-1) tau_(n+1), tau_n sigma_0 = sigma_n tau_(n+1)^2
            for i in range(1, n + 1):
                out.append((_fmt("ts", n, i), tau(n) @ sigma(n, i) == sigma(n, i - 1) @ tau(n + 1)))
            out.append((_fmt("ts", n, 0), tau(n) @ sigma(n, 0) == sigma(n, n) @ tau(n + 1) @ tau(n + 1)))
        for n in range(1, nmax + 1):
            # sigma_j delta_i on C^(n-1) -> C^n -> C^(n-1), j <= n-1
            size = delta(n, 0).ncols
            ident = SparseMatrix.identity(size)
            for j in range(n):
                for i in range(n + 1):
                    lhs = sigma(n - 1, j) @ delta(n, i)
                    if i < j:
                        rhs = delta(n - 1, i) @ sigma(n - 2, j - 1)
                    elif i == j or i == j + 1:
                        rhs = ident
                    else:
                        rhs = delta(n - 1, i - 1) @ sigma(n - 2, j)
                    out.append((_fmt("sd", n, i, j), lhs == rhs))
    if cyclic:
        for n in range(0, nmax + 1):
            T = tau(n)
            P = SparseMatrix.identity(T.nrows)
            for _ in range(n + 1):
                P = T @ P
            out.append((_fmt("tt", n), P == SparseMatrix.identity(T.nrows)))
    return out


def connes_identity_checks(C, nmax):
    """bA = Ab', bB + Bb = 0 and the ancillary relations of A, B0, lambda."""
    out = []
    for n in range(0, nmax + 1):
        b, bp = hochschild_b(C, n), hochschild_b_prime(C, n)
        out.append((f"bA=Ab'[{n}]", b @ cyclic_antisymmetrizer(C, n) == cyclic_antisymmetrizer(C, n + 1) @ bp))
        out.append((f"(1-l)b=b'(1-l)[{n}]", one_minus_lambda(C, n + 1) @ b == bp @ one_minus_lambda(C, n)))
        out.append((f"bb=0[{n}]", (hochschild_b(C, n + 1) @ b).is_zero()))
        out.append((f"b'b'=0[{n}]", (hochschild_b_prime(C, n + 1) @ bp).is_zero()))
        L = lambda_operator(C, n)
        P = SparseMatrix.identity(L.nrows)
        weighted = SparseMatrix(L.nrows, L.ncols)
        for k in range(n + 1):
            weighted = weighted + P.scale(k + 1)
            P = L @ P
        ident = SparseMatrix.identity(L.nrows)
        out.append((f"(1-l)N'=A-(n+1)[{n}]", one_minus_lambda(C, n) @ weighted ==
                    cyclic_antisymmetrizer(C, n) - ident.scale(n + 1)))
        out.append((f"A(1-l)=0[{n}]", (cyclic_antisymmetrizer(C, n) @ one_minus_lambda(C, n)).is_zero()))
        if C.unital:
            # B0 b + b' B0 = 1 - lambda on C^(n+1) -> C^(n+1)
            lhs = connes_B0(C, n + 1) @ hochschild_b(C, n + 1) + hochschild_b_prime(C, n) @ connes_B0(C, n)
            out.append((f"B0b+b'B0=1-l[{n + 1}]", lhs == one_minus_lambda(C, n + 1)))
            if n >= 1:
                lhs = hochschild_b(C, n - 1) @ connes_B(C, n - 1) + connes_B(C, n) @ hochschild_b(C, n)
                out.append((f"bB+Bb=0[{n}]", lhs.is_zero()))
            out.append((f"BB=0[{n}]", (connes_B(C, n) @ connes_B(C, n + 1)).is_zero()))
    return out
