"""Finite linear categories given by hom bases and composition structure constants.

Objects and morphisms are named by strings; internally both are indexed by
declaration order.  ``comp[(g, f)]`` stores ``g o f`` as a sparse coordinate
dict over the basis of the target hom space (absent means zero).
"""

import itertools
import random
from dataclasses import dataclass, field

from .errors import (AlreadyUnital, InvalidCategory, NotComposable, NotInvertible,
                     SemicategoryHasNoIdentities)
from .exact_linalg import ONE, ZERO, Scalar, SparseMatrix, solve, vec_add


def _clean(vec):
    return {k: Scalar.coerce(v) for k, v in vec.items() if Scalar.coerce(v)}


class LinCategory:
    """A finite k-linear (semi)category.

    Parameters
    ----------
    objects : list of object names, at least one.
    homs : dict mapping ``(X, Y)`` to the basis ids of Hom(X, Y).
    compose : dict mapping ``(g, f)`` to ``{h: coefficient}`` for g o f.
    identities : dict ``X -> {f: coefficient}``, or None for a semicategory.
    """

    def __init__(self, objects, homs, compose, identities=None, name=None):
        if not objects:
            raise InvalidCategory("a category needs at least one object")
        if len(set(objects)) != len(objects):
            raise InvalidCategory("duplicate object names")
        self.name = name
        self.objects = list(objects)
        self.obj_index = {x: k for k, x in enumerate(self.objects)}
        self.morphisms = []
        self.src = []
        self.tgt = []
        self.hom = {}
        nobj = len(self.objects)
        for a in range(nobj):
            for b in range(nobj):
                self.hom[(a, b)] = []
        for key, ids in homs.items():
            x, y = key
            if x not in self.obj_index or y not in self.obj_index:
                raise InvalidCategory(f"hom space ({x}, {y}) names an unknown object")
        # declaration order: object pairs in the order given, then basis order
        for key, ids in homs.items():
            a, b = self.obj_index[key[0]], self.obj_index[key[1]]
            for f in ids:
                if not isinstance(f, str):
                    raise InvalidCategory("morphism ids must be strings")
                self.hom[(a, b)].append(len(self.morphisms))
                self.morphisms.append(f)
                self.src.append(a)
                self.tgt.append(b)
        self.mor_index = {f: k for k, f in enumerate(self.morphisms)}
        if len(self.mor_index) != len(self.morphisms):
            raise InvalidCategory("morphism ids must be unique across all hom spaces")
        self.comp = {}
        for (g, f), res in compose.items():
            gi = self._mor(g)
            fi = self._mor(f)
            if self.src[gi] != self.tgt[fi]:
                raise InvalidCategory(f"composite {g} o {f} is not composable")
            vec = {}
            for h, c in res.items():
                hi = self._mor(h)
                if self.src[hi] != self.src[fi] or self.tgt[hi] != self.tgt[gi]:
                    raise InvalidCategory(f"composite {g} o {f} lands outside its hom space via {h}")
                c = Scalar.coerce(c)
                if c:
                    vec[hi] = c
            if vec:
                self.comp[(gi, fi)] = vec
        self.unital = identities is not None
        self.identity = None
        if identities is not None:
            self.identity = {}
            for x in self.objects:
                if x not in identities:
                    raise InvalidCategory(f"missing identity for object {x}")
            for x, vec in identities.items():
                a = self._obj(x)
                v = {}
                for f, c in vec.items():
                    fi = self._mor(f)
                    if self.src[fi] != a or self.tgt[fi] != a:
                        raise InvalidCategory(f"identity of {x} uses {f} outside Hom({x}, {x})")
                    c = Scalar.coerce(c)
                    if c:
                        v[fi] = c
                if not v:
                    raise InvalidCategory(f"identity of {x} is zero")
                self.identity[a] = v
        self._cache = {}

    def _obj(self, x):
        if isinstance(x, int):
            return x
        try:
            return self.obj_index[x]
        except KeyError:
            raise InvalidCategory(f"unknown object {x!r}") from None

    def _mor(self, f):
        if isinstance(f, int):
            return f
        try:
            return self.mor_index[f]
        except KeyError:
            raise InvalidCategory(f"unknown morphism {f!r}") from None

    def __repr__(self):
        label = self.name or "LinCategory"
        return f"<{label}: {len(self.objects)} objects, {len(self.morphisms)} basis morphisms>"

    def hom_basis(self, x, y):
        """Basis ids of Hom(x, y)."""
        return [self.morphisms[k] for k in self.hom[(self._obj(x), self._obj(y))]]

    def hom_dim(self, x, y):
        return len(self.hom[(self._obj(x), self._obj(y))])

    def compose(self, g, f):
        """g o f for basis morphisms (ids or indices), as ``{index: coeff}``."""
        gi, fi = self._mor(g), self._mor(f)
        if self.src[gi] != self.tgt[fi]:
            raise NotComposable(f"{self.morphisms[gi]} o {self.morphisms[fi]} is not composable")
        return self.comp.get((gi, fi), {})

    def compose_vec(self, u, v):
        """Bilinear composite of coordinate vectors u o v."""
        out = {}
        for g, a in u.items():
            for f, b in v.items():
                if self.src[g] != self.tgt[f]:
                    raise NotComposable("vectors are not composable")
                for h, c in self.comp.get((g, f), {}).items():
                    w = out.get(h)
                    x = a * b * c
                    w = x if w is None else w + x
                    if w:
                        out[h] = w
                    else:
                        out.pop(h, None)
        return out

    def identity_vec(self, x):
        if self.identity is None:
            raise SemicategoryHasNoIdentities("semicategory has no identities")
        return self.identity[self._obj(x)]

    def basis_identity(self, x):
        """Index of id_x if it is itself a basis element, else None."""
        v = self.identity_vec(x)
        if len(v) == 1:
            (k, c), = v.items()
            if c == ONE:
                return k
        return None

    def endo_dims(self):
        return [len(self.hom[(a, a)]) for a in range(len(self.objects))]

    def to_dict(self):
        """Plain JSON-able presentation."""
        homs = {}
        # declaration order, so a round trip keeps morphism indices
        for k, f in enumerate(self.morphisms):
            homs.setdefault(f"{self.objects[self.src[k]]}|{self.objects[self.tgt[k]]}", []).append(f)
        compose = []
        for (g, f) in sorted(self.comp):
            res = self.comp[(g, f)]
            compose.append({"g": self.morphisms[g], "f": self.morphisms[f],
                            "result": {self.morphisms[h]: str(c) for h, c in sorted(res.items())}})
        out = {"objects": list(self.objects), "homs": homs, "compose": compose}
        if self.identity is not None:
            out["identities"] = {self.objects[a]: {self.morphisms[k]: str(c) for k, c in sorted(v.items())}
                                 for a, v in sorted(self.identity.items())}
        return out


@dataclass
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate_presentation(C, limit=None):
    """Check associativity on composable basis triples and the unit laws."""
    bad = []
    n = len(C.morphisms)
    by_tgt = {}
    for f in range(n):
        by_tgt.setdefault(C.tgt[f], []).append(f)
    for h in range(n):
        for g in by_tgt.get(C.src[h], []):
            hg = C.comp.get((h, g), {})
            for f in by_tgt.get(C.src[g], []):
                left = C.compose_vec(hg, {f: ONE})
                right = C.compose_vec({h: ONE}, C.comp.get((g, f), {}))
                if left != right:
                    bad.append(f"associativity fails on ({C.morphisms[h]}, {C.morphisms[g]}, {C.morphisms[f]})")
                    if limit and len(bad) >= limit:
                        return ValidationReport(False, bad)
    if C.identity is not None:
        for f in range(n):
            unit = {f: ONE}
            if C.compose_vec(C.identity[C.tgt[f]], unit) != unit:
                bad.append(f"left identity law fails on {C.morphisms[f]}")
            if C.compose_vec(unit, C.identity[C.src[f]]) != unit:
                bad.append(f"right identity law fails on {C.morphisms[f]}")
    return ValidationReport(not bad, bad)


def unitalize(C):
    """Adjoin a fresh identity basis element at every object of a semicategory."""
    if C.unital:
        raise AlreadyUnital("category already has identities")
    taken = set(C.morphisms)
    homs = {}
    new_ids = {}
    for (a, b), ids in C.hom.items():
        lst = [C.morphisms[k] for k in ids]
        if a == b:
            name = f"1_{C.objects[a]}"
            while name in taken:
                name = "_" + name
            taken.add(name)
            new_ids[a] = name
            lst = [name] + lst
        if lst:
            homs[(C.objects[a], C.objects[b])] = lst
    compose = _compose_table(C)
    for f in range(len(C.morphisms)):
        fid = C.morphisms[f]
        compose[(new_ids[C.tgt[f]], fid)] = {fid: ONE}
        compose[(fid, new_ids[C.src[f]])] = {fid: ONE}
    for a, name in new_ids.items():
        compose[(name, name)] = {name: ONE}
    ident = {C.objects[a]: {name: ONE} for a, name in new_ids.items()}
    return LinCategory(C.objects, homs, compose, ident, name=f"{C.name or 'C'}+")


def _compose_table(C):
    return {(C.morphisms[g], C.morphisms[f]): {C.morphisms[h]: c for h, c in res.items()}
            for (g, f), res in C.comp.items()}


def _homs_table(C):
    return {(C.objects[a], C.objects[b]): [C.morphisms[k] for k in ids]
            for (a, b), ids in C.hom.items() if ids}


def matrix_unit_name(f, i, j):
    return f"{f}*E{i},{j}"


def tensor_matrix(C, r):
    """C tensor M_r: same objects, basis pairs (f, E_ij) with 1 <= i, j <= r."""
    if r < 1:
        raise ValueError("matrix size must be positive")
    homs = {}
    pair = {}
    for (a, b), ids in C.hom.items():
        lst = []
        for k in ids:
            for i in range(1, r + 1):
                for j in range(1, r + 1):
                    nm = matrix_unit_name(C.morphisms[k], i, j)
                    lst.append(nm)
                    pair[nm] = (k, i, j)
        if lst:
            homs[(C.objects[a], C.objects[b])] = lst
    compose = {}
    for (g, f), res in C.comp.items():
        for i in range(1, r + 1):
            for j in range(1, r + 1):
                for l in range(1, r + 1):
                    compose[(matrix_unit_name(C.morphisms[g], i, j), matrix_unit_name(C.morphisms[f], j, l))] = {
                        matrix_unit_name(C.morphisms[h], i, l): c for h, c in res.items()}
    ident = None
    if C.identity is not None:
        ident = {}
        for a, v in C.identity.items():
            ident[C.objects[a]] = {matrix_unit_name(C.morphisms[k], p, p): c
                                   for k, c in v.items() for p in range(1, r + 1)}
    D = LinCategory(C.objects, homs, compose, ident, name=f"{C.name or 'C'}(x)M{r}")
    D.matrix_base = C
    D.matrix_size = r
    D.matrix_pair = [pair[m] for m in D.morphisms]
    D.matrix_index = {pair[m]: k for k, m in enumerate(D.morphisms)}
    return D


def pair_name(f, g):
    return f"{f}@{g}"


def tensor_product(C, C2):
    """C tensor C2: objects and basis morphisms are pairs."""
    objects = [f"{x}@{y}" for x in C.objects for y in C2.objects]
    homs = {}
    for (a, b), ids in C.hom.items():
        for (a2, b2), ids2 in C2.hom.items():
            lst = [pair_name(C.morphisms[k], C2.morphisms[k2]) for k in ids for k2 in ids2]
            if lst:
                homs[(f"{C.objects[a]}@{C2.objects[a2]}", f"{C.objects[b]}@{C2.objects[b2]}")] = lst
    compose = {}
    for (g, f), res in C.comp.items():
        for (g2, f2), res2 in C2.comp.items():
            compose[(pair_name(C.morphisms[g], C2.morphisms[g2]), pair_name(C.morphisms[f], C2.morphisms[f2]))] = {
                pair_name(C.morphisms[h], C2.morphisms[h2]): c * c2 for h, c in res.items() for h2, c2 in res2.items()}
    ident = None
    if C.identity is not None and C2.identity is not None:
        ident = {}
        for a, v in C.identity.items():
            for a2, v2 in C2.identity.items():
                ident[f"{C.objects[a]}@{C2.objects[a2]}"] = {
                    pair_name(C.morphisms[k], C2.morphisms[k2]): c * c2 for k, c in v.items() for k2, c2 in v2.items()}
    D = LinCategory(objects, homs, compose, ident, name=f"{C.name or 'C'}(x){C2.name or 'C'}")
    D.tensor_factors = (C, C2)
    split = {}
    for k in range(len(C.morphisms)):
        for k2 in range(len(C2.morphisms)):
            nm = pair_name(C.morphisms[k], C2.morphisms[k2])
            if nm in D.mor_index:
                split[D.mor_index[nm]] = (k, k2)
    D.tensor_split = split
    return D


class LinFunctor:
    """Linear functor: object map plus images of basis morphisms."""

    def __init__(self, C, D, obj_map, mor_map):
        self.source = C
        self.target = D
        self.obj_map = {C._obj(x): D._obj(y) for x, y in obj_map.items()}
        self.mor_map = {}
        for f, vec in mor_map.items():
            self.mor_map[C._mor(f)] = {D._mor(h): Scalar.coerce(c) for h, c in vec.items() if Scalar.coerce(c)}

    def image(self, f):
        return self.mor_map.get(f, {})

    def check(self):
        """List violations of functoriality on basis data."""
        C, D = self.source, self.target
        bad = []
        for f in range(len(C.morphisms)):
            for h in self.image(f):
                if D.src[h] != self.obj_map[C.src[f]] or D.tgt[h] != self.obj_map[C.tgt[f]]:
                    bad.append(f"image of {C.morphisms[f]} leaves its hom space")
        for g in range(len(C.morphisms)):
            for f in range(len(C.morphisms)):
                if C.src[g] != C.tgt[f]:
                    continue
                lhs = D.compose_vec(self.image(g), self.image(f))
                rhs = {}
                for h, c in C.comp.get((g, f), {}).items():
                    rhs = vec_add(rhs, self.image(h), c)
                if lhs != rhs:
                    bad.append(f"F({C.morphisms[g]} o {C.morphisms[f]}) != F({C.morphisms[g]}) o F({C.morphisms[f]})")
        if C.identity is not None:
            for a, v in C.identity.items():
                img = {}
                for k, c in v.items():
                    img = vec_add(img, self.image(k), c)
                if img != D.identity_vec(self.obj_map[a]):
                    bad.append(f"identity of {C.objects[a]} not preserved")
        return bad


def endo_inverse(C, x, eta):
    """Two-sided inverse of an endomorphism vector of x, or NotInvertible."""
    a = C._obj(x)
    basis = C.hom[(a, a)]
    pos = {k: t for t, k in enumerate(basis)}
    ident = C.identity_vec(a)
    cols = []
    for k in basis:
        cols.append({pos[h]: c for h, c in C.compose_vec(eta, {k: ONE}).items()})
    L = SparseMatrix.from_columns(len(basis), cols)
    sol = solve(L, {pos[h]: c for h, c in ident.items()})
    if sol is None:
        raise NotInvertible(f"endomorphism of {C.objects[a]} has no right inverse")
    inv = {basis[t]: c for t, c in sol.items() if c}
    if C.compose_vec(inv, eta) != ident:
        raise NotInvertible(f"endomorphism of {C.objects[a]} is not two-sided invertible")
    return inv


def inner_automorphism(C, eta):
    """Functor f -> eta(Y) f eta(X)^-1 for invertible endomorphisms ``eta``.

    ``eta`` maps each object to a coordinate dict (ids or indices).
    """
    etas = {}
    for x in C.objects:
        a = C._obj(x)
        vec = eta.get(x, eta.get(a)) if isinstance(eta, dict) else None
        if vec is None:
            vec = C.identity_vec(a)
        etas[a] = {C._mor(k): Scalar.coerce(c) for k, c in vec.items() if Scalar.coerce(c)}
    invs = {a: endo_inverse(C, a, v) for a, v in etas.items()}
    mor_map = {}
    for f in range(len(C.morphisms)):
        v = C.compose_vec(C.compose_vec(etas[C.tgt[f]], {f: ONE}), invs[C.src[f]])
        mor_map[f] = v
    F = LinFunctor(C, C, {a: a for a in range(len(C.objects))}, mor_map)
    F.eta = etas
    F.eta_inv = invs
    return F


def compose_functors(F, G):
    """F o G (apply G first)."""
    C = G.source
    mor_map = {}
    for f in range(len(C.morphisms)):
        out = {}
        for h, c in G.image(f).items():
            out = vec_add(out, F.image(h), c)
        mor_map[f] = out
    return LinFunctor(C, F.target, {a: F.obj_map[G.obj_map[a]] for a in G.obj_map}, mor_map)


def change_basis(C, transforms, name=None):
    """Re-present C in a new basis.

    ``transforms[(a, b)]`` lists the new basis of Hom(a, b) as columns
    ``{old index: coeff}``; ``transforms[(a, b, 'names')]`` optionally names
    them (default: old name with a trailing ``~``).
    """
    expand = {}
    spaces = {}
    homs = {}
    for (a, b), ids in C.hom.items():
        if not ids:
            continue
        cols = transforms.get((a, b)) or [{k: ONE} for k in ids]
        names = transforms.get((a, b, "names")) or [f"{C.morphisms[k]}~" for k in ids]
        if len(cols) != len(ids) or len(names) != len(ids):
            raise ValueError("basis change must preserve dimension")
        pos = {k: t for t, k in enumerate(ids)}
        M = SparseMatrix.from_columns(len(ids), [{pos[k]: c for k, c in col.items()} for col in cols])
        from .exact_linalg import rank
        if rank(M) != len(ids):
            raise NotInvertible("basis change matrix is singular")
        spaces[(a, b)] = (M, pos, names)
        homs[(C.objects[a], C.objects[b])] = list(names)
        for nm, col in zip(names, cols):
            expand[nm] = ((a, b), col)

    def to_new(vec, a, b):
        M, pos, names = spaces[(a, b)]
        sol = solve(M, {pos[k]: c for k, c in vec.items()})
        return {names[t]: c for t, c in sol.items() if c}

    compose = {}
    for g, ((bg, cg), gv) in expand.items():
        for f, ((af, bf), fv) in expand.items():
            if bf != bg:
                continue
            v = C.compose_vec(gv, fv)
            if v:
                compose[(g, f)] = to_new(v, af, cg)
    ident = None
    if C.identity is not None:
        ident = {C.objects[a]: to_new(v, a, a) for a, v in C.identity.items()}
    return LinCategory(C.objects, homs, compose, ident, name=name or C.name)


# a few standard categories

def point_category():
    """One object, Hom = k spanned by the identity."""
    return LinCategory(["pt"], {("pt", "pt"): ["1"]}, {("1", "1"): {"1": ONE}}, {"pt": {"1": ONE}},
                       name="point")


def dual_numbers():
    """One object with End = k[x]/(x^2)."""
    return LinCategory(["X"], {("X", "X"): ["1", "x"]},
                       {("1", "1"): {"1": ONE}, ("1", "x"): {"x": ONE}, ("x", "1"): {"x": ONE}},
                       {"X": {"1": ONE}}, name="dual")


def idempotent_category():
    """One object with End = k x k, basis {1, e} with e^2 = e."""
    return LinCategory(["X"], {("X", "X"): ["1", "e"]},
                       {("1", "1"): {"1": ONE}, ("1", "e"): {"e": ONE}, ("e", "1"): {"e": ONE},
                        ("e", "e"): {"e": ONE}},
                       {"X": {"1": ONE}}, name="idem")


def arrow_category():
    """Two objects X, Y and a single arrow a: X -> Y."""
    return LinCategory(["X", "Y"], {("X", "X"): ["1X"], ("Y", "Y"): ["1Y"], ("X", "Y"): ["a"]},
                       {("1X", "1X"): {"1X": ONE}, ("1Y", "1Y"): {"1Y": ONE},
                        ("a", "1X"): {"a": ONE}, ("1Y", "a"): {"a": ONE}},
                       {"X": {"1X": ONE}, "Y": {"1Y": ONE}}, name="arrow")


def idempotent_arrow_category():
    """X carries an idempotent e, with arrows a, ae: X -> Y."""
    comp = {("1X", "1X"): {"1X": ONE}, ("1X", "e"): {"e": ONE}, ("e", "1X"): {"e": ONE},
            ("e", "e"): {"e": ONE}, ("1Y", "1Y"): {"1Y": ONE}}
    for a in ("a", "ae"):
        comp[("1Y", a)] = {a: ONE}
        comp[(a, "1X")] = {a: ONE}
        comp[(a, "e")] = {"ae": ONE}
    return LinCategory(["X", "Y"],
                       {("X", "X"): ["1X", "e"], ("Y", "Y"): ["1Y"], ("X", "Y"): ["a", "ae"]},
                       comp, {"X": {"1X": ONE}, "Y": {"1Y": ONE}}, name="idem-arrow")


def semisimple_category(r):
    """One object with End = k^r, basis {1, e1, ..., e(r-1)} of orthogonal idempotents e_i."""
    names = ["1"] + [f"e{i}" for i in range(1, r)]
    comp = {("1", "1"): {"1": ONE}}
    for e in names[1:]:
        comp[("1", e)] = {e: ONE}
        comp[(e, "1")] = {e: ONE}
        comp[(e, e)] = {e: ONE}
    return LinCategory(["X"], {("X", "X"): names}, comp, {"X": {"1": ONE}}, name=f"k^{r}")


def group_category(elements, mult, name="group"):
    """One object whose endomorphisms form the group algebra of a finite group.

    ``mult[(g, h)]`` is the product g*h; ``elements[0]`` must be the unit.
    """
    e = elements[0]
    comp = {(g, h): {mult[(g, h)]: ONE} for g in elements for h in elements}
    return LinCategory(["*"], {("*", "*"): list(elements)}, comp, {"*": {e: ONE}}, name=name)


def non_identity_part(C):
    """Semicategory spanned by the non-identity basis elements, if closed."""
    ids = set()
    for a in range(len(C.objects)):
        k = C.basis_identity(a)
        if k is None:
            raise InvalidCategory("identities must be basis elements")
        ids.add(k)
    keep = [k for k in range(len(C.morphisms)) if k not in ids]
    homs = {}
    for (a, b), lst in C.hom.items():
        sub = [C.morphisms[k] for k in lst if k not in ids]
        if sub:
            homs[(C.objects[a], C.objects[b])] = sub
    compose = {}
    for (g, f), res in C.comp.items():
        if g in ids or f in ids:
            continue
        if any(h in ids for h in res):
            raise InvalidCategory("non-identity part is not closed under composition")
        compose[(C.morphisms[g], C.morphisms[f])] = {C.morphisms[h]: c for h, c in res.items()}
    if not keep:
        raise InvalidCategory("non-identity part is empty")
    return LinCategory(C.objects, homs, compose, None, name=f"{C.name or 'C'}-")


_LOCAL_TYPES = ("field", "dual", "idem", "z2")


def _rand_scalar(rng, gaussian=True, small=3):
    while True:
        re = Scalar(rng.randint(-small, small)) / Scalar(rng.randint(1, 2))
        im = Scalar(rng.randint(-1, 1)) if gaussian and rng.random() < 0.3 else ZERO
        z = re + im * Scalar(0, 1)
        if z:
            return z


def preorder_category(k, relation, name="preorder"):
    """Incidence category of a preorder on k objects; ``relation`` holds pairs a <= b.

    Hom(Xa, Xb) is spanned by ``e<b><a>`` when a <= b; the relation is closed
    reflexively and transitively first.
    """
    rel = {(a, a) for a in range(k)} | set(relation)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    objs = [f"X{t}" for t in range(k)]
    homs = {(objs[a], objs[b]): [f"e{b}{a}"] for a in range(k) for b in range(k) if (a, b) in rel}
    comp = {}
    for (a, b) in rel:
        for (c, d) in rel:
            if b == c:
                comp[(f"e{d}{c}", f"e{b}{a}")] = {f"e{d}{a}": ONE}
    ident = {objs[a]: {f"e{a}{a}": ONE} for a in range(k)}
    return LinCategory(objs, homs, comp, ident, name=name)


def local_algebra(kind):
    """One-object category with End = k, k[x]/x^2, k x k or k[Z/2]."""
    if kind == "field":
        return point_category()
    if kind == "dual":
        return dual_numbers()
    if kind == "idem":
        return idempotent_category()
    return LinCategory(["X"], {("X", "X"): ["1", "s"]},
                       {("1", "1"): {"1": ONE}, ("1", "s"): {"s": ONE}, ("s", "1"): {"s": ONE},
                        ("s", "s"): {"1": ONE}}, {"X": {"1": ONE}}, name="z2")


def _random_incidence(rng, max_objects, max_dim):
    k = rng.randint(1, max_objects)
    rel = {(a, b) for a in range(k) for b in range(k) if a != b and rng.random() < 0.45}
    P = preorder_category(k, rel)
    kind = rng.choice(_LOCAL_TYPES if max_dim >= 2 else ("field",))
    return tensor_product(P, local_algebra(kind))


def random_category(rng=None, max_objects=3, max_dim=2, semicategory=False, basis_change=True):
    """Random finite category with hom dims <= ``max_dim`` (at most 2).

    Two families: a preorder incidence category tensored with one of
    k, k[x]/x^2, k x k, k[Z/2]; or objects carrying such algebras joined by
    one-dimensional arrows in one direction that act through characters.  A
    random basis change, keeping identities as basis elements, then
    scrambles the structure constants.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    if not semicategory and rng.random() < 0.5:
        C = _random_incidence(rng, max_objects, max_dim)
        return _scramble(C, rng) if basis_change else C
    k = rng.randint(1, max_objects)
    objs = [f"X{t}" for t in range(k)]
    local = [rng.choice(_LOCAL_TYPES if max_dim >= 2 else ("field",)) for _ in range(k)]
    if semicategory:
        local = [rng.choice(("dual", "idem")) for _ in range(k)]
    homs = {}
    comp = {}
    ident = {}
    gen = {}
    for t, x in enumerate(objs):
        one = f"1{x}"
        ident[x] = {one: ONE}
        comp[(one, one)] = {one: ONE}
        if local[t] == "field":
            homs[(x, x)] = [one]
            continue
        u = f"u{x}"
        gen[t] = u
        homs[(x, x)] = [one, u]
        comp[(one, u)] = {u: ONE}
        comp[(u, one)] = {u: ONE}
        if local[t] == "idem":
            comp[(u, u)] = {u: ONE}
        elif local[t] == "z2":
            comp[(u, u)] = {one: ONE}

    def character(t):
        kind = local[t]
        if kind == "field":
            return None
        if kind == "dual":
            return ZERO
        if kind == "idem":
            return rng.choice((ZERO, ONE))
        return rng.choice((ONE, -ONE))

    arrows = {}
    for a in range(k):
        for b in range(a + 1, k):
            if rng.random() < 0.7:
                nm = f"a{a}{b}"
                arrows[(a, b)] = (nm, character(a), character(b))
                homs[(objs[a], objs[b])] = [nm]
                comp[(nm, f"1{objs[a]}")] = {nm: ONE}
                comp[(f"1{objs[b]}", nm)] = {nm: ONE}
    for (a, b), (nm, right, left) in arrows.items():
        if right is not None and right:
            comp[(nm, gen[a])] = {nm: right}
        if left is not None and left:
            comp[(gen[b], nm)] = {nm: left}
    for (a, b), (g1, r1, l1) in arrows.items():
        for (b2, c), (g2, r2, l2) in arrows.items():
            if b2 != b or (a, c) not in arrows:
                continue
            h, rh, lh = arrows[(a, c)]
            ok = (r1 == rh) and (l2 == lh) and (l1 == r2)
            if ok and rng.random() < 0.8:
                comp[(g2, g1)] = {h: _rand_scalar(rng)}
    C = LinCategory(objs, homs, comp, ident, name="random")
    if semicategory:
        C = non_identity_part(C)
    if not basis_change:
        return C
    return _scramble(C, rng)


def _scramble(C, rng):
    transforms = {}
    for (a, b), ids in C.hom.items():
        if not ids:
            continue
        cols = []
        ident_k = C.basis_identity(a) if (a == b and C.unital) else None
        for t, kk in enumerate(ids):
            if kk == ident_k:
                cols.append({kk: ONE})
                continue
            col = {kk: _rand_scalar(rng)}
            if ident_k is not None and rng.random() < 0.6:
                col[ident_k] = _rand_scalar(rng)
            cols.append(col)
        transforms[(a, b)] = cols
        transforms[(a, b, "names")] = [C.morphisms[kk] if kk == ident_k else C.morphisms[kk] + "'" for kk in ids]
    return change_basis(C, transforms, name="random")


def random_suite(count, seed=0, **kw):
    rng = random.Random(seed)
    return [random_category(rng, **kw) for _ in range(count)]


def object_tuples(C, length):
    return itertools.product(range(len(C.objects)), repeat=length)
