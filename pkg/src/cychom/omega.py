"""The universal DG-semicategory Omega(C) and closed graded traces on it.

A basis symbol of Hom^n(X, Y) is ``(lead, (f1, ..., fn))`` standing for
``lead df1 ... dfn``; ``lead`` is a basis morphism of Hom(X1, Y) or ``None``
for the adjoined unit (allowed when X1 = Y and n >= 1).  Elements are sparse
dicts over such symbols, homogeneous in source, target and degree.
"""

import itertools
from dataclasses import dataclass, field

from .errors import DegreeOverflow, NotComposable, NotHomogeneous, TraceAxiomViolated
from .exact_linalg import ONE, ZERO, Scalar
from .nerve import Cochain, nerve_basis

UNIT = None


def _acc(out, key, c):
    w = out.get(key)
    w = c if w is None else w + c
    if w:
        out[key] = w
    else:
        out.pop(key, None)


class OmegaElement:
    """Homogeneous element of Hom^degree(source, target) in Omega(C)."""

    __slots__ = ("source", "target", "degree", "coords")

    def __init__(self, source, target, degree, coords=None):
        self.source = source
        self.target = target
        self.degree = degree
        self.coords = {k: v for k, v in (coords or {}).items() if v}

    def __add__(self, other):
        self._check(other)
        out = dict(self.coords)
        for k, v in other.coords.items():
            _acc(out, k, v)
        return OmegaElement(self.source, self.target, self.degree, out)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c):
        c = Scalar.coerce(c)
        return OmegaElement(self.source, self.target, self.degree, {k: c * v for k, v in self.coords.items()})

    def _check(self, other):
        if (self.source, self.target, self.degree) != (other.source, other.target, other.degree):
            raise NotHomogeneous("elements of different hom spaces or degrees")

    def is_zero(self):
        return not self.coords

    def __eq__(self, other):
        if not isinstance(other, OmegaElement):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return (self.source, self.target, self.degree, self.coords) == \
            (other.source, other.target, other.degree, other.coords)

    __hash__ = None

    def __repr__(self):
        return f"OmegaElement({self.source}->{self.target}, deg {self.degree}, {len(self.coords)} terms)"


class OmegaCategory:
    """Omega(C) truncated at degree ``max_degree``."""

    def __init__(self, C, max_degree):
        self.category = C
        self.max_degree = max_degree
        self._rmul = {}

    # symbols and their endpoints

    def symbol_source(self, sym):
        lead, tail = sym
        C = self.category
        return C.src[tail[-1]] if tail else C.src[lead]

    def symbol_target(self, sym):
        lead, tail = sym
        C = self.category
        return C.tgt[lead] if lead is not None else C.tgt[tail[0]]

    def symbols(self, x, y, degree):
        """All basis symbols of Hom^degree(x, y) in a fixed order."""
        C = self.category
        x, y = C._obj(x), C._obj(y)
        if degree == 0:
            return [(f, ()) for f in C.hom[(x, y)]]
        nobj = len(C.objects)
        out = []
        for mids in itertools.product(range(nobj), repeat=degree):
            # mids = (X1, ..., Xn); fi in Hom(X(i+1), Xi), fn in Hom(x, Xn)
            spaces = [C.hom[(mids[i + 1], mids[i])] for i in range(degree - 1)]
            spaces.append(C.hom[(x, mids[-1])])
            if not all(spaces):
                continue
            leads = list(C.hom[(mids[0], y)])
            if mids[0] == y:
                leads = [UNIT] + leads
            for lead in leads:
                for tail in itertools.product(*spaces):
                    out.append((lead, tail))
        return out

    def _check_degree(self, d):
        if d > self.max_degree:
            raise DegreeOverflow(f"degree {d} exceeds truncation {self.max_degree}")

    def element(self, sym, coeff=ONE):
        self._check_degree(len(sym[1]))
        if sym[0] is UNIT and not sym[1]:
            raise ValueError("degree 0 has no unit symbol")
        return OmegaElement(self.symbol_source(sym), self.symbol_target(sym), len(sym[1]),
                            {sym: Scalar.coerce(coeff)})

    def morphism(self, f, coeff=ONE):
        f = self.category._mor(f)
        return self.element((f, ()), coeff)

    def d_morphism(self, f, coeff=ONE):
        f = self.category._mor(f)
        return self.element((UNIT, (f,)), coeff)

    def from_vector(self, x, y, vec):
        """Degree 0 element from a coordinate dict of Hom(x, y)."""
        C = self.category
        return OmegaElement(C._obj(x), C._obj(y), 0, {(f, ()): c for f, c in vec.items()})

    # products

    def _lead_times(self, lead, f):
        """(lead) o f in C, lead possibly the unit: returns {morphism: coeff}."""
        if lead is UNIT:
            return {f: ONE}
        return self.category.comp.get((lead, f), {})

    def right_mul_morphism(self, sym, g):
        """Symbol times a degree 0 basis morphism g, as {symbol: coeff}."""
        key = (sym, g)
        hit = self._rmul.get(key)
        if hit is not None:
            return hit
        C = self.category
        lead, tail = sym
        i = len(tail)
        out = {}
        if i == 0:
            for h, c in self._lead_times(lead, g).items():
                _acc(out, (h, ()), c)
        else:
            for h, c in C.comp.get((tail[-1], g), {}).items():
                _acc(out, (lead, tail[:-1] + (h,)), c)
            for l in range(1, i):
                s = ONE if (i - l) % 2 == 0 else -ONE
                for h, c in C.comp.get((tail[l - 1], tail[l]), {}).items():
                    _acc(out, (lead, tail[:l - 1] + (h,) + tail[l + 1:] + (g,)), s * c)
            s = ONE if i % 2 == 0 else -ONE
            for h, c in self._lead_times(lead, tail[0]).items():
                _acc(out, (h, tail[1:] + (g,)), s * c)
        self._rmul[key] = out
        return out

    def mul_symbols(self, a, b):
        """a o b for basis symbols (b applied first)."""
        la, ta = a
        lb, tb = b
        if lb is UNIT:
            return {(la, ta + tb): ONE}
        out = {}
        for (l, t), c in self.right_mul_morphism(a, lb).items():
            _acc(out, (l, t + tb), c)
        return out

    def compose(self, a, b):
        """a o b for homogeneous elements; b: X -> Y, a: Y -> Z."""
        if a.source != b.target:
            raise NotComposable("Omega elements are not composable")
        deg = a.degree + b.degree
        self._check_degree(deg)
        out = {}
        for sa, ca in a.coords.items():
            for sb, cb in b.coords.items():
                cab = ca * cb
                for s, c in self.mul_symbols(sa, sb).items():
                    _acc(out, s, cab * c)
        return OmegaElement(b.source, a.target, deg, out)

    def differentiate(self, a):
        """d(lead df...) = d(lead) df... for a morphism lead, 0 for the unit."""
        self._check_degree(a.degree + 1)
        out = {}
        for (lead, tail), c in a.coords.items():
            if lead is not UNIT:
                _acc(out, (UNIT, (lead,) + tail), c)
        return OmegaElement(a.source, a.target, a.degree + 1, out)

    def unit(self, x):
        """The adjoined unit at x as an operator (not a degree 0 element).

        Returned as a callable multiplying by the unit, which is the identity.
        """
        return lambda e: e

    def append_d(self, a, f):
        """a o df for a basis morphism f (concatenation of d-words)."""
        self._check_degree(a.degree + 1)
        C = self.category
        if C.tgt[f] != a.source:
            raise NotComposable("cannot append df")
        return OmegaElement(C.src[f], a.target, a.degree + 1,
                            {(l, t + (f,)): c for (l, t), c in a.coords.items()})

    def times_morphism(self, a, vec):
        """a o v for a degree 0 coordinate vector v."""
        out = {}
        src = None
        for g, cg in vec.items():
            src = self.category.src[g]
            for sa, ca in a.coords.items():
                for s, c in self.right_mul_morphism(sa, g).items():
                    _acc(out, s, ca * cg * c)
        if src is None:
            return OmegaElement(a.source, a.target, a.degree, {})
        return OmegaElement(src, a.target, a.degree, out)


def omega_algebra(C, a, b=None, op="compose", max_degree=None):
    """Compose (op='compose') or differentiate (op='d') Omega elements."""
    if max_degree is None:
        max_degree = (a.degree + (b.degree if b is not None else 0)) + 1
    om = OmegaCategory(C, max_degree)
    if op == "compose":
        return om.compose(a, b)
    if op == "d":
        return om.differentiate(a)
    raise ValueError(f"unknown Omega operation {op!r}")


@dataclass
class GradedTrace:
    """Family of functionals T_X on Hom^n(X, X), stored per symbol."""

    category: object
    degree: int
    values: dict = field(default_factory=dict)

    def __call__(self, x, elem):
        if elem.degree != self.degree or elem.source != elem.target or elem.source != x:
            raise NotHomogeneous("trace applied outside Hom^n(X, X)")
        acc = ZERO
        for s, c in elem.coords.items():
            v = self.values.get(s)
            if v is not None:
                acc = acc + c * v
        return acc

    def evaluate(self, elem):
        acc = ZERO
        for s, c in elem.coords.items():
            v = self.values.get(s)
            if v is not None:
                acc = acc + c * v
        return acc


def cocycle_to_trace(phi, check=True):
    """T_X(lead df1..dfn) = phi(lead, f1, ..., fn); T vanishes on unit symbols."""
    C, n = phi.category, phi.level
    basis = nerve_basis(C, n)
    values = {}
    for j, v in phi.vec.items():
        t = basis.tuples[j]
        values[(t[0], t[1:])] = v
    T = GradedTrace(C, n, values)
    if check:
        bad = trace_axiom_violations(T, first_only=True)
        if bad:
            raise TraceAxiomViolated(f"cochain does not give a closed graded trace: {bad[0]}", bad[0])
    return T


def trace_to_cocycle(T, check=True):
    """Inverse of cocycle_to_trace; checks the axioms first when ``check``."""
    if check:
        bad = trace_axiom_violations(T, first_only=True)
        if bad:
            raise TraceAxiomViolated(f"not a closed graded trace: {bad[0]}", bad[0])
    C, n = T.category, T.degree
    basis = nerve_basis(C, n)
    vec = {}
    for (lead, tail), v in T.values.items():
        if lead is UNIT or not v:
            continue
        vec[basis.index[(lead,) + tail]] = v
    return Cochain(C, n, vec)


def trace_axiom_violations(T, first_only=False, om=None):
    """Probe closedness and the graded trace law on all basis pairs.

    Closedness probes T(d w) over basis symbols w of degree n-1, which
    amounts to T vanishing on unit-led symbols; the trace law probes
    T_X(g' g) = (-1)^(ij) T_Y(g g') for basis g in Hom^i(X, Y) and
    g' in Hom^j(Y, X) with i + j = n.
    """
    C, n = T.category, T.degree
    om = om or OmegaCategory(C, n)
    bad = []
    nobj = len(C.objects)
    if n >= 1:
        for x in range(nobj):
            for sym in om.symbols(x, x, n - 1) if n - 1 >= 0 else []:
                w = om.element(sym) if not (sym[0] is UNIT and not sym[1]) else None
                if w is None:
                    continue
                v = T.evaluate(om.differentiate(w))
                if v:
                    bad.append(("closed", sym))
                    if first_only:
                        return bad
    sym_cache = {}

    def syms(a, b, d):
        key = (a, b, d)
        if key not in sym_cache:
            sym_cache[key] = om.symbols(a, b, d)
        return sym_cache[key]

    for x in range(nobj):
        for y in range(nobj):
            for i in range(n + 1):
                j = n - i
                if i > j or (i == j and y < x):
                    continue  # the law is symmetric under swapping the roles
                sign = ONE if (i * j) % 2 == 0 else -ONE
                for g in syms(x, y, i):
                    for gp in syms(y, x, j):
                        lhs = _trace_product(T, om, gp, g)
                        rhs = _trace_product(T, om, g, gp)
                        if lhs != sign * rhs:
                            bad.append(("graded", (gp, g)))
                            if first_only:
                                return bad
    return bad


def _trace_product(T, om, a, b):
    acc = ZERO
    for s, c in om.mul_symbols(a, b).items():
        v = T.values.get(s)
        if v is not None:
            acc = acc + c * v
    return acc


def trace_passes_axioms(T):
    return not trace_axiom_violations(T, first_only=True)


class OmegaCycle:
    """Omega(C) with a closed graded trace, viewed as a cycle over C."""

    def __init__(self, T):
        self.category = T.category
        self.trace = T
        self.omega = OmegaCategory(T.category, T.degree)

    def character_value(self, x):
        """T(rho(f0) d rho(f1) ... d rho(fn)) for a nerve tuple x."""
        om = self.omega
        w = om.morphism(x[0])
        for f in x[1:]:
            w = om.compose(w, om.differentiate(om.morphism(f)))
        return self.trace.evaluate(w)


def cycle_character(cycle, n=None):
    """Character cochain x -> T(rho(f0) d rho(f1) ... d rho(fn)) of a cycle.

    ``cycle`` needs ``category``, a degree (``trace.degree`` or ``n``) and a
    ``character_value(tuple)`` method.
    """
    if n is None:
        n = cycle.trace.degree
    C = cycle.category
    return Cochain.from_function(C, n, cycle.character_value)
