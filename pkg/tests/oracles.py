"""Independent reference computations used by the tests.

Plain Fraction arithmetic and straightforward loops, sharing no code with the
package beyond reading a category's structure constants.
"""

import itertools
from fractions import Fraction


class Q2:
    """a + b i with Fraction parts."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a, self.b = Fraction(a), Fraction(b)

    def __add__(self, o):
        o = _q(o)
        return Q2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = _q(o)
        return Q2(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return _q(o) - self

    def __neg__(self):
        return Q2(-self.a, -self.b)

    def __mul__(self, o):
        o = _q(o)
        return Q2(self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _q(o)
        n = o.a * o.a + o.b * o.b
        return self * Q2(o.a / n, -o.b / n)

    def __eq__(self, o):
        o = _q(o)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))


def _q(x):
    return x if isinstance(x, Q2) else Q2(x)


def _fraction(z):
    return Q2(Fraction(int(z.re_num), int(z.re_den)), Fraction(int(z.im_num), int(z.im_den)))


def structure_constants(C):
    """(d, table) for a one-object category: table[(g, f)] = {h: Q2} for g o f."""
    assert len(C.objects) == 1
    d = len(C.morphisms)
    table = {}
    for (g, f), vec in C.comp.items():
        table[(g, f)] = {h: _fraction(c) for h, c in vec.items()}
    return d, table


def rref_rank(rows, ncols):
    rows = [list(r) for r in rows]
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        rows[rank] = [x / p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                c = rows[i][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def kernel(rows, ncols):
    """Basis of {v : rows v = 0}."""
    rows = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        rows[rank] = [x / p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                c = rows[i][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [Q2(0)] * ncols
        v[fc] = Q2(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        out.append(v)
    return out


def _mul(table, g, f):
    return table.get((g, f), {})


def coboundary_rows(d, table, n):
    """Matrix of b: C^n -> C^(n+1) with rows indexed by (n+2)-tuples.

    (b phi)(a0, ..., a(n+1)) = sum_i (-1)^i phi(.., a_i a_(i+1), ..)
                               + (-1)^(n+1) phi(a_(n+1) a_0, a_1, ..., a_n)
    """
    src = list(itertools.product(range(d), repeat=n + 1))
    pos = {t: k for k, t in enumerate(src)}
    rows = []
    for t in itertools.product(range(d), repeat=n + 2):
        row = [Q2(0)] * len(src)
        for i in range(n + 1):
            for h, c in _mul(table, t[i], t[i + 1]).items():
                key = t[:i] + (h,) + t[i + 2:]
                row[pos[key]] += c if i % 2 == 0 else -c
        for h, c in _mul(table, t[n + 1], t[0]).items():
            key = (h,) + t[1:n + 1]
            row[pos[key]] += c if (n + 1) % 2 == 0 else -c
        rows.append(row)
    return rows


def lambda_rows(d, n):
    """(1 - lambda) with (lambda phi)(a0..an) = (-1)^n phi(an, a0, .., a(n-1))."""
    src = list(itertools.product(range(d), repeat=n + 1))
    pos = {t: k for k, t in enumerate(src)}
    sign = 1 if n % 2 == 0 else -1
    rows = []
    for t in src:
        row = [Q2(0)] * len(src)
        row[pos[t]] += 1
        row[pos[(t[-1],) + t[:-1]]] -= sign
        rows.append(row)
    return rows


def _apply(rows, v):
    return [sum(a * b for a, b in zip(r, v)) for r in rows]


def cyclic_dims(C, max_degree):
    """dim HC^n_lambda of a one-object category by Fraction elimination."""
    d, table = structure_constants(C)
    inv = [kernel(lambda_rows(d, n), d ** (n + 1)) for n in range(max_degree + 1)]
    dims = []
    for n in range(max_degree + 1):
        b = coboundary_rows(d, table, n)
        images = [_apply(b, v) for v in inv[n]]
        # cocycles: combinations of inv[n] killed by b
        z = len(inv[n]) - rref_rank(images, d ** (n + 2)) if inv[n] else 0
        if n == 0:
            dims.append(z)
            continue
        bp = coboundary_rows(d, table, n - 1)
        prev = [_apply(bp, v) for v in inv[n - 1]]
        dims.append(z - (rref_rank(prev, d ** (n + 1)) if prev else 0))
    return dims


def nerve_count(C, n):
    """Brute count of cyclically composable (n+1)-tuples of basis morphisms."""
    count = 0
    k = len(C.morphisms)
    for t in itertools.product(range(k), repeat=n + 1):
        if all(C.src[t[i]] == C.tgt[t[(i + 1) % (n + 1)]] for i in range(n + 1)):
            count += 1
    return count


def gauss_rank_fraction(dense):
    """Rank of a dense matrix of Gaussian rationals given as (re, im) Fraction pairs."""
    rows = [[complex_fraction(x) for x in r] for r in dense]
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != (0, 0)), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = inverse(rows[rank][col])
        rows[rank] = [mul(x, p) for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != (0, 0):
                c = rows[i][col]
                rows[i] = [sub(a, mul(c, b)) for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def complex_fraction(z):
    return (Fraction(int(z.re_num), int(z.re_den)), Fraction(int(z.im_num), int(z.im_den)))


def mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def inverse(a):
    n = a[0] * a[0] + a[1] * a[1]
    return (a[0] / n, -a[1] / n)
