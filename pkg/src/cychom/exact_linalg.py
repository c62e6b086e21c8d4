"""Exact arithmetic over the Gaussian rationals Q(i) and sparse linear algebra.

Scalars carry two ``gmpy2.mpq`` components.  Matrices are stored as a dict of
rows, each row a dict ``col -> Scalar`` holding only nonzero entries.  Rank,
kernel and solve share one fraction-free elimination over the Gaussian
integers with bit-length pivoting and a fixed column order, so results are
deterministic.
"""

import re

import gmpy2
from gmpy2 import mpq, mpz

from .errors import DimensionMismatch, DivisionByZero, IndexOutOfRange, ParseError

_ZERO = mpq(0)
_ONE = mpq(1)


def _as_mpq(x):
    if isinstance(x, str):
        return mpq(x)
    return mpq(x)


class Scalar:
    """Element re + im*i of Q(i).  Treated as immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is type(_ZERO) else _as_mpq(re)
        self.im = im if type(im) is type(_ZERO) else _as_mpq(im)

    @classmethod
    def _raw(cls, re, im):
        s = cls.__new__(cls)
        s.re = re
        s.im = im
        return s

    @staticmethod
    def coerce(x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        if isinstance(x, float):
            raise TypeError("floats are not exact")
        return Scalar(x)

    @property
    def re_num(self):
        return int(self.re.numerator)

    @property
    def re_den(self):
        return int(self.re.denominator)

    @property
    def im_num(self):
        return int(self.im.numerator)

    @property
    def im_den(self):
        return int(self.im.denominator)

    def is_zero(self):
        return not self.re and not self.im

    def is_real(self):
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        if type(other) is not Scalar:
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return Scalar._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not Scalar:
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return Scalar._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __mul__(self, other):
        if type(other) is not Scalar:
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Scalar._raw(a * c, _ZERO)
        return Scalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise DivisionByZero("division by zero in Q(i)")
        return Scalar._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = Scalar.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar._raw(_ONE, _ZERO)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self):
        return Scalar._raw(self.re, -self.im)

    def __eq__(self, other):
        if type(other) is not Scalar:
            try:
                other = Scalar.coerce(other)
            except (TypeError, ParseError):
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def to_complex(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar('{format_scalar(self)}')"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)

_LITERAL = re.compile(r"^(-?\d+)(?:/(\d+))?(?:([+-])(\d+)(?:/(\d+))?i)?$")
_PURE_IMAG = re.compile(r"^([+-]?)(\d*)(?:/(\d+))?i$")


def _ratio(num, den, where):
    d = int(den) if den is not None else 1
    if d == 0:
        raise ParseError(f"zero denominator in scalar literal {where!r}")
    return mpq(int(num), d)


def parse_scalar(text):
    """Parse ``<int>[/<uint>][(+|-)<int>[/<uint>]i]``; also accepts ``i``, ``-2i``."""
    if not isinstance(text, str):
        raise ParseError(f"scalar literal must be a string, got {type(text).__name__}")
    s = text.strip()
    m = _LITERAL.match(s)
    if m:
        re_part = _ratio(m.group(1), m.group(2), text)
        im_part = _ZERO
        if m.group(3):
            im_part = _ratio(m.group(4), m.group(5), text)
            if m.group(3) == "-":
                im_part = -im_part
        return Scalar._raw(re_part, im_part)
    m = _PURE_IMAG.match(s)
    if m:
        im_part = _ratio(m.group(2) or "1", m.group(3), text)
        if m.group(1) == "-":
            im_part = -im_part
        return Scalar._raw(_ZERO, im_part)
    raise ParseError(f"malformed scalar literal {text!r}")


def _fmt_q(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(z):
    """Canonical literal: denominators omitted when 1, ``0+1i`` style imaginary part."""
    if not z.im:
        return _fmt_q(z.re)
    sign = "-" if z.im < 0 else "+"
    return f"{_fmt_q(z.re)}{sign}{_fmt_q(abs(z.im))}i"


def field_arithmetic(a, b, op):
    """Apply ``op`` in {'+','-','*','/'} to two scalars or literals."""
    a = Scalar.coerce(a)
    b = Scalar.coerce(b)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise ValueError(f"unknown field operation {op!r}")


class SparseMatrix:
    """Sparse exact matrix; ``rows[i][j]`` holds nonzero entries only."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else {}

    @classmethod
    def from_entries(cls, nrows, ncols, entries):
        """Build from ``(i, j, value)`` triples; a repeated position is an error."""
        rows = {}
        for i, j, v in entries:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexOutOfRange(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            r = rows.setdefault(i, {})
            if j in r:
                raise ValueError(f"duplicate entry at ({i}, {j})")
            v = Scalar.coerce(v)
            if v:
                r[j] = v
        return cls(nrows, ncols, {i: r for i, r in rows.items() if r})

    @classmethod
    def from_dense(cls, data, ncols=None):
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        rows = {}
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise DimensionMismatch("ragged dense matrix")
            r = {}
            for j, v in enumerate(row):
                v = Scalar.coerce(v)
                if v:
                    r[j] = v
            if r:
                rows[i] = r
        return cls(nrows, ncols, rows)

    @classmethod
    def identity(cls, n, scale=ONE):
        scale = Scalar.coerce(scale)
        if not scale:
            return cls(n, n)
        return cls(n, n, {i: {i: scale} for i in range(n)})

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def from_columns(cls, nrows, columns):
        rows = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows.setdefault(i, {})[j] = v
        return cls(nrows, len(columns), rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexOutOfRange(f"index ({i}, {j}) outside {self.nrows}x{self.ncols}")
        return self.rows.get(i, {}).get(j, ZERO)

    def nnz(self):
        return sum(len(r) for r in self.rows.values())

    def entries(self):
        for i in sorted(self.rows):
            r = self.rows[i]
            for j in sorted(r):
                yield i, j, r[j]

    def is_zero(self):
        return not self.rows

    def to_dense(self):
        out = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for i, r in self.rows.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def to_numpy(self):
        import numpy as np

        a = np.zeros((self.nrows, self.ncols), dtype=complex)
        for i, r in self.rows.items():
            for j, v in r.items():
                a[i, j] = v.to_complex()
        return a

    def row(self, i):
        return dict(self.rows.get(i, {}))

    def columns(self):
        cols = [dict() for _ in range(self.ncols)]
        for i, r in self.rows.items():
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def column(self, j):
        return {i: r[j] for i, r in self.rows.items() if j in r}

    @property
    def T(self):
        rows = {}
        for i, r in self.rows.items():
            for j, v in r.items():
                rows.setdefault(j, {})[i] = v
        return SparseMatrix(self.ncols, self.nrows, rows)

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            acc = rows.setdefault(i, {})
            for j, v in r.items():
                w = acc.get(j)
                w = (v if sign > 0 else -v) if w is None else (w + v if sign > 0 else w - v)
                if w:
                    acc[j] = w
                else:
                    acc.pop(j, None)
            if not acc:
                del rows[i]
        return SparseMatrix(self.nrows, self.ncols, rows)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return SparseMatrix(self.nrows, self.ncols,
                            {i: {j: -v for j, v in r.items()} for i, r in self.rows.items()})

    def scale(self, c):
        c = Scalar.coerce(c)
        if not c:
            return SparseMatrix(self.nrows, self.ncols)
        return SparseMatrix(self.nrows, self.ncols,
                            {i: {j: c * v for j, v in r.items()} for i, r in self.rows.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        orows = other.rows
        rows = {}
        for i, r in self.rows.items():
            acc = {}
            for k, a in r.items():
                ok = orows.get(k)
                if not ok:
                    continue
                for j, b in ok.items():
                    w = acc.get(j)
                    acc[j] = a * b if w is None else w + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                rows[i] = acc
        return SparseMatrix(self.nrows, other.ncols, rows)

    def apply(self, vec):
        """Matrix times sparse vector (dict index -> Scalar)."""
        out = {}
        for i, r in self.rows.items():
            acc = ZERO
            hit = False
            for j, a in r.items():
                x = vec.get(j)
                if x is not None:
                    acc = acc + a * x
                    hit = True
            if hit and acc:
                out[i] = acc
        return out

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return None  # mutable container semantics

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def select_columns(self, cols):
        pos = {c: k for k, c in enumerate(cols)}
        rows = {}
        for i, r in self.rows.items():
            nr = {pos[j]: v for j, v in r.items() if j in pos}
            if nr:
                rows[i] = nr
        return SparseMatrix(self.nrows, len(cols), rows)

    def select_rows(self, rows_idx):
        rows = {}
        for k, i in enumerate(rows_idx):
            r = self.rows.get(i)
            if r:
                rows[k] = dict(r)
        return SparseMatrix(len(rows_idx), self.ncols, rows)


def hstack(mats):
    nrows = mats[0].nrows
    rows = {}
    off = 0
    for m in mats:
        if m.nrows != nrows:
            raise DimensionMismatch("hstack row counts differ")
        for i, r in m.rows.items():
            acc = rows.setdefault(i, {})
            for j, v in r.items():
                acc[j + off] = v
        off += m.ncols
    return SparseMatrix(nrows, off, rows)


def vstack(mats):
    ncols = mats[0].ncols
    rows = {}
    off = 0
    for m in mats:
        if m.ncols != ncols:
            raise DimensionMismatch("vstack column counts differ")
        for i, r in m.rows.items():
            rows[i + off] = dict(r)
        off += m.nrows
    return SparseMatrix(off, ncols, rows)


# vectors are plain dicts index -> Scalar

def vec_add(u, v, c=ONE):
    """Return u + c*v."""
    out = dict(u)
    for k, x in v.items():
        w = out.get(k)
        y = c * x
        w = y if w is None else w + y
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def vec_scale(u, c):
    c = Scalar.coerce(c)
    if not c:
        return {}
    return {k: c * x for k, x in u.items()}


def vec_dot(u, v):
    if len(u) > len(v):
        u, v = v, u
    acc = ZERO
    for k, x in u.items():
        y = v.get(k)
        if y is not None:
            acc = acc + x * y
    return acc


# fraction-free elimination over Z[i]

def _gi_row(row):
    den = mpz(1)
    for v in row.values():
        den = gmpy2.lcm(den, v.re.denominator)
        den = gmpy2.lcm(den, v.im.denominator)
    out = {}
    for j, v in row.items():
        a = v.re * den
        b = v.im * den
        out[j] = (a.numerator, b.numerator)
    return out


def _bits(z):
    return max(z[0].bit_length(), z[1].bit_length())


def _reduce_content(row):
    g = mpz(0)
    for a, b in row.values():
        g = gmpy2.gcd(g, a)
        g = gmpy2.gcd(g, b)
        if g == 1:
            return row
    if g > 1:
        return {j: (a // g, b // g) for j, (a, b) in row.items()}
    return row


def _combine_rows(r, s, col):
    """Return p*r - a*s where p = s[col], a = r[col]; r[col] cancels."""
    pr, pi = s[col]
    ar, ai = r[col]
    out = {}
    for j, (x, y) in r.items():
        if j == col:
            continue
        out[j] = (pr * x - pi * y, pr * y + pi * x)
    for j, (x, y) in s.items():
        if j == col:
            continue
        tx, ty = ar * x - ai * y, ar * y + ai * x
        w = out.get(j)
        if w is None:
            out[j] = (-tx, -ty)
        else:
            out[j] = (w[0] - tx, w[1] - ty)
    return {j: w for j, w in out.items() if w[0] or w[1]}


def _gi_div(num, den):
    """Exact quotient of Gaussian integers as a Scalar."""
    a, b = num
    c, d = den
    n = c * c + d * d
    return Scalar._raw(mpq(a * c + b * d, n), mpq(b * c - a * d, n))


class Echelon:
    """Row echelon data of a matrix, optionally augmented with extra columns.

    Columns ``< npiv`` are eligible as pivots, processed in increasing order.
    Extra columns (``>= npiv``) are carried along, as right hand sides.
    """

    def __init__(self, rows, npiv, reduced=False):
        active = {}
        colidx = {}
        for k, r in enumerate(rows):
            if r:
                g = _reduce_content(_gi_row(r))
                active[k] = g
                for j in g:
                    colidx.setdefault(j, set()).add(k)
        pivots = []
        for c in range(npiv):
            cand = colidx.get(c)
            if not cand:
                continue
            best = min(cand, key=lambda k: (_bits(active[k][c]), len(active[k]), k))
            prow = active.pop(best)
            for j in prow:
                colidx[j].discard(best)
            for k in sorted(cand):
                if k == best:
                    continue
                old = active[k]
                new = _reduce_content(_combine_rows(old, prow, c))
                for j in old:
                    if j not in new:
                        colidx[j].discard(k)
                for j in new:
                    if j not in old:
                        colidx.setdefault(j, set()).add(k)
                if new:
                    active[k] = new
                else:
                    del active[k]
                    for j in new:
                        colidx[j].discard(k)
            pivots.append((c, prow))
        self.npiv = npiv
        self.pivots = pivots
        self.leftover = [active[k] for k in sorted(active)]
        self.reduced = False
        if reduced:
            self.reduce()

    @property
    def rank(self):
        return len(self.pivots)

    @property
    def pivot_columns(self):
        return [c for c, _ in self.pivots]

    def reduce(self):
        """Back-eliminate so each pivot column holds a single nonzero entry."""
        if self.reduced:
            return
        rows = [r for _, r in self.pivots]
        cols = [c for c, _ in self.pivots]
        holders = {}
        for k, r in enumerate(rows):
            for j in r:
                holders.setdefault(j, set()).add(k)
        for k in range(len(rows) - 1, -1, -1):
            c = cols[k]
            for t in sorted(holders.get(c, ())):
                if t == k:
                    continue
                old = rows[t]
                new = _reduce_content(_combine_rows(old, rows[k], c))
                for j in old:
                    if j not in new:
                        holders[j].discard(t)
                for j in new:
                    if j not in old:
                        holders.setdefault(j, set()).add(t)
                rows[t] = new
        self.pivots = list(zip(cols, rows))
        self.reduced = True

    def consistent(self, col):
        return all(col not in r for r in self.leftover)

    def solution(self, col):
        """Particular solution for the augmented column ``col`` (free vars 0)."""
        self.reduce()
        x = {}
        for c, r in self.pivots:
            v = r.get(col)
            if v is not None:
                x[c] = _gi_div(v, r[c])
        return x

    def kernel(self):
        """Kernel basis: one vector per free column, 1 at that column."""
        self.reduce()
        piv = set(self.pivot_columns)
        free = [j for j in range(self.npiv) if j not in piv]
        fpos = {f: k for k, f in enumerate(free)}
        vecs = [{f: ONE} for f in free]
        for c, r in self.pivots:
            p = r[c]
            for j, v in r.items():
                k = fpos.get(j)
                if k is not None:
                    vecs[k][c] = -_gi_div(v, p)
        return vecs


def rank(A):
    return Echelon([A.rows.get(i, {}) for i in range(A.nrows)], A.ncols).rank


def kernel_basis(A):
    """Kernel of A as a list of sparse column vectors."""
    return Echelon([A.rows.get(i, {}) for i in range(A.nrows)], A.ncols).kernel()


def kernel_matrix(A):
    return SparseMatrix.from_columns(A.ncols, kernel_basis(A))


def _augmented_rows(A, rhs_list):
    rows = [dict(A.rows.get(i, {})) for i in range(A.nrows)]
    for t, b in enumerate(rhs_list):
        col = A.ncols + t
        for i, v in b.items():
            if not (0 <= i < A.nrows):
                raise IndexOutOfRange(f"right hand side index {i} outside {A.nrows}")
            if v:
                rows[i][col] = v
    return rows


def solve_many(A, rhs_list):
    """Solve A x = b for each b; returns a list of solutions or None entries."""
    ech = Echelon(_augmented_rows(A, rhs_list), A.ncols)
    out = []
    for t in range(len(rhs_list)):
        col = A.ncols + t
        out.append(ech.solution(col) if ech.consistent(col) else None)
    return out


def solve(A, b):
    """Some x with A x = b, or None when the system is inconsistent."""
    return solve_many(A, [b])[0]


def independent_columns(A):
    """Indices of the lexicographically first maximal independent column set."""
    return Echelon([A.rows.get(i, {}) for i in range(A.nrows)], A.ncols).pivot_columns


def linear_solve_rank(A, mode, b=None):
    """Dispatch helper: mode is 'rank', 'kernel' or 'solve'."""
    if mode == "rank":
        return rank(A)
    if mode == "kernel":
        return kernel_basis(A)
    if mode == "solve":
        if b is None:
            raise ValueError("solve mode needs a right hand side")
        if isinstance(b, SparseMatrix):
            if b.ncols != 1:
                raise DimensionMismatch("right hand side must be a single column")
            b = b.column(0)
        return solve(A, b)
    raise ValueError(f"unknown mode {mode!r}")


def as_vector(values):
    """Dense list of scalars/literals to a sparse vector."""
    out = {}
    for i, v in enumerate(values):
        v = Scalar.coerce(v)
        if v:
            out[i] = v
    return out
