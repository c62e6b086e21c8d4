"""Cyclic and Hochschild cohomology of the cyclic nerve, with exact witnesses.

A cochain complex is handled through a basis matrix P_n per level (columns
spanning the subcomplex inside the full cochain space) and the ambient
differential b_n.  Cyclic cohomology uses P_n = basis of Ker(1 - lambda).
"""

from dataclasses import dataclass, field

from .errors import DimensionMismatch, NotACoboundary, NotACocycle, NotLambdaInvariant
from .exact_linalg import SparseMatrix, hstack, independent_columns, kernel_basis, rank, solve, vec_dot
from .nerve import (Cochain, hochschild_b, is_lambda_invariant, lambda_invariant_basis, nerve_basis,
                    one_minus_lambda)


@dataclass
class CohomologyReport:
    kind: str
    dims: list
    representatives: list = field(default_factory=list)
    cocycle_dims: list = field(default_factory=list)
    coboundary_dims: list = field(default_factory=list)


def subcomplex_level(P_prev, P_n, b_prev, b_n):
    """Cocycles, coboundary rank and class representatives at one level.

    Returns (cocycle vectors, dim B, representative vectors) with vectors in
    the ambient coordinates of level n.
    """
    zc = kernel_basis(b_n @ P_n)
    Z = [P_n.apply(z) for z in zc]
    if P_prev is None or P_prev.ncols == 0:
        imgs = SparseMatrix(P_n.nrows, 0)
    else:
        imgs = b_prev @ P_prev
    dimB = rank(imgs) if imgs.ncols else 0
    if not Z:
        return Z, dimB, []
    M = hstack([imgs, SparseMatrix.from_columns(P_n.nrows, Z)])
    reps = [Z[j - imgs.ncols] for j in independent_columns(M) if j >= imgs.ncols]
    return Z, dimB, reps


def _cyclic_data(C, n):
    P_n = lambda_invariant_basis(C, n)
    b_n = hochschild_b(C, n)
    if n == 0:
        return None, P_n, None, b_n
    return lambda_invariant_basis(C, n - 1), P_n, hochschild_b(C, n - 1), b_n


def _hochschild_data(C, n):
    size = len(nerve_basis(C, n))
    P_n = SparseMatrix.identity(size)
    b_n = hochschild_b(C, n)
    if n == 0:
        return None, P_n, None, b_n
    return SparseMatrix.identity(len(nerve_basis(C, n - 1))), P_n, hochschild_b(C, n - 1), b_n


def cyclic_cohomology(C, max_degree, kind="cyclic"):
    """Dimensions and representatives of HC^n (or HH^n) for n <= max_degree."""
    data = _cyclic_data if kind == "cyclic" else _hochschild_data
    if kind not in ("cyclic", "hochschild"):
        raise ValueError(f"unknown cohomology kind {kind!r}")
    report = CohomologyReport(kind, [])
    for n in range(max_degree + 1):
        Z, dimB, reps = subcomplex_level(*data(C, n))
        report.dims.append(len(Z) - dimB)
        report.cocycle_dims.append(len(Z))
        report.coboundary_dims.append(dimB)
        report.representatives.append([Cochain(C, n, v) for v in reps])
    return report


def hochschild_cohomology(C, max_degree):
    return cyclic_cohomology(C, max_degree, kind="hochschild")


def cohomology_dims(C, max_degree, kind="cyclic"):
    return cyclic_cohomology(C, max_degree, kind).dims


def is_cocycle(phi):
    return (hochschild_b(phi.category, phi.level).apply(phi.vec)) == {}


def is_cyclic_cocycle(phi):
    return is_lambda_invariant(phi) and is_cocycle(phi)


def require_cyclic_cocycle(phi):
    if not is_lambda_invariant(phi):
        raise NotLambdaInvariant(f"level {phi.level} cochain is not lambda-invariant")
    if not is_cocycle(phi):
        raise NotACocycle(f"level {phi.level} cochain is not a Hochschild cocycle")


def _non_membership(M, target, n):
    """A functional killing the columns of M but not ``target``."""
    for w in kernel_basis(M.T):
        p = vec_dot(w, target)
        if p:
            return w, p
    return None, None


def solve_in_span(P_prev, b_prev, target, level):
    """psi with b(P_prev y) = target; returns P_prev y or raises NotACoboundary."""
    M = b_prev @ P_prev
    y = solve(M, target)
    if y is None:
        w, p = _non_membership(M, target, level)
        raise NotACoboundary(f"level {level} cochain is not a coboundary of the subcomplex", w, p)
    return P_prev.apply(y)


def coboundary_witness(phi):
    """lambda-invariant psi with b psi = phi, or NotACoboundary."""
    C, n = phi.category, phi.level
    if not is_lambda_invariant(phi):
        raise NotLambdaInvariant(f"level {n} cochain is not lambda-invariant")
    if n == 0:
        if phi.is_zero():
            return None
        w = {k: v.conj() for k, v in phi.vec.items()}
        raise NotACoboundary("nonzero level 0 cochain is never a coboundary", w, vec_dot(w, phi.vec))
    psi = solve_in_span(lambda_invariant_basis(C, n - 1), hochschild_b(C, n - 1), phi.vec, n)
    return Cochain(C, n - 1, psi)


def hochschild_coboundary_witness(phi):
    C, n = phi.category, phi.level
    if n == 0:
        if phi.is_zero():
            return None
        raise NotACoboundary("nonzero level 0 cochain is never a coboundary")
    ident = SparseMatrix.identity(len(nerve_basis(C, n - 1)))
    return Cochain(C, n - 1, solve_in_span(ident, hochschild_b(C, n - 1), phi.vec, n))


def verify_witness(phi, psi, cyclic=True):
    """Check b psi = phi exactly (and lambda-invariance of psi when cyclic)."""
    if psi is None:
        return phi.is_zero()
    if psi.level != phi.level - 1:
        raise DimensionMismatch("witness has the wrong level")
    if cyclic and not is_lambda_invariant(psi):
        return False
    return hochschild_b(psi.category, psi.level).apply(psi.vec) == phi.vec


def class_equal(phi1, phi2):
    """Compare classes of two cyclic cocycles; returns (equal, witness or certificate)."""
    for phi in (phi1, phi2):
        require_cyclic_cocycle(phi)
    diff = phi1 - phi2
    try:
        return True, coboundary_witness(diff)
    except NotACoboundary as exc:
        return False, exc


def cyclic_cocycle_basis(C, n):
    """Basis of Z^n_lambda as cochains."""
    Z, _, _ = subcomplex_level(*_cyclic_data(C, n))
    return [Cochain(C, n, v) for v in Z]


def lambda_projection_check(C, n):
    """Orbit basis agrees with the kernel of 1 - lambda (dimension and span)."""
    P = lambda_invariant_basis(C, n)
    K = kernel_basis(one_minus_lambda(C, n))
    if P.ncols != len(K):
        return False
    if P.ncols == 0:
        return True
    both = hstack([P, SparseMatrix.from_columns(P.nrows, K)])
    return rank(both) == P.ncols == rank(P)
