"""Dense exact linear algebra over Q or Q(w).

Matrices are lists of rows.  Elimination pivots on the first nonzero entry
of each column; with exact arithmetic there is nothing to gain from partial
pivoting.
"""

from __future__ import annotations

from typing import Sequence

from .exactfield import Rat, render

Vector = list
Matrix = list  # list of rows


class StabilityError(ArithmeticError):
    """An operator does not map a subspace into itself."""


def mat(rows: Sequence[Sequence]) -> Matrix:
    """Copy ``rows`` into a fresh rectangular matrix."""
    out = [list(r) for r in rows]
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def identity(n: int) -> Matrix:
    return [[Rat(1) if i == j else Rat(0) for j in range(n)] for i in range(n)]


def matvec(m: Matrix, v: Sequence) -> Vector:
    out = []
    for row in m:
        acc = Rat(0)
        for a, b in zip(row, v):
            if a != 0 and b != 0:
                acc = acc + a * b
        out.append(acc)
    return out


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def rref(m: Matrix, ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns.

    Only the first ``ncols`` columns are eligible as pivots (augmented
    systems); row operations always act on full rows.
    """
    a = mat(m)
    nrows, width = shape(a)
    if ncols is None:
        ncols = width
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        row = a[r]
        inv = 1 / row[col]
        if inv != 1:
            a[r] = row = [x * inv if x != 0 else x for x in row]
        for i in range(nrows):
            if i != r:
                f = a[i][col]
                if f != 0:
                    other = a[i]
                    a[i] = [x - f * y if y != 0 else x for x, y in zip(other, row)]
        pivots.append(col)
        r += 1
    return a, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of the right kernel {v : m v = 0}.

    The basis is the canonical one: each vector has a 1 in its own free
    column and 0 in the other free columns.
    """
    if not m:
        if ncols is None:
            raise ValueError("column count of an empty matrix is ambiguous")
        n = ncols
        r, pivots = [], []
    else:
        n = len(m[0])
        r, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [Rat(0)] * n
        v[free] = Rat(1)
        for row, pc in zip(r, pivots):
            if row[free] != 0:
                v[pc] = -row[free]
        basis.append(v)
    return basis


def span_coordinates(v: Sequence, basis: Sequence[Sequence]) -> list | None:
    """Coefficients c with sum c_i basis_i = v, or None if v is outside the span.

    ``basis`` must be linearly independent.
    """
    if not basis:
        return [] if all(x == 0 for x in v) else None
    k = len(basis)
    # columns = basis vectors, augmented by v
    aug = [[basis[j][i] for j in range(k)] + [v[i]] for i in range(len(v))]
    r, pivots = rref(aug, ncols=k)
    if len(pivots) != k:
        raise ValueError("basis vectors are linearly dependent")
    for row in r[k:]:
        if row[k] != 0:
            return None
    coords = [Rat(0)] * k
    for row, pc in zip(r, pivots):
        coords[pc] = row[k]
    return coords


def in_span(v: Sequence, basis: Sequence[Sequence]) -> bool:
    """True iff ``v`` is a linear combination of ``basis`` (any spanning set)."""
    if not basis:
        return all(x == 0 for x in v)
    return rank(list(basis) + [list(v)]) == rank(basis)


def operator_trace_on_subspace(op: Matrix, basis: Sequence[Sequence]):
    """Trace of ``op`` restricted to span(basis).

    Solves ``op b_i = sum_j c_ij b_j`` for every basis vector and returns
    ``sum_i c_ii``.  Raises :class:`StabilityError` if some ``op b_i``
    leaves the span.
    """
    k = len(basis)
    if k == 0:
        return Rat(0)
    nrows = len(basis[0])
    # one elimination for all right-hand sides
    images = [matvec(op, b) for b in basis]
    aug = [[basis[j][i] for j in range(k)] + [images[c][i] for c in range(k)] for i in range(nrows)]
    r, pivots = rref(aug, ncols=k)
    if len(pivots) != k:
        raise ValueError("basis vectors are linearly dependent")
    for row in r[k:]:
        if any(x != 0 for x in row[k:]):
            raise StabilityError("operator does not preserve the subspace")
    trace = Rat(0)
    for row, pc in zip(r, pivots):
        # row pc holds coordinate pc of every image; image pc contributes c_{pc,pc}
        trace = trace + row[k + pc]
    return trace


def determinant(m: Matrix):
    """Determinant by fraction-preserving elimination."""
    a = mat(m)
    n, ncols = shape(a)
    if n != ncols:
        raise ValueError("determinant of a non-square matrix")
    det = Rat(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Rat(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        for i in range(col + 1, n):
            f = a[i][col] / p
            if f != 0:
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det


def render_matrix(m: Matrix) -> str:
    """Debug dump, one bracketed row per line."""
    return "\n".join("[" + ", ".join(render(x) for x in row) + "]" for row in m)
