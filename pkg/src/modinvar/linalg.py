"""Row reduction over GF(q) and over the prime subfield.

Pure-Python routines work for any FieldSpec; a numpy fast path handles the
prime-field bulk jobs (transfer image row spaces, invariant dimensions).
Pivoting is deterministic: scan columns left to right, take the first
unprocessed row with a nonzero entry.
"""

from __future__ import annotations

import numpy as np

from modinvar.gfq import FieldSpec


def rref_field(rows, field: FieldSpec):
    """Reduced row echelon form over a FieldSpec.

    rows: list of lists of element indices.  Returns (reduced_rows, pivots)
    with zero rows dropped.
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.inv(rows[rank][col])
        if inv != 1:
            rows[rank] = [field.mul(inv, a) for a in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                c = rows[r][col]
                rr, pr = rows[r], rows[rank]
                rows[r] = [field.sub(a, field.mul(c, b)) for a, b in zip(rr, pr)]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return [r for r in rows[:rank]], pivots


def rank_field(rows, field: FieldSpec) -> int:
    reduced, _ = rref_field(rows, field)
    return len(reduced)


def reduce_vector(vector, reduced_rows, pivots, field: FieldSpec):
    """Remainder of vector modulo the row space of an rref basis."""
    v = list(vector)
    for row, col in zip(reduced_rows, pivots):
        c = v[col]
        if c:
            v = [field.sub(a, field.mul(c, b)) for a, b in zip(v, row)]
    return v


def in_row_space(vector, reduced_rows, pivots, field: FieldSpec) -> bool:
    return not any(reduce_vector(vector, reduced_rows, pivots, field))


def nullspace_field(matrix, field: FieldSpec):
    """Basis of {v | M v = 0} as lists of element indices."""
    rows = [list(r) for r in matrix]
    if not rows:
        return []
    ncols = len(rows[0])
    reduced, pivots = rref_field(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(reduced, pivots):
            v[pc] = field.neg(row[fc])
        basis.append(v)
    return basis


def rref_mod_p(A: np.ndarray, p: int):
    """Vectorized rref of an integer matrix mod a prime p.

    Returns (reduced, pivots); reduced has zero rows dropped.
    """
    A = np.array(A, dtype=np.int64) % p
    nrows, ncols = A.shape
    inverses = [0] * p
    for a in range(1, p):
        inverses[a] = pow(a, p - 2, p)
    rank = 0
    pivots = []
    for col in range(ncols):
        block = A[rank:, col]
        nz = np.nonzero(block)[0]
        if nz.size == 0:
            continue
        pivot = rank + nz[0]
        if pivot != rank:
            A[[rank, pivot]] = A[[pivot, rank]]
        inv = inverses[int(A[rank, col])]
        if inv != 1:
            A[rank] = (A[rank] * inv) % p
        factors = A[:, col].copy()
        factors[rank] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            A[hit] = (A[hit] - np.outer(factors[hit], A[rank])) % p
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return A[:rank], pivots


def fp_coordinates(indices, field: FieldSpec):
    """Flatten GF(q) element indices into residue coordinates over F_p."""
    out = []
    for idx in indices:
        out.extend(field._digits(idx))
    return out


def fp_rref(vectors, p: int):
    """rref over F_p of integer residue vectors; returns (rows, pivots)."""
    if not vectors:
        return [], []
    A, pivots = rref_mod_p(np.array(vectors, dtype=np.int64), p)
    return A.tolist(), pivots


def fp_membership(vector, rows, pivots, p: int):
    """Coefficients writing vector in the F_p row space, or None."""
    v = [x % p for x in vector]
    coeffs = []
    for row, col in zip(rows, pivots):
        c = v[col] % p
        coeffs.append(c)
        if c:
            v = [(a - c * b) % p for a, b in zip(v, row)]
    if any(v):
        return None
    return coeffs
