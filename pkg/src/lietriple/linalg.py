"""Exact linear algebra over Q and Q[i] on numpy object arrays.

Everything here works with any scalar type that supports ``+ - * /`` and
exact equality with ``0``; no pivoting tolerances exist.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .scalars import GaussQ

__all__ = [
    "field_of",
    "rref",
    "rank",
    "det",
    "nullspace",
    "solve",
    "inverse",
    "column_basis",
    "in_span",
    "same_span",
    "section_on_image",
    "SingularMatrixError",
]


class SingularMatrixError(ValueError):
    pass


def field_of(*arrays) -> str:
    for a in arrays:
        for x in np.asarray(a, dtype=object).flat:
            if isinstance(x, GaussQ):
                return "Q_i"
    return "Q"


def _zero_one(field):
    return (GaussQ(0), GaussQ(1)) if field == "Q_i" else (Fraction(0), Fraction(1))


def rref(M):
    """Reduced row echelon form and pivot column list."""
    A = np.array(M, dtype=object, copy=True)
    if A.ndim != 2:
        raise ValueError("rref expects a matrix")
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        piv = next((i for i in range(r, rows) if A[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        p = A[r, c]
        A[r] = [x / p for x in A[r]]
        for i in range(rows):
            if i != r and A[i, c] != 0:
                f = A[i, c]
                A[i] = A[i] - f * A[r]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M) -> int:
    A = np.asarray(M, dtype=object)
    if A.size == 0:
        return 0
    return len(rref(A)[1])


def det(M):
    """Determinant by fraction-free (Bareiss) elimination."""
    A = np.array(M, dtype=object, copy=True)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("det expects a square matrix")
    zero, one = _zero_one(field_of(A))
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if A[k, k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i, k] != 0), None)
            if swap is None:
                return zero
            A[[k, swap]] = A[[swap, k]]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i, j] = (A[i, j] * A[k, k] - A[i, k] * A[k, j]) / prev
        prev = A[k, k]
    return A[n - 1, n - 1] if sign > 0 else -A[n - 1, n - 1]


def nullspace(M) -> np.ndarray:
    """Basis of the kernel as the columns of the returned matrix."""
    A = np.asarray(M, dtype=object)
    rows, cols = A.shape
    field = field_of(A)
    zero, one = _zero_one(field)
    if rows == 0:
        out = np.empty((cols, cols), dtype=object)
        out.fill(zero)
        for i in range(cols):
            out[i, i] = one
        return out
    R, pivots = rref(A)
    free = [c for c in range(cols) if c not in pivots]
    out = np.empty((cols, len(free)), dtype=object)
    out.fill(zero)
    for j, f in enumerate(free):
        out[f, j] = one
        for i, p in enumerate(pivots):
            out[p, j] = -R[i, f]
    return out


def solve(A, b):
    """A particular solution of ``A x = b`` or ``None`` if inconsistent.

    ``b`` may be a vector or a matrix of right-hand sides.
    """
    A = np.asarray(A, dtype=object)
    b = np.asarray(b, dtype=object)
    vec = b.ndim == 1
    B = b.reshape(-1, 1) if vec else b
    rows, cols = A.shape
    aug = np.concatenate([A, B], axis=1)
    R, pivots = rref(aug)
    if any(p >= cols for p in pivots):
        return None
    zero, _ = _zero_one(field_of(A, b))
    x = np.empty((cols, B.shape[1]), dtype=object)
    x.fill(zero)
    for i, p in enumerate(pivots):
        x[p] = R[i, cols:]
    return x[:, 0] if vec else x


def inverse(M) -> np.ndarray:
    A = np.asarray(M, dtype=object)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse expects a square matrix")
    zero, one = _zero_one(field_of(A))
    eye = np.empty((n, n), dtype=object)
    eye.fill(zero)
    for i in range(n):
        eye[i, i] = one
    R, pivots = rref(np.concatenate([A, eye], axis=1))
    if [p for p in pivots if p < n] != list(range(n)):
        raise SingularMatrixError("matrix is not invertible")
    return R[:, n:]


def column_basis(M):
    """Pivot columns of ``M`` (a basis of its column space) and their indices."""
    A = np.asarray(M, dtype=object)
    if A.shape[1] == 0:
        return A[:, :0], []
    _, pivots = rref(A)
    return A[:, pivots], pivots


def in_span(basis, v) -> bool:
    basis = np.asarray(basis, dtype=object)
    if basis.shape[1] == 0:
        return all(x == 0 for x in np.asarray(v, dtype=object).flat)
    return solve(basis, v) is not None


def same_span(A, B) -> bool:
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    ra, rb = rank(A) if A.shape[1] else 0, rank(B) if B.shape[1] else 0
    if ra != rb:
        return False
    both = np.concatenate([A, B], axis=1)
    return (rank(both) if both.shape[1] else 0) == ra


def section_on_image(M) -> np.ndarray:
    """Deterministic right inverse ``s`` of ``M`` on its image.

    The pivot columns ``p`` of ``M`` span the image; rows ``q`` are the
    pivot rows of those columns.  With ``C = M[:, p]`` and ``C_q = C[q]``
    invertible, ``s = E_p C_q^{-1} P_q`` satisfies ``M s y = y`` for every
    ``y`` in the image of ``M``.
    """
    M = np.asarray(M, dtype=object)
    n_out, n_in = M.shape
    zero, _ = _zero_one(field_of(M))
    s = np.empty((n_in, n_out), dtype=object)
    s.fill(zero)
    C, p = column_basis(M)
    if not p:
        return s
    _, q = rref(C.T)
    Cq_inv = inverse(C[q, :])
    for a, col in enumerate(p):
        for b, row in enumerate(q):
            s[col, row] = Cq_inv[a, b]
    return s
