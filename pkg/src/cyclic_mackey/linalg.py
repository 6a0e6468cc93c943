"""Exact integer linear algebra: Smith normal form with transforms and lattice helpers.

Matrices cross this module's boundary as numpy arrays of dtype ``object`` holding
Python ints, so entries never overflow.  Internally the elimination runs on plain
lists of lists, which is faster than object-array indexing.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def zmat(rows, shape=None) -> np.ndarray:
    """Build an object-dtype integer matrix from nested lists (or reshape a flat list)."""
    a = np.array(rows, dtype=object)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim == 1 and shape is None and len(a) == 0:
        a = a.reshape(0, 0)
    return a


def zeros(m: int, n: int) -> np.ndarray:
    a = np.empty((m, n), dtype=object)
    a.fill(0)
    return a


def identity(n: int) -> np.ndarray:
    a = zeros(n, n)
    for i in range(n):
        a[i, i] = 1
    return a


_INT64_SAFE = 2 ** 62


def _as_int64(a: np.ndarray):
    """(int64 copy, max |entry|) or (None, None) when some entry does not fit."""
    try:
        ai = a.astype(np.int64)
    except OverflowError:
        return None, None
    if ai.size == 0:
        return ai, 0
    return ai, max(abs(int(ai.max())), abs(int(ai.min())))


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of object matrices that also behaves for empty inner dimensions.

    When the entry bounds prove every partial sum fits in 64 bits the product is
    taken in int64 and converted back; otherwise Python integers are used.
    """
    if a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    ai, ma = _as_int64(a)
    if ai is not None:
        bi, mb = _as_int64(b)
        if bi is not None and ma * mb * a.shape[1] < _INT64_SAFE:
            return ai.dot(bi).astype(object)
    return a.dot(b)


def is_zero(a: np.ndarray) -> bool:
    return all(x == 0 for x in a.flat)


@dataclass(frozen=True)
class SmithForm:
    """``left @ A @ right == diag(diagonal)`` padded to the shape of ``A``.

    ``left_inv`` and ``right_inv`` are the exact inverses of the unimodular
    transforms.  ``diagonal`` has length ``min(m, n)``; nonzero entries come first,
    are positive and form a divisibility chain.
    """

    diagonal: tuple
    left: np.ndarray
    left_inv: np.ndarray
    right: np.ndarray
    right_inv: np.ndarray

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(a: np.ndarray) -> SmithForm:
    m, n = a.shape
    A = [[int(x) for x in row] for row in a]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_add(i, j, c):
        # row_i += c * row_j
        if c == 0:
            return
        Ai, Aj = A[i], A[j]
        for k in range(n):
            if Aj[k]:
                Ai[k] += c * Aj[k]
        Ui_, Uj = U[i], U[j]
        for k in range(m):
            if Uj[k]:
                Ui_[k] += c * Uj[k]
        for row in Ui:
            if row[i]:
                row[j] -= c * row[i]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    def col_add(i, j, c):
        # col_i += c * col_j
        if c == 0:
            return
        for row in A:
            if row[j]:
                row[i] += c * row[j]
        for row in V:
            if row[j]:
                row[i] += c * row[j]
        Vi_j, Vi_i = Vi[j], Vi[i]
        for k in range(n):
            if Vi_i[k]:
                Vi_j[k] -= c * Vi_i[k]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry of the remaining block becomes the pivot
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                x = Ai[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        while True:
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // piv))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // piv))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # a nonzero remainder is smaller than the pivot: move it into place
                best = None
                for i in range(t, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, t)
                for j in range(t, n):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), t, j)
                _, i, j = best
                if i != t:
                    row_swap(i, t)
                if j != t:
                    col_swap(j, t)
                continue
            # enforce divisibility of the rest of the block by the pivot
            bad = None
            for i in range(t + 1, m):
                Ai = A[i]
                for j in range(t + 1, n):
                    if Ai[j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            row_neg(t)
        t += 1

    diag = tuple(A[k][k] for k in range(min(m, n)))
    return SmithForm(diag, _obj(U, m, m), _obj(Ui, m, m), _obj(V, n, n), _obj(Vi, n, n))


def _obj(rows, m, n) -> np.ndarray:
    out = np.empty((m, n), dtype=object)
    for i in range(m):
        for j in range(n):
            out[i, j] = rows[i][j]
    return out


def kernel_basis(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Saturated Z-basis of ker(a) as columns, plus a left inverse of that basis.

    Returns ``(K, Kinv)`` with ``a @ K == 0`` and ``Kinv @ K == identity``; any
    integer vector ``v`` in the kernel satisfies ``v == K @ (Kinv @ v)``.
    """
    m, n = a.shape
    sf = smith_normal_form(a)
    r = sf.rank
    return sf.right[:, r:], sf.right_inv[r:, :]


def quotient_invariants(gens: np.ndarray, dim: int) -> tuple[int, tuple]:
    """Free rank and invariant factors (> 1) of Z^dim modulo the column span of ``gens``."""
    if gens.shape[1] == 0 or dim == 0:
        return dim, ()
    sf = smith_normal_form(gens)
    r = sf.rank
    torsion = tuple(d for d in sf.diagonal[:r] if d != 1)
    return dim - r, torsion


def solve_integer(a: np.ndarray, b: np.ndarray):
    """An integer solution ``x`` of ``a @ x == b`` (b a column or matrix), or None."""
    m, n = a.shape
    b2 = b.reshape(m, -1)
    sf = smith_normal_form(a)
    c = matmul(sf.left, b2)
    y = zeros(n, b2.shape[1])
    for i in range(m):
        d = sf.diagonal[i] if i < len(sf.diagonal) else 0
        for col in range(b2.shape[1]):
            v = c[i, col]
            if d == 0:
                if v != 0:
                    return None
            else:
                if v % d:
                    return None
                y[i, col] = v // d
    x = matmul(sf.right, y)
    return x.reshape((n,) + b.shape[1:]) if b.ndim == 1 else x
