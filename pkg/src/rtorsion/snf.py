"""Smith normal form over the integers with exact Python integers."""
from __future__ import annotations


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix):
    """
    Smith normal form of an integer matrix.

    Parameters
    ----------
    matrix : sequence of rows (or a 2-d array) of integers, shape (m, n)

    Returns
    -------
    D, U, V : lists of lists
        ``U @ matrix @ V == D`` with ``U``, ``V`` unimodular and ``D``
        diagonal, nonnegative, each diagonal entry dividing the next.
    """
    A = [[int(x) for x in row] for row in matrix]
    m = len(A)
    n = len(A[0]) if m else _ncols(matrix)
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, f):  # col_dst += f * col_src
        for M in (A, V):
            for row in M:
                row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            # smallest nonzero entry of the trailing block as pivot
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return _finish(A, U, V, m, n)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // piv))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // piv))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            # pivot must divide the whole trailing block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % piv), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return _finish(A, U, V, m, n)


def _ncols(matrix):
    shape = getattr(matrix, "shape", None)
    return shape[1] if shape is not None and len(shape) == 2 else 0


def _finish(A, U, V, m, n):
    for t in range(min(m, n)):
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return A, U, V


def invariant_factors(matrix) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, in divisibility order."""
    D, _, _ = smith_normal_form(matrix)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]
