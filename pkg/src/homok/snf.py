"""Exact integer linear algebra: Smith normal form, determinants, and
invariant factors of quotients and subgroups of ``Z/m1 x ... x Z/mq``.

Matrices are plain ``list[list[int]]`` acting on row vectors; a subgroup of
the ambient group is described by generator rows together with the implicit
relation rows ``m_j * e_j``.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import xgcd

IntMatrix = list[list[int]]


def identity_matrix(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("matmul shape mismatch")
    cols = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def determinant(mat: IntMatrix) -> int:
    """Exact determinant via Bareiss fraction-free elimination."""
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k]), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _smith(mat: IntMatrix, want_transforms: bool):
    s = [list(row) for row in mat]
    nrows = len(s)
    ncols = len(s[0]) if s else 0
    u = identity_matrix(nrows) if want_transforms else None
    v = identity_matrix(ncols) if want_transforms else None

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        if v is not None:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        srow, drow = s[src], s[dst]
        for j in range(ncols):
            drow[j] += f * srow[j]
        if u is not None:
            srow, drow = u[src], u[dst]
            for j in range(nrows):
                drow[j] += f * srow[j]

    def add_col(dst, src, f):
        for row in s:
            row[dst] += f * row[src]
        if v is not None:
            for row in v:
                row[dst] += f * row[src]

    def negate_row(i):
        s[i] = [-x for x in s[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        # Move the smallest nonzero entry (by absolute value) to the pivot.
        best = None
        for i in range(t, nrows):
            row = s[i]
            for j in range(t, ncols):
                val = row[j]
                if val and (best is None or abs(val) < best[0]):
                    best = (abs(val), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        if s[t][t] < 0:
            negate_row(t)

        clean = True
        for i in range(t + 1, nrows):
            if s[i][t]:
                add_row(i, t, -(s[i][t] // s[t][t]))
                if s[i][t]:
                    clean = False
        for j in range(t + 1, ncols):
            if s[t][j]:
                add_col(j, t, -(s[t][j] // s[t][t]))
                if s[t][j]:
                    clean = False
        if not clean:
            continue

        # Pivot divides its row and column; force divisibility of the rest.
        offender = None
        for i in range(t + 1, nrows):
            row = s[i]
            for j in range(t + 1, ncols):
                if row[j] % s[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        t += 1

    return u, s, v


def smith_normal_form(mat: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return unimodular ``(U, S, V)`` with ``U @ mat @ V == S`` diagonal,
    diagonal entries nonnegative and each dividing the next.
    """
    u, s, v = _smith(mat, want_transforms=True)
    return u, s, v


def smith_diagonal(mat: IntMatrix) -> list[int]:
    """Diagonal of the Smith form, without the transform bookkeeping."""
    _, s, _ = _smith(mat, want_transforms=False)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0))]


def invert_unimodular(mat: IntMatrix) -> IntMatrix:
    """Inverse of an integer matrix with determinant +-1."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    out = []
    for row in a:
        ints = []
        for x in row[n:]:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            ints.append(int(x))
        out.append(ints)
    return out


def _validate_ambient(rows: IntMatrix, moduli: list[int]) -> None:
    if any(m < 1 for m in moduli):
        raise ValueError(f"ambient moduli must be positive, got {moduli}")
    width = len(moduli)
    for row in rows:
        if len(row) != width:
            raise ValueError(
                f"generator row has length {len(row)}, ambient rank is {width}"
            )


def _hermite_basis(rows: IntMatrix, moduli: list[int]) -> IntMatrix:
    """Upper-triangular row basis of the lattice spanned by ``rows`` together
    with the relation rows ``moduli[j] * e_j``.

    Entries are kept reduced modulo the ambient moduli throughout -- adding a
    multiple of ``m_j * e_j`` never leaves the lattice, and it keeps the
    arithmetic on word-sized integers even for thousands of generator rows.
    """
    q = len(moduli)
    basis: list[list[int]] = []
    for c, m in enumerate(moduli):
        row = [0] * q
        row[c] = m
        basis.append(row)

    seen: set[tuple[int, ...]] = set()
    for raw in rows:
        row = [x % m for x, m in zip(raw, moduli)]
        key = tuple(row)
        if key in seen:  # duplicates are common in generator dumps
            continue
        seen.add(key)
        for c in range(q):
            val = row[c]
            if val == 0:
                continue
            brow = basis[c]
            pivot = brow[c]
            if val % pivot == 0:
                f = val // pivot
                for j in range(c, q):
                    row[j] = (row[j] - f * brow[j]) % moduli[j]
            else:
                g, sc, tc = xgcd(pivot, val)
                fb = pivot // g
                fv = val // g
                new_basis = brow[:]
                for j in range(c, q):
                    bj, rj = brow[j], row[j]
                    new_basis[j] = (sc * bj + tc * rj) % moduli[j]
                    row[j] = (fb * rj - fv * bj) % moduli[j]
                new_basis[c] = g
                row[c] = 0
                basis[c] = new_basis
    return basis


def _express_relations(basis: IntMatrix, moduli: list[int]) -> IntMatrix:
    """Integer matrix ``X`` with ``X @ basis == diag(moduli)``.

    ``basis`` is upper triangular with positive pivots, so this is exact
    back-substitution column by column.
    """
    q = len(moduli)
    out = []
    for i in range(q):
        target = [0] * q
        target[i] = moduli[i]
        x = [0] * q
        for c in range(q):
            rem = target[c] - sum(x[j] * basis[j][c] for j in range(c))
            if rem % basis[c][c]:
                raise ArithmeticError("relation row does not lie in the lattice")
            x[c] = rem // basis[c][c]
        out.append(x)
    return out


def cokernel_invariants(rows: IntMatrix, moduli: list[int]) -> tuple[int, ...]:
    """Invariant factors of ``(Z/m1 x ... x Z/mq) / <rows>``.

    Conceptually this is the Smith form of ``rows`` stacked on top of
    ``diag(moduli)``; the stack is folded into a square triangular basis
    first so the Smith step only ever sees a ``q x q`` matrix.

    Returns the ascending divisor chain with unit factors dropped; the
    entries multiply out to the quotient order.
    """
    _validate_ambient(rows, moduli)
    basis = _hermite_basis(rows, moduli)
    diag = smith_diagonal(basis)
    return tuple(d for d in diag if d != 1)


def subgroup_invariants(rows: IntMatrix, moduli: list[int]) -> tuple[int, ...]:
    """Invariant factors of the subgroup of ``Z/m1 x ... x Z/mq`` generated
    by ``rows`` (as an abstract abelian group)."""
    _validate_ambient(rows, moduli)
    basis = _hermite_basis(rows, moduli)
    x = _express_relations(basis, moduli)
    diag = smith_diagonal(x)
    return tuple(d for d in diag if d != 1)


def subgroup_basis(
    rows: IntMatrix, moduli: list[int]
) -> list[tuple[tuple[int, ...], int]]:
    """Independent generators for the subgroup spanned by ``rows``.

    Returns ``[(vector, order), ...]`` with orders forming the ascending
    divisor chain; the vectors generate the subgroup as a direct sum of
    cyclic pieces of exactly those orders.
    """
    _validate_ambient(rows, moduli)
    basis = _hermite_basis(rows, moduli)
    x = _express_relations(basis, moduli)
    _, s, v = _smith(x, want_transforms=True)
    # X = U^-1 S V^-1, so the lattice of relations diag(moduli) equals
    # S @ (V^-1 @ basis): rows of V^-1 @ basis generate the subgroup with
    # the Smith diagonal as their orders in it.
    new_basis = matmul(invert_unimodular(v), basis)
    out = []
    for i, brow in enumerate(new_basis):
        order = s[i][i]
        if order == 1:
            continue
        vec = tuple(x % m for x, m in zip(brow, moduli))
        out.append((vec, order))
    return out
