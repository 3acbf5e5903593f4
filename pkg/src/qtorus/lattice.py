"""Small exact integer-lattice helpers: Hermite forms, membership, kernels.

Everything runs on plain Python ints (arbitrary precision); the matrices
involved are tiny (rank <= the torus rank d), so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction


def hnf_rows(rows) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of the lattice spanned by `rows`.

    Returns echelon rows with positive pivots, zeros below each pivot and
    entries above a pivot reduced into [0, pivot).  Zero rows are dropped,
    so the result is a canonical basis of the row span.
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    top = 0
    for col in range(ncols):
        if top == len(m):
            break
        while True:
            nz = [i for i in range(top, len(m)) if m[i][col]]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(m[i][col]))
            m[top], m[i_min] = m[i_min], m[top]
            p = m[top][col]
            again = False
            for i in range(top + 1, len(m)):
                if m[i][col]:
                    q = m[i][col] // p
                    m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                    if m[i][col]:
                        again = True
            if not again:
                break
        if m[top][col]:
            if m[top][col] < 0:
                m[top] = [-a for a in m[top]]
            p = m[top][col]
            for i in range(top):
                q = m[i][col] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[top])]
            top += 1
    return [tuple(r) for r in m[:top]]


def hnf_contains(basis, v) -> bool:
    """Membership test for a vector against an hnf_rows basis."""
    v = list(v)
    for row in basis:
        p = next(i for i, a in enumerate(row) if a)
        if v[p]:
            if v[p] % row[p]:
                return False
            q = v[p] // row[p]
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def _invert_fraction_matrix(rows):
    n = len(rows)
    aug = [[Fraction(rows[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [a * inv for a in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def kernel_mod(a_rows, modulus: int) -> list[tuple[int, ...]]:
    """Canonical basis of the lattice {n in Z^d : A n == 0 (mod modulus)}.

    The congruence lattice is dual to the row span R of [A; modulus*I]:
    with H = hnf(R) one has L = column lattice of modulus * H^-1, which is
    an integer matrix because R contains modulus * Z^d.
    """
    d = len(a_rows)
    stacked = [list(r) for r in a_rows]
    for i in range(d):
        stacked.append([modulus if j == i else 0 for j in range(d)])
    h = hnf_rows(stacked)
    if len(h) != d:
        raise ValueError("stacked matrix lost full rank")
    inv = _invert_fraction_matrix(h)
    cols = []
    for j in range(d):
        col = []
        for i in range(d):
            x = modulus * inv[i][j]
            if x.denominator != 1:
                raise ArithmeticError("kernel matrix should be integral")
            col.append(x.numerator)
        cols.append(col)
    # the columns of modulus*H^-1 generate L; canonicalize them as rows
    return hnf_rows(cols)


def det_of_hnf(basis) -> int:
    """Determinant (lattice index in Z^d) of a full-rank hnf_rows basis."""
    det = 1
    for row in basis:
        det *= next(a for a in row if a)
    return det
