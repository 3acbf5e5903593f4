"""Finite-dimensional representations of the general linear Lie algebra.

A GlModule packages, for each pair (i, j), the matrix by which the (i, j)
matrix unit acts on a chosen basis.  Construction verifies the commutation
law of matrix units,

    [E_ij, E_kl] = delta_jk E_il - delta_li E_kj,

so an object that builds successfully really is a representation.  All
entries are normalized to exact cyclotomic numbers.

Provided constructions: natural column vectors, their dual, symmetric and
exterior powers of the natural module, a scalar trace twist of any module,
and the one-dimensional trivial module.  matrix_of() assembles the image of
an arbitrary coefficient matrix, which is how the weight-module layer uses
these objects.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .cyclotomic import CycNumber
from .errors import BadPower, SpecMismatch


def _coeff(x) -> CycNumber:
    if isinstance(x, CycNumber):
        return x
    return CycNumber.rational(x)


# -- small exact-matrix toolkit -------------------------------------------


def zero_matrix(rows: int, cols: int):
    z = CycNumber.zero()
    return [[z] * cols for _ in range(rows)]


def identity_matrix(n: int):
    z, o = CycNumber.zero(), CycNumber.one()
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    c = _coeff(c)
    return [[c * x for x in row] for row in a]


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = zero_matrix(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x.is_zero():
                continue
            bt = b[t]
            for j in range(m):
                y = bt[j]
                if not y.is_zero():
                    oi[j] = oi[j] + x * y
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        acc = CycNumber.zero()
        for x, y in zip(row, v):
            if not (x.is_zero() or y.is_zero()):
                acc = acc + x * y
        out.append(acc)
    return out


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_is_zero(a) -> bool:
    return all(x.is_zero() for row in a for x in row)


class Span:
    """Row space in reduced echelon form over the cyclotomic field."""

    def __init__(self, length: int):
        self.length = length
        self.rows = {}  # pivot column -> normalized row

    def _reduce(self, vec):
        vec = list(vec)
        for piv, row in self.rows.items():
            c = vec[piv]
            if not c.is_zero():
                for j in range(self.length):
                    if not row[j].is_zero():
                        vec[j] = vec[j] - c * row[j]
        return vec

    def insert(self, vec) -> bool:
        """Add a vector; True if it enlarged the span."""
        vec = self._reduce([_coeff(x) for x in vec])
        piv = next((j for j in range(self.length) if not vec[j].is_zero()), None)
        if piv is None:
            return False
        inv = vec[piv].inverse()
        vec = [inv * x for x in vec]
        for row in self.rows.values():
            c = row[piv]
            if not c.is_zero():
                for j in range(self.length):
                    if not vec[j].is_zero():
                        row[j] = row[j] - c * vec[j]
        self.rows[piv] = vec
        return True

    def contains(self, vec) -> bool:
        return all(x.is_zero() for x in self._reduce([_coeff(v) for v in vec]))

    @property
    def dim(self) -> int:
        return len(self.rows)


# -- representations -------------------------------------------------------


class GlModule:
    __slots__ = ("d", "dim", "name", "E", "basis_labels")

    def __init__(self, d: int, dim: int, E, name: str, basis_labels=None, check: bool = True):
        self.d = d
        self.dim = dim
        self.name = name
        self.E = [
            [[[_coeff(x) for x in row] for row in E[i][j]] for j in range(d)]
            for i in range(d)
        ]
        self.basis_labels = list(basis_labels) if basis_labels is not None else list(range(dim))
        if check:
            self._verify_bracket_law()

    def _verify_bracket_law(self):
        for i in range(self.d):
            for j in range(self.d):
                for k in range(self.d):
                    for l in range(self.d):
                        lhs = mat_sub(
                            mat_mul(self.E[i][j], self.E[k][l]),
                            mat_mul(self.E[k][l], self.E[i][j]),
                        )
                        rhs = zero_matrix(self.dim, self.dim)
                        if j == k:
                            rhs = mat_add(rhs, self.E[i][l])
                        if l == i:
                            rhs = mat_sub(rhs, self.E[k][j])
                        if not mat_eq(lhs, rhs):
                            raise SpecMismatch(
                                f"matrix-unit bracket law fails at ({i},{j},{k},{l})"
                            )

    def matrix_of(self, coeffs):
        """Image of the coefficient matrix sum_ij coeffs[i][j] E_ij."""
        out = zero_matrix(self.dim, self.dim)
        for i in range(self.d):
            for j in range(self.d):
                c = _coeff(coeffs[i][j])
                if not c.is_zero():
                    out = mat_add(out, mat_scale(self.E[i][j], c))
        return out

    def __repr__(self):
        return f"GlModule({self.name}, d={self.d}, dim={self.dim})"


def natural(d: int) -> GlModule:
    E = [
        [
            [[1 if (r == i and c == j) else 0 for c in range(d)] for r in range(d)]
            for j in range(d)
        ]
        for i in range(d)
    ]
    return GlModule(d, d, E, "natural")


def dual(d: int) -> GlModule:
    # E_ij acts by minus the transposed matrix unit
    E = [
        [
            [[-1 if (r == j and c == i) else 0 for c in range(d)] for r in range(d)]
            for j in range(d)
        ]
        for i in range(d)
    ]
    return GlModule(d, d, E, "dual")


def trivial(d: int) -> GlModule:
    E = [[[[0]] for _ in range(d)] for _ in range(d)]
    return GlModule(d, 1, E, "trivial")


def sym_power(d: int, k: int) -> GlModule:
    """Degree-k polynomials in the natural variables, derivation action."""
    if k < 1:
        raise BadPower("symmetric power degree must be at least 1")
    basis = list(combinations_with_replacement(range(d), k))
    index = {b: t for t, b in enumerate(basis)}
    dim = len(basis)
    E = [[zero_matrix(dim, dim) for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(d):
            M = [[Fraction(0)] * dim for _ in range(dim)]
            for col, mono in enumerate(basis):
                mult = mono.count(j)
                if not mult:
                    continue
                pos = mono.index(j)
                target = tuple(sorted(mono[:pos] + mono[pos + 1 :] + (i,)))
                M[index[target]][col] += mult
            E[i][j] = M
    return GlModule(d, dim, E, f"sym:{k}", basis_labels=basis)


def ext_power(d: int, k: int) -> GlModule:
    """k-th exterior power of the natural module, with resorting signs."""
    if k < 1 or k > d:
        raise BadPower(f"exterior power degree {k} is outside 1..{d}")
    basis = list(combinations(range(d), k))
    index = {b: t for t, b in enumerate(basis)}
    dim = len(basis)
    E = [[zero_matrix(dim, dim) for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(d):
            M = [[Fraction(0)] * dim for _ in range(dim)]
            for col, wedge in enumerate(basis):
                if j not in wedge:
                    continue
                if i in wedge and i != j:
                    continue
                pos = wedge.index(j)
                replaced = wedge[:pos] + (i,) + wedge[pos + 1 :]
                unsorted = list(replaced)
                target = tuple(sorted(unsorted))
                # parity of the permutation sorting `replaced`
                inversions = sum(
                    1
                    for a in range(k)
                    for b in range(a + 1, k)
                    if unsorted[a] > unsorted[b]
                )
                sign = -1 if inversions % 2 else 1
                M[index[target]][col] += sign
            E[i][j] = M
    return GlModule(d, dim, E, f"ext:{k}", basis_labels=basis)


def trace_twist(base: GlModule, c) -> GlModule:
    """Shift every diagonal action E_ii by c * Id; off-diagonal unchanged."""
    c = _coeff(c)
    ident = identity_matrix(base.dim)
    E = [
        [
            mat_add(base.E[i][j], mat_scale(ident, c)) if i == j else base.E[i][j]
            for j in range(base.d)
        ]
        for i in range(base.d)
    ]
    return GlModule(base.d, base.dim, E, f"twist[{base.name}]", basis_labels=base.basis_labels)


def direct_sum(a: GlModule, b: GlModule) -> GlModule:
    """Block-diagonal sum; handy as a reducible specimen."""
    if a.d != b.d:
        raise SpecMismatch("summands represent different gl ranks")
    dim = a.dim + b.dim
    E = []
    for i in range(a.d):
        row = []
        for j in range(a.d):
            M = zero_matrix(dim, dim)
            for r in range(a.dim):
                for c in range(a.dim):
                    M[r][c] = a.E[i][j][r][c]
            for r in range(b.dim):
                for c in range(b.dim):
                    M[a.dim + r][a.dim + c] = b.E[i][j][r][c]
            row.append(M)
        E.append(row)
    return GlModule(a.d, dim, E, f"({a.name})+({b.name})", check=True)


def cyclic_from_every_start(module: GlModule, extra_starts=(), max_rounds: int = 64) -> bool:
    """True when every listed start vector generates the whole space under
    repeated application of the matrix-unit images.  Starts are the basis
    vectors plus any extra vectors given."""
    gens = [module.E[i][j] for i in range(module.d) for j in range(module.d)]
    starts = [
        [CycNumber.one() if t == s else CycNumber.zero() for t in range(module.dim)]
        for s in range(module.dim)
    ]
    starts += [[_coeff(x) for x in v] for v in extra_starts]
    for v0 in starts:
        if all(x.is_zero() for x in v0):
            continue
        span = Span(module.dim)
        span.insert(v0)
        frontier = [v0]
        rounds = 0
        while frontier and span.dim < module.dim and rounds < max_rounds:
            rounds += 1
            new = []
            for v in frontier:
                for g in gens:
                    w = mat_vec(g, v)
                    if span.insert(w):
                        new.append(w)
            frontier = new
        if span.dim < module.dim:
            return False
    return True


def parse_module(d: int, selector: str) -> GlModule:
    """Build a module from a compact selector string.

    Grammar: natural | trivial | dual | sym:k | ext:k | twist:c:SELECTOR
    where c is an integer or fraction like 1/2.
    """
    sel = selector.strip()
    if sel == "natural":
        return natural(d)
    if sel == "trivial":
        return trivial(d)
    if sel == "dual":
        return dual(d)
    if sel.startswith("sym:"):
        return sym_power(d, _parse_power(sel[4:]))
    if sel.startswith("ext:"):
        return ext_power(d, _parse_power(sel[4:]))
    if sel.startswith("twist:"):
        rest = sel[6:]
        head, _, tail = rest.partition(":")
        if not tail:
            raise BadPower(f"twist selector needs a scalar and a base: {selector!r}")
        try:
            scalar = Fraction(head)
        except (ValueError, ZeroDivisionError):
            raise BadPower(f"twist scalar must be rational, got {head!r}") from None
        return trace_twist(parse_module(d, tail), scalar)
    raise BadPower(f"unknown module selector: {selector!r}")


def _parse_power(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise BadPower(f"power degree must be an integer, got {text!r}") from None
