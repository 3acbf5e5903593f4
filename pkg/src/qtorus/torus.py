"""Rational quantum torus specifications and their commutation data.

A TorusSpec pins down the rank d, the order N of the root of unity, and a
skew-symmetric (mod N) exponent matrix A.  Monomial commutation is governed
by the cocycle

    sigma(n, m) = zeta_N ** sum_{i<j} A[j][i] * n[j] * m[i]

and the commutation form f(n, m) = sigma(n, m) / sigma(m, n), whose exponent
collapses to n^T A m mod N.  The radical of f is the congruence lattice
{n : A n == 0 (mod N)}; monomials supported there are exactly the central
ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Optional

from .cyclotomic import CycNumber, root_of_unity
from .errors import ConfigError
from .lattice import det_of_hnf, hnf_contains, kernel_mod


@dataclass(frozen=True)
class RadicalBasis:
    """Canonical description of rad(f) as a sublattice of Z^d."""

    basis: tuple[tuple[int, ...], ...]
    axis_orders: tuple[int, ...]
    diagonal: bool
    diagonal_orders: Optional[tuple[int, ...]]
    index: int

    def contains(self, n) -> bool:
        return hnf_contains(self.basis, n)

    def to_json(self):
        return {
            "basis": [list(r) for r in self.basis],
            "axis_orders": list(self.axis_orders),
            "diagonal": self.diagonal,
            "diagonal_orders": list(self.diagonal_orders) if self.diagonal_orders else None,
            "index": self.index,
        }


class TorusSpec:
    """Validated (d, N, A) triple; immutable once constructed."""

    __slots__ = ("d", "N", "A", "corrupt_sigma", "_radical", "_roots")

    def __init__(self, d: int, N: int, A, corrupt_sigma: bool = False):
        if d < 1:
            raise ConfigError("rank d must be >= 1")
        if N < 1:
            raise ConfigError("order N must be >= 1")
        rows = [list(int(x) % N for x in row) for row in A]
        if len(rows) != d or any(len(r) != d for r in rows):
            raise ConfigError("exponent matrix A must be d x d")
        for i in range(d):
            if rows[i][i] % N:
                raise ConfigError("diagonal of A must vanish mod N")
            for j in range(d):
                if (rows[i][j] + rows[j][i]) % N:
                    raise ConfigError("A must be skew-symmetric mod N")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "A", tuple(tuple(r) for r in rows))
        object.__setattr__(self, "corrupt_sigma", bool(corrupt_sigma))
        object.__setattr__(self, "_radical", None)
        object.__setattr__(self, "_roots", [root_of_unity(N, k) for k in range(N)])

    def __setattr__(self, *a):
        raise AttributeError("TorusSpec is immutable")

    @classmethod
    def from_upper(cls, d: int, N: int, upper: dict) -> "TorusSpec":
        """Build from the strictly upper-triangular entries {(i, j): a}, 0-based."""
        rows = [[0] * d for _ in range(d)]
        for (i, j), a in upper.items():
            if not 0 <= i < j < d:
                raise ConfigError("upper entries need 0 <= i < j < d")
            rows[i][j] = a % N
            rows[j][i] = (-a) % N
        return cls(d, N, rows)

    def __eq__(self, other):
        return (
            isinstance(other, TorusSpec)
            and self.d == other.d
            and self.N == other.N
            and self.A == other.A
            and self.corrupt_sigma == other.corrupt_sigma
        )

    def __hash__(self):
        return hash((self.d, self.N, self.A, self.corrupt_sigma))

    def __repr__(self):
        return f"TorusSpec(d={self.d}, N={self.N}, A={[list(r) for r in self.A]})"

    # -- cocycle and commutation form -----------------------------------

    def _point(self, n) -> tuple[int, ...]:
        t = tuple(int(x) for x in n)
        if len(t) != self.d:
            raise ConfigError(f"lattice point {n!r} has wrong length for rank {self.d}")
        return t

    def sigma_exp(self, n, m) -> int:
        a = self.A
        e = 0
        for j in range(1, self.d):
            nj = n[j]
            if nj:
                row = a[j]
                for i in range(j):
                    if m[i]:
                        e += row[i] * nj * m[i]
        if self.corrupt_sigma and any(n) and any(m):
            e += 1  # deliberate cocycle-law breakage for harness fixtures
        return e % self.N

    def sigma(self, n, m) -> CycNumber:
        return self._roots[self.sigma_exp(n, m)]

    def comm_exp(self, n, m) -> int:
        a = self.A
        e = 0
        for i in range(self.d):
            ni = n[i]
            if ni:
                row = a[i]
                for j in range(self.d):
                    if m[j]:
                        e += ni * row[j] * m[j]
        return e % self.N

    def comm_factor(self, n, m) -> CycNumber:
        """f(n, m) = sigma(n, m) / sigma(m, n) = zeta_N^(n^T A m)."""
        if self.corrupt_sigma:
            return self.sigma(n, m) * self.sigma(m, n).inverse()
        return self._roots[self.comm_exp(n, m)]

    def root(self, k: int) -> CycNumber:
        return self._roots[k % self.N]

    # -- radical ---------------------------------------------------------

    def in_radical(self, n) -> bool:
        n = self._point(n)
        return all(
            sum(self.A[i][j] * n[j] for j in range(self.d)) % self.N == 0
            for i in range(self.d)
        )

    def radical(self) -> RadicalBasis:
        cached = self._radical
        if cached is not None:
            return cached
        d, N = self.d, self.N
        basis = tuple(kernel_mod([list(r) for r in self.A], N))
        index = det_of_hnf(basis)
        axis = []
        for i in range(d):
            m = 1
            for j in range(d):
                a = self.A[j][i]
                m = lcm(m, N // gcd(N, a) if a else 1)
            axis.append(m)
        axis_orders = tuple(axis)
        diag = 1
        for m in axis_orders:
            diag *= m
        diagonal = diag == index
        result = RadicalBasis(
            basis=basis,
            axis_orders=axis_orders,
            diagonal=diagonal,
            diagonal_orders=axis_orders if diagonal else None,
            index=index,
        )
        object.__setattr__(self, "_radical", result)
        return result

    # -- serialization -----------------------------------------------------

    def to_json(self):
        return {"d": self.d, "N": self.N, "A": [list(r) for r in self.A]}

    @classmethod
    def from_json(cls, obj) -> "TorusSpec":
        try:
            d, n_ord, a = int(obj["d"]), int(obj["N"]), obj["A"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad torus spec: {exc}") from exc
        return cls(d, n_ord, a, corrupt_sigma=bool(obj.get("_corrupt_sigma", False)))


def enumerate_radical_residues(spec: TorusSpec, limit: int = 100_000):
    """All residues n mod N with A n == 0 (mod N); guard against blowup."""
    if spec.N**spec.d > limit:
        raise ValueError("residue enumeration too large")
    from itertools import product

    out = []
    for n in product(range(spec.N), repeat=spec.d):
        if spec.in_radical(n):
            out.append(n)
    return out
