"""Elements of the quantum torus: exact Laurent combinations of monomials.

A TorusElement is a finite sum  sum_n  c_n * t^n  with cyclotomic
coefficients, stored sparsely as {lattice point: coefficient}.  The product
twists by the cocycle:  t^n * t^m = sigma(n, m) * t^(n+m).
"""

from __future__ import annotations

from .cyclotomic import CycNumber
from .errors import SpecMismatch
from .torus import TorusSpec


def _as_coeff(c) -> CycNumber:
    if isinstance(c, CycNumber):
        return c
    return CycNumber.rational(c)


class TorusElement:
    __slots__ = ("spec", "terms")

    def __init__(self, spec: TorusSpec, terms=None):
        self.spec = spec
        data = {}
        if terms:
            for n, c in terms.items():
                c = _as_coeff(c)
                if not c.is_zero():
                    data[spec._point(n)] = c
        self.terms = data

    @classmethod
    def zero(cls, spec) -> "TorusElement":
        return cls(spec)

    @classmethod
    def monomial(cls, spec, n, coeff=1) -> "TorusElement":
        return cls(spec, {tuple(n): coeff})

    @classmethod
    def one(cls, spec) -> "TorusElement":
        return cls.monomial(spec, (0,) * spec.d)

    def _check(self, other: "TorusElement"):
        if self.spec != other.spec:
            raise SpecMismatch("operands live over different torus specs")

    def is_zero(self) -> bool:
        return not self.terms

    def support(self):
        return sorted(self.terms)

    def __add__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for n, c in other.terms.items():
            acc = out.get(n)
            s = c if acc is None else acc + c
            if s.is_zero():
                out.pop(n, None)
            else:
                out[n] = s
        res = TorusElement(self.spec)
        res.terms = out
        return res

    def __neg__(self):
        res = TorusElement(self.spec)
        res.terms = {n: -c for n, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "TorusElement":
        c = _as_coeff(c)
        res = TorusElement(self.spec)
        if not c.is_zero():
            res.terms = {n: c * v for n, v in self.terms.items()}
        return res

    def __mul__(self, other):
        """Twisted product; scalars also accepted."""
        if isinstance(other, TorusElement):
            return tmul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        if self.spec != other.spec:
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(c == other.terms[n] for n, c in self.terms.items())

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = [f"({c!r})*t{list(n)}" for n, c in sorted(self.terms.items())]
        return " + ".join(bits)

    def to_json(self):
        return [
            {"n": list(n), "c": c.to_json()} for n, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, spec, obj) -> "TorusElement":
        out = cls.zero(spec)
        for row in obj:
            out = out + cls.monomial(spec, row["n"], CycNumber.from_json(row["c"]))
        return out


def tmul(a: TorusElement, b: TorusElement) -> TorusElement:
    a._check(b)
    spec = a.spec
    out: dict = {}
    for n, cn in a.terms.items():
        for m, cm in b.terms.items():
            tgt = tuple(x + y for x, y in zip(n, m))
            c = cn * cm * spec.sigma(n, m)
            acc = out.get(tgt)
            s = c if acc is None else acc + c
            if s.is_zero():
                out.pop(tgt, None)
            else:
                out[tgt] = s
    res = TorusElement(spec)
    res.terms = out
    return res


def tcomm(a: TorusElement, b: TorusElement) -> TorusElement:
    """Commutator bracket [a, b] = a*b - b*a."""
    return tmul(a, b) - tmul(b, a)


def is_central(a: TorusElement) -> bool:
    """True iff the support sits inside rad(f); cross-checked against the
    generator monomials actually commuting with the element."""
    by_support = all(a.spec.in_radical(n) for n in a.terms)
    by_comm = True
    for i in range(a.spec.d):
        for sign in (1, -1):
            g = TorusElement.monomial(a.spec, tuple(sign if j == i else 0 for j in range(a.spec.d)))
            if not tcomm(a, g).is_zero():
                by_comm = False
                break
        if not by_comm:
            break
    if by_support != by_comm:
        raise AssertionError("centrality criteria disagree; spec data corrupt?")
    return by_support
