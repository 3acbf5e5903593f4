"""The derivation Lie algebra of a rational quantum torus.

Homogeneous derivations come in two kinds, and a DerElement is a finite sum
of both:

* inner terms  c * ad(t^s)  for s outside rad(f); ad(t^s) with s in the
  radical is zero and is normalized away at construction;
* twisted Witt terms  witt(u, r) = t^r * sum_i u_i d_i  with r in rad(f)
  and u a cyclotomic coefficient vector (d_i the degree derivations).

Brackets, evaluated on monomials:

    [ad t^s, ad t^r]    = (sigma(s,r) - sigma(r,s)) ad t^(s+r)
    [witt(u,r), ad t^s] = <u,s> sigma(r,s) ad t^(r+s)
    [witt(u,r), witt(v,r')] = witt(w, r+r'),
        w = sigma(r,r') * (<u,r'> v - <v,r> u)

and the action on the torus:

    ad t^s . t^n     = (sigma(s,n) - sigma(n,s)) t^(s+n)
    witt(u,r) . t^n  = <u,n> sigma(r,n) t^(r+n)
"""

from __future__ import annotations

from .algebra import TorusElement, _as_coeff
from .cyclotomic import CycNumber
from .errors import NotInRadical, SpecMismatch
from .torus import TorusSpec


def pairing(u, n) -> CycNumber:
    """<u, n> = sum_i u_i * n_i for a coefficient vector against a lattice point."""
    out = CycNumber.zero()
    for ui, ni in zip(u, n):
        if ni:
            out = out + ui * ni
    return out


def _as_vector(spec, u) -> tuple[CycNumber, ...]:
    vec = tuple(_as_coeff(x) for x in u)
    if len(vec) != spec.d:
        raise SpecMismatch("coefficient vector length must equal the rank")
    return vec


class DerElement:
    __slots__ = ("spec", "inner", "witt")

    def __init__(self, spec: TorusSpec, inner=None, witt=None):
        self.spec = spec
        self.inner = {}
        self.witt = {}
        if inner:
            for s, c in inner.items():
                self._add_inner(spec._point(s), _as_coeff(c))
        if witt:
            for r, u in witt.items():
                self._add_witt(spec._point(r), _as_vector(spec, u))

    def _add_inner(self, s, c):
        if c.is_zero() or self.spec.in_radical(s):
            return
        acc = self.inner.get(s)
        v = c if acc is None else acc + c
        if v.is_zero():
            self.inner.pop(s, None)
        else:
            self.inner[s] = v

    def _add_witt(self, r, u):
        if not self.spec.in_radical(r):
            raise NotInRadical(f"witt degree {r} is not in rad(f)")
        acc = self.witt.get(r)
        v = u if acc is None else tuple(a + b for a, b in zip(acc, u))
        if any(not x.is_zero() for x in v):
            self.witt[r] = v
        else:
            self.witt.pop(r, None)

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, spec) -> "DerElement":
        return cls(spec)

    @classmethod
    def ad(cls, spec, s, coeff=1) -> "DerElement":
        """Inner derivation ad(t^s); zero when s is radical."""
        return cls(spec, inner={tuple(s): coeff})

    @classmethod
    def witt_term(cls, spec, u, r) -> "DerElement":
        """t^r sum_i u_i d_i; requires r in rad(f)."""
        return cls(spec, witt={tuple(r): u})

    @classmethod
    def degree_derivation(cls, spec, i) -> "DerElement":
        u = [0] * spec.d
        u[i] = 1
        return cls.witt_term(spec, u, (0,) * spec.d)

    # -- vector-space structure -------------------------------------------

    def _check(self, other):
        if self.spec != other.spec:
            raise SpecMismatch("operands live over different torus specs")

    def is_zero(self) -> bool:
        return not self.inner and not self.witt

    def __add__(self, other):
        if not isinstance(other, DerElement):
            return NotImplemented
        self._check(other)
        out = DerElement(self.spec)
        out.inner = dict(self.inner)
        out.witt = dict(self.witt)
        for s, c in other.inner.items():
            out._add_inner(s, c)
        for r, u in other.witt.items():
            out._add_witt(r, u)
        return out

    def __neg__(self):
        out = DerElement(self.spec)
        out.inner = {s: -c for s, c in self.inner.items()}
        out.witt = {r: tuple(-x for x in u) for r, u in self.witt.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, DerElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "DerElement":
        c = _as_coeff(c)
        out = DerElement(self.spec)
        if not c.is_zero():
            out.inner = {s: c * v for s, v in self.inner.items()}
            out.witt = {r: tuple(c * x for x in u) for r, u in self.witt.items()}
        return out

    def __eq__(self, other):
        if not isinstance(other, DerElement):
            return NotImplemented
        if self.spec != other.spec:
            return False
        if set(self.inner) != set(other.inner) or set(self.witt) != set(other.witt):
            return False
        return all(c == other.inner[s] for s, c in self.inner.items()) and all(
            all(a == b for a, b in zip(u, other.witt[r])) for r, u in self.witt.items()
        )

    __hash__ = None

    def grade(self, n) -> "DerElement":
        """Homogeneous component of lattice degree n."""
        n = self.spec._point(n)
        out = DerElement(self.spec)
        if n in self.inner:
            out.inner[n] = self.inner[n]
        if n in self.witt:
            out.witt[n] = self.witt[n]
        return out

    def degrees(self):
        return sorted(set(self.inner) | set(self.witt))

    def __repr__(self):
        bits = [f"({c!r})*ad t{list(s)}" for s, c in sorted(self.inner.items())]
        bits += [
            f"witt({[repr(x) for x in u]}, {list(r)})" for r, u in sorted(self.witt.items())
        ]
        return " + ".join(bits) if bits else "0"

    def to_json(self):
        return {
            "inner": [
                {"s": list(s), "c": c.to_json()} for s, c in sorted(self.inner.items())
            ],
            "witt": [
                {"r": list(r), "u": [x.to_json() for x in u]}
                for r, u in sorted(self.witt.items())
            ],
        }

    @classmethod
    def from_json(cls, spec, obj) -> "DerElement":
        out = cls.zero(spec)
        for row in obj.get("inner", ()):
            out._add_inner(spec._point(row["s"]), CycNumber.from_json(row["c"]))
        for row in obj.get("witt", ()):
            out._add_witt(
                spec._point(row["r"]),
                _as_vector(spec, [CycNumber.from_json(x) for x in row["u"]]),
            )
        return out


def dbracket(x: DerElement, y: DerElement) -> DerElement:
    """Lie bracket of derivations."""
    x._check(y)
    spec = x.spec
    out = DerElement(spec)
    # inner with inner
    for s, cs in x.inner.items():
        for r, cr in y.inner.items():
            c = cs * cr * (spec.sigma(s, r) - spec.sigma(r, s))
            out._add_inner(tuple(a + b for a, b in zip(s, r)), c)
    # witt with inner, both orders
    for r, u in x.witt.items():
        for s, cs in y.inner.items():
            c = cs * pairing(u, s) * spec.sigma(r, s)
            out._add_inner(tuple(a + b for a, b in zip(r, s)), c)
    for s, cs in x.inner.items():
        for r, u in y.witt.items():
            c = cs * pairing(u, s) * spec.sigma(r, s)
            out._add_inner(tuple(a + b for a, b in zip(r, s)), -c)
    # witt with witt
    for r, u in x.witt.items():
        for r2, v in y.witt.items():
            sig = spec.sigma(r, r2)
            cu = pairing(u, r2)
            cv = pairing(v, r)
            w = tuple(sig * (cu * vi - cv * ui) for ui, vi in zip(u, v))
            if any(not t.is_zero() for t in w):
                out._add_witt(tuple(a + b for a, b in zip(r, r2)), w)
    return out


def dact(x: DerElement, a: TorusElement) -> TorusElement:
    """Apply a derivation to a torus element."""
    if x.spec != a.spec:
        raise SpecMismatch("derivation and torus element specs differ")
    spec = x.spec
    out = TorusElement.zero(spec)
    acc: dict = {}

    def add(tgt, c):
        if c.is_zero():
            return
        cur = acc.get(tgt)
        s = c if cur is None else cur + c
        if s.is_zero():
            acc.pop(tgt, None)
        else:
            acc[tgt] = s

    for n, cn in a.terms.items():
        for s, cs in x.inner.items():
            add(
                tuple(p + q for p, q in zip(s, n)),
                cs * cn * (spec.sigma(s, n) - spec.sigma(n, s)),
            )
        for r, u in x.witt.items():
            add(
                tuple(p + q for p, q in zip(r, n)),
                cn * pairing(u, n) * spec.sigma(r, n),
            )
    out.terms = acc
    return out
