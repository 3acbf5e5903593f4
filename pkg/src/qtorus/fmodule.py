"""Weight modules over the semidirect algebra, truncated to a lattice box.

A module is V ⊗ (Laurent lattice), where V is a finite-dimensional gl
module.  The vector v ⊗ t^n is written v(n); the weight of v(n) under the
degree derivations is n + alpha for a fixed shift vector alpha.  Three
action flavors are supported, differing only in how the inner derivations
act (g is a multiplicative twist character, trivial on rad(f)):

    t^m      v(n) = sigma(m,n) v(m+n)                      (all flavors)
    D(u,r)   v(n) = sigma(r,n)((u,n+alpha) Id + r u^T) v(r+n)   (all flavors)
    ad t^s   v(n) = (sigma(s,n)        - sigma(n,s)) v(s+n)     flavor F
                    (sigma(s,n) g(s)   - sigma(n,s)) v(s+n)     flavor F_g
                    (sigma(s,n) - g(s) sigma(n,s))   v(s+n)     flavor G_g

Everything is truncated to a finite box: coefficients pushed outside are
dropped and the vector is flagged as truncated.  Verification helpers
therefore evaluate identities only at start points whose every intermediate
image provably stays inside the box (the expression "interior").

The operator layer builds formal expressions sum_t c_t * (x_1 ... x_k)
from homogeneous algebra elements, composes them exactly, and provides:
weight-space matrices, the degree-zero weight operators, zero-mode scalars,
twist-character extraction, diagonal intertwiner checks, a twist-equivalence
search, and irreducibility evidence.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _iproduct
from math import gcd

from .algebra import TorusElement, _as_coeff
from .cyclotomic import CycNumber, root_of_unity
from .derivations import DerElement, pairing
from .errors import (
    ConfigError,
    NotCharacter,
    NotScalar,
    OutOfBox,
    SpecMismatch,
)
from .glmodules import GlModule, Span, mat_vec
from .semidirect import GElement
from .torus import TorusSpec


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# -- characters of the degree lattice ---------------------------------------


class DiagonalCharacter:
    """Multiplicative map Z^d -> roots of unity: n |-> zeta_M^<k, n>."""

    __slots__ = ("modulus", "exponents")

    def __init__(self, modulus: int, exponents):
        if modulus < 1:
            raise ConfigError("character modulus must be positive")
        self.modulus = modulus
        self.exponents = tuple(int(k) % modulus for k in exponents)

    def value(self, n) -> CycNumber:
        e = sum(k * x for k, x in zip(self.exponents, n))
        return root_of_unity(self.modulus, e)

    def inverse(self) -> "DiagonalCharacter":
        return DiagonalCharacter(self.modulus, tuple(-k for k in self.exponents))

    @property
    def is_trivial(self) -> bool:
        return all(k == 0 for k in self.exponents)

    def __eq__(self, other):
        if not isinstance(other, DiagonalCharacter):
            return NotImplemented
        if len(self.exponents) != len(other.exponents):
            return False
        d = len(self.exponents)
        return all(
            self.value(pt) == other.value(pt)
            for pt in ([0] * i + [1] + [0] * (d - i - 1) for i in range(d))
        )

    __hash__ = None

    def __repr__(self):
        return f"DiagonalCharacter(M={self.modulus}, k={list(self.exponents)})"

    def to_json(self):
        return {"modulus": self.modulus, "exponents": list(self.exponents)}


class TwistCharacter(DiagonalCharacter):
    """Diagonal character additionally required to be trivial on rad(f)."""

    __slots__ = ("spec",)

    def __init__(self, spec: TorusSpec, modulus: int, exponents):
        super().__init__(modulus, exponents)
        if len(self.exponents) != spec.d:
            raise ConfigError("character exponent vector length must equal the rank")
        self.spec = spec
        one = CycNumber.one()
        for row in spec.radical().basis:
            if self.value(row) != one:
                raise NotCharacter(
                    f"twist character is not trivial on radical vector {list(row)}"
                )

    @classmethod
    def trivial(cls, spec: TorusSpec) -> "TwistCharacter":
        return cls(spec, 1, (0,) * spec.d)

    def inverse(self) -> "TwistCharacter":
        return TwistCharacter(self.spec, self.modulus, tuple(-k for k in self.exponents))

    @classmethod
    def from_values(cls, spec: TorusSpec, values) -> "TwistCharacter":
        """Fit a character from its values on the unit vectors e_i.

        Values must be roots of unity; the conductor is the lcm of their
        orders.  Raises NotCharacter otherwise or if the result is not
        trivial on the radical.
        """
        orders, residues = [], []
        for v in values:
            k = v.as_root_exponent()
            if k is None:
                raise NotCharacter("sampled twist value is not a root of unity")
            g = gcd(k, v.M) if k else v.M
            orders.append(v.M // g)
            residues.append((k // g) % (v.M // g) if v.M // g > 1 else 0)
        m = 1
        for o in orders:
            m = _lcm(m, o)
        exps = [r * (m // o) for r, o in zip(residues, orders)]
        return cls(spec, m, exps)

    def to_json(self):
        return {"modulus": self.modulus, "exponents": list(self.exponents)}

    @classmethod
    def from_json(cls, spec: TorusSpec, obj) -> "TwistCharacter":
        if obj is None:
            return cls.trivial(spec)
        return cls(spec, int(obj["modulus"]), obj["exponents"])


FLAVORS = ("F", "F_g", "G_g")


class ModuleSpec:
    """All the data selecting one weight module: torus, gl module V,
    weight shift alpha, twist character, and action flavor."""

    __slots__ = ("spec", "V", "alpha", "twist", "flavor")

    def __init__(self, spec: TorusSpec, V: GlModule, alpha, twist: TwistCharacter, flavor: str):
        if V.d != spec.d:
            raise ConfigError("gl rank of V must equal the torus rank")
        if flavor not in FLAVORS:
            raise ConfigError(f"flavor must be one of {FLAVORS}, got {flavor!r}")
        alpha = tuple(_as_coeff(a) for a in alpha)
        if len(alpha) != spec.d:
            raise ConfigError("alpha must have one entry per rank")
        if twist.spec != spec:
            raise ConfigError("twist character was validated against a different spec")
        if flavor == "F" and not twist.is_trivial:
            raise ConfigError("flavor F requires the constant-1 twist")
        self.spec = spec
        self.V = V
        self.alpha = alpha
        self.twist = twist
        self.flavor = flavor

    def label(self) -> str:
        a = ",".join(str(x.as_rational()) if x.is_rational() else repr(x) for x in self.alpha)
        return f"d={self.spec.d},N={self.spec.N};V={self.V.name};alpha=({a});flavor={self.flavor}"

    def __repr__(self):
        return f"ModuleSpec({self.label()})"


# -- box-truncated vectors ---------------------------------------------------


def _in_box(box, n) -> bool:
    return all(-r <= x <= r for r, x in zip(box, n))


class BoxVector:
    __slots__ = ("box", "dim", "entries", "truncated")

    def __init__(self, box, dim: int, entries=None, truncated: bool = False):
        self.box = tuple(int(r) for r in box)
        if any(r < 0 for r in self.box):
            raise ConfigError("box radii must be nonnegative")
        self.dim = dim
        self.entries = {}
        self.truncated = truncated
        if entries:
            for n, w in entries.items():
                self._add(tuple(n), tuple(_as_coeff(x) for x in w))

    def _add(self, n, w):
        if len(w) != self.dim:
            raise SpecMismatch("weight-space vector has the wrong dimension")
        if not _in_box(self.box, n):
            self.truncated = True
            return
        cur = self.entries.get(n)
        v = w if cur is None else tuple(a + b for a, b in zip(cur, w))
        if any(not x.is_zero() for x in v):
            self.entries[n] = v
        else:
            self.entries.pop(n, None)

    @classmethod
    def zero(cls, box, dim) -> "BoxVector":
        return cls(box, dim)

    @classmethod
    def basis_vector(cls, box, dim, n, t) -> "BoxVector":
        w = [CycNumber.zero()] * dim
        w[t] = CycNumber.one()
        return cls(box, dim, {tuple(n): w})

    def get(self, n):
        return self.entries.get(tuple(n), (CycNumber.zero(),) * self.dim)

    def is_zero(self) -> bool:
        return not self.entries

    def support(self):
        return sorted(self.entries)

    def __add__(self, other):
        if not isinstance(other, BoxVector):
            return NotImplemented
        if self.box != other.box or self.dim != other.dim:
            raise SpecMismatch("box vectors live in different truncations")
        out = BoxVector(self.box, self.dim, truncated=self.truncated or other.truncated)
        out.entries = dict(self.entries)
        for n, w in other.entries.items():
            out._add(n, w)
        return out

    def __neg__(self):
        out = BoxVector(self.box, self.dim, truncated=self.truncated)
        out.entries = {n: tuple(-x for x in w) for n, w in self.entries.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, BoxVector):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "BoxVector":
        c = _as_coeff(c)
        out = BoxVector(self.box, self.dim, truncated=self.truncated)
        if not c.is_zero():
            out.entries = {n: tuple(c * x for x in w) for n, w in self.entries.items()}
        return out

    def map_points(self, fn) -> "BoxVector":
        """New vector with entry at n replaced by fn(n, w) -> (point, vector)."""
        out = BoxVector(self.box, self.dim, truncated=self.truncated)
        for n, w in self.entries.items():
            tgt, w2 = fn(n, w)
            out._add(tuple(tgt), tuple(w2))
        return out

    def __eq__(self, other):
        if not isinstance(other, BoxVector):
            return NotImplemented
        if self.box != other.box or set(self.entries) != set(other.entries):
            return False
        return all(
            all(a == b for a, b in zip(w, other.entries[n]))
            for n, w in self.entries.items()
        )

    __hash__ = None

    def first_nonzero(self):
        """Deterministic witness coefficient, or None when zero."""
        for n in sorted(self.entries):
            for x in self.entries[n]:
                if not x.is_zero():
                    return x
        return None

    def __repr__(self):
        bits = [f"v{list(n)}:{[repr(x) for x in w]}" for n, w in sorted(self.entries.items())]
        flag = " (truncated)" if self.truncated else ""
        return ("0" if not bits else " + ".join(bits)) + flag

    def to_json(self):
        return {
            "box": list(self.box),
            "dim": self.dim,
            "truncated": self.truncated,
            "entries": [
                {"n": list(n), "w": [x.to_json() for x in w]}
                for n, w in sorted(self.entries.items())
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "BoxVector":
        out = cls(obj["box"], int(obj["dim"]), truncated=bool(obj.get("truncated", False)))
        for row in obj.get("entries", ()):
            out._add(tuple(row["n"]), tuple(CycNumber.from_json(x) for x in row["w"]))
        return out


# -- the action ---------------------------------------------------------------


def _as_gelement(x, spec) -> GElement:
    if isinstance(x, GElement):
        return x
    if isinstance(x, DerElement):
        return GElement.from_der(x)
    if isinstance(x, TorusElement):
        return GElement.from_torus(x)
    raise SpecMismatch(f"cannot act by {type(x).__name__}")


def _outer_matrix(ms: ModuleSpec, r, u):
    """Matrix of sum_ij r_i u_j E_ij on V."""
    d = ms.spec.d
    coeffs = [[u[j] * r[i] for j in range(d)] for i in range(d)]
    return ms.V.matrix_of(coeffs)


def act(x, w: BoxVector, ms: ModuleSpec) -> BoxVector:
    """Apply one algebra element to a box vector under the flavor rules."""
    x = _as_gelement(x, ms.spec)
    if x.spec != ms.spec:
        raise SpecMismatch("element and module live over different torus specs")
    if w.dim != ms.V.dim:
        raise SpecMismatch("vector dimension does not match V")
    spec = ms.spec
    g = ms.twist
    flavor = ms.flavor
    out = BoxVector(w.box, w.dim, truncated=w.truncated)
    witt_mats = {
        r: _outer_matrix(ms, r, u) for r, u in x.der.witt.items()
    }
    for n, coords in w.entries.items():
        for m, c in x.torus.terms.items():
            coeff = c * spec.sigma(m, n)
            out._add(
                tuple(a + b for a, b in zip(m, n)),
                tuple(coeff * y for y in coords),
            )
        for s, c in x.der.inner.items():
            if flavor == "F":
                phase = spec.sigma(s, n) - spec.sigma(n, s)
            elif flavor == "F_g":
                phase = spec.sigma(s, n) * g.value(s) - spec.sigma(n, s)
            else:  # G_g
                phase = spec.sigma(s, n) - g.value(s) * spec.sigma(n, s)
            coeff = c * phase
            if not coeff.is_zero():
                out._add(
                    tuple(a + b for a, b in zip(s, n)),
                    tuple(coeff * y for y in coords),
                )
        for r, u in x.der.witt.items():
            sig = spec.sigma(r, n)
            scalar = CycNumber.zero()
            for ui, ni, ai in zip(u, n, ms.alpha):
                scalar = scalar + ui * (ai + ni)
            moved = mat_vec(witt_mats[r], coords)
            out._add(
                tuple(a + b for a, b in zip(r, n)),
                tuple(sig * (scalar * y + z) for y, z in zip(coords, moved)),
            )
    return out


def diagonal_map(w: BoxVector, fn) -> BoxVector:
    """Scale the weight component at each point n by fn(n)."""
    return w.map_points(lambda n, coords: (n, tuple(fn(n) * x for x in coords)))


# -- formal operator expressions ----------------------------------------------
#
# An OpExpr is a list of (coefficient, [factors]) terms; factors are
# homogeneous algebra elements applied right to left.  Homogeneity makes the
# in-box interior of a composition exactly computable.


def _degree_of(x: GElement):
    degs = set(x.der.inner) | set(x.der.witt) | set(x.torus.terms)
    if len(degs) != 1:
        raise SpecMismatch("operator factors must be homogeneous of a single degree")
    return next(iter(degs))


def expr_of(x, spec) -> list:
    return [(CycNumber.one(), [_as_gelement(x, spec)])]


def expr_scale(e, c) -> list:
    c = _as_coeff(c)
    return [(c * ce, fs) for ce, fs in e]


def expr_sum(*exprs) -> list:
    out = []
    for e in exprs:
        out.extend(e)
    return out


def expr_neg(e) -> list:
    return [(-c, fs) for c, fs in e]


def expr_mul(a, b) -> list:
    """Composition: every term of `a` applied after every term of `b`."""
    return [(ca * cb, fa + fb) for ca, fa in a for cb, fb in b]


def expr_commutator(a, b) -> list:
    return expr_sum(expr_mul(a, b), expr_neg(expr_mul(b, a)))


def _term_offsets(factors):
    """Cumulative degree offsets seen while applying factors right to left,
    including 0 (start) and the net degree (end)."""
    d = None
    offs = [None]
    total = None
    for f in reversed(factors):
        deg = _degree_of(f)
        if total is None:
            total = tuple(deg)
            d = len(deg)
            offs = [(0,) * d, total]
        else:
            total = tuple(a + b for a, b in zip(total, deg))
            offs.append(total)
    if total is None:
        raise SpecMismatch("empty factor list")
    return offs


def expr_interior(box, expr):
    """Per-axis (lo, hi) of start points n such that every intermediate image
    of every term stays inside the box; None when empty."""
    d = len(box)
    lo = [-r for r in box]
    hi = [r for r in box]
    for _, factors in expr:
        for off in _term_offsets(factors):
            for i in range(d):
                lo[i] = max(lo[i], -box[i] - off[i])
                hi[i] = min(hi[i], box[i] - off[i])
    if any(l > h for l, h in zip(lo, hi)):
        return None
    return list(zip(lo, hi))


def interior_points(ranges):
    if ranges is None:
        return []
    return [tuple(p) for p in _iproduct(*[range(lo, hi + 1) for lo, hi in ranges])]


def expr_net_degrees(expr):
    return {_term_offsets(fs)[-1] for _, fs in expr}


def apply_expr(expr, w: BoxVector, ms: ModuleSpec) -> BoxVector:
    out = BoxVector(w.box, w.dim, truncated=w.truncated)
    for c, factors in expr:
        cur = w
        for f in reversed(factors):
            cur = act(f, cur, ms)
        out = out + cur.scale(c)
    return out


def expr_first_defect(expr, ms: ModuleSpec, box, rng=None, limit=None):
    """Apply the expression to basis vectors starting inside its interior and
    return the first nonzero coefficient of any result (None when the
    expression vanishes on all of them).  With rng and limit set, a seeded
    sample of interior points is probed instead of all of them."""
    dim = ms.V.dim
    pts = interior_points(expr_interior(box, expr))
    if rng is not None and limit is not None and len(pts) > limit:
        pts = [pts[i] for i in sorted(rng.sample(range(len(pts)), limit))]
    for n in pts:
        for t in range(dim):
            w = BoxVector.basis_vector(box, dim, n, t)
            defect = apply_expr(expr, w, ms).first_nonzero()
            if defect is not None:
                return defect
    return None


def expr_weight_matrix(expr, ms: ModuleSpec, box, n):
    """Matrix of a net-degree-zero expression on the weight space at n."""
    degs = expr_net_degrees(expr)
    if degs != {(0,) * ms.spec.d}:
        raise SpecMismatch("expression does not preserve the weight grading")
    ranges = expr_interior(box, expr)
    n = tuple(n)
    if ranges is None or not all(lo <= x <= hi for x, (lo, hi) in zip(n, ranges)):
        raise OutOfBox(f"weight point {list(n)} leaves the box under this operator")
    dim = ms.V.dim
    cols = []
    for t in range(dim):
        w = BoxVector.basis_vector(box, dim, n, t)
        cols.append(apply_expr(expr, w, ms).get(n))
    return [[cols[t][i] for t in range(dim)] for i in range(dim)]


def matrix_as_scalar(M):
    """The scalar c with M = c*Id, or None; compares against trace/dim."""
    dim = len(M)
    tr = CycNumber.zero()
    for i in range(dim):
        tr = tr + M[i][i]
    c = tr * Fraction(1, dim)
    for i in range(dim):
        for j in range(dim):
            expect = c if i == j else CycNumber.zero()
            if M[i][j] != expect:
                return None
    return c


# -- named operators -----------------------------------------------------------


def _neg(n):
    return tuple(-x for x in n)


def op_torus(spec, m) -> GElement:
    return GElement.from_torus(TorusElement.monomial(spec, m))


def op_inner(spec, s) -> GElement:
    return GElement.from_der(DerElement.ad(spec, s))


def op_witt(spec, u, r) -> GElement:
    return GElement.from_der(DerElement.witt_term(spec, u, r))


def weight_op_expr(ms: ModuleSpec, u, r) -> list:
    """T'(u,r) = t^(-r) D(u,r) - sigma(-r,r) D(u,0): degree zero on weights."""
    spec = ms.spec
    r = spec._point(r)
    u = [_as_coeff(x) for x in u]
    if all(x.is_zero() for x in u):
        return []
    zero = (0,) * spec.d
    head = [(CycNumber.one(), [op_torus(spec, _neg(r)), op_witt(spec, u, r)])]
    tail = expr_scale([(CycNumber.one(), [op_witt(spec, u, zero)])], spec.sigma(_neg(r), r))
    return expr_sum(head, expr_neg(tail))


def weight_op_matrix(ms: ModuleSpec, u, r, n, box):
    """Matrix of the degree-zero weight operator on the weight space at n."""
    return expr_weight_matrix(weight_op_expr(ms, u, r), ms, box, n)


def zero_mode_expr(ms: ModuleSpec, s) -> list:
    """t^(-s) ad t^s; the empty expression (zero operator) for radical s."""
    spec = ms.spec
    s = spec._point(s)
    if spec.in_radical(s):
        return []
    return [(CycNumber.one(), [op_torus(spec, _neg(s)), op_inner(spec, s)])]


def zero_mode_scalar(ms: ModuleSpec, s, n, box) -> CycNumber:
    """The scalar by which t^(-s) ad t^s acts on the weight space at n.

    Raises NotScalar if the restricted operator is not a scalar matrix."""
    e = zero_mode_expr(ms, s)
    if not e:
        return CycNumber.zero()
    M = expr_weight_matrix(e, ms, box, n)
    c = matrix_as_scalar(M)
    if c is None:
        raise NotScalar(f"zero-mode operator at degree {list(s)} is not scalar")
    return c


# -- identity checks -----------------------------------------------------------


def torus_product_relation_expr(ms: ModuleSpec, m, n) -> list:
    """t^m t^n - sigma(m,n) t^(m+n), as an operator expression."""
    spec = ms.spec
    m, n = spec._point(m), spec._point(n)
    mn = tuple(a + b for a, b in zip(m, n))
    return expr_sum(
        [(CycNumber.one(), [op_torus(spec, m), op_torus(spec, n)])],
        expr_scale([(CycNumber.one(), [op_torus(spec, mn)])], -spec.sigma(m, n)),
    )


def _inner_minus_torus_expr(ms: ModuleSpec, k) -> list:
    spec = ms.spec
    e = []
    kk = spec._point(k)
    inner = op_inner(spec, kk)
    if not inner.is_zero():
        e.append((CycNumber.one(), [inner]))
    e.append((-CycNumber.one(), [op_torus(spec, kk)]))
    return e


def c2_product_expr(ms: ModuleSpec, n, m) -> list:
    """(ad t^n - t^n)(ad t^m - t^m) + sigma(m,n)(ad t^(m+n) - t^(m+n))."""
    spec = ms.spec
    n, m = spec._point(n), spec._point(m)
    nm = tuple(a + b for a, b in zip(n, m))
    return expr_sum(
        expr_mul(_inner_minus_torus_expr(ms, n), _inner_minus_torus_expr(ms, m)),
        expr_scale(_inner_minus_torus_expr(ms, nm), spec.sigma(m, n)),
    )


def c2_product_check(ms: ModuleSpec, n, m, box, rng=None, limit=None):
    """First defect of the quadratic product relation, or None."""
    return expr_first_defect(c2_product_expr(ms, n, m), ms, box, rng=rng, limit=limit)


def ideal_relations_vanish(
    ms: ModuleSpec, box, rng, samples: int, limit: int = 6, quadratic: bool = True
):
    """Sample the relation families and report the first defect.

    Families: the torus product rule; the quadratic rule for ad t^k - t^k
    (only when ``quadratic`` is set -- it holds when the twist multiplies
    the right-translation term, i.e. for the plain and G-twist flavors);
    and t^0 acting as the identity."""
    spec = ms.spec
    radius = max(box)
    defect = None
    count = 0
    for _ in range(samples):
        m = tuple(rng.randint(-radius, radius) for _ in range(spec.d))
        n = tuple(rng.randint(-radius, radius) for _ in range(spec.d))
        count += 1
        d1 = expr_first_defect(
            torus_product_relation_expr(ms, m, n), ms, box, rng=rng, limit=limit
        )
        if d1 is not None and defect is None:
            defect = d1
        if not quadratic:
            continue
        d2 = expr_first_defect(c2_product_expr(ms, n, m), ms, box, rng=rng, limit=limit)
        if d2 is not None and defect is None:
            defect = d2
    # identity family: t^0 w = w on every in-box basis vector
    dim = ms.V.dim
    for p in interior_points([(-r, r) for r in box]):
        for t in range(dim):
            w = BoxVector.basis_vector(box, dim, p, t)
            diff = act(op_torus(spec, (0,) * spec.d), w, ms) - w
            bad = diff.first_nonzero()
            if bad is not None and defect is None:
                defect = bad
    return {"pass": defect is None, "defect": defect, "samples": count}


def inner_quadratic_relation_check(ms: ModuleSpec, r, s, box, rng=None, limit=None):
    """ad t^r ad t^s - (t^r ad t^s + t^s ad t^r) + sigma(s,r) ad t^(r+s)."""
    spec = ms.spec
    r, s = spec._point(r), spec._point(s)
    rs = tuple(a + b for a, b in zip(r, s))
    def inner_expr(k):
        x = op_inner(spec, k)
        return [] if x.is_zero() else [(CycNumber.one(), [x])]
    def compose(head, tail):
        if not head or not tail:
            return []
        return expr_mul(head, tail)
    terms = expr_sum(
        compose(inner_expr(r), inner_expr(s)),
        expr_neg(compose([(CycNumber.one(), [op_torus(spec, r)])], inner_expr(s))),
        expr_neg(compose([(CycNumber.one(), [op_torus(spec, s)])], inner_expr(r))),
        expr_scale(inner_expr(rs), spec.sigma(s, r)),
    )
    if not terms:
        return None
    return expr_first_defect(terms, ms, box, rng=rng, limit=limit)


def zero_modes_commute_check(ms: ModuleSpec, r, s, box, rng=None, limit=None):
    """[t^(-s) ad t^s, t^(-r) ad t^r] must vanish on the box interior."""
    e = expr_commutator(zero_mode_expr(ms, s), zero_mode_expr(ms, r))
    return expr_first_defect(e, ms, box, rng=rng, limit=limit)


def zero_mode_ideal_check(ms: ModuleSpec, u, r, s, box, rng=None, limit=None):
    """Bracket of a weight operator with a zero mode, against its closed form.

    [T'(u,r), t^(-s) ad t^s]
        = sigma(s,r)(u,s)sigma(r,s) t^(-(s+r)) ad t^(r+s)
          - sigma(-r,r)(u,s) t^(-s) ad t^s
    """
    spec = ms.spec
    r, s = spec._point(r), spec._point(s)
    u = [_as_coeff(x) for x in u]
    lhs = expr_commutator(weight_op_expr(ms, u, r), zero_mode_expr(ms, s))
    us = pairing(u, s)
    sr = tuple(a + b for a, b in zip(s, r))
    rhs = expr_sum(
        expr_scale(zero_mode_expr(ms, sr), spec.sigma(s, r) * us * spec.sigma(r, s)),
        expr_scale(zero_mode_expr(ms, s), -(spec.sigma(_neg(r), r) * us)),
    )
    return expr_first_defect(expr_sum(lhs, expr_neg(rhs)), ms, box, rng=rng, limit=limit)


def weight_op_bracket_check(ms: ModuleSpec, u, r, v, s, box, rng=None, limit=None):
    """[T'(u,r), T'(v,s)] against its closed combination of weight operators."""
    spec = ms.spec
    r, s = spec._point(r), spec._point(s)
    u = [_as_coeff(x) for x in u]
    v = [_as_coeff(x) for x in v]
    lhs = expr_commutator(weight_op_expr(ms, u, r), weight_op_expr(ms, v, s))
    vr = pairing(v, r)
    us = pairing(u, s)
    srs = spec.sigma(r, s)
    w = [srs * (us * vi - vr * ui) for ui, vi in zip(u, v)]
    rs = tuple(a + b for a, b in zip(r, s))
    rhs = expr_sum(
        expr_scale(weight_op_expr(ms, u, r), vr * spec.sigma(_neg(s), s)),
        expr_scale(weight_op_expr(ms, v, s), -(us * spec.sigma(_neg(r), r))),
        expr_scale(weight_op_expr(ms, w, rs), spec.sigma(s, r)),
    )
    return expr_first_defect(expr_sum(lhs, expr_neg(rhs)), ms, box, rng=rng, limit=limit)


def zero_mode_recursion_check(ms: ModuleSpec, s, box, points):
    """lambda(s, r) = f(r,s) lambda(s,0) + sigma(-s,s)(1 - f(r,s))."""
    spec = ms.spec
    s = spec._point(s)
    zero = (0,) * spec.d
    lam0 = zero_mode_scalar(ms, s, zero, box)
    base = spec.sigma(_neg(s), s)
    one = CycNumber.one()
    for rpt in points:
        lam = zero_mode_scalar(ms, s, rpt, box)
        f = spec.comm_factor(rpt, s)
        expect = f * lam0 + base * (one - f)
        if lam != expect:
            return lam - expect
    return None


def extract_twist(ms: ModuleSpec, box, rng=None, extra_points=()) -> TwistCharacter:
    """Recover the twist character from zero-mode scalars at the origin.

    For flavors F and G_g: g(s) = 1 - sigma(s,s) lambda(s,0); flavor F_g
    carries the opposite sign: g(s) = 1 + sigma(s,s) lambda(s,0).  Values
    are taken on the unit vectors, fitted to a character, then verified
    multiplicatively on the radical basis and any extra sample points."""
    spec = ms.spec
    zero = (0,) * spec.d
    one = CycNumber.one()
    sign = 1 if ms.flavor == "F_g" else -1

    def g_at(s):
        lam = zero_mode_scalar(ms, s, zero, box)
        val = spec.sigma(s, s) * lam
        out = one + val if sign > 0 else one - val
        if out.as_root_exponent() is None:
            raise NotCharacter(f"recovered twist value at {list(s)} is not a root of unity")
        return out

    units = [tuple(1 if j == i else 0 for j in range(spec.d)) for i in range(spec.d)]
    char = TwistCharacter.from_values(spec, [g_at(e) for e in units])
    check_points = [tuple(r) for r in spec.radical().basis]
    check_points += [tuple(p) for p in extra_points]
    if rng is not None:
        radius = max(1, min(box) - 1)
        for _ in range(8):
            check_points.append(tuple(rng.randint(-radius, radius) for _ in range(spec.d)))
    for p in check_points:
        if not _in_box(box, p) or not _in_box(box, _neg(p)):
            continue
        if g_at(p) != char.value(p):
            raise NotCharacter(
                f"twist values are not multiplicative: mismatch at {list(p)}"
            )
    return char


def intertwiner_check(ms_G: ModuleSpec, box, rng=None):
    """Diagonal comparison of a G_g module with the matching F_(g^-1) module.

    The map v(n) |-> g(n)^(-1) v(n) must commute with the derivation action
    (Witt operators and inner operators; the torus action is deliberately
    not part of the contract).  Returns {'pass', 'defect'}."""
    spec = ms_G.spec
    if ms_G.flavor != "G_g":
        raise ConfigError("intertwiner check starts from a G_g module")
    ginv = ms_G.twist.inverse()
    ms_F = ModuleSpec(spec, ms_G.V, ms_G.alpha, ginv, "F_g")
    gens = []
    units = [tuple(1 if j == i else 0 for j in range(spec.d)) for i in range(spec.d)]
    zero = (0,) * spec.d
    for i, e in enumerate(units):
        u = [0] * spec.d
        u[i] = 1
        gens.append(op_witt(spec, u, zero))
        for row in spec.radical().basis:
            gens.append(op_witt(spec, u, tuple(row)))
        g_el = op_inner(spec, e)
        if not g_el.is_zero():
            gens.append(g_el)
    if rng is not None:
        rad = spec.radical()
        for _ in range(6):
            u = [CycNumber.rational(rng.randint(-2, 2)) for _ in range(spec.d)]
            if all(x.is_zero() for x in u):
                u[0] = CycNumber.one()
            coeffs = [rng.randint(-1, 1) for _ in rad.basis]
            r = tuple(
                sum(c * row[i] for c, row in zip(coeffs, rad.basis))
                for i in range(spec.d)
            )
            gens.append(op_witt(spec, u, r))
            s = tuple(rng.randint(-2, 2) for _ in range(spec.d))
            x = op_inner(spec, s)
            if not x.is_zero():
                gens.append(x)
    inv_val = ginv.value
    defect = None
    dim = ms_G.V.dim
    for x in gens:
        deg = _degree_of(x)
        pts = [
            n
            for n in interior_points([(-r, r) for r in box])
            if _in_box(box, tuple(a + b for a, b in zip(n, deg)))
        ]
        for n in pts:
            for t in range(dim):
                w = BoxVector.basis_vector(box, dim, n, t)
                lhs = diagonal_map(act(x, w, ms_G), inv_val)
                rhs = act(x, diagonal_map(w, inv_val), ms_F)
                bad = (lhs - rhs).first_nonzero()
                if bad is not None and defect is None:
                    defect = bad
    return {"pass": defect is None, "defect": defect}


def weight_shift_check(ms: ModuleSpec, r, s, box):
    """The torus transport t^(r-s): V'_s -> V'_r.

    Verified: it scales weight vectors by the single nonzero scalar
    sigma(r-s, s) (hence bijective); it commutes with the weight operators;
    and the round trip t^(s-r) t^(r-s) is the scalar sigma(r-s, s-r)."""
    spec = ms.spec
    r, s = spec._point(r), spec._point(s)
    delta = tuple(a - b for a, b in zip(r, s))
    if not (_in_box(box, r) and _in_box(box, s)):
        raise OutOfBox("both weight points must lie in the box")
    dim = ms.V.dim
    scale = spec.sigma(delta, s)  # a root of unity, hence invertible
    defect = None
    # transport acts as the expected scalar on every basis vector of V'_s
    for t in range(dim):
        w = BoxVector.basis_vector(box, dim, s, t)
        got = act(op_torus(spec, delta), w, ms)
        expect = BoxVector.basis_vector(box, dim, r, t).scale(scale)
        bad = (got - expect).first_nonzero()
        if bad is not None and defect is None:
            defect = bad
    # round trip is the scalar sigma(r-s, s-r)
    round_scale = spec.sigma(delta, _neg(delta))
    for t in range(dim):
        w = BoxVector.basis_vector(box, dim, s, t)
        got = act(op_torus(spec, _neg(delta)), act(op_torus(spec, delta), w, ms), ms)
        bad = (got - w.scale(round_scale)).first_nonzero()
        if bad is not None and defect is None:
            defect = bad
    # transport commutes with the weight operators
    units = [tuple(1 if j == i else 0 for j in range(spec.d)) for i in range(spec.d)]
    rad_rows = [tuple(row) for row in spec.radical().basis]
    for u_e in units:
        for rr in rad_rows:
            ok_r = _in_box(box, tuple(a + b for a, b in zip(r, rr)))
            ok_s = _in_box(box, tuple(a + b for a, b in zip(s, rr)))
            if not (ok_r and ok_s):
                continue
            u = [1 if x else 0 for x in u_e]
            Ms = weight_op_matrix(ms, u, rr, s, box)
            Mr = weight_op_matrix(ms, u, rr, r, box)
            for a in range(dim):
                for b in range(dim):
                    if Ms[a][b] != Mr[a][b] and defect is None:
                        defect = Ms[a][b] - Mr[a][b]
    return {"pass": defect is None, "defect": defect, "scale": scale}


def irreducibility_evidence(ms: ModuleSpec, box, inner_radius: int, rng=None, random_starts: int = 5):
    """Cyclicity probe: does every start vector generate every inner weight space?

    The probe factors through three computationally verified facts:
    (1) the weight operators' matrices are constant across the inner box;
    (2) the torus transports between inner points are bijective scalings;
    (3) from each start vector, the V-coordinates close up to all of V under
        the weight-operator matrices.
    Together these are equivalent to the spanning statement over the inner
    box; each part is checked honestly per run."""
    spec = ms.spec
    d = spec.d
    dim = ms.V.dim
    if any(inner_radius > r for r in box):
        raise OutOfBox("inner radius exceeds the box")
    inner = [tuple(p) for p in _iproduct(*[range(-inner_radius, inner_radius + 1)] * d)]
    units = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
    rad_rows = [tuple(row) for row in spec.radical().basis]
    generators = []
    for rr in rad_rows:
        for e in units:
            u = [1 if x else 0 for x in e]
            generators.append((u, rr))
    # (1) matrices constant across the inner box
    mats = []
    constant = True
    for u, rr in generators:
        usable = [n for n in inner if _in_box(box, tuple(a + b for a, b in zip(n, rr)))]
        if not usable:
            continue
        M0 = weight_op_matrix(ms, u, rr, usable[0], box)
        mats.append(M0)
        for n in usable[1:]:
            M = weight_op_matrix(ms, u, rr, n, box)
            if any(M[i][j] != M0[i][j] for i in range(dim) for j in range(dim)):
                constant = False
    # (2) transports between inner points are nonzero scalar bijections
    transports_ok = True
    for e in units:
        for n in inner:
            tgt = tuple(a + b for a, b in zip(n, e))
            if not _in_box(box, tgt):
                continue
            c = spec.sigma(e, n)  # a root of unity, invertible
            for t in range(dim):
                w = BoxVector.basis_vector(box, dim, n, t)
                got = act(op_torus(spec, e), w, ms)
                expect = BoxVector.basis_vector(box, dim, tgt, t).scale(c)
                if (got - expect).first_nonzero() is not None:
                    transports_ok = False
    # (3) closure of V-coordinates under the weight-operator matrices
    def closes(v0) -> bool:
        span = Span(dim)
        span.insert(v0)
        frontier = [list(v0)]
        while frontier and span.dim < dim:
            new = []
            for v in frontier:
                for M in mats:
                    w = mat_vec(M, v)
                    if span.insert(w):
                        new.append(w)
            frontier = new
        return span.dim == dim

    rows = []
    all_cyclic = True
    for n in inner:
        for t in range(dim):
            v0 = [CycNumber.one() if j == t else CycNumber.zero() for j in range(dim)]
            ok = closes(v0)
            rows.append({"n": list(n), "start": t, "cyclic": ok})
            all_cyclic = all_cyclic and ok
    if rng is not None:
        for idx in range(random_starts):
            n = tuple(rng.randint(-inner_radius, inner_radius) for _ in range(d))
            v0 = [CycNumber.rational(rng.randint(-3, 3)) for _ in range(dim)]
            if all(x.is_zero() for x in v0):
                v0[0] = CycNumber.one()
            ok = closes(v0)
            rows.append({"n": list(n), "start": f"random{idx}", "cyclic": ok})
            all_cyclic = all_cyclic and ok
    return {
        "pass": all_cyclic and constant and transports_ok,
        "weight_ops_constant": constant,
        "transports_bijective": transports_ok,
        "starts": rows,
    }


def module_axiom_check(ms: ModuleSpec, box, rng, samples: int):
    """act([x,y]) = act(x)act(y) - act(y)act(x) on sampled homogeneous pairs.

    For flavor F_g only the derivation part is sampled (its inner action is
    not compatible with the torus action, by design of that flavor)."""
    from .semidirect import gbracket

    spec = ms.spec
    d = spec.d
    radius = max(box)
    rad = spec.radical()
    dim = ms.V.dim
    include_torus = ms.flavor != "F_g"

    def rand_hom():
        kinds = ["inner", "witt"] + (["torus"] if include_torus else [])
        kind = kinds[rng.randrange(len(kinds))]
        if kind == "torus":
            m = tuple(rng.randint(-2, 2) for _ in range(d))
            return op_torus(spec, m)
        if kind == "inner":
            for _ in range(20):
                s = tuple(rng.randint(-2, 2) for _ in range(d))
                if not spec.in_radical(s):
                    return op_inner(spec, s)
            return op_inner(spec, (1,) + (0,) * (d - 1))
        coeffs = [rng.randint(-1, 1) for _ in rad.basis]
        r = tuple(
            sum(c * row[i] for c, row in zip(coeffs, rad.basis)) for i in range(d)
        )
        u = [CycNumber.rational(rng.randint(-2, 2)) for _ in range(d)]
        if all(x.is_zero() for x in u):
            u[0] = CycNumber.one()
        return op_witt(spec, u, r)

    defect = None
    count = 0
    attempts = 0
    while count < samples and attempts < samples * 4:
        attempts += 1
        x = rand_hom()
        y = rand_hom()
        br = gbracket(x, y)
        # start points where every composition stays in box
        dx, dy = _degree_of(x), _degree_of(y)
        dxy = tuple(a + b for a, b in zip(dx, dy))
        pts = [
            n
            for n in interior_points([(-r, r) for r in box])
            if all(
                _in_box(box, tuple(a + b for a, b in zip(n, off)))
                for off in (dx, dy, dxy)
            )
        ]
        if not pts:
            continue
        count += 1
        n = pts[rng.randrange(len(pts))]
        for t in range(dim):
            w = BoxVector.basis_vector(box, dim, n, t)
            lhs = act(br, w, ms)
            rhs = act(x, act(y, w, ms), ms) - act(y, act(x, w, ms), ms)
            bad = (lhs - rhs).first_nonzero()
            if bad is not None and defect is None:
                defect = bad
    return {"pass": defect is None, "defect": defect, "samples": count}


def weight_eigenvalue_check(ms: ModuleSpec, box):
    """D(u,0) acts on v(n) by the scalar (u, n+alpha), for u = unit vectors."""
    spec = ms.spec
    d = spec.d
    dim = ms.V.dim
    zero = (0,) * d
    defect = None
    for i in range(d):
        u = [1 if j == i else 0 for j in range(d)]
        x = op_witt(spec, u, zero)
        for n in interior_points([(-r, r) for r in box]):
            expect_scalar = ms.alpha[i] + n[i]
            for t in range(dim):
                w = BoxVector.basis_vector(box, dim, n, t)
                got = act(x, w, ms)
                bad = (got - w.scale(expect_scalar)).first_nonzero()
                if bad is not None and defect is None:
                    defect = bad
    return {"pass": defect is None, "defect": defect}


def search_twist_equivalence(ms_source: ModuleSpec, beta_candidates, box, max_conductor: int = 64):
    """Search for a re-labelled plain-flavor module matching an F_g module.

    For each candidate beta with integral delta = alpha - beta, and each
    diagonal character c of conductor dividing lcm(N, twist conductor), test
    whether v(n) |-> c(n) v(n + delta) intertwines the derivation action
    with the flavor-F module at weight shift beta.  Returns the first match
    as {'found': True, 'beta': ..., 'delta': ..., 'c': ...} or
    {'found': False}."""
    if ms_source.flavor != "F_g":
        raise ConfigError("twist-equivalence search starts from an F_g module")
    spec = ms_source.spec
    d = spec.d
    dim = ms_source.V.dim
    conductor = _lcm(spec.N, ms_source.twist.modulus)
    if conductor ** d > max_conductor ** 3:
        raise ConfigError("candidate character family too large to enumerate")
    units = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
    rad_rows = [tuple(row) for row in spec.radical().basis]
    gens = []
    zero = (0,) * d
    for i in range(d):
        u = [1 if j == i else 0 for j in range(d)]
        gens.append(op_witt(spec, u, zero))
        for rr in rad_rows:
            if _in_box(box, rr):
                gens.append(op_witt(spec, u, rr))
    for e in units:
        x = op_inner(spec, e)
        if not x.is_zero():
            gens.append(x)
    mixed = tuple(1 for _ in range(d))
    if not spec.in_radical(mixed):
        gens.append(op_inner(spec, mixed))

    def integral_delta(beta):
        beta = [_as_coeff(b) for b in beta]
        if len(beta) != d:
            raise ConfigError("beta candidates must have one entry per rank")
        delta = []
        for a, b in zip(ms_source.alpha, beta):
            diff = a - b
            if not diff.is_rational():
                return None
            q = diff.as_rational()
            if q.denominator != 1:
                return None
            delta.append(int(q))
        return tuple(delta)

    for beta in beta_candidates:
        delta = integral_delta(beta)
        if delta is None:
            continue
        ms_target = ModuleSpec(
            spec, ms_source.V, [_as_coeff(b) for b in beta], TwistCharacter.trivial(spec), "F"
        )
        for k in _iproduct(range(conductor), repeat=d):
            c = DiagonalCharacter(conductor, k)
            ok = True
            for x in gens:
                if not ok:
                    break
                deg = _degree_of(x)
                pts = [
                    n
                    for n in interior_points([(-r, r) for r in box])
                    if _in_box(box, tuple(a + b for a, b in zip(n, deg)))
                    and _in_box(box, tuple(a + b for a, b in zip(n, delta)))
                    and _in_box(
                        box, tuple(a + b + c2 for a, b, c2 in zip(n, deg, delta))
                    )
                ]
                for n in pts:
                    for t in range(dim):
                        w = BoxVector.basis_vector(box, dim, n, t)

                        def theta(vec):
                            return vec.map_points(
                                lambda p, coords: (
                                    tuple(a + b for a, b in zip(p, delta)),
                                    tuple(c.value(p) * y for y in coords),
                                )
                            )

                        lhs = theta(act(x, w, ms_source))
                        rhs = act(x, theta(w), ms_target)
                        if (lhs - rhs).first_nonzero() is not None:
                            ok = False
                            break
                    if not ok:
                        break
            if ok:
                return {
                    "found": True,
                    "beta": [_as_coeff(b) for b in beta],
                    "delta": list(delta),
                    "c": c,
                }
    return {"found": False}
