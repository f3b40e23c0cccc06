"""Witt vectors of finite length over F_q, F_q[T] or F_q(T).

The ring operations are evaluated through the universal addition and
negation polynomials.  Those are derived once per (p, v) by the ghost
component recursion over arbitrary-precision integers and cached after
reduction mod p; every division by a power of p in the recursion is
checked exact, so a wrong hand-derived formula cannot slip in.

Coordinates are plain values of one of three domains (field ints, Poly,
RatFn); a small adapter object supplies the coordinate ring operations.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import CapExceeded
from .ffalg import GroundField, Poly
from .ratfrac import RatFn

V_CAP = 4
PV_CAP = 128


def check_caps(p: int, v: int, v_cap: int = None, pv_cap: int = None):
    if v < 1:
        raise ValueError("Witt length must be >= 1")
    if v > (v_cap if v_cap is not None else V_CAP):
        raise CapExceeded(f"Witt length {v} exceeds cap")
    if p**v > (pv_cap if pv_cap is not None else PV_CAP):
        raise CapExceeded(f"p^v = {p**v} exceeds cap")


# ---------------------------------------------------------------------------
# sparse integer polynomials: dict[exponent tuple] -> coefficient

def _zp_add(a, b):
    out = dict(a)
    for k, c in b.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def _zp_scale(a, n):
    if n == 0:
        return {}
    return {k: c * n for k, c in a.items()}


def _zp_mul(a, b):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            s = out.get(k, 0) + ca * cb
            if s:
                out[k] = s
            elif k in out:
                del out[k]
    return out


def _zp_pow(a, n, nvars):
    out = {(0,) * nvars: 1}
    while n:
        if n & 1:
            out = _zp_mul(out, a)
        a = _zp_mul(a, a)
        n >>= 1
    return out


def _zp_div_exact(a, n):
    out = {}
    for k, c in a.items():
        q, r = divmod(c, n)
        if r:
            raise AssertionError("ghost recursion: division by p not exact")
        if q:
            out[k] = q
    return out


def _ghost(coords, p, n, nvars):
    """w_n = sum p^i X_i^(p^(n-i)) as a sparse integer polynomial."""
    acc = {}
    for i in range(n + 1):
        acc = _zp_add(acc, _zp_scale(_zp_pow(coords[i], p ** (n - i), nvars), p**i))
    return acc


def _compile(zp, p):
    """Reduce mod p and flatten to ((coeff, ((var, exp), ...)), ...)."""
    terms = []
    for k, c in sorted(zp.items()):
        c %= p
        if c:
            terms.append((c, tuple((i, e) for i, e in enumerate(k) if e)))
    return tuple(terms)


@lru_cache(maxsize=None)
def witt_sum_polys(p: int, v: int):
    """Universal addition polynomials S_0..S_{v-1} over F_p in 2v variables."""
    nv = 2 * v
    xs = [{tuple(1 if j == i else 0 for j in range(nv)): 1} for i in range(v)]
    ys = [{tuple(1 if j == v + i else 0 for j in range(nv)): 1} for i in range(v)]
    sums = []
    for n in range(v):
        rhs = _zp_add(_ghost(xs, p, n, nv), _ghost(ys, p, n, nv))
        for i in range(n):
            rhs = _zp_add(rhs, _zp_scale(_zp_pow(sums[i], p ** (n - i), nv), -(p**i)))
        sums.append(_zp_div_exact(rhs, p**n))
    return tuple(_compile(s, p) for s in sums)


@lru_cache(maxsize=None)
def witt_neg_polys(p: int, v: int):
    """Universal negation polynomials N_0..N_{v-1} over F_p in v variables."""
    xs = [{tuple(1 if j == i else 0 for j in range(v)): 1} for i in range(v)]
    negs = []
    for n in range(v):
        rhs = _ghost(xs, p, n, v)
        for i in range(n):
            rhs = _zp_add(rhs, _zp_scale(_zp_pow(negs[i], p ** (n - i), v), p**i))
        negs.append(_zp_scale(_zp_div_exact(rhs, p**n), -1))
    return tuple(_compile(s, p) for s in negs)


# ---------------------------------------------------------------------------
# coordinate domains

class FqDomain:
    name = "fq"

    def __init__(self, field: GroundField):
        self.field = field

    def zero(self):
        return 0

    def is_zero(self, a):
        return a == 0

    def add(self, a, b):
        return self.field.add(a, b)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def scalar(self, c, a):
        return self.field.mul(c % self.field.p, a)

    def frob(self, a, u):
        return self.field.frob(a, u)

    def sort_key(self, a):
        return a


class PolyDomain:
    name = "poly"

    def __init__(self, field: GroundField):
        self.field = field

    def zero(self):
        return Poly.zero(self.field)

    def is_zero(self, a):
        return a.is_zero()

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def scalar(self, c, a):
        return a.scale(c % self.field.p)

    def frob(self, a, u):
        return a.frob_power(u)

    def sort_key(self, a):
        return a.sort_key()


class RatFnDomain:
    name = "ratfn"

    def __init__(self, field: GroundField):
        self.field = field

    def zero(self):
        return RatFn.zero(self.field)

    def is_zero(self, a):
        return a.is_zero()

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def scalar(self, c, a):
        return a.scale(c % self.field.p)

    def frob(self, a, u):
        return a.frob_power(u)

    def sort_key(self, a):
        return a.sort_key()


@lru_cache(maxsize=None)
def fq_domain(field):
    return FqDomain(field)


@lru_cache(maxsize=None)
def poly_domain(field):
    return PolyDomain(field)


@lru_cache(maxsize=None)
def ratfn_domain(field):
    return RatFnDomain(field)


def _eval_terms(terms, dom, values):
    """Evaluate a compiled universal polynomial at the given coordinates."""
    acc = dom.zero()
    cache = {}
    for coeff, factors in terms:
        prod = None
        for var, exp in factors:
            pw = cache.get((var, exp))
            if pw is None:
                pw = values[var]
                for _ in range(exp - 1):
                    pw = dom.mul(pw, values[var])
                cache[(var, exp)] = pw
            prod = pw if prod is None else dom.mul(prod, pw)
        acc = dom.add(acc, dom.scalar(coeff, prod))
    return acc


class WittVec:
    """Length-v Witt vector; immutable."""

    __slots__ = ("dom", "coords")

    def __init__(self, dom, coords):
        check_caps(dom.field.p, len(coords))
        self.dom = dom
        self.coords = tuple(coords)

    @property
    def v(self):
        return len(self.coords)

    @property
    def p(self):
        return self.dom.field.p

    def is_zero(self):
        return all(self.dom.is_zero(c) for c in self.coords)

    def _check_compatible(self, other):
        if self.dom is not other.dom or self.v != other.v:
            raise ValueError("Witt vectors have mismatched length or domain")

    def __eq__(self, other):
        return (
            isinstance(other, WittVec)
            and self.dom is other.dom
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((id(self.dom), self.coords))

    def __repr__(self):
        return "(" + ", ".join(map(str, self.coords)) + ")"

    def sort_key(self):
        return tuple(self.dom.sort_key(c) for c in self.coords)


def witt_zero(dom, v: int) -> WittVec:
    return WittVec(dom, (dom.zero(),) * v)


def witt_add(x: WittVec, y: WittVec) -> WittVec:
    x._check_compatible(y)
    if x.is_zero():
        return y
    if y.is_zero():
        return x
    polys = witt_sum_polys(x.p, x.v)
    values = x.coords + y.coords
    return WittVec(x.dom, tuple(_eval_terms(t, x.dom, values) for t in polys))


def witt_neg(x: WittVec) -> WittVec:
    if x.is_zero():
        return x
    polys = witt_neg_polys(x.p, x.v)
    return WittVec(x.dom, tuple(_eval_terms(t, x.dom, x.coords) for t in polys))


def witt_sub(x: WittVec, y: WittVec) -> WittVec:
    return witt_add(x, witt_neg(y))


def witt_frob_power(x: WittVec, u: int) -> WittVec:
    """Coordinatewise p^u-th power."""
    if u < 0:
        raise ValueError("Frobenius power must be >= 0")
    return WittVec(x.dom, tuple(x.dom.frob(c, u) for c in x.coords))


def asw_operator(y: WittVec, u: int) -> WittVec:
    """The Artin-Schreier-Witt operator y -> y^(p^u) (Witt-)minus y."""
    return witt_sub(witt_frob_power(y, u), y)


def witt_vshift(x: WittVec, k: int = 1) -> WittVec:
    """Verschiebung: prepend k zero coordinates (length grows by k)."""
    return WittVec(x.dom, (x.dom.zero(),) * k + x.coords)


def _scalar_fq(dom, c: int, a):
    """Multiply a coordinate by an arbitrary constant of F_q."""
    if isinstance(dom, FqDomain):
        return dom.field.mul(c, a)
    return a.scale(c)


def teichmuller_mul(c: int, x: WittVec) -> WittVec:
    """Multiply by the Teichmuller lift [c] of a constant c in F_q."""
    f = x.dom.field
    return WittVec(
        x.dom,
        tuple(_scalar_fq(x.dom, f.frob(c, i), a) for i, a in enumerate(x.coords)),
    )


def witt_scalar(c: WittVec, x: WittVec) -> WittVec:
    """Multiply x by a constant Witt vector c in W_v(F_q).

    Uses [c0] * x by the Teichmuller rule plus V(a) * x = V(a F(x))
    recursively, so only addition polynomials are needed.
    """
    if not isinstance(c.dom, FqDomain) or c.dom.field is not x.dom.field:
        raise ValueError("scalar must be a constant Witt vector over the same field")
    if c.v != x.v:
        raise ValueError("scalar length mismatch")
    if c.is_zero() or x.is_zero():
        return witt_zero(x.dom, x.v)
    res = teichmuller_mul(c.coords[0], x)
    if x.v == 1:
        return res
    rest = witt_sub(c, WittVec(c.dom, (c.coords[0],) + (0,) * (c.v - 1)))
    assert rest.coords[0] == 0
    if all(a == 0 for a in rest.coords):
        return res
    c_tail = WittVec(c.dom, rest.coords[1:])
    x_frob = witt_frob_power(x, 1)
    tail = witt_scalar(c_tail, WittVec(x.dom, x_frob.coords[: x.v - 1]))
    return witt_add(res, witt_vshift(tail))


def subfield_elements(field: GroundField, u: int) -> list[int]:
    """Elements of F_{p^u} inside F_q (requires u | l)."""
    if field.l % u != 0:
        raise ValueError(f"F_p^{u} is not a subfield of F_p^{field.l}")
    step = field.p**u
    return [a for a in field.elements() if field.pow(a, step) == a]


def scalar_vectors(field: GroundField, u: int, v: int):
    """All of W_v(F_{p^u}) as constant Witt vectors over F_q."""
    dom = fq_domain(field)
    sub = subfield_elements(field, u)
    if len(sub) ** v > PV_CAP * 8:
        raise CapExceeded("scalar module too large to enumerate")
    return [WittVec(dom, t) for t in itertools.product(sub, repeat=v)]
