"""Arithmetic of F_q = F_{p^l} and the polynomial ring F_q[T].

Field elements are plain ints in [0, q).  The int encodes the base-p digit
vector of the element with respect to the power basis of the defining
modulus: x = sum(d_i * p**i) stands for sum(d_i * s**i) where s is a root
of the modulus.  Zero and one are always encoded as 0 and 1, and elements
of the prime field are encoded by their residue.

Polynomials carry their coefficient field and store coefficients ascending
with no trailing zeros; the zero polynomial has an empty coefficient tuple
and degree NEG_INF.
"""

from __future__ import annotations

import hashlib
import random
from functools import lru_cache


class _NegInf:
    """Degree of the zero polynomial; compares below every int."""

    def __lt__(self, other):
        return not isinstance(other, _NegInf)

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return isinstance(other, _NegInf)

    def __eq__(self, other):
        return isinstance(other, _NegInf)

    def __hash__(self):
        return hash("NEG_INF")

    def __repr__(self):
        return "-inf"


class _PosInf:
    """Valuation of the zero function; compares above every int."""

    def __gt__(self, other):
        return not isinstance(other, _PosInf)

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _PosInf)

    def __eq__(self, other):
        return isinstance(other, _PosInf)

    def __hash__(self):
        return hash("POS_INF")

    def __repr__(self):
        return "+inf"


NEG_INF = _NegInf()
POS_INF = _PosInf()

_MUL_TABLE_CAP = 256  # build q x q multiplication tables below this order
_DLOG_CAP = 1 << 16


def is_prime(n: int) -> bool:
    """Deterministic primality test, adequate for desk-scale moduli."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factor_int(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class GroundField:
    """The field F_q with q = p^l, fixed modulus, element ops on ints."""

    def __init__(self, p: int, l: int, modulus: tuple[int, ...]):
        self.p = p
        self.l = l
        self.q = p**l
        self.modulus = modulus  # monic, degree l, coefficients over F_p
        self._mul_table = None
        self._inv_table = None
        self._dlog = None
        self._gen = None
        if self.q <= _MUL_TABLE_CAP:
            self._build_tables()

    # -- encoding ------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        """Base-p digit vector of length l."""
        out = []
        for _ in range(self.l):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_digits(self, ds) -> int:
        a = 0
        for d in reversed(list(ds)):
            a = a * self.p + (d % self.p)
        return a

    def elements(self):
        return range(self.q)

    # -- arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.l == 1:
            return (a + b) % p
        out, mult = 0, 1
        for _ in range(self.l):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.l == 1:
            return (-a) % p
        out, mult = 0, 1
        for _ in range(self.l):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._mul_slow(a, b)

    def _mul_slow(self, a: int, b: int) -> int:
        p, l = self.p, self.l
        if l == 1:
            return (a * b) % p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * l - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce modulo the defining polynomial
        for i in range(2 * l - 2, l - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(l):
                    prod[i - l + j] = (prod[i - l + j] - c * self.modulus[j]) % p
        return self.from_digits(prod[:l])

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.q - 2)

    def frob(self, a: int, k: int = 1) -> int:
        """Frobenius power a -> a^(p^k); a^(p^l) = a keeps exponents small."""
        return self.pow(a, self.p ** (k % self.l))

    def _build_tables(self):
        q = self.q
        self._mul_table = [[0] * q for _ in range(q)]
        for a in range(q):
            row = self._mul_table[a]
            for b in range(a, q):
                v = self._mul_slow(a, b)
                row[b] = v
                self._mul_table[b][a] = v
        self._inv_table = [0] * q
        for a in range(1, q):
            self._inv_table[a] = self.pow(a, q - 2)

    # -- multiplicative structure ---------------------------------------

    def generator(self) -> int:
        """Least generator of the multiplicative group."""
        if self._gen is not None:
            return self._gen
        n = self.q - 1
        primes = list(factor_int(n))
        for g in range(1, self.q):
            if all(self.pow(g, n // r) != 1 for r in primes):
                self._gen = g
                return g
        raise AssertionError("no multiplicative generator found")

    def dlog(self, a: int) -> int:
        """Discrete log base generator(); table-backed, desk scale only."""
        if a == 0:
            raise ZeroDivisionError("dlog of 0")
        if self._dlog is None:
            if self.q > _DLOG_CAP:
                raise ValueError("field too large for dlog table")
            g = self.generator()
            tbl = {}
            x = 1
            for e in range(self.q - 1):
                tbl[x] = e
                x = self.mul(x, g)
            self._dlog = tbl
        return self._dlog[a]

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("order of 0")
        n = self.q - 1
        for r, e in factor_int(n).items():
            for _ in range(e):
                if self.pow(a, n // r) == 1:
                    n //= r
                else:
                    break
        return n

    def __repr__(self):
        return f"F_{self.q}" if self.l > 1 else f"F_{self.p}"

    def __eq__(self, other):
        return (
            isinstance(other, GroundField)
            and (self.p, self.l, self.modulus) == (other.p, other.l, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.l, self.modulus))


@lru_cache(maxsize=None)
def field_make(p: int, l: int) -> GroundField:
    """Construct F_{p^l} with the lexicographically least irreducible modulus.

    Candidate moduli of degree l over F_p are ordered by the integer
    encoding sum(c_i * p**i) of their non-leading coefficients, so the
    choice is reproducible.  For l = 1 the modulus is x.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if l < 1:
        raise ValueError("extension degree must be >= 1")
    if l == 1:
        return GroundField(p, 1, (0, 1))
    fp = field_make(p, 1)
    for enc in range(p**l):
        coeffs = _int_digits(enc, p, l)
        cand = Poly(fp, tuple(coeffs) + (1,))
        if poly_is_irreducible(cand):
            return GroundField(p, l, tuple(coeffs) + (1,))
    raise AssertionError("no irreducible modulus found")


def _int_digits(a: int, p: int, l: int) -> list[int]:
    out = []
    for _ in range(l):
        out.append(a % p)
        a //= p
    return out


class Poly:
    """Univariate polynomial over a GroundField, coefficients ascending."""

    __slots__ = ("f", "c")

    def __init__(self, f: GroundField, coeffs=()):
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        self.f = f
        self.c = tuple(coeffs)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(f):
        return Poly(f, ())

    @staticmethod
    def one(f):
        return Poly(f, (1,))

    @staticmethod
    def const(f, a):
        return Poly(f, (a % f.q,))

    @staticmethod
    def x(f):
        return Poly(f, (0, 1))

    # -- basic queries ---------------------------------------------------

    @property
    def degree(self):
        return len(self.c) - 1 if self.c else NEG_INF

    def is_zero(self):
        return not self.c

    def is_const(self):
        return len(self.c) <= 1

    def lead(self):
        if not self.c:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.c[-1]

    def is_monic(self):
        return bool(self.c) and self.c[-1] == 1

    def constant_term(self):
        return self.c[0] if self.c else 0

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        f = self.f
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = f.add(out[i], v)
        return Poly(f, out)

    def __neg__(self):
        f = self.f
        return Poly(f, [f.neg(v) for v in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        f = self.f
        a, b = self.c, other.c
        if not a or not b:
            return Poly(f, ())
        out = [0] * (len(a) + len(b) - 1)
        mul, add = f.mul, f.add
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly(f, out)

    def scale(self, a: int):
        f = self.f
        if a == 0:
            return Poly(f, ())
        return Poly(f, [f.mul(a, v) for v in self.c])

    def monic(self):
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.f.inv(self.lead()))

    def __divmod__(self, other):
        f = self.f
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dn = len(other.c) - 1
        inv_lead = f.inv(other.lead())
        quot = [0] * max(0, len(rem) - dn)
        for i in range(len(rem) - 1, dn - 1, -1):
            coeff = rem[i]
            if coeff == 0:
                continue
            t = f.mul(coeff, inv_lead)
            quot[i - dn] = t
            for j, v in enumerate(other.c):
                rem[i - dn + j] = f.sub(rem[i - dn + j], f.mul(t, v))
        return Poly(f, quot), Poly(f, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int):
        r, a = Poly.one(self.f), self
        while n:
            if n & 1:
                r = r * a
            a = a * a
            n >>= 1
        return r

    def pow_mod(self, n: int, m: "Poly"):
        r, a = Poly.one(self.f) % m, self % m
        while n:
            if n & 1:
                r = (r * a) % m
            a = (a * a) % m
            n >>= 1
        return r

    def shift(self, k: int):
        """Multiply by T^k."""
        if self.is_zero():
            return self
        return Poly(self.f, (0,) * k + self.c)

    def derivative(self):
        f = self.f
        out = []
        for i in range(1, len(self.c)):
            out.append(f.mul(i % f.p, self.c[i]))
        return Poly(f, out)

    def evaluate(self, a: int) -> int:
        f = self.f
        acc = 0
        for v in reversed(self.c):
            acc = f.add(f.mul(acc, a), v)
        return acc

    def frob_power(self, k: int = 1):
        """The p^k-th power of the polynomial, via Frobenius additivity."""
        f = self.f
        step = f.p**k
        out = [0] * (step * (len(self.c) - 1) + 1) if self.c else []
        for i, v in enumerate(self.c):
            out[i * step] = f.pow(v, step)
        return Poly(f, out)

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Poly) and self.f is other.f and self.c == other.c

    def __hash__(self):
        return hash((id(self.f), self.c))

    def sort_key(self):
        return (len(self.c), self.c)

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for i in reversed(range(len(self.c))):
            v = self.c[i]
            if v == 0:
                continue
            if i == 0:
                parts.append(str(v))
            elif i == 1:
                parts.append("T" if v == 1 else f"{v}*T")
            else:
                parts.append(f"T^{i}" if v == 1 else f"{v}*T^{i}")
        return " + ".join(parts)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_ext_gcd(a: Poly, b: Poly):
    """Return (g, s, t) with g = gcd monic and s*a + t*b = g."""
    f = a.f
    r0, r1 = a, b
    s0, s1 = Poly.one(f), Poly.zero(f)
    t0, t1 = Poly.zero(f), Poly.one(f)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    c = f.inv(r0.lead())
    return r0.scale(c), s0.scale(c), t0.scale(c)


def poly_invmod(a: Poly, m: Poly) -> Poly:
    g, s, _ = poly_ext_gcd(a % m, m)
    if g.degree != 0:
        raise ZeroDivisionError(f"{a} is not invertible mod {m}")
    return s % m


def poly_pth_root(a: Poly) -> Poly:
    """Inverse Frobenius on coefficients of a polynomial in T^p."""
    f = a.f
    p = f.p
    out = []
    for i in range(0, len(a.c), p):
        # intermediate coefficients must vanish for a p-th power
        for j in range(1, p):
            if i + j < len(a.c) and a.c[i + j] != 0:
                raise ValueError("polynomial is not a p-th power")
        out.append(f.pow(a.c[i], p ** (f.l - 1)))
    return Poly(f, out)


def _factor_seed(a: Poly) -> int:
    h = hashlib.sha256()
    h.update(f"{a.f.p},{a.f.l}:".encode())
    h.update(",".join(map(str, a.c)).encode())
    return int.from_bytes(h.digest()[:8], "big")


def _squarefree_parts(a: Poly):
    """Yield (g, multiplicity) with g squarefree, product g^m = a (a monic)."""
    f = a.f
    p = f.p
    if a.degree <= 0:
        return
    d = a.derivative()
    if d.is_zero():
        # a is a p-th power in T
        for g, m in _squarefree_parts(poly_pth_root(a)):
            yield g, m * p
        return
    w = poly_gcd(a, d)
    sqfree = a // w
    m = 1
    while sqfree.degree > 0:
        y = poly_gcd(sqfree, w)
        part = sqfree // y
        if part.degree > 0:
            yield part, m
        sqfree, w = y, w // y
        m += 1
    # what is left of w has every multiplicity divisible by p
    if w.degree > 0:
        for g, mm in _squarefree_parts(poly_pth_root(w)):
            yield g, mm * p


def _distinct_degree(a: Poly):
    """Split squarefree monic a into (product of degree-d irreducibles, d)."""
    f = a.f
    x = Poly.x(f)
    h = x % a
    d = 0
    while a.degree > 0:
        d += 1
        if 2 * d > (a.degree if a.degree is not NEG_INF else 0):
            yield a, a.degree
            return
        h = h.pow_mod(f.q, a)
        g = poly_gcd(h - x, a)
        if g.degree > 0:
            yield g, d
            a = a // g
            h = h % a


def _equal_degree_split(a: Poly, d: int, rng: random.Random):
    """Cantor-Zassenhaus split of a product of degree-d irreducibles."""
    f = a.f
    n = a.degree
    if n == d:
        yield a
        return
    while True:
        u = Poly(f, [rng.randrange(f.q) for _ in range(n)])
        if u.degree < 1:
            continue
        g = poly_gcd(u, a)
        if 0 < g.degree < n:
            break
        if f.p == 2:
            # trace map over F_2
            t = Poly.zero(f)
            w = u % a
            for _ in range(f.l * d):
                t = (t + w) % a
                w = (w * w) % a
            g = poly_gcd(t, a)
        else:
            h = u.pow_mod((f.q**d - 1) // 2, a)
            g = poly_gcd(h - Poly.one(f), a)
        if 0 < g.degree < n:
            break
    for part in (g, a // g):
        yield from _equal_degree_split(part, d, rng)


def poly_factor(a: Poly):
    """Factor a into monic irreducibles.

    Returns (lead, factors) where factors is a list of (P, multiplicity)
    sorted by (degree, coefficients) and lead * prod(P^m) == a exactly.
    """
    if a.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    lead = a.lead()
    a = a.monic()
    rng = random.Random(_factor_seed(a))
    found: dict[Poly, int] = {}
    for sf, mult in _squarefree_parts(a):
        for dd_part, d in _distinct_degree(sf):
            for irr in _equal_degree_split(dd_part, d, rng):
                found[irr] = found.get(irr, 0) + mult
    factors = sorted(found.items(), key=lambda t: t[0].sort_key())
    return lead, factors


def poly_is_irreducible(a: Poly) -> bool:
    """Rabin irreducibility test."""
    f = a.f
    n = a.degree
    if n is NEG_INF or n == 0:
        raise ValueError("irreducibility is defined for nonconstant polynomials")
    if n == 1:
        return True
    x = Poly.x(f)
    h = x.pow_mod(f.q**n, a)
    if h != x % a:
        return False
    for r in factor_int(n):
        g = x.pow_mod(f.q ** (n // r), a) - x
        if poly_gcd(g, a).degree != 0:
            return False
    return True


def monic_polys(f: GroundField, deg: int):
    """All monic polynomials of the given degree, ordered by encoding."""
    q = f.q
    for enc in range(q**deg):
        coeffs = []
        e = enc
        for _ in range(deg):
            coeffs.append(e % q)
            e //= q
        yield Poly(f, tuple(coeffs) + (1,))


def monic_irreducibles(f: GroundField, max_deg: int):
    """Monic irreducibles of degree 1..max_deg in deterministic order."""
    for d in range(1, max_deg + 1):
        for cand in monic_polys(f, d):
            if poly_is_irreducible(cand):
                yield cand


@lru_cache(maxsize=None)
def _embedding_root(src_key, dst_key) -> int:
    src = field_make(*src_key)
    dst = field_make(*dst_key)
    # image of the power-basis generator of src: least root of its modulus
    mod = Poly(dst, tuple(c % dst.p for c in src.modulus))
    roots = [dst.neg(P.c[0]) for P, _ in poly_factor(mod)[1] if P.degree == 1]
    if not roots:
        raise ValueError("source field does not embed")
    return min(roots)


def embed(src: GroundField, dst: GroundField):
    """Return the embedding F_{p^l} -> F_{p^{l*m}} as a function on ints."""
    if src.p != dst.p or dst.l % src.l != 0:
        raise ValueError("no embedding between these fields")
    if src.l == 1:
        return lambda a: a % src.p
    if src.l == dst.l:
        return lambda a: a
    root = _embedding_root((src.p, src.l), (dst.p, dst.l))
    cache: dict[int, int] = {}

    def phi(a: int) -> int:
        if a in cache:
            return cache[a]
        acc = 0
        for d in reversed(src.digits(a)):
            acc = dst.add(dst.mul(acc, root), d)
        cache[a] = acc
        return acc

    return phi
