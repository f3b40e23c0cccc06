"""Rational functions over F_q(T), partial fractions, pole-order reduction.

A RatFn is kept in canonical form: monic denominator, gcd(num, den) = 1,
so equality is structural.  Partial-fraction parts are listed in a fixed
order (degree of the prime, then its coefficient tuple) so every
serialization of a decomposition is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ffalg import NEG_INF, POS_INF, Poly, poly_factor, poly_gcd, poly_invmod


class RatFn:
    """num/den over F_q[T] in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num = num
            self.den = Poly.one(num.f)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        if not den.is_monic():
            c = den.f.inv(den.lead())
            num, den = num.scale(c), den.scale(c)
        self.num = num
        self.den = den

    @staticmethod
    def from_poly(a: Poly) -> "RatFn":
        return RatFn(a, Poly.one(a.f))

    @staticmethod
    def zero(f) -> "RatFn":
        return RatFn(Poly.zero(f), Poly.one(f))

    @staticmethod
    def one(f) -> "RatFn":
        return RatFn(Poly.one(f), Poly.one(f))

    @property
    def f(self):
        return self.num.f

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_poly():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def __add__(self, other):
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RatFn(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFn(self.num * other.den, self.den * other.num)

    def scale(self, c: int):
        return RatFn(self.num.scale(c), self.den)

    def frob_power(self, k: int = 1):
        """The p^k-th power; Frobenius keeps the form canonical."""
        return RatFn(self.num.frob_power(k), self.den.frob_power(k))

    def __eq__(self, other):
        return isinstance(other, RatFn) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.is_poly():
            return repr(self.num)
        return f"({self.num})/({self.den})"

    def sort_key(self):
        return (self.den.sort_key(), self.num.sort_key())

    def v_at(self, P: Poly):
        """Valuation at a monic irreducible P."""
        if self.is_zero():
            return POS_INF
        v = 0
        n = self.den
        while True:
            q, r = divmod(n, P)
            if not r.is_zero():
                break
            n, v = q, v - 1
        if v < 0:
            return v
        n = self.num
        while True:
            q, r = divmod(n, P)
            if not r.is_zero():
                break
            n, v = q, v + 1
        return v


def v_infinity(a: RatFn):
    """Valuation at the pole of T: deg den - deg num, +inf for 0."""
    if a.is_zero():
        return POS_INF
    return a.den.degree - a.num.degree


@dataclass(frozen=True)
class PFPart:
    P: Poly  # monic irreducible
    e: int  # pole order, >= 1
    Q: Poly  # numerator, gcd(Q, P) = 1, deg Q < deg P^e


@dataclass(frozen=True)
class PartialFraction:
    parts: tuple[PFPart, ...]
    polypart: Poly

    def recombine(self) -> RatFn:
        f = self.polypart.f
        acc = RatFn.from_poly(self.polypart)
        for part in self.parts:
            acc = acc + RatFn(part.Q, part.P**part.e)
        return acc


def pf_decompose(a: RatFn) -> PartialFraction:
    """Split a into proper single-prime parts plus a polynomial part."""
    f = a.f
    if a.is_zero():
        return PartialFraction((), Poly.zero(f))
    polypart, rem = divmod(a.num, a.den)
    if rem.is_zero():
        return PartialFraction((), polypart)
    _, den_factors = poly_factor(a.den)
    parts = []
    for P, e in den_factors:
        pe = P**e
        cofactor = a.den // pe
        Q = (rem * poly_invmod(cofactor, pe)) % pe
        parts.append(PFPart(P, e, Q))
    out = PartialFraction(tuple(parts), polypart)
    assert out.recombine() == a, "partial fraction recombination failed"
    return out


def polepart_at(a: RatFn, P: Poly) -> RatFn:
    """The P-supported part of a, a proper fraction Q/P^e (0 if no pole)."""
    v = a.v_at(P)
    if a.is_zero() or v >= 0:
        return RatFn.zero(a.f)
    e = -v
    pe = P**e
    cofactor = a.den // pe
    _, rem = divmod(a.num, a.den)
    Q = (rem * poly_invmod(cofactor, pe)) % pe
    return RatFn(Q, pe)


def pole_digits(a: RatFn, P: Poly) -> dict[int, Poly]:
    """P-adic digits of the pole part: order -> coefficient of deg < deg P."""
    part = polepart_at(a, P)
    if part.is_zero():
        return {}
    e = -part.v_at(P)
    digits = {}
    n = part.num
    for i in range(e):
        n, d = divmod(n, P)
        if not d.is_zero():
            digits[e - i] = d
    return digits


def inv_frobenius_mod(c: Poly, P: Poly, u: int) -> Poly:
    """Solve x^(p^u) = c in F_q[T]/P; the Frobenius is invertible there."""
    f = c.f
    d_abs = f.l * P.degree  # residue field has p^d_abs elements
    shift = (-u) % d_abs
    if shift == 0:
        return c % P
    return c.pow_mod(f.p**shift, P)


def reduce_digits_at(a: RatFn, P: Poly, u: int = 1) -> tuple[RatFn, RatFn]:
    """Clear every P-pole digit whose order is divisible by p^u.

    Returns (a', w) with a' = a - (w^(p^u) - w) and no digit of the P-pole
    part of a' at an order divisible by p^u.  Other primes are untouched.
    """
    f = a.f
    step = f.p**u
    witness = RatFn.zero(f)
    while True:
        digits = pole_digits(a, P)
        bad = [e for e, c in digits.items() if e % step == 0]
        if not bad:
            return a, witness
        e = max(bad)
        c = digits[e]
        w = RatFn(inv_frobenius_mod(c, P, u), P ** (e // step))
        a = a - (w.frob_power(u) - w)
        witness = witness + w


def as_reduce_at(a: RatFn, P: Poly, p: int) -> tuple[RatFn, RatFn]:
    """Reduce the pole order of a at P to one prime to the characteristic.

    Returns (a', w) with a' = a - (w^p - w) and v_P(a') either >= 0 or
    negative and prime to p.  Repeated application is idempotent.
    """
    f = a.f
    if p != f.p:
        raise ValueError("reduction prime must be the field characteristic")
    witness = RatFn.zero(f)
    while True:
        v = a.v_at(P)
        if v >= 0 or (-v) % p != 0:
            return a, witness
        e = -v
        c = pole_digits(a, P)[e]
        w = RatFn(inv_frobenius_mod(c, P, 1), P ** (e // p))
        a = a - (w.frob_power(1) - w)
        witness = witness + w
