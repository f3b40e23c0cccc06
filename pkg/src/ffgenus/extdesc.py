"""Descriptors for the supported abelian extensions of k = F_q(T).

Four families: Kummer radicals k(t-th root of gamma*D), Artin-Schreier-Witt
extensions k(y) with y^(p^u) (Witt-)minus y = xi, subfields of Carlitz
cyclotomic fields given by Dirichlet characters, and composites of a wild
p-part with tame cyclic cyclotomic parts.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import SchemaError, TrivialExtension
from .ffalg import GroundField, Poly, poly_factor
from .ratfrac import RatFn, polepart_at
from .witt import (
    WittVec,
    check_caps,
    ratfn_domain,
    scalar_vectors,
    witt_add,
    witt_scalar,
    witt_sub,
    witt_zero,
)


@dataclass(frozen=True)
class KummerExt:
    """k(t-th root of gamma*D) with t | q-1, D monic t-power-free."""

    field: GroundField
    t: int
    D: Poly
    factorization: tuple[tuple[Poly, int], ...]  # (P_i, alpha_i), alpha_i < t
    gamma: int  # (-1)^(deg D) as a field element


@dataclass(frozen=True)
class ASWExt:
    """k(y) with y^(p^u) Witt-minus y = xi, xi in W_v(F_q(T)).

    A composite of cyclic p-extensions that admits no single defining
    equation over F_q (the scalars F_{p^u} are too small) is described by
    the factor list alone, with xi = None; each factor is the right-hand
    side of a p-power equation w^p Witt-minus w = xi_i.
    """

    field: GroundField
    u: int
    v: int
    xi: WittVec | None
    factors: tuple[WittVec, ...] | None = None

    def __post_init__(self):
        if self.u < 1 or self.field.l % self.u != 0:
            raise SchemaError(f"u = {self.u} must satisfy u | l = {self.field.l}")
        if self.xi is None and not self.factors:
            raise SchemaError("descriptor needs a defining vector or a factor list")
        if self.xi is not None and self.xi.v != self.v:
            raise SchemaError("xi length disagrees with declared Witt length")
        check_caps(self.field.p, self.v)


def asw_working_parts(ext: ASWExt):
    """Generator vectors and the operator power they are written against.

    Factor lists are p-power equations (u = 1); a single xi uses p^u.
    """
    if ext.factors is not None:
        return list(ext.factors), 1
    return [ext.xi], ext.u


@dataclass(frozen=True)
class CyclotomicSubfield:
    """Subfield of k(Lambda_N) cut out by a list of Dirichlet characters.

    Characters are exponent vectors against the deterministic generator
    list of the unit group of R_T/N, entries exact fractions a/b in Q/Z.
    """

    field: GroundField
    N: Poly
    chars: tuple[tuple, ...]  # each char: tuple of Fraction per generator


@dataclass(frozen=True)
class CompositeExt:
    """Wild p-part times tame cyclic cyclotomic parts of coprime degree."""

    field: GroundField
    p_part: ASWExt | None
    cyclic_parts: tuple[CyclotomicSubfield, ...] = dc_field(default=())


def kummer_normalize(field: GroundField, t: int, D_raw: Poly) -> KummerExt:
    """Reduce exponents mod t, rebuild D and gamma; idempotent."""
    if t < 1 or (field.q - 1) % t != 0:
        raise SchemaError(f"t = {t} does not divide q - 1 = {field.q - 1}")
    if D_raw.is_zero() or D_raw.degree == 0:
        raise SchemaError("D must be monic and nonconstant")
    if not D_raw.is_monic():
        raise SchemaError("D must be monic")
    _, raw_factors = poly_factor(D_raw)
    reduced = [(P, a % t) for P, a in raw_factors if a % t != 0]
    if not reduced:
        raise TrivialExtension("every exponent of D is divisible by t")
    D = Poly.one(field)
    for P, a in reduced:
        D = D * P**a
    gamma = 1 if D.degree % 2 == 0 else field.neg(1)
    return KummerExt(field, t, D, tuple(reduced), gamma)


def kummer_radicand(ext: KummerExt) -> Poly:
    """gamma * D, the polynomial under the t-th root."""
    return ext.D.scale(ext.gamma)


def asw_make(field: GroundField, u: int, v: int, coords, factors=None) -> ASWExt:
    dom = ratfn_domain(field)
    xi = WittVec(dom, tuple(coords))
    fac = None
    if factors is not None:
        fac = tuple(WittVec(dom, tuple(c)) for c in factors)
    return ASWExt(field, u, v, xi, fac)


def _vec_with_coord(dom, v: int, j: int, a) -> WittVec:
    coords = [dom.zero()] * v
    coords[j] = a
    return WittVec(dom, coords)


def decompose_vec(xi: WittVec):
    """Split xi into single-prime pole parts plus a polynomial part.

    Returns (deltas, gamma) where deltas maps each monic irreducible P to a
    Witt vector whose coordinates are proper fractions supported at P, gamma
    has polynomial coordinates, and the Witt sum of all parts is exactly xi.
    Primes are processed in sorted order and within a prime the coordinates
    left to right, which pins the output down uniquely.
    """
    dom = xi.dom
    v = xi.v
    work = xi
    # support: all primes appearing in any coordinate denominator
    primes = {}
    for c in xi.coords:
        if not c.is_zero() and c.den.degree > 0:
            for P, _ in poly_factor(c.den)[1]:
                primes[P] = None
    deltas: dict[Poly, WittVec] = {}
    for P in sorted(primes, key=lambda P: P.sort_key()):
        acc = witt_zero(dom, v)
        for j in range(v):
            a = polepart_at(work.coords[j], P)
            if a.is_zero():
                continue
            piece = _vec_with_coord(dom, v, j, a)
            acc = witt_add(acc, piece)
            work = witt_sub(work, piece)
        if not acc.is_zero():
            deltas[P] = acc
    for c in work.coords:
        assert c.is_poly(), "decomposition left a non-polynomial remainder"
    gamma = work
    # exact recombination is part of the contract
    total = gamma
    for P in sorted(deltas, key=lambda P: P.sort_key()):
        total = witt_add(total, deltas[P])
    assert total == xi, "decomposition does not recombine to xi"
    return deltas, gamma


def asw_decompose(ext: ASWExt):
    return decompose_vec(ext.xi)


def module_is_cyclic(ext: ASWExt) -> tuple[bool, WittVec | None]:
    """Whether Gal(k(y)/k) is cyclic; returns a p-power-equation generator.

    For u = 1 the Galois group embeds in W_v(F_p) and is always cyclic.
    For u > 1 the group of classes generated by the scalar multiples of xi
    (taken modulo the u = 1 operator, which sees every subextension) is
    enumerated and a maximal-order element is returned when it generates.
    """
    from .ramify import additive_order, dual_group  # deferred, no cycle

    if ext.u == 1:
        return True, ext.xi
    group = dual_group([ext.xi], ext.u)
    for rep in group.values():
        if additive_order(rep, 1) == len(group):
            return True, rep
    return False, None


def asw_cyclic_split(ext: ASWExt) -> list[ASWExt]:
    """Cyclic factors of the descriptor, each given by a p-power equation.

    If a factor list was supplied it is validated (equal lengths, same
    field) and checked against the composite on the class-group level.
    Without a factor list the descriptor itself must define a cyclic
    extension, which always holds for u = 1.
    """
    from .ramify import dual_group

    if ext.factors is not None:
        for fac in ext.factors:
            if fac.v != ext.v:
                raise SchemaError("cyclic factor has mismatched Witt length")
            if fac.dom.field is not ext.field:
                raise SchemaError("cyclic factor over a different ground field")
        if ext.xi is not None:
            combined = dual_group(list(ext.factors), 1)
            own = dual_group([ext.xi], ext.u)
            if set(combined) != set(own):
                raise SchemaError("factor list does not generate the same extension")
        return [ASWExt(ext.field, 1, ext.v, fac) for fac in ext.factors]
    cyclic, gen = module_is_cyclic(ext)
    if not cyclic:
        raise SchemaError(
            "extension is not cyclic; supply an explicit cyclic factor list"
        )
    return [ASWExt(ext.field, 1, ext.v, gen)]
