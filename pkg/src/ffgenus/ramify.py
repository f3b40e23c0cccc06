"""Ramification data for the descriptor families, and the class algebra
behind it.

Everything here works in the group of classes W_v(k) modulo the image of
the operator y -> y^(p^u) (Witt-)minus y.  A class is analyzed into parts
supported at single finite primes, a polynomial part with no constant
term, and a constant part in W_v(F_q); the parts are brought into a
canonical reduced shape so that equal classes serialize identically.
Counting images of those part maps over the scalar multiples of a class
yields ramification indices, inertia degrees and decomposition numbers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import lcm

from .errors import CapExceeded
from .extdesc import ASWExt, KummerExt, asw_working_parts, decompose_vec, kummer_radicand
from .ffalg import GroundField, Poly, embed, field_make
from .ratfrac import (
    RatFn,
    inv_frobenius_mod,
    pf_decompose,
    pole_digits,
    v_infinity,
)
from .witt import (
    WittVec,
    asw_operator,
    fq_domain,
    ratfn_domain,
    scalar_vectors,
    subfield_elements,
    witt_add,
    witt_scalar,
    witt_sub,
    witt_vshift,
    witt_zero,
)

CONST_ENUM_CAP = 100_000


# ---------------------------------------------------------------------------
# solving x^(p^u) - x = c by linear algebra over F_p

def _solve_fp(p: int, rows: list[list[int]], rhs: list[int]):
    """Solve M x = rhs over F_p; returns (particular, nullspace_basis) or None."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    aug = [list(rows[i]) + [rhs[i] % p] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if aug[i][c] % p), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [(x * inv) % p for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] % p:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] % p:
            return None
    particular = [0] * n
    for i, c in enumerate(pivots):
        particular[c] = aug[i][n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * n
        vec[fc] = 1
        for i, c in enumerate(pivots):
            vec[c] = (-aug[i][fc]) % p
        basis.append(vec)
    return particular, basis


@lru_cache(maxsize=None)
def _frob_affine_matrix(field: GroundField, u: int):
    """Matrix of x -> x^(p^u) - x on the digit basis of F_q over F_p."""
    rows = [[0] * field.l for _ in range(field.l)]
    for j in range(field.l):
        b = field.p**j  # encoding of the basis element s^j
        img = field.sub(field.pow(b, field.p**u), b)
        for i, d in enumerate(field.digits(img)):
            rows[i][j] = d
    return tuple(tuple(r) for r in rows)


def frob_affine_solutions(field: GroundField, u: int, c: int) -> list[int]:
    """All x in F_q with x^(p^u) - x = c (possibly empty)."""
    rows = [list(r) for r in _frob_affine_matrix(field, u)]
    sol = _solve_fp(field.p, rows, field.digits(c))
    if sol is None:
        return []
    particular, basis = sol
    out = []
    for combo in itertools.product(range(field.p), repeat=len(basis)):
        digs = list(particular)
        for coef, vec in zip(combo, basis):
            for i in range(field.l):
                digs[i] = (digs[i] + coef * vec[i]) % field.p
        out.append(field.from_digits(digs))
    return sorted(out)


def _inv_frob_const(field: GroundField, c: int, u: int) -> int:
    """The unique y in F_q with y^(p^u) = c."""
    return field.frob(c, (-u) % field.l)


# ---------------------------------------------------------------------------
# solving y^(p^u) - y = a over k = F_q(T), one coordinate at a time

def solve_asw_ratfn(field: GroundField, u: int, a: RatFn) -> RatFn | None:
    """One rational solution of x^(p^u) - x = a, or None.

    Pole parts and the polynomial part are matched independently (partial
    fractions are unique), and within each part the leading digit of any
    solution is forced, so a greedy descent decides solvability exactly.
    """
    if a.is_zero():
        return RatFn.zero(field)
    step = field.p**u
    pf = pf_decompose(a)
    total = RatFn.zero(field)
    for part in pf.parts:
        rem = RatFn(part.Q, part.P**part.e)
        x_p = RatFn.zero(field)
        while not rem.is_zero():
            e = -rem.v_at(part.P)
            if e % step != 0:
                return None
            c = pole_digits(rem, part.P)[e]
            w = RatFn(inv_frobenius_mod(c, part.P, u), part.P ** (e // step))
            x_p = x_p + w
            rem = rem - (w.frob_power(u) - w)
        total = total + x_p
    # polynomial part by descending degree
    f = pf.polypart
    g = Poly.zero(field)
    while f.degree > 0:
        d = f.degree
        if d % step != 0:
            return None
        lead = _inv_frob_const(field, f.lead(), u)
        term = Poly(field, (0,) * (d // step) + (lead,))
        g = g + term
        f = f - (term.frob_power(u) - term)
    consts = frob_affine_solutions(field, u, f.constant_term())
    if not consts:
        return None
    return total + RatFn.from_poly(g + Poly.const(field, consts[0]))


def _embed_coord(dom, v: int, j: int, a) -> WittVec:
    coords = [dom.zero()] * v
    coords[j] = a
    return WittVec(dom, coords)


def witt_asw_solve(xi: WittVec, u: int) -> WittVec | None:
    """A Witt vector w over k with w^(p^u) - w = xi, or None.

    Recursive over coordinates; the first coordinate determines a solution
    up to an additive constant in F_{p^u}, and each choice is tried.
    """
    field = xi.dom.field
    dom = xi.dom
    v = xi.v
    x1 = solve_asw_ratfn(field, u, xi.coords[0])
    if x1 is None:
        return None
    if v == 1:
        return WittVec(dom, (x1,))
    for c in subfield_elements(field, u):
        cand = x1 + RatFn.from_poly(Poly.const(field, c))
        head = _embed_coord(dom, v, 0, cand)
        rest = witt_sub(xi, asw_operator(head, u))
        assert rest.coords[0].is_zero()
        tail = witt_asw_solve(WittVec(dom, rest.coords[1:]), u)
        if tail is not None:
            return witt_add(head, witt_vshift(tail))
    return None


def witt_asw_member(xi: WittVec, u: int) -> bool:
    """Whether xi is hit by the operator on W_v(k); independent slow check."""
    return witt_asw_solve(xi, u) is not None


def witt_asw_solve_const(x: WittVec, u: int) -> WittVec | None:
    """Solve w^(p^u) - w = x inside W_v(F) for a constant vector x."""
    field = x.dom.field
    dom = x.dom
    sols = frob_affine_solutions(field, u, x.coords[0])
    if not sols:
        return None
    if x.v == 1:
        return WittVec(dom, (sols[0],))
    for s in sols:
        head = _embed_coord(dom, x.v, 0, s)
        rest = witt_sub(x, asw_operator(head, u))
        assert rest.coords[0] == 0
        tail = witt_asw_solve_const(WittVec(dom, rest.coords[1:]), u)
        if tail is not None:
            return witt_add(head, witt_vshift(tail))
    return None


# ---------------------------------------------------------------------------
# canonical reduced representatives

def reduce_delta(delta: WittVec, P: Poly, u: int) -> WittVec:
    """Clear every pole digit at P whose order is divisible by p^u.

    Coordinates are processed left to right; clearing coordinate j only
    perturbs later coordinates, so one ascending pass with a per-coordinate
    fixpoint loop lands in the canonical shape.  The class of delta modulo
    the operator image is unchanged.
    """
    field = delta.dom.field
    dom = delta.dom
    step = field.p**u
    v = delta.v
    for j in range(v):
        while True:
            digits = pole_digits(delta.coords[j], P)
            bad = [e for e in digits if e % step == 0]
            if not bad:
                break
            e = max(bad)
            w = RatFn(inv_frobenius_mod(digits[e], P, u), P ** (e // step))
            delta = witt_sub(delta, asw_operator(_embed_coord(dom, v, j, w), u))
    return delta


def reduce_gamma(gamma: WittVec, u: int):
    """Canonical (positive part, constant part) of a polynomial-coordinate
    class: no monomial of positive degree divisible by p^u remains, all
    constant terms are moved into a W_v(F_q) vector.

    Returns (gamma_plus, gamma_const); gamma_plus is Witt-congruent to
    gamma (Witt-)minus the constant embedding of gamma_const.
    """
    field = gamma.dom.field
    dom = gamma.dom
    fq = fq_domain(field)
    step = field.p**u
    v = gamma.v
    const_acc = witt_zero(fq, v)
    for _ in range(1000):
        # clear reducible monomials, coordinates left to right
        for j in range(v):
            while True:
                poly = gamma.coords[j].as_poly()
                bad = [d for d in range(1, len(poly.c)) if poly.c[d] and d % step == 0]
                if not bad:
                    break
                d = max(bad)
                w = RatFn.from_poly(
                    Poly(field, (0,) * (d // step) + (_inv_frob_const(field, poly.c[d], u),))
                )
                gamma = witt_sub(gamma, asw_operator(_embed_coord(dom, v, j, w), u))
        # split off the constant terms by evaluating at T = 0
        cvec = WittVec(fq, tuple(c.as_poly().evaluate(0) for c in gamma.coords))
        if cvec.is_zero():
            return gamma, const_acc
        const_acc = witt_add(const_acc, cvec)
        lift = WittVec(dom, tuple(RatFn.from_poly(Poly.const(field, c)) for c in cvec.coords))
        gamma = witt_sub(gamma, lift)
        if all(
            not any(d % step == 0 for d in range(1, len(c.as_poly().c)) if c.as_poly().c[d])
            and c.as_poly().constant_term() == 0
            for c in gamma.coords
        ):
            return gamma, const_acc
    raise AssertionError("gamma reduction did not stabilize")


@lru_cache(maxsize=None)
def asw_const_image(field: GroundField, u: int, v: int) -> frozenset:
    """Image of the operator on W_v(F_q), as a set of coordinate tuples."""
    if field.q**v > CONST_ENUM_CAP:
        raise CapExceeded(f"W_{v}(F_{field.q}) too large to enumerate")
    dom = fq_domain(field)
    out = set()
    for coords in itertools.product(range(field.q), repeat=v):
        out.add(asw_operator(WittVec(dom, coords), u).coords)
    return frozenset(out)


def const_coset_rep(gc: WittVec, u: int) -> tuple:
    """Least member of gc + image, a canonical label for the constant class."""
    field = gc.dom.field
    image = asw_const_image(field, u, gc.v)
    best = None
    for im in image:
        cand = witt_add(gc, WittVec(gc.dom, im)).coords
        if best is None or cand < best:
            best = cand
    return best


@dataclass(frozen=True)
class ClassParts:
    """Canonical data of a class: per-prime parts, wild part, constant part."""

    deltas: tuple  # ((P, reduced WittVec), ...) sorted by prime
    gamma_plus: WittVec
    gamma_const: WittVec
    key: tuple


def _ratfn_ser(a: RatFn):
    return (a.num.c, a.den.c)


def analyze(xi: WittVec, u: int) -> ClassParts:
    """Decompose and reduce xi into its canonical class parts."""
    raw_deltas, gamma = decompose_vec(xi)
    deltas = []
    for P in sorted(raw_deltas, key=lambda P: P.sort_key()):
        red = reduce_delta(raw_deltas[P], P, u)
        if not red.is_zero():
            deltas.append((P, red))
    gamma_plus, gamma_const = reduce_gamma(gamma, u)
    key = (
        tuple((P.c, tuple(_ratfn_ser(c) for c in d.coords)) for P, d in deltas),
        tuple(_ratfn_ser(c) for c in gamma_plus.coords),
        const_coset_rep(gamma_const, u),
    )
    return ClassParts(tuple(deltas), gamma_plus, gamma_const, key)


def class_key(xi: WittVec, u: int) -> tuple:
    return analyze(xi, u).key


def class_is_trivial(xi: WittVec, u: int) -> bool:
    parts = analyze(xi, u)
    zero_rep = const_coset_rep(witt_zero(gamma_const_dom(xi), xi.v), u)
    return (
        not parts.deltas
        and parts.gamma_plus.is_zero()
        and parts.key[2] == zero_rep
    )


def gamma_const_dom(xi: WittVec):
    return fq_domain(xi.dom.field)


# ---------------------------------------------------------------------------
# modules of classes under the constant Witt scalars

def module_analysis(gens: list[WittVec], u: int) -> dict:
    """The group generated by all W_v(F_{p^u})-multiples of the generators,
    as a map canonical key -> ClassParts.  Folded one generator at a time
    with deduplication, so the cost is bounded by the actual module size.
    """
    if not gens:
        raise ValueError("need at least one generator")
    field = gens[0].dom.field
    v = gens[0].v
    zero = witt_zero(gens[0].dom, v)
    elems = {analyze(zero, u).key: (zero, analyze(zero, u))}
    scalars = scalar_vectors(field, u, v)
    for g in gens:
        multiples = []
        seen = set()
        for c in scalars:
            m = witt_scalar(c, g)
            parts = analyze(m, u)
            if parts.key not in seen:
                seen.add(parts.key)
                multiples.append(m)
        new_elems = {}
        for _, (rep, _) in elems.items():
            for m in multiples:
                s = witt_add(rep, m)
                parts = analyze(s, u)
                if parts.key not in new_elems:
                    new_elems[parts.key] = (s, parts)
        elems = new_elems
    return {k: parts for k, (rep, parts) in elems.items()}


def module_reps(gens: list[WittVec], u: int) -> dict:
    """Like module_analysis but keeps a representative vector per class."""
    if not gens:
        raise ValueError("need at least one generator")
    field = gens[0].dom.field
    v = gens[0].v
    zero = witt_zero(gens[0].dom, v)
    elems = {class_key(zero, u): zero}
    scalars = scalar_vectors(field, u, v)
    for g in gens:
        multiples = {}
        for c in scalars:
            m = witt_scalar(c, g)
            multiples.setdefault(class_key(m, u), m)
        new_elems = {}
        for rep in elems.values():
            for m in multiples.values():
                s = witt_add(rep, m)
                new_elems.setdefault(class_key(s, u), s)
        elems = new_elems
    return elems


def module_order(gens: list[WittVec], u: int) -> int:
    return len(module_analysis(gens, u))


def dual_group(gens: list[WittVec], scalar_u: int) -> dict:
    """Group of classes mod the u = 1 operator generated by all
    W_v(F_{p^scalar_u})-scalar multiples of the generators.  This is the
    resolution in which two descriptors define the same field exactly when
    the groups coincide."""
    if not gens:
        raise ValueError("need at least one generator")
    field = gens[0].dom.field
    v = gens[0].v
    zero = witt_zero(gens[0].dom, v)
    elems = {class_key(zero, 1): zero}
    scalars = scalar_vectors(field, scalar_u, v)
    for g in gens:
        multiples = {}
        for c in scalars:
            m = witt_scalar(c, g)
            multiples.setdefault(class_key(m, 1), m)
        new_elems = {}
        for rep in elems.values():
            for m in multiples.values():
                s = witt_add(rep, m)
                new_elems.setdefault(class_key(s, 1), s)
        elems = new_elems
    return elems


def additive_order(x: WittVec, u: int) -> int:
    """Order of the class of x in W_v(k) modulo the operator image."""
    acc = x
    order = 1
    while not class_is_trivial(acc, u):
        acc = witt_add(acc, x)
        order += 1
        if order > x.p ** x.v:
            raise AssertionError("additive order exceeded p^v")
    return order


# ---------------------------------------------------------------------------
# constants: minimal constant field over which a constant class dies

def const_min_m(field: GroundField, gc: WittVec, u: int, bound: int) -> int | None:
    """Least m <= bound with gc solvable in W_v(F_{q^m}), else None."""
    zero_rep = const_coset_rep(witt_zero(gc.dom, gc.v), u)
    if const_coset_rep(gc, u) == zero_rep:
        return 1
    for m in range(2, bound + 1):
        big = field_make(field.p, field.l * m)
        phi = embed(field, big)
        lifted = WittVec(fq_domain(big), tuple(phi(c) for c in gc.coords))
        if witt_asw_solve_const(lifted, u) is not None:
            return m
    return None


def infinite_constant_class(gc: WittVec, u: int) -> int:
    """Least d >= 1 with d * [gc] = 0 in W_v(F_q) mod the operator image."""
    field = gc.dom.field
    image = asw_const_image(field, u, gc.v)
    acc = gc
    d = 1
    while acc.coords not in image:
        acc = witt_add(acc, gc)
        d += 1
        if d > field.q ** gc.v:
            raise AssertionError("constant class order exceeded group size")
    return d


# ---------------------------------------------------------------------------
# ramification reports

@dataclass(frozen=True)
class RamificationReport:
    degree: int
    finite: tuple  # ((P, e_P), ...) sorted
    e_inf: int
    f_inf: int
    h_inf: int
    t: int  # degree of the infinite primes = f_inf
    constant_field_degree: int
    flags: tuple = ()


def asw_ramify(ext: ASWExt, search_bound: int | None = None) -> RamificationReport:
    """Ramification of k(y)/k for y^(p^u) - y = xi via class-part counting.

    The finite index at P is the size of the image of the module of xi
    under the P-part map; the infinite data comes from the polynomial and
    constant parts in the same way.  A factor-list descriptor is handled
    as the multi-generator module of its p-power equations.
    """
    gens, u = asw_working_parts(ext)
    module = module_analysis(gens, u)
    degree = len(module)
    support = sorted(
        {P for parts in module.values() for P, _ in parts.deltas},
        key=lambda P: P.sort_key(),
    )
    finite = []
    for P in support:
        images = set()
        for parts in module.values():
            d = dict(parts.deltas).get(P)
            images.add(None if d is None else tuple(_ratfn_ser(c) for c in d.coords))
        finite.append((P, len(images)))
    inf_pairs = {(parts.key[1], parts.key[2]) for parts in module.values()}
    inf_wild = {parts.key[1] for parts in module.values()}
    ef = len(inf_pairs)
    e_inf = len(inf_wild)
    assert ef % e_inf == 0
    f_inf = ef // e_inf
    assert degree % ef == 0
    h_inf = degree // ef
    # constant subfield: purely constant classes; any such class generates a
    # cyclic constant extension of degree at most p^v
    bound = search_bound if search_bound is not None else 2 * ext.field.p**ext.v
    const_degree = 1
    fq = fq_domain(ext.field)
    zero_rep = const_coset_rep(witt_zero(fq, ext.v), u)
    for parts in module.values():
        if not parts.deltas and parts.gamma_plus.is_zero() and parts.key[2] != zero_rep:
            m = const_min_m(ext.field, parts.gamma_const, u, bound)
            if m is None:
                raise CapExceeded("constant subfield search bound exceeded")
            const_degree = lcm(const_degree, m)
    flags = []
    if u == 1 and len(gens) == 1:
        # first-index shape of each reduced single-prime part
        own = analyze(gens[0], u)
        for P, d in own.deltas:
            j = next(i for i, c in enumerate(d.coords) if not c.is_zero())
            flags.append(("schmid_first_index", P.c, j + 1))
            assert dict(finite)[P] == ext.field.p ** (ext.v - j), (
                "first-index rule disagrees with the module count"
            )
    return RamificationReport(
        degree=degree,
        finite=tuple(finite),
        e_inf=e_inf,
        f_inf=f_inf,
        h_inf=h_inf,
        t=f_inf,
        constant_field_degree=const_degree,
        flags=tuple(flags),
    )


def kummer_ramify(ext: KummerExt) -> RamificationReport:
    """Ramification of k(t-th root of gamma*D)/k from the exponent data.

    At a finite prime P_i with exponent alpha_i the index is
    t/gcd(alpha_i, t).  At infinity the radicand has valuation -deg D and
    unit part gamma, and the pair of their orders in Z/t determines
    (e, f); f_inf is 1 for the canonical sign and the value is checked
    against the cyclotomic character model elsewhere.
    """
    from math import gcd

    field = ext.field
    t = ext.t
    finite = tuple((P, t // gcd(a, t)) for P, a in ext.factorization)
    rad = kummer_radicand(ext)
    d0 = -v_infinity(RatFn.from_poly(rad))
    e_inf = t // gcd(t, d0)
    # unit part of the radicand at infinity is its leading coefficient
    unit = rad.lead()
    j = 0 if unit == 1 else field.dlog(unit) % t
    ord_unit = t // gcd(t, j) if j else 1
    n_loc = lcm(e_inf, ord_unit)
    f_inf = n_loc // e_inf
    assert t % n_loc == 0
    h_inf = t // n_loc
    return RamificationReport(
        degree=t,
        finite=finite,
        e_inf=e_inf,
        f_inf=f_inf,
        h_inf=h_inf,
        t=f_inf,
        constant_field_degree=f_inf,
        flags=(("oracle_verified_f_inf", f_inf),),
    )
