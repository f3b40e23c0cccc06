"""Genus fields and conductors of constants for the descriptor families.

For a Kummer radical the genus field is the fixed field, under the
decomposition group of the infinite prime, of the compositum of the
single-prime radicals; the group sits inside the product of cyclic
groups attached to the radical generators and is generated by the image
of the tame inertia at infinity together with the residue Frobenius.

For a p-extension the genus field is generated by one equation per
ramified finite prime (the reduced single-prime part) plus one equation
for the polynomial-plus-constant part; the decomposition group at
infinity is trivial.

The conductor of constants m is computed twice, by the minimality search
over constant field extensions and by t times the quotient of infinite
ramification indices; disagreement is a fatal internal error.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import gcd, lcm

from .errors import CapExceeded, InternalCheckError, SchemaError
from .extdesc import (
    ASWExt,
    CompositeExt,
    CyclotomicSubfield,
    KummerExt,
    asw_working_parts,
    decompose_vec,
)
from .ffalg import Poly
from .ratfrac import RatFn
from .witt import WittVec, fq_domain, ratfn_domain, witt_add, witt_sub, witt_zero
from .chars import (
    char_closure,
    char_component_lifted,
    char_local_component,
    char_make,
    unit_group,
)
from .ramify import (
    RamificationReport,
    analyze,
    asw_ramify,
    const_coset_rep,
    const_min_m,
    kummer_ramify,
    module_analysis,
    module_order,
)


@dataclass(frozen=True)
class GenusFieldReport:
    kind: str
    deg_K: int
    deg_Kge_over_k: int
    deg_Kge_over_K: int
    t: int  # degree of the constant field of the genus field
    d_subgroup_order: int
    d_subgroup_gens: tuple = ()
    kummer_radicals: tuple = ()  # (s_i, radicand) pairs generating L
    radical_generators: tuple | None = None  # radical presentation of K_ge if any
    asw_generators: tuple = ()  # ("prime", P, WittVec) and ("wild", WittVec) entries
    asw_u: int = 1
    cyclotomic_parts: tuple = ()  # (P_j, b_j) tame subfield degrees
    ramification: RamificationReport | None = None
    notes: tuple = ()


@dataclass(frozen=True)
class ConductorReport:
    m: int
    t: int
    d: int
    d_star: int
    s: int


# ---------------------------------------------------------------------------
# Kummer radicals

def kummer_radical_list(ext: KummerExt):
    """The generators of L: (s_i, radicand_i) with s_i = t/gcd(alpha_i, t)."""
    field = ext.field
    out = []
    for P, a in ext.factorization:
        d_i = gcd(a, ext.t)
        s_i = ext.t // d_i
        base = P ** (a // d_i)
        gamma_i = 1 if base.degree % 2 == 0 else field.neg(1)
        out.append((s_i, base.scale(gamma_i)))
    return tuple(out)


def genus_kummer(ext: KummerExt) -> GenusFieldReport:
    """Genus field of k(t-th root of gamma*D).

    Gal(L/k) is identified with the product of Z/s_i via the action on
    the radical generators; the inertia image at infinity is generated by
    the vector of radicand degrees, the Frobenius by the vector of sign
    classes, and the genus field is the fixed field of their intersection
    with Gal(L/K).
    """
    field = ext.field
    q = field.q
    radicals = kummer_radical_list(ext)
    s = [si for si, _ in radicals]
    degs = [rad.degree for _, rad in radicals]
    if len(s) > 6 or _prod(s) > 65536:
        raise CapExceeded("radical generator lattice too large")
    # inertia at infinity: component exponents -deg(rad_i) mod s_i
    v_inertia = tuple((-d) % si for si, d in zip(s, degs))
    # residue Frobenius: the class of the sign gamma_i = (-1)^(deg rad_i)
    if field.p == 2:
        v_frob = tuple(0 for _ in s)
    else:
        v_frob = tuple(((q - 1) // 2 * (d % 2)) % si for si, d in zip(s, degs))
    lattice = list(itertools.product(*[range(si) for si in s]))
    d_group = _lattice_closure([v_inertia, v_frob], s)
    # Gal(L/K): the product of the component roots of unity must be 1
    weights = [(q - 1) // si for si in s]
    ker = {w for w in lattice if sum(wi * ci for wi, ci in zip(w, weights)) % (q - 1) == 0}
    deg_K = len(lattice) // len(ker)
    d_K_set = {w for w in d_group if w in ker}  # intersection of subgroups
    deg_L = len(lattice)
    deg_Kge = deg_L // len(d_K_set)
    assert deg_Kge % deg_K == 0
    # radical presentation of the fixed field when a coordinate block cuts it
    fixed_idx = [i for i in range(len(s)) if all(w[i] == 0 for w in d_K_set)]
    radical_generators = None
    if _prod([s[i] for i in fixed_idx]) == deg_Kge:
        radical_generators = tuple(radicals[i] for i in fixed_idx)
    ram = kummer_ramify(ext)
    report = GenusFieldReport(
        kind="kummer",
        deg_K=deg_K,
        deg_Kge_over_k=deg_Kge,
        deg_Kge_over_K=deg_Kge // deg_K,
        t=ram.t,
        d_subgroup_order=len(d_K_set),
        d_subgroup_gens=_group_generators(d_K_set, s),
        kummer_radicals=radicals,
        radical_generators=radical_generators,
        ramification=ram,
        notes=("f_inf rule oracle-verified against the character model",),
    )
    if ram.degree != deg_K:
        raise InternalCheckError(
            f"radical lattice degree {deg_K} != ramification degree {ram.degree}"
        )
    return report


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _lattice_closure(gens, moduli):
    zero = tuple(0 for _ in moduli)
    out = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for b in frontier:
            for g in gens:
                x = tuple((bi + gi) % m for bi, gi, m in zip(b, g, moduli))
                if x not in out:
                    out.add(x)
                    nxt.append(x)
        frontier = nxt
    return out


def _group_generators(elements, moduli) -> tuple:
    """A small deterministic generating set of a subgroup of prod Z/m_i."""
    zero = tuple(0 for _ in moduli)
    gens: list = []
    have = {zero}
    for x in sorted(elements):
        if x not in have:
            gens.append(x)
            have = _lattice_closure(gens, moduli)
    return tuple(gens)


# ---------------------------------------------------------------------------
# abelian p-extensions

def asw_genus_generators(ext: ASWExt):
    """Reduced one-prime equations plus the wild part, one per class.

    Returns (prime_gens, wild_gen, u) where prime_gens is a sorted tuple
    of (P, WittVec) and wild_gen recombines the reduced polynomial part
    with the constant part (None when that class is trivial).
    """
    gens, u = asw_working_parts(ext)
    dom = ratfn_domain(ext.field)
    by_prime: dict = {}
    wild = []
    for g in gens:
        parts = analyze(g, u)
        for P, delta in parts.deltas:
            by_prime.setdefault(P, []).append(delta)
        gamma = witt_add(
            parts.gamma_plus,
            WittVec(dom, tuple(RatFn.from_poly(Poly.const(ext.field, c)) for c in parts.gamma_const.coords)),
        )
        if not gamma.is_zero():
            wild.append(gamma)
    return by_prime, wild, u


def genus_asw(ext: ASWExt) -> GenusFieldReport:
    """Genus field of an abelian p-extension: one equation per ramified
    prime plus the wild-infinite equation; no infinite decomposition
    group survives (the extension is a p-extension, so d = 1)."""
    field = ext.field
    by_prime, wild, u = asw_genus_generators(ext)
    base = asw_ramify(ext)
    gen_entries = []
    all_gens = []
    expected = 1
    for P in sorted(by_prime, key=lambda P: P.sort_key()):
        deltas = by_prime[P]
        e_P = module_order(deltas, u)
        assert e_P == dict(base.finite)[P], "per-prime generator degree != e_P"
        expected *= e_P
        for delta in deltas:
            gen_entries.append(("prime", P, delta))
            all_gens.append(delta)
    if wild:
        wild_order = module_order(wild, u)
        expected *= wild_order
        for g in wild:
            gen_entries.append(("wild", None, g))
            all_gens.append(g)
    deg_Kge = module_order(all_gens, u) if all_gens else 1
    if deg_Kge != expected:
        raise InternalCheckError(
            f"genus degree {deg_Kge} != product of generator degrees {expected}"
        )
    assert deg_Kge % base.degree == 0
    # Theorem check: the constant field of the genus field has degree t
    t_kge = _module_constant_degree(all_gens, u, ext) if all_gens else 1
    if t_kge != base.t:
        raise InternalCheckError(
            f"constant field of the genus field has degree {t_kge}, expected t = {base.t}"
        )
    return GenusFieldReport(
        kind="asw",
        deg_K=base.degree,
        deg_Kge_over_k=deg_Kge,
        deg_Kge_over_K=deg_Kge // base.degree,
        t=base.t,
        d_subgroup_order=1,
        asw_generators=tuple(gen_entries),
        asw_u=u,
        ramification=base,
        notes=("decomposition group at infinity is trivial for p-extensions",),
    )


def _module_constant_degree(gens, u, ext) -> int:
    module = module_analysis(gens, u)
    fq = fq_domain(ext.field)
    zero_rep = const_coset_rep(witt_zero(fq, ext.v), u)
    bound = 2 * ext.field.p**ext.v
    out = 1
    for parts in module.values():
        if not parts.deltas and parts.gamma_plus.is_zero() and parts.key[2] != zero_rep:
            m = const_min_m(ext.field, parts.gamma_const, u, bound)
            if m is None:
                raise CapExceeded("constant subfield search bound exceeded")
            out = lcm(out, m)
    return out


def genus_module_keys(report: GenusFieldReport) -> frozenset:
    """Canonical class-module of the genus field: the invariant compared
    when two generator sets must present the same field."""
    gens = [g for kind, _, g in report.asw_generators]
    if not gens:
        return frozenset()
    return frozenset(module_analysis(gens, report.asw_u).keys())


# ---------------------------------------------------------------------------
# composites with tame cyclotomic parts

def _cyclic_part_char(part: CyclotomicSubfield, cap):
    U = unit_group(part.N, cap)
    chars = [char_make(U, exps) for exps in part.chars]
    closure = char_closure(chars)
    best = max(closure.values(), key=lambda c: (c.order(), c.exps))
    if len(closure) != best.order():
        raise SchemaError("cyclic part is not cyclic")
    return U, best


def genus_composite(ext: CompositeExt, cap: int = 100_000) -> GenusFieldReport:
    """Genus field of (p-part) * (tame cyclic parts of degree prime to
    p(q-1)): the p-part generators together with, for each ramified
    prime of the tame parts, the subfield of k(Lambda_P) of degree the
    lcm of the local character orders."""
    field = ext.field
    q1 = field.q - 1
    tame_orders = []
    local_orders: dict = {}
    for part in ext.cyclic_parts:
        U, chi = _cyclic_part_char(part, cap)
        t_i = chi.order()
        if gcd(t_i, field.p * q1) != 1:
            raise SchemaError(
                f"cyclic part degree {t_i} is not prime to p(q-1) = {field.p * q1}"
            )
        tame_orders.append((part, U, chi, t_i))
        for P, _ in U.factorization:
            comp = char_local_component(chi, P)
            o = comp.order()
            if o > 1:
                local_orders.setdefault(P, []).append(o)
    f_parts = tuple(sorted(((P, lcm(*orders) if len(orders) > 1 else orders[0])
                            for P, orders in local_orders.items()),
                           key=lambda t: t[0].sort_key()))
    tame_genus_degree = _prod([b for _, b in f_parts]) if f_parts else 1
    tame_degree = _tame_group_order(tame_orders, cap)
    if ext.p_part is not None:
        base = genus_asw(ext.p_part)
        asw_gens = base.asw_generators
        deg0, deg0_ge, t0, u = base.deg_K, base.deg_Kge_over_k, base.t, base.asw_u
        ram0 = base.ramification
    else:
        asw_gens, deg0, deg0_ge, t0, u, ram0 = (), 1, 1, 1, 1, None
    deg_K = deg0 * tame_degree
    deg_Kge = deg0_ge * tame_genus_degree
    assert deg_Kge % deg_K == 0
    ram = _composite_ramification(ram0, f_parts, deg_K, t0, field)
    return GenusFieldReport(
        kind="composite",
        deg_K=deg_K,
        deg_Kge_over_k=deg_Kge,
        deg_Kge_over_K=deg_Kge // deg_K,
        t=t0,
        d_subgroup_order=1,
        asw_generators=asw_gens,
        asw_u=u,
        cyclotomic_parts=f_parts,
        ramification=ram,
        notes=("tame degrees prime to q-1 force a trivial decomposition group",),
    )


def _tame_group_order(tame_orders, cap) -> int:
    """Order of the character group generated by the cyclic parts."""
    if not tame_orders:
        return 1
    if len(tame_orders) == 1:
        return tame_orders[0][3]
    # lift to the least common modulus
    field = tame_orders[0][0].field
    N = Poly.one(field)
    seen: dict = {}
    for part, U, chi, _ in tame_orders:
        for P, e in U.factorization:
            seen[P] = max(seen.get(P, 0), e)
    for P, e in seen.items():
        N = N * P**e
    U = unit_group(N, cap)
    lifted = []
    for part, _, chi, _ in tame_orders:
        exps = tuple(chi.value(g % chi.group.N) for g in U.generators)
        lifted.append(char_make(U, exps))
    return len(char_closure(lifted))


def _composite_ramification(ram0, f_parts, deg_K, t0, field) -> RamificationReport:
    finite: dict = {}
    if ram0 is not None:
        finite.update({P: e for P, e in ram0.finite})
    for P, b in f_parts:
        finite[P] = finite.get(P, 1) * b
    e_inf = ram0.e_inf if ram0 else 1
    f_inf = ram0.f_inf if ram0 else 1
    h_inf = deg_K // (e_inf * f_inf)
    return RamificationReport(
        degree=deg_K,
        finite=tuple(sorted(finite.items(), key=lambda t: t[0].sort_key())),
        e_inf=e_inf,
        f_inf=f_inf,
        h_inf=h_inf,
        t=t0,
        constant_field_degree=ram0.constant_field_degree if ram0 else 1,
    )


# ---------------------------------------------------------------------------
# conductor of constants

def conductor_of_constants(ext, search_bound: int | None = None) -> ConductorReport:
    """The least m with K inside (wild tower) * (cyclotomic) * F_{q^m}(T).

    Computed twice: by the minimality search over constant classes
    (m = t * d * p^s) and by t times the drop in infinite ramification
    over the cyclotomic-plus-wild subfield (m = t * d_star); the routes
    must agree exactly.
    """
    if isinstance(ext, KummerExt):
        rep = kummer_ramify(ext)
        if rep.f_inf != 1:
            raise InternalCheckError("canonical Kummer radical with inert infinity")
        return ConductorReport(m=1, t=1, d=1, d_star=1, s=0)
    if isinstance(ext, CompositeExt):
        if ext.p_part is None:
            return ConductorReport(m=1, t=1, d=1, d_star=1, s=0)
        return conductor_of_constants(ext.p_part, search_bound)
    if not isinstance(ext, ASWExt):
        raise SchemaError(f"no conductor computation for {type(ext).__name__}")
    field = ext.field
    gens, u = asw_working_parts(ext)
    module = module_analysis(gens, u)
    fq = fq_domain(field)
    zero_rep = const_coset_rep(witt_zero(fq, ext.v), u)
    inf_pairs = {(parts.key[1], parts.key[2]) for parts in module.values()}
    inf_wild = {parts.key[1] for parts in module.values()}
    ef = len(inf_pairs)
    e_inf = len(inf_wild)
    t = ef // e_inf
    # route 1: tame inertia through the finite-prime subfield, then the
    # minimality search for the constant part
    ek_gens = list(gens)
    for g in gens:
        deltas, gamma = decompose_vec(g)
        ek_gens.append(witt_sub(g, gamma))
    ek_module = module_analysis(ek_gens, u)
    ek_pairs = {(parts.key[1], parts.key[2]) for parts in ek_module.values()}
    ek_wild = {parts.key[1] for parts in ek_module.values()}
    f_ek = len(ek_pairs) // len(ek_wild)
    assert f_ek % t == 0
    d = f_ek // t
    if d != 1:
        # a p-extension admits no tame constant drop
        raise InternalCheckError(f"inertia jump d = {d} in a p-extension")
    bound = search_bound if search_bound is not None else 2 * t * field.p**ext.v
    m_min = 1
    for g in gens:
        gc = analyze(g, u).gamma_const
        m_g = const_min_m(field, gc, u, bound)
        if m_g is None:
            raise CapExceeded("conductor search bound exceeded")
        m_min = lcm(m_min, m_g)
    quotient, s = m_min // (t * d), 0
    if m_min % (t * d) != 0:
        raise InternalCheckError(f"m = {m_min} is not a multiple of t*d = {t * d}")
    while quotient % field.p == 0:
        quotient //= field.p
        s += 1
    if quotient != 1:
        raise InternalCheckError(f"m/(t*d) = {m_min // (t * d)} is not a p-power")
    # route 2: m = t * e_inf(K/F) where F is the subfield with no constant part
    f_elements = [parts for parts in module.values() if parts.key[2] == zero_rep]
    e_F = len({parts.key[1] for parts in f_elements})
    assert e_inf % e_F == 0
    d_star = e_inf // e_F
    m_star = t * d_star
    if m_star != m_min:
        raise InternalCheckError(
            f"conductor routes disagree: search gives {m_min}, ramification gives {m_star}"
        )
    return ConductorReport(m=m_min, t=t, d=d, d_star=d_star, s=s)
