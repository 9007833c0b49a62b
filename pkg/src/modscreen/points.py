"""Degrees of closed points over a fixed j-class, from a Galois image subgroup.

The degree of a point is the residue field degree of the j-coordinate times
a coset index: the image R acting on cosets of the structure group H. The
whole fiber decomposes into R-orbits on the coset table, one closed point per
orbit. On top of that sit the closed-form degree identities for the nonsplit
Cartan normalizer tower and the Riemann-Roch screen that rules isolation out
(never in).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

from .curves import curve_data
from .errors import ModulusMismatch, NonIntegral, TooLarge
from .subgroups import (ENUMERATION_CAP, EnumeratedGroup, FullGroup,
                        SubgroupSpec, adjoin_minus_i, contains_minus_i,
                        factorize, identity_quad, index_via_orbit,
                        level, lift_subgroup, minus_identity_quad,
                        reduce_subgroup)
from .zmod import Quad, is_prime, quad_mul


class Verdict(str, Enum):
    FORCED_P1 = "ForcedP1Parametrized"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:  # keep CLI output free of enum repr noise
        return self.value


@dataclass(frozen=True)
class GaloisImageContext:
    """A Galois image R, the degree of the j-field, and the automorphism set.

    aut=None means the generic two-element automorphism convention, under
    which the image is +-adjoined; an explicit aut is carried verbatim for the
    general degree formula.
    """

    image: SubgroupSpec
    d_j: int = 1
    aut: SubgroupSpec | None = None
    adjoined_minus_i: bool = False


def galois_context(image: SubgroupSpec, d_j: int = 1,
                   aut: SubgroupSpec | None = None) -> GaloisImageContext:
    if d_j < 1:
        raise ValueError(f"j-field degree must be >= 1, got {d_j}")
    if aut is not None and aut.n != image.n:
        raise ModulusMismatch(f"aut mod {aut.n} against image mod {image.n}")
    adjoined = False
    if _aut_is_plus_minus(aut, image.n) and not contains_minus_i(image):
        warnings.warn(f"adjoined -I to the Galois image mod {image.n}",
                      stacklevel=2)
        image = adjoin_minus_i(image)
        adjoined = True
    return GaloisImageContext(image=image, d_j=d_j, aut=aut,
                              adjoined_minus_i=adjoined)


def _aut_is_plus_minus(aut: SubgroupSpec | None, n: int) -> bool:
    if aut is None:
        return True
    return aut.element_quads == frozenset(
        {identity_quad(n), minus_identity_quad(n)})


def point_degree(ctx: GaloisImageContext, h: SubgroupSpec) -> int:
    """d_j times the index of R meet H in R, for the +-convention."""
    if not _aut_is_plus_minus(ctx.aut, ctx.image.n):
        return point_degree_general(ctx, h)
    h = _require_minus_i(h)
    return ctx.d_j * index_via_orbit(ctx.image, h)


def point_degree_general(ctx: GaloisImageContext, h: SubgroupSpec) -> int:
    """d_j * |RA| / |RA meet AH| for an arbitrary finite automorphism set A.

    Both products are materialized, so this path is for small moduli; the
    +-convention fast path is point_degree.
    """
    r = ctx.image
    if r.n != h.n:
        raise ModulusMismatch(f"image mod {r.n} against group mod {h.n}")
    n = r.n
    if ctx.aut is None:
        aut: SubgroupSpec = EnumeratedGroup(
            n, [identity_quad(n), minus_identity_quad(n)])
    else:
        aut = ctx.aut
    if r.order * aut.order > ENUMERATION_CAP or aut.order * h.order > ENUMERATION_CAP:
        raise TooLarge("product sets exceed the enumeration cap")
    ra = frozenset(quad_mul(n, x, a) for x in r.element_quads
                   for a in aut.element_quads)
    ah = frozenset(quad_mul(n, a, x) for a in aut.element_quads
                   for x in h.element_quads)
    meet = ra & ah
    if len(ra) % len(meet):
        raise NonIntegral(f"|RA| = {len(ra)} not divisible by {len(meet)}")
    return ctx.d_j * (len(ra) // len(meet))


def _full_coset_table(h: SubgroupSpec) -> tuple[list[Quad], dict]:
    """BFS table of all right cosets of H in the ambient group."""
    n = h.n
    gens = FullGroup(n).generator_quads()
    key = h.coset_key
    reps = [identity_quad(n)]
    table = {key(reps[0]): 0}
    i = 0
    while i < len(reps):
        x = reps[i]
        for g in gens:
            y = quad_mul(n, x, g)
            ky = key(y)
            if ky not in table:
                if len(reps) >= ENUMERATION_CAP:
                    raise TooLarge(f"coset table mod {n} exceeds cap")
                table[ky] = len(reps)
                reps.append(y)
        i += 1
    return reps, table


def fiber_degrees(ctx: GaloisImageContext, h: SubgroupSpec) -> tuple[int, ...]:
    """Degrees of every closed point over the j-class, sorted ascending.

    One degree per orbit of R on the full coset table of H; the orbit of the
    identity coset carries the distinguished point, whose degree is exactly
    point_degree(ctx, h).
    """
    if not _aut_is_plus_minus(ctx.aut, ctx.image.n):
        raise ValueError("fiber decomposition needs the +- automorphism convention")
    h = _require_minus_i(h)
    r = ctx.image
    if r.n != h.n:
        raise ModulusMismatch(f"image mod {r.n} against group mod {h.n}")
    n = h.n
    reps, table = _full_coset_table(h)
    key = h.coset_key
    rgens = r.generator_quads()

    degrees = []
    assigned = [False] * len(reps)
    for start in range(len(reps)):
        if assigned[start]:
            continue
        assigned[start] = True
        orbit = [start]
        frontier = [start]
        while frontier:
            new = []
            for i in frontier:
                x = reps[i]
                for g in rgens:
                    j = table[key(quad_mul(n, x, g))]
                    if not assigned[j]:
                        assigned[j] = True
                        orbit.append(j)
                        new.append(j)
            frontier = new
        degrees.append(ctx.d_j * len(orbit))
    return tuple(sorted(degrees))


def _require_minus_i(h: SubgroupSpec) -> SubgroupSpec:
    hpm = adjoin_minus_i(h)
    if hpm is not h:
        warnings.warn(f"adjoined -I to a subgroup mod {h.n} before the degree "
                      "computation", stacklevel=3)
    return hpm


@dataclass(frozen=True)
class LevelReductionResult:
    """Both sides of the degree identity along a reduction of level.

    hypothesis_holds records whether the image's level divides the target
    modulus; when it fails the identity is not guaranteed, and the sides are
    reported anyway. When the sides agree, isolation is known to transfer
    from the source curve down along the reduction map; this report states
    the degree identity only and makes no isolation claim of its own.
    """

    h_prime: SubgroupSpec
    lhs: int
    rhs: int
    equal: bool
    hypothesis_holds: bool


def level_reduction(ctx: GaloisImageContext, h: SubgroupSpec,
                    m: int) -> LevelReductionResult:
    """Compare [R meet H' : R meet H] with [H' : H] for H' the mod-l^m relaxation.

    The modulus must be a prime power l^n with m <= n; H' is the full preimage
    of the reduction of H to l^m.
    """
    r = ctx.image
    if r.n != h.n:
        raise ModulusMismatch(f"image mod {r.n} against group mod {h.n}")
    fac = factorize(h.n)
    if len(fac) != 1:
        raise ValueError(f"modulus {h.n} is not a prime power")
    ell, n_exp = fac[0]
    if not 0 <= m <= n_exp:
        raise ValueError(f"exponent {m} out of range for {ell}^{n_exp}")
    h = _require_minus_i(h)

    target = ell**m
    h_prime = lift_subgroup(reduce_subgroup(h, target), h.n)
    fine = index_via_orbit(r, h)
    coarse = index_via_orbit(r, h_prime)
    assert fine % coarse == 0
    lhs = fine // coarse
    rhs = index_via_orbit(h_prime, h)
    return LevelReductionResult(
        h_prime=h_prime,
        lhs=lhs,
        rhs=rhs,
        equal=lhs == rhs,
        hypothesis_holds=target % level(r) == 0,
    )


def degree_bound_check(deg_x: int, deg_f: int, deg_fx: int) -> bool:
    """deg(x) <= deg(f) * deg(f(x)), the covering bound on point degrees."""
    if min(deg_x, deg_f, deg_fx) < 1:
        raise ValueError("degrees must be positive")
    return deg_x <= deg_f * deg_fx


def rr_screen(degree: int, r: int, genus: int) -> Verdict:
    """Points of degree above (components) * (genus) move in a pencil."""
    if degree < 1 or r < 1 or genus < 0:
        raise ValueError(f"bad screen inputs ({degree}, {r}, {genus})")
    if degree > r * genus:
        return Verdict.FORCED_P1
    return Verdict.INCONCLUSIVE


def cartan_degree_formula(ell: int, n: int, delta_order: int) -> int:
    """(l^2 - 1) l^(2n-2) / delta_order, the degree over the Cartan-normalizer
    image of the distinguished point at level l^n."""
    _check_odd_prime(ell)
    if n < 1:
        raise ValueError(f"exponent must be >= 1, got {n}")
    _check_even_order(delta_order)
    num = (ell * ell - 1) * ell ** (2 * n - 2)
    if num % delta_order:
        raise NonIntegral(f"{delta_order} does not divide {num}")
    return num // delta_order


def semidirect_lower_bound(ell: int, delta_order: int) -> int:
    """l (l^2 - 1) / delta_order, the degree floor in the level-l^2 twist case."""
    _check_odd_prime(ell)
    _check_even_order(delta_order)
    num = ell * (ell * ell - 1)
    if num % delta_order:
        raise NonIntegral(f"{delta_order} does not divide {num}")
    return num // delta_order


def _check_odd_prime(ell: int) -> None:
    if not is_prime(ell) or ell == 2:
        raise ValueError(f"{ell} is not an odd prime")


def _check_even_order(delta_order: int) -> None:
    if delta_order < 2 or delta_order % 2:
        raise ValueError(f"delta order must be even and positive, got {delta_order}")


@dataclass(frozen=True)
class PointDegreeReport:
    degree: int
    fiber_degrees: tuple[int, ...]
    screen: Verdict
    details: dict[str, int]


def point_report(ctx: GaloisImageContext, h: SubgroupSpec,
                 components: int = 1) -> PointDegreeReport:
    """Distinguished-point degree, full fiber, and the isolation screen."""
    degree = point_degree(ctx, h)
    fibers = fiber_degrees(ctx, h)
    genus = curve_data(h).genus
    return PointDegreeReport(
        degree=degree,
        fiber_degrees=fibers,
        screen=rr_screen(degree, components, genus),
        details={
            "index": degree // ctx.d_j,
            "ambient_index": sum(fibers) // ctx.d_j,
            "genus": genus,
            "components": components,
        },
    )
