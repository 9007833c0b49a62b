"""Geometry of the modular curve attached to a subgroup of GL2(Z/NZ).

The engine is one permutation representation: right cosets of the
determinant-1 part inside SL2(Z/NZ), acted on by the two standard unipotent
and rotation generators. Point counts of the three special fiber types and
the cusp count drop out of that action, and the genus follows from the usual
Euler characteristic bookkeeping. Everything is exact integer arithmetic.
"""

from __future__ import annotations

import hashlib
import warnings
from dataclasses import dataclass
from functools import cached_property

from .errors import NotFullDeterminant, OrbitTooLarge
from .subgroups import (ORBIT_CAP, SL2Part, SubgroupSpec, adjoin_minus_i,
                        gl2_order, identity_quad, index_via_orbit, level,
                        lift_subgroup, reduce_subgroup, sigma_quad, sl2_order,
                        subgroup_of, tau_quad)
from .zmod import Mat2, quad_mul


def sl2_part(h: SubgroupSpec) -> SubgroupSpec:
    """The subgroup of determinant-1 elements of H."""
    return SL2Part(h)


@dataclass(frozen=True)
class CosetSpace:
    """Right cosets of S = H meet SL2, with the action of the two generators.

    perm_s[i] and perm_t[i] are the indices of reps[i] * (0 -1; 1 0) and
    reps[i] * (1 1; 0 1). Representative order is BFS discovery order from
    the identity, so it is deterministic.
    """

    n: int
    base: SubgroupSpec
    reps: tuple[Mat2, ...]
    perm_s: tuple[int, ...]
    perm_t: tuple[int, ...]

    @property
    def mu(self) -> int:
        return len(self.reps)

    @cached_property
    def nu2(self) -> int:
        """Cosets fixed by the order-4 rotation (order 2 in the projective group)."""
        return sum(1 for i, j in enumerate(self.perm_s) if i == j)

    @cached_property
    def nu3(self) -> int:
        # the order-3 element is (rotation) * (translation)^-1, so a coset is
        # fixed exactly when both generators move it to the same place
        return sum(1 for s, t in zip(self.perm_s, self.perm_t) if s == t)

    @cached_property
    def nu_inf(self) -> int:
        return len(self.cusp_widths)

    @cached_property
    def cusp_widths(self) -> tuple[int, ...]:
        """Cycle lengths of the translation action, sorted; they sum to mu."""
        seen = [False] * self.mu
        widths = []
        for i in range(self.mu):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                length += 1
                j = self.perm_t[j]
            widths.append(length)
        return tuple(sorted(widths))

    @cached_property
    def genus(self) -> int:
        twelve_g = 12 + self.mu - 3 * self.nu2 - 4 * self.nu3 - 6 * self.nu_inf
        assert twelve_g % 12 == 0 and twelve_g >= 0, (self.n, self.mu)
        return twelve_g // 12


def coset_space(h: SubgroupSpec) -> CosetSpace:
    """Enumerate the cosets of the determinant-1 part of H inside SL2(Z/nZ)."""
    if not h.has_full_determinant():
        raise NotFullDeterminant(
            f"determinant image has order {h.det_image.order}, "
            f"expected the full unit group mod {h.n}")
    n = h.n
    s = SL2Part(h)
    key = s.coset_key
    sq, tq = sigma_quad(n), tau_quad(n)

    reps = [identity_quad(n)]
    table = {key(reps[0]): 0}
    perm_s: list[int] = []
    perm_t: list[int] = []
    i = 0
    while i < len(reps):
        x = reps[i]
        for g, perm in ((sq, perm_s), (tq, perm_t)):
            y = quad_mul(n, x, g)
            ky = key(y)
            j = table.get(ky)
            if j is None:
                j = len(reps)
                if j >= ORBIT_CAP:
                    raise OrbitTooLarge(f"coset space mod {n} exceeds cap")
                table[ky] = j
                reps.append(y)
            perm.append(j)
        i += 1

    space = CosetSpace(n=n, base=s, reps=tuple(Mat2(n, *q) for q in reps),
                       perm_s=tuple(perm_s), perm_t=tuple(perm_t))
    assert space.mu * s.order == sl2_order(n)
    return space


@dataclass(frozen=True)
class CurveData:
    """Numerical invariants of the curve, plus the level.index.genus label."""

    mu: int
    nu2: int
    nu3: int
    nu_inf: int
    genus: int
    label_prefix: str
    adjoined_minus_i: bool


def curve_data(h: SubgroupSpec) -> CurveData:
    """Invariants of the curve attached to H (with -I adjoined if missing)."""
    hpm = adjoin_minus_i(h)
    if hpm is not h:
        warnings.warn(f"adjoined -I to a subgroup mod {h.n} before computing "
                      "curve data", stacklevel=2)
    space = coset_space(hpm)
    lvl = level(hpm)
    reduced = reduce_subgroup(hpm, lvl)
    ambient = gl2_order(lvl)
    assert ambient % reduced.order == 0
    idx = ambient // reduced.order
    return CurveData(
        mu=space.mu,
        nu2=space.nu2,
        nu3=space.nu3,
        nu_inf=space.nu_inf,
        genus=space.genus,
        label_prefix=f"{lvl}.{idx}.{space.genus}",
        adjoined_minus_i=hpm is not h,
    )


def map_degree(h1: SubgroupSpec, h2: SubgroupSpec) -> int:
    """Degree of the covering from the curve of H1 down to the curve of H2."""
    a = adjoin_minus_i(h1)
    b = adjoin_minus_i(h2)
    if a is not h1 or b is not h2:
        warnings.warn("adjoined -I before computing the covering degree",
                      stacklevel=2)
    subgroup_of(a, b)
    return index_via_orbit(b, a)


def label_prefix(h: SubgroupSpec) -> str:
    """Level.index.genus label, then a content hash in place of the final
    disambiguator (which follows an ordering convention we do not compute)."""
    data = curve_data(h)
    hpm = adjoin_minus_i(h)
    lvl = int(data.label_prefix.split(".", 1)[0])
    reduced = reduce_subgroup(hpm, lvl)
    gens = sorted(reduced.generator_quads())
    blob = f"{lvl}|" + ";".join(",".join(map(str, g)) for g in gens)
    digest = hashlib.sha256(blob.encode("ascii")).hexdigest()[:8]
    return f"{data.label_prefix}#{digest}"


def curve_genus(h: SubgroupSpec) -> int:
    """Genus alone, skipping the level and index bookkeeping of curve_data."""
    hpm = adjoin_minus_i(h)
    return coset_space(hpm).genus


__all__ = [
    "CosetSpace", "CurveData", "coset_space", "curve_data", "curve_genus",
    "label_prefix", "map_degree", "sl2_part",
]
