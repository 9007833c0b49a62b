"""Shared test utilities: naive reference computations done the slow,
obviously-correct way, plus deterministic pools of structural subgroup
instances for randomized property tests. Random choices always flow
through an explicit random.Random so runs are reproducible.
"""

import itertools

from modscreen.subgroups import (BorelGroup, CartanNormalizer, FullGroup,
                                 gl2_order, lift_subgroup)
from modscreen.zmod import quad_inv, quad_mul, unit_subgroup, units


def naive_coset_count(r, h):
    """[R : R meet H] by scanning R's elements against H's membership
    predicate. Quadratic in the answer; small groups only."""
    n = r.n
    reps = []
    for q in sorted(r.element_quads):
        for rep in reps:
            if h.member_quad(quad_mul(n, q, quad_inv(n, rep))):
                break
        else:
            reps.append(q)
    return len(reps)


def intersection_order(r, h):
    """|R meet H| by filtering the smaller element set through the other
    side's membership predicate."""
    small, big = (r, h) if r.order <= h.order else (h, r)
    return sum(1 for q in small.element_quads if big.member_quad(q))


def predicate_elements(h):
    """Every quad the membership predicate accepts, by scanning all n**4
    tuples. Keep n small."""
    n = h.n
    return frozenset(q for q in itertools.product(range(n), repeat=4)
                     if h.member_quad(q))


def least_prime_factor(n):
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def prime_power_exponent(n):
    """(p, e) with n = p**e, or None when n is not a prime power."""
    if n < 2:
        return None
    p = least_prime_factor(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return (p, e) if n == 1 else None


def is_odd_prime_power(n):
    pe = prime_power_exponent(n)
    return pe is not None and pe[0] != 2


def random_delta(rng, n, minus_one=True):
    """A random unit subgroup mod n, by default forced to contain -1."""
    gens = [n - 1] if minus_one else []
    pool = units(n)
    for _ in range(rng.randint(0, 2)):
        gens.append(rng.choice(pool))
    return unit_subgroup(n, gens)


def deltas_with_minus_one(n):
    """Unit subgroups containing -1, found by single-generator extensions
    of <-1>. Not exhaustive above rank 2, which is fine for pool building."""
    if n < 3:
        return [unit_subgroup(n)]
    out = {unit_subgroup(n, [n - 1]).elements: unit_subgroup(n, [n - 1])}
    for u in units(n):
        d = unit_subgroup(n, [n - 1, u])
        out.setdefault(d.elements, d)
    return sorted(out.values(), key=lambda d: (d.order, d.elements))


def structural_pool(n, max_order=100_000):
    """Structural groups at modulus n, all containing -I, small enough for
    element enumeration. FullGroup is always included; its elements are
    only materialized if a test actually asks for them."""
    pool = [FullGroup(n)]
    for delta in deltas_with_minus_one(n):
        b = BorelGroup(n, delta)
        if b.order <= max_order:
            pool.append(b)
    pe = prime_power_exponent(n)
    if pe is not None and pe[0] != 2:
        c = CartanNormalizer(*pe)
        if c.order <= max_order:
            pool.append(c)
    for m in range(2, n):
        if n % m:
            continue
        for base in structural_pool(m, max_order):
            if base.kind == "full":
                continue  # lifts of Full are Full again
            lifted = lift_subgroup(base, n)
            if lifted.order <= max_order:
                pool.append(lifted)
    return pool
