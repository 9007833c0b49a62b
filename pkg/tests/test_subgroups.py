"""Subgroup families, orders, indices, lifts, levels, and product sets."""

import random

import pytest

from modscreen.errors import (EvenPrimeUnsupported, ModulusMismatch,
                              NonDivisor, NonInvertible, NotASubgroup)
from modscreen.subgroups import (BorelGroup, CartanNormalizer, EnumeratedGroup,
                                 FullGroup, GeneratedGroup, LiftedGroup,
                                 adjoin_minus_i, borel, borel_index,
                                 borel_order, closure_quads, contains_minus_i,
                                 gl2_order, index_via_orbit,
                                 kernel_generator_quads, kernel_subgroup,
                                 level, lift_subgroup, minus_identity_quad,
                                 nonsplit_cartan_normalizer,
                                 nonsplit_cartan_normalizer_preimage, order,
                                 product_set_check, product_set_quads,
                                 reduce_subgroup, sl2_order,
                                 surjective_image_index_check)
from modscreen.zmod import (delta_full, delta_pm1, delta_trivial,
                            euler_phi, quad_mul, unit_subgroup,
                            unit_subgroups_containing_minus_one, units)

import _helpers
import _oracles


# ---------------------------------------------------------------- orders

def test_gl2_order_examples():
    assert gl2_order(2) == 6
    assert gl2_order(6) == 288
    assert gl2_order(25) == 300000
    assert gl2_order(1) == 1


def test_gl2_order_against_brute_scan():
    for n in range(1, 10):
        assert gl2_order(n) == _oracles.brute_gl2_order(n), n


def test_gl2_order_multiplicative_over_coprime_parts():
    assert gl2_order(6) == gl2_order(2) * gl2_order(3)
    assert gl2_order(45) == gl2_order(9) * gl2_order(5)


def test_sl2_order_against_brute_scan():
    for n in range(1, 10):
        assert sl2_order(n) == _oracles.brute_sl2_order(n), n


def test_borel_order_examples():
    assert borel(5, delta_pm1(5)).order == 40
    assert borel(25, delta_full(25)).order == 10000
    d6 = unit_subgroup(49, [31])  # 31 has order 6 mod 49 and 31**3 = -1
    assert d6.order == 6
    assert borel_order(49, d6) == 6 * 7 ** 3 * 6


def test_borel_index_examples():
    for ell in (2, 3, 5, 7, 11, 13):
        assert borel_index(ell, delta_full(ell)) == ell + 1
    # order-4 subgroup mod 25: generated by 7, which squares to -1
    d4 = unit_subgroup(25, [7])
    assert d4.order == 4
    assert borel_index(25, d4) == 150


def test_borel_lagrange_consistency_up_to_49():
    """Closed-form order times closed-form index is the full group order."""
    for n in range(3, 50):
        for delta in unit_subgroups_containing_minus_one(n):
            assert borel_order(n, delta) * borel_index(n, delta) == gl2_order(n), (n, delta)


def test_borel_enumeration_matches_closed_form_up_to_16():
    for n in range(1, 17):
        deltas = (unit_subgroups_containing_minus_one(n) if n >= 3
                  else [delta_trivial(n)])
        for delta in deltas:
            b = BorelGroup(n, delta)
            assert len(b.element_quads) == b.order == borel_order(n, delta)
            assert b.order == _oracles.brute_borel_order(n, delta.elements)


def test_borel_membership_containment():
    big = borel(25, delta_full(25))
    small = borel(25, delta_pm1(25))
    assert all(big.member_quad(q) for q in small.generator_quads())


# ------------------------------------------------- membership vs closure

def test_structural_groups_closure_equals_predicate():
    """The closure of the generators and the membership predicate must carve
    out the same set."""
    for n in (3, 4, 5, 7, 8, 9):
        pool = [FullGroup(n)]
        pool.extend(BorelGroup(n, d) for d in _helpers.deltas_with_minus_one(n))
        if _helpers.is_odd_prime_power(n):
            pool.append(CartanNormalizer(*_helpers.prime_power_exponent(n)))
        for g in pool:
            from_gens = closure_quads(n, g.generator_quads())
            assert from_gens == _helpers.predicate_elements(g), (n, g.kind)


def test_lifted_group_closure_equals_predicate():
    lifted = lift_subgroup(borel(3, delta_full(3)), 9)
    assert closure_quads(9, lifted.generator_quads()) == _helpers.predicate_elements(lifted)


def test_cached_order_equals_enumerated_order():
    for g in _helpers.structural_pool(12):
        assert g.order == len(g.element_quads), g.kind


# ---------------------------------------------------------------- cartan

def test_cartan_orders():
    assert nonsplit_cartan_normalizer(5).order == 48
    assert nonsplit_cartan_normalizer(7).order == 96
    assert nonsplit_cartan_normalizer(25).order == 2 * 25 * 24


def test_cartan_enumeration_matches_closed_form():
    for q in (3, 5, 7, 9, 11, 13, 25, 27):
        c = nonsplit_cartan_normalizer(q)
        assert len(c.element_quads) == c.order, q


def test_cartan_contains_minus_i():
    for q in (3, 5, 7, 9, 25):
        assert contains_minus_i(nonsplit_cartan_normalizer(q))


def test_cartan_rejects_even_prime():
    with pytest.raises(EvenPrimeUnsupported):
        nonsplit_cartan_normalizer(2)
    with pytest.raises(EvenPrimeUnsupported):
        nonsplit_cartan_normalizer(8)


def test_cartan_nonresidue_is_stable_under_lifting():
    assert CartanNormalizer(5, 2).eps == CartanNormalizer(5, 1).eps
    assert CartanNormalizer(7, 2).eps == CartanNormalizer(7, 1).eps


def test_cartan_coset_key_separates_exactly():
    """The conjugation-invariant key must induce the same partition as the
    membership predicate."""
    for q in (5, 9, 13):
        c = nonsplit_cartan_normalizer(q)
        full = FullGroup(q)
        by_key = {}
        for x in full.element_quads:
            by_key.setdefault(c.coset_key(x), set()).add(x)
        assert len(by_key) == full.order // c.order
        for bucket in by_key.values():
            x0 = next(iter(bucket))
            coset = {quad_mul(q, h, x0) for h in c.element_quads}
            assert bucket == coset


def test_cartan_preimage_variant():
    pre = nonsplit_cartan_normalizer_preimage(25)
    thin = nonsplit_cartan_normalizer(25)
    assert level(pre) == 5
    assert pre.order == 48 * (gl2_order(25) // gl2_order(5))
    # the thin shape group sits inside its preimage relative
    assert all(pre.member_quad(g) for g in thin.generator_quads())
    assert thin.order < pre.order


# ------------------------------------------------------ enumerated kinds

def test_enumerated_group_requires_identity():
    with pytest.raises(ValueError):
        EnumeratedGroup(5, [(2, 0, 0, 1)])


def test_generated_group_rejects_singular_generator():
    with pytest.raises(NonInvertible):
        GeneratedGroup(4, [(2, 0, 0, 1)])


def test_order_of_trivial_group():
    assert order(EnumeratedGroup(7, [(1, 0, 0, 1)])) == 1


def test_order_closed_form_for_full():
    assert order(FullGroup(25)) == 300000


# ------------------------------------------------------- index via orbit

def test_index_examples():
    assert index_via_orbit(nonsplit_cartan_normalizer(5), borel(5, delta_pm1(5))) == 12
    assert index_via_orbit(FullGroup(5), borel(5, delta_full(5))) == 6
    h = borel(7, delta_full(7))
    assert index_via_orbit(h, h) == 1


def test_index_rejects_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        index_via_orbit(FullGroup(5), borel(7, delta_full(7)))


def test_index_against_naive_coset_scan():
    rng = random.Random(105)
    pools = {n: _helpers.structural_pool(n, max_order=3000) for n in (3, 4, 5, 7, 8, 9)}
    for _ in range(60):
        n = rng.choice(sorted(pools))
        r = rng.choice(pools[n])
        h = rng.choice(pools[n])
        if r.kind == "full" and n > 5:
            continue  # keep the quadratic scan small
        assert index_via_orbit(r, h) == _helpers.naive_coset_count(r, h), (n, r.kind, h.kind)


def test_index_times_intersection_is_group_order():
    """[R : R meet H] * |R meet H| = |R| over a thousand structural pairs."""
    rng = random.Random(106)
    moduli = (3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 16, 18, 20, 24, 25)
    pools = {n: _helpers.structural_pool(n) for n in moduli}
    checked = 0
    while checked < 1000:
        n = rng.choice(moduli)
        r = rng.choice(pools[n])
        h = rng.choice(pools[n])
        if r.kind == "full" == h.kind:
            continue  # intersection enumeration would walk all of GL2
        got = index_via_orbit(r, h) * _helpers.intersection_order(r, h)
        assert got == r.order, (n, r.kind, h.kind)
        checked += 1


# ------------------------------------------------------- reduce and lift

def test_reduce_structural_families():
    assert reduce_subgroup(borel(25, delta_full(25)), 5).element_quads == \
        borel(5, delta_full(5)).element_quads
    assert reduce_subgroup(FullGroup(12), 4).kind == "full"
    c = reduce_subgroup(nonsplit_cartan_normalizer(25), 5)
    assert c.element_quads == nonsplit_cartan_normalizer(5).element_quads


def test_reduce_rejects_non_divisor():
    with pytest.raises(NonDivisor):
        reduce_subgroup(FullGroup(12), 5)


def test_lift_of_full_is_full():
    assert lift_subgroup(FullGroup(1), 40).kind == "full"


def test_lift_order_and_containment():
    lifted = lift_subgroup(borel(5, delta_full(5)), 25)
    assert lifted.order == 50000
    inner = borel(25, delta_full(25))
    assert all(lifted.member_quad(q) for q in inner.generator_quads())
    assert index_via_orbit(lifted, inner) == 5


def test_lift_order_formula_against_enumeration():
    for base_n, n in ((2, 4), (2, 8), (3, 9), (5, 25), (4, 8), (2, 6), (3, 12)):
        base = borel(base_n, delta_trivial(base_n))
        lifted = lift_subgroup(base, n)
        assert lifted.order == len(_helpers.predicate_elements(lifted)), (base_n, n)


def test_lift_then_reduce_roundtrip():
    base = borel(5, delta_pm1(5))
    again = reduce_subgroup(lift_subgroup(base, 25), 5)
    assert again.element_quads == base.element_quads


# ------------------------------------------------------------------ level

def test_level_examples():
    assert level(FullGroup(49)) == 1
    assert level(lift_subgroup(borel(5, delta_full(5)), 25)) == 5
    assert level(borel(25, delta_trivial(25))) == 25
    assert level(borel(25, delta_full(25))) == 25


def test_level_of_lifted_full_is_one():
    assert level(lift_subgroup(FullGroup(1), 32)) == 1


def test_level_idempotence_over_pool():
    """level(lift(reduce(H, level(H)), n)) = level(H)."""
    for n in (8, 9, 12, 16, 25, 27):
        for h in _helpers.structural_pool(n, max_order=30000):
            lv = level(h)
            back = lift_subgroup(reduce_subgroup(h, lv), n)
            assert level(back) == lv, (n, h.kind)


def test_level_detects_full_preimages():
    """A group equals the preimage of its reduction exactly at its level."""
    h = lift_subgroup(nonsplit_cartan_normalizer(3), 27)
    assert level(h) == 3
    assert level(nonsplit_cartan_normalizer(27)) == 27


# ------------------------------------------------------- kernel machinery

def test_kernel_generators_close_to_the_kernel():
    for n, m in ((4, 2), (8, 2), (16, 4), (9, 3), (27, 3), (25, 5), (12, 6)):
        gens = kernel_generator_quads(n, m)
        got = closure_quads(n, gens)
        want = frozenset(q for q in _helpers.predicate_elements(FullGroup(n))
                         if all(x % m == y for x, y in zip(q, (1, 0, 0, 1))))
        assert got == want, (n, m)


def test_kernel_subgroup_order_is_fourth_power():
    for n, m in ((4, 2), (9, 3), (25, 5), (27, 9), (16, 2)):
        assert kernel_subgroup(n, m).order == (n // m) ** 4, (n, m)


def test_kernel_at_m_equal_one_is_everything():
    assert kernel_subgroup(6, 1).order == gl2_order(6)


# -------------------------------------------------------------- minus one

def test_contains_minus_i_examples():
    assert contains_minus_i(borel(5, delta_pm1(5)))
    assert not contains_minus_i(borel(5, delta_trivial(5)))
    assert contains_minus_i(FullGroup(9))


def test_adjoin_minus_i_doubles_or_fixes():
    b1 = borel(5, delta_trivial(5))
    bpm = adjoin_minus_i(b1)
    assert bpm.order == 2 * b1.order
    assert bpm.element_quads == borel(5, delta_pm1(5)).element_quads
    again = adjoin_minus_i(bpm)
    assert again is bpm


def test_adjoin_minus_i_on_lifted_and_enumerated():
    lifted = lift_subgroup(borel(5, delta_trivial(5)), 25)
    out = adjoin_minus_i(lifted)
    assert out.member_quad(minus_identity_quad(25))
    assert out.order == 2 * lifted.order

    e = EnumeratedGroup(5, [(1, 0, 0, 1)])
    out = adjoin_minus_i(e)
    assert out.element_quads == frozenset({(1, 0, 0, 1), (4, 0, 0, 4)})


# ------------------------------------------------------------ product sets

def test_product_with_kernel_is_the_lift():
    h = borel(25, delta_full(25))
    k = kernel_subgroup(25, 5)
    lifted = lift_subgroup(borel(5, delta_full(5)), 25)
    res = product_set_check(h, k)
    assert res.size == 50000 == lifted.order
    assert res.is_group


def test_product_set_trivial_cases():
    h = borel(7, delta_pm1(7))
    k = EnumeratedGroup(7, [(1, 0, 0, 1)])
    res = product_set_check(h, k)
    assert res.size == h.order and res.is_group
    res = product_set_check(FullGroup(3), nonsplit_cartan_normalizer(3))
    assert res.size == gl2_order(3) and res.is_group


def test_product_set_can_fail_to_be_a_group():
    # two order-2 unipotent groups mod 2 multiply to a 4-element non-group
    # inside the 6-element ambient
    upper = EnumeratedGroup(2, [(1, 0, 0, 1), (1, 1, 0, 1)])
    lower = EnumeratedGroup(2, [(1, 0, 0, 1), (1, 0, 1, 1)])
    res = product_set_check(upper, lower)
    assert res.size == 4
    assert not res.is_group
    assert len(product_set_quads(upper, lower)) == 4


def test_preimage_factors_as_group_times_kernel():
    """Over random structural H and divisors m, H * ker(reduction to m) is
    exactly the preimage of the reduction of H."""
    rng = random.Random(107)
    moduli = (4, 8, 9, 12, 16, 18, 25, 27)
    pools = {n: [g for g in _helpers.structural_pool(n, max_order=20000)
                 if g.kind != "full"] for n in moduli}
    checked = 0
    while checked < 100:
        n = rng.choice(moduli)
        h = rng.choice(pools[n])
        ms = [m for m in range(2, n) if n % m == 0]
        if not ms:
            continue
        m = rng.choice(ms)
        k = kernel_subgroup(n, m)
        lifted = lift_subgroup(reduce_subgroup(h, m), n)
        # HK sits inside the preimage since both factors do, so cardinality
        # equality is set equality
        assert all(lifted.member_quad(q) for q in h.generator_quads())
        assert all(lifted.member_quad(q) for q in k.generator_quads())
        res = product_set_check(h, k)
        assert res.is_group
        assert res.size == lifted.order, (n, m, h.kind)
        checked += 1


# ------------------------------------------------- image index comparison

def test_surjective_image_index_check_examples():
    g = FullGroup(25)
    h = borel(25, delta_full(25))
    assert surjective_image_index_check(g, h, 5)
    # the two indices compared: 30 upstairs, 6 downstairs
    assert index_via_orbit(g, h) == 30
    assert index_via_orbit(FullGroup(5), borel(5, delta_full(5))) == 6
    assert surjective_image_index_check(g, g, 5)
    assert surjective_image_index_check(g, h, 25)


def test_image_index_never_grows_under_reduction():
    rng = random.Random(108)
    for _ in range(40):
        n = rng.choice((8, 9, 12, 16, 18, 25, 27))
        deltas = _helpers.deltas_with_minus_one(n)
        small = rng.choice(deltas)
        h = borel(n, small)
        g = FullGroup(n)
        for m in (m for m in range(2, n + 1) if n % m == 0):
            assert surjective_image_index_check(g, h, m), (n, m)


def test_subgroup_check_raises_for_non_subgroup():
    with pytest.raises(NotASubgroup):
        from modscreen.subgroups import subgroup_of
        subgroup_of(borel(5, delta_full(5)), nonsplit_cartan_normalizer(5))
