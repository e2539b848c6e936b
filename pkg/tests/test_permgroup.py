"""
Tests for permutation arithmetic, BSGS, membership, closure and orbits.
"""
import random

import pytest
from sympy.combinatorics import Permutation as SymPermutation

from config import ElementBudget
from errors import ClosureOverflowError, DegreeMismatchError
from permgroup import (PermGroup, Permutation, _bsgs_is_complete, closure, compose, contains, element_order,
                       group_order, intersect, intersection_matches, is_transitive, orbits, set_bsgs_seed)


def p(text, degree):
    return Permutation.parse(text, degree)


def random_involution(rng, degree):
    points = list(range(1, degree + 1))
    rng.shuffle(points)
    pairs = rng.randint(1, degree // 2)
    return Permutation.from_cycles([points[2 * i:2 * i + 2] for i in range(pairs)], degree)


class TestPermutation:
    def test_parse_and_print(self):
        assert str(p("(1,2)(3,4)", 5)) == "(1,2)(3,4)"
        assert str(p("(3 4) (1 2)", 5)) == "(1,2)(3,4)"
        assert str(p("()", 3)) == "()"
        assert p("", 3).is_identity

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            Permutation.parse("(1,2", 4)
        with pytest.raises(ValueError):
            Permutation.parse("(1,a)", 4)
        with pytest.raises(ValueError):
            Permutation.parse("(1,7)", 4)

    def test_images_must_be_a_bijection(self):
        with pytest.raises(ValueError):
            Permutation((1, 1, 2))

    def test_composition_applies_left_factor_first(self):
        a, b = p("(1,2)", 3), p("(2,3)", 3)
        product = a * b
        assert product(1) == 3
        assert product.images == (3, 1, 2)
        assert str(product) == "(1,3,2)"
        assert compose(a, b) == product

    def test_compose_degree_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            compose(p("(1,2)", 3), p("(1,2)", 4))

    def test_order_is_lcm_of_cycle_lengths(self):
        assert element_order(p("(1,2,3)(4,5)", 6)) == 6
        assert p("()", 4).order() == 1
        assert p("(1,2)(3,4)", 4).is_involution
        assert not p("(1,2,3)", 3).is_involution

    def test_inverse_and_power(self):
        c = p("(1,2,3,4,5)", 5)
        assert c * c.inverse() == Permutation.identity(5)
        assert c ** 5 == Permutation.identity(5)
        assert c ** -1 == c.inverse()
        assert c ** 2 == c * c

    def test_conjugation_relabels_points(self):
        assert p("(1,2)", 3).conjugate(p("(1,3)", 3)) == p("(2,3)", 3)

    def test_sympy_round_trip(self):
        q = p("(1,4)(2,5,3)", 6)
        assert Permutation.from_sympy(q.to_sympy(), 6) == q


class TestPermGroup:
    def test_orders(self):
        assert PermGroup([p("(1,2)", 4), p("(1,2,3,4)", 4)]).order() == 24
        assert group_order(PermGroup([p("(1,2,3)", 5), p("(1,2,3,4,5)", 5)])) == 60
        assert PermGroup([], degree=4).order() == 1

    def test_mixed_degrees_rejected(self):
        with pytest.raises(DegreeMismatchError):
            PermGroup([p("(1,2)", 3), p("(1,2)", 4)])

    def test_membership_by_sifting(self):
        alt5 = PermGroup([p("(1,2,3)", 5), p("(1,2,3,4,5)", 5)])
        assert contains(alt5, p("(1,3)(2,5)", 5))
        assert alt5.contains(p("(1,2,3)", 5))
        assert not alt5.contains(p("(1,2)", 5))
        with pytest.raises(DegreeMismatchError):
            alt5.contains(p("(1,2)", 6))

    def test_bsgs_is_deterministic_for_a_seed(self):
        gens = [p("(1,2)(3,4)", 6), p("(2,3)(4,5)", 6), p("(5,6)", 6)]
        set_bsgs_seed(7)
        first = PermGroup(gens).bsgs()
        second = PermGroup(gens).bsgs()
        set_bsgs_seed(0)
        assert first.base == second.base
        assert first.order == second.order
        assert all(1 <= point <= 6 for point in first.base)

    def test_bsgs_order_matches_closure(self):
        rng = random.Random(20240501)
        for _ in range(40):
            degree = rng.randint(3, 7)
            group = PermGroup([random_involution(rng, degree) for _ in range(rng.randint(1, 3))])
            assert group.order() == len(closure(group))

    def test_closure_overflow(self):
        sym5 = PermGroup([p("(1,2)", 5), p("(1,2,3,4,5)", 5)])
        with pytest.raises(ClosureOverflowError):
            closure(sym5, ElementBudget(10))

    def test_intersect(self):
        left = PermGroup([p("(1,2)", 4), p("(2,3)", 4)])
        right = PermGroup([p("(2,3)", 4), p("(3,4)", 4)])
        assert intersect(left, right) == frozenset({Permutation.identity(4), p("(2,3)", 4)})

    def test_intersection_matches(self):
        left = PermGroup([p("(1,2)", 4), p("(2,3)", 4)])
        right = PermGroup([p("(2,3)", 4), p("(3,4)", 4)])
        assert intersection_matches(left, right, PermGroup([p("(2,3)", 4)])) is None
        assert intersection_matches(left, right, PermGroup([], degree=4)) == p("(2,3)", 4)

    def test_intersection_matches_respects_budget(self):
        sym5 = PermGroup([p("(1,2)", 5), p("(1,2,3,4,5)", 5)])
        with pytest.raises(ClosureOverflowError, match="indices \\[0, 1\\]"):
            intersection_matches(sym5, sym5, PermGroup([], degree=5), ElementBudget(50), subset=(0, 1))

    def test_orbits(self):
        group = PermGroup([p("(1,2)", 6), p("(4,5)", 6)])
        assert orbits(group) == [(1, 2), (3,), (4, 5), (6,)]
        assert not is_transitive(group)
        assert is_transitive(PermGroup([p("(1,2,3,4)", 4)]))


def random_permutation(rng, degree):
    images = list(range(1, degree + 1))
    rng.shuffle(images)
    return Permutation(tuple(images))


def random_group(rng, low=3, high=6):
    degree = rng.randint(low, high)
    return PermGroup([random_involution(rng, degree) for _ in range(rng.randint(1, 3))])


class TestSingleBasePointGroups:
    def test_one_transposition(self):
        group = PermGroup([p("(1,2)", 4)])
        assert group_order(group) == 2
        assert group.contains(p("(1,2)", 4))
        assert not group.contains(p("(3,4)", 4))

    def test_degree_two(self):
        assert PermGroup([p("(1,2)", 2)]).order() == 2
        assert PermGroup([p("(1,2)", 2), p("(1,2)", 2)]).order() == 2

    def test_generator_fixing_point_one(self):
        group = PermGroup([p("(3,4,5)", 5)])
        assert group.order() == 3
        assert all(1 <= point <= 5 for point in group.bsgs().base)

    def test_incomplete_chain_is_detected(self):
        cycle, swap = SymPermutation(0, 1, 2), SymPermutation(1, 2, size=3)
        assert not _bsgs_is_complete([0], [cycle, swap])
        assert _bsgs_is_complete([0, 1], [cycle, swap])


class TestRandomizedProperties:
    def test_order_of_product_is_symmetric(self):
        rng = random.Random(31)
        for _ in range(200):
            degree = rng.randint(2, 9)
            a, b = random_permutation(rng, degree), random_permutation(rng, degree)
            assert element_order(a * b) == element_order(b * a)

    def test_membership_matches_closure(self):
        rng = random.Random(32)
        for _ in range(40):
            group = random_group(rng)
            elements = closure(group)
            for _ in range(10):
                candidate = random_permutation(rng, group.degree)
                assert contains(group, candidate) == (candidate in elements)
            assert all(group.contains(element) for element in list(elements)[:20])

    def test_intersect_is_symmetric(self):
        rng = random.Random(33)
        for _ in range(30):
            first = random_group(rng, 4, 6)
            second = PermGroup([random_involution(rng, first.degree) for _ in range(rng.randint(1, 3))])
            assert intersect(first, second) == intersect(second, first)
            assert intersect(first, first) == closure(first)

    def test_subgroup_orbits_refine_group_orbits(self):
        rng = random.Random(34)
        for _ in range(60):
            group = random_group(rng, 4, 9)
            subgroup = PermGroup(group.generators[:1])
            group_orbits = [set(orbit) for orbit in orbits(group)]
            for orbit in orbits(subgroup):
                assert any(set(orbit) <= whole for whole in group_orbits)
