"""
Tests for the rank reduction operator, its guarantee predicates and chains.
"""
import math

import pytest

from conftest import perm_rep
from constructions import builtin_example, simplex_rep
from errors import NotSggiError, RankError, ReductionRefusedError
from permgroup import Permutation
from rankred import (VARIANTS, guaranteed_ranks, guaranteed_run_length, in_dihedral, left_reduction, odd_condition,
                     reduce_iterate, reduce_once, reduced_rep, theorem_condition)
from sggi import SchlafliType, reversed_rep, schlafli_type, verify


def p(text, degree=5):
    return Permutation.parse(text, degree)


class TestOperator:
    def test_left_reduction(self):
        reduced = left_reduction(simplex_rep(5).generators)
        assert reduced == (p("(2,3)"), p("(1,2)(3,4)"), p("(4,5)"))

    def test_right_reduction_is_the_mirror_image(self):
        rep = simplex_rep(5)
        assert reduced_rep(rep, "right").generators == (p("(1,2)"), p("(2,3)(4,5)"), p("(3,4)"))
        mirrored = reversed_rep(reduced_rep(reversed_rep(rep), "left"))
        assert reduced_rep(rep, "right").generators == mirrored.generators

    def test_reduced_label(self):
        assert reduced_rep(simplex_rep(5)).label == "simplex:5-left"

    def test_dihedral_membership(self):
        a, b = p("(1,2)(3,4)"), p("(4,5)")
        assert in_dihedral(p("(1,2)"), a, b)
        assert in_dihedral(p("()"), a, b)
        assert not in_dihedral(p("(2,3)"), a, b)

    def test_conditions_on_simplex(self):
        gens = simplex_rep(5).generators
        assert theorem_condition(gens)
        assert odd_condition(gens)

    def test_conditions_on_o4(self, o4_rep):
        assert not theorem_condition(o4_rep.generators)
        assert not odd_condition(o4_rep.generators)

    def test_unknown_direction(self):
        with pytest.raises(ValueError):
            reduced_rep(simplex_rep(5), "up")


class TestReduceOnce:
    def test_simplex(self):
        outcome = reduce_once(simplex_rep(5))
        assert outcome.reduced_schlafli == SchlafliType((4, 6))
        assert outcome.group_preserved
        assert outcome.source_order == outcome.reduced_order == 120
        assert outcome.theorem_condition and outcome.odd_condition
        assert outcome.guaranteed
        assert outcome.verified is None

    def test_o4_reduces_without_guarantee(self, o4_rep):
        outcome = reduce_once(o4_rep, verify_reduced=True)
        assert outcome.reduced.rank == 3
        assert str(outcome.reduced_schlafli) == "[6,6]"
        assert not outcome.theorem_condition
        assert not outcome.guaranteed
        assert outcome.group_preserved
        assert outcome.verified
        assert outcome.to_dict()["verified"] is True

    def test_reduced_type_keeps_the_tail(self):
        rep = simplex_rep(7)
        source, reduced = schlafli_type(rep).entries, reduce_once(rep).reduced_schlafli.entries
        # q_i = p_{i+1} for 3 <= i <= n-2
        for i in range(3, rep.rank - 1):
            assert reduced[i - 1] == source[i]

    def test_rank_too_small(self):
        with pytest.raises(RankError):
            reduce_once(simplex_rep(4))

    def test_not_sggi(self):
        with pytest.raises(NotSggiError):
            reduce_once(perm_rep(8, "(1,2)", "(3,4)", "(2,3)", "(7,8)"))

    def test_reducible_input_needs_force(self):
        rep = perm_rep(8, "(1,2)", "(3,4)", "(5,6)", "(7,8)")
        with pytest.raises(ReductionRefusedError):
            reduce_once(rep)
        outcome = reduce_once(rep, force=True)
        assert outcome.forced
        assert not outcome.guaranteed
        assert outcome.reduced.rank == 3

    def test_right_direction(self):
        outcome = reduce_once(simplex_rep(6), "right")
        assert outcome.direction == "right"
        assert outcome.reduced_schlafli == SchlafliType((3, 6, 4))
        assert outcome.group_preserved


class TestRunLength:
    def test_all_odd(self):
        assert guaranteed_run_length([3, 3, 3]) == 1
        assert guaranteed_run_length([3, 3, 3], "paper") == 1
        assert guaranteed_run_length([3, 3, 3], "shifted") == 0
        assert guaranteed_run_length([3, 3, 3, 3]) == 2

    def test_even_entry_breaks_the_run(self):
        assert guaranteed_run_length([4, 4, 6]) is None
        assert guaranteed_run_length([5, 3, 6, 3, 5]) == 0
        assert guaranteed_run_length([5, 3, 6, 3, 5], "shifted") is None

    def test_guaranteed_ranks(self):
        assert guaranteed_ranks(SchlafliType((3, 3, 3, 3))) == [5, 4, 3]
        assert guaranteed_ranks([3, 3, 3, 3], "shifted") == [5, 4, 3]
        assert guaranteed_ranks([4, 4, 6]) == [4]
        assert guaranteed_ranks([5, 3, 6, 3, 5]) == [6]

    def test_variant_names(self):
        assert VARIANTS == ("paper", "shifted")
        with pytest.raises(ValueError):
            guaranteed_ranks([3, 3, 3], "standard")

    def test_rank_too_small(self):
        with pytest.raises(RankError):
            guaranteed_run_length([3, 3])
        with pytest.raises(ValueError):
            guaranteed_run_length([3, 3, 3], "other")


class TestReduceIterate:
    @pytest.mark.parametrize("m", [5, 6, 7, 8])
    def test_simplex_reaches_every_rank(self, m):
        chain = reduce_iterate(simplex_rep(m), 3, verify_each=True)
        assert chain.reached_target
        assert chain.stop_reason == "target reached"
        assert chain.ranks == list(range(m - 1, 2, -1))
        for rep, outcome in chain.steps:
            assert outcome.verified
            assert outcome.reduced_order == math.factorial(m)
            assert verify(rep).group_order == math.factorial(m)

    def test_o4_single_step(self, o4_rep):
        chain = reduce_iterate(o4_rep, 3, verify_each=True)
        assert chain.ranks == [4, 3]
        (_, outcome), = chain.steps
        assert not outcome.guaranteed
        assert outcome.verified

    def test_target_rank_bounds(self):
        with pytest.raises(RankError):
            reduce_iterate(simplex_rep(6), 2)
        with pytest.raises(RankError):
            reduce_iterate(simplex_rep(6), 5)

    def test_refused_input(self):
        with pytest.raises(ReductionRefusedError):
            reduce_iterate(perm_rep(8, "(1,2)", "(3,4)", "(5,6)", "(7,8)"), 3)

    @pytest.mark.slow
    def test_intransitive_reduction_is_rejected(self):
        chain = reduce_iterate(builtin_example("A11-rank6-1"), 3)
        assert not chain.reached_target
        assert chain.stop_reason == "group not preserved"
        assert chain.steps == ()
        assert chain.rejected.reduced_order < chain.rejected.source_order == 19_958_400


CORPUS = ["O4minus3", "S5-permmat-gf4", "simplex6", "A11-rank6-1", "A11-rank6-2", "A11-rank6-3"]


def corpus_reps():
    return [builtin_example(name) for name in CORPUS] + [simplex_rep(m) for m in (5, 7)]


def power(element, exponent):
    result = element
    for _ in range(exponent - 1):
        result = result * element
    return result


class TestConditionsOnCorpus:
    def test_odd_product_recovers_rho0(self):
        checked = 0
        for rep in corpus_reps():
            g0, _, g2, g3 = rep.generators[:4]
            order = (g2 * g3).order()
            if order % 2 == 0:
                continue
            assert power(g0 * g2 * g3, order) == g0, rep.label
            checked += 1
        assert checked >= 4

    def test_odd_condition_implies_theorem_condition(self):
        for rep in corpus_reps():
            if odd_condition(rep.generators):
                assert theorem_condition(rep.generators), rep.label

    def test_theorem_condition_preserves_string_c_groups(self):
        sound = 0
        for rep in corpus_reps():
            if not theorem_condition(rep.generators):
                continue
            report = verify(rep)
            if not (report.is_string_c_group and report.is_irreducible):
                continue
            outcome = reduce_once(rep, verify_reduced=True)
            assert outcome.verified, rep.label
            assert outcome.reduced_order == report.group_order
            sound += 1
        assert sound >= 4
