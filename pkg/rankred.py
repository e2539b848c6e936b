"""
Rank reduction: (rho_0, ..., rho_{n-1}) -> (rho_1, rho_0 rho_2, rho_3, ..., rho_{n-1}).

The reduced sequence always exists; whether it is again a string C-group of
the same group is reported through flags rather than enforced. The right
direction reduces the reversed sequence and reverses the result.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from config import ElementBudget
from errors import NotSggiError, RankError, ReductionRefusedError
from performance_monitor import monitor
from sggi import (Element, SchlafliType, SggiRep, VerificationReport, check_sggi,
                  reversed_rep, verify)

logger = logging.getLogger(__name__)

DIRECTIONS = ("left", "right")
VARIANTS = ("paper", "shifted")


def left_reduction(generators: Sequence[Element]) -> Tuple[Element, ...]:
    """(rho_1, rho_0 rho_2, rho_3, ..., rho_{n-1})."""
    gens = tuple(generators)
    return (gens[1], gens[0] * gens[2]) + gens[3:]


def reduced_rep(rep: SggiRep, direction: str = "left") -> SggiRep:
    """The reduced representation in the given direction, without any checks."""
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got '{direction}'")
    if rep.rank < 3:
        raise RankError(f"rank reduction needs at least 3 generators, got {rep.rank}")
    label = f"{rep.label}-{direction}" if rep.label else None
    if direction == "left":
        return rep.with_generators(left_reduction(rep.generators), label=label)
    mirrored = reversed_rep(rep)
    reduced = reversed_rep(mirrored.with_generators(left_reduction(mirrored.generators)))
    return reduced.with_generators(reduced.generators, label=label)


def in_dihedral(target: Element, a: Element, b: Element) -> bool:
    """
    Membership of target in <a, b> for involutions a, b.

    The group is {(ab)^k, (ab)^k a : 0 <= k < |ab|}, so at most 2|ab| words
    are compared.
    """
    rotation = a * b
    word = a * a
    for _ in range(rotation.order()):
        if word == target or word * a == target:
            return True
        word = word * rotation
    return False


def theorem_condition(generators: Sequence[Element]) -> bool:
    """rho_0 in <rho_0 rho_2, rho_3>."""
    return in_dihedral(generators[0], generators[0] * generators[2], generators[3])


def odd_condition(generators: Sequence[Element]) -> bool:
    """|rho_2 rho_3| is odd."""
    return (generators[2] * generators[3]).order() % 2 == 1


@dataclass(frozen=True)
class ReductionOutcome:
    reduced: SggiRep
    direction: str
    theorem_condition: bool
    odd_condition: bool
    group_preserved: bool
    guaranteed: bool
    source_order: int
    reduced_order: int
    reduced_schlafli: Optional[SchlafliType]
    forced: bool = False
    reduced_report: Optional[VerificationReport] = field(default=None, compare=False)

    @property
    def verified(self) -> Optional[bool]:
        if self.reduced_report is None:
            return None
        return self.reduced_report.is_string_c_group

    def to_dict(self) -> Dict:
        return {
            "rank": self.reduced.rank,
            "direction": self.direction,
            "schlafli": list(self.reduced_schlafli.entries) if self.reduced_schlafli else None,
            "theorem_condition": self.theorem_condition,
            "odd_condition": self.odd_condition,
            "group_preserved": self.group_preserved,
            "guaranteed": self.guaranteed,
            "forced": self.forced,
            "verified": self.verified,
            "source_order": self.source_order,
            "reduced_order": self.reduced_order,
        }


@monitor.track("reduce")
def reduce_once(rep: SggiRep, direction: str = "left", budget: Optional[ElementBudget] = None, *,
                force: bool = False, report: Optional[VerificationReport] = None,
                method: str = "recursive", verify_reduced: bool = False,
                assume_string_c_group: bool = False) -> ReductionOutcome:
    """
    Apply one rank reduction and evaluate its guarantee predicates.

    Args:
        rep: An sggi of rank >= 4
        direction: ``left`` or ``right``
        budget: Element cap for verification and order computations
        force: Reduce even if rep is not a verified irreducible string C-group
        report: A verification report for rep, reused instead of verifying again
        method: Verification method for rep (when no report) and for the result
        verify_reduced: Verify the reduced representation as well
        assume_string_c_group: rep is already known to be a string C-group

    Raises:
        RankError: If rank < 4
        NotSggiError: If rep is not an sggi
        ReductionRefusedError: If rep is not certified and force is False
    """
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got '{direction}'")
    if rep.rank < 4:
        raise RankError(f"rank reduction needs rank >= 4, got {rep.rank}")
    budget = budget or ElementBudget()

    if report is None:
        report = check_sggi(rep) if assume_string_c_group else verify(rep, method, budget)
    if not report.is_sggi:
        raise NotSggiError(f"not an sggi: {report.failure_witness.message}")
    is_string_c_group = assume_string_c_group or bool(report.is_string_c_group)
    certified = is_string_c_group and bool(report.is_irreducible)
    if not certified and not force:
        reason = "not irreducible" if is_string_c_group else "not a string C-group"
        raise ReductionRefusedError(f"input is {reason}; pass force to reduce anyway")

    oriented = rep.generators if direction == "left" else tuple(reversed(rep.generators))
    theorem = theorem_condition(oriented)
    odd = odd_condition(oriented)
    reduced = reduced_rep(rep, direction)

    source_order = report.group_order or rep.group(budget).order()
    reduced_order = reduced.group(budget).order()
    guaranteed = theorem and certified
    if guaranteed and reduced_order != source_order:
        logger.warning("guaranteed reduction of %s changed the group order", rep.label)

    reduced_report = verify(reduced, method, budget) if verify_reduced else None
    reduced_schlafli = (reduced_report or check_sggi(reduced)).schlafli
    logger.debug("reduced %s (%s): type %s, theorem=%s odd=%s preserved=%s",
                 rep.label, direction, reduced_schlafli, theorem, odd, reduced_order == source_order)
    return ReductionOutcome(
        reduced=reduced,
        direction=direction,
        theorem_condition=theorem,
        odd_condition=odd,
        group_preserved=reduced_order == source_order,
        guaranteed=guaranteed,
        source_order=source_order,
        reduced_order=reduced_order,
        reduced_schlafli=reduced_schlafli,
        forced=force and not certified,
        reduced_report=reduced_report,
    )


def guaranteed_run_length(schlafli: Union[SchlafliType, Sequence[int]], variant: str = "paper") -> Optional[int]:
    """
    Length t of the run of odd Schlafli entries that licenses iterated reduction.

    The "paper" variant reads p_{2+i}, the shifted variant p_{3+i}, for
    i = 0..j with j in {0, ..., n-3}; entries past p_{n-1} end the run.

    Returns:
        The largest such j, or None when even the first entry is even
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got '{variant}'")
    entries = tuple(schlafli.entries if isinstance(schlafli, SchlafliType) else schlafli)
    n = len(entries) + 1
    if n < 4:
        raise RankError(f"Schlafli type {list(entries)} is too short: rank {n} < 4")
    first = 2 if variant == "paper" else 3
    run = None
    for j in range(n - 2):
        index = first + j
        if index > n - 1 or entries[index - 1] % 2 == 0:
            break
        run = j
    return run


def guaranteed_ranks(schlafli: Union[SchlafliType, Sequence[int]], variant: str = "paper") -> List[int]:
    """Ranks n - i covered by the run length (the shifted run licenses one more step)."""
    entries = tuple(schlafli.entries if isinstance(schlafli, SchlafliType) else schlafli)
    n = len(entries) + 1
    run = guaranteed_run_length(entries, variant)
    if run is None:
        return [n]
    steps = run + 1 if variant == "paper" else run + 2
    return [n - i for i in range(steps)]


@dataclass(frozen=True)
class ReductionChain:
    initial: SggiRep
    direction: str
    target_rank: int
    steps: Tuple[Tuple[SggiRep, ReductionOutcome], ...]
    stop_reason: str
    rejected: Optional[ReductionOutcome] = None

    @property
    def reached_target(self) -> bool:
        return bool(self.steps) and self.steps[-1][0].rank == self.target_rank

    @property
    def ranks(self) -> List[int]:
        return [self.initial.rank] + [rep.rank for rep, _ in self.steps]


def reduce_iterate(rep: SggiRep, target_rank: int, verify_each: bool = False,
                   budget: Optional[ElementBudget] = None, *, direction: str = "left",
                   method: str = "recursive", force: bool = False,
                   report: Optional[VerificationReport] = None) -> ReductionChain:
    """
    Reduce repeatedly until target_rank, keeping every accepted step.

    A step whose group order differs from its input, or (with verify_each)
    whose result fails verification, ends the chain and is returned as
    ``rejected``. An input counts as certified when it was verified or when
    the step producing it was guaranteed.

    Raises:
        RankError: Unless 3 <= target_rank < rank(rep)
    """
    if not 3 <= target_rank < rep.rank:
        raise RankError(f"target rank must satisfy 3 <= target < {rep.rank}, got {target_rank}")
    budget = budget or ElementBudget()

    steps: List[Tuple[SggiRep, ReductionOutcome]] = []
    current = rep
    assume = False
    stop_reason = "target reached"
    rejected = None
    while current.rank > target_rank:
        try:
            outcome = reduce_once(current, direction, budget, force=force, report=report, method=method,
                                  verify_reduced=verify_each, assume_string_c_group=assume)
        except ReductionRefusedError as exc:
            if not steps:
                raise
            stop_reason = f"refused at rank {current.rank}: {exc}"
            break
        if not outcome.group_preserved:
            stop_reason = "group not preserved"
            rejected = outcome
            break
        if verify_each and not outcome.verified:
            stop_reason = "verification failed"
            rejected = outcome
            break
        steps.append((outcome.reduced, outcome))
        current = outcome.reduced
        report = outcome.reduced_report
        assume = outcome.guaranteed

    logger.info("reduction chain of %s: ranks %s, %s", rep.label,
                [rep.rank] + [step.rank for step, _ in steps], stop_reason)
    return ReductionChain(rep, direction, target_rank, tuple(steps), stop_reason, rejected)
