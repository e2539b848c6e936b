"""
Permutation arithmetic and permutation-group algorithms.

Points are 1-based, matching the domain {1, ..., m}. Products compose left to
right: ``a * b`` applies ``a`` first, then ``b``. Orders, orbits and
membership go through a base and strong generating set computed with sympy's
Schreier-Sims; explicit element sets come from a breadth-first closure capped
by an ElementBudget.
"""
import logging
import math
import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from sympy.combinatorics import Permutation as SymPermutation
from sympy.combinatorics import PermutationGroup as SymPermutationGroup
from sympy.combinatorics.util import _distribute_gens_by_base, _orbits_transversals_from_bsgs, _strip
from sympy.core import random as sympy_random

from config import DEFAULT_SEED, ElementBudget
from errors import ClosureOverflowError, DegreeMismatchError
from performance_monitor import monitor

logger = logging.getLogger(__name__)

_CYCLE_RE = re.compile(r"\(([^()]*)\)")

# Seed handed to sympy's generator before every randomized Schreier-Sims run
_bsgs_seed = DEFAULT_SEED


def set_bsgs_seed(seed: int) -> None:
    """Set the seed used by the randomized phase of BSGS construction."""
    global _bsgs_seed
    _bsgs_seed = seed


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..m}; ``images[i - 1]`` is the image of point i."""
    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def _trusted(cls, images: Tuple[int, ...]) -> "Permutation":
        # Skips the bijection check for images produced by our own arithmetic
        perm = object.__new__(cls)
        object.__setattr__(perm, "images", images)
        return perm

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise ValueError(f"degree must be positive, got {degree}")
        return cls._trusted(tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int) -> "Permutation":
        """
        Build a permutation from cycles, multiplied left to right.

        Args:
            cycles: Cycles such as ``[(1, 2), (3, 4, 5)]``
            degree: Size m of the domain

        Returns:
            The product of the cycles

        Raises:
            ValueError: If a point is outside 1..m or repeats within a cycle
        """
        result = cls.identity(degree)
        for cycle in cycles:
            points = list(cycle)
            if len(set(points)) != len(points):
                raise ValueError(f"repeated point in cycle {tuple(points)}")
            for point in points:
                if not 1 <= point <= degree:
                    raise ValueError(f"point {point} outside 1..{degree}")
            if len(points) < 2:
                continue
            images = list(range(1, degree + 1))
            for a, b in zip(points, points[1:] + points[:1]):
                images[a - 1] = b
            result = result * cls._trusted(tuple(images))
        return result

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """
        Parse disjoint-cycle notation such as ``(1,2)(3,4)`` or ``(1 2 3)``.

        ``()`` and the empty string denote the identity.
        """
        stripped = text.strip()
        if not stripped or stripped == "()":
            return cls.identity(degree)
        if _CYCLE_RE.sub("", stripped).strip():
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(stripped):
            tokens = [tok for tok in re.split(r"[,\s]+", body.strip()) if tok]
            try:
                cycles.append([int(tok) for tok in tokens])
            except ValueError:
                raise ValueError(f"non-integer point in cycle ({body})")
        return cls.from_cycles(cycles, degree)

    @classmethod
    def from_sympy(cls, perm: SymPermutation, degree: int) -> "Permutation":
        array = list(perm.array_form)
        array.extend(range(len(array), degree))
        return cls._trusted(tuple(point + 1 for point in array[:degree]))

    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def is_identity(self) -> bool:
        return all(image == point for point, image in enumerate(self.images, start=1))

    @property
    def is_involution(self) -> bool:
        return self.order() == 2

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, exponent: int) -> "Permutation":
        base = self if exponent >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(exponent) % self.order()):
            result = result * base
        return result

    def inverse(self) -> "Permutation":
        inverse = [0] * self.degree
        for point, image in enumerate(self.images, start=1):
            inverse[image - 1] = point
        return Permutation._trusted(tuple(inverse))

    def conjugate(self, by: "Permutation") -> "Permutation":
        """Return ``by^-1 * self * by`` (relabel points through ``by``)."""
        return by.inverse() * self * by

    def cycles(self) -> List[Tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point, ordered by that point."""
        seen = set()
        result = []
        for start in range(1, self.degree + 1):
            if start in seen or self.images[start - 1] == start:
                continue
            cycle = [start]
            seen.add(start)
            point = self.images[start - 1]
            while point != start:
                cycle.append(point)
                seen.add(point)
                point = self.images[point - 1]
            result.append(tuple(cycle))
        return result

    def order(self) -> int:
        return element_order(self)

    def to_sympy(self) -> SymPermutation:
        return SymPermutation([image - 1 for image in self.images])

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(str(point) for point in cycle) + ")" for cycle in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self}, degree={self.degree})"


def compose(a: Permutation, b: Permutation) -> Permutation:
    """
    Return the product applying ``a`` first, then ``b``.

    Raises:
        DegreeMismatchError: If the degrees differ
    """
    if a.degree != b.degree:
        raise DegreeMismatchError(f"cannot compose degree {a.degree} with degree {b.degree}")
    b_images = b.images
    return Permutation._trusted(tuple(b_images[image - 1] for image in a.images))


def element_order(a: Permutation) -> int:
    """Least k >= 1 with a^k = identity (lcm of the cycle lengths)."""
    return math.lcm(1, *(len(cycle) for cycle in a.cycles()))


@dataclass(frozen=True, eq=False)
class BaseStrongGeneratingSet:
    """Base, strong generators and basic transversals of a permutation group."""
    base: Tuple[int, ...]
    strong_generators: Tuple[Permutation, ...]
    transversals: Tuple[Dict[int, SymPermutation], ...]
    order: int
    randomized: bool


class PermGroup:
    """The group generated by a list of permutations of equal degree."""

    def __init__(self, generators: Sequence[Permutation], degree: Optional[int] = None):
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise ValueError("a group needs at least one generator or an explicit degree")
            degree = gens[0].degree
        for gen in gens:
            if gen.degree != degree:
                raise DegreeMismatchError(
                    f"generator {gen} has degree {gen.degree}, expected {degree}"
                )
        self.degree = degree
        self.generators = gens or (Permutation.identity(degree),)
        self._sympy_group: Optional[SymPermutationGroup] = None
        self._bsgs: Optional[BaseStrongGeneratingSet] = None

    def __repr__(self) -> str:
        gens = ", ".join(str(gen) for gen in self.generators)
        return f"PermGroup(<{gens}>, degree={self.degree})"

    @property
    def is_trivial(self) -> bool:
        return all(gen.is_identity for gen in self.generators)

    def sympy_group(self) -> SymPermutationGroup:
        if self._sympy_group is None:
            self._sympy_group = SymPermutationGroup([gen.to_sympy() for gen in self.generators])
        return self._sympy_group

    def bsgs(self) -> BaseStrongGeneratingSet:
        if self._bsgs is None:
            self._bsgs = _compute_bsgs(self)
        return self._bsgs

    def order(self) -> int:
        return self.bsgs().order

    def contains(self, element: Permutation) -> bool:
        return contains(self, element)

    def orbits(self) -> List[Tuple[int, ...]]:
        return orbits(self)


def _starting_base(group: PermGroup) -> List[int]:
    """Two distinct 0-based points, the first moved by a generator."""
    first = next(point for gen in group.generators for point, image in enumerate(gen.images) if image != point + 1)
    return [first, 1 if first == 0 else 0]


def _bsgs_is_complete(base: List[int], strong: List[SymPermutation]) -> bool:
    """Every Schreier generator of every level sifts to the identity through the levels below it."""
    distributed = _distribute_gens_by_base(base, strong)
    basic_orbits, transversals = _orbits_transversals_from_bsgs(base, distributed)
    for level in range(len(base)):
        transversal = transversals[level]
        below = (base[level + 1:], basic_orbits[level + 1:], transversals[level + 1:])
        for point, coset_rep in transversal.items():
            for gen in distributed[level]:
                schreier = coset_rep * gen * ~transversal[gen.array_form[point]]
                residue, _ = _strip(schreier, *below)
                if not residue.is_Identity:
                    return False
    return True


@monitor.track("bsgs")
def _compute_bsgs(group: PermGroup) -> BaseStrongGeneratingSet:
    if group.is_trivial:
        return BaseStrongGeneratingSet((), (), (), 1, randomized=False)

    sym = group.sympy_group()
    sympy_random.seed(_bsgs_seed)
    # sympy's random Schreier-Sims indexes the second basic stabilizer unconditionally
    base, strong = sym.schreier_sims_random(base=_starting_base(group), consec_succ=10)
    randomized = True
    if not _bsgs_is_complete(base, strong):
        logger.debug("randomized BSGS of %r is incomplete; using deterministic Schreier-Sims", group)
        base, strong = sym.schreier_sims_incremental()
        randomized = False

    distributed = _distribute_gens_by_base(base, strong)
    basic_orbits, transversals = _orbits_transversals_from_bsgs(base, distributed)
    order = math.prod(len(orbit) for orbit in basic_orbits)
    logger.debug("BSGS of %r: base %s, order %d", group, [b + 1 for b in base], order)
    return BaseStrongGeneratingSet(
        base=tuple(point + 1 for point in base),
        strong_generators=tuple(Permutation.from_sympy(gen, group.degree) for gen in strong),
        transversals=tuple(transversals),
        order=order,
        randomized=randomized,
    )


def group_order(group: PermGroup) -> int:
    """Exact order of the group from its BSGS."""
    return group.order()


def contains(group: PermGroup, element: Permutation) -> bool:
    """
    Decide membership by sifting through the basic transversals.

    Raises:
        DegreeMismatchError: If the element acts on a different domain
    """
    if element.degree != group.degree:
        raise DegreeMismatchError(
            f"element of degree {element.degree} tested against a group of degree {group.degree}"
        )
    bsgs = group.bsgs()
    residue = element.to_sympy()
    for base_point, transversal in zip(bsgs.base, bsgs.transversals):
        image = residue.array_form[base_point - 1]
        coset_rep = transversal.get(image)
        if coset_rep is None:
            return False
        residue = residue * ~coset_rep
    return residue.is_Identity


def _closure_images(generators: Sequence[Tuple[int, ...]], degree: int,
                    budget: ElementBudget) -> Set[Tuple[int, ...]]:
    identity = tuple(range(1, degree + 1))
    # Prepending a dummy entry lets 1-based points index the lookup directly
    lookups = [(0,) + gen for gen in generators if gen != identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for element in frontier:
            for lookup in lookups:
                product = tuple(map(lookup.__getitem__, element))
                if product not in seen:
                    seen.add(product)
                    if len(seen) > budget.max_elements:
                        raise ClosureOverflowError(budget.max_elements)
                    next_frontier.append(product)
        frontier = next_frontier
    return seen


@monitor.track("closure")
def closure(group: PermGroup, budget: Optional[ElementBudget] = None) -> FrozenSet[Permutation]:
    """
    Enumerate every element of the group breadth-first.

    Raises:
        ClosureOverflowError: If the group has more elements than the budget allows
    """
    budget = budget or ElementBudget()
    images = _closure_images([gen.images for gen in group.generators], group.degree, budget)
    logger.debug("closure of %r: %d elements", group, len(images))
    return frozenset(Permutation._trusted(element) for element in images)


def intersect(a: PermGroup, b: PermGroup,
              budget: Optional[ElementBudget] = None) -> FrozenSet[Permutation]:
    """
    Return the elements of a ∩ b.

    The group with the smaller BSGS order is enumerated and filtered by
    membership in the other.
    """
    if a.degree != b.degree:
        raise DegreeMismatchError(f"cannot intersect degree {a.degree} with degree {b.degree}")
    smaller, other = (a, b) if a.order() <= b.order() else (b, a)
    return frozenset(element for element in closure(smaller, budget) if other.contains(element))


def intersection_matches(a: PermGroup, b: PermGroup, c: PermGroup,
                         budget: Optional[ElementBudget] = None,
                         subset: Optional[Sequence[int]] = None) -> Optional[Permutation]:
    """
    Decide whether a ∩ b equals c, for a subgroup c of both a and b.

    Walks a coset transversal of c in the smaller of a and b: a ∩ b grows
    beyond c exactly when some coset representative outside c lies in the
    other group. The walk costs the index |smaller : c|, not the order.

    Args:
        a, b: Groups whose intersection is tested
        c: A common subgroup of a and b
        budget: Cap on the index that may be enumerated
        subset: Generator indices reported in an overflow error

    Returns:
        None when a ∩ b = c, otherwise an element of (a ∩ b) minus c

    Raises:
        ClosureOverflowError: If the index exceeds the budget
    """
    budget = budget or ElementBudget()
    if not a.degree == b.degree == c.degree:
        raise DegreeMismatchError("intersection test on groups of different degree")
    smaller, other = (a, b) if a.order() <= b.order() else (b, a)
    index = smaller.order() // c.order()
    if index == 1:
        return None
    if index > budget.max_elements:
        raise ClosureOverflowError(budget.max_elements, subset, what="coset enumeration")

    for representative in smaller.sympy_group().coset_transversal(c.sympy_group()):
        candidate = Permutation.from_sympy(representative, smaller.degree)
        if other.contains(candidate) and not c.contains(candidate):
            return candidate
    return None


def orbits(group: PermGroup) -> List[Tuple[int, ...]]:
    """Orbit partition of {1..degree}, each orbit sorted, ordered by smallest point."""
    parts = [tuple(sorted(point + 1 for point in orbit)) for orbit in group.sympy_group().orbits()]
    covered = {point for part in parts for point in part}
    parts.extend((point,) for point in range(1, group.degree + 1) if point not in covered)
    return sorted(parts)


def is_transitive(group: PermGroup) -> bool:
    return len(orbits(group)) == 1
