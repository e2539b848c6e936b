"""
String groups generated by involutions: the representation object and all
verification logic.

A representation is an ordered generator sequence rho_0, ..., rho_{n-1} on
either the permutation engine or the matrix engine. Matrix representations
are verified through their faithful action on nonzero vectors.
"""
import itertools
import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from config import DEFAULT_SEARCH_BOUND, ElementBudget, METHODS
from errors import DegreeMismatchError, NotSggiError, RankError, SearchTooLargeError
from ffmatrix import BilinearForm, Matrix, matrix_rep_to_perm
from performance_monitor import monitor
from permgroup import PermGroup, Permutation, _closure_images, closure, intersection_matches

logger = logging.getLogger(__name__)

ENGINES = ("permutation", "matrix")

Element = Union[Permutation, Matrix]


@dataclass(frozen=True)
class SggiRep:
    """An ordered generator sequence tagged with its group engine."""
    engine: str
    generators: Tuple[Element, ...]
    label: Optional[str] = field(default=None, compare=False)
    form: Optional[BilinearForm] = field(default=None, compare=False)

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine '{self.engine}', expected one of {ENGINES}")
        object.__setattr__(self, "generators", tuple(self.generators))
        kind = Permutation if self.engine == "permutation" else Matrix
        for gen in self.generators:
            if not isinstance(gen, kind):
                raise TypeError(f"{self.engine} representation given a {type(gen).__name__}")
        if self.engine == "permutation":
            degrees = {gen.degree for gen in self.generators}
            if len(degrees) > 1:
                raise DegreeMismatchError(f"generators of different degrees {sorted(degrees)}")
        elif self.generators:
            first = self.generators[0]
            for gen in self.generators[1:]:
                first._check_compatible(gen)
            if self.form is not None:
                first._check_compatible(self.form.gram)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def degree(self) -> Optional[int]:
        if self.engine != "permutation" or not self.generators:
            return None
        return self.generators[0].degree

    def with_generators(self, generators: Sequence[Element], label: Optional[str] = None) -> "SggiRep":
        return SggiRep(self.engine, tuple(generators), label=label, form=self.form)

    def permutation_generators(self, budget: Optional[ElementBudget] = None) -> Tuple[Permutation, ...]:
        """Generators on the permutation engine (matrices act on nonzero vectors)."""
        if self.engine == "permutation":
            return self.generators
        budget = budget or ElementBudget()
        return _converted_generators(self.generators, budget.max_elements)

    def group(self, budget: Optional[ElementBudget] = None) -> PermGroup:
        return self.parabolic(range(self.rank), budget)

    def parabolic(self, indices, budget: Optional[ElementBudget] = None) -> PermGroup:
        """The subgroup generated by rho_i for i in indices."""
        gens = self.permutation_generators(budget)
        if not gens:
            raise RankError("a rank 0 representation has no group")
        return PermGroup([gens[i] for i in indices], degree=gens[0].degree)


@lru_cache(maxsize=64)
def _converted_generators(generators: Tuple[Matrix, ...], max_elements: int) -> Tuple[Permutation, ...]:
    permutations, _ = matrix_rep_to_perm(generators, ElementBudget(max_elements))
    return tuple(permutations)


def reversed_rep(rep: SggiRep) -> SggiRep:
    """The sequence rho_{n-1}, ..., rho_0."""
    return rep.with_generators(tuple(reversed(rep.generators)), label=rep.label)


def conjugate_rep(rep: SggiRep, by: Permutation) -> SggiRep:
    """Relabel the points of a permutation representation through ``by``."""
    if rep.engine != "permutation":
        raise ValueError("conjugation relabels permutation representations only")
    return rep.with_generators([gen.conjugate(by) for gen in rep.generators], label=rep.label)


def sub_rep(rep: SggiRep, indices: Sequence[int]) -> SggiRep:
    """The sub-sequence (rho_i : i in indices), in the given order."""
    return rep.with_generators([rep.generators[i] for i in indices], label=rep.label)


def format_element(element: Element) -> str:
    if isinstance(element, Matrix):
        return str(element.rows())
    return str(element)


@dataclass(frozen=True)
class SchlafliType:
    """Orders [p_1, ..., p_{n-1}] of the consecutive products rho_{i-1} rho_i."""
    entries: Tuple[int, ...]

    def reversed(self) -> "SchlafliType":
        return SchlafliType(tuple(reversed(self.entries)))

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self.entries) + "]"


@dataclass(frozen=True)
class FailureWitness:
    """Why a check failed: the offending indices and, where one exists, an element."""
    kind: str
    message: str
    left: Tuple[int, ...] = ()
    right: Tuple[int, ...] = ()
    element: Optional[str] = None

    def to_dict(self) -> Dict:
        return {
            "kind": self.kind,
            "message": self.message,
            "I": list(self.left),
            "J": list(self.right),
            "element": self.element,
        }


@dataclass(frozen=True)
class VerificationReport:
    label: Optional[str]
    engine: str
    rank: int
    is_sggi: bool
    pair_order_table: Tuple[Tuple[int, ...], ...]
    is_irreducible: Optional[bool] = None
    schlafli: Optional[SchlafliType] = None
    is_string_c_group: Optional[bool] = None
    method: Optional[str] = None
    failure_witness: Optional[FailureWitness] = None
    group_order: Optional[int] = None

    def to_dict(self) -> Dict:
        return {
            "label": self.label,
            "engine": self.engine,
            "rank": self.rank,
            "method": self.method,
            "is_sggi": self.is_sggi,
            "pair_order_table": [list(row) for row in self.pair_order_table],
            "schlafli": list(self.schlafli.entries) if self.schlafli is not None else None,
            "is_irreducible": self.is_irreducible,
            "is_string_c_group": self.is_string_c_group,
            "group_order": self.group_order,
            "failure_witness": self.failure_witness.to_dict() if self.failure_witness else None,
        }


def check_sggi(rep: SggiRep) -> VerificationReport:
    """
    Check that every rho_i is an involution and non-adjacent generators commute.

    Failures are report content: the first one in index order becomes the
    failure witness.
    """
    gens = rep.generators
    n = rep.rank
    table = tuple(
        tuple((gens[i] * gens[j]).order() if i != j else 1 for j in range(n))
        for i in range(n)
    )

    witness = None
    for i, gen in enumerate(gens):
        if gen.is_identity:
            witness = FailureWitness("identity", f"rho_{i} is the identity", (i,), (), format_element(gen))
            break
        if not gen.is_involution:
            witness = FailureWitness("involution", f"rho_{i} has order {gen.order()}, not 2",
                                     (i,), (), format_element(gen))
            break
    if witness is None:
        for i, j in itertools.combinations(range(n), 2):
            if j - i > 1 and table[i][j] > 2:
                witness = FailureWitness(
                    "commuting", f"rho_{i} and rho_{j} do not commute (product of order {table[i][j]})",
                    (i,), (j,), format_element(gens[i] * gens[j]),
                )
                break

    is_sggi = witness is None
    schlafli = SchlafliType(tuple(table[i - 1][i] for i in range(1, n))) if is_sggi else None
    return VerificationReport(
        label=rep.label,
        engine=rep.engine,
        rank=n,
        is_sggi=is_sggi,
        pair_order_table=table,
        is_irreducible=all(p > 2 for p in schlafli.entries) if schlafli is not None else None,
        schlafli=schlafli,
        failure_witness=witness,
    )


def _require_sggi(rep: SggiRep) -> VerificationReport:
    report = check_sggi(rep)
    if not report.is_sggi:
        raise NotSggiError(f"not an sggi: {report.failure_witness.message}")
    return report


def schlafli_type(rep: SggiRep) -> SchlafliType:
    """Orders of rho_{i-1} rho_i; raises NotSggiError when rep is not an sggi."""
    return _require_sggi(rep).schlafli


def is_irreducible(rep: SggiRep) -> bool:
    """True iff every Schlafli entry exceeds 2."""
    return _require_sggi(rep).is_irreducible


class _Parabolics:
    """Memoized parabolic subgroups of one representation, keyed by index tuple."""

    def __init__(self, rep: SggiRep, budget: ElementBudget):
        self.gens = rep.permutation_generators(budget)
        self.degree = self.gens[0].degree
        self._groups: Dict[Tuple[int, ...], PermGroup] = {}

    def __call__(self, indices: Sequence[int]) -> PermGroup:
        key = tuple(sorted(indices))
        if key not in self._groups:
            self._groups[key] = PermGroup([self.gens[i] for i in key], degree=self.degree)
        return self._groups[key]


def _intersection_witness(parabolics: _Parabolics, left: Tuple[int, ...], right: Tuple[int, ...],
                          budget: ElementBudget) -> Optional[FailureWitness]:
    common = tuple(sorted(set(left) & set(right)))
    group_left, group_right = parabolics(left), parabolics(right)
    enumerated = left if group_left.order() <= group_right.order() else right
    element = intersection_matches(group_left, group_right, parabolics(common), budget, subset=enumerated)
    if element is None:
        return None
    return FailureWitness(
        "intersection",
        f"<rho_i : i in {list(left)}> and <rho_j : j in {list(right)}> meet outside "
        f"<rho_k : k in {list(common)}>",
        left, right, str(element),
    )


def _rank_two_witness(parabolics: _Parabolics, i: int, j: int) -> Optional[FailureWitness]:
    if parabolics.gens[i] != parabolics.gens[j]:
        return None
    return FailureWitness("intersection", f"rho_{i} = rho_{j}", (i,), (j,), str(parabolics.gens[i]))


def _subset_pairs(rank: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Unordered pairs of non-nested index subsets, smallest total size first."""
    subsets = [combo for size in range(1, rank + 1) for combo in itertools.combinations(range(rank), size)]
    pairs = []
    for a, b in itertools.combinations(subsets, 2):
        if set(a) <= set(b) or set(b) <= set(a):
            continue
        pairs.append((a, b))
    pairs.sort(key=lambda pair: (len(pair[0]) + len(pair[1]), len(pair[0]), pair[0], pair[1]))
    return pairs


def _verify_exhaustive(parabolics: _Parabolics, rank: int, budget: ElementBudget) -> Optional[FailureWitness]:
    for left, right in _subset_pairs(rank):
        if len(left) == len(right) == 1:
            witness = _rank_two_witness(parabolics, left[0], right[0])
        else:
            witness = _intersection_witness(parabolics, left, right, budget)
        if witness is not None:
            return witness
    return None


def _verify_recursive(parabolics: _Parabolics, rank: int, budget: ElementBudget) -> Optional[FailureWitness]:
    memo: Dict[Tuple[int, int], Optional[FailureWitness]] = {}

    def interval(lo: int, hi: int) -> Optional[FailureWitness]:
        if (lo, hi) in memo:
            return memo[(lo, hi)]
        if hi - lo < 1:
            result = None
        elif hi - lo == 1:
            result = _rank_two_witness(parabolics, lo, hi)
        else:
            result = interval(lo, hi - 1) or interval(lo + 1, hi)
            if result is None:
                result = _intersection_witness(
                    parabolics, tuple(range(lo, hi)), tuple(range(lo + 1, hi + 1)), budget
                )
        memo[(lo, hi)] = result
        return result

    return interval(0, rank - 1)


@monitor.track("verify")
def verify(rep: SggiRep, method: str = "recursive", budget: Optional[ElementBudget] = None) -> VerificationReport:
    """
    Full string C-group verification.

    The exhaustive method tests the intersection property on every pair of
    non-nested index subsets; the recursive method checks both facets
    recursively and their single intersection. Both decide the same property.

    Raises:
        ClosureOverflowError: If a coset enumeration exceeds the budget
    """
    if method not in METHODS:
        raise ValueError(f"unknown verification method '{method}', expected one of {METHODS}")
    budget = budget or ElementBudget()
    report = check_sggi(rep)
    if not report.is_sggi:
        return replace(report, is_string_c_group=False, method=method)
    if rep.rank == 0:
        return replace(report, is_string_c_group=True, method=method)

    parabolics = _Parabolics(rep, budget)
    if method == "exhaustive":
        witness = _verify_exhaustive(parabolics, rep.rank, budget)
    else:
        witness = _verify_recursive(parabolics, rep.rank, budget)
    group_order = parabolics(range(rep.rank)).order()
    logger.debug("verify %s (%s): %s", rep.label, method, "ok" if witness is None else witness.message)
    return replace(
        report,
        is_string_c_group=witness is None,
        method=method,
        failure_witness=witness,
        group_order=group_order,
    )


def search_reps(group: PermGroup, rank: int, budget: Optional[ElementBudget] = None,
                bound: int = DEFAULT_SEARCH_BOUND, method: str = "recursive") -> List[SggiRep]:
    """
    Every involution sequence of the given rank that generates the whole group
    and is an irreducible string C-group.

    Sequences are compared by exact equality only; no isomorphism reduction.

    Raises:
        RankError: If rank < 2
        SearchTooLargeError: If the group order exceeds ``bound``
    """
    if rank < 2:
        raise RankError(f"search needs rank >= 2, got {rank}")
    budget = budget or ElementBudget()
    order = group.order()
    if order > bound:
        raise SearchTooLargeError(f"group of order {order:,} exceeds the search bound {bound:,}")

    involutions = sorted((element for element in closure(group, budget) if element.is_involution),
                         key=lambda element: element.images)
    logger.debug("search rank %d in group of order %d: %d involutions", rank, order, len(involutions))

    found: List[SggiRep] = []

    def extend(sequence: List[Permutation]):
        if len(sequence) == rank:
            images = _closure_images([gen.images for gen in sequence], group.degree, budget)
            if len(images) != order:
                return
            candidate = SggiRep("permutation", tuple(sequence))
            if verify(candidate, method, budget).is_string_c_group:
                found.append(candidate)
            return
        for involution in involutions:
            if sequence:
                # adjacent products of order > 2 (irreducible), non-adjacent ones commute
                if (sequence[-1] * involution).order() <= 2:
                    continue
                if any((earlier * involution).order() > 2 for earlier in sequence[:-1]):
                    continue
            extend(sequence + [involution])

    extend([])
    return found
