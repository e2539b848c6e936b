"""
Built-in representations and the example registry.

Registered names resolve to fixture files under ``fixtures/`` except for
``simplex:<m>``, which is built on demand.
"""
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from cpr import CprGraph, cpr_to_rep
from errors import RankError, UnknownExampleError
from ffmatrix import BilinearForm, reflection
from performance_monitor import monitor
from permgroup import PermGroup, Permutation
from repfile import Document, emit_document, load_path
from sggi import SggiRep

logger = logging.getLogger(__name__)

FIXTURE_DIR = Path(__file__).resolve().parent / "fixtures"

_SIMPLEX_RE = re.compile(r"^simplex:(\d+)$")


def simplex_rep(m: int) -> SggiRep:
    """rho_i = (i+1, i+2) for 0 <= i <= m-2: the simplex representation of Sym(m)."""
    if m < 3:
        raise RankError(f"the simplex representation needs m >= 3, got {m}")
    generators = tuple(Permutation.from_cycles([(i + 1, i + 2)], m) for i in range(m - 1))
    return SggiRep("permutation", generators, label=f"simplex:{m}")


def reflection_rep(form: BilinearForm, vectors: Sequence[Sequence[int]], signs: Sequence[int],
                   label: Optional[str] = None) -> SggiRep:
    """
    Generators signs[i] * reflection(form, vectors[i]).

    Nothing about the result is assumed; verify it.

    Raises:
        ValueError: If the lists differ in length or a sign is not +1/-1
        FieldError: In characteristic 2
        SingularVectorError: For a vector v with B(v, v) = 0
    """
    if len(vectors) != len(signs):
        raise ValueError(f"{len(vectors)} vectors but {len(signs)} signs")
    field = form.field
    generators = []
    for vector, sign in zip(vectors, signs):
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign}")
        matrix = reflection(form, vector)
        generators.append(matrix if sign == 1 else matrix.scale(field.minus_one))
    return SggiRep("matrix", tuple(generators), label=label, form=form)


def dihedral_group(k: int) -> PermGroup:
    """The dihedral group of order 2k acting on the k vertices of a k-gon.

    A 2-gon has no faithful vertex action, so k = 2 gives the Klein four-group
    on the four points (1,2)(3,4) and (1,3)(2,4) permute.
    """
    if k < 2:
        raise ValueError(f"a dihedral group needs k >= 2, got {k}")
    if k == 2:
        return PermGroup([Permutation((2, 1, 4, 3)), Permutation((3, 4, 1, 2))], degree=4)
    rotation = Permutation(tuple(list(range(2, k + 1)) + [1]))
    flip = Permutation(tuple([1] + list(range(k, 1, -1))))
    return PermGroup([rotation, flip], degree=k)


@dataclass(frozen=True)
class Example:
    name: str
    description: str
    loader: Callable[[], Document]
    path: Optional[Path] = None


class ExampleRegistry:
    """Named representations; fixed after the built-in entries are registered."""

    def __init__(self):
        self._examples: Dict[str, Example] = {}

    def register(self, name: str, description: str, loader: Callable[[], Document],
                 path: Optional[Path] = None):
        if name in self._examples:
            raise ValueError(f"example '{name}' is already registered")
        self._examples[name] = Example(name, description, loader, path)

    def register_fixture(self, name: str, description: str, filename: str):
        path = FIXTURE_DIR / filename
        self.register(name, description, lambda: load_path(path), path)

    def names(self) -> List[str]:
        return sorted(self._examples) + ["simplex:<m>"]

    def entries(self) -> List[Tuple[str, str]]:
        listed = [(example.name, example.description) for example in sorted(
            self._examples.values(), key=lambda example: example.name)]
        listed.append(("simplex:<m>", "simplex representation of Sym(m), rank m-1"))
        return listed

    def __contains__(self, name: str) -> bool:
        return name in self._examples or bool(_SIMPLEX_RE.match(name))

    def document(self, name: str) -> Document:
        """The named example as parsed, a CprGraph for graph fixtures."""
        match = _SIMPLEX_RE.match(name)
        if match:
            return simplex_rep(int(match.group(1)))
        if name not in self._examples:
            raise UnknownExampleError(name, self.names())
        logger.debug("loading example %s", name)
        return self._examples[name].loader()

    def text(self, name: str) -> str:
        """Fixture file contents, or the canonical text of a built example."""
        example = self._examples.get(name)
        if example is not None and example.path is not None:
            return example.path.read_text(encoding="utf-8")
        return emit_document(self.document(name))

    def build(self, name: str) -> SggiRep:
        document = self.document(name)
        return cpr_to_rep(document) if isinstance(document, CprGraph) else document


registry = ExampleRegistry()
registry.register_fixture("O4minus3", "reflection representation of O-(4,3), type [4,4,6]", "O4minus3.rep")
registry.register_fixture("A11-rank6-1", "Alt(11) rank 6 CPR graph, type [5,3,6,3,5]", "A11-rank6-1.cpr")
registry.register_fixture("A11-rank6-2", "Alt(11) rank 6 CPR graph, type [5,5,6,3,5]", "A11-rank6-2.cpr")
registry.register_fixture("A11-rank6-3", "Alt(11) rank 6 CPR graph, type [5,5,6,5,5]", "A11-rank6-3.cpr")
registry.register_fixture("S5-permmat-gf4", "permutation matrices of the Sym(5) simplex over GF(4)",
                          "S5-permmat-gf4.rep")
registry.register_fixture("simplex6", "simplex representation of Sym(6), rank 5", "simplex6.rep")


def builtin_example(name: str) -> SggiRep:
    """
    The registered representation called name.

    Raises:
        UnknownExampleError: Listing the registered names
    """
    return registry.build(name)


def load_source(source: Union[str, Path]) -> Document:
    """
    A file path, or the name of a registered example.

    Existing files win over example names.
    """
    path = Path(source)
    with monitor.stage("load"):
        if path.exists():
            return load_path(path)
        if str(source) in registry:
            return registry.document(str(source))
    raise FileNotFoundError(f"no such file or registered example: '{source}'")


def load_rep(source: Union[str, Path]) -> SggiRep:
    document = load_source(source)
    return cpr_to_rep(document) if isinstance(document, CprGraph) else document
