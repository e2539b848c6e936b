"""
Text format for representations.

Permutation kind::

    kind: permutation
    label: simplex6
    degree: 6
    gen: (1,2)

Matrix kind (entries are integers over a prime field and coefficient lists
c0,...,c_{k-1} over GF(p^k))::

    kind: matrix
    label: O4minus3
    field: 3
    dim: 4
    form: [[1,1,0,0],[1,2,1,0],[0,1,1,2],[0,0,2,1]]
    gen: [[2,0,0,0],[1,1,0,0],[0,0,1,0],[0,0,0,1]]

CPR graphs are handled by :mod:`cpr`. Emission is canonical: parsing an
emitted document and emitting it again gives the same text.
"""
import json
import logging
import re
from pathlib import Path
from typing import Dict, List, Optional, Union

from cpr import CprGraph, cpr_emit, cpr_parse, cpr_to_rep
from errors import FieldError, RepFileError
from ffmatrix import BilinearForm, FiniteField, Matrix
from permgroup import Permutation
from sggi import SggiRep

logger = logging.getLogger(__name__)

KINDS = ("permutation", "matrix", "cpr")

Document = Union[SggiRep, CprGraph]

_FIELD_RE = re.compile(r"^(\d+)(?:\s*\^\s*(\d+))?(?:\s+modulus\s*:\s*([\d,\s]+))?$")

_HEADERS = {
    "permutation": ("kind", "label", "degree"),
    "matrix": ("kind", "label", "field", "dim", "form"),
}


def _lines(text: str):
    """Yield (line number, key, value) for every non-blank, non-comment line."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep or not key.strip():
            raise RepFileError(f"malformed line {raw.strip()!r}", number)
        yield number, key.strip().lower(), value.strip()


def document_kind(text: str) -> str:
    """The declared kind of a document (the first ``kind:`` line)."""
    for number, key, value in _lines(text):
        if key == "kind":
            if value not in KINDS:
                raise RepFileError(f"unknown kind '{value}', expected one of {KINDS}", number)
            return value
    raise RepFileError("missing 'kind' header")


def _positive(key: str, value: str, number: int) -> int:
    try:
        parsed = int(value)
    except ValueError:
        parsed = 0
    if parsed < 1:
        raise RepFileError(f"'{key}' must be a positive integer, got {value!r}", number)
    return parsed


def _parse_field(value: str, number: int) -> FiniteField:
    match = _FIELD_RE.match(value)
    if not match:
        raise RepFileError(f"malformed field {value!r}, expected 'p^k [modulus: c0,...,ck]'", number)
    p, k = int(match.group(1)), int(match.group(2) or 1)
    modulus = None
    if match.group(3):
        modulus = [int(c) for c in match.group(3).replace(",", " ").split()]
    try:
        return FiniteField(p, k, modulus)
    except FieldError as exc:
        raise RepFileError(str(exc), number)


def _parse_entry(field: FiniteField, entry, number: int) -> int:
    if field.k == 1:
        if not isinstance(entry, int) or isinstance(entry, bool) or not 0 <= entry < field.p:
            raise RepFileError(f"entry {entry!r} is not an element of {field}", number)
        return entry
    if not isinstance(entry, list) or not all(isinstance(c, int) for c in entry):
        raise RepFileError(f"entry {entry!r} of {field} must be a coefficient list", number)
    try:
        return field.from_coefficients(entry)
    except FieldError as exc:
        raise RepFileError(str(exc), number)


def _parse_matrix(field: FiniteField, dim: int, value: str, number: int) -> Matrix:
    try:
        rows = json.loads(value)
    except json.JSONDecodeError:
        raise RepFileError(f"malformed matrix {value!r}", number)
    if not isinstance(rows, list) or len(rows) != dim or any(
            not isinstance(row, list) or len(row) != dim for row in rows):
        raise RepFileError(f"expected a {dim}x{dim} matrix", number)
    return Matrix(field, [[_parse_entry(field, entry, number) for entry in row] for row in rows])


def _parse_rep(text: str, kind: str) -> SggiRep:
    header: Dict[str, str] = {}
    generators: List = []
    field: Optional[FiniteField] = None
    dim = degree = None
    form: Optional[BilinearForm] = None

    for number, key, value in _lines(text):
        if key == "gen":
            if kind == "permutation":
                if degree is None:
                    raise RepFileError("generator before the degree header", number)
                try:
                    generators.append(Permutation.parse(value, degree))
                except ValueError as exc:
                    raise RepFileError(str(exc), number)
            else:
                if field is None or dim is None:
                    raise RepFileError("generator before the field and dim headers", number)
                generators.append(_parse_matrix(field, dim, value, number))
            continue
        if key not in _HEADERS[kind]:
            raise RepFileError(f"unknown key '{key}' for kind '{kind}'", number)
        if key in header:
            raise RepFileError(f"duplicate '{key}' header", number)
        header[key] = value

        if key == "degree":
            degree = _positive(key, value, number)
        elif key == "field":
            field = _parse_field(value, number)
        elif key == "dim":
            dim = _positive(key, value, number)
        elif key == "form":
            if field is None or dim is None:
                raise RepFileError("form before the field and dim headers", number)
            try:
                form = BilinearForm(_parse_matrix(field, dim, value, number))
            except FieldError as exc:
                raise RepFileError(str(exc), number)

    required = ("degree",) if kind == "permutation" else ("field", "dim")
    for key in required:
        if key not in header:
            raise RepFileError(f"missing '{key}' header")
    logger.debug("parsed %s representation %s of rank %d", kind, header.get("label"), len(generators))
    return SggiRep(kind, tuple(generators), label=header.get("label"), form=form)


def parse_document(text: str) -> Document:
    """
    Parse any of the three kinds.

    Returns:
        An SggiRep for permutation and matrix documents, a CprGraph for cpr

    Raises:
        RepFileError: With the line number of the first offending line
    """
    kind = document_kind(text)
    if kind == "cpr":
        return cpr_parse(text)
    return _parse_rep(text, kind)


def parse_rep(text: str) -> SggiRep:
    """Parse a document as a representation; CPR graphs are converted."""
    document = parse_document(text)
    return cpr_to_rep(document) if isinstance(document, CprGraph) else document


def _format_field(field: FiniteField) -> str:
    if field.k == 1:
        return str(field.p)
    return f"{field.p}^{field.k} modulus: " + ",".join(str(c) for c in field.modulus)


def _format_matrix(matrix: Matrix) -> str:
    field = matrix.field
    if field.k == 1:
        rows = matrix.rows()
    else:
        rows = [[field.coefficients(entry) for entry in row] for row in matrix.rows()]
    return json.dumps(rows, separators=(",", ":"))


def emit_rep(rep: SggiRep) -> str:
    """
    Canonical text of a representation.

    Raises:
        ValueError: For a rank 0 representation, which has no degree or field
    """
    if not rep.generators:
        raise ValueError("cannot write a representation without generators")
    lines = [f"kind: {rep.engine}"]
    if rep.label:
        lines.append(f"label: {rep.label}")
    if rep.engine == "permutation":
        lines.append(f"degree: {rep.degree}")
        lines.extend(f"gen: {gen}" for gen in rep.generators)
    else:
        first = rep.generators[0]
        lines.append(f"field: {_format_field(first.field)}")
        lines.append(f"dim: {first.dim}")
        if rep.form is not None:
            lines.append(f"form: {_format_matrix(rep.form.gram)}")
        lines.extend(f"gen: {_format_matrix(gen)}" for gen in rep.generators)
    return "\n".join(lines) + "\n"


def emit_document(document: Document) -> str:
    if isinstance(document, CprGraph):
        return cpr_emit(document)
    return emit_rep(document)


def load_path(path: Union[str, Path]) -> Document:
    """Read and parse a document file; OSError propagates."""
    return parse_document(Path(path).read_text(encoding="utf-8"))


def write_document(document: Document, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(emit_document(document), encoding="utf-8")
    logger.info("wrote %s", path)
    return path
