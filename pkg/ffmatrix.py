"""
Finite fields GF(p^k), matrices over them, symmetric bilinear forms,
reflections, and conversion of matrix groups to permutation groups.

Field elements are integers 0..q-1: the element sum(c_i x^i) is stored as
sum(c_i p^i). Matrices act on row vectors (x -> xM), so row i of a matrix
is the image of the basis vector e_i and ``A * B`` applies A first, then B.
"""
import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Poly, Symbol, isprime

from config import ElementBudget
from errors import ClosureOverflowError, FieldError, SingularVectorError
from performance_monitor import monitor
from permgroup import Permutation

logger = logging.getLogger(__name__)

_X = Symbol("x")

# Irreducible moduli for GF(2^k), coefficients c0..ck
DEFAULT_BINARY_MODULI = {
    1: (0, 1),
    2: (1, 1, 1),
    3: (1, 1, 0, 1),
    4: (1, 1, 0, 0, 1),
    5: (1, 0, 1, 0, 0, 1),
    6: (1, 1, 0, 0, 0, 0, 1),
    7: (1, 1, 0, 0, 0, 0, 0, 1),
    8: (1, 0, 1, 1, 1, 0, 0, 0, 1),
}

MAX_FIELD_SIZE = 1024


def is_irreducible(coefficients: Sequence[int], p: int) -> bool:
    """True if the polynomial c0 + c1 x + ... is irreducible over GF(p)."""
    return Poly.from_list(list(reversed(coefficients)), _X, modulus=p).is_irreducible


def default_modulus(p: int, k: int) -> Tuple[int, ...]:
    """
    Canonical monic irreducible polynomial of degree k over GF(p).

    The fixed binary table is used for p = 2, k <= 8; otherwise the first
    irreducible polynomial in lexicographic order of (c0, ..., c_{k-1}).
    """
    if k == 1:
        return (0, 1)
    if p == 2 and k in DEFAULT_BINARY_MODULI:
        return DEFAULT_BINARY_MODULI[k]
    for low in itertools.product(range(p), repeat=k):
        candidate = tuple(low) + (1,)
        if candidate[0] != 0 and is_irreducible(candidate, p):
            return candidate
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


class FiniteField:
    """GF(p^k) with add/mul/neg/inverse lookup tables over the integer encoding."""

    def __init__(self, p: int, k: int = 1, modulus: Optional[Sequence[int]] = None):
        if not isprime(p):
            raise FieldError(f"characteristic must be prime, got {p}")
        if k < 1:
            raise FieldError(f"extension degree must be positive, got {k}")
        if p ** k > MAX_FIELD_SIZE:
            raise FieldError(f"GF({p}^{k}) has more than {MAX_FIELD_SIZE} elements")

        modulus = tuple(int(c) for c in modulus) if modulus is not None else default_modulus(p, k)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {k}: {list(modulus)}")
        if any(not 0 <= c < p for c in modulus):
            raise FieldError(f"modulus coefficients must lie in 0..{p - 1}: {list(modulus)}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")

        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p ** k
        self._build_tables()

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        powers = p ** np.arange(k, dtype=np.int64)
        coeffs = (np.arange(q, dtype=np.int64)[:, None] // powers[None, :]) % p

        # shifts[i][a] holds the coefficients of a * x^i
        low = np.array(self.modulus[:k], dtype=np.int64)
        shifts = [coeffs]
        for _ in range(1, k):
            prev = shifts[-1]
            shifted = np.zeros_like(prev)
            shifted[:, 1:] = prev[:, :-1]
            shifted = (shifted - prev[:, k - 1:k] * low[None, :]) % p
            shifts.append(shifted)

        products = np.einsum("bi,iak->abk", coeffs, np.stack(shifts)) % p
        sums = (coeffs[:, None, :] + coeffs[None, :, :]) % p

        self.coefficient_table = coeffs
        self.mul_table = products @ powers
        self.add_table = sums @ powers
        self.neg_table = ((-coeffs) % p) @ powers
        inverse = np.argmax(self.mul_table == 1, axis=1)
        inverse[0] = 0
        self.inv_table = inverse

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def one(self) -> int:
        return 1

    @property
    def minus_one(self) -> int:
        return int(self.neg_table[1])

    def _check(self, *elements: int):
        for element in elements:
            if not 0 <= element < self.q:
                raise FieldError(f"{element} is not an element of {self}")

    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a: int) -> int:
        self._check(a)
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError(f"inversion of zero in {self}")
        return int(self.inv_table[a])

    def from_coefficients(self, coefficients: Sequence[int]) -> int:
        """Encode c0 + c1 x + ... (trailing coefficients may be omitted)."""
        if len(coefficients) > self.k:
            raise FieldError(f"{list(coefficients)} has more than {self.k} coefficients")
        if any(not 0 <= c < self.p for c in coefficients):
            raise FieldError(f"coefficients must lie in 0..{self.p - 1}: {list(coefficients)}")
        return sum(int(c) * self.p ** i for i, c in enumerate(coefficients))

    def coefficients(self, a: int) -> List[int]:
        self._check(a)
        return [int(c) for c in self.coefficient_table[a]]

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"


def field_arithmetic(field: FiniteField, a: int, b: Optional[int], op: str) -> int:
    """Apply ``add``, ``mul`` or ``inv`` (which ignores ``b``)."""
    if op == "add":
        return field.add(a, b)
    if op == "mul":
        return field.mul(a, b)
    if op == "inv":
        return field.inv(a)
    raise ValueError(f"unknown field operation '{op}'")


def _matmul(field: FiniteField, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    products = field.mul_table[left[:, :, None], right[None, :, :]]
    total = products[:, 0, :]
    for t in range(1, products.shape[1]):
        total = field.add_table[total, products[:, t, :]]
    return total


class Matrix:
    """A square matrix over a finite field, immutable."""

    __slots__ = ("field", "entries")

    def __init__(self, field: FiniteField, entries):
        array = np.array(entries, dtype=np.int64)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] == 0:
            raise FieldError(f"matrix must be square and non-empty, got shape {array.shape}")
        if array.min() < 0 or array.max() >= field.q:
            raise FieldError(f"matrix entries must be elements of {field}")
        array.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "entries", array)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, field: FiniteField, dim: int) -> "Matrix":
        return cls(field, np.eye(dim, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def is_identity(self) -> bool:
        return bool(np.array_equal(self.entries, np.eye(self.dim, dtype=np.int64)))

    @property
    def is_involution(self) -> bool:
        return not self.is_identity and (self * self).is_identity

    def _check_compatible(self, other: "Matrix"):
        if self.field != other.field or self.dim != other.dim:
            raise FieldError(
                f"matrix over {self.field} of dim {self.dim} combined with "
                f"matrix over {other.field} of dim {other.dim}"
            )

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check_compatible(other)
        return Matrix(self.field, _matmul(self.field, self.entries, other.entries))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.entries.T)

    def scale(self, scalar: int) -> "Matrix":
        return Matrix(self.field, self.field.mul_table[scalar, self.entries])

    def determinant(self) -> int:
        """Determinant by Gaussian elimination over the field."""
        field = self.field
        rows = [[int(x) for x in row] for row in self.entries]
        n = self.dim
        det = 1
        for col in range(n):
            pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
            if pivot is None:
                return 0
            if pivot != col:
                rows[col], rows[pivot] = rows[pivot], rows[col]
                det = field.neg(det)
            det = field.mul(det, rows[col][col])
            pivot_inv = field.inv(rows[col][col])
            for r in range(col + 1, n):
                factor = field.mul(rows[r][col], pivot_inv)
                if factor:
                    rows[r] = [field.sub(x, field.mul(factor, y)) for x, y in zip(rows[r], rows[col])]
        return det

    @property
    def is_invertible(self) -> bool:
        return self.determinant() != 0

    def order(self) -> int:
        """
        Least k >= 1 with M^k = I, by repeated multiplication.

        Raises:
            FieldError: If the matrix is singular
        """
        if not self.is_invertible:
            raise FieldError("singular matrix has no multiplicative order")
        power = self
        for k in range(1, self.field.q ** self.dim + 1):
            if power.is_identity:
                return k
            power = power * self
        raise FieldError("matrix order exceeds |GL(d, q)| bound")  # unreachable for invertible input

    def rows(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self.entries]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.field == other.field
                and np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash((self.field, self.entries.shape, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.rows()})"


class BilinearForm:
    """A symmetric bilinear form B(x, y) = x F y^T given by its Gram matrix F."""

    def __init__(self, gram: Matrix):
        if not np.array_equal(gram.entries, gram.entries.T):
            raise FieldError("Gram matrix of a symmetric form must be symmetric")
        self.gram = gram

    @classmethod
    def from_rows(cls, field: FiniteField, rows) -> "BilinearForm":
        return cls(Matrix(field, rows))

    @property
    def field(self) -> FiniteField:
        return self.gram.field

    @property
    def dim(self) -> int:
        return self.gram.dim

    @property
    def is_nondegenerate(self) -> bool:
        return self.gram.determinant() != 0

    def value(self, x: Sequence[int], y: Sequence[int]) -> int:
        left = _matmul(self.field, np.array([x], dtype=np.int64), self.gram.entries)
        return int(_matmul(self.field, left, np.array([y], dtype=np.int64).T)[0, 0])

    def __eq__(self, other) -> bool:
        return isinstance(other, BilinearForm) and self.gram == other.gram

    def __hash__(self) -> int:
        return hash(self.gram)

    def __repr__(self) -> str:
        return f"BilinearForm({self.field}, {self.gram.rows()})"


def is_isometry(matrix: Matrix, form: BilinearForm) -> bool:
    """True iff M F M^T = F, i.e. B(xM, yM) = B(x, y) for all row vectors."""
    matrix._check_compatible(form.gram)
    return matrix * form.gram * matrix.transpose() == form.gram


def reflection(form: BilinearForm, vector: Sequence[int]) -> Matrix:
    """
    The reflection x -> x - 2 B(x, v) / B(v, v) v in the 1-space <v>.

    Raises:
        FieldError: In characteristic 2 or for a vector of the wrong length
        SingularVectorError: If B(v, v) = 0
    """
    field = form.field
    if field.p == 2:
        raise FieldError("reflections are only defined here in odd characteristic")
    if len(vector) != form.dim:
        raise FieldError(f"vector of length {len(vector)} for a form of dimension {form.dim}")
    norm = form.value(vector, vector)
    if norm == 0:
        raise SingularVectorError(f"vector {list(vector)} is singular for the form")

    two_over_norm = field.mul(field.add(1, 1), field.inv(norm))
    pairing = _matmul(field, form.gram.entries, np.array([vector], dtype=np.int64).T)[:, 0]
    rows = []
    for i in range(form.dim):
        coefficient = field.mul(int(pairing[i]), two_over_norm)
        row = [field.neg(field.mul(coefficient, int(v))) for v in vector]
        row[i] = field.add(row[i], 1)
        rows.append(row)
    return Matrix(field, rows)


def vector_from_code(field: FiniteField, dim: int, code: int) -> Tuple[int, ...]:
    """Vector whose coordinates are the base-q digits of code, most significant first."""
    digits = []
    for _ in range(dim):
        code, digit = divmod(code, field.q)
        digits.append(digit)
    return tuple(reversed(digits))


def singular_vectors(form: BilinearForm) -> List[Tuple[int, ...]]:
    """Nonzero vectors v with B(v, v) = 0, in lexicographic order."""
    field, dim = form.field, form.dim
    return [vector for vector in (vector_from_code(field, dim, code) for code in range(1, field.q ** dim))
            if form.value(vector, vector) == 0]


@monitor.track("matrix_to_perm")
def matrix_rep_to_perm(generators: Sequence[Matrix], budget: Optional[ElementBudget] = None
                       ) -> Tuple[List[Permutation], Dict[int, Tuple[int, ...]]]:
    """
    Permutation action of matrices on the nonzero row vectors.

    Nonzero vectors are numbered 1..q^d - 1 in lexicographic order of their
    coordinate tuples (field elements ordered by their integer encoding), so
    point j is the vector whose base-q digits spell j.

    Returns:
        The permutations, and the dictionary point -> vector

    Raises:
        ClosureOverflowError: If q^d - 1 exceeds the budget
        FieldError: On mixed fields/dimensions or a singular matrix
    """
    budget = budget or ElementBudget()
    if not generators:
        raise FieldError("no matrices to convert")
    first = generators[0]
    for gen in generators:
        first._check_compatible(gen)
        if not gen.is_invertible:
            raise FieldError(f"singular matrix cannot act as a permutation: {gen.rows()}")

    field, dim = first.field, first.dim
    size = field.q ** dim - 1
    if size > budget.max_elements:
        raise ClosureOverflowError(budget.max_elements, what="vector domain")

    codes = np.arange(size + 1, dtype=np.int64)
    place = field.q ** np.arange(dim - 1, -1, -1, dtype=np.int64)
    vectors = (codes[:, None] // place[None, :]) % field.q

    permutations = []
    for gen in generators:
        images = _matmul(field, vectors, gen.entries) @ place
        permutations.append(Permutation(tuple(int(image) for image in images[1:])))
    points = {int(code): tuple(int(x) for x in vectors[code]) for code in range(1, size + 1)}
    logger.debug("converted %d matrices over %s of dim %d to degree %d", len(generators), field, dim, size)
    return permutations, points
