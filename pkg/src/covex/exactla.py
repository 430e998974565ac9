"""Exact linear algebra over a prime field F_p or over the rationals.

Everything here is exact: prime-field scalars are Python ints reduced mod p,
rational scalars are `fractions.Fraction`.  No floating point anywhere.
Subspaces are stored in reduced echelon form, so equal subspaces have
identical representations and can be compared with `==`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    DimensionMismatchError,
    FieldError,
    SingularMatrixError,
)

Scalar = Union[int, Fraction]

DEFAULT_PRIME = 10007


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field: either F_p for a prime p, or the rationals.

    The default prime 10007 is large enough that random matrices behave
    generically in all the randomized sweeps.
    """

    kind: str  # "prime" or "rational"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "prime":
            if self.p is None or self.p < 2 or not _is_prime(self.p):
                raise FieldError(f"modulus {self.p} is not prime")
        elif self.kind == "rational":
            if self.p is not None:
                raise FieldError("rational field takes no modulus")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @staticmethod
    def prime(p: int = DEFAULT_PRIME) -> "FieldSpec":
        return FieldSpec("prime", p)

    @staticmethod
    def rational() -> "FieldSpec":
        return FieldSpec("rational")

    @staticmethod
    def parse(text: str) -> "FieldSpec":
        """Parse a CLI field designator: ``Q`` or ``p:<prime>``."""
        if text in ("Q", "q", "rational"):
            return FieldSpec.rational()
        if text.startswith("p:"):
            return FieldSpec.prime(int(text[2:]))
        raise FieldError(f"cannot parse field {text!r} (use 'Q' or 'p:10007')")

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    def zero(self) -> Scalar:
        return 0 if self.is_prime else Fraction(0)

    def one(self) -> Scalar:
        return 1 if self.is_prime else Fraction(1)

    def coerce(self, value) -> Scalar:
        if self.is_prime:
            if isinstance(value, Fraction):
                if value.denominator == 1:
                    return value.numerator % self.p
                return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
            return int(value) % self.p
        return Fraction(value)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.is_prime else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.is_prime else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.is_prime else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.is_prime else -a

    def inv(self, a: Scalar) -> Scalar:
        if not a:
            raise ZeroDivisionError("inverse of zero field element")
        return pow(a, -1, self.p) if self.is_prime else Fraction(1) / a

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


QQ = FieldSpec.rational()
FP = FieldSpec.prime()


@dataclass(frozen=True)
class ExactMatrix:
    """An immutable matrix with exact entries in a fixed field.

    Row/column indices are 1-based at every public accessor, matching the
    conventions of the rank conditions everywhere else in the package.
    """

    field: FieldSpec
    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        widths = {len(row) for row in self.entries}
        if len(widths) > 1:
            raise DimensionMismatchError("ragged rows in matrix")

    @staticmethod
    def from_rows(field: FieldSpec, rows: Iterable[Iterable]) -> "ExactMatrix":
        data = tuple(tuple(field.coerce(v) for v in row) for row in rows)
        return ExactMatrix(field, data)

    @staticmethod
    def zeros(field: FieldSpec, rows: int, cols: int) -> "ExactMatrix":
        z = field.zero()
        return ExactMatrix(field, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "ExactMatrix":
        one, zero = field.one(), field.zero()
        return ExactMatrix(
            field, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def entry(self, i: int, j: int) -> Scalar:
        """Entry in row i, column j (1-based)."""
        return self.entries[i - 1][j - 1]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(row[j - 1] for row in self.entries)

    def is_zero(self) -> bool:
        zero = self.field.zero()
        return all(v == zero for row in self.entries for v in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        f = self.field
        return ExactMatrix(
            f,
            tuple(
                tuple(f.add(a, b) for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        f = self.field
        return ExactMatrix(
            f,
            tuple(
                tuple(f.sub(a, b) for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __neg__(self) -> "ExactMatrix":
        f = self.field
        return ExactMatrix(f, tuple(tuple(f.neg(a) for a in row) for row in self.entries))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.shape} by {other.shape}"
            )
        f = self.field
        if f.is_prime:
            p = f.p
            bt = list(zip(*other.entries))
            data = tuple(
                tuple(sum(a * b for a, b in zip(row, col)) % p for col in bt)
                for row in self.entries
            )
            return ExactMatrix(f, data)
        bt = list(zip(*other.entries))
        data = tuple(
            tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in bt)
            for row in self.entries
        )
        return ExactMatrix(f, data)

    def scalar_mul(self, c) -> "ExactMatrix":
        f = self.field
        c = f.coerce(c)
        return ExactMatrix(f, tuple(tuple(f.mul(c, a) for a in row) for row in self.entries))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, tuple(zip(*self.entries)))

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise DimensionMismatchError("hstack row mismatch")
        return ExactMatrix(
            self.field, tuple(ra + rb for ra, rb in zip(self.entries, other.entries))
        )

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols:
            raise DimensionMismatchError("vstack column mismatch")
        return ExactMatrix(self.field, self.entries + other.entries)

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "ExactMatrix":
        """Submatrix on the given 1-based row and column index sequences."""
        return ExactMatrix(
            self.field,
            tuple(
                tuple(self.entries[i - 1][j - 1] for j in col_indices) for i in row_indices
            ),
        )

    def rank(self) -> int:
        return len(_row_echelon([list(r) for r in self.entries], self.field)[1])

    def inverse(self) -> "ExactMatrix":
        if not self.is_square():
            raise DimensionMismatchError("inverse of a non-square matrix")
        n = self.rows
        f = self.field
        aug = [list(row) + list(ident_row) for row, ident_row in
               zip(self.entries, ExactMatrix.identity(f, n).entries)]
        reduced, pivots = _row_echelon(aug, f, reduced=True, pivot_limit=n)
        if len(pivots) != n:
            raise SingularMatrixError("matrix is singular")
        return ExactMatrix(f, tuple(tuple(row[n:]) for row in reduced))

    def _check_same_shape(self, other: "ExactMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shape mismatch {self.shape} vs {other.shape}")


def _row_echelon(
    rows: list[list[Scalar]],
    field: FieldSpec,
    reduced: bool = False,
    pivot_limit: int | None = None,
) -> tuple[list[list[Scalar]], list[int]]:
    """In-place Gaussian elimination.

    Returns the (reduced) row-echelon form and the list of 0-based pivot
    columns.  ``pivot_limit`` restricts pivot search to the first columns,
    which is how augmented systems are solved.
    """
    if not rows:
        return rows, []
    m, n = len(rows), len(rows[0])
    limit = n if pivot_limit is None else pivot_limit
    pivots: list[int] = []
    r = 0
    if field.is_prime:
        p = field.p
        for c in range(limit):
            sel = next((i for i in range(r, m) if rows[i][c]), None)
            if sel is None:
                continue
            rows[r], rows[sel] = rows[sel], rows[r]
            inv = pow(rows[r][c], -1, p)
            rows[r] = [(v * inv) % p for v in rows[r]]
            row_r = rows[r]
            targets = range(m) if reduced else range(r + 1, m)
            for i in targets:
                if i == r:
                    continue
                factor = rows[i][c]
                if factor:
                    rows[i] = [(a - factor * b) % p for a, b in zip(rows[i], row_r)]
            pivots.append(c)
            r += 1
            if r == m:
                break
    else:
        for c in range(limit):
            sel = next((i for i in range(r, m) if rows[i][c]), None)
            if sel is None:
                continue
            rows[r], rows[sel] = rows[sel], rows[r]
            inv = Fraction(1) / rows[r][c]
            rows[r] = [v * inv for v in rows[r]]
            row_r = rows[r]
            targets = range(m) if reduced else range(r + 1, m)
            for i in targets:
                if i == r:
                    continue
                factor = rows[i][c]
                if factor:
                    rows[i] = [a - factor * b for a, b in zip(rows[i], row_r)]
            pivots.append(c)
            r += 1
            if r == m:
                break
    return rows, pivots


def rank(matrix: ExactMatrix) -> int:
    """Exact rank via Gaussian elimination."""
    return matrix.rank()


@dataclass(frozen=True)
class Subspace:
    """A linear subspace stored by a canonical reduced-echelon basis.

    ``vectors`` are the basis vectors, each of length ``ambient``; as rows
    they form a reduced row-echelon matrix with pivot columns ``pivots``
    (0-based).  Two equal subspaces always have identical ``vectors``, so
    dataclass equality is subspace equality.
    """

    field: FieldSpec
    ambient: int
    vectors: tuple[tuple[Scalar, ...], ...]
    pivots: tuple[int, ...]

    @staticmethod
    def span(field: FieldSpec, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [[field.coerce(v) for v in vec] for vec in vectors]
        for row in rows:
            if len(row) != ambient:
                raise DimensionMismatchError("vector length differs from ambient dimension")
        reduced, pivots = _row_echelon(rows, field, reduced=True)
        basis = tuple(tuple(reduced[i]) for i in range(len(pivots)))
        return Subspace(field, ambient, basis, tuple(pivots))

    @staticmethod
    def zero(field: FieldSpec, ambient: int) -> "Subspace":
        return Subspace(field, ambient, (), ())

    @staticmethod
    def full(field: FieldSpec, ambient: int) -> "Subspace":
        return Subspace.span(field, ambient, ExactMatrix.identity(field, ambient).entries)

    @staticmethod
    def column_span(matrix: ExactMatrix) -> "Subspace":
        return Subspace.span(matrix.field, matrix.rows, zip(*matrix.entries))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def basis_matrix(self) -> ExactMatrix:
        """Basis vectors as the columns of an ambient x dim matrix."""
        if not self.vectors:
            return ExactMatrix.zeros(self.field, self.ambient, 0)
        return ExactMatrix(self.field, tuple(zip(*self.vectors)))

    def contains_vector(self, vector: Sequence) -> bool:
        f = self.field
        v = [f.coerce(x) for x in vector]
        for row, pivot in zip(self.vectors, self.pivots):
            coeff = v[pivot]
            if coeff:
                v = [f.sub(a, f.mul(coeff, b)) for a, b in zip(v, row)]
        zero = f.zero()
        return all(x == zero for x in v)

    def contains(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(self.contains_vector(v) for v in other.vectors)

    def apply(self, matrix: ExactMatrix) -> "Subspace":
        """Image of this subspace under the linear map ``matrix``."""
        if matrix.cols != self.ambient:
            raise DimensionMismatchError("matrix does not act on this ambient space")
        if not self.vectors:
            return Subspace.zero(self.field, matrix.rows)
        image_cols = matrix @ self.basis_matrix()
        return Subspace.column_span(image_cols)

    def _check_compatible(self, other: "Subspace") -> None:
        if self.ambient != other.ambient or self.field != other.field:
            raise DimensionMismatchError("subspaces live in different ambient spaces")


def coordinate_subspace(field: FieldSpec, ambient: int, indices: Iterable[int]) -> Subspace:
    """Span of the standard basis vectors e_i for the given 1-based indices."""
    one, zero = field.one(), field.zero()
    vecs = []
    for i in indices:
        if not 1 <= i <= ambient:
            raise DimensionMismatchError(f"coordinate index {i} outside 1..{ambient}")
        vecs.append(tuple(one if k == i - 1 else zero for k in range(ambient)))
    return Subspace.span(field, ambient, vecs)


def standard_subspace(field: FieldSpec, ambient: int, j: int) -> Subspace:
    """E_j = span(e_1, ..., e_j).  E_0 is the zero subspace."""
    return coordinate_subspace(field, ambient, range(1, j + 1))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._check_compatible(b)
    return Subspace.span(a.field, a.ambient, a.vectors + b.vectors)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection, computed from the kernel of the glued basis matrix."""
    a._check_compatible(b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.field, a.ambient)
    f = a.field
    glued = a.basis_matrix().hstack(b.basis_matrix().__neg__())
    ker = kernel(glued)
    vectors = []
    for coeffs in ker.vectors:
        left = coeffs[: a.dim]
        vec = [f.zero()] * a.ambient
        for c, basis_vec in zip(left, a.vectors):
            if c:
                vec = [f.add(x, f.mul(c, y)) for x, y in zip(vec, basis_vec)]
        vectors.append(vec)
    return Subspace.span(f, a.ambient, vectors)


def dim_quotient(v: Subspace, w: Subspace) -> int:
    """Dimension of the image of V in ambient/W, i.e. dim(V+W) - dim(W)."""
    v._check_compatible(w)
    return subspace_sum(v, w).dim - w.dim


def kernel(matrix: ExactMatrix) -> Subspace:
    """Null space of the matrix as a subspace of the column-index space."""
    f = matrix.field
    n = matrix.cols
    reduced, pivots = _row_echelon([list(r) for r in matrix.entries], f, reduced=True)
    pivot_set = set(pivots)
    free_cols = [c for c in range(n) if c not in pivot_set]
    vectors = []
    for free in free_cols:
        vec = [f.zero()] * n
        vec[free] = f.one()
        for row, pivot in zip(reduced, pivots):
            vec[pivot] = f.neg(row[free])
        vectors.append(vec)
    return Subspace.span(f, n, vectors)


def image(matrix: ExactMatrix) -> Subspace:
    """Column span."""
    return Subspace.column_span(matrix)


@dataclass(frozen=True)
class LinearSolution:
    """Solution set of A x = b: one particular solution plus the kernel."""

    particular: tuple[Scalar, ...] | None
    homogeneous: Subspace

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def solve_linear(matrix: ExactMatrix, rhs: Sequence) -> LinearSolution:
    f = matrix.field
    b = [f.coerce(v) for v in rhs]
    if len(b) != matrix.rows:
        raise DimensionMismatchError("right-hand side length mismatch")
    n = matrix.cols
    aug = [list(row) + [bv] for row, bv in zip(matrix.entries, b)]
    reduced, pivots = _row_echelon(aug, f, reduced=True, pivot_limit=n)
    zero = f.zero()
    for i in range(len(pivots), matrix.rows):
        if reduced[i][n] != zero:
            return LinearSolution(None, kernel(matrix))
    particular = [zero] * n
    for row, pivot in zip(reduced, pivots):
        particular[pivot] = row[n]
    return LinearSolution(tuple(particular), kernel(matrix))


def random_matrix(field: FieldSpec, rows: int, cols: int, rng: random.Random) -> ExactMatrix:
    """Uniform random matrix over F_p.  Sampling over Q is not supported."""
    if not field.is_prime:
        raise FieldError("random sampling requires a prime field")
    p = field.p
    return ExactMatrix(
        field, tuple(tuple(rng.randrange(p) for _ in range(cols)) for _ in range(rows))
    )


def random_borel(field: FieldSpec, n: int, rng: random.Random) -> ExactMatrix:
    """Random invertible upper-triangular matrix over F_p.

    The diagonal is uniform over nonzero elements and the strict upper part
    is uniform, so the result is always invertible.
    """
    if not field.is_prime:
        raise FieldError("random sampling requires a prime field")
    p = field.p
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] = rng.randrange(1, p)
        for j in range(i + 1, n):
            row[j] = rng.randrange(p)
        rows.append(tuple(row))
    return ExactMatrix(field, tuple(rows))
