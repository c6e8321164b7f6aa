"""
Exact linear algebra over prime fields F_p.

Matrices are immutable and carry their modulus; every binary operation
checks that moduli and shapes agree. Entries are stored row-major in a
read-only ``numpy.int64`` array, while :func:`vectorize` reads them
column-by-column.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ModulusError, NoInverseError, ShapeError, SingularMatrixError

# int64 products stay exact while inner * (p-1)**2 stays below this.
_INT64_SAFE = 2**62


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_modulus(p) -> int:
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
        raise ModulusError(f"modulus must be an integer, got {p!r}")
    p = int(p)
    if not is_prime(p):
        raise ModulusError(f"modulus {p} is not prime")
    return p


@dataclass(frozen=True)
class FieldElement:
    """Residue ``value`` modulo the prime ``p``."""

    value: int
    p: int

    def __post_init__(self):
        p = check_modulus(self.p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", int(self.value) % p)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ModulusError(f"cannot mix F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else FieldElement(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else FieldElement(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else FieldElement(v - self.value, self.p)

    def __mul__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else FieldElement(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def __truediv__(self, other):
        if not isinstance(other, FieldElement):
            other = FieldElement(other, self.p)
        return self * field_inverse(other)

    def inverse(self) -> "FieldElement":
        return field_inverse(self)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def field_inverse(a: FieldElement) -> FieldElement:
    if a.value == 0:
        raise NoInverseError(f"0 has no inverse in F_{a.p}")
    return FieldElement(pow(a.value, -1, a.p), a.p)


class Matrix:
    """Dense immutable matrix over F_p.

    Build one from nested rows (``Matrix([[1, 0], [1, 1]], 2)``); entries are
    reduced mod p, so negative integers are accepted.
    """

    __slots__ = ("p", "_data")

    def __init__(self, entries, p: int):
        p = check_modulus(p)
        arr = np.array(entries, dtype=object if _has_big_ints(entries) else None)
        if arr.ndim != 2 or 0 in arr.shape:
            raise ShapeError(f"matrix needs a non-empty 2-D shape, got {arr.shape}")
        if arr.dtype == object or arr.dtype.kind not in "iub":
            arr = np.array([[int(x) % p for x in row] for row in arr.tolist()], dtype=np.int64)
        else:
            arr = np.mod(arr.astype(np.int64), p)
        arr.setflags(write=False)
        self.p = p
        self._data = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray, p: int) -> "Matrix":
        # arr must already be reduced int64
        m = object.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.setflags(write=False)
        m.p = p
        m._data = arr
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "Matrix":
        return cls._wrap(np.zeros((rows, cols), dtype=np.int64), check_modulus(p))

    @classmethod
    def identity(cls, n: int, p: int) -> "Matrix":
        return cls._wrap(np.eye(n, dtype=np.int64), check_modulus(p))

    @classmethod
    def ones(cls, rows: int, cols: int, p: int) -> "Matrix":
        return cls._wrap(np.ones((rows, cols), dtype=np.int64), check_modulus(p))

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._data

    @property
    def shape(self) -> Tuple[int, int]:
        return self._data.shape

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> "Matrix":
        return matrix_transpose(self)

    def tolist(self) -> List[List[int]]:
        return self._data.tolist()

    def __getitem__(self, idx):
        i, j = idx
        return FieldElement(int(self._data[i, j]), self.p)

    def is_zero(self) -> bool:
        return not self._data.any()

    def weight(self) -> int:
        """Number of nonzero entries (Hamming weight of the codeword)."""
        return int(np.count_nonzero(self._data))

    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.p != self.p:
            raise ModulusError(f"cannot mix F_{self.p} and F_{other.p}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if other.shape != self.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._wrap((self._data + other._data) % self.p, self.p)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if other.shape != self.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix._wrap((self._data - other._data) % self.p, self.p)

    def __neg__(self) -> "Matrix":
        return Matrix._wrap((-self._data) % self.p, self.p)

    def scale(self, c) -> "Matrix":
        if isinstance(c, FieldElement):
            if c.p != self.p:
                raise ModulusError(f"cannot scale F_{self.p} matrix by F_{c.p} scalar")
            c = c.value
        return Matrix._wrap((self._data * (int(c) % self.p)) % self.p, self.p)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matrix_product(self, other)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and bool(
            np.array_equal(self._data, other._data)
        )

    def __hash__(self):
        return hash((self.p, self.shape, self._data.tobytes()))

    def __repr__(self):
        return f"Matrix({self.tolist()}, p={self.p})"

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.tolist())


def _has_big_ints(entries) -> bool:
    if isinstance(entries, np.ndarray):
        return False
    try:
        return any(abs(int(x)) >= 2**62 for row in entries for x in row)
    except TypeError:
        return False


def matrix_product(A: Matrix, B: Matrix) -> Matrix:
    A._check(B)
    if A.cols != B.rows:
        raise ShapeError(f"cannot multiply {A.shape} by {B.shape}")
    p = A.p
    if A.cols * (p - 1) ** 2 < _INT64_SAFE:
        return Matrix._wrap((A._data @ B._data) % p, p)
    prod = A._data.astype(object) @ B._data.astype(object)
    return Matrix._wrap(np.array(prod % p, dtype=np.int64), p)


def matrix_transpose(M: Matrix) -> Matrix:
    return Matrix._wrap(M._data.T, M.p)


def kronecker_product(A: Matrix, B: Matrix) -> Matrix:
    """Block matrix whose (i, j) block is ``A[i, j] * B``."""
    A._check(B)
    return Matrix._wrap(np.kron(A._data, B._data) % A.p, A.p)


def vectorize(M: Matrix) -> Matrix:
    """Stack the columns of M into one column vector."""
    return Matrix._wrap(M._data.reshape(-1, order="F")[:, None], M.p)


def unvectorize(v: Matrix, rows: int, cols: int) -> Matrix:
    flat = v._data.reshape(-1)
    if flat.size != rows * cols:
        raise ShapeError(f"vector of length {flat.size} cannot fill a {rows}x{cols} matrix")
    return Matrix._wrap(flat.reshape((rows, cols), order="F"), v.p)


def _rref(arr: np.ndarray, p: int, ncols: Optional[int] = None):
    """In-place RREF of ``arr``, pivoting only in the first ``ncols`` columns."""
    rows, cols = arr.shape
    ncols = cols if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(arr[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            arr[[r, i]] = arr[[i, r]]
        inv = pow(int(arr[r, c]), -1, p)
        arr[r] = (arr[r] * inv) % p
        factors = arr[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            arr[hit] = (arr[hit] - factors[hit, None] * arr[r]) % p
        pivots.append(c)
        r += 1
    return pivots


def _working_copy(M: Matrix) -> np.ndarray:
    # entries < 2**31 keep factor * entry products inside int64
    if M.p >= 2**31:
        raise ModulusError(f"row reduction supports moduli below 2**31, got {M.p}")
    return np.array(M._data, dtype=np.int64)


def row_reduce(M: Matrix) -> Tuple[Matrix, List[int], int]:
    """Reduced row echelon form.

    Pivots are taken column by column at the first nonzero entry at or
    below the current row. Returns ``(R, pivot_cols, rank)``.
    """
    arr = _working_copy(M)
    pivots = _rref(arr, M.p)
    return Matrix._wrap(arr, M.p), pivots, len(pivots)


def rank(M: Matrix) -> int:
    return row_reduce(M)[2]


def kernel_basis(M: Matrix) -> List[Matrix]:
    """Basis of the right null space ``{v : M v = 0}`` as column vectors.

    One vector per free column of the RREF, free columns ascending; the
    vector has a 1 at its free column, zeros at the other free columns,
    and the negated RREF entries at the pivot columns.
    """
    R, pivots, _ = row_reduce(M)
    p, cols = M.p, M.cols
    pivot_set = set(pivots)
    basis = []
    for f in range(cols):
        if f in pivot_set:
            continue
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-R._data[i, f]) % p
        basis.append(Matrix._wrap(v[:, None], p))
    return basis


def matrix_inverse(M: Matrix) -> Matrix:
    if not M.is_square:
        raise ShapeError(f"only square matrices have inverses, got {M.shape}")
    n = M.rows
    arr = np.hstack([_working_copy(M), np.eye(n, dtype=np.int64)])
    pivots = _rref(arr, M.p, ncols=n)
    if len(pivots) < n:
        raise SingularMatrixError(f"matrix has rank {len(pivots)} < {n}")
    return Matrix._wrap(arr[:, n:], M.p)


def solve(M: Matrix, b: Matrix) -> Optional[Matrix]:
    """One solution x of ``M x = b`` (free variables set to 0), or None."""
    M._check(b)
    if b.rows != M.rows or b.cols != 1:
        raise ShapeError(f"right-hand side must be a {M.rows}x1 column, got {b.shape}")
    arr = np.hstack([_working_copy(M), np.array(b._data, dtype=np.int64)])
    pivots = _rref(arr, M.p, ncols=M.cols)
    if arr[len(pivots):, -1].any():
        return None
    x = np.zeros(M.cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = arr[i, -1]
    return Matrix._wrap(x[:, None], M.p)


def stack_columns(vectors: Sequence[Matrix], p: int) -> Matrix:
    """Place column vectors side by side (at least one vector)."""
    if not vectors:
        raise ShapeError("need at least one column")
    for v in vectors:
        if v.p != p:
            raise ModulusError(f"cannot mix F_{p} and F_{v.p}")
    return Matrix._wrap(np.hstack([v._data for v in vectors]), p)


def as_vector(values: Iterable[int], p: int) -> Matrix:
    """Column vector from a flat sequence of integers."""
    return Matrix([[int(x)] for x in values], p)
