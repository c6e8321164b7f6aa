"""
Generalized twisted centralizer codes C(A, D) = {B : AB = BAD}.

A matrix B of order n is read as a codeword of length n**2 by stacking its
columns. Codes are built as the kernel of the parity-check matrix

    H = I_n (x) A - (D^t (x) I_n)(A^t (x) I_n)

so that ``H @ vectorize(B) == vectorize(A B - B A D)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import (
    AmbiguousSyndromeError,
    ModulusError,
    NotACodewordError,
    ShapeError,
    UncorrectableError,
)
from .galois import (
    Matrix,
    kernel_basis,
    kronecker_product,
    rank,
    solve,
    stack_columns,
    unvectorize,
    vectorize,
)


def _check_square_pair(A: Matrix, D: Matrix) -> int:
    if not A.is_square or not D.is_square:
        raise ShapeError(f"A and D must be square, got {A.shape} and {D.shape}")
    if A.shape != D.shape:
        raise ShapeError(f"A is {A.shape} but D is {D.shape}")
    if A.p != D.p:
        raise ModulusError(f"A is over F_{A.p} but D is over F_{D.p}")
    return A.rows


def _check_word(A: Matrix, M: Matrix):
    if M.p != A.p:
        raise ModulusError(f"matrix is over F_{M.p}, code is over F_{A.p}")
    if M.shape != A.shape:
        raise ShapeError(f"expected a {A.shape} matrix, got {M.shape}")


def parity_check_matrix(A: Matrix, D: Matrix) -> Matrix:
    n = _check_square_pair(A, D)
    I = Matrix.identity(n, A.p)
    return kronecker_product(I, A) - kronecker_product(D.T, I) @ kronecker_product(A.T, I)


@dataclass(frozen=True, eq=False)
class GtcCode:
    """The code C(A, D) with a fixed ordered basis.

    ``basis`` holds the unvectorized kernel vectors of ``H`` in RREF
    free-column order, which makes encoding deterministic.
    """

    A: Matrix
    D: Matrix
    H: Matrix
    basis: Tuple[Matrix, ...]
    _generator: np.ndarray = field(repr=False)

    @property
    def p(self) -> int:
        return self.A.p

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def length(self) -> int:
        return self.n * self.n

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def generator(self) -> np.ndarray:
        """k x n**2 array whose rows are the vectorized basis matrices."""
        return self._generator

    @property
    def params(self) -> Tuple[int, int]:
        return self.length, self.k


def construct_code(A: Matrix, D: Matrix) -> GtcCode:
    n = _check_square_pair(A, D)
    H = parity_check_matrix(A, D)
    vectors = kernel_basis(H)
    basis = tuple(unvectorize(v, n, n) for v in vectors)
    if vectors:
        G = np.array([v.array[:, 0] for v in vectors], dtype=np.int64)
    else:
        G = np.zeros((0, n * n), dtype=np.int64)
    G.setflags(write=False)
    return GtcCode(A=A, D=D, H=H, basis=basis, _generator=G)


def syndrome(A: Matrix, D: Matrix, M: Matrix) -> Matrix:
    """S(M) = A M - M A D; zero exactly on codewords."""
    _check_square_pair(A, D)
    _check_word(A, M)
    return A @ M - M @ (A @ D)


def is_codeword(A: Matrix, D: Matrix, B: Matrix) -> bool:
    return syndrome(A, D, B).is_zero()


def encode(code: GtcCode, message: Sequence[int]) -> Matrix:
    """Linear combination ``sum(a_i * B_i)`` of the basis matrices."""
    msg = [int(a) for a in message]
    if len(msg) != code.k:
        raise ShapeError(f"message has length {len(msg)}, code dimension is {code.k}")
    n, p = code.n, code.p
    flat = (np.array(msg, dtype=np.int64) % p) @ code.generator % p if msg else np.zeros(n * n, np.int64)
    return unvectorize(Matrix._wrap(flat[:, None], p), n, n)


def message_of(code: GtcCode, C: Matrix) -> List[int]:
    """Inverse of :func:`encode`; raises NotACodewordError off the code."""
    _check_word(code.A, C)
    if code.k == 0:
        if C.is_zero():
            return []
        raise NotACodewordError("the code is {O} and the matrix is nonzero")
    G_t = stack_columns([vectorize(B) for B in code.basis], code.p)
    x = solve(G_t, vectorize(C))
    if x is None:
        raise NotACodewordError("matrix is not in the span of the code basis")
    return [int(a) for a in x.array[:, 0]]


def syndrome_key(S: Matrix) -> bytes:
    """Row-major entry bytes; one byte per entry when p < 256."""
    if S.p < 256:
        return S.array.astype(np.uint8).tobytes()
    return S.array.astype(">u4").tobytes()


def weight_one_errors(n: int, p: int):
    """All matrices of order n over F_p with exactly one nonzero entry.

    Ordered by column-major position, then by magnitude.
    """
    for c in range(n):
        for r in range(n):
            for a in range(1, p):
                E = np.zeros((n, n), dtype=np.int64)
                E[r, c] = a
                yield Matrix._wrap(E, p)


@dataclass(frozen=True)
class SyndromeTable:
    """Map from syndrome bytes to the unique weight-1 error producing it."""

    n: int
    p: int
    entries: Dict[bytes, Matrix]

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        return key in self.entries

    def lookup(self, S: Matrix):
        return self.entries.get(syndrome_key(S))


def build_syndrome_table(code: GtcCode) -> SyndromeTable:
    A, D = code.A, code.D
    entries: Dict[bytes, Matrix] = {}
    for E in weight_one_errors(code.n, code.p):
        S = syndrome(A, D, E)
        if S.is_zero():
            raise AmbiguousSyndromeError(
                f"weight-1 error {E.tolist()} is itself a codeword; minimum distance is 1"
            )
        key = syndrome_key(S)
        if key in entries:
            raise AmbiguousSyndromeError(
                f"weight-1 errors {entries[key].tolist()} and {E.tolist()} share a syndrome; "
                "minimum distance is below 3"
            )
        entries[key] = E
    return SyndromeTable(n=code.n, p=code.p, entries=entries)


def correct_single_error(code: GtcCode, table: SyndromeTable, R: Matrix) -> Tuple[Matrix, Matrix]:
    """Return ``(codeword, error)`` with ``R = codeword + error``.

    The error is O when R is already a codeword.
    """
    S = syndrome(code.A, code.D, R)
    if S.is_zero():
        return R, Matrix.zeros(code.n, code.n, code.p)
    E = table.lookup(S)
    if E is None:
        raise UncorrectableError("syndrome matches no single error", syndrome=S)
    return R - E, E
