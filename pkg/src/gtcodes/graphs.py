"""
Graph automorphisms acting on GTC codes.

A permutation pi of {0..n-1} has matrix P with ``P[pi(j), j] = 1``. It is an
automorphism of the graph with adjacency matrix M when ``M P^-1 = P^-1 M``.
For P in Aut(A) and Q in Aut(AD) the map B -> P^-1 B Q sends C(A, D) to
itself, and on entries it reads ``(P^-1 B Q)[i, j] = B[pi_P(i), pi_Q(j)]``,
so it is a permutation of codeword coordinates.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .code import GtcCode, is_codeword
from .errors import PreconditionError, ShapeError, TheoremViolation
from .galois import Matrix, vectorize

DEFAULT_N_LIMIT = 8


@dataclass(frozen=True)
class Permutation:
    """Bijection j -> image[j] on {0, ..., n-1}."""

    image: Tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(x) for x in self.image)
        if sorted(image) != list(range(len(image))):
            raise PreconditionError(f"{list(image)} is not a permutation of 0..{len(image) - 1}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, j: int) -> int:
        return self.image[j]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for j, pj in enumerate(self.image):
            inv[pj] = j
        return Permutation(tuple(inv))

    def then(self, other: "Permutation") -> "Permutation":
        """Apply self first, then other: j -> other(self(j))."""
        return Permutation(tuple(other.image[j] for j in self.image))

    def matrix(self, p: int) -> Matrix:
        P = np.zeros((self.n, self.n), dtype=np.int64)
        P[list(self.image), list(range(self.n))] = 1
        return Matrix._wrap(P, p)

    @classmethod
    def from_matrix(cls, P: Matrix) -> "Permutation":
        arr = P.array
        if not P.is_square or not ((arr == 0) | (arr == 1)).all() or not (arr.sum(axis=0) == 1).all() \
                or not (arr.sum(axis=1) == 1).all():
            raise PreconditionError("not a permutation matrix")
        return cls(tuple(int(np.flatnonzero(arr[:, j])[0]) for j in range(P.cols)))

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.image) + "]"


def _is_graph_like(M: Matrix) -> bool:
    arr = M.array
    return bool(((arr == 0) | (arr == 1)).all() and (arr == arr.T).all())


def is_graph_automorphism(perm: Permutation, M: Matrix) -> bool:
    if not M.is_square or M.rows != perm.n:
        raise ShapeError(f"permutation of {perm.n} points cannot act on a {M.shape} matrix")
    P_inv = perm.inverse().matrix(M.p)
    return M @ P_inv == P_inv @ M


def automorphism_group(M: Matrix, n_limit: int = DEFAULT_N_LIMIT) -> List[Permutation]:
    """All permutations commuting with M, in lexicographic order of images.

    Only the algebraic condition is checked, so M need not be a 0/1
    symmetric matrix; a warning is issued when it is not one.
    """
    if not M.is_square:
        raise ShapeError(f"adjacency matrix must be square, got {M.shape}")
    n = M.rows
    if n > n_limit:
        raise PreconditionError(f"brute force over S_{n} exceeds the limit n <= {n_limit}")
    if not _is_graph_like(M):
        warnings.warn("matrix is not a symmetric 0/1 adjacency matrix; using the algebraic condition only",
                      stacklevel=2)
    arr = M.array
    group = []
    for image in itertools.permutations(range(n)):
        idx = np.array(image)
        # M P^-1 = P^-1 M  <=>  M[pi(i), pi(j)] = M[i, j] for all i, j
        if np.array_equal(arr[np.ix_(idx, idx)], arr):
            group.append(Permutation(image))
    return group


def group_act(P: Permutation, Q: Permutation, B: Matrix) -> Matrix:
    """P^-1 B Q."""
    if not B.is_square or P.n != B.rows or Q.n != B.cols:
        raise ShapeError(f"permutations of sizes {P.n}, {Q.n} cannot act on a {B.shape} matrix")
    return P.inverse().matrix(B.p) @ B @ Q.matrix(B.p)


def coordinate_permutation(P: Permutation, Q: Permutation) -> Permutation:
    """Permutation sigma of column-major coordinates induced by B -> P^-1 B Q.

    Entry (r, c) of B moves to (pi_P^-1(r), pi_Q^-1(c)); sigma sends index
    ``c*n + r`` to the index of that target.
    """
    if P.n != Q.n:
        raise ShapeError("P and Q must act on the same number of points")
    n = P.n
    P_inv, Q_inv = P.inverse(), Q.inverse()
    return Permutation(tuple(Q_inv(c) * n + P_inv(r) for c in range(n) for r in range(n)))


def apply_coordinate_permutation(sigma: Permutation, v: Matrix) -> Matrix:
    """y with ``y[sigma(t)] = v[t]`` for a column vector v."""
    flat = v.array[:, 0]
    if flat.size != sigma.n:
        raise ShapeError(f"vector of length {flat.size} for a permutation of {sigma.n} points")
    out = np.empty_like(flat)
    out[list(sigma.image)] = flat
    return Matrix._wrap(out[:, None], v.p)


def verify_coordinate_action(code: GtcCode, P: Permutation, Q: Permutation) -> Permutation:
    """Check that (P, Q) acts on ``code`` and return the coordinate permutation.

    Requires P in Aut(A) and Q in Aut(AD). Verifies, for every basis
    matrix B, that sigma(vec B) == vec(P^-1 B Q) and that the image is a
    codeword; since sigma is a bijection this means it fixes the code.
    """
    A, D = code.A, code.D
    if not is_graph_automorphism(P, A):
        raise PreconditionError(f"{P} is not an automorphism of A")
    if not is_graph_automorphism(Q, A @ D):
        raise PreconditionError(f"{Q} is not an automorphism of AD")
    sigma = coordinate_permutation(P, Q)
    for B in code.basis:
        image = group_act(P, Q, B)
        if apply_coordinate_permutation(sigma, vectorize(B)) != vectorize(image):
            raise TheoremViolation(f"coordinate formula disagrees with P^-1 B Q for B = {B.tolist()}",
                                   witness=(A, D, P, Q))
        if not is_codeword(A, D, image):
            raise TheoremViolation(f"P^-1 B Q leaves the code for B = {B.tolist()}", witness=(A, D, P, Q))
    return sigma
