"""
Parameters and structural checks for GTC codes.

Minimum distance and weight distribution are computed by exhaustive
enumeration of messages, guarded by an explicit budget. The dimension
bounds, the product-code containment and the invertible-codeword identity
are checked on every report; a failure raises :class:`TheoremViolation`
carrying the offending (A, D).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

import numpy as np

from .code import GtcCode, construct_code, is_codeword
from .errors import EnumerationLimitError, PreconditionError, TheoremViolation
from .galois import Matrix, check_modulus, kernel_basis, rank
from .rng import XorShift64Star

log = logging.getLogger(__name__)

DEFAULT_DISTANCE_LIMIT = 2**24
DEFAULT_INVERTIBLE_BUDGET = 2**16
_CHUNK = 1 << 15


def _message_block(p: int, k: int, start: int, stop: int) -> np.ndarray:
    # digits of start..stop-1 in base p, first coordinate most significant
    idx = np.arange(start, stop, dtype=np.int64)
    powers = np.array([p ** e for e in range(k - 1, -1, -1)], dtype=np.int64)
    return (idx[:, None] // powers) % p


def iter_codewords(G: np.ndarray, p: int, *, skip_zero: bool = False) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """Yield ``(messages, words)`` blocks covering every message in lexicographic order."""
    k = G.shape[0]
    total = p**k
    start = 1 if skip_zero else 0
    for lo in range(start, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        msgs = _message_block(p, k, lo, hi)
        yield msgs, (msgs @ G) % p


def _check_budget(p: int, k: int, limit: int):
    if p**k - 1 > limit:
        raise EnumerationLimitError(
            f"{p}^{k} - 1 = {p**k - 1} nonzero messages exceeds the limit {limit}"
        )


def generator_weight_distribution(G: np.ndarray, p: int, limit: int = DEFAULT_DISTANCE_LIMIT) -> Dict[int, int]:
    k, length = G.shape
    _check_budget(p, k, limit)
    counts = np.zeros(length + 1, dtype=np.int64)
    for _, words in iter_codewords(G, p):
        counts += np.bincount(np.count_nonzero(words, axis=1), minlength=length + 1)
    return {w: int(c) for w, c in enumerate(counts) if c}


def generator_minimum_distance(G: np.ndarray, p: int, limit: int = DEFAULT_DISTANCE_LIMIT) -> int:
    k = G.shape[0]
    if k == 0:
        raise PreconditionError("minimum distance is undefined for the zero code")
    _check_budget(p, k, limit)
    best = G.shape[1]
    for _, words in iter_codewords(G, p, skip_zero=True):
        best = min(best, int(np.count_nonzero(words, axis=1).min()))
        if best == 1:
            break
    return best


def minimum_distance(code: GtcCode, limit: int = DEFAULT_DISTANCE_LIMIT) -> int:
    return generator_minimum_distance(code.generator, code.p, limit)


def weight_distribution(code: GtcCode, limit: int = DEFAULT_DISTANCE_LIMIT) -> Dict[int, int]:
    """Number of codewords of each weight, the zero word included."""
    return generator_weight_distribution(code.generator, code.p, limit)


def _invertible_mask(words: np.ndarray, n: int, p: int) -> np.ndarray:
    mats = words.reshape(-1, n, n).transpose(0, 2, 1)
    # float determinant is exact while the Hadamard bound fits in 52 bits
    if (np.sqrt(n) * (p - 1)) ** n < 2**52:
        det = np.rint(np.linalg.det(mats.astype(np.float64))).astype(np.int64)
        return det % p != 0
    return np.array([rank(Matrix._wrap(m, p)) == n for m in mats], dtype=bool)


def find_invertible_codeword(
    code: GtcCode, budget: int = DEFAULT_INVERTIBLE_BUDGET, seed: int = 0
) -> Optional[Matrix]:
    """Search the code for an invertible matrix.

    Scans messages lexicographically when ``p**k <= budget``, otherwise
    tries ``budget`` seeded-random messages. A hit triggers the check
    ``dim C(A, D) == dim C(A)``.
    """
    n, p, k = code.n, code.p, code.k
    if k == 0:
        return None
    G = code.generator
    found = None
    if p**k <= budget:
        for _, words in iter_codewords(G, p, skip_zero=True):
            hit = np.flatnonzero(_invertible_mask(words, n, p))
            if hit.size:
                found = words[hit[0]]
                break
    else:
        rng = XorShift64Star(seed)
        for lo in range(0, budget, _CHUNK):
            size = min(_CHUNK, budget - lo)
            msgs = np.array([[rng.below(p) for _ in range(k)] for _ in range(size)], dtype=np.int64)
            words = (msgs @ G) % p
            hit = np.flatnonzero(_invertible_mask(words, n, p))
            if hit.size:
                found = words[hit[0]]
                break
    if found is None:
        return None
    B = Matrix._wrap(found.reshape((n, n), order="F"), p)
    k_centralizer = centralizer_dimension(code.A)
    if k_centralizer != k:
        raise TheoremViolation(
            f"code holds invertible {B.tolist()} but dim C(A,D) = {k} != dim C(A) = {k_centralizer}",
            witness=(code.A, code.D),
        )
    return B


def centralizer_dimension(A: Matrix) -> int:
    """Dimension of {B : AB = BA}."""
    return construct_code(A, Matrix.identity(A.rows, A.p)).k


@dataclass(frozen=True)
class ProductBound:
    """Kernel-code parameters behind the product subcode Ker(A) (x) Ker(D^t A^t)."""

    k: int
    k_prime: int
    d: Optional[int]
    d_prime: Optional[int]

    @property
    def kk(self) -> int:
        return self.k * self.k_prime

    @property
    def dd(self) -> Optional[int]:
        if self.d is None or self.d_prime is None:
            return None
        return self.d * self.d_prime

    def to_dict(self) -> dict:
        return {"k": self.k, "k_prime": self.k_prime, "d": self.d, "d_prime": self.d_prime,
                "kk": self.kk, "dd": self.dd}


def _kernel_code(M: Matrix, limit: int) -> Tuple[List[Matrix], Optional[int]]:
    basis = kernel_basis(M)
    if not basis:
        return basis, None
    G = np.array([v.array[:, 0] for v in basis], dtype=np.int64)
    return basis, generator_minimum_distance(G, M.p, limit)


def product_code_check(
    A: Matrix,
    D: Matrix,
    code: GtcCode,
    distance: Optional[int] = None,
    limit: int = DEFAULT_DISTANCE_LIMIT,
) -> ProductBound:
    """Check that every u v^t with u in Ker(A), v in Ker(D^t A^t) is a codeword.

    Also checks k >= kk' and, when kk' >= 1, d <= dd'. ``distance`` may be
    passed in to avoid recomputing it; if it is None and the code is too
    large to enumerate, the distance comparison is skipped.
    """
    left, d_left = _kernel_code(A, limit)
    right, d_right = _kernel_code(D.T @ A.T, limit)
    for u in left:
        for v in right:
            B = u @ v.T
            if not is_codeword(A, D, B):
                raise TheoremViolation(
                    f"rank-one product {B.tolist()} of kernel vectors is not a codeword",
                    witness=(A, D),
                )
    bound = ProductBound(k=len(left), k_prime=len(right), d=d_left, d_prime=d_right)
    if code.k < bound.kk:
        raise TheoremViolation(f"dimension {code.k} is below kk' = {bound.kk}", witness=(A, D))
    if bound.kk >= 1:
        if distance is None:
            try:
                distance = minimum_distance(code, limit)
            except EnumerationLimitError:
                log.info("distance beyond limit; skipping d <= dd' check")
        if distance is not None and distance > bound.dd:
            raise TheoremViolation(f"distance {distance} exceeds dd' = {bound.dd}", witness=(A, D))
    return bound


@dataclass(frozen=True)
class CodeReport:
    p: int
    n: int
    k: int
    d: Optional[int]
    r_A: int
    r_AD: int
    nonscalar_applies: bool
    bound_main: int
    bound_zero_product: Optional[int]
    product: ProductBound
    invertible: Optional[Matrix]
    centralizer_k: int

    @property
    def length(self) -> int:
        return self.n * self.n

    @property
    def bound_nonscalar(self) -> int:
        return self.n * self.n - 1

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "length": self.length,
            "k": self.k,
            "d": self.d,
            "r_A": self.r_A,
            "r_AD": self.r_AD,
            "bounds": {
                "rank_bound": self.bound_main,
                "nonscalar_bound": self.bound_nonscalar if self.nonscalar_applies else None,
                "zero_product_bound": self.bound_zero_product,
            },
            "product_code": self.product.to_dict(),
            "invertible_codeword": None if self.invertible is None else self.invertible.tolist(),
            "centralizer_dimension": self.centralizer_k,
        }


def _violation(msg: str, A: Matrix, D: Matrix):
    log.error("%s; A=%s D=%s", msg, A.tolist(), D.tolist())
    raise TheoremViolation(msg, witness=(A, D))


def check_dimension_bounds(A: Matrix, D: Matrix, k: int) -> Tuple[int, int, int, bool, Optional[int]]:
    """Check k against the rank bound and its special cases.

    Returns ``(r_A, r_AD, rank_bound, nonscalar_applies, zero_product_bound)``.
    """
    n = A.rows
    AD = A @ D
    r_A, r_AD = rank(A), rank(AD)
    bound_main = n * n - n * r_A + n * r_AD
    if k > bound_main:
        _violation(f"k = {k} exceeds n^2 - n*r_A + n*r_AD = {bound_main}", A, D)
    nonscalar = not A.is_zero() and D != Matrix.identity(n, A.p)
    if nonscalar and k > n * n - 1:
        _violation(f"k = {k} exceeds n^2 - 1 with A != O and D != I", A, D)
    zero_bound = None
    if AD.is_zero():
        zero_bound = n * n - n * r_A
        if k > zero_bound:
            _violation(f"k = {k} exceeds n^2 - n*r_A = {zero_bound} with AD = O", A, D)
    return r_A, r_AD, bound_main, nonscalar, zero_bound


def bound_report(
    A: Matrix,
    D: Matrix,
    code: Optional[GtcCode] = None,
    *,
    dist_limit: int = DEFAULT_DISTANCE_LIMIT,
    invertible_budget: int = DEFAULT_INVERTIBLE_BUDGET,
) -> CodeReport:
    """Full parameter report for C(A, D), with every structural check applied."""
    if code is None:
        code = construct_code(A, D)
    r_A, r_AD, bound_main, nonscalar, zero_bound = check_dimension_bounds(A, D, code.k)
    d = None
    if code.k:
        try:
            d = minimum_distance(code, dist_limit)
        except EnumerationLimitError:
            log.warning("minimum distance not computed: %s^%s words over limit", code.p, code.k)
    product = product_code_check(A, D, code, distance=d, limit=dist_limit)
    invertible = find_invertible_codeword(code, invertible_budget)
    return CodeReport(
        p=code.p,
        n=code.n,
        k=code.k,
        d=d,
        r_A=r_A,
        r_AD=r_AD,
        nonscalar_applies=nonscalar,
        bound_main=bound_main,
        bound_zero_product=zero_bound,
        product=product,
        invertible=invertible,
        centralizer_k=centralizer_dimension(A),
    )


@dataclass(frozen=True)
class TwistCandidate:
    D: Matrix
    k: int
    d: Optional[int]

    def to_dict(self) -> dict:
        return {"D": self.D.tolist(), "k": self.k, "d": self.d}


def _by_distance(c: TwistCandidate):
    return (c.d is None, -(c.d or 0), -c.k, c.D.tolist())


def _by_dimension(c: TwistCandidate):
    return (-c.k, c.d is None, -(c.d or 0), c.D.tolist())


OBJECTIVES: Dict[str, Callable[[TwistCandidate], tuple]] = {
    "distance": _by_distance,
    "dimension": _by_dimension,
}


@dataclass(frozen=True)
class SearchResult:
    seed: int
    trials: int
    objective: str
    entries: Tuple[TwistCandidate, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "objective": self.objective,
            "entries": [c.to_dict() for c in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def random_matrix(rng: XorShift64Star, n: int, p: int) -> Matrix:
    """n x n matrix with entries drawn row by row from ``rng``."""
    return Matrix([[rng.below(p) for _ in range(n)] for _ in range(n)], p)


def search_twists(
    A: Matrix,
    trials: int,
    seed: int,
    dist_limit: int = DEFAULT_DISTANCE_LIMIT,
    objective: Union[str, Callable[[TwistCandidate], tuple]] = "distance",
) -> SearchResult:
    """Sample twist matrices D uniformly and rank the resulting codes.

    The default objective maximizes d, then k, then prefers the
    lexicographically smaller D. Repeated draws of the same D are kept once.
    """
    if trials < 1:
        raise PreconditionError("trials must be at least 1")
    if not A.is_square:
        raise PreconditionError(f"A must be square, got {A.shape}")
    if callable(objective):
        key, name = objective, getattr(objective, "__name__", "custom")
    else:
        if objective not in OBJECTIVES:
            raise PreconditionError(f"unknown objective {objective!r}; choose from {sorted(OBJECTIVES)}")
        key, name = OBJECTIVES[objective], objective
    n, p = A.rows, check_modulus(A.p)
    rng = XorShift64Star(seed)
    seen = {}
    for _ in range(trials):
        D = random_matrix(rng, n, p)
        if D in seen:
            continue
        code = construct_code(A, D)
        d = None
        if code.k and p**code.k - 1 <= dist_limit:
            d = minimum_distance(code, dist_limit)
        seen[D] = TwistCandidate(D=D, k=code.k, d=d)
    entries = tuple(sorted(seen.values(), key=key))
    return SearchResult(seed=seed, trials=trials, objective=name, entries=entries)
