"""
Codes of length n**2 - i from a GTC code.

Take the subcode of C(A, D) whose matrices vanish on a fixed set of i
positions, then delete those positions from every codeword. Since the
deleted coordinates are identically zero, dimension and weights carry over
unchanged.

Positions are (row, col) pairs, 1-based at the interface and 0-based
internally. Position (r, c) (0-based) sits at index ``c * n + r`` of the
column-major codeword.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .analysis import DEFAULT_DISTANCE_LIMIT, generator_minimum_distance, generator_weight_distribution
from .code import GtcCode
from .errors import MaskError, TheoremViolation
from .galois import Matrix, kernel_basis, rank, unvectorize


@dataclass(frozen=True)
class PositionMask:
    """Ordered set of 0-based (row, col) positions of an n x n matrix."""

    n: int
    positions: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for r, c in self.positions:
            if not (0 <= r < self.n and 0 <= c < self.n):
                raise MaskError(f"position ({r + 1},{c + 1}) lies outside a {self.n}x{self.n} matrix")
            if (r, c) in seen:
                raise MaskError(f"position ({r + 1},{c + 1}) repeated")
            seen.add((r, c))

    @classmethod
    def from_one_based(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> "PositionMask":
        return cls(n, tuple((int(r) - 1, int(c) - 1) for r, c in pairs))

    @classmethod
    def column(cls, n: int, col: int) -> "PositionMask":
        """Every entry of the 1-based column ``col``."""
        return cls.from_one_based(n, [(r, col) for r in range(1, n + 1)])

    @classmethod
    def row(cls, n: int, row: int) -> "PositionMask":
        return cls.from_one_based(n, [(row, c) for c in range(1, n + 1)])

    @classmethod
    def parse(cls, n: int, spec: str) -> "PositionMask":
        """Parse ``"1,2 2,3"``, ``"col=4"``, ``"row=1;3,3"`` and mixtures.

        Items are separated by whitespace or semicolons.
        """
        pairs: List[Tuple[int, int]] = []
        for item in re.split(r"[;\s]+", spec.strip()):
            if not item:
                continue
            m = re.fullmatch(r"(col|row)=(\d+)", item)
            if m:
                idx = int(m.group(2))
                if not 1 <= idx <= n:
                    raise MaskError(f"{m.group(1)} {idx} outside 1..{n}")
                sub = cls.column(n, idx) if m.group(1) == "col" else cls.row(n, idx)
                pairs.extend((r + 1, c + 1) for r, c in sub.positions)
                continue
            m = re.fullmatch(r"(\d+),(\d+)", item)
            if not m:
                raise MaskError(f"cannot parse mask item {item!r}; expected r,c or col=k or row=k")
            pairs.append((int(m.group(1)), int(m.group(2))))
        # shorthands may overlap explicit pairs
        unique = list(dict.fromkeys(pairs))
        return cls.from_one_based(n, unique)

    def __len__(self):
        return len(self.positions)

    @property
    def indices(self) -> List[int]:
        """Column-major coordinate indices."""
        return [c * self.n + r for r, c in self.positions]

    def one_based(self) -> List[Tuple[int, int]]:
        return [(r + 1, c + 1) for r, c in self.positions]

    def check_size(self):
        """Require 1 <= i < (n-1)**2, the range in which the construction is meant to be used."""
        i = len(self)
        if not 1 <= i < (self.n - 1) ** 2:
            raise MaskError(f"mask size {i} outside 1 <= i < {(self.n - 1) ** 2}")


def _check_mask(code: GtcCode, mask: PositionMask, strict: bool):
    if mask.n != code.n:
        raise MaskError(f"mask is for order {mask.n}, code has order {code.n}")
    if strict:
        mask.check_size()


def zero_constrained_subcode(code: GtcCode, mask: PositionMask, strict: bool = False) -> List[Matrix]:
    """Basis of the codewords vanishing on every masked position."""
    _check_mask(code, mask, strict)
    n, p = code.n, code.p
    units = np.zeros((len(mask), n * n), dtype=np.int64)
    for row, idx in enumerate(mask.indices):
        units[row, idx] = 1
    system = Matrix._wrap(np.vstack([code.H.array, units]), p)
    return [unvectorize(v, n, n) for v in kernel_basis(system)]


@dataclass(frozen=True, eq=False)
class PuncturedCode:
    parent: GtcCode
    mask: PositionMask
    generator: np.ndarray

    @property
    def p(self) -> int:
        return self.parent.p

    @property
    def length(self) -> int:
        return self.parent.length - len(self.mask)

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def basis(self) -> List[Tuple[int, ...]]:
        return [tuple(int(x) for x in row) for row in self.generator]

    def extend(self, word: Sequence[int]) -> Matrix:
        """Reinsert zeros at the masked positions and reshape to n x n."""
        n = self.parent.n
        if len(word) != self.length:
            raise MaskError(f"word has length {len(word)}, expected {self.length}")
        full = np.zeros(n * n, dtype=np.int64)
        full[_kept(n, self.mask)] = np.asarray(word, dtype=np.int64) % self.p
        return Matrix._wrap(full.reshape((n, n), order="F"), self.p)


def _kept(n: int, mask: PositionMask) -> List[int]:
    dropped = set(mask.indices)
    return [t for t in range(n * n) if t not in dropped]


def puncture(code: GtcCode, mask: PositionMask, strict: bool = False) -> PuncturedCode:
    """Zero-constrained subcode with the masked coordinates deleted.

    With ``strict`` the mask size must satisfy 1 <= i < (n-1)**2; otherwise
    any mask (even empty or full) is accepted.
    """
    sub = zero_constrained_subcode(code, mask, strict)
    n, p = code.n, code.p
    keep = _kept(n, mask)
    if sub:
        G = np.array([B.array.reshape(-1, order="F")[keep] for B in sub], dtype=np.int64)
        if rank(Matrix._wrap(G, p)) != len(sub):
            raise TheoremViolation("punctured basis lost linear independence", witness=(code.A, code.D, mask))
    else:
        G = np.zeros((0, len(keep)), dtype=np.int64)
    G.setflags(write=False)
    return PuncturedCode(parent=code, mask=mask, generator=G)


def punctured_minimum_distance(pc: PuncturedCode, limit: int = DEFAULT_DISTANCE_LIMIT) -> int:
    return generator_minimum_distance(pc.generator, pc.p, limit)


def punctured_weight_distribution(pc: PuncturedCode, limit: int = DEFAULT_DISTANCE_LIMIT):
    return generator_weight_distribution(pc.generator, pc.p, limit)
