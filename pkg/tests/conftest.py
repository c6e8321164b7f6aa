import itertools
from collections import OrderedDict
from pathlib import Path

import numpy as np
import pytest

from gtcodes import Matrix
from gtcodes.cli import parse_matrix_file

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_pair(name):
    return parse_matrix_file(FIXTURES / name / "A.txt"), parse_matrix_file(FIXTURES / name / "D.txt")


def random_matrix(rng, rows, cols, p):
    return Matrix(rng.integers(0, p, size=(rows, cols)), p)


# ---------------------------------------------------------------------------
# Independent oracles: plain Python integers, no numpy linear algebra and no
# calls into the library's algorithms.

def py_matmul(X, Y, p):
    return [[sum(X[i][t] * Y[t][j] for t in range(len(Y))) % p for j in range(len(Y[0]))]
            for i in range(len(X))]


def all_matrices(n, p):
    """Every n x n matrix over F_p as an array of shape (p**(n*n), n, n)."""
    return np.array(list(itertools.product(range(p), repeat=n * n)), dtype=np.int64).reshape(-1, n, n)


def members_by_definition(A, D, p):
    """Set of row-major tuples of all B with A B = B A D, by full enumeration."""
    A = np.asarray(A, dtype=np.int64)
    AD = (A @ np.asarray(D, dtype=np.int64)) % p
    Bs = all_matrices(A.shape[0], p)
    lhs = np.einsum("ij,bjk->bik", A, Bs) % p
    rhs = np.einsum("bij,jk->bik", Bs, AD) % p
    ok = (lhs == rhs).all(axis=(1, 2))
    return {tuple(B.reshape(-1)) for B in Bs[ok]}


def span_closure(vectors, p, length):
    """All F_p-linear combinations, built by repeated addition of scalar multiples."""
    words = {tuple([0] * length)}
    for v in vectors:
        new = set()
        for w in words:
            for a in range(p):
                new.add(tuple((x + a * y) % p for x, y in zip(w, v)))
        words = new
    return words


def echelon_rank(rows, p):
    """Rank by forward elimination only (row echelon form, not reduced)."""
    M = [list(r) for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] % p), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = next(b for b in range(1, p) if (M[rank][c] * b) % p == 1)
        for i in range(rank + 1, len(M)):
            f = (M[i][c] * inv) % p
            M[i] = [(x - f * y) % p for x, y in zip(M[i], M[rank])]
        rank += 1
    return sum(1 for r in M if any(x % p for x in r))


def hamming_weight(word):
    return sum(1 for x in word if x)


# ---------------------------------------------------------------------------
# Acceptance criteria reporting: one PASS/FAIL line per criterion.

_criteria = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = _criterion_of.get(report.nodeid)
    if marker is None:
        return
    ok = _criteria.get(marker, True) and report.passed
    _criteria[marker] = ok


_criterion_of = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _criterion_of[item.nodeid] = m.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if _criteria[num] else 'FAIL'}")
