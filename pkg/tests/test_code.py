import itertools

import numpy as np
import pytest

from gtcodes import (
    Matrix,
    build_syndrome_table,
    construct_code,
    correct_single_error,
    encode,
    is_codeword,
    kronecker_product,
    matrix_inverse,
    message_of,
    parity_check_matrix,
    rank,
    syndrome,
    unvectorize,
    vectorize,
)
from gtcodes.code import syndrome_key, weight_one_errors
from gtcodes.errors import (
    AmbiguousSyndromeError,
    ModulusError,
    NotACodewordError,
    ShapeError,
    SingularMatrixError,
    UncorrectableError,
)

from conftest import load_pair, members_by_definition, random_matrix, span_closure

ALL_ONES = Matrix.ones(3, 3, 2)
D1 = Matrix([[1, 1, 1], [1, 0, 1], [0, 1, 1]], 2)
D3 = Matrix([[1, 1, 0], [0, 0, 1], [1, 1, 1]], 2)


@pytest.fixture(scope="module")
def code_953():
    return construct_code(ALL_ONES, D1)


@pytest.fixture(scope="module")
def code_926():
    return construct_code(*load_pair("bin_9_2_6"))


def random_pairs(seed, count, n, p):
    rng = np.random.default_rng(seed)
    return [(random_matrix(rng, n, n, p), random_matrix(rng, n, n, p)) for _ in range(count)]


# parity-check matrix

def test_parity_check_zero_A():
    D = Matrix([[1, 0, 1], [1, 1, 0], [0, 1, 1]], 2)
    assert parity_check_matrix(Matrix.zeros(3, 3, 2), D).is_zero()


def test_parity_check_centralizer_case():
    A = Matrix([[1, 2, 0], [0, 1, 1], [2, 0, 0]], 3)
    I = Matrix.identity(3, 3)
    assert parity_check_matrix(A, I) == kronecker_product(I, A) - kronecker_product(A.T, I)


@pytest.mark.parametrize("A,D", random_pairs(1, 5, 3, 2))
def test_parity_check_identity_random(A, D):
    H = parity_check_matrix(A, D)
    assert H.shape == (9, 9)
    rng = np.random.default_rng(99)
    for _ in range(20):
        B = random_matrix(rng, 3, 3, 2)
        assert H @ vectorize(B) == vectorize(A @ B - B @ A @ D)


def test_parity_check_rejects_bad_inputs():
    with pytest.raises(ShapeError):
        parity_check_matrix(Matrix.ones(2, 2, 2), Matrix.ones(3, 3, 2))
    with pytest.raises(ShapeError):
        parity_check_matrix(Matrix.ones(2, 3, 2), Matrix.ones(2, 3, 2))
    with pytest.raises(ModulusError):
        parity_check_matrix(Matrix.ones(2, 2, 2), Matrix.ones(2, 2, 3))


# construction

def test_construct_all_ones_d1(code_953):
    assert code_953.k == 5
    assert code_953.params == (9, 5)


def test_construct_zero_A():
    c = construct_code(Matrix.zeros(3, 3, 3), Matrix.ones(3, 3, 3))
    assert c.k == 9


def test_construct_binary_926(code_926):
    assert code_926.k == 2


@pytest.mark.parametrize("seed,p", [(4, 2), (5, 3)])
def test_basis_elements_are_codewords(seed, p):
    for A, D in random_pairs(seed, 10, 3, p):
        c = construct_code(A, D)
        for B in c.basis:
            assert A @ B == B @ A @ D
            assert is_codeword(A, D, B)
        if c.k:
            rows = Matrix([vectorize(B).array[:, 0].tolist() for B in c.basis], p)
            assert rank(rows) == c.k
            assert c.k == 9 - rank(c.H)


def test_construction_is_deterministic(code_953):
    again = construct_code(ALL_ONES, D1)
    assert again.basis == code_953.basis


def test_kernel_equals_definition_n2_f2_exhaustive():
    mats = [Matrix(np.array(e).reshape(2, 2), 2) for e in itertools.product(range(2), repeat=4)]
    for A in mats:
        for D in mats:
            c = construct_code(A, D)
            span = span_closure([tuple(B.array.reshape(-1)) for B in c.basis], 2, 4)
            assert span == members_by_definition(A.array, D.array, 2)


@pytest.mark.parametrize("p,count", [(2, 20), (3, 10)])
def test_kernel_equals_definition_n3_sampled(p, count):
    for A, D in random_pairs(31 + p, count, 3, p):
        c = construct_code(A, D)
        span = span_closure([tuple(B.array.reshape(-1)) for B in c.basis], p, 9)
        assert span == members_by_definition(A.array, D.array, p)


# membership

def test_zero_is_always_a_codeword():
    A, D = random_pairs(2, 1, 3, 3)[0]
    assert is_codeword(A, D, Matrix.zeros(3, 3, 3))


def test_A_in_centralizer_code():
    A = Matrix([[1, 2, 0], [0, 1, 1], [2, 0, 0]], 3)
    assert is_codeword(A, Matrix.identity(3, 3), A)


@pytest.mark.parametrize("p", [2, 3])
def test_membership_of_A_literal_condition(p):
    for A, D in random_pairs(40 + p, 200, 3, p):
        A2 = A @ A
        assert is_codeword(A, D, A) == (A2 == A2 @ D)
        if D == Matrix.identity(3, p) or A2.is_zero():
            assert is_codeword(A, D, A)


@pytest.mark.parametrize("p", [2, 3])
def test_membership_of_identity_literal_condition(p):
    I = Matrix.identity(3, p)
    for A, D in random_pairs(50 + p, 200, 3, p):
        assert is_codeword(A, D, I) == (A == A @ D)
        if D == I:
            assert is_codeword(A, D, I)


def test_membership_of_identity_with_singular_A_and_nontrivial_D():
    # A = AD with D != I is possible once A is singular
    A = Matrix([[1, 0], [0, 0]], 2)
    D = Matrix([[1, 0], [1, 1]], 2)
    assert A @ D == A and D != Matrix.identity(2, 2)
    assert is_codeword(A, D, Matrix.identity(2, 2))


@pytest.mark.parametrize("p", [2, 3])
def test_membership_swap_with_inverse_twist(p):
    rng = np.random.default_rng(60 + p)
    checked = 0
    while checked < 100:
        A, D, B = (random_matrix(rng, 3, 3, p) for _ in range(3))
        try:
            D_inv = matrix_inverse(D)
        except SingularMatrixError:
            continue
        checked += 1
        if rng.random() < 0.5:
            c = construct_code(A, D)
            if c.k:
                B = encode(c, rng.integers(0, p, size=c.k))
        assert is_codeword(A, D, B) == is_codeword(B, D_inv, A)


@pytest.mark.parametrize("p", [2, 3])
def test_dimension_at_most_n2_minus_1(p):
    I = Matrix.identity(3, p)
    for A, D in random_pairs(70 + p, 200, 3, p):
        if not A.is_zero() and D != I:
            assert construct_code(A, D).k <= 8


# syndromes

def test_syndrome_zero_on_code(code_953):
    for B in code_953.basis:
        assert syndrome(ALL_ONES, D1, B).is_zero()


def test_syndrome_of_identity():
    A, D = random_pairs(80, 1, 3, 3)[0]
    assert syndrome(A, D, Matrix.identity(3, 3)) == A - A @ D


@pytest.mark.parametrize("p", [2, 3])
def test_syndrome_is_linear_and_matches_parity_check(p):
    rng = np.random.default_rng(90 + p)
    for A, D in random_pairs(91 + p, 20, 3, p):
        H = parity_check_matrix(A, D)
        B1, B2 = random_matrix(rng, 3, 3, p), random_matrix(rng, 3, 3, p)
        assert syndrome(A, D, B1 + B2) == syndrome(A, D, B1) + syndrome(A, D, B2)
        assert syndrome(A, D, B1) == unvectorize(H @ vectorize(B1), 3, 3)


@pytest.mark.parametrize("p", [2, 3])
def test_coset_law(p):
    rng = np.random.default_rng(100 + p)
    for A, D in random_pairs(101 + p, 20, 3, p):
        c = construct_code(A, D)
        for _ in range(5):
            B1 = random_matrix(rng, 3, 3, p)
            # half the time make B2 a coset mate of B1
            if c.k and rng.random() < 0.5:
                B2 = B1 + encode(c, rng.integers(0, p, size=c.k))
            else:
                B2 = random_matrix(rng, 3, 3, p)
            same = syndrome(A, D, B1) == syndrome(A, D, B2)
            assert same == is_codeword(A, D, B1 - B2)


def test_syndrome_shape_checks():
    with pytest.raises(ShapeError):
        syndrome(ALL_ONES, D1, Matrix.ones(2, 2, 2))
    with pytest.raises(ModulusError):
        syndrome(ALL_ONES, D1, Matrix.ones(3, 3, 3))


# encoding

def test_encode_zero(code_953):
    assert encode(code_953, [0] * 5).is_zero()


def test_encode_standard_basis(code_953):
    for i, B in enumerate(code_953.basis):
        e = [0] * 5
        e[i] = 1
        assert encode(code_953, e) == B


def test_encode_all_ones_message(code_953):
    C = encode(code_953, [1] * 5)
    total = code_953.basis[0]
    for B in code_953.basis[1:]:
        total = total + B
    assert C == total
    assert syndrome(ALL_ONES, D1, C).is_zero()


def test_encode_wrong_length(code_953):
    with pytest.raises(ShapeError):
        encode(code_953, [1, 0])


def test_message_roundtrip(code_953):
    rng = np.random.default_rng(5)
    for _ in range(50):
        m = rng.integers(0, 2, size=5).tolist()
        assert message_of(code_953, encode(code_953, m)) == m


def test_message_roundtrip_ternary():
    c = construct_code(*load_pair("ter_9_5_4"))
    rng = np.random.default_rng(6)
    for _ in range(50):
        m = rng.integers(0, 3, size=c.k).tolist()
        assert message_of(c, encode(c, m)) == m


def test_message_of_zero_and_basis(code_953):
    assert message_of(code_953, Matrix.zeros(3, 3, 2)) == [0] * 5
    for i, B in enumerate(code_953.basis):
        assert message_of(code_953, B) == [1 if j == i else 0 for j in range(5)]


def test_message_of_non_codeword(code_953):
    E = Matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]], 2)
    with pytest.raises(NotACodewordError):
        message_of(code_953, E)


def test_zero_code_messages():
    c = construct_code(*load_pair("ter_punct_7_2_5"))
    assert c.k == 0
    assert encode(c, []).is_zero()
    assert message_of(c, Matrix.zeros(3, 3, 3)) == []
    with pytest.raises(NotACodewordError):
        message_of(c, Matrix.identity(3, 3))


# syndrome table and single-error correction

def test_weight_one_errors_count():
    errs = list(weight_one_errors(3, 3))
    assert len(errs) == 2 * 9
    assert all(E.weight() == 1 for E in errs)
    assert len(set(errs)) == 18


def test_table_for_953(code_953):
    table = build_syndrome_table(code_953)
    assert len(table) == 9
    assert syndrome_key(Matrix.zeros(3, 3, 2)) not in table
    assert len({E for E in table.entries.values()}) == 9


def test_table_for_962_is_ambiguous():
    c = construct_code(ALL_ONES, D3)
    with pytest.raises(AmbiguousSyndromeError):
        build_syndrome_table(c)


def test_table_for_926(code_926):
    assert len(build_syndrome_table(code_926)) == 9


def test_table_for_ternary_936():
    c = construct_code(*load_pair("ter_9_3_6"))
    assert len(build_syndrome_table(c)) == 18


def test_table_for_zero_A_rejects_weight_one_codewords():
    c = construct_code(Matrix.zeros(3, 3, 2), ALL_ONES)
    with pytest.raises(AmbiguousSyndromeError, match="itself a codeword"):
        build_syndrome_table(c)


def test_syndrome_key_layout():
    S = Matrix([[1, 2], [0, 1]], 3)
    assert syndrome_key(S) == bytes([1, 2, 0, 1])
    assert syndrome_key(Matrix([[300]], 257)) == (43).to_bytes(4, "big")


def test_correct_codeword_untouched(code_953):
    table = build_syndrome_table(code_953)
    C = encode(code_953, [1, 0, 1, 1, 0])
    B, E = correct_single_error(code_953, table, C)
    assert B == C and E.is_zero()


def test_correct_every_single_error_953(code_953):
    table = build_syndrome_table(code_953)
    for m in itertools.product(range(2), repeat=5):
        C = encode(code_953, m)
        for E in weight_one_errors(3, 2):
            B, found = correct_single_error(code_953, table, C + E)
            assert B == C and found == E


def test_correct_every_single_error_ternary():
    c = construct_code(*load_pair("ter_9_3_6"))
    table = build_syndrome_table(c)
    rng = np.random.default_rng(12)
    for _ in range(10):
        C = encode(c, rng.integers(0, 3, size=c.k))
        for E in weight_one_errors(3, 3):
            assert correct_single_error(c, table, C + E) == (C, E)


def test_double_errors_on_926_are_flagged(code_926):
    # d = 6: a weight-2 error is never within distance 1 of another codeword
    table = build_syndrome_table(code_926)
    C = encode(code_926, [1, 1])
    positions = [(r, c) for c in range(3) for r in range(3)]
    for (r1, c1), (r2, c2) in itertools.combinations(positions, 2):
        E = np.zeros((3, 3), dtype=int)
        E[r1, c1] = E[r2, c2] = 1
        with pytest.raises(UncorrectableError) as info:
            correct_single_error(code_926, table, C + Matrix(E, 2))
        assert not info.value.syndrome.is_zero()


def test_double_errors_on_953_never_decode_to_sent_word(code_953):
    table = build_syndrome_table(code_953)
    C = encode(code_953, [1, 0, 1, 0, 1])
    outcomes = {"uncorrectable": 0, "miscorrected": 0}
    positions = [(r, c) for c in range(3) for r in range(3)]
    for (r1, c1), (r2, c2) in itertools.combinations(positions, 2):
        E = np.zeros((3, 3), dtype=int)
        E[r1, c1] = E[r2, c2] = 1
        try:
            B, _ = correct_single_error(code_953, table, C + Matrix(E, 2))
        except UncorrectableError:
            outcomes["uncorrectable"] += 1
        else:
            assert B != C and is_codeword(ALL_ONES, D1, B)
            outcomes["miscorrected"] += 1
    assert sum(outcomes.values()) == 36
    assert outcomes["uncorrectable"] > 0
