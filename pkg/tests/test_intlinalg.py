"""Certificate and brute-force tests for the integer matrix core."""

import random

import numpy as np

from posetlim.intlinalg import (
    det,
    eye,
    hstack,
    in_span,
    intersect_lattices,
    intmat,
    kernel,
    lattice_basis,
    mat_equal,
    preimage_lattice,
    smith_normal_form,
    solve,
    sublattice_supported_on,
    SpanChecker,
    zeros,
)


def random_matrix(rng, max_dim=12, bound=50):
    m = rng.randrange(0, max_dim + 1)
    n = rng.randrange(0, max_dim + 1)
    return intmat([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)])


def check_certificate(M):
    U, D, V = smith_normal_form(M)
    m, n = M.shape
    assert U.shape == (m, m) and V.shape == (n, n) and D.shape == (m, n)
    assert mat_equal(U @ M @ V, D)
    assert abs(det(U)) == 1
    assert abs(det(V)) == 1
    diag = [int(D[i, i]) for i in range(min(m, n))]
    # off-diagonal zero
    for i in range(m):
        for j in range(n):
            if i != j:
                assert D[i, j] == 0
    # nonnegative, divisibility chain, zeros trail
    for i, d in enumerate(diag):
        assert d >= 0
        if i + 1 < len(diag) and diag[i + 1] != 0:
            assert d != 0 and diag[i + 1] % d == 0
        if d == 0 and i + 1 < len(diag):
            assert diag[i + 1] == 0


def test_snf_certificate_seeded_batch():
    rng = random.Random(20260816)
    for _ in range(300):
        check_certificate(random_matrix(rng))


def test_snf_known_values():
    _, D, _ = smith_normal_form(intmat([[2, 4], [6, 8]]))
    assert [int(D[0, 0]), int(D[1, 1])] == [2, 4]
    # relations of Z^3 / span{(-1,2,0), (-1,0,2)}: factors 1, 2
    _, D, _ = smith_normal_form(intmat([[-1, -1], [2, 0], [0, 2]]))
    assert [int(D[0, 0]), int(D[1, 1])] == [1, 2]
    # empty shapes
    for shape in [(0, 0), (0, 3), (3, 0)]:
        M = zeros(*shape)
        U, D, V = smith_normal_form(M)
        assert D.shape == shape
        check_certificate(M)


def test_kernel_and_solve():
    rng = random.Random(7)
    for _ in range(200):
        M = random_matrix(rng, max_dim=7, bound=9)
        K = kernel(M)
        # every kernel column annihilated
        if K.shape[1]:
            prod = M @ K
            assert all(prod[i, j] == 0 for i in range(prod.shape[0])
                       for j in range(prod.shape[1]))
        # solve recovers random combinations
        n = M.shape[1]
        coeffs = intmat([[rng.randint(-4, 4)] for _ in range(n)]) if n else zeros(0, 1)
        X = M @ coeffs if n else zeros(M.shape[0], 1)
        Y = solve(M, X)
        assert Y is not None
        got = M @ Y if n else zeros(M.shape[0], 1)
        assert mat_equal(got, X)


def test_solve_reports_unsolvable():
    M = intmat([[2, 0], [0, 3]])
    X = intmat([[1], [0]])
    assert solve(M, X) is None
    assert not in_span(M, [1, 0])
    assert in_span(M, [2, 3])


def test_kernel_rank_plus_rank_is_ncols():
    rng = random.Random(99)
    for _ in range(100):
        M = random_matrix(rng, max_dim=8, bound=20)
        K = kernel(M)
        B = lattice_basis(M)
        assert K.shape[1] + B.shape[1] == M.shape[1]


def test_lattice_basis_spans_same_lattice():
    rng = random.Random(3)
    for _ in range(100):
        M = random_matrix(rng, max_dim=6, bound=12)
        B = lattice_basis(M)
        chk_b = SpanChecker(B)
        chk_m = SpanChecker(M)
        assert chk_b.contains_all(M)
        assert chk_m.contains_all(B)


def test_intersection_brute_force_small():
    rng = random.Random(5)
    for _ in range(60):
        g = rng.randrange(1, 4)
        wa, wb = rng.randrange(0, 3), rng.randrange(0, 3)
        A = intmat([[rng.randint(-3, 3) for _ in range(wa)] for _ in range(g)])
        B = intmat([[rng.randint(-3, 3) for _ in range(wb)] for _ in range(g)])
        if A.shape == (0, 0):
            A = zeros(g, 0)
        if B.shape == (0, 0):
            B = zeros(g, 0)
        C = intersect_lattices(A, B)
        in_a = SpanChecker(A)
        in_b = SpanChecker(B)
        for j in range(C.shape[1]):
            assert in_a.contains(C[:, j]) and in_b.contains(C[:, j])
        # small combinations of A-columns that happen to lie in B must lie in C
        in_c = SpanChecker(C)
        na = A.shape[1]
        if na and na <= 2:
            span = range(-3, 4)
            import itertools
            for combo in itertools.product(span, repeat=na):
                v = [sum(int(A[i, j]) * combo[j] for j in range(na)) for i in range(g)]
                if in_b.contains(v):
                    assert in_c.contains(v)


def test_preimage_lattice_definition():
    rng = random.Random(11)
    for _ in range(80):
        g = rng.randrange(1, 5)
        h = rng.randrange(1, 5)
        wl = rng.randrange(0, 3)
        A = intmat([[rng.randint(-4, 4) for _ in range(g)] for _ in range(h)])
        L = intmat([[rng.randint(-4, 4) for _ in range(wl)] for _ in range(h)])
        if L.shape == (0, 0):
            L = zeros(h, 0)
        P = preimage_lattice(A, L)
        chk = SpanChecker(L)
        for j in range(P.shape[1]):
            img = A @ P[:, j:j + 1]
            assert chk.contains([img[i, 0] for i in range(h)])
        # random vectors: membership in P iff image in span(L)
        chk_p = SpanChecker(P)
        for _ in range(10):
            x = [rng.randint(-3, 3) for _ in range(g)]
            img = [sum(int(A[i, j]) * x[j] for j in range(g)) for i in range(h)]
            assert chk_p.contains(x) == chk.contains(img)


def test_sublattice_supported_on():
    L = intmat([[1, 0], [1, 2], [0, 1]])
    S = sublattice_supported_on(L, [False, True, True])
    # elements a*(1,1,0)+b*(0,2,1) with first coordinate zero: a = 0
    chk = SpanChecker(S)
    assert chk.contains([0, 2, 1])
    assert not chk.contains([1, 1, 0])
    for j in range(S.shape[1]):
        assert S[0, j] == 0


def test_det_matches_numpy_on_small_floats():
    rng = random.Random(42)
    for _ in range(50):
        n = rng.randrange(1, 6)
        M = intmat([[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)])
        f = np.array([[float(M[i, j]) for j in range(n)] for i in range(n)])
        assert abs(det(M) - round(np.linalg.det(f))) <= 0


def test_hstack_and_eye():
    A = eye(2)
    B = zeros(2, 0)
    C = hstack([A, B, A])
    assert C.shape == (2, 4)
    assert mat_equal(C[:, 0:2], A) and mat_equal(C[:, 2:4], A)
