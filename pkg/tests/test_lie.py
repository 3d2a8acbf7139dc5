import pytest
from gmpy2 import mpq

from bolcheck.lie import (
    E,
    build_jacobi,
    build_sp,
    check_antisymmetry,
    check_jacobi_identity,
    check_realization,
    mat_add,
    root_eigen_failures,
)


def test_sp2_relations():
    a = build_sp(1)
    X, d, Y = a["X[1,1]"], a["d[1]"], a["Y[1,1]"]
    assert a.dim == 3
    assert a.bracket(X, Y) == d
    assert a.bracket(d, X) == X * 2


def test_sp4_roots():
    a = build_sp(2)
    assert a.dim == 10
    assert set(a.roots.positive_roots) == {(1, -1), (1, 1), (2, 0), (0, 2)}


def test_sp6_jacobi_identity_exhaustive():
    a = build_sp(3)
    assert a.dim == 21
    assert check_jacobi_identity(a) == []


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_sp_structure(N):
    a = build_sp(N)
    assert a.dim == N * (2 * N + 1)
    assert check_antisymmetry(a) == []
    assert check_realization(a) == []
    assert root_eigen_failures(a) == []


@pytest.mark.parametrize("N", [1, 2, 3])
def test_root_conventions(N):
    rd = build_sp(N).roots
    for root in rd.positive_roots:
        assert rd.c_alpha(root) == (2 if rd.long[root] else 1)
        assert rd.long[root] == (max(abs(x) for x in root) == 2)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            assert rd.pair_root[(i, j)] == rd.pair_root[(j, i)]
    assert rd.evaluate(rd.rho_S, rd.h_alpha) == mpq(N + 1, 2)
    assert rd.rho == tuple(mpq(i - N - 1) for i in range(1, N + 1))


def test_jacobi_11_heisenberg_bracket():
    g = build_jacobi(1, 1)
    assert g.dim == 6
    V, U, Z = g["V[1,1]"], g["U[1,1]"], g["Z[1,1]"]
    assert g.bracket(V, U) == Z
    # realization: (E21 - E34)(E23 + E14) - (E23 + E14)(E21 - E34) = 2 E24
    assert g.matrix(V) == mat_add((1, E(2, 1)), (-1, E(3, 4)))
    assert g.matrix(U) == mat_add((1, E(2, 3)), (1, E(1, 4)))
    assert g.matrix(Z) == mat_add((2, E(2, 4)))


@pytest.mark.parametrize("n,j", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)])
def test_jacobi_algebra_structure(n, j):
    g = build_jacobi(n, j)
    s = g.subspaces
    assert g.dim == n * (2 * n + 1) + 2 * n * j + j * (j + 1) // 2
    for name in ("l_heis", "r_heis"):
        for a in s[name]:
            for b in s[name]:
                assert not g.bracket(g.basis(a), g.basis(b))
    for z in s["z"]:
        for b in range(g.dim):
            assert not g.bracket(g.basis(z), g.basis(b))
    assert check_antisymmetry(g) == []
    assert check_realization(g) == []


def test_jacobi_21_dimension():
    assert build_jacobi(2, 1).dim == 15


@pytest.mark.parametrize("n,j", [(1, 1), (1, 2), (2, 1)])
def test_jacobi_identity_small(n, j):
    assert check_jacobi_identity(build_jacobi(n, j)) == []


def test_bracket_basics():
    a = build_sp(2)
    assert a.bracket(a["d[1]"], a["X[1,1]"]) == a["X[1,1]"] * 2
    for b in range(a.dim):
        x = a.basis(b)
        assert not a.bracket(x, x)


def test_build_is_cached():
    assert build_sp(2) is build_sp(2)
    assert build_jacobi(1, 2) is build_jacobi(1, 2)
