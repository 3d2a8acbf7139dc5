import random

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from bolcheck.lie import build_jacobi
from bolcheck.uea import (
    CommutationError,
    ContextMismatch,
    DegreeCapError,
    OperatorMatrix,
    PBWContext,
    ad_action,
    build_gelfand,
    build_laplace,
    build_M_plus,
    cofactor,
    is_central,
    matrix_det,
    mul,
    reorder,
    sp_context,
    symmetrize,
)


@pytest.fixture
def sp2():
    ctx = sp_context(1)
    return ctx, ctx["X[1,1]"], ctx["d[1]"], ctx["Y[1,1]"]


def test_straightening_steps(sp2):
    ctx, X, d, Y = sp2
    assert mul(Y, X) == X * Y - d
    assert mul(X, X) == X**2
    assert mul(d, X) == X * d + 2 * X


def test_mul_rejects_foreign_context(sp2):
    ctx, X, d, Y = sp2
    other = PBWContext(ctx.algebra, (2, 1, 0))
    with pytest.raises(ContextMismatch):
        mul(X, other["Y[1,1]"])


def test_symmetrize(sp2):
    ctx, X, d, Y = sp2
    a = ctx.algebra
    assert symmetrize(ctx, [a["X[1,1]"]]) == X
    assert symmetrize(ctx, [a["X[1,1]"], a["Y[1,1]"]]) == X * Y - d * mpq(1, 2)
    assert symmetrize(ctx, [a["X[1,1]"], a["X[1,1]"]]) == X**2


def test_ad_action(sp2):
    ctx, X, d, Y = sp2
    assert ad_action(ctx.algebra["d[1]"], X**2) == 4 * X**2
    assert not ad_action(ctx.algebra["X[1,1]"], ctx.one())


def test_ad_action_heisenberg():
    g = build_jacobi(1, 1)
    ctx = PBWContext(g)
    U, Z = ctx["U[1,1]"], ctx["Z[1,1]"]
    assert ad_action(g["V[1,1]"], U**2) == 2 * Z * U


def test_determinants(sp2):
    ctx, X, d, Y = sp2
    assert matrix_det(OperatorMatrix([[X]])) == X
    s = [[ctx.scalar(mpq(v)) for v in r] for r in ((1, 2), (3, 4))]
    assert matrix_det(OperatorMatrix(s)) == -2
    assert cofactor(OperatorMatrix([[X]]), 0, 0) == ctx.one()


def test_verify_commuting_rejects(sp2):
    ctx, X, d, Y = sp2
    with pytest.raises(CommutationError):
        matrix_det(OperatorMatrix([[X, d], [Y, X]]), verify_commuting=True)


def test_M_plus_small():
    ctx = sp_context(1)
    assert build_M_plus(ctx, 1)[0] == 2 * ctx["X[1,1]"]
    ctx = sp_context(2)
    X11, X12, X22 = ctx["X[1,1]"], ctx["X[1,2]"], ctx["X[2,2]"]
    assert build_M_plus(ctx, 2)[0] == 4 * X11 * X22 - X12**2


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_M_plus_entries_commute(N):
    ctx = sp_context(N)
    det, m = build_M_plus(ctx, N)
    assert m.commutation_failures() == []
    assert matrix_det(m, verify_commuting=True) == det


def test_laplace_n1(sp2):
    ctx, X, d, Y = sp2
    delta, delta1 = build_laplace(ctx)
    assert delta == d**2 - 2 * d + 4 * X * Y
    assert delta1 == d**2 - 2 * d


@pytest.mark.parametrize("n", [1, 2, 3])
def test_laplace_central(n):
    assert is_central(build_laplace(sp_context(n))[0])


def test_gelfand_c2_is_half_laplace():
    ctx = sp_context(1)
    c2 = build_gelfand(ctx, 2)
    assert c2 == build_laplace(ctx)[0] * mpq(1, 2)


@pytest.mark.parametrize("N", [1, 2])
def test_gelfand_c4_central(N):
    assert is_central(build_gelfand(sp_context(N), 4))


def test_is_central_basics(sp2):
    ctx, X, d, Y = sp2
    assert is_central(ctx.one())
    assert not is_central(X)


def test_reorder_examples(sp2):
    ctx, X, d, Y = sp2
    rev = PBWContext(ctx.algebra, (2, 1, 0))
    r = reorder(X * Y, rev)
    assert r == rev["Y[1,1]"] * rev["X[1,1]"] + rev["d[1]"]
    assert reorder(d * d, rev) == rev["d[1]"] ** 2


def test_degree_cap(monkeypatch):
    monkeypatch.setenv("VB_DEGREE_CAP", "3")
    ctx = sp_context(1)
    X = ctx["X[1,1]"]
    with pytest.raises(DegreeCapError):
        X**2 * X**2


def _rand_elem(ctx, rng, degree):
    u = ctx.zero()
    for _ in range(3):
        t = ctx.scalar(mpq(rng.randint(-3, 3), rng.randint(1, 3)))
        for _ in range(rng.randint(0, degree)):
            t = t * ctx.gen(rng.randrange(ctx.algebra.dim))
        u = u + t
    return u


@given(st.integers(0, 10**6))
def test_associativity_sp4(seed):
    rng = random.Random(seed)
    ctx = sp_context(2)
    a, b, c = (_rand_elem(ctx, rng, 2) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@given(st.integers(0, 10**6), st.permutations(list(range(10))))
def test_reorder_round_trip(seed, order):
    rng = random.Random(seed)
    ctx = sp_context(2)
    u = _rand_elem(ctx, rng, 3)
    assert reorder(reorder(u, order), ctx) == u


@given(st.integers(0, 10**6))
def test_normal_form_invariants(seed):
    rng = random.Random(seed)
    ctx = sp_context(2)
    u = _rand_elem(ctx, rng, 3) * _rand_elem(ctx, rng, 1)
    for mono, c in u.terms.items():
        assert c != 0
        pos = [p for p, _ in mono]
        assert pos == sorted(pos) and len(set(pos)) == len(pos)


@given(st.integers(0, 10**6))
def test_symmetrize_ad_equivariant(seed):
    # ad(x) lambda(y1, y2) = lambda([x,y1], y2) + lambda(y1, [x,y2])
    rng = random.Random(seed)
    ctx = sp_context(2)
    a = ctx.algebra
    x, y1, y2 = (a.basis(rng.randrange(a.dim)) for _ in range(3))
    lhs = ad_action(x, symmetrize(ctx, [y1, y2]))
    rhs = symmetrize(ctx, [a.bracket(x, y1), y2]) + symmetrize(ctx, [y1, a.bracket(x, y2)])
    assert lhs == rhs


def test_symmetrize_order_independent():
    ctx = sp_context(2)
    a = ctx.algebra
    f = [a["X[1,2]"], a["Y[1,1]"], a["A[1,2]"]]
    assert symmetrize(ctx, f) == symmetrize(ctx, f[::-1])


@given(st.integers(0, 10**6))
def test_cofactor_expansion(seed):
    # first-row Laplace expansion against Leibniz on commuting entries
    rng = random.Random(seed)
    ctx = sp_context(3)
    gens = [ctx["X[1,1]"], ctx["X[1,2]"], ctx["X[2,3]"], ctx.one()]
    n = 3
    rows = [[gens[rng.randrange(len(gens))] * rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
    m = OperatorMatrix(rows)
    exp = sum((m[0, c] * cofactor(m, 0, c) for c in range(n)), ctx.zero())
    assert exp == matrix_det(m)
