import pytest
from gmpy2 import mpq

from bolcheck.jacobi_maps import (
    JacobiMaps,
    StarContext,
    T0,
    build_heisenberg_matrices,
    check_ad_invariance,
    check_bracket_relation,
    check_det_transfer,
    check_levi_trace_lemma,
    check_star_action,
    check_T0_equivariance,
    check_that_commutes,
    check_transfer_coherence,
    poly_adjugate,
    poly_det,
    star_act,
)
from bolcheck.modules import act, jacobi_algebra, jacobi_module
from bolcheck.scalars import KAPPA, PI_HAT, param
from bolcheck.uea import PBWContext, ad_action

k = KAPPA
PAIRS = [(1, 1), (2, 1), (1, 2)]


def test_heisenberg_matrices_n1j1():
    g = jacobi_algebra(1, 1)
    hm = build_heisenberg_matrices(g)
    ctx = hm.Z.ctx
    assert hm.Z.rows == [[ctx["Z[1,1]"]]]
    assert hm.U.rows == [[ctx["U[1,1]"]]]
    assert hm.V.rows == [[ctx["V[1,1]"]]]
    assert hm.Z_adj.rows == [[ctx.one()]]
    assert hm.failures == []


def test_heisenberg_adjugate_j2():
    hm = build_heisenberg_matrices(jacobi_algebra(1, 2))
    ctx = hm.Z.ctx
    assert hm.Z_adj.rows[0][0] == ctx["Z[2,2]"]
    assert hm.Z_adj.rows[0][1] == -ctx["Z[1,2]"]
    assert hm.det_Z == ctx["Z[1,1]"] * ctx["Z[2,2]"] - ctx["Z[1,2]"] ** 2


@pytest.mark.parametrize("n,j", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_heisenberg_invariants(n, j):
    assert build_heisenberg_matrices(jacobi_algebra(n, j)).failures == []


def test_poly_det_and_adjugate():
    a, b, c = param("a"), param("b"), param("c")
    m = [[a, b], [b, c]]
    assert poly_det(m) == a * c - b**2
    assert poly_adjugate(m) == [[c, -b], [-b, a]]


def test_T0_vanishes_without_u_v():
    Z = [[mpq(1)]]
    out = T0([[mpq(0)]], [[mpq(0)]], Z)
    assert all(x == 0 for r in out for x in r)


def test_T0_upper_right_only_when_v_zero():
    out = T0([[mpq(3)]], [[mpq(0)]], [[mpq(1)]])
    assert out == [[0, 9], [0, 0]]


@pytest.mark.parametrize("n,j", PAIRS + [(2, 2)])
def test_T0_equivariance(n, j):
    rep = check_T0_equivariance(n, j)
    assert rep.ok, rep.failures


def test_T_sym_and_That_n1j1():
    jm = JacobiMaps(jacobi_algebra(1, 1))
    ctx = jm.ctx
    X, U, V, Z, d = (ctx[x] for x in ("X[1,1]", "U[1,1]", "V[1,1]", "Z[1,1]", "d[1]"))
    assert jm.T_sym("X[1,1]") == U**2
    assert jm.That("X[1,1]") == 2 * Z * X - U**2
    # lambda(2 U V) = U V + V U, whose normal form is 2 U V + Z
    assert jm.T_sym("d[1]") == U * V + V * U
    assert jm.T_sym("d[1]") == 2 * U * V + Z
    assert not jm.T_sym(jm.alg.zero())


def test_That_is_linear():
    jm = JacobiMaps(jacobi_algebra(2, 1))
    a = jm.alg
    x = a["X[1,2]"] * 3 + a["A[2,1]"] * mpq(-1, 2)
    assert jm.That(x) == jm.That("X[1,2]") * 3 + jm.That("A[2,1]") * mpq(-1, 2)


def test_ad_invariance_example():
    jm = JacobiMaps(jacobi_algebra(1, 1))
    ctx = jm.ctx
    lhs = ad_action(jm.alg["V[1,1]"], jm.T_sym("X[1,1]"))
    assert lhs == 2 * ctx["Z[1,1]"] * ctx["U[1,1]"]
    assert jm.alg.bracket(jm.alg["V[1,1]"], jm.alg["X[1,1]"]) == jm.alg["U[1,1]"]


@pytest.mark.parametrize("n,j", PAIRS)
def test_structural_identities(n, j):
    jm = JacobiMaps(jacobi_algebra(n, j))
    for rep in (check_ad_invariance(n, j, jm), check_that_commutes(n, j, jm), check_bracket_relation(n, j, jm)):
        assert rep.ok, (rep.name, rep.failures[:3])


def test_bracket_relation_antisymmetry():
    jm = JacobiMaps(jacobi_algebra(1, 1))
    a = jm.alg
    X, Y = a["X[1,1]"], a["Y[1,1]"]
    lhs = jm.That(X) * jm.That(Y) - jm.That(Y) * jm.That(X)
    rhs = 2 * jm.det_Z * jm.That(a.bracket(X, Y))
    assert lhs == rhs
    assert -lhs == jm.That(Y) * jm.That(X) - jm.That(X) * jm.That(Y)


@pytest.mark.parametrize("n,j,kappa", [(1, 1, 2), (2, 1, 4)])
def test_det_transfer_j1(n, j, kappa):
    rep = check_det_transfer(n, j)
    assert rep.proportional and rep.entries_commute
    assert rep.kappa == kappa
    assert rep.corrected_kappa == kappa


@pytest.mark.parametrize("n", [1, 2])
def test_det_transfer_j2_needs_single_detZ(n):
    rep = check_det_transfer(n, 2)
    assert not rep.proportional
    assert rep.corrected_kappa == 2**n


def test_det_transfer_weights_match():
    rep = check_det_transfer(1, 1)
    g = jacobi_algebra(1, 1)
    d = g["d[1]"]
    assert ad_action(d, rep.lhs) == rep.lhs * 2
    assert ad_action(d, rep.rhs) == rep.rhs * 2


@pytest.mark.parametrize("n,j,M", [(1, 1, [[1]]), (1, 1, [[2]]), (2, 1, [[1]]), (1, 2, [[2, 1], [1, 1]])])
def test_star_action(n, j, M):
    rep = check_star_action(n, j, M)
    assert rep.ok, rep.law_failures
    assert rep.star_weight == k - mpq(j, 2)
    assert rep.c_star == 2 * (2 * PI_HAT) ** j * poly_det(M)
    assert rep.discrepancy == (2 * PI_HAT) ** j


def test_star_act_on_words():
    mod = jacobi_module(1, 1, k, [[1]])
    sc = StarContext(mod)
    e = mod.generator()
    small = sc.small
    c = PBWContext(small)
    w = c["X[1,1]"] * c["Y[1,1]"]
    assert star_act(w, e, sc) == sc.act("X[1,1]", sc.act("Y[1,1]", e))


@pytest.mark.parametrize("n,j", PAIRS)
def test_levi_trace_lemma(n, j):
    rep = check_levi_trace_lemma(n, j)
    assert rep.uniform and rep.adjugate_identity
    assert rep.s == j
    assert rep.star_weight_shift == mpq(-j, 2)


@pytest.mark.parametrize("n,j,r", [(1, 1, 1), (1, 1, 2), (2, 1, 1), (1, 2, 1)])
def test_star_dot_coherence(n, j, r):
    rep = check_transfer_coherence(n, j, r)
    assert rep.ok
    assert rep.dot_set == {0, r}


def test_dot_holomorphic_implies_star_holomorphic():
    mod = jacobi_module(2, 1, k, [[1]])
    sc = StarContext(mod)
    e = mod.generator()
    assert all(not act(mod.ctx.gen(b), e) for b in mod.algebra.subspaces["L"])
    assert all(not sc.act(sc.small.basis(b), e) for b in sc.small.subspaces["L"])


def test_maps_share_context():
    g = jacobi_algebra(1, 1)
    ctx = PBWContext(g)
    assert JacobiMaps(g, ctx).That("d[1]").ctx is ctx
