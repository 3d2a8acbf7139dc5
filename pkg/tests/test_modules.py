import random

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from bolcheck.modules import (
    ModuleError,
    act,
    build_module,
    cofactor_relation_check,
    delta_eigencheck,
    holomorphic_set,
    is_holomorphic,
    jacobi_module,
    raising_operator,
    recovery_scan,
    siegel_module,
    sp_algebra,
    weight_check,
)
from bolcheck.scalars import KAPPA, PI_HAT
from bolcheck.uea import build_M_plus

k = KAPPA


def X_power(mod, m):
    v = mod.generator()
    for _ in range(m):
        v = act("X[1,1]", v)
    return v


def test_siegel_character_valid():
    mod = siegel_module(1)
    a = mod.algebra
    assert mod.chi[a.index["d[1]"]] == k
    assert mod.chi[a.index["Y[1,1]"]] == 0


def test_non_closed_q_rejected():
    a = sp_algebra(1)
    with pytest.raises(ModuleError, match="not closed"):
        build_module(a, [a.index["X[1,1]"], a.index["Y[1,1]"]], {})


def test_non_character_rejected():
    a = sp_algebra(1)
    q = [a.index["d[1]"], a.index["Y[1,1]"]]
    with pytest.raises(ModuleError, match="not a character"):
        build_module(a, q, {a.index["d[1]"]: k, a.index["Y[1,1]"]: mpq(1)})


def test_jacobi_character_values():
    mod = jacobi_module(1, 2, k, [[2, 1], [1, 1]])
    a = mod.algebra
    assert mod.chi[a.index["Z[1,2]"]] == PI_HAT * 2
    assert mod.chi[a.index["Z[2,2]"]] == PI_HAT * 2


def test_singular_index_rejected():
    with pytest.raises(ModuleError, match="det M = 0"):
        jacobi_module(1, 2, k, [[1, 1], [1, 1]])


@pytest.mark.parametrize("m", range(0, 6))
def test_Y_on_X_powers(m):
    mod = siegel_module(1)
    v = X_power(mod, m)
    want = X_power(mod, m - 1) * (-m * (k + m - 1)) if m else mod.zero()
    assert act("Y[1,1]", v) == want
    assert act("d[1]", v) == v * (k + 2 * m)
    assert act(1, v) == v


def test_weight_check():
    mod = siegel_module(1)
    e = mod.generator()
    assert weight_check(e) == (True, k)
    Me = act(raising_operator(mod), e)
    assert weight_check(Me) == (True, k + 2)
    assert weight_check(e + act("X[1,1]", e)) == (False, None)


def test_holomorphic_critical_n1():
    mod = siegel_module(1, -1)
    M = raising_operator(mod)
    e = mod.generator()
    assert is_holomorphic(e)
    assert not is_holomorphic(act(M, e))
    assert is_holomorphic(act(M, act(M, e)))


def test_jacobi_holomorphic_example():
    mod = jacobi_module(1, 1, mpq(-1) + mpq(3, 2), [[1]])
    assert is_holomorphic(act(raising_operator(mod), mod.generator()))


def test_scans_from_examples():
    assert holomorphic_set(recovery_scan(siegel_module(1, -1), 4)) == {0, 2}
    rows = recovery_scan(siegel_module(2, mpq(-1) + mpq(1, 2)), 3)
    assert holomorphic_set(rows) == {0, 2}
    assert rows[2].weight == 3 + mpq(1, 2)
    rows = recovery_scan(jacobi_module(1, 1, mpq(-2) + mpq(3, 2), [[2]]), 3)
    assert holomorphic_set(rows) == {0, 2}
    assert all(r.index_ok for r in rows)


def test_symbolic_obstruction_n1():
    rows = recovery_scan(siegel_module(1), 3)
    assert [r.obstruction_roots for r in rows[1:]] == [[0], [-1], [-2]]
    assert rows[0].holomorphic


def test_delta_eigen_n1():
    recs = delta_eigencheck(siegel_module(1), 1)
    assert recs[0].expected == k * (k - 2) and recs[0].ok
    assert recs[2].expected == (k + 2) * k and recs[2].ok
    zero = delta_eigencheck(siegel_module(1, 0), 0)
    assert zero[0].actual == 0


def test_cofactor_examples():
    rep = cofactor_relation_check(1, 0, k)
    assert rep.uniform and rep.C is not None
    rep = cofactor_relation_check(2, 0, k, "symmetric")
    assert rep.uniform and rep.C == -2 * (k - mpq(1, 2))
    # at the critical weight w is holomorphic, so C = 0
    rep = cofactor_relation_check(2, 0)
    assert rep.uniform and rep.C == 0 and rep.span_dim == 3


def test_cofactor_literal_is_not_uniform_generically():
    rep = cofactor_relation_check(2, 1, k, "literal")
    assert not rep.uniform


@given(st.integers(0, 10**6))
def test_module_action_is_a_representation(seed):
    rng = random.Random(seed)
    mod = siegel_module(2)
    ctx = mod.ctx
    a = mod.algebra
    v = mod.generator()
    for _ in range(rng.randint(0, 3)):
        v = act(ctx.gen(rng.randrange(a.dim)), v) + v * rng.randint(-2, 2)
    x, y = rng.randrange(a.dim), rng.randrange(a.dim)
    lhs = act(ctx.gen(x), act(ctx.gen(y), v)) - act(ctx.gen(y), act(ctx.gen(x), v))
    assert lhs == act(a.bracket(a.basis(x), a.basis(y)), v)


@given(st.integers(0, 10**6))
def test_action_of_products(seed):
    rng = random.Random(seed)
    mod = jacobi_module(1, 1, k, [[2]])
    ctx = mod.ctx
    u1 = ctx.gen(rng.randrange(6)) * ctx.gen(rng.randrange(6))
    u2 = ctx.gen(rng.randrange(6))
    e = mod.generator()
    assert act(u1 * u2, e) == act(u1, act(u2, e))


def test_M_plus_of_module_matches_uea():
    mod = siegel_module(2)
    assert raising_operator(mod) == build_M_plus(mod.ctx, 2)[0]
