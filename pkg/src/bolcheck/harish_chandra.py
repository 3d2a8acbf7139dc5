"""Harish-Chandra projection for sp(2n) and the reduction of central elements to C[H0].

Cartan polynomials are ordinary scalars in the parameters d1..dn (and H0).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from gmpy2 import mpq

from . import scalars
from .modules import act, siegel_module, sp_algebra
from .scalars import KAPPA, param, render, substitute
from .uea import PBWContext, UEAElement, ad_action, reorder

ZERO = mpq(0)
ONE = mpq(1)
H0 = param("H0")


class ProjectionError(ValueError):
    pass


def dvar(i):
    return param(f"d{i}")


@dataclass
class HCContext:
    n: int
    algebra: object
    opposite: tuple  # opposite nilradical: upper Levi roots and u_plus
    cartan: tuple
    nilradical: tuple  # n_b: strictly lower Levi generators and L
    rho: tuple

    @classmethod
    def build(cls, n):
        alg = sp_algebra(n)
        idx = alg.index
        upper = [idx[f"A[{i},{j}]"] for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        lower = [idx[f"A[{i},{j}]"] for i in range(1, n + 1) for j in range(1, i)]
        opposite = tuple(upper + list(alg.subspaces["u_plus"]))
        nil = tuple(lower + list(alg.subspaces["L"]))
        return cls(n, alg, opposite, tuple(alg.subspaces["cartan"]), nil, alg.roots.rho)

    def rho_from_borel(self):
        """Half-sum of the roots of the Cartan on n_b, computed from brackets."""
        alg = self.algebra
        out = [ZERO] * self.n
        for b in self.nilradical:
            for i, h in enumerate(self.cartan):
                out[i] += alg.structure(h, b).get(b, ZERO)
        return tuple(x / 2 for x in out)

    def gamma_order(self):
        return list(self.opposite) + list(self.cartan) + list(self.nilradical)

    def parabolic(self):
        alg = self.algebra
        return tuple(alg.subspaces["levi"]) + tuple(alg.subspaces["L"])


def _weight_zero(u: UEAElement, hc: HCContext):
    ctx = u.ctx
    return all(not ad_action(ctx.gen(h), u) for h in hc.cartan)


def gamma_prime(D: UEAElement, hc: HCContext | None = None):
    """Pure-Cartan part of D after moving n_b to the right and dropping it."""
    hc = hc or HCContext.build(D.ctx.algebra.meta["N"])
    if not _weight_zero(D, hc):
        raise ProjectionError("element is not of weight zero for the Cartan")
    ctx = PBWContext(hc.algebra, hc.gamma_order())
    R = reorder(D, ctx)
    nil = set(hc.nilradical)
    cart = {h: i + 1 for i, h in enumerate(hc.cartan)}
    out = ZERO
    for c, word in R.words():
        if any(b in nil for b in word):
            continue
        if any(b not in cart for b in word):
            raise ProjectionError("element not center-like for this projection")
        t = c
        for b in word:
            t = t * dvar(cart[b])
        out = out + t
    return out


def t_shift(p, n, direction="forward", rho=None):
    """d_i -> d_i + rho(d_i) (forward) or d_i - rho(d_i) (inverse)."""
    rho = rho if rho is not None else sp_algebra(n).roots.rho
    sign = 1 if direction == "forward" else -1
    if direction not in ("forward", "inverse"):
        raise ValueError(direction)
    return substitute(p, {f"d{i}": dvar(i) + sign * rho[i - 1] for i in range(1, n + 1)})


def gamma(D: UEAElement, hc: HCContext | None = None):
    hc = hc or HCContext.build(D.ctx.algebra.meta["N"])
    return t_shift(gamma_prime(D, hc), hc.n, "inverse", hc.rho)


def pr1(p, n):
    """Projection onto C[H0] along h0 S(h), with H0 = sum d_i."""
    return substitute(p, {f"d{i}": H0 / n for i in range(1, n + 1)})


def weyl_invariance(p, n):
    names = [f"d{i}" for i in range(1, n + 1)]
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            img = substitute(p, {names[i]: signs[i] * dvar(perm[i] + 1) for i in range(n)})
            if img != scalars.scalar(p):
                return False
    return True


def cartan_element(p, hc: HCContext, ctx: PBWContext):
    """Embed a polynomial in d1..dn (and H0) into U(h) inside ctx."""
    alg = hc.algebra
    total = ctx.zero()
    H = ctx.zero()
    for h in hc.cartan:
        H = H + ctx.gen(h)
    for mono, c in scalars.poly_terms(p).items():
        term = ctx.scalar(c)
        for name, e in mono:
            g = H if name == "H0" else ctx.gen(alg.index[f"d[{name[1:]}]"])
            term = term * g**e
        total = total + term
    return total


def right_ideal_membership(D: UEAElement, subalg) -> bool:
    """D in the right ideal generated by the span of ``subalg``."""
    return not ideal_offenders(D, subalg)


def ideal_offenders(D: UEAElement, subalg):
    alg = D.ctx.algebra
    first = list(subalg)
    fset = set(first)
    order = first + [b for b in range(alg.dim) if b not in fset]
    R = reorder(D, order)
    return [(c, w) for c, w in R.words() if not w or w[0] not in fset]


@dataclass
class ProjectionReport:
    n: int
    gamma_prime: object
    gamma: object
    projected: object  # pr1(gamma'(D)) as a polynomial in H0
    member: bool
    offenders: list
    weyl_invariant: bool
    action_value: object
    expected_value: object
    action_ok: bool

    @property
    def ok(self):
        return self.member and self.weyl_invariant and self.action_ok


def check_center_projection(D: UEAElement, n: int, k=KAPPA) -> ProjectionReport:
    hc = HCContext.build(n)
    gp = gamma_prime(D, hc)
    g = t_shift(gp, n, "inverse", hc.rho)
    proj = pr1(gp, n)
    diff = D - cartan_element(proj, hc, D.ctx)
    offenders = ideal_offenders(diff, hc.parabolic())
    mod = siegel_module(n, k)
    e = mod.generator()
    Dm = reorder(D, mod.ctx)
    v = act(Dm, e)
    expected = substitute(proj, {"H0": n * scalars.scalar(k)})
    value = v.proportional_to(e)
    return ProjectionReport(
        n=n,
        gamma_prime=gp,
        gamma=g,
        projected=proj,
        member=not offenders,
        offenders=[(render(c), [hc.algebra.labels[b] for b in w]) for c, w in offenders],
        weyl_invariant=weyl_invariance(g, n),
        action_value=value,
        expected_value=expected,
        action_ok=value is not None and value == expected,
    )
