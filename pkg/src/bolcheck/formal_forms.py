"""Formal functions in (tau, z, tau') and the heat / determinant operators on them.

Variables are canonical upper-triangle coordinates ``tau_a_b`` (a <= b <= n),
``z_r_s`` (r <= j, s <= n) and ``taup_c_d`` (c <= d <= j).  A formal function is
a polynomial times an optional factor exp(2pi_i * Tr(M tau')).

Differential operators are polynomials in commuting symbols ``D_<var>`` with
scalar coefficients, so operator determinants are ordinary determinants.
"""

from __future__ import annotations

from dataclasses import dataclass
import random
from itertools import combinations_with_replacement

from gmpy2 import mpq

from . import scalars
from .jacobi_maps import poly_adjugate, poly_det
from .modules import index_matrix
from .scalars import PI_HAT, param, render

ZERO = mpq(0)
ONE = mpq(1)


def tau(a, b):
    return f"tau_{min(a, b)}_{max(a, b)}"


def taup(c, d):
    return f"taup_{min(c, d)}_{max(c, d)}"


def zvar(r, s):
    return f"z_{r}_{s}"


def D(name):
    return param("D_" + name)


def variables(n, j):
    out = [tau(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]
    out += [zvar(r, s) for r in range(1, j + 1) for s in range(1, n + 1)]
    return out


class FormalError(ValueError):
    pass


@dataclass(frozen=True)
class FormalFunction:
    poly: object
    exp_index: tuple | None = None  # symmetric matrix as nested tuples

    def __add__(self, other):
        if other.exp_index != self.exp_index:
            raise FormalError("different exponential factors")
        return FormalFunction(self.poly + other.poly, self.exp_index)

    def __mul__(self, c):
        return FormalFunction(self.poly * c, self.exp_index)

    __rmul__ = __mul__

    def is_zero(self):
        return not self.poly

    def depends_on_taup(self):
        return any(name.startswith("taup_") for name in scalars.parameters(self.poly))

    def derivative(self, name):
        """d/d(name) in canonical coordinates, including the exponential factor."""
        p = scalars.derivative(self.poly, name)
        if self.exp_index is not None and name.startswith("taup_"):
            c, d = (int(x) for x in name.split("_")[1:])
            weight = 1 if c == d else 2
            p = p + PI_HAT * weight * self.exp_index[c - 1][d - 1] * self.poly
        return FormalFunction(scalars.scalar(p), self.exp_index)

    def __str__(self):
        body = render(self.poly)
        if self.exp_index is None:
            return body
        return f"({body})*e^M, M = {[[render(x) for x in r] for r in self.exp_index]}"


def formal(poly, exp_index=None):
    if exp_index is not None:
        exp_index = tuple(tuple(scalars.scalar(x) for x in r) for r in exp_index)
    return FormalFunction(scalars.scalar(poly), exp_index)


def var(name):
    return param(name)


def ext(f: FormalFunction, M) -> FormalFunction:
    """f(tau, z) * e^M(tau')."""
    if f.exp_index is not None or f.depends_on_taup():
        raise FormalError("ext needs a function of (tau, z) only")
    M = index_matrix(M)
    return formal(f.poly, M)


# -- operators ----------------------------------------------------------------------


def apply_operator(op, f: FormalFunction) -> FormalFunction:
    """Apply a polynomial in the D_<var> symbols (scalar coefficients) to f."""
    total = FormalFunction(scalars.scalar(ZERO), f.exp_index)
    for mono, c in scalars.poly_terms(op).items():
        coef = scalars.scalar(c)
        g = f
        for name, e in mono:
            if name.startswith("D_"):
                for _ in range(e):
                    g = g.derivative(name[2:])
                    if g.is_zero():
                        break
            else:
                coef = coef * param(name) ** e
            if g.is_zero():
                break
        if not g.is_zero():
            total = total + g * coef
    return total


def d_tau(n):
    """n x n operator matrix with entries (1 + delta_rs) d/d tau_rs."""
    return [[D(tau(r, s)) * (2 if r == s else 1) for s in range(1, n + 1)] for r in range(1, n + 1)]


def d_z(n, j):
    """j x n operator matrix of d/d z_rs."""
    return [[D(zvar(r, s)) for s in range(1, n + 1)] for r in range(1, j + 1)]


def heat_matrix(n, j, M):
    M = index_matrix(M)
    detM = poly_det(M)
    Madj = poly_adjugate(M)
    dt, dz = d_tau(n), d_z(n, j)
    out = []
    for a in range(n):
        row = []
        for b in range(n):
            s = ZERO
            for r in range(j):
                for t in range(j):
                    if Madj[r][t]:
                        s = s + dz[r][a] * Madj[r][t] * dz[t][b]
            row.append(2 * PI_HAT * detM * dt[a][b] - s)
        out.append(row)
    return out


def heat_operator(n, j, M):
    """L_M = det(4 pi i |M| d/dtau - t(d/dz) adj(M) d/dz), with 4 pi i = 2 * 2pi_i."""
    return scalars.scalar(poly_det(heat_matrix(n, j, M)))


def big_D_matrix(n, j):
    """(1 + delta) d/dW over W = (tau, tz; z, tau')."""
    N = n + j
    out = [[ZERO] * N for _ in range(N)]
    for a in range(N):
        for b in range(N):
            if a < n and b < n:
                out[a][b] = D(tau(a + 1, b + 1)) * (2 if a == b else 1)
            elif a >= n and b >= n:
                out[a][b] = D(taup(a - n + 1, b - n + 1)) * (2 if a == b else 1)
            elif a < n:
                out[a][b] = D(zvar(b - n + 1, a + 1))
            else:
                out[a][b] = D(zvar(a - n + 1, b + 1))
    return out


def big_D_operator(n, j):
    return scalars.scalar(poly_det(big_D_matrix(n, j)))


def apply_heat(f: FormalFunction, M, n, j, times=1):
    op = heat_operator(n, j, M)
    for _ in range(times):
        f = apply_operator(op, f)
    return f


def apply_big_D(F: FormalFunction, n, j, times=1):
    if F.exp_index is None or F.depends_on_taup():
        raise FormalError("the determinant operator is only applied to ext-type functions")
    op = big_D_operator(n, j)
    for _ in range(times):
        F = apply_operator(op, F)
    return F


# -- the extension identity ----------------------------------------------------------


def monomial_test_set(n, j, max_degree=2):
    vs = variables(n, j)
    out = [ONE]
    for d in range(1, max_degree + 1):
        for combo in combinations_with_replacement(vs, d):
            p = ONE
            for v in combo:
                p = p * param(v)
            out.append(p)
    return [formal(p) for p in out]


def monomial_sample(n, j, degree, count, seed=0):
    """Seeded random monomials of exact total degree; duplicates removed, order kept."""
    vs = variables(n, j)
    rng = random.Random(seed)
    seen, out = set(), []
    for _ in range(4 * count):
        combo = tuple(sorted(rng.choice(vs) for _ in range(degree)))
        if combo in seen:
            continue
        seen.add(combo)
        p = ONE
        for v in combo:
            p = p * param(v)
        out.append(formal(p))
        if len(out) == count:
            break
    return out


def candidate_forms(n, j, M):
    detM = scalars.scalar(poly_det(index_matrix(M)))
    stated = (2 * PI_HAT) ** (n - j) * detM ** (n - 1) if n >= j else detM ** (n - 1) / (2 * PI_HAT) ** (j - n)
    return {"stated": stated, "reciprocal": 1 / stated}


@dataclass
class BolReport:
    n: int
    j: int
    l: int
    c: object
    holds: bool
    matched: list
    checked: int
    nonzero: int
    witnesses: list


def verify_bol_extension(n, j, M, l=1, test_set=None, c=None) -> BolReport:
    """D^l ext(f) = c^l ext(L^l f) with one c for every f in the test set.

    c is read off from the first f with a nonzero right side at l = 1 (unless
    given) and then asserted for all f at exponent l.
    """
    M = index_matrix(M)
    tests = test_set if test_set is not None else monomial_test_set(n, j)
    opD, opL = big_D_operator(n, j), heat_operator(n, j, M)
    sides = []
    for f in tests:
        lhs, rhs = ext(f, M), ext(f, M)
        for _ in range(l):
            lhs = apply_operator(opD, lhs)
            rhs = apply_operator(opL, rhs)
        sides.append((f, lhs, rhs))
    if c is None:
        for f in tests:
            r1 = apply_operator(opL, ext(f, M))
            if not r1.is_zero():
                l1 = apply_operator(opD, ext(f, M))
                c = l1.poly / r1.poly
                break
    witnesses, nonzero = [], 0
    if c is not None and scalars.parameters(c) and set(scalars.parameters(c)) - {"2pi_i"}:
        witnesses.append(("c is not a constant", render(c)))
        c_ok = False
    else:
        c_ok = True
    for f, lhs, rhs in sides:
        if not rhs.is_zero():
            nonzero += 1
        want = rhs.poly * c**l if c is not None else rhs.poly
        if lhs.poly != want:
            witnesses.append((render(f.poly), render(lhs.poly), render(want)))
    holds = c_ok and not witnesses and c is not None
    matched = []
    if c is not None:
        for name, val in candidate_forms(n, j, M).items():
            if val == c:
                matched.append(name)
    return BolReport(n, j, l, c, holds, matched, len(tests), nonzero, witnesses)
