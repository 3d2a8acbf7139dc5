"""Character-induced modules U(g) (x)_{U(q)} C_chi and the recovery scans.

The module basis is the set of PBW monomials in the complement of ``q``;
the context order puts ``q`` last, so ``u . (m e)`` is obtained by
straightening ``u m`` and letting each trailing ``q`` generator act by its
character value.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from . import scalars
from .lie import LieAlgebra, LieElement, build_jacobi, build_sp
from .linalg import det as scalar_det
from .linalg import rank
from .scalars import KAPPA, PI_HAT, render
from .uea import (
    PBWContext,
    UEAElement,
    _acc,
    _drop_first,
    _prepend,
    build_laplace,
    build_M_plus,
    cofactor,
    expand,
)

ZERO = mpq(0)
ONE = mpq(1)


class ModuleError(ValueError):
    pass


sp_algebra = build_sp
jacobi_algebra = build_jacobi


class CharacterInducedModule:
    def __init__(self, ctx: PBWContext, q_basis, chi, kind="generic", meta=None):
        alg = ctx.algebra
        self.ctx = ctx
        self.q_basis = tuple(sorted(q_basis))
        qset = set(self.q_basis)
        self.complement = tuple(b for b in range(alg.dim) if b not in qset)
        self.split = len(self.complement)
        if {ctx.order[p] for p in range(self.split, alg.dim)} != qset:
            raise ModuleError("context order must place the q basis in the final positions")
        for a in self.q_basis:
            for b in self.q_basis:
                br = alg.structure(a, b)
                outside = [alg.labels[c] for c in br if c not in qset]
                if outside:
                    raise ModuleError(
                        f"q is not closed: [{alg.labels[a]}, {alg.labels[b]}] involves {outside}"
                    )
                val = sum((chi.get(c, ZERO) * v for c, v in br.items()), ZERO)
                if val:
                    raise ModuleError(
                        f"chi is not a character: chi([{alg.labels[a]}, {alg.labels[b]}]) = {render(val)}"
                    )
        self.chi = {b: scalars.scalar(chi.get(b, ZERO)) for b in self.q_basis}
        self._chi_pos = {ctx.pos[b]: self.chi[b] for b in self.q_basis}
        self.kind = kind
        self.meta = dict(meta or {})
        self._memo = {}

    @property
    def algebra(self) -> LieAlgebra:
        return self.ctx.algebra

    def generator(self):
        return ModuleVector(self, {(): ONE})

    def zero(self):
        return ModuleVector(self, {})

    # -- action on basis vectors
    def act_gen(self, p, mono):
        """x_p . (mono e) as a dict over complement monomials (do not mutate)."""
        if p >= self.split:
            if not mono:
                c = self._chi_pos[p]
                return {(): c} if c else {}
        elif not mono or p <= mono[0][0]:
            return {_prepend(p, mono): ONE}
        key = (p, mono)
        r = self._memo.get(key)
        if r is not None:
            return r
        q = mono[0][0]
        rest = _drop_first(mono)
        r = {}
        for m, c in self.act_gen(p, rest).items():
            if not m or q <= m[0][0]:
                _acc(r, _prepend(q, m), c)
            else:
                for m2, c2 in self.act_gen(q, m).items():
                    _acc(r, m2, c * c2)
        for s, cs in self.ctx._brk[p][q]:
            for m, c in self.act_gen(s, rest).items():
                _acc(r, m, cs * c)
        self._memo[key] = r
        return r

    def act_word(self, positions, terms):
        for p in reversed(positions):
            out = {}
            for m, c in terms.items():
                for m2, c2 in self.act_gen(p, m).items():
                    _acc(out, m2, c * c2)
            terms = out
            if not terms:
                break
        return terms


class ModuleVector:
    __slots__ = ("module", "terms")

    def __init__(self, module, terms):
        self.module = module
        self.terms = {m: c for m, c in terms.items() if c}

    def _check(self, other):
        if not isinstance(other, ModuleVector) or other.module is not self.module:
            raise ModuleError("vectors from different modules")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return ModuleVector(self.module, out)

    def __neg__(self):
        return ModuleVector(self.module, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return ModuleVector(self.module, {m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and other.module is self.module and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def proportional_to(self, other):
        """Scalar c with self == c * other, or None (other must be nonzero)."""
        if not other:
            raise ModuleError("proportionality against the zero vector")
        if not self:
            return ZERO
        if set(self.terms) != set(other.terms):
            return None
        m0 = next(iter(other.terms))
        c = self.terms[m0] / other.terms[m0]
        if all(self.terms[m] == c * other.terms[m] for m in other.terms):
            return c
        return None

    def __repr__(self):
        return f"ModuleVector({render_vector(self)})"

    __str__ = lambda self: render_vector(self)


def render_vector(v: ModuleVector):
    from .uea import render_uea

    if not v.terms:
        return "0"
    u = UEAElement(v.module.ctx, v.terms)
    body = render_uea(u)
    return f"({body})*e"


def act(u, v: ModuleVector) -> ModuleVector:
    """u . v for u a UEA element, Lie element, basis label or scalar."""
    mod = v.module
    ctx = mod.ctx
    if isinstance(u, str):
        u = ctx.gen(u)
    elif isinstance(u, LieElement):
        u = ctx.lie(u)
    elif not isinstance(u, UEAElement):
        return v * u
    if u.ctx.algebra is not ctx.algebra:
        raise ModuleError("acting element from another algebra")
    out = {}
    for mono, c in u.terms.items():
        word = [ctx.pos[u.ctx.order[p]] for p in expand(mono)]
        part = mod.act_word(word, v.terms)
        for m, c2 in part.items():
            _acc(out, m, c * c2)
    return ModuleVector(mod, out)


# -- constructors ----------------------------------------------------------------


def build_module(alg: LieAlgebra, q_basis, chi, order=None, kind="generic", meta=None):
    qset = set(q_basis)
    if order is None:
        order = [b for b in range(alg.dim) if b not in qset] + sorted(qset)
    return CharacterInducedModule(PBWContext(alg, order), q_basis, chi, kind, meta)


def siegel_module(n: int, k=KAPPA) -> CharacterInducedModule:
    """sp(2n) module with q = Levi + L, chi = k * Tr on the Levi, 0 on L."""
    alg = sp_algebra(n)
    q = alg.subspaces["levi"] + alg.subspaces["L"]
    k = scalars.scalar(k)
    chi = {b: k * alg.levi_trace(b) for b in alg.subspaces["levi"]}
    return build_module(alg, q, chi, kind="siegel", meta={"n": n, "k": k})


def index_matrix(M):
    M = [[scalars.scalar(x) for x in row] for row in M]
    jj = len(M)
    if any(len(r) != jj for r in M) or any(M[a][b] != M[b][a] for a in range(jj) for b in range(jj)):
        raise ModuleError("index matrix must be square and symmetric")
    if not scalar_det(M):
        raise ModuleError("index matrix is singular: det M = 0")
    return M


def jacobi_module(n: int, j: int, k=KAPPA, M=None) -> CharacterInducedModule:
    """g^(n,j) module with q = Levi + L + l_heis + z and Z[i,l] -> 2pi_i * M[i][l]."""
    alg = jacobi_algebra(n, j)
    M = index_matrix(M if M is not None else [[ONE if a == b else ZERO for b in range(j)] for a in range(j)])
    if len(M) != j:
        raise ModuleError(f"index matrix must be {j}x{j}")
    sub = alg.subspaces
    q = sub["levi"] + sub["L"] + sub["l_heis"] + sub["z"]
    k = scalars.scalar(k)
    chi = {b: k * alg.levi_trace(b) for b in sub["levi"]}
    for b in sub["z"]:
        a, l = (int(x) for x in alg.labels[b][2:-1].split(","))
        chi[b] = 2 * PI_HAT * M[a - 1][l - 1]
    return build_module(alg, q, chi, kind="jacobi", meta={"n": n, "j": j, "k": k, "M": M})


# -- predicates ------------------------------------------------------------------


def weight_check(v: ModuleVector):
    """(is_semispherical, k') with Levi elements acting by k' * Tr."""
    mod = v.module
    alg = mod.algebra
    if not v:
        return True, None
    levi = alg.subspaces["levi"]
    ref = next(b for b in levi if alg.levi_trace(b))
    c = act(mod.ctx.gen(ref), v).proportional_to(v)
    if c is None:
        return False, None
    weight = c / alg.levi_trace(ref)
    for b in levi:
        if act(mod.ctx.gen(b), v) != v * (weight * alg.levi_trace(b)):
            return False, None
    return True, weight


def annihilators(mod: CharacterInducedModule):
    sub = mod.algebra.subspaces
    return list(sub["L"]) + (list(sub["l_heis"]) if mod.kind == "jacobi" else [])


def obstruction(v: ModuleVector):
    """Nonzero images of v under the holomorphicity conditions."""
    mod = v.module
    out = {}
    for b in annihilators(mod):
        w = act(mod.ctx.gen(b), v)
        if w:
            out[mod.algebra.labels[b]] = w
    return out


def is_holomorphic_siegel(v: ModuleVector) -> bool:
    mod = v.module
    return all(not act(mod.ctx.gen(b), v) for b in mod.algebra.subspaces["L"])


def is_holomorphic_jacobi(v: ModuleVector) -> bool:
    mod = v.module
    sub = mod.algebra.subspaces
    return all(not act(mod.ctx.gen(b), v) for b in sub["L"] + sub["l_heis"])


def is_holomorphic(v: ModuleVector) -> bool:
    return is_holomorphic_jacobi(v) if v.module.kind == "jacobi" else is_holomorphic_siegel(v)


def raising_operator(mod: CharacterInducedModule) -> UEAElement:
    N = mod.meta["n"] + mod.meta.get("j", 0)
    return build_M_plus(mod.ctx, N)[0]


# -- scans ------------------------------------------------------------------------


@dataclass
class ScanRow:
    m: int
    weight: object
    holomorphic: bool
    nonzero: bool
    obstruction_poly: object = None
    obstruction_roots: list = field(default_factory=list)
    index_ok: bool | None = None


def _poly_gcd(values):
    """gcd over Q[params] of nonzero scalars, normalized monic (constant -> 1)."""
    g = None
    for v in values:
        if not isinstance(v, scalars.ExactScalar):
            return ONE
        if g is None:
            g = v
            continue
        _, names, (a, b) = scalars._to_sympy([g.num, v.num])
        h = a.gcd(b)
        g = scalars.from_terms(scalars._from_sympy(h, names))
        if not isinstance(g, scalars.ExactScalar):
            return ONE
    if g is None:
        return ZERO
    lead = g.num[max(g.num, key=scalars._mono_key)]
    return g * (1 / lead)


def obstruction_scalar(v: ModuleVector):
    """gcd of all coefficients of the holomorphicity images of v."""
    images = obstruction(v)
    coeffs = [c for w in images.values() for c in w.terms.values()]
    return _poly_gcd(coeffs)


def recovery_scan(mod: CharacterInducedModule, m_max: int):
    """Rows for M^m e, m = 0..m_max (M = M_hat_{+,n+j})."""
    Mp = raising_operator(mod)
    v = mod.generator()
    rows = []
    symbolic = isinstance(mod.meta["k"], scalars.ExactScalar)
    for m in range(m_max + 1):
        if m:
            v = act(Mp, v)
        ok, wt = weight_check(v)
        row = ScanRow(m=m, weight=wt if ok else None, holomorphic=is_holomorphic(v), nonzero=bool(v))
        if symbolic:
            g = obstruction_scalar(v)
            row.obstruction_poly = g
            row.obstruction_roots = scalars.rational_roots(g) if isinstance(g, scalars.ExactScalar) else []
        if mod.kind == "jacobi":
            row.index_ok = index_persists(v)
        rows.append(row)
    return rows


def holomorphic_set(rows):
    return {r.m for r in rows if r.holomorphic}


def index_persists(v: ModuleVector) -> bool:
    mod = v.module
    alg = mod.algebra
    for b in alg.subspaces["z"]:
        if act(mod.ctx.gen(b), v) != v * mod.chi[b]:
            return False
    return True


@dataclass
class EigenRecord:
    label: str
    r: int | None
    expected: object
    actual: object
    ok: bool


def delta_eigencheck(mod: CharacterInducedModule, r_max: int):
    """Delta e = k n (k-n-1) e and Delta1 M^r e = (k+2r) n (k+2r-n-1) M^r e."""
    if mod.kind != "siegel":
        raise ModuleError("delta_eigencheck needs a siegel module")
    n, k = mod.meta["n"], mod.meta["k"]
    delta, delta1 = build_laplace(mod.ctx)
    Mp = raising_operator(mod)
    out = []
    e = mod.generator()
    expected = k * n * (k - n - 1)
    got = act(delta, e)
    out.append(EigenRecord("Delta", None, expected, got.proportional_to(e), got == e * expected))
    v = e
    for r in range(r_max + 1):
        if r:
            v = act(Mp, v)
        exp_r = (k + 2 * r) * n * (k + 2 * r - n - 1)
        got = act(delta1, v)
        out.append(EigenRecord("Delta1", r, exp_r, got.proportional_to(v), got == v * exp_r))
    return out


@dataclass
class CofactorReport:
    n: int
    r: int
    k: object
    C: object
    uniform: bool
    span_dim: int
    pairs: dict
    weighting: str = "literal"


def cofactor_relation_check(n: int, r: int, k=None, weighting="literal") -> CofactorReport:
    """Y_{alpha(i,j)} w = C * cofactor(i,j) u with u = M^r e, w = M^{r+1} e.

    weighting="symmetric" multiplies the (i,j) cofactor by 2/c_alpha, i.e. pairs
    Y_{alpha(i,j)} with the derivative of M^+ along X_{alpha(i,j)}; this is the
    form in which a single C exists for generic k.
    """
    if weighting not in ("literal", "symmetric"):
        raise ValueError(weighting)
    if k is None:
        k = mpq(-r) + mpq(n - 1, 2)
    mod = siegel_module(n, k)
    Mp, Mmat = build_M_plus(mod.ctx, n)
    u = mod.generator()
    for _ in range(r):
        u = act(Mp, u)
    w = act(Mp, u)
    pairs = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            lhs = act(mod.ctx.gen(f"Y[{i},{j}]"), w)
            rhs = act(cofactor(Mmat, i - 1, j - 1), u)
            if weighting == "symmetric" and i != j:
                rhs = rhs * 2
            pairs[(i, j)] = (lhs, rhs)
    C = None
    uniform = True
    for lhs, rhs in pairs.values():
        if not rhs:
            if lhs:
                uniform = False
            continue
        c = lhs.proportional_to(rhs)
        if c is None or (C is not None and c != C):
            uniform = False
            break
        C = c
    if all(not lhs for lhs, _ in pairs.values()):
        C, uniform = ZERO, True
    keys = sorted({m for _, rhs in pairs.values() for m in rhs.terms})
    mat = [[rhs.terms.get(m, ZERO) for m in keys] for _, rhs in pairs.values()]
    span = rank(mat) if keys else 0
    return CofactorReport(n, r, k, C if uniform else None, uniform, span, pairs, weighting)
