"""Universal enveloping algebras in PBW normal form.

A :class:`PBWContext` fixes a total order on the basis of a Lie algebra.
Internally everything is indexed by *position* in that order, and a PBW
monomial is a tuple of ``(position, exponent)`` pairs with increasing
positions.  Products are straightened by the rewrite
``x_p x_q -> x_q x_p + [x_p, x_q]`` for ``p > q``, memoized per context on
``(generator, monomial)``.
"""

from __future__ import annotations

import math
import os
from itertools import permutations

from gmpy2 import mpq

from .lie import LieAlgebra, LieElement, build_sp
from .linalg import inverse, signed_permutations
from .scalars import render

ZERO = mpq(0)
ONE = mpq(1)

DEFAULT_DEGREE_CAP = 64


class DegreeCapError(ArithmeticError):
    pass


class ContextMismatch(ValueError):
    pass


def degree_cap():
    return int(os.environ.get("VB_DEGREE_CAP", DEFAULT_DEGREE_CAP))


def _acc(out, mono, c):
    v = out.get(mono)
    v = c if v is None else v + c
    if v:
        out[mono] = v
    else:
        out.pop(mono, None)


def _prepend(p, mono):
    """x_p * mono when p <= first position of mono."""
    if mono and mono[0][0] == p:
        return ((p, mono[0][1] + 1),) + mono[1:]
    return ((p, 1),) + mono


def _drop_first(mono):
    q, e = mono[0]
    return (((q, e - 1),) + mono[1:]) if e > 1 else mono[1:]


def mono_degree(mono):
    return sum(e for _, e in mono)


def expand(mono):
    """Positions of a monomial, left to right, with repetition."""
    out = []
    for p, e in mono:
        out.extend([p] * e)
    return out


class PBWContext:
    """A Lie algebra together with a total order on its basis."""

    def __init__(self, algebra: LieAlgebra, order=None, cap=None):
        self.algebra = algebra
        order = tuple(range(algebra.dim)) if order is None else tuple(order)
        if sorted(order) != list(range(algebra.dim)):
            raise ValueError("order must be a permutation of the basis indices")
        self.order = order
        self.pos = {b: p for p, b in enumerate(order)}
        self.cap = degree_cap() if cap is None else cap
        n = algebra.dim
        # _brk[p][q] = [(s, c), ...] with [x_p, x_q] = sum c x_s (positions)
        self._brk = [[() for _ in range(n)] for _ in range(n)]
        for (a, b), vec in algebra.table.items():
            self._brk[self.pos[a]][self.pos[b]] = tuple(
                sorted((self.pos[c], v) for c, v in vec.items())
            )
        self._memo = {}

    def __repr__(self):
        return f"PBWContext({self.algebra.name}, order={[self.algebra.labels[i] for i in self.order]})"

    # -- element constructors
    def one(self):
        return UEAElement(self, {(): ONE})

    def zero(self):
        return UEAElement(self, {})

    def scalar(self, c):
        return UEAElement(self, {(): c} if c else {})

    def gen(self, b):
        """Basis element (index or label) as a degree-one element."""
        if isinstance(b, str):
            b = self.algebra.index[b]
        return UEAElement(self, {((self.pos[b], 1),): ONE})

    def __getitem__(self, label):
        return self.gen(label)

    def lie(self, x: LieElement):
        if x.alg is not self.algebra:
            raise ContextMismatch("Lie element from another algebra")
        return UEAElement(self, {((self.pos[i], 1),): c for i, c in x.coords.items()})

    def coerce(self, x):
        if isinstance(x, UEAElement):
            if x.ctx is self:
                return x
            if x.ctx.algebra is not self.algebra:
                raise ContextMismatch("UEA elements over different algebras")
            return reorder(x, self)
        if isinstance(x, LieElement):
            return self.lie(x)
        return self.scalar(x)

    # -- straightening
    def gen_times(self, p, mono):
        """x_p * mono in normal form, as a dict (do not mutate)."""
        if not mono or p <= mono[0][0]:
            return {_prepend(p, mono): ONE}
        key = (p, mono)
        r = self._memo.get(key)
        if r is not None:
            return r
        q = mono[0][0]
        rest = _drop_first(mono)
        r = {}
        for m, c in self.gen_times(p, rest).items():
            if not m or q <= m[0][0]:
                _acc(r, _prepend(q, m), c)
            else:
                for m2, c2 in self.gen_times(q, m).items():
                    _acc(r, m2, c * c2)
        for s, cs in self._brk[p][q]:
            for m, c in self.gen_times(s, rest).items():
                _acc(r, m, cs * c)
        self._memo[key] = r
        return r

    def times_dict(self, positions, terms):
        """Left-multiply ``terms`` by the word x_{p1} ... x_{pk}."""
        for p in reversed(positions):
            out = {}
            for m, c in terms.items():
                for m2, c2 in self.gen_times(p, m).items():
                    _acc(out, m2, c * c2)
            terms = out
        return terms

    def monomial(self, word):
        """Normal form of a word of basis indices (product left to right)."""
        return UEAElement(self, self.times_dict([self.pos[b] for b in word], {(): ONE}))


class UEAElement:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: PBWContext, terms):
        self.ctx = ctx
        self.terms = {m: c for m, c in terms.items() if c}

    def _check(self, other):
        if not isinstance(other, UEAElement):
            return self.ctx.scalar(other)
        if other.ctx is not self.ctx:
            raise ContextMismatch("UEA elements from different contexts")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return UEAElement(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UEAElement):
            if isinstance(other, LieElement):
                other = self.ctx.lie(other)
            else:
                return UEAElement(self.ctx, {m: c * other for m, c in self.terms.items()})
        other = self._check(other)
        if self.degree + other.degree > self.ctx.cap:
            raise DegreeCapError(
                f"product degree {self.degree + other.degree} exceeds cap {self.ctx.cap}"
            )
        out = {}
        for m, c in self.terms.items():
            part = self.ctx.times_dict(expand(m), other.terms)
            for m2, c2 in part.items():
                _acc(out, m2, c * c2)
        return UEAElement(self.ctx, out)

    def __rmul__(self, other):
        if isinstance(other, LieElement):
            return self.ctx.lie(other) * self
        return UEAElement(self.ctx, {m: other * c for m, c in self.terms.items()})

    def __pow__(self, e):
        out = self.ctx.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, UEAElement):
            return self.ctx is other.ctx and self.terms == other.terms
        return self.terms == self.ctx.scalar(other).terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self):
        return max((mono_degree(m) for m in self.terms), default=0)

    def scalar_part(self):
        return self.terms.get((), ZERO)

    def is_scalar(self):
        return all(not m for m in self.terms)

    def support(self):
        """Basis indices occurring in some monomial."""
        return {self.ctx.order[p] for m in self.terms for p, _ in m}

    def words(self):
        """(coef, [basis indices]) pairs."""
        return [(c, [self.ctx.order[p] for p in expand(m)]) for m, c in self.terms.items()]

    def __repr__(self):
        return f"UEAElement({render_uea(self)})"

    __str__ = lambda self: render_uea(self)


def render_mono(ctx, mono):
    labels = ctx.algebra.labels
    return "*".join(
        labels[ctx.order[p]] if e == 1 else f"{labels[ctx.order[p]]}^{e}" for p, e in mono
    )


def render_uea(u: UEAElement):
    """Monomials sorted by degree, then by position in the order."""
    if not u.terms:
        return "0"
    parts = []
    for m in sorted(u.terms, key=lambda m: (mono_degree(m), m)):
        c = u.terms[m]
        cs = render(c)
        body = render_mono(u.ctx, m)
        if not body:
            parts.append(cs)
        elif cs == "1":
            parts.append(body)
        elif cs == "-1":
            parts.append("-" + body)
        elif any(ch in cs for ch in " +") or (cs.startswith("-") and " " in cs):
            parts.append(f"({cs})*{body}")
        else:
            parts.append(f"{cs}*{body}")
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


# -- operations -----------------------------------------------------------------


def mul(a: UEAElement, b: UEAElement) -> UEAElement:
    if a.ctx is not b.ctx:
        raise ContextMismatch("mul: elements from different contexts")
    return a * b


def ad_action(x, u: UEAElement) -> UEAElement:
    x = u.ctx.coerce(x)
    return x * u - u * x


def symmetrize(ctx: PBWContext, factors):
    """(1/m!) * sum over orderings of the product of ``factors``."""
    factors = [ctx.coerce(f) for f in factors]
    if not factors:
        raise ValueError("symmetrize needs at least one factor")
    total = ctx.zero()
    for perm in permutations(range(len(factors))):
        prod = ctx.one()
        for i in perm:
            prod = prod * factors[i]
        total = total + prod
    return total * mpq(1, math.factorial(len(factors)))


def reorder(u: UEAElement, new) -> UEAElement:
    """The same element of U(g), normal with respect to another order."""
    ctx = new if isinstance(new, PBWContext) else PBWContext(u.ctx.algebra, new)
    if ctx.algebra is not u.ctx.algebra:
        raise ContextMismatch("reorder across algebras")
    out = {}
    for c, word in u.words():
        part = ctx.times_dict([ctx.pos[b] for b in word], {(): ONE})
        for m, c2 in part.items():
            _acc(out, m, c * c2)
    return UEAElement(ctx, out)


def is_central(u: UEAElement) -> bool:
    return not central_failures(u)


def central_failures(u: UEAElement):
    ctx = u.ctx
    return [
        ctx.algebra.labels[b]
        for b in range(ctx.algebra.dim)
        if ad_action(ctx.gen(b), u)
    ]


class OperatorMatrix:
    """Rectangular matrix of UEA elements sharing one context."""

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("operator matrix must be rectangular and nonempty")
        ctx = rows[0][0].ctx
        for r in rows:
            for x in r:
                if x.ctx is not ctx:
                    raise ContextMismatch("operator matrix entries from different contexts")
        self.rows = rows
        self.ctx = ctx

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def minor(self, i, j):
        return OperatorMatrix(
            [[x for c, x in enumerate(r) if c != j] for k, r in enumerate(self.rows) if k != i]
        )

    def commutation_failures(self):
        bad = []
        flat = [((i, j), x) for i, r in enumerate(self.rows) for j, x in enumerate(r)]
        for a in range(len(flat)):
            for b in range(a + 1, len(flat)):
                x, y = flat[a][1], flat[b][1]
                if x * y != y * x:
                    bad.append((flat[a][0], flat[b][0]))
        return bad


class CommutationError(ValueError):
    pass


def matrix_det(m: OperatorMatrix, verify_commuting=False) -> UEAElement:
    """Leibniz expansion; each product is taken in ascending row order."""
    rows, cols = m.shape
    if rows != cols:
        raise ValueError(f"determinant of a non-square {rows}x{cols} matrix")
    if verify_commuting:
        bad = m.commutation_failures()
        if bad:
            raise CommutationError(f"entries {bad[0][0]} and {bad[0][1]} do not commute")
    total = m.ctx.zero()
    for sign, p in signed_permutations(rows):
        prod = m.ctx.one()
        for i in range(rows):
            prod = prod * m.rows[i][p[i]]
            if not prod:
                break
        if prod:
            total = total + (prod if sign > 0 else -prod)
    return total


def cofactor(m: OperatorMatrix, i, j) -> UEAElement:
    """Signed determinant of the (i, j)-deleted minor (0-based indices)."""
    if m.shape[0] == 1:
        return m.ctx.one()
    d = matrix_det(m.minor(i, j))
    return d if (i + j) % 2 == 0 else -d


def M_plus_matrix(ctx: PBWContext, N: int) -> OperatorMatrix:
    """Entries E_{i,N+l} + E_{l,N+i} expressed in ``ctx``'s algebra."""
    alg = ctx.algebra
    if alg.size != 2 * N:
        raise ValueError(f"{alg.name} is not realized in size {2 * N}")
    rows = []
    for i in range(N):
        row = []
        for l in range(N):
            mat = {(i, N + l): ONE}
            mat[(l, N + i)] = mat.get((l, N + i), ZERO) + ONE
            row.append(ctx.lie(alg.from_matrix(mat)))
        rows.append(row)
    return OperatorMatrix(rows)


def build_M_plus(ctx: PBWContext, N: int):
    """(M_hat_{+,N}, its operator matrix)."""
    m = M_plus_matrix(ctx, N)
    return matrix_det(m), m


def _pos_roots(alg):
    rd = alg.roots
    if rd is None:
        raise ValueError(f"{alg.name} carries no root datum")
    return rd


def build_laplace(ctx: PBWContext):
    """(Delta, Delta1) for sp(2n), normalized by A -> Tr(A^2)."""
    alg = ctx.algebra
    rd = _pos_roots(alg)
    d2 = ctx.zero()
    for d in rd.cartan:
        d2 = d2 + ctx.gen(d) * ctx.gen(d)
    delta = d2
    delta1 = d2
    for root in rd.positive_roots:
        x, y = ctx.gen(rd.x_index[root]), ctx.gen(rd.y_index[root])
        c = rd.c_alpha(root)
        delta = delta + (x * y + y * x) * c
        delta1 = delta1 - (x * y - y * x) * c
    return delta, delta1


def trace_form_dual(alg: LieAlgebra):
    """Dual basis {x^a} w.r.t. (X, Y) = Tr(XY), as matrices."""
    mats = alg.matrices
    n = alg.dim

    def tr(a, b):
        s = ZERO
        for (r, k), v in a.items():
            w = b.get((k, r))
            if w:
                s += v * w
        return s

    gram = [[tr(mats[a], mats[b]) for b in range(n)] for a in range(n)]
    ginv = inverse(gram)
    duals = []
    for a in range(n):
        m = {}
        for c in range(n):
            if ginv[a][c]:
                for k, v in mats[c].items():
                    m[k] = m.get(k, ZERO) + ginv[a][c] * v
        duals.append({k: v for k, v in m.items() if v})
    return duals


class CentralityError(AssertionError):
    pass


def build_gelfand(ctx: PBWContext, m: int, check=True) -> UEAElement:
    """Tr(F^m), F_pq = sum_a (x^a)_pq x_a with {x^a} the trace-form dual basis."""
    if m not in (2, 4):
        raise ValueError("Gelfand invariants are provided for m in {2, 4}")
    alg = ctx.algebra
    size = alg.size
    duals = trace_form_dual(alg)
    F = [[ctx.zero() for _ in range(size)] for _ in range(size)]
    for a, dm in enumerate(duals):
        g = ctx.gen(a)
        for (p, q), v in dm.items():
            F[p][q] = F[p][q] + g * v
    power = F
    for _ in range(m - 1):
        power = [
            [sum((power[p][k] * F[k][q] for k in range(size) if power[p][k] and F[k][q]), ctx.zero())
             for q in range(size)]
            for p in range(size)
        ]
    out = ctx.zero()
    for p in range(size):
        out = out + power[p][p]
    if check and not is_central(out):
        raise CentralityError(f"Tr(F^{m}) failed the centrality check")
    return out


def sp_context(N: int, order=None) -> PBWContext:
    return PBWContext(build_sp(N), order)
