"""Lie algebras given by structure constants, with matrix realizations.

Two constructors are provided: :func:`build_sp` for sp(2N) in the basis
``X[i,j]`` (upper-right, raising), ``d[i]`` and ``A[i,j]`` (Levi),
``Y[i,j]`` (lower-left), and :func:`build_jacobi` for the Jacobi algebra
g^(n,j) realized in 2(n+j) x 2(n+j) matrices with block layout (n, j, n, j).

Structure constants are always computed from the realization, never typed
in by hand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from gmpy2 import mpq

from .scalars import render

ZERO = mpq(0)
ONE = mpq(1)


def E(r, c, size=None):
    """Matrix unit with a 1 at 1-based position (r, c), as a sparse dict."""
    return {(r - 1, c - 1): ONE}


def mat_add(*terms):
    """Sum of ``(coef, matrix)`` pairs."""
    out = {}
    for coef, m in terms:
        for k, v in m.items():
            x = out.get(k, ZERO) + coef * v
            if x:
                out[k] = x
            else:
                out.pop(k, None)
    return out


def mat_mul(a, b):
    by_row = {}
    for (r, c), v in b.items():
        by_row.setdefault(r, []).append((c, v))
    out = {}
    for (r, k), v in a.items():
        for c, w in by_row.get(k, ()):
            x = out.get((r, c), ZERO) + v * w
            if x:
                out[(r, c)] = x
            else:
                out.pop((r, c), None)
    return out


def commutator(a, b):
    return mat_add((ONE, mat_mul(a, b)), (-ONE, mat_mul(b, a)))


class _Coordinates:
    """Echelon form of a list of sparse vectors, for exact decomposition."""

    def __init__(self, vectors):
        self.rows = []  # (pivot key, reduced vector, combination of originals)
        for i, v in enumerate(vectors):
            vec = dict(v)
            comb = {i: ONE}
            for key, row, rcomb in self.rows:
                c = vec.get(key)
                if c:
                    f = c / row[key]
                    vec = _axpy(vec, row, -f)
                    comb = _axpy(comb, rcomb, -f)
            if not vec:
                raise ValueError(f"basis vector {i} is linearly dependent")
            key = min(vec, key=repr)
            self.rows.append((key, vec, comb))

    def __call__(self, target):
        vec = dict(target)
        out = {}
        for key, row, comb in self.rows:
            c = vec.get(key)
            if c:
                f = c / row[key]
                vec = _axpy(vec, row, -f)
                out = _axpy(out, comb, f)
        if vec:
            raise ValueError("vector is not in the span")
        return out


def _axpy(y, x, a):
    out = dict(y)
    for k, v in x.items():
        s = out.get(k, ZERO) + a * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


@dataclass(frozen=True)
class RootDatum:
    """Root data of sp(2N) relative to the diagonal Cartan ``d[1..N]``.

    Functionals on the Cartan are tuples of values on ``d[1], ..., d[N]``.
    ``h_alpha`` is given by its coordinates in the ``d`` basis.
    """

    rank: int
    cartan: tuple
    positive_roots: tuple  # integer vectors in the d* basis
    x_index: dict  # root -> basis index of X_alpha
    y_index: dict  # root -> basis index of Y_alpha
    long: dict  # root -> bool
    pair_root: dict  # (i, j) 1-based -> root, symmetric
    h_alpha: tuple
    omega_alpha: tuple
    rho: tuple
    rho_S: tuple

    def c_alpha(self, root):
        return 2 if self.long[root] else 1

    @staticmethod
    def evaluate(functional, coords):
        return sum((mpq(f) * c for f, c in zip(functional, coords)), ZERO)


class LieElement:
    """Element of a Lie algebra as a sparse coordinate vector."""

    __slots__ = ("alg", "coords")

    def __init__(self, alg, coords):
        self.alg = alg
        self.coords = {i: c for i, c in coords.items() if c}

    def __add__(self, other):
        self.alg._same(other.alg)
        return LieElement(self.alg, _axpy(self.coords, other.coords, ONE))

    def __sub__(self, other):
        self.alg._same(other.alg)
        return LieElement(self.alg, _axpy(self.coords, other.coords, -ONE))

    def __neg__(self):
        return LieElement(self.alg, {i: -c for i, c in self.coords.items()})

    def __mul__(self, c):
        return LieElement(self.alg, {i: v * c for i, v in self.coords.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LieElement) and self.alg is other.alg and self.coords == other.coords

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def __bool__(self):
        return bool(self.coords)

    def __repr__(self):
        if not self.coords:
            return "0"
        return " + ".join(f"{render(c)}*{self.alg.labels[i]}" for i, c in sorted(self.coords.items()))


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    name: str
    labels: tuple
    table: dict  # (a, b) -> {c: coef}, all ordered pairs with nonzero bracket
    matrices: tuple | None = None  # sparse realization, 0-based entries
    size: int | None = None
    subspaces: dict = field(default_factory=dict)
    roots: RootDatum | None = None
    trace_block: int = 0  # size of the leading gl block used for the Levi trace
    meta: dict = field(default_factory=dict)

    @property
    def dim(self):
        return len(self.labels)

    @cached_property
    def index(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def _coords(self):
        return _Coordinates(self.matrices)

    def _same(self, other):
        if other is not self:
            raise ValueError(f"elements of different algebras: {self.name} vs {other.name}")

    def basis(self, i):
        if isinstance(i, str):
            i = self.index[i]
        return LieElement(self, {i: ONE})

    def __getitem__(self, label):
        return self.basis(label)

    def element(self, coords):
        return LieElement(self, coords)

    def zero(self):
        return LieElement(self, {})

    def bracket(self, x, y):
        self._same(x.alg)
        self._same(y.alg)
        out = {}
        for a, ca in x.coords.items():
            for b, cb in y.coords.items():
                br = self.table.get((a, b))
                if br:
                    out = _axpy(out, br, ca * cb)
        return LieElement(self, out)

    def structure(self, a, b):
        """Sparse bracket ``[x_a, x_b]`` as ``{c: coef}``."""
        return self.table.get((a, b), {})

    def from_matrix(self, m):
        return LieElement(self, self._coords(m))

    def matrix(self, x):
        out = {}
        for i, c in x.coords.items():
            out = _axpy(out, self.matrices[i], c)
        return out

    def levi_trace(self, i):
        m = self.matrices[i]
        return sum((m.get((r, r), ZERO) for r in range(self.trace_block)), ZERO)

    def to_json(self):
        """Deterministic JSON document (labels, bracket table, subspaces)."""
        table = [
            [self.labels[a], self.labels[b], {self.labels[c]: render(v) for c, v in sorted(br.items())}]
            for (a, b), br in sorted(self.table.items())
            if a < b
        ]
        doc = {
            "name": self.name,
            "dim": self.dim,
            "labels": list(self.labels),
            "bracket": table,
            "subspaces": {k: [self.labels[i] for i in v] for k, v in sorted(self.subspaces.items())},
        }
        return json.dumps(doc, indent=1, sort_keys=True)


def _table_from_matrices(mats):
    coords = _Coordinates(mats)
    table = {}
    n = len(mats)
    for a in range(n):
        for b in range(a + 1, n):
            c = commutator(mats[a], mats[b])
            if c:
                vec = coords(c)
                if vec:
                    table[(a, b)] = vec
                    table[(b, a)] = {k: -v for k, v in vec.items()}
    return table


def _finish(name, labels, mats, size, subspaces, roots=None, trace_block=0, meta=None):
    alg = LieAlgebra(
        name=name,
        labels=tuple(labels),
        table=_table_from_matrices(mats),
        matrices=tuple(mats),
        size=size,
        subspaces={k: tuple(v) for k, v in subspaces.items()},
        roots=roots,
        trace_block=trace_block,
        meta=meta or {},
    )
    return alg


@lru_cache(maxsize=None)
def build_sp(N: int) -> LieAlgebra:
    """sp(2N) with J = [[0, I], [-I, 0]]; basis X..., d..., A..., Y...."""
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"build_sp needs N >= 1, got {N!r}")
    labels, mats = [], []
    sub = {"u_plus": [], "levi": [], "L": [], "cartan": []}
    pairs = [(i, j) for i in range(1, N + 1) for j in range(i, N + 1)]
    for i, j in pairs:
        labels.append(f"X[{i},{j}]")
        mats.append(E(i, N + j) if i == j else mat_add((ONE, E(i, N + j)), (ONE, E(j, N + i))))
        sub["u_plus"].append(len(labels) - 1)
    for i in range(1, N + 1):
        labels.append(f"d[{i}]")
        mats.append(mat_add((ONE, E(i, i)), (-ONE, E(N + i, N + i))))
        sub["levi"].append(len(labels) - 1)
        sub["cartan"].append(len(labels) - 1)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i != j:
                labels.append(f"A[{i},{j}]")
                mats.append(mat_add((ONE, E(i, j)), (-ONE, E(N + j, N + i))))
                sub["levi"].append(len(labels) - 1)
    for i, j in pairs:
        labels.append(f"Y[{i},{j}]")
        mats.append(E(N + i, i) if i == j else mat_add((ONE, E(N + j, i)), (ONE, E(N + i, j))))
        sub["L"].append(len(labels) - 1)
    index = {lab: k for k, lab in enumerate(labels)}
    roots = _sp_roots(N, index)
    return _finish(f"sp({2 * N})", labels, mats, 2 * N, sub, roots, trace_block=N, meta={"N": N})


def _unit(N, i):
    return tuple(1 if k == i else 0 for k in range(1, N + 1))


def _sp_roots(N, index):
    positive, xi, yi, long_, pair = [], {}, {}, {}, {}
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            root = tuple(a - b for a, b in zip(_unit(N, i), _unit(N, j)))
            positive.append(root)
            xi[root] = index[f"A[{i},{j}]"]
            yi[root] = index[f"A[{j},{i}]"]
            long_[root] = False
    for i in range(1, N + 1):
        for j in range(i, N + 1):
            root = tuple(a + b for a, b in zip(_unit(N, i), _unit(N, j)))
            positive.append(root)
            xi[root] = index[f"X[{i},{j}]"]
            yi[root] = index[f"Y[{i},{j}]"]
            long_[root] = i == j
            pair[(i, j)] = pair[(j, i)] = root
    # rho: half-sum of the roots of the Borel "lower-triangular Levi + L"
    rho = tuple(mpq(i - N - 1) for i in range(1, N + 1))
    rho_S = tuple(mpq(-(N + 1), 2) for _ in range(N))
    h_alpha = tuple(mpq(-1) if i == N else ZERO for i in range(1, N + 1))
    omega = tuple(mpq(-1) for _ in range(N))
    return RootDatum(
        rank=N,
        cartan=tuple(index[f"d[{i}]"] for i in range(1, N + 1)),
        positive_roots=tuple(positive),
        x_index=xi,
        y_index=yi,
        long=long_,
        pair_root=pair,
        h_alpha=h_alpha,
        omega_alpha=omega,
        rho=rho,
        rho_S=rho_S,
    )


@lru_cache(maxsize=None)
def build_jacobi(n: int, j: int) -> LieAlgebra:
    """The Jacobi algebra g^(n,j) inside sp(2(n+j)), block layout (n, j, n, j).

    Basis order: X (sp u_plus), U (r_heis), d/A (Levi), Y (sp L), V (l_heis), Z (center).
    """
    if not (isinstance(n, int) and isinstance(j, int) and n >= 1 and j >= 1):
        raise ValueError(f"build_jacobi needs n, j >= 1, got {(n, j)!r}")
    s = n + j  # offset of the third block
    labels, mats = [], []
    sub = {k: [] for k in ("u_plus", "r_heis", "levi", "cartan", "L", "l_heis", "z")}

    def add(label, m, *names):
        labels.append(label)
        mats.append(m)
        for nm in names:
            sub[nm].append(len(labels) - 1)

    pairs = [(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]
    for a, b in pairs:
        add(f"X[{a},{b}]", E(a, s + b) if a == b else mat_add((ONE, E(a, s + b)), (ONE, E(b, s + a))), "u_plus")
    for i in range(1, j + 1):
        for l in range(1, n + 1):
            add(f"U[{i},{l}]", mat_add((ONE, E(n + i, s + l)), (ONE, E(l, 2 * n + j + i))), "r_heis")
    for a in range(1, n + 1):
        add(f"d[{a}]", mat_add((ONE, E(a, a)), (-ONE, E(s + a, s + a))), "levi", "cartan")
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if a != b:
                add(f"A[{a},{b}]", mat_add((ONE, E(a, b)), (-ONE, E(s + b, s + a))), "levi")
    for a, b in pairs:
        add(f"Y[{a},{b}]", E(s + a, a) if a == b else mat_add((ONE, E(s + b, a)), (ONE, E(s + a, b))), "L")
    for i in range(1, j + 1):
        for l in range(1, n + 1):
            add(f"V[{i},{l}]", mat_add((ONE, E(n + i, l)), (-ONE, E(s + l, 2 * n + j + i))), "l_heis")
    for i in range(1, j + 1):
        for l in range(i, j + 1):
            add(f"Z[{i},{l}]", mat_add((ONE, E(n + i, 2 * n + j + l)), (ONE, E(n + l, 2 * n + j + i))), "z")
    sub["sp_part"] = sub["u_plus"] + sub["levi"] + sub["L"]
    sub["v_heis"] = sub["l_heis"] + sub["r_heis"]
    alg = _finish(
        f"g^({n},{j})", labels, mats, 2 * (n + j), sub, trace_block=n, meta={"n": n, "j": j}
    )
    # closure is enforced by the coordinate solver; the centre must be central
    for zi in sub["z"]:
        for b in range(alg.dim):
            if alg.structure(zi, b):
                raise AssertionError("Z is not central")  # internal construction bug
    return alg


def sp_embedding(big: LieAlgebra, small: LieAlgebra):
    """Map sp(2n) basis index -> g^(n,j) basis index for the sp-part."""
    return {i: big.index[lab] for i, lab in enumerate(small.labels)}


def check_antisymmetry(alg):
    bad = []
    for (a, b), v in alg.table.items():
        if alg.table.get((b, a)) != {k: -c for k, c in v.items()}:
            bad.append((alg.labels[a], alg.labels[b]))
    return bad


def check_jacobi_identity(alg, ordered=True):
    """Basis triples violating the Jacobi identity (empty list on success)."""
    bad = []
    n = alg.dim
    for a in range(n):
        for b in range(n) if ordered else range(a + 1, n):
            ab = alg.structure(a, b)
            for c in range(n) if ordered else range(b + 1, n):
                acc = {}
                for x, cx in ab.items():
                    acc = _axpy(acc, alg.structure(x, c), cx)
                for x, cx in alg.structure(b, c).items():
                    acc = _axpy(acc, alg.structure(x, a), cx)
                for x, cx in alg.structure(c, a).items():
                    acc = _axpy(acc, alg.structure(x, b), cx)
                if acc:
                    bad.append((alg.labels[a], alg.labels[b], alg.labels[c]))
    return bad


def check_realization(alg):
    """Pairs where the bracket table disagrees with the matrix commutator."""
    bad = []
    for a in range(alg.dim):
        for b in range(alg.dim):
            lhs = alg.matrix(LieElement(alg, alg.structure(a, b)))
            rhs = commutator(alg.matrices[a], alg.matrices[b])
            if lhs != rhs:
                bad.append((alg.labels[a], alg.labels[b]))
    return bad


def root_eigen_failures(alg):
    """Pairs (d, X_alpha) where [d, X_alpha] != alpha(d) X_alpha."""
    rd = alg.roots
    bad = []
    for root in rd.positive_roots:
        for k, d in enumerate(rd.cartan):
            for idx, sign in ((rd.x_index[root], 1), (rd.y_index[root], -1)):
                got = alg.bracket(alg.basis(d), alg.basis(idx))
                if got != alg.basis(idx) * (sign * root[k]):
                    bad.append((alg.labels[d], alg.labels[idx]))
    return bad
