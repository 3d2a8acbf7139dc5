"""Dense exact linear algebra over scalars (mpq or ExactScalar entries)."""

from itertools import permutations

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)


def perm_sign(p):
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def signed_permutations(n):
    for p in permutations(range(n)):
        yield perm_sign(p), p


def _row_reduce(rows):
    """Return (reduced copy, pivot columns, swap parity) after forward elimination."""
    a = [list(r) for r in rows]
    m = len(a)
    ncols = len(a[0]) if a else 0
    pivots = []
    swaps = 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            swaps += 1
        inv = ONE / a[r][c]
        for i in range(r + 1, m):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots, swaps


def rank(rows):
    if not rows:
        return 0
    return len(_row_reduce(rows)[1])


def det(rows):
    n = len(rows)
    if n == 0:
        return ONE
    a, pivots, swaps = _row_reduce(rows)
    if len(pivots) < n:
        return ZERO
    out = ONE if swaps % 2 == 0 else -ONE
    for i in range(n):
        out = out * a[i][i]
    return out


def inverse(rows):
    n = len(rows)
    aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = ONE / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def adjugate(rows):
    """Classical adjoint by cofactors; valid for singular input too."""
    n = len(rows)
    if n == 1:
        return [[ONE]]
    out = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:i] + r[i + 1 :] for k, r in enumerate(rows) if k != j]
            out[i][j] = (-1) ** (i + j) * det(minor)
    return out


def matmul(a, b):
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), ZERO) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def transpose(a):
    return [list(r) for r in zip(*a)]


def solve_combination(vectors, target):
    """Coefficients ``c`` with ``sum(c[i] * vectors[i]) == target``, or None.

    Vectors are dicts ``{key: scalar}``.
    """
    keys = sorted({k for v in vectors for k in v} | set(target), key=repr)
    n = len(vectors)
    rows = [[v.get(k, ZERO) for v in vectors] + [target.get(k, ZERO)] for k in keys]
    a, pivots, _ = _row_reduce(rows)
    if n in pivots:
        return None
    # back substitution; free variables set to zero
    coef = [ZERO] * n
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        s = a[r][n] - sum((a[r][j] * coef[j] for j in range(c + 1, n)), ZERO)
        coef[c] = s / a[r][c]
    return coef
