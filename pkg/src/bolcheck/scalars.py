"""Exact scalars: rational functions in named formal parameters over Q.

A scalar is either a bare ``gmpy2.mpq`` (the canonical form of every
parameter-free value) or an :class:`ExactScalar` holding a reduced
numerator/denominator pair of sparse polynomials.  Keeping constants as
``mpq`` matters: almost every coefficient met by the straightening code is a
plain rational, and ``mpq`` arithmetic is two orders of magnitude faster than
any wrapper.

Polynomials are dicts ``{monomial: mpq}`` where a monomial is a tuple of
``(name, exponent)`` pairs sorted by name.  The two default parameters are
``2pi_i`` (a formal stand-in for 2*pi*i) and ``k`` (a generic weight).
"""

from __future__ import annotations

import ast
import re
from functools import lru_cache

from gmpy2 import mpq

__all__ = [
    "ExactScalar",
    "arith",
    "from_terms",
    "ScalarError",
    "PI_HAT",
    "KAPPA",
    "param",
    "scalar",
    "Q",
    "substitute",
    "derivative",
    "render",
    "parse",
    "is_scalar",
    "poly_terms",
    "parameters",
    "rational_roots",
]

ZERO = mpq(0)
ONE = mpq(1)
_MPQ = type(ONE)
_ONE_POLY = {(): ONE}


class ScalarError(ZeroDivisionError):
    """Division by zero, or a pole hit by substitution."""


# -- sparse polynomial helpers ------------------------------------------------


@lru_cache(maxsize=65536)
def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for name, e in b:
        out[name] = out.get(name, 0) + e
    return tuple(sorted(out.items()))


def _mono_key(m):
    return (sum(e for _, e in m), m)


def _padd(a, b, sign=1):
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, ZERO) + c if sign > 0 else out.get(m, ZERO) - c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pmul(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = _mono_mul(m1, m2)
            v = out.get(m, ZERO) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _pscale(a, c):
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}


def _is_const(p):
    return not p or (len(p) == 1 and () in p)


def _const(p):
    return p.get((), ZERO)


def _names(*polys):
    names = set()
    for p in polys:
        for m in p:
            names.update(n for n, _ in m)
    return sorted(names)


def _to_sympy(polys):
    from sympy import QQ
    from sympy.polys.rings import ring

    names = _names(*polys)
    R = ring(",".join(f"x{i}" for i in range(len(names))) or "x0", QQ)[0]
    index = {n: i for i, n in enumerate(names)}
    nvars = max(len(names), 1)
    out = []
    for p in polys:
        d = {}
        for m, c in p.items():
            exps = [0] * nvars
            for n, e in m:
                exps[index[n]] = e
            d[tuple(exps)] = QQ(int(c.numerator), int(c.denominator))
        out.append(R.from_dict(d) if d else R.zero)
    return R, names, out


def _from_sympy(poly, names):
    out = {}
    for exps, c in poly.terms():
        m = tuple((names[i], e) for i, e in enumerate(exps) if e)
        out[m] = mpq(int(c.numerator), int(c.denominator))
    return out


def _monic(den):
    lead = den[max(den, key=_mono_key)]
    return lead


def _make(num, den=None):
    """Canonical scalar from a numerator/denominator pair."""
    if not num:
        return ZERO
    if den is None or _is_const(den):
        if den is not None:
            d = _const(den)
            if d != 1:
                num = _pscale(num, 1 / d)
        if _is_const(num):
            return _const(num)
        return ExactScalar._raw(num, _ONE_POLY)
    _, names, (sn, sd) = _to_sympy([num, den])
    _, cn, cd = sn.cofactors(sd)
    num, den = _from_sympy(cn, names), _from_sympy(cd, names)
    lead = _monic(den)
    if lead != 1:
        num = _pscale(num, 1 / lead)
        den = _pscale(den, 1 / lead)
    if _is_const(den):
        return _make(num)
    return ExactScalar._raw(num, den)


def _parts(x):
    if isinstance(x, ExactScalar):
        return x.num, x.den
    x = _coerce_const(x)
    return ({(): x} if x else {}), _ONE_POLY


def _coerce_const(x):
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, ExactScalar):
        raise TypeError("not a constant")
    try:
        return mpq(x)
    except (TypeError, ValueError) as exc:
        raise TypeError(f"not an exact scalar: {x!r}") from exc


class ExactScalar:
    """Non-constant rational function in named parameters (canonical form)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, *args, **kwargs):
        raise TypeError("use scalar(), param() or arithmetic to build scalars")

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @property
    def is_polynomial(self):
        return self.den is _ONE_POLY or _is_const(self.den)

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, ExactScalar):
            try:
                other = _coerce_const(other)
            except TypeError:
                return NotImplemented
            if not other:
                return self
            if self.is_polynomial:
                return _make(_padd(self.num, {(): other}))
            return _make(_padd(self.num, _pscale(self.den, other)), self.den)
        if self.den == other.den:
            return _make(_padd(self.num, other.num), self.den)
        return _make(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw({m: -c for m, c in self.num.items()}, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            return self + (-other)
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ExactScalar):
            try:
                other = _coerce_const(other)
            except TypeError:
                return NotImplemented
            if not other:
                return ZERO
            return ExactScalar._raw(_pscale(self.num, other), self.den)
        if self.is_polynomial and other.is_polynomial:
            return _make(_pmul(self.num, other.num))
        return _make(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        n2, d2 = _parts(other)
        if not n2:
            raise ScalarError("division by zero")
        if _is_const(n2) and _is_const(d2):
            return self * (_const(d2) / _const(n2))
        return _make(_pmul(self.num, d2), _pmul(self.den, n2))

    def __rtruediv__(self, other):
        n1, d1 = _parts(other)
        return _make(_pmul(n1, self.den), _pmul(d1, self.num))

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return ONE / (self ** (-e))
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, ExactScalar):
            return self.num == other.num and self.den == other.den
        return False

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (frozenset(self.num.items()), frozenset(self.den.items()))
            )
        return self._hash

    def __bool__(self):
        return True

    def __repr__(self):
        return f"ExactScalar({render(self)!r})"

    def __str__(self):
        return render(self)


# -- constructors ---------------------------------------------------------------


def param(name: str):
    """The formal parameter ``name`` as a scalar."""
    return ExactScalar._raw({((name, 1),): ONE}, _ONE_POLY)


PI_HAT = param("2pi_i")
KAPPA = param("k")


def Q(a, b=1):
    return mpq(a, b)


def scalar(x):
    """Coerce ints, Fractions, strings and scalars to canonical form."""
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, str):
        return parse(x)
    return _coerce_const(x)


def is_scalar(x):
    return isinstance(x, (ExactScalar, _MPQ, int))


def arith(a, b, op):
    """``op`` is one of ``add``, ``sub``, ``mul``, ``div``."""
    a, b = scalar(a), scalar(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ScalarError(f"division of {render(a)} by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def poly_terms(x):
    """Terms ``{monomial: mpq}`` of a polynomial scalar."""
    if isinstance(x, ExactScalar):
        if not x.is_polynomial:
            raise ValueError(f"not a polynomial: {render(x)}")
        return x.num
    x = _coerce_const(x)
    return {(): x} if x else {}


def parameters(x):
    if isinstance(x, ExactScalar):
        return _names(x.num, x.den)
    return []


def from_terms(terms):
    return _make({m: _coerce_const(c) for m, c in terms.items() if c})


# -- evaluation -------------------------------------------------------------------


def _eval_poly(p, bindings):
    total = ZERO
    for m, c in p.items():
        t = c
        for name, e in m:
            v = bindings.get(name)
            t = t * (param(name) if v is None else v) ** e
        total = total + t
    return total


def substitute(a, bindings):
    """Evaluate ``a`` under ``{name: scalar}``; unbound names pass through."""
    if not isinstance(a, ExactScalar):
        return _coerce_const(a)
    bindings = {k: scalar(v) for k, v in bindings.items()}
    if not bindings:
        return a
    num = _eval_poly(a.num, bindings)
    if a.is_polynomial:
        return num
    den = _eval_poly(a.den, bindings)
    if not den:
        raise ScalarError(f"denominator of {render(a)} vanishes under substitution")
    return num / den


def _dpoly(p, name):
    out = {}
    for m, c in p.items():
        for i, (n, e) in enumerate(m):
            if n == name:
                nm = m[:i] + (((n, e - 1),) if e > 1 else ()) + m[i + 1 :]
                out[nm] = out.get(nm, ZERO) + c * e
                break
    return {m: c for m, c in out.items() if c}


def derivative(a, name):
    """Partial derivative with respect to the parameter ``name``."""
    if not isinstance(a, ExactScalar):
        return ZERO
    if a.is_polynomial:
        return _make(_dpoly(a.num, name))
    num = _padd(_pmul(_dpoly(a.num, name), a.den), _pmul(a.num, _dpoly(a.den, name)), -1)
    return _make(num, _pmul(a.den, a.den))


def rational_roots(a, name="k"):
    """Rational roots of the numerator of ``a`` viewed in ``name``.

    Only meaningful when ``name`` is the sole parameter; returns a sorted list
    (multiplicities dropped).
    """
    if not isinstance(a, ExactScalar):
        return []
    from sympy import Poly, Rational, Symbol, roots

    x = Symbol(name)
    if set(parameters(a)) - {name}:
        raise ValueError("rational_roots needs a univariate scalar")
    expr = 0
    for m, c in a.num.items():
        t = Rational(int(c.numerator), int(c.denominator))
        for _, e in m:
            t = t * x**e
        expr += t
    found = roots(Poly(expr, x), filter="Q")
    return sorted(mpq(int(r.p), int(r.q)) for r in found)


# -- text form -------------------------------------------------------------------


def _render_const(c):
    c = _coerce_const(c)
    return str(c)


def _render_poly(p):
    if not p:
        return "0"
    parts = []
    for m in sorted(p, key=lambda m: (-sum(e for _, e in m), m)):
        c = p[m]
        factors = [n if e == 1 else f"{n}^{e}" for n, e in m]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        parts.append(("-" if c < 0 else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def render(a):
    """Deterministic text: ``3``, ``-1/2``, ``k^2 - 1``, ``(k)/(k - 1)``."""
    if not isinstance(a, ExactScalar):
        return _render_const(a)
    if a.is_polynomial:
        return _render_poly(a.num)
    return f"({_render_poly(a.num)})/({_render_poly(a.den)})"


_PI_TOKEN = re.compile(r"(?<![A-Za-z0-9_])2pi_i(?![A-Za-z0-9_])")


def parse(text: str):
    """Inverse of :func:`render` (also accepts ``**`` and parentheses)."""
    src = _PI_TOKEN.sub("__pi_hat__", text.strip()).replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse scalar {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return mpq(node.value)
        if isinstance(node, ast.Name):
            return PI_HAT if node.id == "__pi_hat__" else param(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = ev(node.left)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError(f"non-integer exponent in {text!r}")
                return left ** node.right.value
            right = ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right:
                    raise ScalarError(f"division by zero in {text!r}")
                return left / right
        raise ValueError(f"unsupported syntax in scalar {text!r}")

    return ev(tree)
