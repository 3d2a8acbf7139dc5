"""Verification suites: parameter expansion and per-point check functions."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from gmpy2 import mpq

from . import scalars
from .formal_forms import candidate_forms, monomial_sample, monomial_test_set, verify_bol_extension
from .harish_chandra import check_center_projection
from .jacobi_maps import (
    JacobiMaps,
    build_heisenberg_matrices,
    check_ad_invariance,
    check_bracket_relation,
    check_det_transfer,
    check_levi_trace_lemma,
    check_star_action,
    check_T0_equivariance,
    check_that_commutes,
    check_transfer_coherence,
    poly_det,
)
from .lie import check_antisymmetry, check_jacobi_identity, check_realization
from .modules import (
    cofactor_relation_check,
    delta_eigencheck,
    holomorphic_set,
    index_matrix,
    jacobi_algebra,
    jacobi_module,
    recovery_scan,
    siegel_module,
    sp_algebra,
)
from .report import check
from .scalars import KAPPA, PI_HAT, render
from .uea import PBWContext, build_gelfand, build_laplace, central_failures, reorder, sp_context

SUITES = (
    "siegel-recovery",
    "delta-eigen",
    "cofactor",
    "center-projection",
    "jacobi-maps",
    "jacobi-recovery",
    "bol-extension",
    "algebra-sanity",
)

JACOBI_PAIRS = [[1, 1], [2, 1], [1, 2]]


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    suite: str
    n: list = field(default_factory=lambda: [1, 2])
    j: list | None = None
    pairs: list | None = None
    r_max: int | None = None
    m_max: int | None = None
    l_max: int = 2
    indices: list | None = None
    symbolic_k: bool = False
    derive: bool = False
    jobs: int = 1
    seed: int = 0
    out: str | None = None

    def validate(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if any(not isinstance(x, int) or x < 1 for x in self.n):
            raise ConfigError("n values must be positive integers")
        for M in self.indices or []:
            try:
                index_matrix([[scalars.scalar(scalars.parse(str(x))) for x in row] for row in M])
            except Exception as exc:  # noqa: BLE001 - surfaced as a config error
                raise ConfigError(str(exc)) from None
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        return self

    def jacobi_pairs(self):
        if self.pairs is not None:
            return [tuple(p) for p in self.pairs]
        if self.j is not None:
            return [(n, j) for n in self.n for j in self.j]
        return [tuple(p) for p in JACOBI_PAIRS]

    def index_list(self, j):
        if self.indices is not None:
            out = [M for M in self.indices if len(M) == j]
            return out
        ident = [[1 if a == b else 0 for b in range(j)] for a in range(j)]
        return [ident] + ([[[2, 1], [1, 1]], [[2, 1], [1, 2]]] if j == 2 else [[[2]]] if j == 1 else [])

    def public(self):
        d = {
            "n": self.n,
            "pairs": [list(p) for p in self.jacobi_pairs()],
            "r_max": self.r_max,
            "m_max": self.m_max,
            "l_max": self.l_max,
            "indices": self.indices,
            "symbolic_k": self.symbolic_k,
            "derive": self.derive,
            "seed": self.seed,
        }
        return d


def _M(raw):
    return index_matrix([[scalars.scalar(scalars.parse(str(x))) for x in row] for row in raw])


def _fmt_set(s):
    return "{" + ", ".join(str(x) for x in sorted(s)) + "}"


def _r(x):
    return "none" if x is None else render(x)


# -- per-point tasks --------------------------------------------------------------


def task_siegel(n, r, m_max):
    k = mpq(-r) + mpq(n - 1, 2)
    p = {"n": n, "r": r, "k": render(k)}
    rows = recovery_scan(siegel_module(n, k), m_max)
    hol = holomorphic_set(rows)
    table = [f"m={x.m} weight={_r(x.weight)} holomorphic={x.holomorphic} nonzero={x.nonzero}" for x in rows]
    want_w = mpq(r + 2) + mpq(n - 1, 2)
    w = rows[r + 1].weight if r + 1 <= m_max else None
    ladder = all(x.weight == k + 2 * x.m for x in rows)
    return [
        check("siegel.holomorphic-set", p, hol == {0, r + 1}, _fmt_set({0, r + 1}), _fmt_set(hol), "PAPER", table),
        check("siegel.weight-at-recovery", p, w == want_w, render(want_w), _r(w), "PAPER"),
        check("siegel.weight-ladder", p, ladder, "k+2m", "k+2m" if ladder else "broken", "DERIVED"),
        check("siegel.free", p, all(x.nonzero for x in rows), "nonzero", "nonzero" if all(x.nonzero for x in rows) else "zero", "DERIVED"),
    ]


def task_siegel_symbolic(n, m_max):
    rows = recovery_scan(siegel_module(n, KAPPA), m_max)
    out = []
    for x in rows[1:]:
        want = [mpq(-(x.m - 1)) + mpq(n - 1, 2)]
        poly = x.obstruction_poly
        deg = max((sum(e for _, e in mono) for mono in scalars.poly_terms(poly)), default=0) if poly else 0
        ok = x.obstruction_roots == want and deg == len(want)
        p = {"n": n, "m": x.m, "k": "symbolic"}
        out.append(
            check(
                "siegel.obstruction-roots", p, ok, "[" + ", ".join(render(v) for v in want) + "]",
                "[" + ", ".join(render(v) for v in x.obstruction_roots) + "]", "PAPER",
                [f"gcd of obstruction coefficients: {_r(poly)}"],
            )
        )
    return out


def task_delta(n, r_max):
    recs = delta_eigencheck(siegel_module(n, KAPPA), r_max)
    out = []
    for e in recs:
        p = {"n": n, "k": "symbolic"} | ({} if e.r is None else {"r": e.r})
        out.append(check(f"delta.{e.label}", p, e.ok, render(e.expected), _r(e.actual), "PAPER"))
    return out


def task_cofactor(n, r):
    p = {"n": n, "r": r}
    rep = cofactor_relation_check(n, r)
    want_dim = n * (n + 1) // 2
    out = [
        check("cofactor.uniform-C", p | {"k": render(rep.k)}, rep.uniform, "uniform",
              "uniform" if rep.uniform else "non-uniform", "PAPER", [f"C = {_r(rep.C)}"]),
        check("cofactor.span-dim", p | {"k": render(rep.k)}, rep.span_dim == want_dim, str(want_dim), str(rep.span_dim), "PAPER"),
    ]
    sym = cofactor_relation_check(n, r, KAPPA, "symmetric")
    want_C = -2 * (r + 1) * (KAPPA + r - mpq(n - 1, 2))
    out.append(
        check("cofactor.generic-symmetric-C", p | {"k": "symbolic"}, sym.uniform and sym.C == want_C,
              render(want_C), _r(sym.C), "DERIVED")
    )
    lit = cofactor_relation_check(n, r, KAPPA, "literal")
    ratios = []
    for (i, jj), (lhs, rhs) in sorted(lit.pairs.items()):
        ratios.append(f"({i},{jj}): {_r(lhs.proportional_to(rhs)) if rhs else 'rhs=0'}")
    out.append(
        check("cofactor.generic-literal", p | {"k": "symbolic"}, lit.uniform, "uniform",
              "uniform" if lit.uniform else "off-diagonal ratio is twice the diagonal one", "DERIVED",
              ratios, derived=True)
    )
    return out


def task_center(n, which):
    ctx = sp_context(n)
    D = build_laplace(ctx)[0] if which == "Delta" else build_gelfand(ctx, 4)
    rep = check_center_projection(D, n)
    p = {"n": n, "D": which}
    out = [
        check("center.membership", p, rep.member, "member", "member" if rep.member else "not member", "DERIVED",
              [f"pr1(gamma'(D)) = {render(rep.projected)}"] + [str(o) for o in rep.offenders[:5]]),
        check("center.weyl-invariant", p, rep.weyl_invariant, "invariant",
              "invariant" if rep.weyl_invariant else "not invariant", "DERIVED", [f"gamma(D) = {render(rep.gamma)}"]),
        check("center.action", p, rep.action_ok, render(rep.expected_value), _r(rep.action_value),
              "PAPER" if which == "Delta" else "DERIVED"),
    ]
    if which == "Delta":
        k = KAPPA
        want = k * n * (k - n - 1)
        out.append(check("center.delta-value", p, rep.expected_value == want, render(want), render(rep.expected_value), "PAPER"))
    return out


def task_jacobi_structure(n, j, derive):
    pj = {"n": n, "j": j}
    out = []
    alg = jacobi_algebra(n, j)
    try:
        build_heisenberg_matrices(alg)
        hm_ok, hm_msg = True, "ok"
    except AssertionError as exc:
        hm_ok, hm_msg = False, str(exc)
    out.append(check("jmaps.heisenberg-matrices", pj, hm_ok, "ok", hm_msg, "DERIVED"))
    eq = check_T0_equivariance(n, j)
    out.append(check("jmaps.T0-equivariance", pj, eq.ok, "equivariant", "equivariant" if eq.ok else f"fails at {eq.failures}", "DERIVED"))
    jm = JacobiMaps(alg)
    for rep in (check_ad_invariance(n, j, jm), check_that_commutes(n, j, jm), check_bracket_relation(n, j, jm)):
        out.append(check(f"jmaps.{rep.name}", pj, rep.ok, f"holds on {rep.checked} pairs",
                         f"holds on {rep.checked} pairs" if rep.ok else f"fails at {rep.failures[:4]}", "DERIVED"))
    det = check_det_transfer(n, j, jm)
    out.append(check("jmaps.det-transfer", pj, det.proportional and det.entries_commute, "proportional",
                     "proportional" if det.proportional else "not proportional by a scalar", "PAPER",
                     [f"kappa = {_r(det.kappa)}", f"with a single det Z on the left: kappa = {_r(det.corrected_kappa)}"]))
    if det.kappa is not None:
        out.append(check("jmaps.det-transfer-kappa", pj, det.kappa == 1, "1", render(det.kappa), "PAPER", derived=derive))
    out.append(check("jmaps.det-transfer-single-detZ", pj, det.corrected_kappa == 2**n, render(mpq(2**n)),
                     _r(det.corrected_kappa), "DERIVED"))
    lv = check_levi_trace_lemma(n, j)
    out.append(check("jmaps.adjugate-trace", pj, lv.adjugate_identity, "j det Z",
                     "j det Z" if lv.adjugate_identity else "mismatch", "TRIVIAL"))
    return out


def task_jacobi_star(n, j, M, derive):
    Mx = _M(M)
    p = {"n": n, "j": j, "M": M}
    out = []
    st = check_star_action(n, j, Mx)
    out.append(check("jmaps.star-law", p, not st.law_failures, "Lie action",
                     "Lie action" if not st.law_failures else f"fails at {st.law_failures[:4]}", "DERIVED"))
    want_c = 2 * (2 * PI_HAT) ** j * scalars.scalar(poly_det(Mx))
    out.append(check("jmaps.c-star-law", p, st.c_star == want_c, render(want_c), render(st.c_star), "DERIVED"))
    out.append(check("jmaps.c-star-vs-2detM", p, st.c_star == st.stated_c, render(st.stated_c), render(st.c_star), "PAPER",
                     [f"discrepancy factor {render(st.discrepancy)}"], derived=derive))
    want_w = KAPPA - mpq(j, 2)
    out.append(check("jmaps.star-weight", p, st.weight_ok, render(want_w), _r(st.star_weight), "PAPER"))
    out.append(check("jmaps.star-holomorphic", p, st.holomorphic_ok, "holomorphic",
                     "holomorphic" if st.holomorphic_ok else "not holomorphic", "PAPER"))
    lv = check_levi_trace_lemma(n, j, Mx)
    half = None if lv.s is None else lv.s / 2
    out.append(check("jmaps.levi-trace-s", p, lv.uniform and half == mpq(j, 2), render(mpq(j, 2)), _r(half), "PAPER",
                     [f"lambda(T(diag(X,-tX))) v0 = {_r(lv.s)} Tr(X) det(Z) v0"]))
    for r in (1, 2):
        co = check_transfer_coherence(n, j, r, Mx)
        out.append(check("jmaps.star-dot-coherence", p | {"r": r}, co.ok, _fmt_set({0, r}),
                         f"dot {_fmt_set(co.dot_set)} star {_fmt_set(co.star_set)}", "DERIVED",
                         [f"m={m}: star/dot ratio {_r(x)}" for m, x in enumerate(co.ratios)]))
    return out


def task_jacobi_recovery(n, j, M, r, m_max):
    k = mpq(-r) + mpq(n + j + 1, 2)
    p = {"n": n, "j": j, "M": M, "r": r, "k": render(k)}
    rows = recovery_scan(jacobi_module(n, j, k, _M(M)), m_max)
    hol = holomorphic_set(rows)
    table = [f"m={x.m} weight={_r(x.weight)} holomorphic={x.holomorphic} index={x.index_ok}" for x in rows]
    want_w = mpq(r) + mpq(n + j + 1, 2)
    w = rows[r].weight
    idx = all(x.index_ok for x in rows)
    return [
        check("jrec.holomorphic-set", p, hol == {0, r}, _fmt_set({0, r}), _fmt_set(hol), "PAPER", table),
        check("jrec.weight-at-recovery", p, w == want_w, render(want_w), _r(w), "PAPER"),
        check("jrec.index-persists", p, idx, "2pi_i*M", "2pi_i*M" if idx else "broken", "PAPER"),
        check("jrec.weight-ladder", p, all(x.weight == k + 2 * x.m for x in rows), "k+2m",
              "k+2m" if all(x.weight == k + 2 * x.m for x in rows) else "broken", "DERIVED"),
    ]


def task_bol(n, j, M, l, derive, degree=2, seed=0):
    Mx = _M(M)
    p = {"n": n, "j": j, "M": M, "l": l}
    rep = verify_bol_extension(n, j, Mx, l, monomial_test_set(n, j, degree))
    forms = candidate_forms(n, j, Mx)
    out = [
        check("bol.uniform-c", p, rep.holds, "uniform", "uniform" if rep.holds else "non-uniform", "DERIVED",
              [f"c = {_r(rep.c)}", f"nonzero instances {rep.nonzero}/{rep.checked}"] + [str(w) for w in rep.witnesses[:4]]),
        check("bol.c-form", p, "stated" in rep.matched, render(forms["stated"]), _r(rep.c), "PAPER",
              [f"matched forms: {', '.join(rep.matched) or 'none'}"], derived=derive),
        check("bol.c-reciprocal-form", p, "reciprocal" in rep.matched, render(forms["reciprocal"]), _r(rep.c), "DERIVED"),
    ]
    # low-degree sets are mostly annihilated once 2nl > 2; rerun on sets reaching degree 2nl
    if l == 1:
        deep_set, tag = monomial_test_set(n, j, 2 * n + 1), f"<= {2 * n + 1}"
    else:
        deep_set, tag = monomial_sample(n, j, 2 * n * l, 12, seed=seed), f"{2 * n * l} (12 sampled)"
    deep = verify_bol_extension(n, j, Mx, l, deep_set, c=rep.c)
    out.append(check("bol.uniform-c-higher-degree", p, deep.holds and deep.nonzero > 0, "uniform",
                     "uniform" if deep.holds else "non-uniform", "DERIVED",
                     [f"degree {tag}", f"nonzero instances {deep.nonzero}/{deep.checked}"] + [str(w) for w in deep.witnesses[:4]]))
    return out


def _random_element(ctx, rng, degree):
    dim = ctx.algebra.dim
    u = ctx.zero()
    for _ in range(3):
        term = ctx.scalar(mpq(rng.randint(-3, 3), rng.randint(1, 3)))
        for _ in range(rng.randint(0, degree)):
            term = term * ctx.gen(rng.randrange(dim))
        u = u + term
    return u


def task_sanity(kind, arg, seed=0):
    out = []
    if kind == "jacobi-identity":
        alg = sp_algebra(arg[0]) if len(arg) == 1 else jacobi_algebra(*arg)
        p = {"algebra": alg.name}
        bad = check_jacobi_identity(alg)
        out.append(check("sanity.jacobi-identity", p, not bad, "0 failures", f"{len(bad)} failures", "DERIVED"))
        bad = check_antisymmetry(alg)
        out.append(check("sanity.antisymmetry", p, not bad, "0 failures", f"{len(bad)} failures", "TRIVIAL"))
        bad = check_realization(alg)
        out.append(check("sanity.realization", p, not bad, "0 failures", f"{len(bad)} failures", "DERIVED"))
    elif kind == "centrality":
        n = arg[0]
        ctx = sp_context(n)
        bad = central_failures(build_laplace(ctx)[0])
        out.append(check("sanity.delta-central", {"n": n}, not bad, "central", "central" if not bad else f"fails at {bad}", "DERIVED"))
        if n <= 2:
            try:
                build_gelfand(ctx, 4)
                ok = True
            except AssertionError:
                ok = False
            out.append(check("sanity.gelfand-C4-central", {"n": n}, ok, "central", "central" if ok else "not central", "DERIVED"))
    elif kind == "pbw":
        rng = random.Random(seed)
        ctx = sp_context(2)
        fails = 0
        for _ in range(25):
            a, b, c = (_random_element(ctx, rng, 2) for _ in range(3))
            if (a * b) * c != a * (b * c):
                fails += 1
        out.append(check("sanity.associativity", {"algebra": "sp(4)", "samples": 25, "seed": seed}, not fails,
                         "0 failures", f"{fails} failures", "DERIVED"))
        order = list(range(ctx.algebra.dim))
        rng.shuffle(order)
        fails = 0
        for _ in range(25):
            u = _random_element(ctx, rng, 3)
            if reorder(reorder(u, order), ctx) != u:
                fails += 1
        out.append(check("sanity.reorder-round-trip", {"algebra": "sp(4)", "samples": 25, "seed": seed}, not fails,
                         "0 failures", f"{fails} failures", "DERIVED"))
    return out


# -- expansion ----------------------------------------------------------------------


def expand(cfg: SuiteConfig):
    """List of (function, kwargs) points for the configured suite."""
    s = cfg.suite
    pts = []
    if s == "siegel-recovery":
        r_max = 2 if cfg.r_max is None else cfg.r_max
        for n in cfg.n:
            for r in range(r_max + 1):
                if n >= 3 and r > 1 and cfg.r_max is None:
                    continue
                pts.append((task_siegel, {"n": n, "r": r, "m_max": cfg.m_max if cfg.m_max is not None else r + 3}))
            if cfg.symbolic_k:
                pts.append((task_siegel_symbolic, {"n": n, "m_max": cfg.m_max or 4}))
    elif s == "delta-eigen":
        for n in cfg.n:
            pts.append((task_delta, {"n": n, "r_max": (3 if n <= 2 else 0) if cfg.r_max is None else cfg.r_max}))
    elif s == "cofactor":
        for n in cfg.n:
            for r in range((1 if cfg.r_max is None else cfg.r_max) + 1):
                pts.append((task_cofactor, {"n": n, "r": r}))
    elif s == "center-projection":
        for n in cfg.n:
            pts.append((task_center, {"n": n, "which": "Delta"}))
            if n == 2:
                pts.append((task_center, {"n": n, "which": "C4"}))
    elif s == "jacobi-maps":
        for n, j in cfg.jacobi_pairs():
            pts.append((task_jacobi_structure, {"n": n, "j": j, "derive": cfg.derive}))
            for M in cfg.index_list(j):
                pts.append((task_jacobi_star, {"n": n, "j": j, "M": M, "derive": cfg.derive}))
    elif s == "jacobi-recovery":
        for n, j in cfg.jacobi_pairs():
            for M in cfg.index_list(j):
                for r in range(1, (2 if cfg.r_max is None else cfg.r_max) + 1):
                    pts.append((task_jacobi_recovery, {"n": n, "j": j, "M": M, "r": r,
                                                       "m_max": cfg.m_max if cfg.m_max is not None else r + 2}))
    elif s == "bol-extension":
        for n, j in cfg.jacobi_pairs():
            for M in cfg.index_list(j):
                for l in range(1, cfg.l_max + 1):
                    pts.append((task_bol, {"n": n, "j": j, "M": M, "l": l, "derive": cfg.derive, "seed": cfg.seed}))
    elif s == "algebra-sanity":
        for N in (1, 2, 3):
            pts.append((task_sanity, {"kind": "jacobi-identity", "arg": (N,)}))
        for n, j in ((1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)):
            pts.append((task_sanity, {"kind": "jacobi-identity", "arg": (n, j)}))
        for n in (1, 2, 3):
            pts.append((task_sanity, {"kind": "centrality", "arg": (n,)}))
        pts.append((task_sanity, {"kind": "pbw", "arg": (), "seed": cfg.seed}))
    return pts


def run_point(point):
    fn, kwargs = point
    t = time.perf_counter()
    recs = fn(**kwargs)
    dt = (time.perf_counter() - t) / max(len(recs), 1)
    for r in recs:
        r.elapsed = dt
    return recs


__all__ = ["SUITES", "ConfigError", "SuiteConfig", "expand", "run_point", "PBWContext"]
