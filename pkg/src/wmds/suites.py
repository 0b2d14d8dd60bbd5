"""Named property suites shared by the command line and the test-suite."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .chinta_gunnells import Report, random_localized_monomial, verify_braid, verify_cs_invariance, verify_involution
from .glue import WMDS, LambdaClassVector
from .residue import (
    FqPoly,
    Place,
    _const_chi,
    check_field,
    epsilon,
    gauss_sum,
    hilbert_symbol,
    irreducibles,
    reciprocity_product,
    symbol_places,
)
from .rootdata import build_root_datum, metaplectic_structure
from .scattering import line_samples, random_samples, verify_scattering


@dataclass(frozen=True)
class SuiteConfig:
    cartan_type: str
    n: int
    q: int | None = None
    deg_max: int = 2
    seed: int = 0
    samples: int | None = None
    rank: int | None = None

    @property
    def meta(self):
        return metaplectic_structure(build_root_datum(self.cartan_type, self.rank), self.n)

    def count(self, default: int) -> int:
        return default if self.samples is None else self.samples

    def wmds(self) -> WMDS:
        return WMDS(self.meta, self.q)


# -- finite-field suites -------------------------------------------------------------

def gauss_suite(q: int, n: int, degrees=(1, 2), tol_norm: float = 1e-9, tol_period: float = 1e-12) -> Report:
    """g_0 = -1, g_k g_{-k} = chi(-1)^k q_nu and g_k = g_{k+n} at each residue degree."""
    check_field(q, n)
    rep = Report("gauss", True, details={"q": q, "n": n, "degrees": list(degrees)})
    for d in degrees:
        qn = q ** d
        rep.checked += 1
        if gauss_sum(0, d, n, q) != -1:
            rep.passed = False
            rep.failures.append({"d": d, "kind": "g_0"})
        m1 = _const_chi(-1, q, n, d)
        for k in range(1, n):
            rep.checked += 2
            gk = gauss_sum(k, d, n, q)
            prod = gk * gauss_sum(-k, d, n, q)
            want = epsilon(m1 * k, n) * qn
            if abs(prod - want) > tol_norm * qn:
                rep.passed = False
                rep.failures.append({"d": d, "k": k, "kind": "norm", "got": prod})
            if abs(gauss_sum(k + n, d, n, q) - gk) > tol_period * max(1.0, abs(gk)):
                rep.passed = False
                rep.failures.append({"d": d, "k": k, "kind": "period"})
    return rep


def _random_poly(rng: random.Random, q: int, deg_max: int, monic: bool = False) -> FqPoly:
    d = rng.randint(0, deg_max)
    coeffs = [rng.randrange(q) for _ in range(d)] + [1 if monic else rng.randrange(1, q)]
    return FqPoly(q, coeffs)


def symbol_suite(q: int, n: int, count: int = 100, seed: int = 0, deg_max: int = 4) -> Report:
    """Unit pairs, (pi, pi), bimultiplicativity, antisymmetry and reciprocity, all exact."""
    check_field(q, n)
    rng = random.Random(seed)
    rep = Report("symbols", True, details={"q": q, "n": n, "pairs": count})

    def fail(kind, **kw):
        rep.passed = False
        rep.failures.append({"kind": kind, **kw})

    places = [Place(q, p) for d in (1, 2) for p in irreducibles(q, d)]
    for pl in places:
        rep.checked += 1
        if hilbert_symbol(pl.poly, pl.poly, pl, n) != _const_chi(-1, q, n, pl.degree):
            fail("pi-pi", place=str(pl))
    for _ in range(count):
        x, x2, y = (_random_poly(rng, q, deg_max) for _ in range(3))
        pls = symbol_places(x, x2, y) + [rng.choice(places)]
        for pl in pls:
            rep.checked += 3
            s = hilbert_symbol(x, y, pl, n)
            if (hilbert_symbol(x * x2, y, pl, n) - s - hilbert_symbol(x2, y, pl, n)) % n:
                fail("bimultiplicative", x=str(x), x2=str(x2), y=str(y), place=str(pl))
            if (s + hilbert_symbol(y, x, pl, n)) % n:
                fail("antisymmetry", x=str(x), y=str(y), place=str(pl))
            if not pl.is_infinite and x % pl.poly and y % pl.poly and s:
                fail("unit", x=str(x), y=str(y), place=str(pl))
        a, b = _random_poly(rng, q, deg_max, True), _random_poly(rng, q, deg_max, True)
        rep.checked += 1
        if reciprocity_product(a, b, n):
            fail("reciprocity", x=str(a), y=str(b))
    return rep


# -- registry -----------------------------------------------------------------------------

def _scattering(cfg: SuiteConfig) -> Report:
    meta = cfg.meta
    samples = [s for i in range(meta.rank) for s in line_samples(meta, i, -3, 3)]
    samples += random_samples(meta, cfg.count(20), cfg.seed)
    return verify_scattering(meta, samples)


def _invariance(cfg: SuiteConfig) -> Report:
    return verify_cs_invariance(cfg.meta)


def _braid(cfg: SuiteConfig) -> Report:
    meta = cfg.meta
    rng = random.Random(cfg.seed)
    xs = [random_localized_monomial(meta, rng) for _ in range(cfg.count(20))]
    rep = verify_braid(meta, xs)
    inv = verify_involution(meta, xs)
    rep.checked += inv.checked
    rep.passed = rep.passed and inv.passed
    rep.failures += inv.failures
    return rep


def _gauss(cfg: SuiteConfig) -> Report:
    return gauss_suite(cfg.q, cfg.n)


def _symbols(cfg: SuiteConfig) -> Report:
    return symbol_suite(cfg.q, cfg.n, cfg.count(100), cfg.seed)


def _twisted(cfg: SuiteConfig) -> Report:
    w = cfg.wmds()
    return w.verify_twisted_multiplicativity(w.random_coprime_pairs(cfg.count(50), cfg.seed))


def _gluing(cfg: SuiteConfig) -> Report:
    return cfg.wmds().verify_gluing(cfg.deg_max)


def _skip(name: str, reason: str) -> Report:
    return Report(name, True, details={"skipped": reason})


def subsum_classes(w: WMDS, limit: int) -> list[LambdaClassVector]:
    """The zero class plus classes supported at t with a single nonzero exponent vector."""
    t = Place(w.q, FqPoly.t(w.q))
    out = [LambdaClassVector(())]
    for k in sorted(w.support, key=lambda k: (sum(k), k)):
        cls = LambdaClassVector.build(w.meta, {t: tuple(-x for x in k)})
        if cls not in out:
            out.append(cls)
        if len(out) >= limit:
            break
    return out


def _subsum(cfg: SuiteConfig) -> Report:
    w = cfg.wmds()
    if not w.meta.is_dual_adjoint:
        return _skip("subsum", "metaplectic dual datum is not of adjoint type")
    rep = Report("subsum", True, details={"classes": []})
    for cls in subsum_classes(w, cfg.count(4)):
        sub = w.verify_subsum_identity(cls, cfg.deg_max)
        rep.checked += sub.checked
        rep.details["classes"].append({"class": str(cls), "fiber_size": sub.details["fiber_size"], "passed": sub.passed})
        if not sub.passed:
            rep.passed = False
            rep.failures += sub.failures
    return rep


def _fibers(cfg: SuiteConfig) -> Report:
    w = cfg.wmds()
    rep = w.regrouping(cfg.deg_max)
    rep.name = "fibers"
    if not w.meta.is_dual_adjoint:
        rep.details["constancy"] = "skipped: metaplectic dual datum is not of adjoint type"
        return rep
    fc = w.verify_fiber_constancy(cfg.deg_max)
    rep.checked += fc.checked
    rep.passed = rep.passed and fc.passed
    rep.failures += fc.failures
    return rep


def _factorizable(cfg: SuiteConfig) -> Report:
    w = cfg.wmds()
    return w.verify_factorizable(cfg.deg_max, w.random_coprime_pairs(cfg.count(50), cfg.seed), seed=cfg.seed)


# name -> (runner, needs q)
SUITES = {
    "scattering": (_scattering, False),
    "invariance": (_invariance, False),
    "braid": (_braid, False),
    "gauss": (_gauss, True),
    "symbols": (_symbols, True),
    "twisted": (_twisted, True),
    "gluing": (_gluing, True),
    "subsum": (_subsum, True),
    "fibers": (_fibers, True),
    "factorizable": (_factorizable, True),
}


def run_suite(name: str, cfg: SuiteConfig) -> Report:
    runner, needs_q = SUITES[name]
    if needs_q and cfg.q is None:
        return _skip(name, "no --q given")
    rep = runner(cfg)
    rep.name = name
    return rep
