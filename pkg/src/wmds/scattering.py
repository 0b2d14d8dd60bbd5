"""Rank-one scattering: the closed form for the Whittaker functional of an
intertwined vector against the Chinta-Gunnells prediction."""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .chinta_gunnells import Report, cg_simple
from .gauss_ring import GaussRing, GroupAlgebraElement, LocalizedElement
from .rootdata import MetaplecticStructure, res

Vector = tuple[int, ...]


def bullet(meta: MetaplecticStructure, i: int, xi: Sequence[int]) -> Vector:
    """s_i . xi = xi - (<xi, alpha_i> + 1) alpha_i^vee."""
    out = list(xi)
    out[i] -= meta.datum.pair_simple(i, xi) + 1
    return tuple(out)


def whittaker_closed_form(meta: MetaplecticStructure, i: int, xi: Sequence[int], g_sign: int = 1) -> LocalizedElement:
    """(1-v)/(1-e^{n_i a_i}) e^{s_i xi + res a_i} + v g_{(1+<xi,a_i>)Q_i} e^{s_i . xi}.

    ``g_sign=-1`` negates the Gauss-sum index (a deliberately wrong variant).
    """
    ring = GaussRing(meta.n)
    xi = tuple(xi)
    pair = meta.datum.pair_simple(i, xi)
    ni = meta.n_simple[i]
    first = list(meta.datum.reflect(i, xi))
    first[i] += res(ni, pair)
    term1 = LocalizedElement.monomial(ring, first, ring.one() - ring.v())
    term1 = term1.div_factor(0, tuple(-x for x in meta.tilde_simple[i]))
    scalar = ring.v() * ring.g(g_sign * (1 + pair) * meta.Q_simple[i])
    term2 = LocalizedElement.monomial(ring, bullet(meta, i, xi), scalar)
    return term1 + term2


def cg_rhs(meta: MetaplecticStructure, i: int, xi: Sequence[int]) -> LocalizedElement:
    """(1 - v e^{-n_i a_i}) / (1 - e^{n_i a_i}) * (s_i * e^xi)."""
    ring = GaussRing(meta.n)
    at = meta.tilde_simple[i]
    x = cg_simple(meta, i, GroupAlgebraElement.monomial(ring, tuple(xi)))
    return x.mul_factor(1, at).div_factor(0, tuple(-a for a in at))


def scattering_residual(meta: MetaplecticStructure, i: int, xi: Sequence[int], g_sign: int = 1) -> GroupAlgebraElement:
    lhs = whittaker_closed_form(meta, i, xi, g_sign)
    rhs = cg_rhs(meta, i, xi)
    common = lhs.den | rhs.den
    return lhs._expand_to(common) - rhs._expand_to(common)


def verify_scattering(meta: MetaplecticStructure, samples: Iterable[tuple[int, Sequence[int]]], g_sign: int = 1) -> Report:
    rep = Report("scattering", True)
    for i, xi in samples:
        rep.checked += 1
        diff = scattering_residual(meta, i, xi, g_sign)
        if not diff.is_zero():
            rep.passed = False
            rep.failures.append({"i": i, "xi": tuple(xi), "residual": str(diff)})
    return rep


def random_samples(meta: MetaplecticStructure, count: int, seed: int = 0, bound: int = 5) -> list[tuple[int, Vector]]:
    """``count`` random coweights, each paired with every simple index."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        xi = tuple(rng.randint(-bound, bound) for _ in range(meta.rank))
        for i in range(meta.rank):
            out.append((i, xi))
    return out


def line_samples(meta: MetaplecticStructure, i: int, lo: int, hi: int) -> list[tuple[int, Vector]]:
    """xi = k alpha_i^vee for lo <= k <= hi."""
    out = []
    for k in range(lo, hi + 1):
        xi = [0] * meta.rank
        xi[i] = k
        out.append((i, tuple(xi)))
    return out
