"""The Chinta-Gunnells W-action and the metaplectic Casselman-Shalika element."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .gauss_ring import (
    GaussRing,
    GaussScalar,
    GroupAlgebraElement,
    LocalizedElement,
    NotDivisible,
    _add_into,
)
from .rootdata import (
    BasedRootDatum,
    MetaplecticStructure,
    WeylGroupElement,
    build_root_datum,
    inversion_coroots,
    metaplectic_structure,
    res,
)

Vector = tuple[int, ...]


class NotPolynomial(ArithmeticError):
    """The Casselman-Shalika fraction failed to reduce to a polynomial."""

    def __init__(self, remainder, message="Casselman-Shalika sum is not a polynomial"):
        super().__init__(message)
        self.remainder = remainder


class Engine:
    """Caches the data needed to apply the action for one (datum, n)."""

    def __init__(self, meta: MetaplecticStructure):
        self.meta = meta
        self.datum = meta.datum
        self.ring = GaussRing(meta.n)
        self.rank = meta.rank
        r = self.rank
        self._unit = [tuple(int(i == j) for j in range(r)) for i in range(r)]

    def _monomial_image(self, i: int, lam: Vector):
        """Numerator terms (lambda, scalar key, coeff) of s_i * e^lam, without the new denominator."""
        meta, ring = self.meta, self.ring
        pair = self.datum.pair_simple(i, lam)
        ni = meta.n_simple[i]
        slam = list(lam)
        slam[i] -= pair
        r = res(ni, pair)
        gsign, gkey = ring.g_key(meta.Q_simple[i] * (1 + pair))
        one = ring.one_key
        v1 = ring.shift_v(one, 1)
        vg = ring.shift_v(gkey, 1)
        a = list(slam)
        a[i] += r
        b = list(slam)
        b[i] += ni - 1
        c = list(slam)
        c[i] -= 1
        return (
            (tuple(a), one, 1),
            (tuple(a), v1, -1),
            (tuple(b), vg, -gsign),
            (tuple(c), vg, gsign),
        )

    def simple(self, i: int, x: LocalizedElement) -> LocalizedElement:
        ring = self.ring
        mk = ring.mul_keys
        out: dict = {}
        cache: dict[Vector, tuple] = {}
        for (lam, key), coeff in x.num.terms.items():
            img = cache.get(lam)
            if img is None:
                img = cache[lam] = self._monomial_image(i, lam)
            for mu, k2, c2 in img:
                _add_into(out, (mu, mk(key, k2)), coeff * c2)
        num = GroupAlgebraElement._raw(ring, self.rank, out)
        res_el = LocalizedElement(num)
        refl = lambda mu: self.datum.reflect(i, mu)  # noqa: E731
        for (delta, mu), mult in x.den.items():
            for _ in range(mult):
                res_el._push(delta, refl(mu))
        res_el._push(1, self.meta.tilde_simple[i])
        return res_el

    def act(self, word: Sequence[int], x: LocalizedElement) -> LocalizedElement:
        for i in reversed(tuple(word)):
            x = self.simple(i, x)
        return x


@lru_cache(maxsize=64)
def engine_for(meta: MetaplecticStructure) -> Engine:
    return Engine(meta)


def _as_localized(x) -> LocalizedElement:
    if isinstance(x, GroupAlgebraElement):
        return LocalizedElement(x)
    return x


def cg_simple(meta: MetaplecticStructure, i: int, x) -> LocalizedElement:
    """s_i acting on a localized element by the Chinta-Gunnells formula."""
    if not 0 <= i < meta.rank:
        raise IndexError(f"simple index {i} out of range")
    return engine_for(meta).simple(i, _as_localized(x))


def cg_act(meta: MetaplecticStructure, w: WeylGroupElement | Sequence[int], x) -> LocalizedElement:
    """w acting on x, read from the right along the word of w."""
    word = w.word if isinstance(w, WeylGroupElement) else tuple(w)
    return engine_for(meta).act(word, _as_localized(x))


def weyl_orbit_action(meta: MetaplecticStructure, lam: Sequence[int]) -> dict[tuple[int, ...], LocalizedElement]:
    """w * e^lam for every w in W, reusing the parent element of each BFS step."""
    eng = engine_for(meta)
    out: dict[tuple[int, ...], LocalizedElement] = {}
    for w in meta.datum.weyl_group:
        if not w.word:
            out[()] = LocalizedElement.monomial(eng.ring, tuple(lam))
        else:
            out[w.word] = eng.simple(w.word[0], out[w.word[1:]])
    return out


def casselman_shalika_fraction(meta: MetaplecticStructure, lam: Sequence[int] = None) -> LocalizedElement:
    datum = meta.datum
    lam = tuple(lam) if lam is not None else (0,) * datum.rank
    if not datum.is_dominant(lam):
        raise ValueError(f"coweight {lam} is not dominant")
    ring = GaussRing(meta.n)
    images = weyl_orbit_action(meta, lam)
    total = LocalizedElement(GroupAlgebraElement.zero(ring, datum.rank))
    for w in datum.weyl_group:
        shift = [0] * datum.rank
        for beta in inversion_coroots(datum, w):
            for a, b in enumerate(meta.tilde(beta)):
                shift[a] -= b
        term = images[w.word].copy()
        term.num = term.num.shift(shift, 0, (-1) ** w.length)
        total = total + term
    for alpha in meta.tilde_positive:
        total = total.mul_factor(1, alpha).div_factor(0, alpha)
    return total * GroupAlgebraElement.monomial(ring, (0,) * datum.rank, ring.v(sum(lam)))


def casselman_shalika(meta: MetaplecticStructure, lam: Sequence[int] = None) -> GroupAlgebraElement:
    """CS(lam) as a certified polynomial; lam defaults to 0."""
    frac = casselman_shalika_fraction(meta, lam)
    try:
        return frac.clear_denominators()
    except NotDivisible as exc:
        raise NotPolynomial(exc.remainder) from exc


@lru_cache(maxsize=64)
def cs_zero(meta: MetaplecticStructure) -> GroupAlgebraElement:
    return casselman_shalika(meta)


@dataclass
class HTable:
    """H(k_1, ..., k_r) as generic scalars; absent tuples mean H = 0."""

    meta: MetaplecticStructure
    entries: dict[Vector, GaussScalar]

    def __getitem__(self, k: Sequence[int]) -> GaussScalar:
        k = tuple(k)
        if k in self.entries:
            return self.entries[k]
        return GaussRing(self.meta.n).zero()

    def __contains__(self, k) -> bool:
        return tuple(k) in self.entries

    def __iter__(self):
        return iter(sorted(self.entries))

    def __len__(self):
        return len(self.entries)

    def support(self) -> list[Vector]:
        return sorted(self.entries)

    def rows(self) -> list[tuple[Vector, GaussScalar]]:
        return [(k, self.entries[k]) for k in sorted(self.entries)]


def h_coefficients(meta: MetaplecticStructure, cs0: GroupAlgebraElement | None = None) -> HTable:
    """Read H(k) off CS(0): coefficient of e^{-sum k_i alpha_i} divided by v^{|k|}."""
    if cs0 is None:
        cs0 = cs_zero(meta)
    entries = {}
    for lam, s in cs0.coefficients().items():
        k = tuple(-a for a in lam)
        if any(x < 0 for x in k):
            raise ValueError(f"CS(0) has a term at {lam} outside the negative cone")
        shift = -sum(k)
        entries[k] = GaussScalar(s.ring, {s.ring.shift_v(key, shift): c for key, c in s.terms.items()})
    return HTable(meta, entries)


@dataclass
class Report:
    """Outcome of a verification run."""

    name: str
    passed: bool
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": [str(f) for f in self.failures[:10]],
            "details": self.details,
        }


def invariance_residual(meta: MetaplecticStructure, cs0: GroupAlgebraElement, i: int) -> GroupAlgebraElement:
    """s_i*CS(0) (1 - v e^{-ntilde a_i}) - (1 - v e^{ntilde a_i}) CS(0), as a polynomial."""
    at = meta.tilde_simple[i]
    lhs = cg_simple(meta, i, cs0).mul_factor(1, at)
    lhs_poly = lhs.clear_denominators()
    rhs = cs0.mul_factor(1, tuple(-x for x in at))
    return lhs_poly - rhs


def verify_cs_invariance(meta: MetaplecticStructure, cs0: GroupAlgebraElement | None = None) -> Report:
    if cs0 is None:
        cs0 = cs_zero(meta)
    rep = Report("invariance", True)
    for i in range(meta.rank):
        rep.checked += 1
        try:
            diff = invariance_residual(meta, cs0, i)
        except NotDivisible as exc:
            rep.passed = False
            rep.failures.append({"i": i, "residual": str(exc.remainder)})
            continue
        if not diff.is_zero():
            rep.passed = False
            rep.failures.append({"i": i, "residual": str(diff)})
    return rep


def rank_two_subsystems(datum: BasedRootDatum) -> list[tuple[int, int, int]]:
    """Pairs (i, j) with the order m_ij of s_i s_j."""
    out = []
    for i in range(datum.rank):
        for j in range(i + 1, datum.rank):
            prod = datum.cartan[i][j] * datum.cartan[j][i]
            m = {0: 2, 1: 3, 2: 4, 3: 6}[prod]
            out.append((i, j, m))
    return out


def braid_words(i: int, j: int, m: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a = tuple(i if k % 2 == 0 else j for k in range(m))
    b = tuple(j if k % 2 == 0 else i for k in range(m))
    return a, b


def verify_braid(meta: MetaplecticStructure, samples: Sequence[LocalizedElement]) -> Report:
    rep = Report("braid", True)
    for i, j, m in rank_two_subsystems(meta.datum):
        w1, w2 = braid_words(i, j, m)
        for x in samples:
            rep.checked += 1
            if not cg_act(meta, w1, x).equals(cg_act(meta, w2, x)):
                rep.passed = False
                rep.failures.append({"pair": (i, j), "element": str(x)})
    return rep


def verify_involution(meta: MetaplecticStructure, samples: Sequence[LocalizedElement]) -> Report:
    rep = Report("involution", True)
    for i in range(meta.rank):
        for x in samples:
            rep.checked += 1
            if not cg_simple(meta, i, cg_simple(meta, i, x)).equals(x):
                rep.passed = False
                rep.failures.append({"i": i, "element": str(x)})
    return rep


def random_localized_monomial(meta: MetaplecticStructure, rng, bound: int = 3, with_denominator: bool = True) -> LocalizedElement:
    """c * g-monomial * e^lam, optionally over one random factor from J."""
    ring = GaussRing(meta.n)
    lam = tuple(rng.randint(-bound, bound) for _ in range(meta.rank))
    scalar = ring.v(rng.randint(-1, 2))
    if meta.n > 1:
        scalar = scalar * ring.g(rng.randint(1, meta.n - 1))
    scalar = scalar * rng.choice([1, -1, 2])
    x = LocalizedElement.monomial(ring, lam, scalar)
    if with_denominator and rng.random() < 0.5:
        alpha = rng.choice(meta.tilde_positive)
        x = x.div_factor(rng.randint(0, 1), alpha)
    return x


def cs_for(cartan_type: str, n: int, lam=None) -> GroupAlgebraElement:
    meta = metaplectic_structure(build_root_datum(cartan_type), n)
    return casselman_shalika(meta, lam)
