"""Twisted-multiplicative gluing of p-parts into global coefficients over F_q(t).

All roots of unity are carried as integer indices mod n (see ``residue``).
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .chinta_gunnells import HTable, Report, cs_zero, h_coefficients
from .gauss_ring import specialize
from .residue import (
    FqPoly,
    Place,
    _chi_index,
    check_field,
    epsilon,
    factor,
    gauss_table_degree,
    hilbert_symbol,
    irreducibles,
    monic_polys,
    monic_upto,
    parse_poly,
    residue_symbol_S,
)
from .rootdata import MetaplecticStructure, build_root_datum, metaplectic_structure

Vector = tuple[int, ...]
LocalFunction = Callable[[Place, Vector], complex]


class AdjointTypeWarning(UserWarning):
    """The metaplectic dual datum is not of adjoint type."""


@dataclass(frozen=True)
class TupleC:
    """An r-tuple of monic polynomials."""

    polys: tuple[FqPoly, ...]

    def __post_init__(self):
        for p in self.polys:
            if not p or not p.is_monic():
                raise ValueError(f"{p} is not a nonzero monic polynomial")

    @classmethod
    def parse(cls, text: str | Sequence[str], q: int) -> "TupleC":
        parts = text.split(",") if isinstance(text, str) else list(text)
        return cls(tuple(parse_poly(s, q) for s in parts))

    @property
    def q(self) -> int:
        return self.polys[0].q

    @property
    def rank(self) -> int:
        return len(self.polys)

    @property
    def degrees(self) -> Vector:
        return tuple(p.degree for p in self.polys)

    @cached_property
    def factorization(self) -> dict[Place, Vector]:
        """{place: (n_nu(C_1), ..., n_nu(C_r))} over places dividing some C_i."""
        out: dict[Place, list[int]] = {}
        for i, p in enumerate(self.polys):
            for pr, e in factor(p)[1]:
                out.setdefault(Place(self.q, pr), [0] * self.rank)[i] = e
        return {pl: tuple(v) for pl, v in sorted(out.items(), key=lambda kv: kv[0].sort_key())}

    def places(self) -> list[Place]:
        return list(self.factorization)

    def log_nu(self, place: Place) -> Vector:
        return self.factorization.get(place, (0,) * self.rank)

    def log_S(self) -> dict[Place, Vector]:
        return dict(self.factorization)

    def local_part(self, place: Place) -> tuple[FqPoly, ...]:
        """C_nu = (pi^{n_nu(C_i)})_i."""
        return tuple(place.poly ** m for m in self.log_nu(place))

    def away_part(self, place: Place) -> tuple[FqPoly, ...]:
        """C^nu = (C_i / pi^{n_nu(C_i)})_i."""
        return tuple(c // (place.poly ** m) for c, m in zip(self.polys, self.log_nu(place)))

    def __mul__(self, other: "TupleC") -> "TupleC":
        return TupleC(tuple(a * b for a, b in zip(self.polys, other.polys)))

    def is_coprime_to(self, other: "TupleC") -> bool:
        return not (set(self.factorization) & set(other.factorization))

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.polys) + ")"

    def to_list(self) -> list[str]:
        return [str(p) for p in self.polys]


@dataclass(frozen=True)
class LambdaClassVector:
    """Finitely supported map place -> class in Lambda/Lambda_0 (canonical reps)."""

    entries: tuple[tuple[Place, Vector], ...]

    @classmethod
    def build(cls, meta: MetaplecticStructure, data: Mapping[Place, Sequence[int]]) -> "LambdaClassVector":
        items = []
        for pl, vec in data.items():
            rep = meta.reduce(tuple(vec))
            if any(rep):
                items.append((pl, rep))
        items.sort(key=lambda kv: kv[0].sort_key())
        return cls(tuple(items))

    @classmethod
    def parse(cls, meta: MetaplecticStructure, text: str, q: int) -> "LambdaClassVector":
        """Parse ``"t:-1"`` or ``"t:-1,0;t+1:0,1"``; ``"0"`` or ``""`` is the zero class."""
        data: dict[Place, Vector] = {}
        text = text.strip()
        if text in ("", "0"):
            return cls(())
        for chunk in text.split(";"):
            if ":" not in chunk:
                raise ValueError(f"class entry {chunk!r} must look like 'poly:k1,...,kr'")
            ptxt, vtxt = chunk.split(":", 1)
            poly = parse_poly(ptxt, q)
            if not poly.is_monic() or poly not in irreducibles(q, poly.degree):
                raise ValueError(f"{ptxt} is not a monic irreducible")
            vec = tuple(int(x) for x in vtxt.split(","))
            if len(vec) != meta.rank:
                raise ValueError(f"class vector {vtxt} has the wrong length")
            data[Place(q, poly)] = vec
        return cls.build(meta, data)

    def as_dict(self) -> dict[Place, Vector]:
        return dict(self.entries)

    def get(self, place: Place, rank: int) -> Vector:
        return self.as_dict().get(place, (0,) * rank)

    def __str__(self):
        if not self.entries:
            return "0"
        return ";".join(f"{pl}:{','.join(map(str, v))}" for pl, v in self.entries)


@dataclass
class GluedCoefficient:
    value: complex
    D: int
    factors: list[tuple[Place, Vector, complex]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "H": {"re": self.value.real, "im": self.value.imag},
            "D": self.D,
            "local": [{"place": str(p), "k": list(k), "H": {"re": v.real, "im": v.imag}} for p, k, v in self.factors],
        }


def _close(a: complex, b: complex, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


class WMDS:
    """Everything needed to glue coefficients for one (root datum, n, q)."""

    def __init__(self, meta: MetaplecticStructure, q: int):
        check_field(q, meta.n)
        self.meta = meta
        self.n = meta.n
        self.q = q
        self.rank = meta.rank
        self.Q = meta.Q_simple
        self.B = meta.B_simple

    @classmethod
    def from_type(cls, cartan_type: str, n: int, q: int) -> "WMDS":
        return cls(metaplectic_structure(build_root_datum(cartan_type), n), q)

    # -- local data --
    @cached_property
    def htable(self) -> HTable:
        return h_coefficients(self.meta, cs_zero(self.meta))

    @cached_property
    def support(self) -> frozenset[Vector]:
        return frozenset(self.htable.entries)

    def local_table(self, degree: int) -> dict[Vector, complex]:
        cache = self.__dict__.setdefault("_local_tables", {})
        if degree not in cache:
            gt = dict(enumerate(gauss_table_degree(self.q, self.n, degree)))
            qn = self.q ** degree
            cache[degree] = {k: specialize(s, qn, gt) for k, s in self.htable.entries.items()}
        return cache[degree]

    def local_H(self, place: Place, k: Sequence[int]) -> complex:
        return self.local_table(place.degree).get(tuple(k), 0j)

    def epsilon(self, j: int) -> complex:
        return epsilon(j, self.n)

    # -- roots of unity from gluing --
    def cocycle_d(self, F: Sequence, Fp: Sequence, place: Place) -> int:
        """d(F, F') = prod (F_i, F'_i)^{-Q_i} prod_{i<j} (F'_i, F_j)^{B_ij}, as an index."""
        n = self.n
        total = 0
        for i in range(self.rank):
            total -= self.Q[i] * hilbert_symbol(F[i], Fp[i], place, n)
            for j in range(i + 1, self.rank):
                if self.B[i][j]:
                    total += self.B[i][j] * hilbert_symbol(Fp[i], F[j], place, n)
        return total % n

    def d_local(self, C: TupleC, place: Place) -> int:
        """D(C; nu) from valuations and residue characters."""
        m = C.log_nu(place)
        if not any(m):
            return 0
        total = 0
        for i, u in enumerate(C.away_part(place)):
            coef = self.Q[i] * m[i] + sum(self.B[i][j] * m[j] for j in range(i + 1, self.rank))
            if coef % self.n:
                total += coef * _chi_index(u % place.poly, place.poly, self.n)
        return total % self.n

    def d_local_cocycle(self, C: TupleC, place: Place) -> int:
        return self.cocycle_d(C.local_part(place), C.away_part(place), place)

    def d_global(self, C: TupleC) -> int:
        return sum(self.d_local(C, pl) for pl in C.places()) % self.n

    def formula_D(self, C: TupleC) -> int:
        """D(C) as the double product over ordered pairs of distinct places."""
        n = self.n
        pls = C.places()
        total = 0
        for nu in pls:
            Cnu = C.local_part(nu)
            for om in pls:
                if om == nu:
                    continue
                Com = C.local_part(om)
                for i in range(self.rank):
                    total -= self.Q[i] * hilbert_symbol(Cnu[i], Com[i], nu, n)
                    for j in range(i + 1, self.rank):
                        if self.B[i][j]:
                            total += self.B[i][j] * hilbert_symbol(Com[i], Cnu[j], nu, n)
        return total % n

    # -- glued coefficients --
    def in_supp_Z(self, C: TupleC) -> bool:
        return all(k in self.support for k in C.factorization.values())

    def glue_H(self, C: TupleC) -> GluedCoefficient:
        factors = []
        value = complex(1.0)
        for pl, k in C.factorization.items():
            h = self.local_H(pl, k)
            factors.append((pl, k, h))
            value *= h
        if value == 0:
            return GluedCoefficient(0j, self.d_global(C), factors)
        D = self.d_global(C)
        return GluedCoefficient(self.epsilon(D) * value, D, factors)

    def h_from_factorizable(self, f: LocalFunction) -> Callable[[TupleC], complex]:
        """C -> eps(prod_nu D(C; nu)) prod_{nu | C} f(nu, log_nu C).

        ``f(place, k)`` is a genuine local function on exponent vectors with
        f(place, 0) = 1.
        """

        def H_f(C: TupleC) -> complex:
            val = complex(1.0)
            for pl, k in C.factorization.items():
                val *= f(pl, k)
            if val == 0:
                return 0j
            return self.epsilon(self.d_global(C)) * val

        return H_f

    def local_H_function(self) -> LocalFunction:
        return lambda pl, k: self.local_H(pl, k)

    def twisted_ratio(self, C: TupleC, Cp: TupleC) -> int:
        """Index of the root of unity H(CC') / (H(C) H(C')) for coprime C, C'."""
        n = self.n
        total = 0
        for i in range(self.rank):
            for a, b in ((C.polys[i], Cp.polys[i]), (Cp.polys[i], C.polys[i])):
                s = residue_symbol_S(a, b, n)
                if s is None:
                    raise ValueError("tuples are not coprime")
                total += self.Q[i] * s
            for j in range(i + 1, self.rank):
                if self.B[i][j]:
                    for a, b in ((C.polys[i], Cp.polys[j]), (Cp.polys[i], C.polys[j])):
                        s = residue_symbol_S(a, b, n)
                        if s is None:
                            raise ValueError("tuples are not coprime")
                        total += self.B[i][j] * s
        return total % n

    # -- fibers and series --
    def p_Z(self, C: TupleC) -> LambdaClassVector:
        return LambdaClassVector.build(self.meta, {pl: tuple(-x for x in k) for pl, k in C.factorization.items()})

    def all_tuples(self, deg_max: int) -> Iterator[TupleC]:
        polys = monic_upto(self.q, deg_max)
        for combo in itertools.product(polys, repeat=self.rank):
            yield TupleC(combo)

    def fiber_enumerate(self, cls: LambdaClassVector, deg_max: int) -> list[TupleC]:
        out = []
        for C in self.all_tuples(deg_max):
            if self.in_supp_Z(C) and self.p_Z(C) == cls:
                out.append(C)
        return out

    def z_truncated(self, deg_max: int) -> dict[Vector, complex]:
        series: dict[Vector, complex] = {}
        for C in self.all_tuples(deg_max):
            h = self.glue_H(C).value
            if h != 0:
                key = C.degrees
                series[key] = series.get(key, 0j) + h
        return dict(sorted(series.items()))

    def class_representative(self, cls: LambdaClassVector) -> TupleC | None:
        """A tuple in the fiber built from the smallest admissible local exponents."""
        polys = [FqPoly(self.q, [1])] * self.rank
        for pl, lam in cls.entries:
            k = self._min_local_k(lam)
            if k is None:
                return None
            polys = [c * pl.poly ** e for c, e in zip(polys, k)]
        return TupleC(tuple(polys))

    def _min_local_k(self, lam: Vector) -> Vector | None:
        target = self.meta.reduce(tuple(-x for x in lam))
        cands = [k for k in self.support if self.meta.reduce(k) == target]
        if not cands:
            return None
        return min(cands, key=lambda k: (sum(k), k))

    def local_series(self, place: Place, lam: Vector, deg_max: int) -> dict[Vector, complex]:
        """sum over k in supp with k = -lam mod Lambda_0 of H_nu(k) x^{k deg(nu)}, truncated."""
        target = self.meta.reduce(tuple(-x for x in lam))
        d = place.degree
        out: dict[Vector, complex] = {}
        table = self.local_table(d)
        for k in self.support:
            if self.meta.reduce(k) != target:
                continue
            mono = tuple(x * d for x in k)
            if max(mono, default=0) > deg_max:
                continue
            out[mono] = out.get(mono, 0j) + table[k]
        return out

    def verify_subsum_identity(self, cls: LambdaClassVector, deg_max: int, tol: float = 1e-6, d_twist: int = 0) -> Report:
        rep = Report("subsum", True, details={"class": str(cls), "deg_max": deg_max})
        if not self.meta.is_dual_adjoint:
            warnings.warn("metaplectic dual datum is not of adjoint type", AdjointTypeWarning, stacklevel=2)
        rank = self.rank
        rep_tuple = self.class_representative(cls)
        D = self.d_global(rep_tuple) if rep_tuple is not None else 0
        lhs: dict[Vector, complex] = {(0,) * rank: self.epsilon(D + d_twist)}
        places = [Place(self.q, p) for d in range(1, deg_max + 1) for p in irreducibles(self.q, d)]
        places += [pl for pl, _ in cls.entries if pl.degree > deg_max]
        for pl in places:
            loc = self.local_series(pl, cls.get(pl, rank), deg_max)
            lhs = _truncated_product(lhs, loc, deg_max)
        rhs: dict[Vector, complex] = {}
        fiber = self.fiber_enumerate(cls, deg_max)
        for C in fiber:
            key = C.degrees
            rhs[key] = rhs.get(key, 0j) + self.glue_H(C).value
        rep.details["fiber_size"] = len(fiber)
        rep.details["D"] = D
        for key in sorted(set(lhs) | set(rhs)):
            a, b = lhs.get(key, 0j), rhs.get(key, 0j)
            rep.checked += 1
            if not _close(a, b, tol):
                rep.passed = False
                rep.failures.append({"monomial": key, "lhs": a, "rhs": b})
                break
        rep.details["lhs"] = {str(list(k)): [v.real, v.imag] for k, v in sorted(lhs.items()) if abs(v) > 1e-12}
        return rep

    # -- property suites --
    def random_supported_tuple(self, rng: random.Random, places: Sequence[Place], max_places: int = 2) -> TupleC:
        """Tuple with every local exponent in supp CS(0), on a random subset of ``places``."""
        nonzero = sorted(k for k in self.support if any(k))
        count = rng.randint(1, min(max_places, len(places)))
        chosen = rng.sample(list(places), count)
        polys = [FqPoly(self.q, [1])] * self.rank
        for pl in chosen:
            k = rng.choice(nonzero)
            polys = [c * pl.poly ** e for c, e in zip(polys, k)]
        return TupleC(tuple(polys))

    def random_coprime_pairs(self, count: int, seed: int = 0, deg_places: int = 2) -> list[tuple[TupleC, TupleC]]:
        rng = random.Random(seed)
        pool = [Place(self.q, p) for d in range(1, deg_places + 1) for p in irreducibles(self.q, d)]
        out = []
        for _ in range(count):
            rng.shuffle(pool)
            half = len(pool) // 2
            out.append((self.random_supported_tuple(rng, pool[:half]), self.random_supported_tuple(rng, pool[half:])))
        return out

    def verify_twisted_multiplicativity(
        self, pairs: Iterable[tuple[TupleC, TupleC]], H: Callable[[TupleC], complex] | None = None, tol: float = 1e-6
    ) -> Report:
        if H is None:
            H = lambda C: self.glue_H(C).value  # noqa: E731
        rep = Report("twisted", True)
        for C, Cp in pairs:
            rep.checked += 1
            lhs = H(C * Cp)
            rhs = H(C) * H(Cp) * self.epsilon(self.twisted_ratio(C, Cp))
            if not _close(lhs, rhs, tol):
                rep.passed = False
                rep.failures.append({"C": str(C), "C'": str(Cp), "lhs": lhs, "rhs": rhs})
        return rep

    def verify_gluing(self, deg_max: int) -> Report:
        """formula_D = prod_nu D(C; nu) and D(C; nu) = d(C_nu, C^nu), exhaustively."""
        rep = Report("gluing", True)
        for C in self.all_tuples(deg_max):
            rep.checked += 1
            locals_ = {pl: self.d_local(C, pl) for pl in C.places()}
            for pl, val in locals_.items():
                if val != self.d_local_cocycle(C, pl):
                    rep.passed = False
                    rep.failures.append({"C": str(C), "place": str(pl), "kind": "local"})
            if sum(locals_.values()) % self.n != self.formula_D(C):
                rep.passed = False
                rep.failures.append({"C": str(C), "kind": "global"})
        return rep

    def verify_fiber_constancy(self, deg_max: int) -> Report:
        """D(C; nu) and D(C) depend only on p_Z(C) over supp(Z)."""
        rep = Report("fiber-constancy", True)
        seen: dict[LambdaClassVector, tuple[dict, int, str]] = {}
        for C in self.all_tuples(deg_max):
            if not self.in_supp_Z(C):
                continue
            rep.checked += 1
            cls = self.p_Z(C)
            loc = {pl: self.d_local(C, pl) for pl in C.places()}
            loc = {pl: v for pl, v in loc.items() if v}
            D = sum(loc.values()) % self.n
            if cls not in seen:
                seen[cls] = (loc, D, str(C))
                continue
            loc0, D0, C0 = seen[cls]
            if D != D0 or {pl: v for pl, v in loc.items()} != loc0:
                rep.passed = False
                rep.failures.append({"class": str(cls), "C": str(C), "C0": C0})
        rep.details["classes"] = len(seen)
        return rep

    def verify_factorizable(self, deg_max: int, pairs: Sequence[tuple[TupleC, TupleC]], tol: float = 1e-6, seed: int = 0) -> Report:
        """H_f from local H-tables equals glue_H; H_f is twisted multiplicative for local H and random f."""
        rep = Report("factorizable", True)
        Hf = self.h_from_factorizable(self.local_H_function())
        for C in self.all_tuples(deg_max):
            rep.checked += 1
            a, b = Hf(C), self.glue_H(C).value
            if not _close(a, b, tol):
                rep.passed = False
                rep.failures.append({"C": str(C), "H_f": a, "glue_H": b})
        for f in (self.local_H_function(), random_local_function(seed)):
            sub = self.verify_twisted_multiplicativity(pairs, self.h_from_factorizable(f), tol)
            rep.checked += sub.checked
            if not sub.passed:
                rep.passed = False
                rep.failures.extend(sub.failures)
        return rep

    def regrouping(self, deg_max: int) -> Report:
        """z_truncated equals the sum of the fiber sub-sums."""
        rep = Report("regrouping", True)
        total = self.z_truncated(deg_max)
        grouped: dict[LambdaClassVector, dict[Vector, complex]] = {}
        for C in self.all_tuples(deg_max):
            if not self.in_supp_Z(C):
                continue
            part = grouped.setdefault(self.p_Z(C), {})
            part[C.degrees] = part.get(C.degrees, 0j) + self.glue_H(C).value
        summed: dict[Vector, complex] = {}
        for part in grouped.values():
            for k, v in part.items():
                summed[k] = summed.get(k, 0j) + v
        for k in set(total) | set(summed):
            rep.checked += 1
            if not _close(total.get(k, 0j), summed.get(k, 0j), 1e-9):
                rep.passed = False
                rep.failures.append({"monomial": k})
        rep.details["classes"] = len(grouped)
        return rep


def _truncated_product(a: Mapping[Vector, complex], b: Mapping[Vector, complex], bound: int) -> dict[Vector, complex]:
    out: dict[Vector, complex] = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            if max(k, default=0) <= bound:
                out[k] = out.get(k, 0j) + va * vb
    return out


def random_local_function(seed: int = 0) -> LocalFunction:
    """A deterministic pseudo-random genuine local function with f(nu, 0) = 1."""

    def f(place: Place, k: Vector) -> complex:
        if not any(k):
            return complex(1.0)
        rng = random.Random(f"{seed}|{place}|{k}")
        return complex(rng.uniform(-2, 2), rng.uniform(-2, 2))

    return f


def monic_of_degree(q: int, d: int) -> tuple[FqPoly, ...]:
    return monic_polys(q, d)
