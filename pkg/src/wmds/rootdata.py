"""Based root data, Weyl groups and metaplectic structures.

Coweights are written in the basis of simple coroots and weights in the
basis of fundamental weights, so the pairing is the plain dot product and
rho is (1, ..., 1). Everything here is immutable once built.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Sequence

Vector = tuple[int, ...]


class RootDatumError(ValueError):
    pass


def res(m: int, k: int) -> int:
    """Residue of k modulo m in {0, ..., m-1}."""
    if m < 1:
        raise ValueError("modulus must be positive")
    return k % m


def vadd(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: int, a: Sequence[int]) -> Vector:
    return tuple(c * x for x in a)


def is_positive(vec: Sequence[int]) -> bool:
    """True for a nonzero vector whose first nonzero coordinate is positive."""
    for x in vec:
        if x:
            return x > 0
    return False


# -- integer lattices -------------------------------------------------------

def hnf(rows: Sequence[Sequence[int]]) -> list[Vector]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero basis rows, pivots positive and entries above each
    pivot reduced into [0, pivot).
    """
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return []
    ncols = len(mat[0])
    basis: list[list[int]] = []
    col = 0
    while mat and col < ncols:
        nz = [r for r in mat if r[col]]
        zero = [r for r in mat if not r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            rest = []
            for r in nz[1:]:
                f = r[col] // piv[col]
                r = [a - f * b for a, b in zip(r, piv)]
                if r[col]:
                    rest.append(r)
                elif any(r):
                    zero.append(r)
            nz = [piv] + rest
        piv = nz[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        mat = zero
        col += 1
    # reduce above pivots
    for i, row in enumerate(basis):
        c = next(j for j, a in enumerate(row) if a)
        for k in range(i):
            f = basis[k][c] // row[c]
            if f:
                basis[k] = [a - f * b for a, b in zip(basis[k], row)]
    return [tuple(r) for r in basis]


def reduce_mod_lattice(vec: Sequence[int], basis: Sequence[Sequence[int]]) -> Vector:
    """Canonical representative of ``vec`` modulo a lattice given in HNF."""
    out = list(vec)
    for row in basis:
        c = next(j for j, a in enumerate(row) if a)
        f = out[c] // row[c]
        if f:
            out = [a - f * b for a, b in zip(out, row)]
    return tuple(out)


def integer_kernel(mat: Sequence[Sequence[int]]) -> list[Vector]:
    """Z-basis of {x in Z^k : mat @ x = 0} for an m x k integer matrix."""
    m = len(mat)
    k = len(mat[0])
    aug = [[mat[i][j] for i in range(m)] + [int(i == j) for i in range(k)] for j in range(k)]
    red = hnf(aug)
    # rows of the augmented HNF whose leading m entries vanish span the kernel;
    # rows with a pivot among the first m columns cannot contribute
    kernel = [tuple(r[m:]) for r in red if not any(r[:m])]
    return kernel


# -- Cartan data --------------------------------------------------------------

def _symmetric_form(kind: str, r: int) -> tuple[list[int], dict[tuple[int, int], int]]:
    """Squared root lengths and off-diagonal inner products (Bourbaki order)."""
    lengths = [2] * r
    edges: dict[tuple[int, int], int] = {}
    if kind == "A":
        for i in range(r - 1):
            edges[i, i + 1] = -1
    elif kind == "B":
        if r < 2:
            raise RootDatumError("type B needs rank >= 2")
        lengths = [4] * (r - 1) + [2]
        for i in range(r - 1):
            edges[i, i + 1] = -2
    elif kind == "C":
        if r < 2:
            raise RootDatumError("type C needs rank >= 2")
        lengths = [2] * (r - 1) + [4]
        for i in range(r - 2):
            edges[i, i + 1] = -1
        edges[r - 2, r - 1] = -2
    elif kind == "D":
        if r < 3:
            raise RootDatumError("type D needs rank >= 3")
        for i in range(r - 2):
            edges[i, i + 1] = -1
        edges[r - 3, r - 1] = -1
    elif kind == "E":
        if r not in (6, 7, 8):
            raise RootDatumError("type E needs rank 6, 7 or 8")
        chain = [0, 2, 3, 4, 5, 6, 7][: r - 1]
        for a, b in zip(chain, chain[1:]):
            edges[a, b] = -1
        edges[1, 3] = -1
    elif kind == "F":
        if r != 4:
            raise RootDatumError("type F needs rank 4")
        lengths = [4, 4, 2, 2]
        edges = {(0, 1): -2, (1, 2): -2, (2, 3): -1}
    elif kind == "G":
        if r != 2:
            raise RootDatumError("type G needs rank 2")
        lengths = [2, 6]
        edges = {(0, 1): -3}
    else:
        raise RootDatumError(f"unknown Cartan type {kind!r}")
    return lengths, edges


def cartan_matrix(kind: str, r: int) -> tuple[Vector, ...]:
    """Entries <alpha_i, alpha_j^vee> for the finite type ``kind`` of rank r."""
    if r < 1:
        raise RootDatumError("rank must be positive")
    lengths, edges = _symmetric_form(kind, r)
    ip = [[0] * r for _ in range(r)]
    for i in range(r):
        ip[i][i] = lengths[i]
    for (i, j), val in edges.items():
        ip[i][j] = ip[j][i] = val
    return tuple(tuple(2 * ip[i][j] // lengths[j] for j in range(r)) for i in range(r))


def parse_cartan_type(label: str, rank: int | None = None) -> tuple[str, int]:
    """Parse strings like ``"A2"`` or ``"G2"`` (or a bare letter plus ``rank``)."""
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d*)\s*", label or "")
    if not m:
        raise RootDatumError(f"cannot parse Cartan type {label!r}")
    kind = m.group(1).upper()
    if m.group(2):
        r = int(m.group(2))
        if rank is not None and rank != r:
            raise RootDatumError(f"rank {rank} conflicts with type {label!r}")
    elif rank is not None:
        r = rank
    else:
        raise RootDatumError(f"type {label!r} has no rank")
    cartan_matrix(kind, r)  # validates
    return kind, r


def classify_cartan(cartan: Sequence[Sequence[int]]) -> str:
    """Name the finite type of an irreducible Cartan matrix (e.g. ``"B3"``)."""
    r = len(cartan)
    if r == 1:
        return "A1"
    nbrs = {i: [j for j in range(r) if j != i and cartan[i][j]] for i in range(r)}
    mults = {(i, j): cartan[i][j] * cartan[j][i] for i in range(r) for j in nbrs[i] if i < j}
    lengths = _root_lengths(cartan)
    if any(m == 3 for m in mults.values()):
        return "G2"
    if any(m == 2 for m in mults.values()):
        if r == 4 and all(len(nbrs[i]) <= 2 for i in range(r)):
            ends = [i for i in range(r) if len(nbrs[i]) == 1]
            (a, b), = [e for e, m in mults.items() if m == 2]
            if a not in ends and b not in ends:
                return "F4"
        longest = max(lengths)
        n_long = sum(1 for x in lengths if x == longest)
        if r == 2:
            return "B2" if lengths[0] > lengths[1] else "C2"
        return f"C{r}" if n_long == 1 else f"B{r}"
    degrees = [len(nbrs[i]) for i in range(r)]
    if max(degrees) <= 2:
        return f"A{r}"
    centre = degrees.index(3)
    arms = []
    for start in nbrs[centre]:
        length, prev, cur = 1, centre, start
        while True:
            nxt = [j for j in nbrs[cur] if j != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"D{r}"
    return f"E{r}"


def _root_lengths(cartan: Sequence[Sequence[int]]) -> list[Fraction]:
    """Relative squared lengths of the simple roots (first one set to 1)."""
    r = len(cartan)
    lengths: list[Fraction | None] = [None] * r
    for seed in range(r):
        if lengths[seed] is not None:
            continue
        lengths[seed] = Fraction(1)
        todo = [seed]
        while todo:
            i = todo.pop()
            for j in range(r):
                if j != i and cartan[i][j] and lengths[j] is None:
                    # cartan[i][j] / cartan[j][i] = |alpha_i|^2 / |alpha_j|^2
                    lengths[j] = lengths[i] * Fraction(cartan[j][i], cartan[i][j])
                    todo.append(j)
    return lengths  # type: ignore[return-value]


# -- root datum ---------------------------------------------------------------

@dataclass(frozen=True)
class WeylGroupElement:
    """An element of W given by a reduced word; ``matrix`` acts on coweights.

    The word ``(i1, ..., ik)`` stands for s_{i1} ... s_{ik}.
    """

    word: tuple[int, ...]
    matrix: tuple[Vector, ...] = field(compare=False, repr=False)

    @property
    def length(self) -> int:
        return len(self.word)

    def act(self, vec: Sequence[int]) -> Vector:
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.matrix)


def _matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> tuple[Vector, ...]:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


@dataclass(frozen=True)
class BasedRootDatum:
    """Semisimple simply-connected based root datum.

    ``cartan[i][j]`` is <alpha_i, alpha_j^vee>. Simple coroots are the unit
    vectors, simple roots are the rows of ``cartan`` in the fundamental-weight
    basis.
    """

    cartan_type: str
    cartan: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @classmethod
    def from_cartan(cls, cartan: Sequence[Sequence[int]], label: str | None = None) -> "BasedRootDatum":
        cart = tuple(tuple(int(x) for x in row) for row in cartan)
        if any(cart[i][i] != 2 for i in range(len(cart))):
            raise RootDatumError("Cartan matrix must have 2 on the diagonal")
        return cls(label or classify_cartan(cart), cart)

    @property
    def simple_coroots(self) -> tuple[Vector, ...]:
        r = self.rank
        return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))

    @property
    def simple_roots(self) -> tuple[Vector, ...]:
        return self.cartan

    @property
    def rho(self) -> Vector:
        return (1,) * self.rank

    def pair(self, weight: Sequence[int], coweight: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(weight, coweight))

    def pair_simple(self, i: int, coweight: Sequence[int]) -> int:
        """<coweight, alpha_i>."""
        return sum(a * b for a, b in zip(self.cartan[i], coweight))

    def reflect(self, i: int, coweight: Sequence[int]) -> Vector:
        """s_i acting on a coweight."""
        c = self.pair_simple(i, coweight)
        out = list(coweight)
        out[i] -= c
        return tuple(out)

    def reflection_matrix(self, i: int) -> tuple[Vector, ...]:
        cols = [self.reflect(i, e) for e in self.simple_coroots]
        return tuple(tuple(col[row] for col in cols) for row in range(self.rank))

    def apply_word(self, word: Sequence[int], coweight: Sequence[int]) -> Vector:
        out = tuple(coweight)
        for i in reversed(word):
            out = self.reflect(i, out)
        return out

    @cached_property
    def coroots(self) -> tuple[Vector, ...]:
        seen = set(self.simple_coroots)
        todo = deque(self.simple_coroots)
        while todo:
            beta = todo.popleft()
            for i in range(self.rank):
                img = self.reflect(i, beta)
                if img not in seen:
                    seen.add(img)
                    todo.append(img)
        return tuple(sorted(seen, key=lambda b: (-sum(b) if sum(b) > 0 else sum(b), b)))

    @cached_property
    def positive_coroots(self) -> tuple[Vector, ...]:
        pos = [b for b in self.coroots if all(x >= 0 for x in b)]
        return tuple(sorted(pos, key=lambda b: (sum(b), tuple(-x for x in b))))

    def is_dominant(self, coweight: Sequence[int]) -> bool:
        return all(self.pair_simple(i, coweight) >= 0 for i in range(self.rank))

    @cached_property
    def weyl_group(self) -> tuple[WeylGroupElement, ...]:
        """All elements in breadth-first order.

        Each element after the identity is s_i * parent where ``word[0] == i``
        and ``word[1:]`` is the parent's word, so the words are reduced and
        prefix-closed from the right.
        """
        r = self.rank
        ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        refl = [self.reflection_matrix(i) for i in range(r)]
        elems = [WeylGroupElement((), ident)]
        seen = {ident}
        head = 0
        while head < len(elems):
            w = elems[head]
            head += 1
            for i in range(r):
                m = _matmul(refl[i], w.matrix)
                if m not in seen:
                    seen.add(m)
                    elems.append(WeylGroupElement((i,) + w.word, m))
        return tuple(elems)

    def element(self, word: Sequence[int]) -> WeylGroupElement:
        r = self.rank
        m = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        for i in word:
            m = _matmul(m, self.reflection_matrix(i))
        return WeylGroupElement(tuple(word), m)

    @cached_property
    def longest_element(self) -> WeylGroupElement:
        return self.weyl_group[-1]

    def to_dict(self) -> dict:
        return {
            "cartan_type": self.cartan_type,
            "rank": self.rank,
            "cartan_matrix": [list(r) for r in self.cartan],
            "simple_roots": [list(r) for r in self.simple_roots],
            "simple_coroots": [list(r) for r in self.simple_coroots],
            "positive_coroots": [list(b) for b in self.positive_coroots],
            "rho": list(self.rho),
        }


def inversion_coroots(datum: BasedRootDatum, w: WeylGroupElement) -> list[Vector]:
    """Positive coroots sent to negative ones by w^{-1}."""
    inv = datum.element(tuple(reversed(w.word)))
    return [b for b in datum.positive_coroots if not is_positive(inv.act(b))]


@lru_cache(maxsize=None)
def build_root_datum(cartan_type: str, rank: int | None = None) -> BasedRootDatum:
    kind, r = parse_cartan_type(cartan_type, rank)
    return BasedRootDatum(f"{kind}{r}", cartan_matrix(kind, r))


# -- metaplectic structure --------------------------------------------------

@dataclass(frozen=True)
class MetaplecticStructure:
    """Quadratic form Q, bilinear form B, cover degree n and derived data."""

    datum: BasedRootDatum
    n: int
    gram: tuple[Vector, ...]  # B(alpha_i^vee, alpha_j^vee)

    @property
    def rank(self) -> int:
        return self.datum.rank

    def Q(self, coweight: Sequence[int]) -> int:
        return self.B(coweight, coweight) // 2

    def B(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(x[i] * self.gram[i][j] * y[j] for i in range(self.rank) for j in range(self.rank) if x[i] and y[j])

    @cached_property
    def Q_simple(self) -> Vector:
        return tuple(self.gram[i][i] // 2 for i in range(self.rank))

    @property
    def B_simple(self) -> tuple[Vector, ...]:
        return self.gram

    def n_of(self, coroot: Sequence[int]) -> int:
        """Smallest m > 0 with n | m * Q(coroot)."""
        return self.n // gcd(self.n, self.Q(coroot))

    @cached_property
    def n_simple(self) -> Vector:
        return tuple(self.n // gcd(self.n, q) for q in self.Q_simple)

    def tilde(self, coroot: Sequence[int]) -> Vector:
        return vscale(self.n_of(coroot), coroot)

    @cached_property
    def tilde_simple(self) -> tuple[Vector, ...]:
        return tuple(self.tilde(e) for e in self.datum.simple_coroots)

    @cached_property
    def tilde_positive(self) -> tuple[Vector, ...]:
        return tuple(self.tilde(b) for b in self.datum.positive_coroots)

    @cached_property
    def lambda0_basis(self) -> tuple[Vector, ...]:
        r = self.rank
        # lambda in Lambda_0 iff n | B(lambda, alpha_i) for all i
        rows = [list(self.gram[i]) + [-self.n * int(i == j) for j in range(r)] for i in range(r)]
        kern = integer_kernel(rows)
        return tuple(hnf([k[:r] for k in kern]))

    def in_lambda0(self, coweight: Sequence[int]) -> bool:
        return all(self.B(coweight, e) % self.n == 0 for e in self.datum.simple_coroots)

    def reduce(self, coweight: Sequence[int]) -> Vector:
        """Canonical representative of the class of ``coweight`` in Lambda/Lambda_0."""
        return reduce_mod_lattice(coweight, self.lambda0_basis)

    @cached_property
    def is_dual_adjoint(self) -> bool:
        return tuple(hnf(self.tilde_simple)) == self.lambda0_basis

    @cached_property
    def dual_cartan(self) -> tuple[Vector, ...]:
        ns = self.n_simple
        c = self.datum.cartan
        out = []
        for i in range(self.rank):
            row = []
            for j in range(self.rank):
                val = Fraction(ns[j] * c[i][j], ns[i])
                if val.denominator != 1:
                    raise RootDatumError("metaplectic dual Cartan matrix is not integral")
                row.append(int(val))
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def dual_datum(self) -> BasedRootDatum:
        return BasedRootDatum.from_cartan(self.dual_cartan)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "Q": list(self.Q_simple),
            "B": [list(r) for r in self.gram],
            "n_i": list(self.n_simple),
            "lambda0_basis": [list(r) for r in self.lambda0_basis],
            "dual_type": self.dual_datum.cartan_type,
            "dual_cartan_matrix": [list(r) for r in self.dual_cartan],
            "dual_adjoint": self.is_dual_adjoint,
        }


def metaplectic_structure(datum: BasedRootDatum, n: int) -> MetaplecticStructure:
    """Metaplectic data for cover degree n, with Q = 1 on short coroots."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    r = datum.rank
    lengths = _root_lengths(datum.cartan)
    # (alpha_i^vee, alpha_j^vee) = 2 <alpha_i, alpha_j^vee> / |alpha_i|^2
    g0 = [[Fraction(2 * datum.cartan[i][j]) / lengths[i] for j in range(r)] for i in range(r)]

    def norm(b: Sequence[int]) -> Fraction:
        return sum((b[i] * g0[i][j] * b[j] for i in range(r) for j in range(r)), Fraction(0))

    shortest = min(norm(b) for b in datum.positive_coroots)
    scale = Fraction(2) / shortest
    gram = []
    for i in range(r):
        row = []
        for j in range(r):
            val = g0[i][j] * scale
            if val.denominator != 1:
                raise RootDatumError("quadratic form is not integral")
            row.append(int(val))
        gram.append(tuple(row))
    return MetaplecticStructure(datum, n, tuple(gram))
