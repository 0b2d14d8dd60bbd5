"""Arithmetic of F_q[t] for prime q: places, tame symbols, power residue
symbols and Gauss sums.

Roots of unity are handled through their discrete logarithm: a symbol is
returned as an integer ``j`` mod n standing for ``zeta**j`` where ``zeta``
is ``g**((q-1)/n)`` for the smallest primitive root g mod q. ``epsilon``
turns such an index into ``exp(2 pi i j / n)``.
"""

from __future__ import annotations

import cmath
import itertools
import re
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from sympy import isprime, primitive_root


class NotCoprime(ValueError):
    pass


class FieldConstraintWarning(UserWarning):
    """n divides q - 1 but 2n does not; some Gauss-sum identities pick up signs."""


# -- polynomials --------------------------------------------------------------

class FqPoly:
    """Polynomial over the prime field F_q, coefficients stored low degree first."""

    __slots__ = ("q", "coeffs", "_hash")

    def __init__(self, q: int, coeffs: Sequence[int]):
        c = [int(a) % q for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.q = q
        self.coeffs = tuple(c)
        self._hash = hash((q, self.coeffs))

    @classmethod
    def const(cls, q: int, a: int) -> "FqPoly":
        return cls(q, [a])

    @classmethod
    def t(cls, q: int) -> "FqPoly":
        return cls(q, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def is_const(self) -> bool:
        return self.degree <= 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = FqPoly(self.q, [other])
        return isinstance(other, FqPoly) and self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self):
        return self._hash

    def _lift(self, other) -> "FqPoly":
        if isinstance(other, int):
            return FqPoly(self.q, [other])
        if other.q != self.q:
            raise ValueError("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return FqPoly(self.q, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return FqPoly(self.q, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FqPoly(self.q, [])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return FqPoly(self.q, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._lift(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        q = self.q
        r = list(self.coeffs)
        db = other.degree
        inv = pow(other.lc, q - 2, q) if q > 2 else 1
        quo = [0] * max(len(r) - db, 0)
        bc = other.coeffs
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k] % q
            if c:
                f = c * inv % q
                quo[k - db] = f
                for j, y in enumerate(bc):
                    r[k - db + j] -= f * y
        return FqPoly(q, quo), FqPoly(q, r[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        out = FqPoly(self.q, [1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def powmod(self, e: int, mod: "FqPoly") -> "FqPoly":
        out = FqPoly(self.q, [1]) % mod if mod.degree > 0 else FqPoly(self.q, [])
        base = self % mod
        while e:
            if e & 1:
                out = (out * base) % mod
            base = (base * base) % mod
            e >>= 1
        return out

    def monic(self) -> "FqPoly":
        if not self:
            return self
        inv = pow(self.lc, self.q - 2, self.q)
        return self * inv

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.q
        return acc

    def sort_key(self):
        return (self.degree, tuple(reversed(self.coeffs)))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = "t" if k == 1 else f"t^{k}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts)

    def __repr__(self):
        return f"FqPoly(q={self.q}, {self})"


def poly_gcd(a: FqPoly, b: FqPoly) -> FqPoly:
    while b:
        a, b = b, a % b
    return a.monic()


_TERM = re.compile(r"^([+-]?)(\d*)\*?(t(?:\^(\d+))?)?$")


def parse_poly(text: str, q: int) -> FqPoly:
    """Parse strings such as ``"t^2+3t+1"``, ``"t-1"`` or ``"5"``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    s = s.replace("-", "+-")
    coeffs: dict[int, int] = {}
    for tok in s.split("+"):
        if not tok:
            continue
        m = _TERM.match(tok)
        if not m or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse polynomial term {tok!r} in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            k = int(m.group(4)) if m.group(4) else 1
        else:
            k = 0
        coeffs[k] = coeffs.get(k, 0) + sign * c
    deg = max(coeffs)
    return FqPoly(q, [coeffs.get(i, 0) for i in range(deg + 1)])


def check_field(q: int, n: int) -> None:
    """Validate (q, n): q prime and n | q - 1; warn if 2n does not divide q - 1."""
    if not isinstance(q, int) or q < 2 or not isprime(q):
        raise ValueError(f"q={q} must be a prime (prime powers are not supported)")
    if n < 1 or (q - 1) % n:
        raise ValueError(f"n={n} must divide q-1={q - 1}")
    if (q - 1) % (2 * n):
        warnings.warn(
            f"2n={2 * n} does not divide q-1={q - 1}: g_k g_-k = (-1)^k q and (pi, pi) may be -1",
            FieldConstraintWarning,
            stacklevel=3,
        )


# -- enumeration and factorization ----------------------------------------------

@lru_cache(maxsize=None)
def monic_polys(q: int, d: int) -> tuple[FqPoly, ...]:
    """All monic polynomials of degree d in lexicographic order."""
    out = []
    for tail in itertools.product(range(q), repeat=d):
        out.append(FqPoly(q, list(reversed(tail)) + [1]))
    return tuple(out)


def monic_upto(q: int, d: int) -> list[FqPoly]:
    return [p for k in range(d + 1) for p in monic_polys(q, k)]


@lru_cache(maxsize=None)
def irreducibles(q: int, d: int) -> tuple[FqPoly, ...]:
    """Monic irreducibles of degree exactly d, lexicographically ordered."""
    if d < 1:
        return ()
    smaller = [p for k in range(1, d // 2 + 1) for p in irreducibles(q, k)]
    out = []
    for f in monic_polys(q, d):
        if all(f % p for p in smaller):
            out.append(f)
    return tuple(out)


def irreducibles_upto(q: int, d: int) -> list[FqPoly]:
    return [p for k in range(1, d + 1) for p in irreducibles(q, k)]


@lru_cache(maxsize=65536)
def factor(f: FqPoly) -> tuple[int, tuple[tuple[FqPoly, int], ...]]:
    """(leading coefficient, ((P, e), ...)) with monic irreducible P."""
    if not f:
        raise ValueError("cannot factor zero")
    lc = f.lc
    g = f.monic()
    out = []
    d = 1
    while g.degree >= 2 * d:
        for p in irreducibles(f.q, d):
            e = 0
            while True:
                quo, rem = divmod(g, p)
                if rem:
                    break
                g = quo
                e += 1
            if e:
                out.append((p, e))
        d += 1
    if g.degree > 0:
        for i, (p, e) in enumerate(out):
            if p == g:
                out[i] = (p, e + 1)
                break
        else:
            out.append((g, 1))
    out.sort(key=lambda pe: pe[0].sort_key())
    return lc, tuple(out)


def valuation(f: FqPoly, p: FqPoly) -> tuple[int, FqPoly]:
    """(ord_p f, f / p^ord)."""
    if not f:
        raise ValueError("valuation of zero")
    e = 0
    while True:
        quo, rem = divmod(f, p)
        if rem:
            return e, f
        f = quo
        e += 1


# -- places ---------------------------------------------------------------------

@dataclass(frozen=True)
class Place:
    """A place of F_q(t): a monic irreducible ``poly`` or the infinite place."""

    q: int
    poly: FqPoly | None = None

    @classmethod
    def infinity(cls, q: int) -> "Place":
        return cls(q, None)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    @property
    def q_nu(self) -> int:
        return self.q ** self.degree

    def __str__(self):
        return "inf" if self.poly is None else str(self.poly)

    def sort_key(self):
        return (1, ()) if self.poly is None else (0, self.poly.sort_key())

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()


def finite_places(q: int, d_max: int) -> list[Place]:
    return [Place(q, p) for p in irreducibles_upto(q, d_max)]


# -- roots of unity ---------------------------------------------------------------

class MuEmbedding:
    """Fixed generator of mu_n(F_q) and its embedding into the unit circle."""

    def __init__(self, q: int, n: int):
        if (q - 1) % n:
            raise ValueError(f"n={n} must divide q-1={q - 1}")
        self.q = q
        self.n = n
        self.generator = int(primitive_root(q))
        self.zeta = pow(self.generator, (q - 1) // n, q)
        self._dlog = {}
        x = 1
        for j in range(n):
            self._dlog[x] = j
            x = x * self.zeta % q

    def dlog(self, c: int) -> int:
        """Index j with zeta^j = c for c in mu_n(F_q)."""
        c %= self.q
        if c not in self._dlog:
            raise ValueError(f"{c} is not an n-th root of unity mod {self.q}")
        return self._dlog[c]

    def element(self, j: int) -> int:
        return pow(self.zeta, j % self.n, self.q)

    def epsilon(self, j: int) -> complex:
        return cmath.exp(2j * cmath.pi * (j % self.n) / self.n)

    def __repr__(self):
        return f"MuEmbedding(q={self.q}, n={self.n}, zeta={self.zeta})"


@lru_cache(maxsize=None)
def mu_embedding(q: int, n: int) -> MuEmbedding:
    return MuEmbedding(q, n)


def epsilon(j: int, n: int) -> complex:
    return cmath.exp(2j * cmath.pi * (j % n) / n)


# -- symbols ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _chi_index(u: FqPoly, place_poly: FqPoly, n: int) -> int:
    """dlog of u^{(q_nu - 1)/n} mod P for u a unit at P."""
    q = u.q
    r = u % place_poly
    if not r:
        raise NotCoprime(f"{u} is not a unit at {place_poly}")
    e = (q ** place_poly.degree - 1) // n
    val = r.powmod(e, place_poly)
    if val.degree > 0:
        raise ValueError("power residue does not lie in F_q")
    return mu_embedding(q, n).dlog(val.lc if val else 0)


def _const_chi(c: int, q: int, n: int, degree: int = 1) -> int:
    e = (q ** degree - 1) // n
    return mu_embedding(q, n).dlog(pow(c % q, e, q))


def power_residue_symbol(x: FqPoly, place: Place | FqPoly, n: int) -> int:
    """Index of x^{(q_P - 1)/n} mod P."""
    p = place.poly if isinstance(place, Place) else place
    if p is None:
        raise ValueError("power residue symbol needs a finite place")
    if not (x % p):
        raise NotCoprime(f"{p} divides {x}")
    return _chi_index(x % p, p, n)


def _split(x) -> tuple[FqPoly, FqPoly]:
    if isinstance(x, tuple):
        num, den = x
        if not den:
            raise ZeroDivisionError("zero denominator")
        return num, den
    return x, FqPoly(x.q, [1])


def _local_data(x, place: Place, n: int) -> tuple[int, int]:
    """(ord_nu x, index of chi_nu(unit part of x))."""
    num, den = _split(x)
    if not num:
        raise ValueError("symbol of zero")
    q = num.q
    if place.is_infinite:
        a = den.degree - num.degree
        lc = num.lc * pow(den.lc, q - 2, q) % q
        return a, _const_chi(lc, q, n)
    an, un = valuation(num, place.poly)
    ad, ud = valuation(den, place.poly)
    return an - ad, (_chi_index(un % place.poly, place.poly, n) - _chi_index(ud % place.poly, place.poly, n)) % n


def hilbert_symbol(x, y, place: Place, n: int) -> int:
    """Tame symbol chi_nu((-1)^{ab} x^b / y^a) as an index mod n.

    ``x`` and ``y`` are polynomials or (numerator, denominator) pairs;
    a = ord x, b = ord y.
    """
    a, lx = _local_data(x, place, n)
    b, ly = _local_data(y, place, n)
    q = place.q
    lm1 = _const_chi(-1, q, n, place.degree)
    return (a * b * lm1 + b * lx - a * ly) % n


def hilbert_S(x, y, n: int) -> int:
    """Product of local symbols over S = {infinity}."""
    num, _ = _split(x)
    return hilbert_symbol(x, y, Place.infinity(num.q), n)


def residue_symbol_S(x: FqPoly, a: FqPoly, n: int) -> int | None:
    """(x / a)_S as an index, or None when gcd(x, a) != 1."""
    if not a:
        raise ValueError("a must be nonzero")
    if poly_gcd(x, a).degree > 0:
        return None
    total = 0
    for p, _ in factor(a)[1]:
        total += hilbert_symbol(x, a, Place(a.q, p), n)
    return total % n


def symbol_places(*polys: FqPoly) -> list[Place]:
    """Finite places dividing any of the inputs, plus infinity."""
    q = polys[0].q
    seen = set()
    for f in polys:
        num, den = _split(f)
        for g in (num, den):
            for p, _ in factor(g)[1]:
                seen.add(p)
    return [Place(q, p) for p in sorted(seen, key=lambda p: p.sort_key())] + [Place.infinity(q)]


def reciprocity_product(x, y, n: int) -> int:
    """Sum of local symbol indices over every place where x or y is not a unit."""
    num_x, den_x = _split(x)
    num_y, den_y = _split(y)
    return sum(hilbert_symbol(x, y, pl, n) for pl in symbol_places(num_x, den_x, num_y, den_y)) % n


# -- residue fields and Gauss sums -----------------------------------------------------

class ResidueField:
    """F_{q^d} realised as F_q[t] / (P) for the first irreducible P of degree d."""

    def __init__(self, q: int, d: int):
        self.q = q
        self.d = d
        self.modulus = irreducibles(q, d)[0] if d > 1 else FqPoly(q, [0, 1])
        self.size = q ** d

    def elements(self) -> Iterator[FqPoly]:
        for tail in itertools.product(range(self.q), repeat=self.d):
            yield FqPoly(self.q, list(tail))

    def units(self) -> Iterator[FqPoly]:
        for x in self.elements():
            if x:
                yield x

    def mul(self, a: FqPoly, b: FqPoly) -> FqPoly:
        return (a * b) % self.modulus

    def inv(self, a: FqPoly) -> FqPoly:
        return a.powmod(self.size - 2, self.modulus)

    def trace(self, a: FqPoly) -> int:
        acc = FqPoly(self.q, [])
        x = a % self.modulus
        for _ in range(self.d):
            acc = acc + x
            x = x.powmod(self.q, self.modulus)
        if acc.degree > 0:
            raise ArithmeticError("trace left the prime field")
        return acc.lc if acc else 0

    def chi(self, a: FqPoly, n: int) -> int:
        """Index of a^{(q^d - 1)/n}."""
        val = a.powmod((self.size - 1) // n, self.modulus)
        return mu_embedding(self.q, n).dlog(val.lc if val else 0)

    def psi(self, a: FqPoly) -> complex:
        return cmath.exp(2j * cmath.pi * self.trace(a) / self.q)


@lru_cache(maxsize=None)
def residue_field(q: int, d: int) -> ResidueField:
    return ResidueField(q, d)


@lru_cache(maxsize=None)
def _unit_data(q: int, d: int, n: int) -> tuple[tuple[int, complex], ...]:
    """(chi index of r, psi(1/r)) for every unit r of F_{q^d}."""
    F = residue_field(q, d)
    return tuple((F.chi(r, n), F.psi(F.inv(r))) for r in F.units())


def _check_place_field(q: int, d: int, n: int) -> None:
    if (q ** d - 1) % n:
        raise ValueError(f"n={n} must divide q_nu-1={q ** d - 1}")


def gauss_sum(k: int, place: Place | int, n: int, q: int | None = None) -> complex:
    """g_k = sum over residue-field units r of eps(chi(r))^k psi(1/r).

    ``place`` may be a Place or just a residue degree (then ``q`` is needed).
    """
    if isinstance(place, Place):
        q, d = place.q, place.degree
    else:
        d = int(place)
        if q is None:
            raise ValueError("q is required when passing a degree")
    _check_place_field(q, d, n)
    k %= n
    if k == 0:
        return complex(-1.0)
    total = 0j
    for j, ps in _unit_data(q, d, n):
        total += epsilon(j * k, n) * ps
    return total


@lru_cache(maxsize=None)
def gauss_table_degree(q: int, n: int, d: int) -> tuple[complex, ...]:
    _check_place_field(q, d, n)
    return tuple(gauss_sum(k, d, n, q) for k in range(n))


def gauss_table(place: Place, n: int) -> dict[int, complex]:
    """{k: g_k} for k = 0, ..., n-1 at the residue field of ``place``."""
    return dict(enumerate(gauss_table_degree(place.q, n, place.degree)))


def gauss_sum_G(k: int, b: int, q: int, n: int, d: int = 1) -> complex:
    """G(k, b) = q * integral over units of (r, pi)^k psi(pi^b / r) dr, by direct summation.

    The additive character is psi(sum c_j pi^j) = psi_0(c_{-1}), which is
    unramified. For b <= -1 the integral is a finite sum over (O / pi^m)^x,
    m = -b, each class having measure q_nu^{-m}.
    """
    _check_place_field(q, d, n)
    F = residue_field(q, d)
    qn = F.size
    if b >= 0:
        return complex(sum(epsilon(F.chi(r, n) * k, n) for r in F.units()))
    m = -b
    zero = FqPoly(q, [])
    elems = list(F.elements())
    units = [x for x in elems if x]
    total = 0j
    for r0 in units:
        inv0 = F.inv(r0)
        ch = epsilon(F.chi(r0, n) * k, n)
        for tail in itertools.product(elems, repeat=m - 1):
            digits = [r0, *tail]
            # invert the truncated power series r = sum digits[j] pi^j
            inv = [inv0]
            for j in range(1, m):
                acc = zero
                for i in range(1, j + 1):
                    acc = acc + F.mul(digits[i], inv[j - i])
                inv.append(F.mul(-acc % F.modulus, inv0))
            # pi^b r^{-1}: coefficient of pi^{-1} is inv[m-1]
            total += ch * F.psi(inv[m - 1])
    return total * qn ** (1 - m)
