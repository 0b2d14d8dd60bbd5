"""Exact arithmetic in C[v, 1/v][g_k], its group algebra over the coweight
lattice, and the localization at factors 1 - v^d e^{-mu}.

Scalars are stored internally in a reduced form keyed by
``(v_exp, (e_1, ..., e_m), h)`` where ``m = (n-1)//2``:

* ``e_k`` is a Laurent exponent of ``g_k`` for ``1 <= k < n/2``; a negative
  exponent stands for powers of ``g_k^{-1} = v g_{n-k}``;
* ``h`` in {0, 1} is the exponent of ``g_{n/2}`` (n even only).

This key is unique because of the relations g_k = g_{k+n}, g_0 = -1 and
g_k g_{-k} = 1/v. The public "normal form" used for display and
serialization rewrites negative ``e_k`` as positive powers of ``g_{n-k}``.
"""

from __future__ import annotations

import cmath
from collections import Counter, defaultdict
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Sequence

Vector = tuple[int, ...]
SKey = tuple[int, tuple[int, ...], int]
Coeff = Fraction | int


class NotDivisible(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""

    def __init__(self, remainder: "GroupAlgebraElement", message: str = "division leaves a remainder"):
        super().__init__(message)
        self.remainder = remainder


def _frac(c) -> Coeff:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _frac(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return _frac(Fraction(c))
    raise TypeError(f"unsupported coefficient {c!r}")


def _fmt_coeff(c: Coeff) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# -- the ring of scalars ------------------------------------------------------

class GaussRing:
    """Bookkeeping for the relations among g_k at a fixed cover degree n."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.m = (n - 1) // 2
        self.even = n % 2 == 0
        self.one_key: SKey = (0, (0,) * self.m, 0)

    def __eq__(self, other):
        return isinstance(other, GaussRing) and other.n == self.n

    def __hash__(self):
        return hash(("GaussRing", self.n))

    def __repr__(self):
        return f"GaussRing(n={self.n})"

    # key helpers
    def g_key(self, k: int) -> tuple[int, SKey]:
        """Sign and key of the generator g_k."""
        k %= self.n
        if k == 0:
            return -1, self.one_key
        e = [0] * self.m
        if self.even and 2 * k == self.n:
            return 1, (0, tuple(e), 1)
        if k <= self.m:
            e[k - 1] = 1
            return 1, (0, tuple(e), 0)
        e[self.n - k - 1] = -1
        return 1, (-1, tuple(e), 0)

    def mul_keys(self, a: SKey, b: SKey) -> SKey:
        v = a[0] + b[0]
        h = a[2] + b[2]
        if h >= 2:
            h -= 2
            v -= 1
        if self.m:
            return (v, tuple(x + y for x, y in zip(a[1], b[1])), h)
        return (v, (), h)

    def shift_v(self, a: SKey, d: int) -> SKey:
        return (a[0] + d, a[1], a[2])

    def display_key(self, key: SKey) -> tuple[int, dict[int, int]]:
        """(v exponent, {k: nonnegative exponent of g_k}) in normal form."""
        v, e, h = key
        g: dict[int, int] = {}
        for idx, x in enumerate(e):
            k = idx + 1
            if x > 0:
                g[k] = x
            elif x < 0:
                g[self.n - k] = -x
                v += -x
        if h:
            g[self.n // 2] = 1
        return v, dict(sorted(g.items()))

    def key_from_display(self, v: int, g: Mapping[int, int]) -> tuple[int, SKey]:
        sign = 1
        key = (v, (0,) * self.m, 0)
        for k, e in g.items():
            if e < 0:
                raise ValueError("normal-form g exponents are nonnegative")
            s, gk = self.g_key(int(k))
            for _ in range(e):
                key = self.mul_keys(key, gk)
                sign *= s
        return sign, key

    def scalar(self, terms: Mapping[SKey, Coeff] | None = None) -> "GaussScalar":
        return GaussScalar(self, terms or {})

    def one(self) -> "GaussScalar":
        return GaussScalar(self, {self.one_key: 1})

    def zero(self) -> "GaussScalar":
        return GaussScalar(self, {})

    def const(self, c) -> "GaussScalar":
        return GaussScalar(self, {self.one_key: _frac(c)})

    def v(self, exp: int = 1) -> "GaussScalar":
        return GaussScalar(self, {(exp, (0,) * self.m, 0): 1})

    def g(self, k: int) -> "GaussScalar":
        s, key = self.g_key(k)
        return GaussScalar(self, {key: s})


def _add_into(target: dict, key, c) -> None:
    val = target.get(key, 0) + c
    if val:
        target[key] = val
    else:
        target.pop(key, None)


class GaussScalar:
    """An element of C[v, 1/v][g_k] with rational coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GaussRing, terms: Mapping[SKey, Coeff]):
        self.ring = ring
        self.terms = {k: _frac(c) for k, c in terms.items() if c}

    # arithmetic
    def _coerce(self, other) -> "GaussScalar":
        if isinstance(other, GaussScalar):
            if other.ring != self.ring:
                raise ValueError(f"mismatched n: {self.ring.n} vs {other.ring.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return GaussScalar(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GaussScalar(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[SKey, Coeff] = {}
        mk = self.ring.mul_keys
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                _add_into(out, mk(ka, kb), ca * cb)
        return GaussScalar(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers of general scalars are not defined")
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, GaussScalar):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def normalize(self) -> "GaussScalar":
        return GaussScalar(self.ring, self.terms)

    def normal_form(self) -> list[tuple[int, dict[int, int], Coeff]]:
        """Terms as (v exponent, {k: exponent of g_k}, coefficient), sorted."""
        rows = []
        for key, c in self.terms.items():
            v, g = self.ring.display_key(key)
            rows.append((v, g, c))
        rows.sort(key=lambda t: (t[0], sorted(t[1].items())))
        return rows

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"GaussScalar(n={self.ring.n}, {format_scalar(self)})"

    def evaluate(self, q_nu: int | float, gauss_values: Mapping[int, complex]) -> complex:
        total = 0j
        for v, g, c in self.normal_form():
            val = complex(Fraction(c)) * (float(q_nu) ** (-v))
            for k, e in g.items():
                if k % self.ring.n not in gauss_values:
                    raise KeyError(f"missing Gauss value for k={k}")
                val *= gauss_values[k % self.ring.n] ** e
            total += val
        return total


def _monomial_str(v: int, g: Mapping[int, int]) -> str:
    parts = []
    if v:
        parts.append("v" if v == 1 else f"v^{v}")
    for k, e in g.items():
        parts.append(f"g{k}" if e == 1 else f"g{k}^{e}")
    return "*".join(parts)


def format_scalar(s: GaussScalar) -> str:
    rows = s.normal_form()
    if not rows:
        return "0"
    out = []
    for v, g, c in rows:
        mono = _monomial_str(v, g)
        c = Fraction(c)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
        else:
            body = _fmt_coeff(a)
        out.append(("-" if neg else "+", body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


# -- group algebra --------------------------------------------------------------

class GroupAlgebraElement:
    """Finite sum of c * (scalar monomial) * e^{lambda}, lambda in the coweight lattice.

    Stored flat: ``terms[(lam, skey)] = rational coefficient``.
    """

    __slots__ = ("ring", "rank", "terms")

    def __init__(self, ring: GaussRing, rank: int, terms: Mapping[tuple[Vector, SKey], Coeff] | None = None):
        self.ring = ring
        self.rank = rank
        self.terms: dict[tuple[Vector, SKey], Coeff] = {}
        if terms:
            for k, c in terms.items():
                c = _frac(c)
                if c:
                    self.terms[k] = c

    @classmethod
    def _raw(cls, ring, rank, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.rank = rank
        obj.terms = terms
        return obj

    @classmethod
    def monomial(cls, ring: GaussRing, lam: Sequence[int], scalar: GaussScalar | Coeff = 1) -> "GroupAlgebraElement":
        lam = tuple(lam)
        if not isinstance(scalar, GaussScalar):
            scalar = ring.const(scalar)
        return cls(ring, len(lam), {(lam, k): c for k, c in scalar.terms.items()})

    @classmethod
    def zero(cls, ring: GaussRing, rank: int) -> "GroupAlgebraElement":
        return cls._raw(ring, rank, {})

    @classmethod
    def one(cls, ring: GaussRing, rank: int) -> "GroupAlgebraElement":
        return cls._raw(ring, rank, {((0,) * rank, ring.one_key): 1})

    @classmethod
    def from_dict(cls, ring: GaussRing, rank: int, data: Mapping[Vector, GaussScalar]) -> "GroupAlgebraElement":
        terms: dict = {}
        for lam, s in data.items():
            for k, c in s.terms.items():
                terms[(tuple(lam), k)] = c
        return cls._raw(ring, rank, terms)

    # views
    def coefficients(self) -> dict[Vector, GaussScalar]:
        grouped: dict[Vector, dict[SKey, Coeff]] = defaultdict(dict)
        for (lam, k), c in self.terms.items():
            grouped[lam][k] = c
        return {lam: GaussScalar(self.ring, t) for lam, t in grouped.items()}

    def coefficient(self, lam: Sequence[int]) -> GaussScalar:
        lam = tuple(lam)
        return GaussScalar(self.ring, {k: c for (l, k), c in self.terms.items() if l == lam})

    def support(self) -> set[Vector]:
        return {lam for lam, _ in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.coefficients())

    # arithmetic
    def _check(self, other: "GroupAlgebraElement"):
        if other.ring != self.ring or other.rank != self.rank:
            raise ValueError("incompatible group algebra elements")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussScalar)):
            other = GroupAlgebraElement.monomial(self.ring, (0,) * self.rank, other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return GroupAlgebraElement._raw(self.ring, self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupAlgebraElement._raw(self.ring, self.rank, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussScalar)):
            other = GroupAlgebraElement.monomial(self.ring, (0,) * self.rank, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            if not c:
                return GroupAlgebraElement.zero(self.ring, self.rank)
            return GroupAlgebraElement._raw(self.ring, self.rank, {k: v * c for k, v in self.terms.items()})
        if isinstance(other, GaussScalar):
            other = GroupAlgebraElement.monomial(self.ring, (0,) * self.rank, other)
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        self._check(other)
        out: dict = {}
        mk = self.ring.mul_keys
        for (la, ka), ca in self.terms.items():
            for (lb, kb), cb in other.terms.items():
                _add_into(out, (tuple(x + y for x, y in zip(la, lb)), mk(ka, kb)), ca * cb)
        return GroupAlgebraElement._raw(self.ring, self.rank, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussScalar)):
            other = GroupAlgebraElement.monomial(self.ring, (0,) * self.rank, other)
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.ring == other.ring and self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def shift(self, mu: Sequence[int], v_exp: int = 0, coeff: Coeff = 1) -> "GroupAlgebraElement":
        """Multiply by coeff * v^{v_exp} * e^{mu}."""
        sv = self.ring.shift_v
        return GroupAlgebraElement._raw(
            self.ring,
            self.rank,
            {(tuple(x + y for x, y in zip(lam, mu)), sv(k, v_exp)): c * coeff for (lam, k), c in self.terms.items()},
        )

    def mul_factor(self, delta: int, mu: Sequence[int]) -> "GroupAlgebraElement":
        """Multiply by (1 - v^delta e^{-mu})."""
        return self - self.shift(tuple(-x for x in mu), delta)

    def map_lattice(self, fn) -> "GroupAlgebraElement":
        out: dict = {}
        for (lam, k), c in self.terms.items():
            _add_into(out, (tuple(fn(lam)), k), c)
        return GroupAlgebraElement._raw(self.ring, self.rank, out)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"GroupAlgebraElement(n={self.ring.n}, {format_element(self)})"


def lattice_sort_key(lam: Vector):
    return (-sum(lam), lam)


def format_element(x: GroupAlgebraElement) -> str:
    coeffs = x.coefficients()
    if not coeffs:
        return "0"
    pieces: list[tuple[str, str]] = []
    for lam in sorted(coeffs, key=lattice_sort_key):
        s = coeffs[lam]
        rows = s.normal_form()
        mono_e = "" if not any(lam) else "e[" + ",".join(str(a) for a in lam) + "]"
        if len(rows) == 1:
            v, g, c = rows[0]
            c = Fraction(c)
            neg = c < 0
            a = -c if neg else c
            parts = []
            if a != 1 or (not _monomial_str(v, g) and not mono_e):
                parts.append(_fmt_coeff(a))
            if _monomial_str(v, g):
                parts.append(_monomial_str(v, g))
            if mono_e:
                parts.append(mono_e)
            pieces.append(("-" if neg else "+", "*".join(parts)))
        else:
            body = f"({format_scalar(s)})"
            pieces.append(("+", body + ("*" + mono_e if mono_e else "")))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


# -- exact division -------------------------------------------------------------

def exact_divide(p: GroupAlgebraElement, delta: int, mu: Sequence[int]) -> GroupAlgebraElement:
    """Return q with q * (1 - v^delta e^{-mu}) == p, or raise NotDivisible.

    Terms are grouped along lines lambda + Z*mu; on each line the division is
    synthetic division of a Laurent polynomial in z = e^{-mu} by 1 - c*z.
    """
    mu = tuple(mu)
    if not any(mu):
        raise ValueError("factor exponent must be nonzero")
    piv = next(i for i, x in enumerate(mu) if x)
    mp = mu[piv]
    ring = p.ring
    sv = ring.shift_v
    lines: dict[Vector, dict[int, dict[SKey, Coeff]]] = defaultdict(lambda: defaultdict(dict))
    for (lam, k), c in p.terms.items():
        j = lam[piv] // mp
        base = tuple(a - j * b for a, b in zip(lam, mu))
        lines[base][-j][k] = c
    out: dict = {}
    remainder: dict = {}
    for base, by_power in lines.items():
        powers = sorted(by_power)
        lo, hi = powers[0], powers[-1]
        prev: dict[SKey, Coeff] = {}
        for t in range(lo, hi + 1):
            cur = dict(by_power.get(t, {}))
            for k, c in prev.items():
                _add_into(cur, sv(k, delta), c)
            if t == hi:
                if cur:
                    lam = tuple(a - t * b for a, b in zip(base, mu))
                    for k, c in cur.items():
                        remainder[(lam, k)] = c
            else:
                lam = tuple(a - t * b for a, b in zip(base, mu))
                for k, c in cur.items():
                    out[(lam, k)] = c
            prev = cur
    if remainder:
        raise NotDivisible(GroupAlgebraElement._raw(ring, p.rank, remainder))
    return GroupAlgebraElement._raw(ring, p.rank, out)


# -- localization ---------------------------------------------------------------

Factor = tuple[int, Vector]  # (delta, mu) meaning 1 - v^delta e^{-mu}


def _is_positive(vec: Sequence[int]) -> bool:
    for x in vec:
        if x:
            return x > 0
    return False


class LocalizedElement:
    """numerator / prod over factors (1 - v^delta e^{-mu}) with multiplicity."""

    __slots__ = ("num", "den")

    def __init__(self, num: GroupAlgebraElement, den: Mapping[Factor, int] | Iterable[Factor] = ()):
        self.num = num
        self.den: Counter = Counter()
        items = den.items() if isinstance(den, Mapping) else ((f, 1) for f in den)
        for (delta, mu), mult in items:
            for _ in range(mult):
                self._push(delta, tuple(mu))

    def _push(self, delta: int, mu: Vector) -> None:
        if delta not in (0, 1):
            raise ValueError("denominator factors need delta in {0, 1}")
        if not any(mu):
            raise ValueError("denominator factor exponent must be nonzero")
        if delta == 0 and not _is_positive(mu):
            # 1 - e^{-mu} = -e^{-mu} (1 - e^{mu})
            self.num = self.num.shift(mu, 0, -1)
            mu = tuple(-x for x in mu)
        self.den[(delta, mu)] += 1

    @classmethod
    def from_poly(cls, p: GroupAlgebraElement) -> "LocalizedElement":
        return cls(p)

    @classmethod
    def monomial(cls, ring: GaussRing, lam: Sequence[int], scalar=1) -> "LocalizedElement":
        return cls(GroupAlgebraElement.monomial(ring, lam, scalar))

    @property
    def ring(self) -> GaussRing:
        return self.num.ring

    @property
    def rank(self) -> int:
        return self.num.rank

    def copy(self) -> "LocalizedElement":
        out = LocalizedElement.__new__(LocalizedElement)
        out.num = self.num
        out.den = Counter(self.den)
        return out

    def factors(self) -> list[Factor]:
        return sorted(self.den.elements())

    def _expand_to(self, target: Counter) -> GroupAlgebraElement:
        num = self.num
        for f, mult in target.items():
            for _ in range(mult - self.den.get(f, 0)):
                num = num.mul_factor(*f)
        return num

    def __add__(self, other):
        if isinstance(other, GroupAlgebraElement):
            other = LocalizedElement(other)
        if not isinstance(other, LocalizedElement):
            return NotImplemented
        common = self.den | other.den
        out = LocalizedElement.__new__(LocalizedElement)
        out.num = self._expand_to(common) + other._expand_to(common)
        out.den = Counter(common)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = self.copy()
        out.num = -self.num
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussScalar, GroupAlgebraElement)):
            out = self.copy()
            out.num = self.num * other
            return out
        if not isinstance(other, LocalizedElement):
            return NotImplemented
        out = LocalizedElement.__new__(LocalizedElement)
        out.num = self.num * other.num
        out.den = self.den + other.den
        return out

    __rmul__ = __mul__

    def mul_factor(self, delta: int, mu: Sequence[int]) -> "LocalizedElement":
        """Multiply by (1 - v^delta e^{-mu}), cancelling a matching denominator."""
        mu = tuple(mu)
        out = self.copy()
        key = (delta, mu)
        if out.den.get(key):
            out.den[key] -= 1
            if not out.den[key]:
                del out.den[key]
            return out
        if delta == 0:
            neg = tuple(-x for x in mu)
            if out.den.get((0, neg)):
                # 1 - e^{-mu} = -e^{-mu} (1 - e^{mu})
                out.den[(0, neg)] -= 1
                if not out.den[(0, neg)]:
                    del out.den[(0, neg)]
                out.num = out.num.shift(neg, 0, -1)
                return out
        out.num = out.num.mul_factor(delta, mu)
        return out

    def div_factor(self, delta: int, mu: Sequence[int]) -> "LocalizedElement":
        out = self.copy()
        out._push(delta, tuple(mu))
        return out

    def clear_denominators(self) -> GroupAlgebraElement:
        """Exact polynomial value; NotDivisible if some factor does not divide."""
        num = self.num
        for (delta, mu) in self.factors():
            num = exact_divide(num, delta, mu)
        return num

    def is_polynomial(self) -> bool:
        try:
            self.clear_denominators()
        except NotDivisible:
            return False
        return True

    def equals(self, other: "LocalizedElement") -> bool:
        if isinstance(other, GroupAlgebraElement):
            other = LocalizedElement(other)
        common = self.den | other.den
        return self._expand_to(common) == other._expand_to(common)

    def __eq__(self, other):
        if isinstance(other, (LocalizedElement, GroupAlgebraElement)):
            return self.equals(other)
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def map_lattice(self, fn) -> "LocalizedElement":
        """Apply a lattice automorphism to numerator and denominators alike."""
        out = LocalizedElement(self.num.map_lattice(fn))
        for (delta, mu), mult in self.den.items():
            for _ in range(mult):
                out._push(delta, tuple(fn(mu)))
        return out

    def __str__(self):
        if not self.den:
            return str(self.num)
        dens = " * ".join(_fmt_factor(f) for f in self.factors())
        return f"({self.num}) / ({dens})"

    __repr__ = __str__


def _fmt_factor(f: Factor) -> str:
    delta, mu = f
    neg = ",".join(str(-x) for x in mu)
    return f"(1 - {'v*' if delta else ''}e[{neg}])"


def frac_add(x: LocalizedElement, y: LocalizedElement) -> LocalizedElement:
    return x + y


def frac_mul(x: LocalizedElement, y: LocalizedElement) -> LocalizedElement:
    return x * y


def scalar_mul(a: GaussScalar, b: GaussScalar) -> GaussScalar:
    return a * b


# -- specialization and restriction ---------------------------------------------

def specialize(x: GroupAlgebraElement | GaussScalar, q_nu: int | float, gauss_values: Mapping[int, complex]):
    """Evaluate v -> 1/q_nu and g_k -> gauss_values[k mod n].

    Returns a complex number for a scalar, otherwise a dict lambda -> complex
    with cancelled entries removed.
    """
    if isinstance(x, GaussScalar):
        return x.evaluate(q_nu, gauss_values)
    out: dict[Vector, complex] = {}
    for lam, s in x.coefficients().items():
        val = s.evaluate(q_nu, gauss_values)
        if val != 0:
            out[lam] = val
    return out


def coset_restrict(x: GroupAlgebraElement, rep: Sequence[int], in_lattice) -> GroupAlgebraElement:
    """Keep the terms e^{-mu} with mu + rep in the sublattice.

    ``in_lattice`` is a membership predicate, typically
    ``MetaplecticStructure.in_lambda0``.
    """
    rep = tuple(rep)
    keep = {}
    for (lam, k), c in x.terms.items():
        if in_lattice(tuple(-a + b for a, b in zip(lam, rep))):
            keep[(lam, k)] = c
    return GroupAlgebraElement._raw(x.ring, x.rank, keep)


# -- serialization ------------------------------------------------------------

def to_records(x: GroupAlgebraElement) -> list[dict]:
    rows = []
    coeffs = x.coefficients()
    for lam in sorted(coeffs, key=lattice_sort_key):
        for v, g, c in coeffs[lam].normal_form():
            rows.append({"lambda": list(lam), "v": v, "g": {str(k): e for k, e in g.items()}, "coeff": _fmt_coeff(c)})
    return rows


def from_records(ring: GaussRing, rank: int, rows: Iterable[Mapping]) -> GroupAlgebraElement:
    terms: dict = {}
    for row in rows:
        sign, key = ring.key_from_display(int(row["v"]), {int(k): int(e) for k, e in row.get("g", {}).items()})
        _add_into(terms, (tuple(int(a) for a in row["lambda"]), key), sign * _frac(Fraction(str(row["coeff"]))))
    return GroupAlgebraElement._raw(ring, rank, terms)


@lru_cache(maxsize=None)
def root_of_unity(n: int, j: int) -> complex:
    return cmath.exp(2j * cmath.pi * (j % n) / n)
