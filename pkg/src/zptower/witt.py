"""Truncated p-typical Witt vectors.

Arithmetic in characteristic p works by lifting every coordinate to a
p-torsion-free ring modulo p^N (Z_q, Z_q-coefficient series, lifted rational
functions), adding or multiplying ghost components there, and recovering
coordinates with exact divisions by p^i.  Any lift works: p^j a^(p^(i-j))
modulo p^(i+1) only depends on a modulo p.

Over Z/p^M the coordinates are plain integers and the ghost map is computed
exactly over Z.
"""
from __future__ import annotations

from functools import lru_cache

import sympy

from .algebra import FFElem, FieldSpec, UnramElem, elements, find_embedding
from .errors import (
    InputError,
    LengthMismatch,
    NotDivisible,
    NotInBaseField,
    OracleTooLarge,
    SpecMismatch,
    WrongCharacteristic,
)
from .ratfunc import RatFunc
from .series import LaurentSeries


# coefficient rings ------------------------------------------------------------


class CharPRing:
    """Coordinates are FFElem, LaurentSeries over F_q, or RatFunc.

    For series, ``prec`` caps the absolute precision of lifts; arithmetic
    then never carries coefficients beyond that working budget.
    """

    char_p = True

    def __init__(self, spec: FieldSpec, kind: str, prec=None):
        self.spec, self.kind, self.prec = spec, kind, prec

    @property
    def p(self):
        return self.spec.p

    def __eq__(self, other):
        return isinstance(other, CharPRing) and (self.spec, self.kind) == (other.spec, other.kind)

    def __hash__(self):
        return hash((self.spec, self.kind))

    def __repr__(self):
        return f"CharPRing({self.spec}, {self.kind})"

    def zero(self):
        if self.kind == "field":
            return FFElem.zero(self.spec)
        if self.kind == "series":
            return LaurentSeries.zero(self.spec, 1, self.prec)
        return RatFunc.zero(self.spec)

    def one(self):
        if self.kind == "field":
            return FFElem.one(self.spec)
        if self.kind == "series":
            return LaurentSeries.one(self.spec, 1, self.prec)
        return RatFunc.one(self.spec)

    def coerce(self, x):
        if isinstance(x, int):
            return self.one() * x
        return x

    def lift(self, x, N):
        if self.prec is not None and self.kind == "series":
            x = x.truncate(self.prec)
        return x.lift(N)

    @staticmethod
    def lifted_pow(y, e):
        return y**e

    @staticmethod
    def divp(y, i):
        return y.divp(i)

    @staticmethod
    def reduce(y):
        return y.reduce()

    @staticmethod
    def frobenius(x):
        return x.frobenius()

    def is_zero(self, x):
        return x.is_zero()


class IntModRing:
    """Coordinates are integers modulo p^M (ghost map computed over Z)."""

    char_p = False

    def __init__(self, p: int, M: int):
        self.p, self.M = p, M
        self.mod = p**M

    def __eq__(self, other):
        return isinstance(other, IntModRing) and (self.p, self.M) == (other.p, other.M)

    def __hash__(self):
        return hash((self.p, self.M))

    def __repr__(self):
        return f"IntModRing({self.p}, {self.M})"

    def zero(self):
        return 0

    def one(self):
        return 1 % self.mod

    def coerce(self, x):
        return int(x) % self.mod

    @staticmethod
    def lift(x, N):
        return int(x)

    @staticmethod
    def lifted_pow(y, e):
        return y**e

    def divp(self, y, i):
        q = self.p**i
        if y % q:
            raise NotDivisible(f"{y} is not divisible by {self.p}^{i}")
        return y // q

    def reduce(self, y):
        return y % self.mod

    def frobenius(self, x):
        raise WrongCharacteristic("coordinatewise Frobenius needs a characteristic-p ring")

    def is_zero(self, x):
        return x % self.mod == 0


def ring_of(x, prec=None):
    if isinstance(x, FFElem):
        return CharPRing(x.spec, "field")
    if isinstance(x, LaurentSeries):
        if x.M != 1:
            raise WrongCharacteristic("Witt coordinates must be series over F_q")
        return CharPRing(x.spec, "series", prec)
    if isinstance(x, RatFunc):
        return CharPRing(x.spec, "ratfunc")
    raise TypeError(f"cannot infer a coefficient ring for {type(x).__name__}")


def _sum(terms):
    acc = None
    for t in terms:
        acc = t if acc is None else acc + t
    return acc


# Witt vectors -------------------------------------------------------------------


class WittVec:
    """(x_0, ..., x_{N-1}) in W_N(C)."""

    __slots__ = ("ring", "coords")

    def __init__(self, coords, ring=None):
        coords = list(coords)
        if not coords:
            raise LengthMismatch("Witt vectors have positive length")
        if ring is None:
            ring = ring_of(next((c for c in coords if not isinstance(c, int)), coords[0]))
        self.ring = ring
        self.coords = tuple(ring.coerce(c) for c in coords)

    @property
    def p(self):
        return self.ring.p

    @property
    def N(self):
        return len(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    @classmethod
    def zero(cls, ring, N):
        return cls([ring.zero()] * N, ring)

    @classmethod
    def one(cls, ring, N):
        return cls([ring.one()] + [ring.zero()] * (N - 1), ring)

    @classmethod
    def teichmueller(cls, x, N, ring=None):
        ring = ring or ring_of(x)
        return cls([x] + [ring.zero()] * (N - 1), ring)

    # ghost map ------------------------------------------------------------
    def ghost(self, M=None):
        """Ghost components of a lift (mod p^M, default M = N; exact over Z/p^M rings)."""
        M = M or self.N
        p = self.p
        lifts = [self.ring.lift(x, M) for x in self.coords]
        return [
            _sum(self.ring.lifted_pow(lifts[j], p ** (i - j)) * p**j for j in range(i + 1)) for i in range(self.N)
        ]

    @classmethod
    def from_ghost(cls, ghosts, ring, M=None):
        """Inverse of the ghost map; raises NotDivisible outside its image."""
        N = len(ghosts)
        M = M or N
        p = ring.p
        coords, lifts = [], []
        for i, g in enumerate(ghosts):
            s = g
            for j, lj in enumerate(lifts):
                s = s - ring.lifted_pow(lj, p ** (i - j)) * p**j
            w = ring.reduce(ring.divp(s, i))
            coords.append(w)
            lifts.append(ring.lift(w, M))
        return cls(coords, ring)

    # ring operations --------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, WittVec):
            raise TypeError(f"expected a Witt vector, got {type(other).__name__}")
        if other.N != self.N:
            raise LengthMismatch(f"lengths {self.N} and {other.N}")
        if other.ring != self.ring:
            raise SpecMismatch(f"coefficient rings {self.ring} and {other.ring}")

    def _binary(self, other, op):
        self._check(other)
        ga, gb = self.ghost(), other.ghost()
        return WittVec.from_ghost([op(a, b) for a, b in zip(ga, gb)], self.ring)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __mul__(self, other):
        if isinstance(other, int):
            return WittVec.from_ghost([g * other for g in self.ghost()], self.ring)
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return WittVec.from_ghost([g * -1 for g in self.ghost()], self.ring)

    def __eq__(self, other):
        if not isinstance(other, WittVec):
            return NotImplemented
        if other.N != self.N or other.ring != self.ring:
            return False
        return all(self.ring.is_zero(a - b) for a, b in zip(self.coords, other.coords))

    __hash__ = None

    def is_zero(self):
        return all(self.ring.is_zero(c) for c in self.coords)

    # structure maps ------------------------------------------------------------
    def V(self):
        return WittVec([self.ring.zero()] + list(self.coords[:-1]), self.ring)

    def F(self):
        return WittVec([self.ring.frobenius(c) for c in self.coords], self.ring)

    def wp(self):
        return self.F() - self

    def truncate(self, n):
        return WittVec(self.coords[:n], self.ring)

    def map(self, fn, ring=None):
        return WittVec([fn(c) for c in self.coords], ring)

    def evaluate(self, z: FFElem, embed=None):
        """Coordinatewise value at z (rational-function coordinates)."""
        return WittVec([c.evaluate(z, embed) for c in self.coords], CharPRing(z.spec, "field"))

    def __repr__(self):
        return "(" + ", ".join(repr(c) for c in self.coords) + ")"

    # serialization -------------------------------------------------------------
    def to_json(self):
        if isinstance(self.ring, IntModRing):
            return {"coords": [int(c) for c in self.coords]}
        return {"coords": [c.to_json() for c in self.coords]}

    @classmethod
    def from_json(cls, ring, obj):
        if not isinstance(obj, dict) or not isinstance(obj.get("coords"), list) or not obj["coords"]:
            raise InputError("Witt literal needs a nonempty 'coords' list", "/coords")
        out = []
        for k, c in enumerate(obj["coords"]):
            try:
                if isinstance(ring, IntModRing):
                    if not isinstance(c, int):
                        raise InputError("integer coordinate expected")
                    out.append(c)
                elif ring.kind == "field":
                    out.append(FFElem.from_json(ring.spec, c))
                elif ring.kind == "series":
                    out.append(LaurentSeries.from_json(ring.spec, c))
                else:
                    out.append(RatFunc.from_json(ring.spec, c))
            except InputError as exc:
                raise InputError(str(exc), f"/coords/{k}{exc.pointer}") from exc
        return cls(out, ring)


# Z_q <-> W(F_q) -----------------------------------------------------------------


def from_unram(x: UnramElem) -> WittVec:
    return WittVec(x.witt_coords(), CharPRing(x.spec, "field"))


def to_unram(a: WittVec) -> UnramElem:
    return UnramElem.from_witt(a.ring.spec, list(a.coords))


def to_zpn(a: WittVec) -> int:
    """W_n(F_p) -> Z/p^n."""
    if a.ring.kind != "field" or a.ring.spec.f != 1:
        raise SpecMismatch("only W_n(F_p) maps to Z/p^n")
    return to_unram(a).c[0]


def minus_one(ring, N):
    """-1 in W_N of a characteristic-p ring."""
    if ring.p == 2:
        return WittVec([ring.one()] * N, ring)
    return WittVec([ring.one() * -1] + [ring.zero()] * (N - 1), ring)


# trace ----------------------------------------------------------------------------


def trace_witt(a: WittVec, base: FieldSpec) -> WittVec:
    """Sum of the conjugates of a over W(base); coordinates returned in base."""
    big = a.ring.spec
    if big.p != base.p or big.f % base.f:
        raise SpecMismatch(f"{base} is not a subfield of {big}")
    acc = a
    cur = a
    for _ in range(big.f // base.f - 1):
        for _ in range(base.f):
            cur = cur.F()
        acc = acc + cur
    embed = find_embedding(base, big)
    back = {embed(x): x for x in elements(base)}
    out = []
    for c in acc.coords:
        if c not in back:
            raise NotInBaseField(f"trace coordinate {c!r} is not in {base}")
        out.append(back[c])
    return WittVec(out, CharPRing(base, "field"))


# universal polynomials --------------------------------------------------------------


class UniversalPolys:
    """Integer polynomials S_i, P_i for Witt addition and multiplication."""

    def __init__(self, p, n, xs, ys, S, P):
        self.p, self.n = p, n
        self.xs, self.ys = xs, ys
        self.S, self.P = S, P
        self._compiled = {}

    def _terms(self, which, i):
        key = (which, i)
        if key not in self._compiled:
            poly = sympy.Poly((self.S if which == "S" else self.P)[i], *self.xs, *self.ys)
            self._compiled[key] = [(int(c), m) for m, c in poly.terms()]
        return self._compiled[key]

    def _apply(self, which, a: WittVec, b: WittVec):
        if a.N != self.n or b.N != self.n:
            raise LengthMismatch(f"oracle built for length {self.n}")
        ring = a.ring
        vals = list(a.coords) + list(b.coords)
        powers = {}

        def pw(k, e):
            if (k, e) not in powers:
                powers[(k, e)] = vals[k] ** e
            return powers[(k, e)]

        out = []
        for i in range(self.n):
            acc = ring.zero()
            for c, mono in self._terms(which, i):
                term = ring.one() * c
                for k, e in enumerate(mono):
                    if e:
                        term = term * pw(k, e)
                acc = acc + term
            out.append(acc)
        return WittVec(out, ring)

    def add(self, a, b):
        return self._apply("S", a, b)

    def mul(self, a, b):
        return self._apply("P", a, b)

    def sub(self, a, b):
        return self.add(a, self.mul(minus_one(a.ring, self.n), b))


def _ghost_poly(vs, i, p):
    return sum(p**j * vs[j] ** (p ** (i - j)) for j in range(i + 1))


@lru_cache(maxsize=None)
def universal_polys(p: int, n: int) -> UniversalPolys:
    if not ((p in (2, 3) and n <= 3) or (p == 5 and n <= 2)) or n < 1:
        raise OracleTooLarge(f"universal polynomials for p={p}, n={n} are outside the supported window")
    xs = sympy.symbols(f"x0:{n}")
    ys = sympy.symbols(f"y0:{n}")
    S, P = [], []
    for i in range(n):
        gx, gy = _ghost_poly(xs, i, p), _ghost_poly(ys, i, p)
        for target, lst in ((gx + gy, S), (gx * gy, P)):
            rest = target - sum(p**j * lst[j] ** (p ** (i - j)) for j in range(i))
            poly = sympy.Poly(sympy.expand(rest), *xs, *ys)
            if any(c % p**i for c in poly.coeffs()):
                raise AssertionError("universal polynomial is not integral")
            lst.append(sympy.expand(rest / p**i))
    for i in range(n):
        for lst, target in ((S, _ghost_poly(xs, i, p) + _ghost_poly(ys, i, p)), (P, _ghost_poly(xs, i, p) * _ghost_poly(ys, i, p))):
            assert sympy.expand(_ghost_poly(lst, i, p) - target) == 0
    return UniversalPolys(p, n, xs, ys, S, P)
