"""Rational functions over F_q and their lifts over Z_q / p^N.

``RatFunc`` is a reduced fraction num/den over F_q with den monic.
``LiftedRatFunc`` lives over Z_q / p^N; its denominator is kept factored
(monic factors with exponents) so that sums take least common multiples
instead of multiplying denominators.  Linear factors X - x lift to
X - [x]; any other factor is lifted coefficientwise.
"""
from __future__ import annotations

import numpy as np

from .algebra import FFElem, FieldSpec, UnramElem, elements, galois_ring
from .errors import InputError, NotDivisible, PoleAtPoint, UnsupportedDenominator
from .series import LaurentSeries

INF = "inf"


# polynomial helpers on (L, f) arrays --------------------------------------


def _trim(a):
    nz = np.flatnonzero(a.any(axis=1)) if len(a) else []
    if len(nz) == 0:
        return a[:0]
    return a[: int(nz[-1]) + 1]


def _padd(R, a, b, sign=1):
    n = max(len(a), len(b))
    out = np.zeros((n, R.f), dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] += sign * b
    return _trim(out % R.mod)


def _pmul(R, a, b):
    if len(a) == 0 or len(b) == 0:
        return np.zeros((0, R.f), dtype=np.int64)
    return _trim(R.conv(a, b).astype(np.int64))


def _ppow(R, a, e):
    out = np.array([R.one], dtype=np.int64)
    base = a
    while e:
        if e & 1:
            out = _pmul(R, out, base)
        e >>= 1
        if e:
            base = _pmul(R, base, base)
    return out


def _lead(a):
    return tuple(int(x) for x in a[-1])


def _pdivmod(R, a, b):
    """Division by b whose leading coefficient is a unit."""
    a = a.copy()
    db = len(b) - 1
    inv = R.inv(_lead(b))
    q = np.zeros((max(len(a) - db, 0), R.f), dtype=np.int64)
    for k in range(len(a) - 1, db - 1, -1):
        c = tuple(int(x) for x in a[k])
        if any(c):
            c = R.mul(c, inv)
            q[k - db] = c
            a[k - db : k + 1] = (a[k - db : k + 1] - R.scale_array(c, b)) % R.mod
    return _trim(q), _trim(a[:db] if db > 0 else a[:0])


def _monic(R, a):
    return R.scale_array(R.inv(_lead(a)), a) % R.mod


def _pgcd(R, a, b):
    while len(b):
        _, r = _pdivmod(R, a, b)
        a, b = b, r
    return _monic(R, a) if len(a) else a


def _peval(R, a, x):
    acc = R.zero
    for row in a[::-1]:
        acc = R.add(R.mul(acc, x), tuple(int(v) for v in row))
    return acc


def _taylor_shift(R, a, x):
    """Coefficients of a(P + x) as a polynomial in P."""
    out = np.zeros((0, R.f), dtype=np.int64)
    lin = np.array([x, R.one], dtype=np.int64)
    for row in a[::-1]:
        out = _padd(R, _pmul(R, out, lin), row.reshape(1, -1))
    return out


def _const(R, c):
    return _trim(np.array([c], dtype=np.int64))


def _linear(R, x):
    """X - x."""
    return np.array([R.neg(x), R.one], dtype=np.int64)


def _frob_poly(spec, a):
    if len(a) == 0:
        return a
    p = spec.p
    rows = np.array([FFElem(spec, r).frobenius().c for r in a], dtype=np.int64)
    out = np.zeros(((len(a) - 1) * p + 1, spec.f), dtype=np.int64)
    out[::p] = rows
    return out


def _roots_with_multiplicity(spec, den):
    """(roots {x: mult}, cofactor) with den = cofactor * prod (X - x)^mult."""
    R = galois_ring(spec, 1)
    roots = {}
    rest = den
    for x in elements(spec):
        while len(rest) > 1 and not any(_peval(R, rest, x.c)):
            rest, r = _pdivmod(R, rest, _linear(R, x.c))
            assert len(r) == 0
            roots[x] = roots.get(x, 0) + 1
    return roots, rest


class RatFunc:
    """Element of F_q(X) in lowest terms (den monic)."""

    __slots__ = ("spec", "num", "den")

    def __init__(self, spec: FieldSpec, num, den=None, normalize=True):
        R = galois_ring(spec, 1)
        num = _trim(np.asarray(num, dtype=np.int64).reshape(-1, spec.f) % spec.p)
        den = np.array([R.one], dtype=np.int64) if den is None else _trim(np.asarray(den, dtype=np.int64).reshape(-1, spec.f) % spec.p)
        if len(den) == 0:
            raise PoleAtPoint("zero denominator")
        if normalize:
            if len(num) == 0:
                den = np.array([R.one], dtype=np.int64)
            else:
                g = _pgcd(R, num, den)
                if len(g) > 1:
                    num, _ = _pdivmod(R, num, g)
                    den, _ = _pdivmod(R, den, g)
                inv = R.inv(_lead(den))
                num = R.scale_array(inv, num)
                den = R.scale_array(inv, den)
        self.spec, self.num, self.den = spec, num, den

    @property
    def ring(self):
        return galois_ring(self.spec, 1)

    @classmethod
    def X(cls, spec):
        return cls(spec, [galois_ring(spec, 1).zero, galois_ring(spec, 1).one])

    @classmethod
    def const(cls, spec, c):
        if isinstance(c, int):
            c = FFElem(spec, (c,) + (0,) * (spec.f - 1))
        return cls(spec, [c.c])

    @classmethod
    def zero(cls, spec):
        return cls(spec, [])

    @classmethod
    def one(cls, spec):
        return cls.const(spec, 1)

    @classmethod
    def monomial_at(cls, spec, place, coeff: FFElem, e: int):
        """coeff * pi_place^(-e), pi_x = X - x, pi_inf = 1/X."""
        R = galois_ring(spec, 1)
        if place == INF:
            arr = np.zeros((e + 1, spec.f), dtype=np.int64)
            arr[e] = coeff.c
            return cls(spec, arr)
        return cls(spec, [coeff.c], _ppow(R, _linear(R, place.c), e))

    def is_zero(self):
        return len(self.num) == 0

    def _coerce(self, other):
        if isinstance(other, int) or isinstance(other, FFElem):
            return RatFunc.const(self.spec, other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        R = self.ring
        if np.array_equal(self.den, other.den):
            return RatFunc(self.spec, _padd(R, self.num, other.num), self.den)
        num = _padd(R, _pmul(R, self.num, other.den), _pmul(R, other.num, self.den))
        return RatFunc(self.spec, num, _pmul(R, self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.spec, (-self.num) % self.spec.p, self.den, normalize=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        R = self.ring
        return RatFunc(self.spec, _pmul(R, self.num, other.num), _pmul(R, self.den, other.den))

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.spec, self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        R = self.ring
        return RatFunc(self.spec, _ppow(R, self.num, e), _ppow(R, self.den, e), normalize=False)

    def frobenius(self):
        return RatFunc(self.spec, _frob_poly(self.spec, self.num), _frob_poly(self.spec, self.den), normalize=False)

    def __eq__(self, other):
        other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.num, other.num) and np.array_equal(self.den, other.den)

    __hash__ = None

    def __repr__(self):
        def show(a):
            return "[" + ",".join(str(FFElem(self.spec, r)) for r in a) + "]"

        return f"{show(self.num)}/{show(self.den)}"

    # evaluation and local structure -----------------------------------------
    def evaluate(self, z: FFElem, embed=None):
        """Value at z (in an extension field via ``embed``)."""
        big = z.spec
        embed = embed or (lambda a: a)

        def ev(a):
            acc = FFElem.zero(big)
            for row in a[::-1]:
                acc = acc * z + embed(FFElem(self.spec, row))
            return acc

        d = ev(self.den)
        if d.is_zero():
            raise PoleAtPoint(f"{self!r} has a pole at {z!r}")
        return ev(self.num) / d

    def places(self):
        """Finite poles {x: order} (raises UnsupportedDenominator otherwise)."""
        roots, rest = _roots_with_multiplicity(self.spec, self.den)
        if len(rest) > 1:
            raise UnsupportedDenominator(f"denominator has an irreducible factor of degree > 1 ({self!r})")
        return roots

    def partial_fractions(self):
        """(constant, {place: {e: coeff}}) with self = const + sum coeff * pi_place^-e."""
        R = self.ring
        roots = self.places()
        q, r = _pdivmod(R, self.num, self.den)
        const = FFElem(self.spec, q[0]) if len(q) else FFElem.zero(self.spec)
        out = {}
        inf_terms = {e: FFElem(self.spec, q[e]) for e in range(1, len(q)) if q[e].any()}
        if inf_terms:
            out[INF] = inf_terms
        for x, mult in roots.items():
            # expand r/den at x: den(P + x) = P^mult * u(P)
            num_s = _taylor_shift(R, r, x.c)
            den_s = _taylor_shift(R, self.den, x.c)
            u = den_s[mult:]
            ser = LaurentSeries(self.spec, 1, 0, num_s if len(num_s) else [], None) * LaurentSeries(
                self.spec, 1, 0, u, None
            ).invert_unit(mult)
            terms = {}
            for k in range(mult):
                c = ser.coefficient(k)
                if any(c):
                    terms[mult - k] = FFElem(self.spec, c)
            if terms:
                out[x] = terms
        return const, out

    def expand_at(self, place, prec):
        """Laurent expansion in the uniformizer at ``place`` to absolute precision prec."""
        R = self.ring
        if place == INF:
            # f(X) with X = 1/P: num(1/P)/den(1/P) = P^(dd - dn) * rev(num)/rev(den)
            dn, dd = len(self.num) - 1, len(self.den) - 1
            if dn < 0:
                return LaurentSeries.zero(self.spec, 1, None)
            rn = LaurentSeries(self.spec, 1, 0, self.num[::-1], None)
            rd = LaurentSeries(self.spec, 1, 0, self.den[::-1], None)
            shift = dd - dn
            return (rn * rd.invert_unit(prec - shift)).shift(shift).truncate(prec)
        num_s = _taylor_shift(R, self.num, place.c)
        den_s = _taylor_shift(R, self.den, place.c)
        n = LaurentSeries(self.spec, 1, 0, num_s if len(num_s) else [], None)
        d = LaurentSeries(self.spec, 1, 0, den_s, None)
        v = d.valuation()
        return (n * d.invert_unit(prec + 2 * v)).truncate(prec)

    # lifting -----------------------------------------------------------
    def lift(self, N):
        roots, rest = _roots_with_multiplicity(self.spec, self.den)
        den = {}
        for x, m in roots.items():
            den[("lin", x.c)] = m
        if len(rest) > 1:
            den[("poly", tuple(tuple(int(v) for v in row) for row in rest))] = 1
        return LiftedRatFunc(self.spec, N, self.num, den)

    def to_json(self):
        return {
            "num": [FFElem(self.spec, r).to_json() for r in self.num],
            "den": [FFElem(self.spec, r).to_json() for r in self.den],
        }

    @classmethod
    def from_json(cls, spec, obj):
        if isinstance(obj, (int, list)) and not isinstance(obj, dict):
            return cls.const(spec, FFElem.from_json(spec, obj))
        if not isinstance(obj, dict) or "num" not in obj:
            raise InputError(f"bad rational-function literal {obj!r}")
        num = [FFElem.from_json(spec, c).c for c in obj["num"]]
        den = [FFElem.from_json(spec, c).c for c in obj.get("den", [1])]
        if not any(any(c) for c in den):
            raise InputError("zero denominator", "/den")
        return cls(spec, np.array(num, dtype=np.int64).reshape(-1, spec.f), np.array(den, dtype=np.int64).reshape(-1, spec.f))


def _factor_poly(R, key):
    kind, data = key
    if kind == "lin":
        return _linear(R, R.teichmueller(data))
    return np.array(data, dtype=np.int64)


class LiftedRatFunc:
    """num / prod F_k^e_k over Z_q / p^N with monic factors F_k."""

    __slots__ = ("spec", "N", "num", "den")

    def __init__(self, spec, N, num, den):
        self.spec, self.N = spec, N
        R = galois_ring(spec, N)
        self.num = _trim(np.asarray(num, dtype=np.int64).reshape(-1, spec.f) % R.mod)
        self.den = {k: e for k, e in den.items() if e}

    @property
    def ring(self):
        return galois_ring(self.spec, self.N)

    @classmethod
    def teich_monomial(cls, spec, N, place, coeff: FFElem, e: int):
        """Lift of [coeff * pi_place^-e] as coeff~ * pi~^-e."""
        R = galois_ring(spec, N)
        t = R.teichmueller(coeff.c)
        if place == INF:
            arr = np.zeros((e + 1, spec.f), dtype=np.int64)
            arr[e] = t
            return cls(spec, N, arr, {})
        return cls(spec, N, [t], {("lin", place.c): e})

    @classmethod
    def const(cls, spec, N, c):
        return cls(spec, N, [c], {})

    def _scaled_num(self, target):
        R = self.ring
        num = self.num
        for k, e in target.items():
            extra = e - self.den.get(k, 0)
            if extra:
                num = _pmul(R, num, _ppow(R, _factor_poly(R, k), extra))
        return num

    def _combine(self, other, sign):
        target = dict(self.den)
        for k, e in other.den.items():
            target[k] = max(target.get(k, 0), e)
        R = self.ring
        return LiftedRatFunc(self.spec, self.N, _padd(R, self._scaled_num(target), other._scaled_num(target), sign), target)

    def __add__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self
            other = LiftedRatFunc.const(self.spec, self.N, self.ring.smul(other, self.ring.one))
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return LiftedRatFunc(self.spec, self.N, -self.num, self.den)

    def __mul__(self, other):
        if isinstance(other, int):
            return LiftedRatFunc(self.spec, self.N, self.num * (other % self.ring.mod), self.den)
        den = dict(self.den)
        for k, e in other.den.items():
            den[k] = den.get(k, 0) + e
        return LiftedRatFunc(self.spec, self.N, _pmul(self.ring, self.num, other.num), den)

    __rmul__ = __mul__

    def __pow__(self, e):
        return LiftedRatFunc(self.spec, self.N, _ppow(self.ring, self.num, e), {k: v * e for k, v in self.den.items()})

    def divp(self, i):
        q = self.spec.p**i
        if (self.num % q).any():
            raise NotDivisible(f"numerator not divisible by p^{i}")
        return LiftedRatFunc(self.spec, self.N, self.num // q, self.den)

    def reduce(self) -> RatFunc:
        R1 = galois_ring(self.spec, 1)
        den = np.array([R1.one], dtype=np.int64)
        for k, e in self.den.items():
            den = _pmul(R1, den, _ppow(R1, _factor_poly(R1, k) % self.spec.p, e))
        return RatFunc(self.spec, self.num % self.spec.p, den)
