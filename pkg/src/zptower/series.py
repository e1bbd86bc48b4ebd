"""Precision-tracked Laurent series over F_q and over Z_q / p^M.

A series is ``sum c[k] T^(start + k)``.  ``prec`` is the absolute
precision: coefficients at exponents >= prec are unknown.  ``prec is None``
marks an exact series (all omitted coefficients are zero).  Reading an
unknown coefficient raises PrecisionExhausted; nothing is silently padded.

Precision rules (v = valuation, P = absolute precision):
  a + b : min(Pa, Pb)
  a * b : min(Pa + vb, Pb + va)
  1 / a : Pa - 2 va
  a'    : Pa - 1
  a^p   : p * Pa         (characteristic p only)
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import FFElem, FieldSpec, UnramElem, ZpApprox, galois_ring
from .errors import (
    NotAPthPower,
    NotAUnit,
    NotDivisible,
    PrecisionExhausted,
    SpecMismatch,
    WrongCharacteristic,
)

INF = math.inf


def _pmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _as_tuple(spec, M, x):
    if isinstance(x, (FFElem, UnramElem)):
        return x.c
    if isinstance(x, int):
        return (x % spec.p**M,) + (0,) * (spec.f - 1)
    return tuple(x)


@dataclass(frozen=True)
class _Frob:
    mat: np.ndarray
    inv: np.ndarray


_FROB_CACHE = {}


def _frob_mats(spec):
    got = _FROB_CACHE.get(spec)
    if got is None:
        f = spec.f
        basis = [FFElem(spec, [1 if l == k else 0 for l in range(f)]) for k in range(f)]
        fwd = np.array([b.frobenius().c for b in basis], dtype=np.int64).T
        bwd = np.array([b.inv_frobenius().c for b in basis], dtype=np.int64).T
        got = _FROB_CACHE[spec] = _Frob(fwd, bwd)
    return got


class LaurentSeries:
    """Laurent series with coefficients in (Z/p^M)[t]/(h); M = 1 is F_q((T))."""

    __slots__ = ("spec", "M", "start", "c", "prec")

    def __init__(self, spec: FieldSpec, M: int, start: int, coeffs, prec=None):
        self.spec = spec
        self.M = M
        R = galois_ring(spec, M)
        c = np.asarray(coeffs)
        if c.size == 0:
            c = np.zeros((0, spec.f), dtype=np.int64)
        if c.ndim == 1:
            c = c.reshape(-1, spec.f)
        if c.dtype != object:
            c = c.astype(np.int64, copy=False)
        c = c % R.mod
        if prec is not None:
            keep = max(0, prec - start)
            c = c[:keep]
        nz = np.flatnonzero(c.any(axis=1)) if len(c) else np.array([], dtype=int)
        if len(nz) == 0:
            self.c = c[:0]
            self.start = prec if prec is not None else 0
        else:
            first = int(nz[0])
            last = int(nz[-1]) + 1 if prec is None else len(c)
            self.c = c[first:last]
            self.start = start + first
        self.prec = prec

    # construction --------------------------------------------------------
    @classmethod
    def zero(cls, spec, M=1, prec=None):
        return cls(spec, M, 0, [], prec)

    @classmethod
    def one(cls, spec, M=1, prec=None):
        return cls.monomial(spec, M, 1, 0, prec)

    @classmethod
    def monomial(cls, spec, M, coeff, e, prec=None):
        return cls(spec, M, e, [_as_tuple(spec, M, coeff)], prec)

    @classmethod
    def from_terms(cls, spec, M, terms, prec=None):
        """Build from a mapping exponent -> coefficient."""
        terms = {int(e): _as_tuple(spec, M, v) for e, v in terms.items()}
        if not terms:
            return cls.zero(spec, M, prec)
        lo, hi = min(terms), max(terms)
        arr = np.zeros((hi - lo + 1, spec.f), dtype=np.int64)
        for e, v in terms.items():
            arr[e - lo] = v
        return cls(spec, M, lo, arr, prec)

    def _new(self, start, coeffs, prec, M=None):
        return self.__class__(self.spec, self.M if M is None else M, start, coeffs, prec)

    # inspection ----------------------------------------------------------
    @property
    def ring(self):
        return galois_ring(self.spec, self.M)

    @property
    def exact(self):
        return self.prec is None

    @property
    def known_to(self):
        return INF if self.prec is None else self.prec

    def is_zero(self):
        return len(self.c) == 0

    def valuation(self):
        if self.is_zero():
            return INF if self.prec is None else self.prec
        return self.start

    @property
    def tail_exp(self):
        return self.valuation()

    def pole_order(self):
        """max(0, -valuation) (0 for the zero series)."""
        if self.is_zero():
            return 0
        return max(0, -self.start)

    def end(self):
        """One past the last stored exponent."""
        return self.start + len(self.c)

    def coefficient(self, e):
        if self.prec is not None and e >= self.prec:
            raise PrecisionExhausted(f"coefficient of T^{e} requested; series known below T^{self.prec}")
        k = e - self.start
        if 0 <= k < len(self.c):
            return tuple(int(x) for x in self.c[k])
        return self.ring.zero

    def coeff_elem(self, e):
        t = self.coefficient(e)
        if self.M == 1:
            return FFElem(self.spec, t)
        return UnramElem(self.spec, self.M, t)

    def terms(self):
        out = {}
        for k, row in enumerate(self.c):
            if row.any():
                out[self.start + k] = tuple(int(x) for x in row)
        return out

    def residue(self):
        return self.coefficient(-1)

    def window(self, lo, hi):
        """Coefficient array for exponents lo .. hi-1 (all must be known)."""
        if self.prec is not None and hi > self.prec:
            raise PrecisionExhausted(f"exponents up to {hi - 1} requested; known below {self.prec}")
        out = np.zeros((max(0, hi - lo), self.spec.f), dtype=self.c.dtype if len(self.c) else np.int64)
        a, b = max(lo, self.start), min(hi, self.end())
        if a < b:
            out[a - lo : b - lo] = self.c[a - self.start : b - self.start]
        return out

    def _compat(self, other):
        if not isinstance(other, LaurentSeries):
            raise TypeError(f"cannot combine series with {type(other)}")
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")
        if other.M != self.M:
            raise SpecMismatch(f"coefficient precision {self.M} vs {other.M}")

    # ring operations -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, FFElem, UnramElem)):
            other = self.monomial(self.spec, self.M, other, 0)
        self._compat(other)
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, FFElem, UnramElem)):
            other = self.monomial(self.spec, self.M, other, 0)
        self._compat(other)
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def _combine(self, other, sign):
        prec = _pmin(self.prec, other.prec)
        if self.is_zero() and other.is_zero():
            return self._new(0, [], prec)
        starts = [s.start for s in (self, other) if not s.is_zero()]
        ends = [s.end() for s in (self, other) if not s.is_zero()]
        lo, hi = min(starts), max(ends)
        if prec is not None:
            hi = min(hi, prec)
            if hi <= lo:
                return self._new(0, [], prec)
        dt = object if (self.c.dtype == object or other.c.dtype == object) else np.int64
        arr = np.zeros((hi - lo, self.spec.f), dtype=dt)
        for s, sg in ((self, 1), (other, sign)):
            if s.is_zero():
                continue
            a, b = s.start, min(s.end(), hi)
            if a < b:
                arr[a - lo : b - lo] += sg * s.c[: b - a]
        return self._new(lo, arr, prec)

    def __neg__(self):
        return self._new(self.start, -self.c, self.prec)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._new(self.start, self.c * (other % self.ring.mod), self.prec)
        if isinstance(other, (FFElem, UnramElem, tuple)):
            t = _as_tuple(self.spec, self.M, other)
            return self._new(self.start, self.ring.scale_array(t, self.c), self.prec)
        self._compat(other)
        if (self.exact and self.is_zero()) or (other.exact and other.is_zero()):
            return self._new(0, [], None)
        prec = None
        if self.prec is not None:
            prec = self.prec + other.valuation()
        if other.prec is not None:
            prec = _pmin(prec, other.prec + self.valuation())
        if prec is not None and prec != INF:
            prec = int(prec)
        if self.is_zero() or other.is_zero():
            return self._new(0, [], prec)
        a, b = self.c, other.c
        if prec is not None:
            # coefficients beyond prec are discarded anyway
            a = a[: max(0, prec - self.start - other.start)]
            b = b[: max(0, prec - self.start - other.start)]
            if len(a) == 0 or len(b) == 0:
                return self._new(0, [], prec)
        return self._new(self.start + other.start, self.ring.conv(a, b), prec)

    __rmul__ = __mul__

    def truncate(self, prec):
        return self._new(self.start, self.c, _pmin(self.prec, prec))

    def shift(self, k):
        """Multiply by T^k."""
        return self._new(self.start + k, self.c, None if self.prec is None else self.prec + k)

    def __pow__(self, e):
        if e < 0:
            return self.invert_unit() ** (-e)
        return self.power(e)

    def power(self, e, prec=None):
        result = self.one(self.spec, self.M)
        if prec is not None:
            result = result.truncate(prec)
        base = self if prec is None else self.truncate(prec + self.pole_order() * max(e - 1, 0))
        while e:
            if e & 1:
                result = result * base
                if prec is not None:
                    result = result.truncate(prec)
            e >>= 1
            if e:
                base = base * base
        return result

    def invert_unit(self, prec=None):
        """Inverse of a series whose leading coefficient is a unit.

        For exact input an absolute target precision ``prec`` is required.
        """
        if self.is_zero():
            raise NotAUnit("zero series has no inverse")
        v = self.start
        lead = self.coefficient(v)
        R = self.ring
        if not R.is_unit(lead):
            raise NotAUnit(f"leading coefficient {lead} is not a unit")
        if self.prec is None:
            if prec is None:
                raise ValueError("inverting an exact series needs a target precision")
            rel = prec + v
        else:
            rel = self.prec - v
            if prec is not None:
                rel = min(rel, prec + v)
        if rel <= 0:
            return self._new(0, [], -v + rel)
        u = self.shift(-v).window(0, rel)
        b = np.array([R.inv(tuple(int(x) for x in u[0]))], dtype=np.int64).reshape(1, -1)
        two = np.zeros((1, self.spec.f), dtype=np.int64)
        two[0, 0] = 2
        cur = 1
        while cur < rel:
            cur = min(2 * cur, rel)
            ub = R.conv(u[:cur], b)[:cur]
            corr = (-ub) % R.mod
            corr[0] = (corr[0] + two[0]) % R.mod
            b = R.conv(b, corr)[:cur]
        return self._new(-v, b, -v + rel)

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self * other.invert_unit()
        if isinstance(other, FFElem):
            return self * other.inv()
        if isinstance(other, UnramElem):
            return self * other.inv()
        raise TypeError(type(other))

    def derivative(self):
        if self.is_zero():
            return self._new(0, [], None if self.prec is None else self.prec - 1)
        ks = np.arange(self.start, self.end()).reshape(-1, 1) % self.ring.mod
        return self._new(self.start - 1, self.c * ks, None if self.prec is None else self.prec - 1)

    # characteristic-p structure -----------------------------------------------
    def _need_char_p(self):
        if self.M != 1:
            raise WrongCharacteristic("Frobenius is coordinatewise only over F_q((T))")

    def frobenius(self):
        """x -> x^p in characteristic p."""
        self._need_char_p()
        p = self.spec.p
        prec = None if self.prec is None else self.prec * p
        if self.is_zero():
            return self._new(0, [], prec)
        rows = self.c if self.spec.f == 1 else self.c.dot(_frob_mats(self.spec).mat.T) % p
        arr = np.zeros(((len(rows) - 1) * p + 1, self.spec.f), dtype=np.int64)
        arr[::p] = rows
        return self._new(self.start * p, arr, prec)

    def p_th_root(self):
        self._need_char_p()
        p = self.spec.p
        if self.is_zero():
            return self._new(0, [], None if self.prec is None else -(-self.prec // p))
        if self.start % p or any(e % p for e in self.terms()):
            raise NotAPthPower("exponents not all divisible by p")
        if self.prec is not None and self.prec % p:
            # coefficients between the last multiple of p and prec are unknown
            pass
        rows = self.c[::p]
        if self.spec.f > 1:
            rows = rows.dot(_frob_mats(self.spec).inv.T) % p
        prec = None if self.prec is None else -(-self.prec // p)
        return self._new(self.start // p, rows, prec)

    # lifting -------------------------------------------------------------
    def lift(self, N):
        if self.M != 1:
            raise WrongCharacteristic("only F_q-series are lifted")
        return self._new(self.start, self.c, self.prec, M=N)

    def reduce(self):
        return LaurentSeries(self.spec, 1, self.start, self.c % self.spec.p, self.prec)

    def reduce_to(self, n):
        return self._new(self.start, self.c % self.spec.p**n, self.prec, M=n)

    def divp(self, i):
        q = self.spec.p**i
        if (self.c % q).any():
            raise NotDivisible(f"series not divisible by p^{i}")
        return self._new(self.start, self.c // q, self.prec)

    def sigma(self):
        """Coefficientwise Frobenius lift on Z_q-coefficients."""
        if self.is_zero() or self.spec.f == 1:
            return self
        S = np.array(self.ring.sigma_matrix, dtype=object)
        return self._new(self.start, (self.c.astype(object).dot(S.T) % self.ring.mod).astype(np.int64), self.prec)

    # comparison ------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.M == other.M
            and self.prec == other.prec
            and self.start == other.start
            and np.array_equal(self.c, other.c)
        )

    __hash__ = None

    def agrees_with(self, other, upto=None):
        """Equality of all coefficients known in both (below ``upto`` if given)."""
        self._compat(other)
        diff = self - other
        if upto is not None:
            diff = diff.truncate(upto)
        return diff.is_zero()

    def __repr__(self):
        parts = []
        for e, t in self.terms().items():
            coef = str(t[0]) if self.spec.f == 1 else "<" + ",".join(map(str, t)) + ">"
            parts.append(f"{coef}*T^{e}")
        body = " + ".join(parts) if parts else "0"
        if self.prec is not None:
            body += f" + O(T^{self.prec})"
        return body

    def to_json(self):
        if self.M != 1:
            raise WrongCharacteristic("only F_q-series have a JSON literal")
        coeffs = [FFElem(self.spec, row).to_json() for row in self.c]
        out = {"tail": int(self.start), "coeffs": coeffs, "exact": self.prec is None}
        if self.prec is not None:
            out["known_to"] = int(self.prec)
        return out

    @classmethod
    def from_json(cls, spec, obj):
        from .errors import InputError

        if not isinstance(obj, dict) or "tail" not in obj or "coeffs" not in obj:
            raise InputError("series literal needs 'tail' and 'coeffs'")
        tail = obj["tail"]
        coeffs = [FFElem.from_json(spec, c).c for c in obj["coeffs"]]
        exact = obj.get("exact", True)
        prec = None
        if not exact:
            prec = obj.get("known_to", tail + len(coeffs))
            if prec < tail + len(coeffs):
                raise InputError("known_to is below the listed coefficients", "/known_to")
        return cls(spec, 1, tail, np.array(coeffs, dtype=np.int64).reshape(-1, spec.f), prec)


class TwoSidedSeries(LaurentSeries):
    """Element of the two-sided ring truncated mod p^N: finite negative support,
    Z_q / p^N coefficients, explicit positive precision."""

    __slots__ = ()

    @classmethod
    def from_unram_terms(cls, spec, N, terms, prec=None):
        return cls.from_terms(spec, N, {e: v.c for e, v in terms.items()}, prec)

    def unram_terms(self):
        return {e: UnramElem(self.spec, self.M, t) for e, t in self.terms().items()}


# ---------------------------------------------------------------------------
# unit factorization and dlog


@dataclass
class UnitFactorization:
    """y = lam * T^e * prod (1 - a_ij T^i)^(p^j); lam is recorded, not used."""

    e: ZpApprox
    lam: FFElem
    factors: dict = field(default_factory=dict)
    window: int = 0  # every position m = i p^j <= window has been processed

    def covers(self, i_max, j_max):
        return i_max * self.e.p**j_max <= self.window

    def one_unit(self, prec=None):
        """Re-expand prod (1 - a T^i)^(p^j) over F_q to precision window+1."""
        spec = self.lam.spec
        p = spec.p
        prec = self.window + 1 if prec is None else prec
        acc = LaurentSeries.one(spec, 1, prec)
        for (i, j), a in sorted(self.factors.items()):
            if i * p**j >= prec:
                continue
            b = a ** (p**j)
            fac = LaurentSeries.from_terms(spec, 1, {0: 1, i * p**j: (-b).c})
            acc = acc * fac
        return acc


def split_p(m, p):
    """m = i * p^j with p not dividing i."""
    j = 0
    while m % p == 0:
        m //= p
        j += 1
    return m, j


def unit_factorization(y: LaurentSeries, j_max=None, i_max=None, N=None) -> UnitFactorization:
    """Greedy extraction of y = lam T^e prod (1 - a_ij T^i)^(p^j) over F_q.

    All positions m <= i_max * p^j_max are processed (or every known position
    when no window is given); the series must be known that far.
    """
    if y.M != 1:
        raise WrongCharacteristic("unit factorization is over F_q((T))")
    if y.is_zero():
        raise NotAUnit("zero has no factorization")
    spec = y.spec
    p = spec.p
    v = y.valuation()
    lam = y.coeff_elem(v)
    u = y.shift(-v) * lam.inv()
    if i_max is not None and j_max is not None:
        L = i_max * p**j_max
        if u.prec is not None and L >= u.prec:
            raise PrecisionExhausted(
                f"factor window i<={i_max}, j<={j_max} needs the one-unit below T^{L + 1}; known below T^{u.prec}"
            )
    else:
        if u.prec is None:
            raise ValueError("exact input needs an explicit (i_max, j_max) window")
        L = u.prec - 1
    if N is None:
        N = (j_max + 1) if j_max is not None else 1
    arr = u.window(0, L + 1).astype(np.int64)
    R = galois_ring(spec, 1)
    factors = {}
    for m in range(1, L + 1):
        c = tuple(int(x) for x in arr[m])
        if not any(c):
            continue
        b = R.neg(c)  # (1 - b T^m) kills the T^m term
        i, j = split_p(m, p)
        factors[(i, j)] = FFElem(spec, b).inv_frobenius(j)
        for s in range(m, L + 1, m):
            hi = min(s + m, L + 1)
            arr[s:hi] = (arr[s:hi] + R.scale_array(b, arr[s - m : hi - m])) % p
    return UnitFactorization(ZpApprox(p, N, v), lam, factors, L)


def lifted_unit(fac: UnitFactorization, I: int, n: int) -> TwoSidedSeries:
    """prod (1 - [a_ij] T^i)^(p^j) over Z_q / p^n, modulo T^(I+1), for i <= I, j < n."""
    spec = fac.lam.spec
    p = spec.p
    mod = p**n
    prec = I + 1
    acc = TwoSidedSeries.one(spec, n, prec)
    for (i, j), a in sorted(fac.factors.items()):
        if i > I or j >= n:
            continue
        ta = UnramElem.teichmueller(a, n)
        terms = {}
        neg = -ta
        power = UnramElem.one(spec, n)
        e = p**j
        for k in range(0, min(e, I // i) + 1):
            terms[i * k] = (power * (math.comb(e, k) % mod)).c
            power = power * neg
        acc = acc * TwoSidedSeries.from_terms(spec, n, terms, prec)
    return acc


def series_dlog(s: LaurentSeries) -> LaurentSeries:
    """s'/s for a series with unit constant term."""
    return s.derivative() * s.invert_unit()


def teich_lift_dlog(fac: UnitFactorization, I: int, n: int) -> TwoSidedSeries:
    """e/T + d(y~)/y~ with coefficients mod p^n, known for exponents -1 .. I-1."""
    if not fac.covers(I, n - 1):
        raise PrecisionExhausted(f"factorization window {fac.window} < {I}*p^{n - 1}")
    spec = fac.lam.spec
    y = lifted_unit(fac, I, n)
    d = series_dlog(y)
    e_term = TwoSidedSeries.monomial(spec, n, fac.e.value % spec.p**n, -1)
    return e_term + d
