"""Finite fields F_q = F_p[t]/(h) and the unramified rings Z_q / p^N.

Both are handled by one engine, :class:`GaloisRing`, which implements
(Z/p^M)[t]/(h~) where h~ is the modulus with its coefficients read as
integers.  M = 1 gives F_q; M = N gives Z_q mod p^N (Hensel: any monic
lift of an irreducible h presents the unramified extension).  Elements are
plain tuples of ints of length f; arrays of elements (series, polynomials)
are numpy arrays of shape (L, f).

:class:`UnramElem` stores the power-basis coordinates, which are canonical
for the fixed lift h~.  Its Teichmueller digits (x = sum p^j [d_j]) and its
Witt coordinates are derived on demand and round-trip exactly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DivisionByZero,
    InputError,
    NotAUnit,
    NotDivisible,
    NotInBaseField,
    NotIrreducible,
    PrecisionMismatch,
    SpecMismatch,
)

_INT64_SAFE = 2**62


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _poly_mod_p(a, b, p):
    """Remainder of a by monic b over Z/p (little-endian int lists)."""
    a = [x % p for x in a]
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            for l in range(db + 1):
                a[k - db + l] = (a[k - db + l] - c * b[l]) % p
    return a[:db]


def _is_irreducible(p, modulus):
    f = len(modulus) - 1
    for d in range(1, f // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            if not any(_poly_mod_p(modulus, g, p)):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """F_q presented as F_p[t]/(modulus); modulus is little-endian and monic."""

    p: int
    f: int
    modulus: tuple

    def __post_init__(self):
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        if not is_prime(self.p):
            raise InputError(f"p={self.p} is not prime", "/p")
        if self.f < 1:
            raise InputError("extension degree must be >= 1", "/f")
        if len(self.modulus) != self.f + 1 or self.modulus[-1] != 1:
            raise InputError("modulus must be monic of degree f", "/modulus")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise InputError("modulus coefficients must lie in [0, p)", "/modulus")
        if not _is_irreducible(self.p, self.modulus):
            raise NotIrreducible(f"modulus {self.modulus} is reducible over F_{self.p}", "/modulus")

    @property
    def q(self) -> int:
        return self.p**self.f

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p, 1, (0, 1))

    @classmethod
    def standard(cls, p: int, f: int) -> "FieldSpec":
        """First irreducible monic modulus in little-endian lexicographic order."""
        if f == 1:
            return cls.prime(p)
        for k in range(p**f):
            low = [(k // p**j) % p for j in range(f)]
            if _is_irreducible(p, low + [1]):
                return cls(p, f, tuple(low + [1]))
        raise AssertionError("no irreducible polynomial found")

    def to_json(self):
        return {"p": self.p, "f": self.f, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["p"]), int(obj["f"]), tuple(obj["modulus"]))

    def __repr__(self):
        return f"F_{self.q}[{','.join(map(str, self.modulus))}]"


class GaloisRing:
    """(Z/p^M)[t]/(h) on tuples and (L, f) arrays."""

    def __init__(self, spec: FieldSpec, M: int):
        self.spec = spec
        self.p = spec.p
        self.f = spec.f
        self.M = M
        self.mod = self.p**M
        self.h = spec.modulus
        f = self.f
        rows = []
        cur = [1] + [0] * (f - 1)
        for _ in range(2 * f - 1):
            rows.append(cur)
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(cur[l] - top * self.h[l]) % self.mod for l in range(f)]
        self.red = np.array(rows, dtype=np.int64 if self.mod**2 * (2 * f) < _INT64_SAFE else object)
        self.zero = (0,) * f
        self.one = (1,) + (0,) * (f - 1)

    # scalars -------------------------------------------------------------
    def add(self, a, b):
        m = self.mod
        return tuple((x + y) % m for x, y in zip(a, b))

    def sub(self, a, b):
        m = self.mod
        return tuple((x - y) % m for x, y in zip(a, b))

    def neg(self, a):
        m = self.mod
        return tuple(-x % m for x in a)

    def smul(self, k, a):
        m = self.mod
        return tuple(k * x % m for x in a)

    def mul(self, a, b):
        f, m = self.f, self.mod
        if f == 1:
            return (a[0] * b[0] % m,)
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        h = self.h
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k]
            if c:
                for l in range(f):
                    prod[k - f + l] -= c * h[l]
        return tuple(v % m for v in prod[:f])

    def pow(self, a, e):
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def reduce_to(self, a, M):
        m = self.p**M
        return tuple(x % m for x in a)

    def is_unit(self, a):
        return any(x % self.p for x in a)

    def inv(self, a):
        if not self.is_unit(a):
            raise NotAUnit(f"{a} is not a unit")
        field = galois_ring(self.spec, 1)
        b = field.pow(field.reduce_to(a, 1), self.spec.q - 2)
        two = self.smul(2, self.one)
        prec = 1
        while prec < self.M:
            b = self.mul(b, self.sub(two, self.mul(a, b)))
            prec *= 2
        return b

    def valuation(self, a):
        best = self.M
        for x in a:
            if x:
                v = 0
                while x % self.p == 0:
                    x //= self.p
                    v += 1
                best = min(best, v)
        return best

    def mul_matrix(self, a):
        """Matrix of y -> a*y acting on coordinate rows (use A @ mat.T)."""
        cols = []
        basis = [tuple(1 if l == k else 0 for l in range(self.f)) for k in range(self.f)]
        for e in basis:
            cols.append(self.mul(a, e))
        return np.array(cols, dtype=self.red.dtype).T

    # arrays --------------------------------------------------------------
    def dtype_for(self, length):
        if self.f * max(length, 1) * self.mod**2 < _INT64_SAFE:
            return np.int64
        return object

    def conv(self, A, B):
        """Product of two element arrays as polynomials in an outer variable."""
        La, Lb = len(A), len(B)
        if La == 0 or Lb == 0:
            return np.zeros((0, self.f), dtype=np.int64)
        f, m = self.f, self.mod
        dt = self.dtype_for(min(La, Lb))
        A = A.astype(dt, copy=False)
        B = B.astype(dt, copy=False)
        if f == 1:
            if dt is object:
                out = _object_convolve(A[:, 0], B[:, 0])
            else:
                out = np.convolve(A[:, 0], B[:, 0])
            return (out % m).reshape(-1, 1)
        out = np.zeros((La + Lb - 1, 2 * f - 1), dtype=dt)
        for u in range(f):
            for v in range(f):
                if dt is object:
                    out[:, u + v] += _object_convolve(A[:, u], B[:, v])
                else:
                    out[:, u + v] += np.convolve(A[:, u], B[:, v])
        out %= m
        return (out.dot(self.red.astype(dt))) % m

    def scale_array(self, a, A):
        if len(A) == 0:
            return A
        if self.f == 1:
            return (A * a[0]) % self.mod
        mat = self.mul_matrix(a)
        return (A.dot(mat.T)) % self.mod

    # Frobenius lift --------------------------------------------------------
    def _eval_int_poly(self, coeffs, x):
        acc = self.zero
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), self.smul(c, self.one))
        return acc

    @property
    def sigma_matrix(self):
        mat = getattr(self, "_sigma", None)
        if mat is None:
            mat = self._build_sigma()
            self._sigma = mat
        return mat

    def _build_sigma(self):
        f = self.f
        if f == 1:
            return [[1]]
        t = tuple(1 if l == 1 else 0 for l in range(f))
        theta = self.pow(t, self.p)
        dh = [k * self.h[k] for k in range(1, f + 1)]
        for _ in range(self.M + 1):
            num = self._eval_int_poly(self.h, theta)
            if not any(num):
                break
            theta = self.sub(theta, self.mul(num, self.inv(self._eval_int_poly(dh, theta))))
        assert not any(self._eval_int_poly(self.h, theta))
        cols = [self.one]
        for _ in range(1, f):
            cols.append(self.mul(cols[-1], theta))
        return [[cols[k][l] for k in range(f)] for l in range(f)]

    def sigma(self, a):
        """Lift of the p-power Frobenius (coefficient-wise on Witt coordinates)."""
        if self.f == 1:
            return tuple(a)
        S = self.sigma_matrix
        m = self.mod
        return tuple(sum(S[l][k] * a[k] for k in range(self.f)) % m for l in range(self.f))

    def teichmueller(self, a):
        return _teich(self.spec, self.M, tuple(x % self.p for x in a))


def _object_convolve(a, b):
    out = np.zeros(len(a) + len(b) - 1, dtype=object)
    for i, x in enumerate(a):
        if x:
            out[i : i + len(b)] += x * b
    return out


@lru_cache(maxsize=None)
def galois_ring(spec: FieldSpec, M: int) -> GaloisRing:
    return GaloisRing(spec, M)


@lru_cache(maxsize=4096)
def _teich(spec, M, a):
    R = galois_ring(spec, M)
    if M == 1:
        return a
    return R.pow(a, spec.q ** (M - 1))


# ---------------------------------------------------------------------------
# F_q elements


class FFElem:
    """Element of F_q; ``c`` are the coordinates on the power basis."""

    __slots__ = ("spec", "c")

    def __init__(self, spec: FieldSpec, coeffs):
        coeffs = tuple(int(x) % spec.p for x in coeffs)
        if len(coeffs) != spec.f:
            raise InputError(f"expected {spec.f} coordinates, got {len(coeffs)}")
        self.spec = spec
        self.c = coeffs

    @classmethod
    def from_int(cls, spec, k):
        """Element at position k of the lexicographic enumeration (base-p digits)."""
        return cls(spec, [(k // spec.p**j) % spec.p for j in range(spec.f)])

    @classmethod
    def zero(cls, spec):
        return cls(spec, (0,) * spec.f)

    @classmethod
    def one(cls, spec):
        return cls(spec, (1,) + (0,) * (spec.f - 1))

    @classmethod
    def gen(cls, spec):
        if spec.f == 1:
            return cls(spec, (-spec.modulus[0],))
        return cls(spec, tuple(1 if l == 1 else 0 for l in range(spec.f)))

    @property
    def index(self):
        return sum(x * self.spec.p**j for j, x in enumerate(self.c))

    def _ring(self):
        return galois_ring(self.spec, 1)

    def _check(self, other):
        if isinstance(other, int):
            return FFElem(self.spec, (other,) + (0,) * (self.spec.f - 1))
        if not isinstance(other, FFElem):
            return NotImplemented
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FFElem(self.spec, self._ring().add(self.c, other.c))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FFElem(self.spec, self._ring().sub(self.c, other.c))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FFElem(self.spec, self._ring().neg(self.c))

    def __mul__(self, other):
        if isinstance(other, int):
            return FFElem(self.spec, self._ring().smul(other, self.c))
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FFElem(self.spec, self._ring().mul(self.c, other.c))

    __rmul__ = __mul__

    def inv(self):
        if not any(self.c):
            raise DivisionByZero("inverse of 0 in a finite field")
        return self ** (self.spec.q - 2)

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        return FFElem(self.spec, self._ring().pow(self.c, e % (self.spec.q - 1) if e and any(self.c) else e))

    def frobenius(self):
        return self**self.spec.p

    def inv_frobenius(self, times=1):
        """x -> x^(p^-times)."""
        f = self.spec.f
        k = (-times) % f
        return self ** (self.spec.p**k)

    def trace(self) -> int:
        acc = self
        cur = self
        for _ in range(self.spec.f - 1):
            cur = cur.frobenius()
            acc = acc + cur
        if any(acc.c[1:]):
            raise NotInBaseField(f"trace {acc} not in F_p")
        return acc.c[0]

    def is_zero(self):
        return not any(self.c)

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._check(other)
        return isinstance(other, FFElem) and other.spec == self.spec and other.c == self.c

    def __hash__(self):
        return hash((self.spec, self.c))

    def __repr__(self):
        if self.spec.f == 1:
            return str(self.c[0])
        return "(" + ",".join(map(str, self.c)) + ")"

    def lift(self, N):
        return UnramElem(self.spec, N, self.c)

    def to_json(self):
        return self.c[0] if self.spec.f == 1 else list(self.c)

    @classmethod
    def from_json(cls, spec, obj):
        if isinstance(obj, int):
            if spec.f != 1 and not 0 <= obj < spec.p:
                raise InputError("integer field literal must lie in [0, p)")
            return cls(spec, (obj,) + (0,) * (spec.f - 1))
        if isinstance(obj, list) and len(obj) == spec.f and all(isinstance(v, int) for v in obj):
            return cls(spec, obj)
        raise InputError(f"bad field element literal {obj!r}")


def elements(spec: FieldSpec):
    for k in range(spec.q):
        yield FFElem.from_int(spec, k)


def choose_alpha(spec: FieldSpec) -> FFElem:
    """First element (lexicographic enumeration) with nonzero trace to F_p."""
    return _choose_alpha(spec)


@lru_cache(maxsize=None)
def _choose_alpha(spec):
    for a in elements(spec):
        if a.trace() % spec.p:
            return a
    raise AssertionError("trace form is surjective")


@lru_cache(maxsize=None)
def _wp_matrix(spec):
    """Matrix of the F_p-linear map t -> t^p - t on the power basis."""
    cols = []
    for k in range(spec.f):
        e = FFElem(spec, [1 if l == k else 0 for l in range(spec.f)])
        cols.append((e.frobenius() - e).c)
    return [[cols[k][l] for k in range(spec.f)] for l in range(spec.f)]


def solve_mod_p(A, b, p):
    """One solution of A x = b over F_p, or None if inconsistent."""
    rows, cols = len(A), len(A[0])
    M = [list(A[i]) + [b[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] % p), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], p - 2, p)
        M[r] = [x * inv % p for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] % p:
                fac = M[i][c]
                M[i] = [(x - fac * y) % p for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(M[i][cols] % p for i in range(r, rows)):
        return None
    x = [0] * cols
    for i, c in enumerate(pivots):
        x[c] = M[i][cols]
    return x


def solve_artin_schreier(b: FFElem) -> FFElem:
    """Some t in F_q with t^p - t = b; requires Tr(b) = 0."""
    sol = solve_mod_p(_wp_matrix(b.spec), list(b.c), b.spec.p)
    if sol is None:
        raise ValueError(f"{b} has nonzero trace; not in the image of t^p - t")
    return FFElem(b.spec, sol)


def find_embedding(small: FieldSpec, big: FieldSpec):
    """A field embedding F_small -> F_big (as a function on FFElem)."""
    if small == big:
        return lambda a: a
    if small.p != big.p or big.f % small.f:
        raise SpecMismatch(f"{small} does not embed in {big}")
    root = _embedding_root(small, big)
    p = small.p

    def embed(a):
        acc = FFElem.zero(big)
        power = FFElem.one(big)
        for c in a.c:
            if c:
                acc = acc + power * c
            power = power * root
        return acc

    return embed


@lru_cache(maxsize=None)
def _embedding_root(small, big):
    if small.f == 1:
        return FFElem(big, (-small.modulus[0] % small.p,) + (0,) * (big.f - 1))
    for z in elements(big):
        acc = FFElem.zero(big)
        for c in reversed(small.modulus):
            acc = acc * z + c
        if acc.is_zero():
            return z
    raise AssertionError("no root of the small modulus in the big field")


# ---------------------------------------------------------------------------
# Z_p and Z_q approximations


class ZpApprox:
    """Element of Z_p / p^N, stored as the integer representative in [0, p^N)."""

    __slots__ = ("p", "N", "value")

    def __init__(self, p, N, value):
        self.p, self.N = p, N
        self.value = int(value) % p**N

    @property
    def digits(self):
        v, out = self.value, []
        for _ in range(self.N):
            out.append(v % self.p)
            v //= self.p
        return out

    @classmethod
    def from_digits(cls, p, digits):
        return cls(p, len(digits), sum(int(d) * p**j for j, d in enumerate(digits)))

    def valuation(self):
        v, x = 0, self.value
        if x == 0:
            return self.N
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def reduce(self, n):
        return ZpApprox(self.p, n, self.value)

    def _other(self, other):
        if isinstance(other, ZpApprox):
            if other.N != self.N:
                raise PrecisionMismatch(f"{self.N} vs {other.N}")
            return other.value
        return int(other)

    def __add__(self, other):
        return ZpApprox(self.p, self.N, self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return ZpApprox(self.p, self.N, self.value - self._other(other))

    def __neg__(self):
        return ZpApprox(self.p, self.N, -self.value)

    def __mul__(self, other):
        return ZpApprox(self.p, self.N, self.value * self._other(other))

    __rmul__ = __mul__

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, int):
            return (self.value - other) % self.p**self.N == 0
        return isinstance(other, ZpApprox) and (self.p, self.N, self.value) == (other.p, other.N, other.value)

    def __hash__(self):
        return hash((self.p, self.N, self.value))

    def __repr__(self):
        return f"{self.value} mod {self.p}^{self.N}"


class UnramElem:
    """Element of Z_q / p^N (= W_N(F_q)) in power-basis coordinates."""

    __slots__ = ("spec", "N", "c")

    def __init__(self, spec: FieldSpec, N: int, coeffs):
        m = spec.p**N
        coeffs = tuple(int(x) % m for x in coeffs)
        if len(coeffs) != spec.f:
            raise InputError(f"expected {spec.f} coordinates, got {len(coeffs)}")
        self.spec, self.N, self.c = spec, N, coeffs

    def _ring(self):
        return galois_ring(self.spec, self.N)

    @classmethod
    def zero(cls, spec, N):
        return cls(spec, N, (0,) * spec.f)

    @classmethod
    def one(cls, spec, N):
        return cls(spec, N, (1,) + (0,) * (spec.f - 1))

    @classmethod
    def from_integer(cls, spec, N, m):
        return cls(spec, N, (m,) + (0,) * (spec.f - 1))

    @classmethod
    def teichmueller(cls, a: FFElem, N: int):
        return cls(a.spec, N, galois_ring(a.spec, N).teichmueller(a.c))

    @classmethod
    def from_digits(cls, spec, digits):
        """sum_j p^j [digits[j]] with digits FFElem."""
        N = len(digits)
        R = galois_ring(spec, N)
        acc = R.zero
        for j, d in enumerate(digits):
            if d:
                acc = R.add(acc, R.smul(spec.p**j, R.teichmueller(d.c)))
        return cls(spec, N, acc)

    @classmethod
    def from_witt(cls, spec, coords):
        """The element whose Witt coordinates are ``coords`` (FFElem)."""
        return cls.from_digits(spec, [w.inv_frobenius(j) for j, w in enumerate(coords)])

    def digits(self):
        p, spec = self.spec.p, self.spec
        out = []
        cur = self.c
        for j in range(self.N):
            M = self.N - j
            d = tuple(x % p for x in cur)
            out.append(FFElem(spec, d))
            t = galois_ring(spec, M).teichmueller(d)
            diff = [(x - y) % p**M for x, y in zip(cur, t)]
            assert all(x % p == 0 for x in diff)
            cur = tuple(x // p for x in diff)
        return out

    def witt_coords(self):
        return [d ** (self.spec.p**j) for j, d in enumerate(self.digits())]

    def _check(self, other):
        if isinstance(other, int):
            return UnramElem.from_integer(self.spec, self.N, other)
        if not isinstance(other, UnramElem):
            return NotImplemented
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")
        if other.N != self.N:
            raise PrecisionMismatch(f"precision {self.N} vs {other.N}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return UnramElem(self.spec, self.N, self._ring().add(self.c, other.c))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return UnramElem(self.spec, self.N, self._ring().sub(self.c, other.c))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return UnramElem(self.spec, self.N, self._ring().neg(self.c))

    def __mul__(self, other):
        if isinstance(other, int):
            return UnramElem(self.spec, self.N, self._ring().smul(other, self.c))
        other = self._check(other)
        if other is NotImplemented:
            return other
        return UnramElem(self.spec, self.N, self._ring().mul(self.c, other.c))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        return UnramElem(self.spec, self.N, self._ring().pow(self.c, e))

    def inv(self):
        return UnramElem(self.spec, self.N, self._ring().inv(self.c))

    def valuation(self):
        """Least j with digit j nonzero; N when the element vanishes mod p^N."""
        return self._ring().valuation(self.c)

    def is_zero(self):
        return not any(self.c)

    def __bool__(self):
        return any(self.c)

    def frobenius(self, times=1):
        R = self._ring()
        c = self.c
        for _ in range(times % self.spec.f if self.spec.f > 1 else 0):
            c = R.sigma(c)
        return UnramElem(self.spec, self.N, c)

    def trace(self) -> ZpApprox:
        acc = self
        cur = self
        for _ in range(self.spec.f - 1):
            cur = cur.frobenius()
            acc = acc + cur
        if any(acc.c[1:]):
            raise NotInBaseField(f"trace {acc.c} not in Z_p")
        return ZpApprox(self.spec.p, self.N, acc.c[0])

    def reduce(self) -> FFElem:
        return FFElem(self.spec, self.c)

    def with_precision(self, n):
        if n > self.N:
            raise PrecisionMismatch(f"cannot raise precision {self.N} -> {n}")
        return UnramElem(self.spec, n, self.c)

    def divp(self, i):
        q = self.spec.p**i
        if any(x % q for x in self.c):
            raise NotDivisible(f"{self.c} not divisible by p^{i}")
        return UnramElem(self.spec, self.N, tuple(x // q for x in self.c))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._check(other)
        return isinstance(other, UnramElem) and (self.spec, self.N, self.c) == (other.spec, other.N, other.c)

    def __hash__(self):
        return hash((self.spec, self.N, self.c))

    def __repr__(self):
        if self.spec.f == 1:
            return f"{self.c[0]}"
        return "<" + ",".join(map(str, self.c)) + ">"

    def to_json(self):
        return [d.to_json() for d in self.digits()]

    @classmethod
    def from_json(cls, spec, obj, N=None):
        if isinstance(obj, int):
            if N is None:
                raise InputError("integer Z_q literal needs an explicit precision")
            return cls.from_integer(spec, N, obj)
        if not isinstance(obj, list):
            raise InputError(f"bad Z_q literal {obj!r}")
        digits = [FFElem.from_json(spec, d) for d in obj]
        if N is not None:
            if len(digits) > N:
                raise InputError(f"{len(digits)} digits exceed precision {N}")
            digits = digits + [FFElem.zero(spec)] * (N - len(digits))
        return cls.from_digits(spec, digits)
