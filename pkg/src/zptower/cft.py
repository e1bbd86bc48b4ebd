"""Local symbol pairing, conductor exponents and upper ramification breaks.

The pairing of a standard form x = c[alpha] + sum c_i [T^-i] with a unit
y = T^e * u is evaluated two ways:

* residue formula: Tr Res(x~ * dlog y~), where y~ replaces every factor of
  u = prod (1 - a_ij T^i)^(p^j) by its Teichmüller lift;
* divisor sum: c e Tr[alpha] - sum_j p^j Tr(sum_i c_i sum_{l | i} l [a_lj]^(i/l)).

Both are exact mod p^n.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import FFElem, FieldSpec, UnramElem, ZpApprox, elements
from .asw import LocalStandardForm
from .errors import BoundTooSmall, EmptyProfile, InputError, PrecisionExhausted, WindowTooSmall
from .series import LaurentSeries, TwoSidedSeries, UnitFactorization, teich_lift_dlog, unit_factorization


@dataclass
class LocalUnit:
    """T^e * one_unit with e in Z_p (kept mod p^N) and one_unit = 1 + O(T)."""

    e: ZpApprox
    one_unit: LaurentSeries

    def __post_init__(self):
        u = self.one_unit
        if u.M != 1:
            raise InputError("one-unit must have coefficients in F_q")
        if u.valuation() != 0 or FFElem(u.spec, u.coefficient(0)) != FFElem.one(u.spec):
            raise InputError("one-unit must be 1 + O(T)", "/one_unit")

    @property
    def spec(self):
        return self.one_unit.spec

    def factorization(self, i_max: int, j_max: int) -> UnitFactorization:
        if i_max == 0:
            fac = UnitFactorization(self.e, FFElem.one(self.spec), {}, 0)
        else:
            fac = unit_factorization(self.one_unit, j_max=j_max, i_max=i_max)
        fac.e = self.e
        return fac

    def to_json(self):
        return {"e": self.e.value, "one_unit": self.one_unit.to_json()}

    @classmethod
    def from_json(cls, spec, obj, N):
        if not isinstance(obj, dict):
            raise InputError("unit must be an object")
        e = obj.get("e", 0)
        if not isinstance(e, int) or isinstance(e, bool):
            raise InputError("e must be an integer", "/e")
        if "one_unit" not in obj:
            raise InputError("missing one_unit", "/one_unit")
        try:
            u = LaurentSeries.from_json(spec, obj["one_unit"])
        except InputError as exc:
            raise InputError(str(exc), "/one_unit" + exc.pointer) from exc
        return cls(ZpApprox(spec.p, N, e), u)


@dataclass
class ValuationProfile:
    """i -> v(c_i) for the terms of a standard form.

    With a working precision N, entries with v >= N are dropped; N = None
    means the listed valuations are exact data.
    """

    p: int
    N: int | None = None
    vals: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for i, v in self.vals.items():
            i, v = int(i), int(v)
            if i < 1 or i % self.p == 0:
                raise InputError(f"index {i} must be positive and prime to p", f"/{i}")
            if v < 0:
                raise InputError(f"valuation {v} is negative", f"/{i}")
            if self.N is None or v < self.N:
                clean[i] = v
        self.vals = dict(sorted(clean.items()))

    @classmethod
    def of(cls, sf: LocalStandardForm):
        return cls(sf.spec.p, sf.N, {i: c.valuation() for i, c in sf.terms.items()})

    def is_empty(self):
        return not self.vals


# --------------------------------------------------------------------------------
# the pairing


def _window(sf: LocalStandardForm):
    return sf.pole_order()


def _beta(spec, n):
    from .algebra import choose_alpha

    return UnramElem.teichmueller(choose_alpha(spec), n)


def _check_n(sf, n):
    if not 1 <= n <= sf.N:
        raise InputError(f"n={n} must lie in 1..{sf.N}")


def form_series(sf: LocalStandardForm, n: int) -> TwoSidedSeries:
    """x~ = c beta + sum c_i T^-i with coefficients mod p^n."""
    spec = sf.spec
    terms = {0: _beta(spec, n) * sf.c.value}
    for i, ci in sf.terms.items():
        terms[-i] = UnramElem(spec, n, ci.c)
    return TwoSidedSeries.from_unram_terms(spec, n, terms)


def symbol_residue(sf: LocalStandardForm, y: LocalUnit, n: int) -> int:
    _check_n(sf, n)
    I = _window(sf)
    fac = y.factorization(I, n - 1)
    dl = teich_lift_dlog(fac, I, n)
    prod = form_series(sf, n) * dl
    res = UnramElem(sf.spec, n, prod.coefficient(-1))
    return res.trace().value


def symbol_sum(sf: LocalStandardForm, fac: UnitFactorization, n: int) -> int:
    _check_n(sf, n)
    spec, p = sf.spec, sf.spec.p
    I = _window(sf)
    if I and not fac.covers(I, n - 1):
        raise WindowTooSmall(f"factorization window {fac.window} < {I}*p^{n - 1}")
    mod = p**n
    total = (sf.c.value * fac.e.value % mod) * _beta(spec, n).trace().value
    teich = {}
    for (l, j), a in fac.factors.items():
        if j < n and l <= I:
            teich[(l, j)] = UnramElem.teichmueller(a, n)
    for j in range(n):
        inner = UnramElem.zero(spec, n)
        for i, ci in sf.terms.items():
            ci = UnramElem(spec, n, ci.c)
            acc = UnramElem.zero(spec, n)
            for l in range(1, i + 1):
                if i % l == 0 and (l, j) in teich:
                    acc = acc + teich[(l, j)] ** (i // l) * l
            inner = inner + ci * acc
        total -= p**j * inner.trace().value
    return total % mod


def classical_symbol(sf: LocalStandardForm, y: LocalUnit) -> int:
    """Tr Res(x_0 dy/y) over F_q: the n = 1 pairing from coordinate 0 alone."""
    spec = sf.spec
    x0 = {0: (sf.alpha * (sf.c.value % spec.p)).c}
    for i, ci in sf.terms.items():
        x0[-i] = ci.reduce().c
    x0 = LaurentSeries.from_terms(spec, 1, x0)
    I = sf.pole_order()
    u = y.one_unit
    if u.prec is not None and u.prec <= I:
        raise PrecisionExhausted(f"one-unit known below T^{u.prec}; need T^{I}")
    u = u.truncate(I + 1)
    dlog = u.derivative() * u.invert_unit(I + 1)
    dlog = dlog + LaurentSeries.monomial(spec, 1, y.e.value % spec.p, -1)
    res = (x0 * dlog).coefficient(-1)
    return FFElem(spec, res).trace()


def symbol_at_T(sf: LocalStandardForm, n: int) -> int:
    """[x, T) = c Tr(beta) mod p^n."""
    return sf.c.value * _beta(sf.spec, n).trace().value % sf.spec.p**n


# --------------------------------------------------------------------------------
# conductors and breaks


def conductor_exponent(vp: ValuationProfile, n: int) -> int:
    if n < 1:
        raise InputError("n must be >= 1")
    p = vp.p
    best = [i * p ** (n - v - 1) for i, v in vp.vals.items() if v < n]
    return 1 + max(best) if best else 0


def _ceil_log(p: int, r: int, i: int) -> int:
    """Least integer t with i * p^t >= r (r, i >= 1), i.e. ceil(log_p(r/i))."""
    if i >= r:
        s = 0
        while i >= r * p ** (s + 1):
            s += 1
        return -s
    t = 1
    while i * p**t < r:
        t += 1
    return t


@dataclass(frozen=True)
class Break:
    """b_r three ways: the bare min-formula, that value clamped at 0, and the
    formula with each log term clamped at 0 (which equals max{n : u_n <= r})."""

    raw: int
    clamped: int
    termwise: int


def ramification_break(vp: ValuationProfile, r: int) -> Break:
    if vp.is_empty():
        raise EmptyProfile("no ramified terms")
    if r < 0:
        raise InputError("r must be >= 0")
    if r == 0:
        raw = termwise = min(vp.vals.values())
    else:
        logs = {i: _ceil_log(vp.p, r, i) for i in vp.vals}
        raw = min(v + logs[i] for i, v in vp.vals.items())
        termwise = min(v + max(logs[i], 0) for i, v in vp.vals.items())
    return Break(raw, max(raw, 0), termwise)


def minimal_bound(sf: LocalStandardForm, n: int) -> int:
    """Beyond this index every 1 - a T^m pairs trivially mod p^n."""
    return sf.pole_order() * sf.spec.p ** (n - 1)


def conductor_via_symbol(sf: LocalStandardForm, n: int, i_bound: int | None = None) -> int:
    """Brute force: 1 + max{m : [sf, 1 - a T^m) != 0 mod p^n for some a}, or 0."""
    _check_n(sf, n)
    need = minimal_bound(sf, n)
    if i_bound is None:
        i_bound = need
    if i_bound < need:
        raise BoundTooSmall(f"i_bound {i_bound} < {need}; higher generators could still pair nontrivially")
    spec = sf.spec
    e0 = ZpApprox(spec.p, n, 0)
    nonzero = [a for a in elements(spec) if a]
    for m in range(i_bound, 0, -1):
        for a in nonzero:
            u = LaurentSeries.from_terms(spec, 1, {0: 1, m: (-a).c})
            fac = unit_factorization(u, j_max=n - 1, i_max=max(sf.pole_order(), 1))
            fac.e = e0
            if symbol_sum(sf, fac, n):
                return m + 1
    return 0
