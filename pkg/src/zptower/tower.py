"""Global Z_p-towers: conductors, genus sequences, stability, L-degrees, Frobenius.

A tower is described either by a normalized datum over k(X) (constant c and
per-place coefficients c_{x,i}) or directly by a ramification profile: base
genus g0, constant-subtower level n_c and, for each ramified place, its
residue degree together with the valuations v(c_{P,i}).

The genus at level n follows from

    p^min(n_c, n) (2 g_n - 2) = p^n (2 g0 - 2) + sum_P d_P sum_{i<=n} phi(p^i) u_{P,i}.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .algebra import FFElem, FieldSpec, UnramElem, ZpApprox, elements, find_embedding, is_prime
from .asw import GlobalStandardForm, _digits_to_zp, _unram_literal, reduce_global_p1
from .cft import ValuationProfile, conductor_exponent
from .errors import (
    BadDegree,
    ConstantTower,
    HorizonTooSmall,
    InputError,
    NonIntegralGenus,
    NotInBaseField,
    NotNormalized,
)
from .ratfunc import INF
from .witt import CharPRing, WittVec, to_zpn

MIN_LEVELS = 4


def phi(p: int, i: int) -> int:
    """Euler phi of p^i."""
    return 1 if i == 0 else p**i - p ** (i - 1)


def _place_label(x):
    return INF if x == INF else ("x=" + repr(x))


def _place_sort(x):
    return (-1,) if x == INF else (0, x.index)


# --------------------------------------------------------------------------------
# tower data


@dataclass
class TowerDatum:
    """c [alpha] + sum_x sum_i c_{x,i} [pi_x]^-i modulo p^N."""

    spec: FieldSpec
    N: int
    c: ZpApprox
    places: dict = field(default_factory=dict)
    source: WittVec | None = None

    def __post_init__(self):
        if not isinstance(self.c, ZpApprox):
            self.c = ZpApprox(self.spec.p, self.N, int(self.c))
        clean = {}
        for x, terms in self.places.items():
            t = {}
            for i, v in terms.items():
                if i < 1 or i % self.spec.p == 0:
                    raise InputError(f"index {i} must be positive and prime to p")
                if not isinstance(v, UnramElem):
                    v = UnramElem.from_integer(self.spec, self.N, v)
                if not v.is_zero():
                    t[int(i)] = v
            if t:
                clean[x] = dict(sorted(t.items()))
        self.places = dict(sorted(clean.items(), key=lambda kv: _place_sort(kv[0])))
        vals = [v.valuation() for t in self.places.values() for v in t.values()] + [self.c.valuation()]
        if min(vals) != 0:
            if min(vals) >= self.N:
                raise NotNormalized("datum is zero modulo p^N (trivial tower)")
            raise NotNormalized(f"datum is p^{min(vals)} times a deeper datum; divide it out first")

    @classmethod
    def from_global_form(cls, gf: GlobalStandardForm, source=None):
        return cls(gf.spec, gf.N, gf.c, gf.places, source)

    @classmethod
    def from_witt(cls, a: WittVec, N=None):
        return cls.from_global_form(reduce_global_p1(a, N), a)

    def to_json(self):
        return {
            "field": self.spec.to_json(),
            "precision": self.N,
            "c": self.c.digits,
            "places": [
                {"at": INF if x == INF else x.to_json(), "coeffs": {str(i): v.to_json() for i, v in t.items()}}
                for x, t in self.places.items()
            ],
        }

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise InputError("tower datum must be an object")
        try:
            spec = FieldSpec.from_json(obj.get("field"))
        except InputError as exc:
            raise InputError(str(exc), "/field" + exc.pointer) from exc
        N = obj.get("precision")
        if not isinstance(N, int) or isinstance(N, bool) or N < 1:
            raise InputError("precision must be a positive integer", "/precision")
        c = _digits_to_zp(spec.p, N, obj.get("c", 0), "/c")
        places = {}
        raw = obj.get("places", [])
        if not isinstance(raw, list):
            raise InputError("places must be a list", "/places")
        for k, pl in enumerate(raw):
            ptr = f"/places/{k}"
            if not isinstance(pl, dict) or "at" not in pl:
                raise InputError("place needs an 'at' field", ptr)
            at = pl["at"]
            if at == INF:
                x = INF
            else:
                try:
                    x = FFElem.from_json(spec, at)
                except InputError as exc:
                    raise InputError(str(exc), ptr + "/at" + exc.pointer) from exc
            if x in places:
                raise InputError("duplicate place", ptr + "/at")
            coeffs = pl.get("coeffs", {})
            if not isinstance(coeffs, dict):
                raise InputError("coeffs must be an object", ptr + "/coeffs")
            terms = {}
            for key, v in coeffs.items():
                try:
                    i = int(key)
                except ValueError:
                    raise InputError(f"index {key!r} is not an integer", f"{ptr}/coeffs/{key}") from None
                if i < 1 or i % spec.p == 0:
                    raise InputError(f"index {i} must be positive and prime to p", f"{ptr}/coeffs/{key}")
                try:
                    terms[i] = _unram_literal(spec, v, N)
                except InputError as exc:
                    raise InputError(str(exc), f"{ptr}/coeffs/{key}" + exc.pointer) from exc
            places[x] = terms
        return cls(spec, N, c, places)


@dataclass
class NcNu:
    n_c: int
    n_u: int
    constant: bool = False
    warning: str | None = None

    def __iter__(self):
        return iter((self.n_c, self.n_u))


def nc_nu(datum: TowerDatum) -> NcNu:
    """Constant-subtower and unramified-subtower levels of a normalized datum."""
    vals = [v.valuation() for t in datum.places.values() for v in t.values()]
    if not vals:
        return NcNu(datum.N, datum.N, True, f"no pole terms: constant tower (levels reported as {datum.N} = N)")
    m = min(vals)
    warning = None
    vc = datum.c.valuation()
    if vc < m:
        warning = f"v(c) = {vc} is below the ramification level {m}; reported as computed"
        warnings.warn(warning, stacklevel=2)
    return NcNu(m, m, False, warning)


# --------------------------------------------------------------------------------
# profiles


@dataclass
class ProceduralStream:
    """Pairs (i_k, v_k) with v_k strictly increasing, plus declared sup metadata."""

    pairs: list
    sup_attained: bool | None = None
    sup: Fraction | None = None
    horizon: int | None = None

    def __post_init__(self):
        self.pairs = [(int(i), int(v)) for i, v in self.pairs]
        if not self.pairs:
            raise InputError("procedural stream is empty", "/stream")
        for k in range(1, len(self.pairs)):
            if self.pairs[k][1] <= self.pairs[k - 1][1]:
                raise InputError("stream valuations must be strictly increasing", f"/stream/{k}")
        if self.sup is not None:
            self.sup = Fraction(self.sup)
        if self.horizon is None:
            self.horizon = self.pairs[-1][1] + 1

    @classmethod
    def from_function(cls, fn, count, **kw):
        return cls([fn(k) for k in range(count)], **kw)

    def check(self, p):
        for k, (i, v) in enumerate(self.pairs):
            if i < 1 or i % p == 0 or v < 0:
                raise InputError(f"stream entry ({i}, {v}) invalid", f"/stream/{k}")

    def u(self, p, n):
        if n > self.horizon:
            raise HorizonTooSmall(f"stream known through level {self.horizon}; level {n} requested")
        best = [i * p ** (n - v - 1) for i, v in self.pairs if v < n]
        return 1 + max(best) if best else 0

    def min_v(self):
        return self.pairs[0][1]

    def observed_sup(self, p, n):
        """max of i p^-v over entries active at level n."""
        vals = [Fraction(i, p**v) for i, v in self.pairs if v < n]
        return max(vals) if vals else None


@dataclass
class PlaceProfile:
    label: str
    degree: int
    data: ValuationProfile | ProceduralStream

    @property
    def procedural(self):
        return isinstance(self.data, ProceduralStream)

    def u(self, p, n):
        if n == 0:
            return 0
        if self.procedural:
            return self.data.u(p, n)
        return conductor_exponent(self.data, n)

    def min_v(self):
        if self.procedural:
            return self.data.min_v()
        return min(self.data.vals.values()) if self.data.vals else None


@dataclass
class RamificationProfile:
    p: int
    g0: int = 0
    n_c: int = 0
    places: list = field(default_factory=list)
    constant: bool = False
    precision: int | None = None

    def __post_init__(self):
        if self.g0 < 0:
            raise InputError("g0 must be >= 0", "/g0")
        if self.n_c < 0:
            raise InputError("n_c must be >= 0", "/n_c")
        for k, pl in enumerate(self.places):
            if pl.degree < 1:
                raise InputError("residue degree must be >= 1", f"/places/{k}/degree")
            if pl.procedural:
                pl.data.check(self.p)

    @property
    def n_u(self):
        vs = [pl.min_v() for pl in self.places if pl.min_v() is not None]
        return min(vs) if vs else None

    @property
    def ramified(self):
        return [pl for pl in self.places if pl.min_v() is not None]

    def conductor_degree(self, n):
        return sum(pl.degree * pl.u(self.p, n) for pl in self.places)

    def horizon(self):
        hs = [pl.data.horizon for pl in self.places if pl.procedural]
        return min(hs) if hs else None

    def to_json(self):
        out = {"p": self.p, "g0": self.g0, "n_c": self.n_c, "places": []}
        for pl in self.places:
            d = {"label": pl.label, "degree": pl.degree}
            if pl.procedural:
                d["procedural"] = {
                    "stream": [list(t) for t in pl.data.pairs],
                    "sup_attained": pl.data.sup_attained,
                    "sup": None if pl.data.sup is None else str(pl.data.sup),
                    "horizon": pl.data.horizon,
                }
            else:
                d["valuations"] = {str(i): v for i, v in pl.data.vals.items()}
            out["places"].append(d)
        return out

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise InputError("profile must be an object")
        p = obj.get("p")
        if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
            raise InputError("p must be a prime", "/p")
        g0 = obj.get("g0", 0)
        n_c = obj.get("n_c", 0)
        for key, val in (("g0", g0), ("n_c", n_c)):
            if not isinstance(val, int) or isinstance(val, bool) or val < 0:
                raise InputError(f"{key} must be a nonnegative integer", f"/{key}")
        raw = obj.get("places")
        if not isinstance(raw, list):
            raise InputError("places must be a list", "/places")
        places = []
        for k, pl in enumerate(raw):
            ptr = f"/places/{k}"
            if not isinstance(pl, dict):
                raise InputError("place must be an object", ptr)
            deg = pl.get("degree", 1)
            if not isinstance(deg, int) or isinstance(deg, bool) or deg < 1:
                raise InputError("degree must be a positive integer", ptr + "/degree")
            label = str(pl.get("label", f"P{k}"))
            if "procedural" in pl:
                pr = pl["procedural"]
                if not isinstance(pr, dict) or not isinstance(pr.get("stream"), list):
                    raise InputError("procedural data needs a stream list", ptr + "/procedural/stream")
                stream = pr["stream"]
                for j, e in enumerate(stream):
                    if not (isinstance(e, list) and len(e) == 2 and all(isinstance(t, int) and not isinstance(t, bool) for t in e)):
                        raise InputError("stream entries are [i, v] integer pairs", f"{ptr}/procedural/stream/{j}")
                sa = pr.get("sup_attained")
                if sa is not None and not isinstance(sa, bool):
                    raise InputError("sup_attained must be a boolean", ptr + "/procedural/sup_attained")
                try:
                    sup = None if pr.get("sup") is None else Fraction(str(pr["sup"]))
                except (ValueError, ZeroDivisionError):
                    raise InputError("sup must be a rational number", ptr + "/procedural/sup") from None
                hz = pr.get("horizon")
                if hz is not None and (not isinstance(hz, int) or isinstance(hz, bool) or hz < 1):
                    raise InputError("horizon must be a positive integer", ptr + "/procedural/horizon")
                try:
                    data = ProceduralStream(stream, sa, sup, hz)
                    data.check(p)
                except InputError as exc:
                    raise InputError(str(exc), ptr + "/procedural" + exc.pointer) from exc
            else:
                vals = pl.get("valuations", {})
                if not isinstance(vals, dict):
                    raise InputError("valuations must be an object", ptr + "/valuations")
                clean = {}
                for key, v in vals.items():
                    try:
                        i = int(key)
                    except ValueError:
                        raise InputError(f"index {key!r} is not an integer", f"{ptr}/valuations/{key}") from None
                    if not isinstance(v, int) or isinstance(v, bool):
                        raise InputError("valuation must be an integer", f"{ptr}/valuations/{key}")
                    clean[i] = v
                try:
                    data = ValuationProfile(p, None, clean)
                except InputError as exc:
                    raise InputError(str(exc), ptr + "/valuations" + exc.pointer) from exc
            places.append(PlaceProfile(label, deg, data))
        return cls(p, g0, n_c, places)


def profile_from_datum(datum: TowerDatum) -> RamificationProfile:
    p = datum.spec.p
    info = nc_nu(datum)
    places = []
    for x, terms in datum.places.items():
        vp = ValuationProfile(p, None, {i: v.valuation() for i, v in terms.items()})
        places.append(PlaceProfile(_place_label(x), 1, vp))
    return RamificationProfile(p, 0, info.n_c, places, info.constant, datum.N)


# --------------------------------------------------------------------------------
# genus


@dataclass
class GenusLevel:
    n: int
    u: dict
    conductor_degree: int
    g: int
    bound: Fraction | None

    def to_json(self):
        return {
            "n": self.n,
            "u": self.u,
            "conductor_degree": self.conductor_degree,
            "g": self.g,
            "bound": None if self.bound is None else str(self.bound),
        }


@dataclass
class StabilityVerdict:
    kind: str  # "stable" | "unstable" | "unknown"
    a: Fraction | None = None
    b: Fraction | None = None
    c: Fraction | None = None
    m: int | None = None
    horizon: int | None = None
    witness: str | None = None
    conditions: dict = field(default_factory=dict)
    disagreement: bool = False
    notes: list = field(default_factory=list)

    def predict(self, p, n):
        return self.a * p ** (2 * n) + self.b * p**n + self.c

    def to_json(self):
        s = lambda v: None if v is None else str(v)  # noqa: E731
        return {
            "kind": self.kind,
            "a": s(self.a),
            "b": s(self.b),
            "c": s(self.c),
            "m": self.m,
            "horizon": self.horizon,
            "witness": self.witness,
            "conditions": self.conditions,
            "disagreement": self.disagreement,
            "notes": self.notes,
        }


@dataclass
class GenusReport:
    p: int
    levels: list
    verdict: StabilityVerdict | None = None

    @property
    def genera(self):
        return [lv.g for lv in self.levels]

    def to_json(self):
        return {
            "p": self.p,
            "levels": [lv.to_json() for lv in self.levels],
            "verdict": None if self.verdict is None else self.verdict.to_json(),
        }


def _check_levels(profile, n_max):
    if n_max < 1:
        raise InputError("n_max must be >= 1")
    if profile.constant:
        raise ConstantTower("the tower is a constant field extension; its genus does not grow")
    if profile.precision is not None and n_max > profile.precision:
        raise InputError(f"level {n_max} exceeds the working precision {profile.precision}")


def _genus_from_total(p, n, n_c, total):
    scale = p ** min(n_c, n)
    two_g_minus_2 = Fraction(total, scale)
    if two_g_minus_2.denominator != 1 or (two_g_minus_2.numerator % 2):
        raise NonIntegralGenus(f"level {n}: 2g-2 = {two_g_minus_2} is not an even integer")
    return (two_g_minus_2.numerator + 2) // 2


def genus_closed(profile: RamificationProfile, n: int) -> int:
    """g_n from the full sum."""
    p = profile.p
    total = p**n * (2 * profile.g0 - 2) + sum(
        pl.degree * sum(phi(p, i) * pl.u(p, i) for i in range(1, n + 1)) for pl in profile.places
    )
    return _genus_from_total(p, n, profile.n_c, total)


def lower_bound(profile: RamificationProfile, n: int) -> Fraction:
    """Lower bound for g_n valid for n >= n_u."""
    p, n_u, n_c = profile.p, profile.n_u, profile.n_c
    if n_u is None:
        raise ConstantTower("no ramified place")
    if n < n_u:
        raise InputError(f"bound needs n >= n_u = {n_u}")
    rhs = p**n * (2 * profile.g0 - 2) + p**n - p**n_u + Fraction(p**n_u * (p ** (2 * (n - n_u)) - 1), p + 1)
    return (rhs / p**n_c + 2) / 2


def genus_sequence(profile: RamificationProfile, n_max: int, classify: bool = False) -> GenusReport:
    _check_levels(profile, n_max)
    p = profile.p
    levels = []
    acc = 0  # incremental sum of d_P phi(p^i) u_{P,i}
    for n in range(1, n_max + 1):
        us = {pl.label: pl.u(p, n) for pl in profile.places}
        cd = sum(pl.degree * us[pl.label] for pl in profile.places)
        acc += phi(p, n) * cd
        g_inc = _genus_from_total(p, n, profile.n_c, p**n * (2 * profile.g0 - 2) + acc)
        g = genus_closed(profile, n)
        if g != g_inc:
            raise AssertionError(f"level {n}: genus paths disagree ({g} vs {g_inc})")
        bound = None
        if profile.n_u is not None and n >= profile.n_u:
            bound = lower_bound(profile, n)
            if g < bound:
                raise AssertionError(f"level {n}: genus {g} below the lower bound {bound}")
        levels.append(GenusLevel(n, us, cd, g, bound))
    verdict = stability_classify(profile) if classify and profile.n_c == 0 else None
    return GenusReport(p, levels, verdict)


def unit_root_closed_form(p: int, d: int, n: int) -> Fraction:
    """2 g_n - 2 for the unit-root tower of degree d."""
    return Fraction(d * p ** (2 * n), p + 1) - p**n - Fraction(p + 1 + d, p + 1)


# --------------------------------------------------------------------------------
# stability


def _place_max(vp: ValuationProfile, p):
    """(i*, v*) maximizing i p^-v; ties share the same value, so any choice works."""
    return max(vp.vals.items(), key=lambda t: (Fraction(t[0], p ** t[1]), -t[1]))


def _finite_fit(profile: RamificationProfile):
    p = profile.p
    A = Fraction(0)
    B = 0
    m = 0
    a_p = {}
    for pl in profile.ramified:
        i_star, v_star = _place_max(pl.data, p)
        a_p[pl.label] = Fraction(i_star, p ** (v_star + 1))
        A += pl.degree * a_p[pl.label]
        B += pl.degree
        m = max(m, 1 + max(pl.data.vals.values()))
    C = sum(phi(p, i) * profile.conductor_degree(i) for i in range(1, m))
    a = A * p / (2 * (p + 1))
    b = Fraction(2 * profile.g0 - 2 + B, 2)
    c = (C - A * Fraction(p ** (2 * m - 1), p + 1) - B * Fraction(p) ** (m - 1)) / 2 + 1
    return a, b, c, m, a_p, A, B


def _eventual_linear(values, p, lo, hi):
    """(A, B) with values[n] = A p^n + B for lo <= n <= hi, else None."""
    if hi - lo < 2:
        return None
    A = Fraction(values[hi] - values[hi - 1], p**hi - p ** (hi - 1))
    B = values[hi] - A * p**hi
    if all(values[n] == A * p**n + B for n in range(lo, hi + 1)):
        return A, B
    return None


def stability_classify(profile: RamificationProfile, horizon: int | None = None) -> StabilityVerdict:
    if profile.n_c != 0:
        raise InputError("stability is classified for geometric towers (n_c = 0)")
    if profile.constant:
        raise ConstantTower("constant tower")
    p = profile.p
    procedural = [pl for pl in profile.places if pl.procedural]
    if not procedural:
        a, b, c, m, a_p, A, B = _finite_fit(profile)
        v = StabilityVerdict("stable", a, b, c, m, conditions={"i": True, "ii": True, "iii": True})
        v.notes.append("a_p: " + ", ".join(f"{k}={val}" for k, val in a_p.items()))
        for n in range(max(m, 1), m + 6):
            g = genus_closed(profile, n)
            if v.predict(p, n) != g:
                raise AssertionError(f"fitted quadratic fails at level {n}: {v.predict(p, n)} vs {g}")
            if n > 0 and profile.conductor_degree(n) != A * p**n + B:
                raise AssertionError(f"eventual conductor form fails at level {n}")
        return v

    H = profile.horizon() if horizon is None else min(horizon, profile.horizon())
    undeclared = [pl.label for pl in procedural if pl.data.sup_attained is None]
    if H < MIN_LEVELS:
        raise HorizonTooSmall(f"only {H} levels available; at least {MIN_LEVELS} are needed")
    if undeclared:
        return StabilityVerdict(
            "unknown",
            horizon=H,
            conditions={"i": None, "ii": None, "iii": None},
            notes=[f"no sup metadata declared for {', '.join(undeclared)}; nothing is extrapolated past level {H}"],
        )

    lo = max(1, H - MIN_LEVELS + 1)
    # (i): eventual form U_n = A p^n + B of the conductor degree (equivalently g_n quadratic in p^n)
    U = {n: profile.conductor_degree(n) for n in range(1, H + 1)}
    fit = _eventual_linear(U, p, lo, H)
    cond_i = fit is not None
    # (ii): every place has a maximum of i p^-v
    cond_ii = all(pl.data.sup_attained if pl.procedural else True for pl in profile.ramified)
    # (iii): u_{P,n} = 1 + a_P p^n eventually, per place
    cond_iii = True
    for pl in profile.ramified:
        us = [Fraction(pl.u(p, n) - 1, p**n) for n in range(lo, H + 1)]
        if len(set(us)) != 1 or us[0] <= 0:
            cond_iii = False
    conds = {"i": cond_i, "ii": cond_ii, "iii": cond_iii}
    disagree = len(set(conds.values())) > 1
    notes = []
    for pl in procedural:
        obs = pl.data.observed_sup(p, H)
        if pl.data.sup_attained and pl.data.sup is not None and obs is not None and obs != pl.data.sup:
            notes.append(f"{pl.label}: declared attained sup {pl.data.sup} not reached by level {H} (max seen {obs})")
    if disagree:
        notes.append(f"conditions disagree on levels {lo}..{H}: " + ", ".join(f"({k})={val}" for k, val in conds.items()))
    if cond_i:
        A, B = fit
        a = A * p / (2 * (p + 1))
        b = Fraction(2 * profile.g0 - 2 + B, 2)
        c = Fraction(genus_closed(profile, lo)) - a * p ** (2 * lo) - b * p**lo
        v = StabilityVerdict("stable", a, b, c, lo, H, conditions=conds, disagreement=disagree, notes=notes)
        for n in range(lo, H + 1):
            if v.predict(p, n) != genus_closed(profile, n):
                raise AssertionError(f"fitted quadratic fails at level {n}")
        return v
    if not cond_ii:
        return StabilityVerdict(
            "unstable",
            horizon=H,
            witness=f"conductor degree is not of the form A p^n + B on levels {lo}..{H}; declared sup not attained",
            conditions=conds,
            disagreement=disagree,
            notes=notes,
        )
    return StabilityVerdict("unknown", horizon=H, conditions=conds, disagreement=disagree, notes=notes)


def discrepancy_stream(p: int, count: int) -> ProceduralStream:
    """i_k = p^(k+1) - 1, v_k = k: sup of i p^-v is p and never attained, yet u_n = p^n."""
    return ProceduralStream.from_function(lambda k: (p ** (k + 1) - 1, k), count, sup_attained=False, sup=Fraction(p))


# --------------------------------------------------------------------------------
# L-degree


def l_degree(profile: RamificationProfile, m_chi: int) -> int:
    """2 g0 - 2 + sum_P deg(P) u_{P, m_chi}."""
    if m_chi < 1:
        raise InputError("m_chi must be >= 1")
    p = profile.p
    value = 2 * profile.g0 - 2 + profile.conductor_degree(m_chi)
    if profile.n_c == 0 and not any(pl.procedural for pl in profile.places) and profile.ramified:
        lin = l_degree_linear(profile, m_chi)
        if lin is not None and lin != value:
            raise AssertionError(f"linear L-degree form {lin} differs from conductor sum {value}")
    return value


def l_degree_linear(profile: RamificationProfile, m_chi: int):
    """2 g0 - 2 + sum_j deg_j (1 + d_j p^(m_chi - m_j - 1)) when m_chi exceeds every m_j, else None."""
    p = profile.p
    total = 2 * profile.g0 - 2
    for pl in profile.ramified:
        i_star, v_star = _place_max(pl.data, p)
        if m_chi <= v_star:
            return None
        total += pl.degree * (1 + i_star * p ** (m_chi - v_star - 1))
    return total


# --------------------------------------------------------------------------------
# Frobenius


def _degree_over_prime(z: FFElem) -> int:
    t, cur = 1, z.frobenius()
    while cur != z:
        cur = cur.frobenius()
        t += 1
    return t


def frobenius_at(a: WittVec, z: FFElem, n: int | None = None) -> int:
    """-Tr(a(z)) in Z/p^n, the Frobenius at the place of z acting on the class of a."""
    base = a.ring.spec
    n = n or a.N
    a = a.truncate(n)
    embed = find_embedding(base, z.spec)
    val = a.evaluate(z, embed)
    d = _degree_over_prime(z)
    d = d * base.f // gcd(d, base.f)
    acc = val
    cur = val
    for _ in range(d - 1):
        cur = cur.F()
        acc = acc + cur
    return (-to_zpn(_to_prime(acc))) % base.p**n


def _to_prime(w: WittVec) -> WittVec:
    """Coordinates already fixed by Frobenius, rewritten over F_p."""
    prime = FieldSpec.prime(w.p)
    out = []
    for c in w.coords:
        if c.frobenius() != c:
            raise NotInBaseField(f"{c!r} is not in F_p")
        out.append(FFElem(prime, (c.c[0],)))
    return WittVec(out, CharPRing(prime, "field"))


# --------------------------------------------------------------------------------
# unit-root family


def unit_root_family(spec: FieldSpec, coeffs: dict, N: int) -> TowerDatum:
    """Tower of sum_i [b_i X^i]: totally ramified at infinity with u_n = 1 + d p^(n-1)."""
    p = spec.p
    coeffs = {int(i): (b if isinstance(b, FFElem) else FFElem.from_json(spec, b)) for i, b in coeffs.items()}
    coeffs = {i: b for i, b in coeffs.items() if b}
    if not coeffs:
        raise BadDegree("all coefficients vanish")
    d = max(coeffs)
    if d % p == 0:
        raise BadDegree(f"degree {d} is divisible by p={p}")
    for i in coeffs:
        if i < 1 or i % p == 0:
            raise BadDegree(f"exponent {i} must be positive and prime to p")
    terms = {i: UnramElem.teichmueller(b, N) for i, b in coeffs.items()}
    return TowerDatum(spec, N, ZpApprox(p, N, 0), {INF: terms})


def all_points(spec: FieldSpec):
    return [INF] + list(elements(spec))
