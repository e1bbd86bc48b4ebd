"""Normal forms of Witt vectors modulo the image of F - 1.

Locally every class in W_N(k((T))) / (F-1) has a unique representative

    c * [alpha] + sum_{i >= 1, p ∤ i} c_i [T^-i],   c in Z/p^N, c_i in Z_q/p^N,

and over k(X) the same holds with one sum per rational place (uniformizers
X - x and 1/X).  Reduction peels one V-adic layer at a time: the leading
coordinate y of the remainder is replaced by the Teichmüller sum of its
monomials of nonpositive degree, and each such monomial is folded into the
form using

    V^j [a T^(-i p^k)]  ≡  p^j [a^(p^-k)] [T^-i]     (mod (F-1)W).

Whatever is left in the leading coordinate has positive valuation, so its
Teichmüller lift lies in (F-1)W and the layer can be dropped.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import FFElem, FieldSpec, UnramElem, ZpApprox, choose_alpha, galois_ring, solve_artin_schreier
from .errors import InputError, PrecisionExhausted, UnsupportedDenominator
from .ratfunc import INF, LiftedRatFunc, RatFunc
from .series import LaurentSeries, split_p
from .witt import CharPRing, WittVec, from_unram


@dataclass
class LocalStandardForm:
    spec: FieldSpec
    N: int
    c: ZpApprox
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        p = self.spec.p
        if not isinstance(self.c, ZpApprox):
            self.c = ZpApprox(p, self.N, int(self.c))
        clean = {}
        for i, v in self.terms.items():
            if i < 1 or i % p == 0:
                raise InputError(f"term index {i} must be positive and prime to p", f"/terms/{i}")
            if not isinstance(v, UnramElem):
                v = UnramElem.from_integer(self.spec, self.N, v)
            if not v.is_zero():
                clean[int(i)] = v
        self.terms = dict(sorted(clean.items()))

    @property
    def alpha(self):
        return choose_alpha(self.spec)

    @classmethod
    def zero(cls, spec, N):
        return cls(spec, N, ZpApprox(spec.p, N, 0), {})

    def is_zero(self):
        return self.c.value == 0 and not self.terms

    def pole_order(self):
        return max(self.terms, default=0)

    def is_trivial_mod_p(self):
        return self.c.value % self.spec.p == 0 and all(v.valuation() >= 1 for v in self.terms.values())

    def __add__(self, other):
        terms = dict(self.terms)
        for i, v in other.terms.items():
            terms[i] = terms[i] + v if i in terms else v
        return LocalStandardForm(self.spec, self.N, self.c + other.c, terms)

    def scale(self, u: int):
        return LocalStandardForm(self.spec, self.N, self.c * u, {i: v * u for i, v in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, LocalStandardForm)
            and (self.spec, self.N, self.c) == (other.spec, other.N, other.c)
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"LocalStandardForm(c={self.c.value}, terms={ {i: v for i, v in self.terms.items()} })"

    def to_json(self):
        return {
            "field": self.spec.to_json(),
            "precision": self.N,
            "c": self.c.digits,
            "terms": {str(i): v.to_json() for i, v in self.terms.items()},
        }

    @classmethod
    def from_json(cls, obj, spec=None, N=None):
        if not isinstance(obj, dict):
            raise InputError("standard form must be an object")
        spec = spec or FieldSpec.from_json(obj.get("field"))
        N = N or obj.get("precision")
        if not isinstance(N, int) or N < 1:
            raise InputError("precision must be a positive integer", "/precision")
        c = _digits_to_zp(spec.p, N, obj.get("c", 0), "/c")
        terms = {}
        raw = obj.get("terms", {})
        if not isinstance(raw, dict):
            raise InputError("terms must be an object", "/terms")
        for k, v in raw.items():
            try:
                i = int(k)
            except ValueError:
                raise InputError(f"term key {k!r} is not an integer", f"/terms/{k}") from None
            try:
                terms[i] = _unram_literal(spec, v, N)
            except InputError as exc:
                raise InputError(str(exc), f"/terms/{k}" + exc.pointer) from exc
        return cls(spec, N, c, terms)


def _digits_to_zp(p, N, obj, pointer):
    if isinstance(obj, int) and not isinstance(obj, bool):
        return ZpApprox(p, N, obj)
    if isinstance(obj, list) and all(isinstance(d, int) and 0 <= d < p for d in obj) and len(obj) <= N:
        return ZpApprox(p, N, sum(d * p**j for j, d in enumerate(obj)))
    raise InputError(f"bad Z_p literal {obj!r}", pointer)


def _unram_literal(spec, v, N):
    if isinstance(v, list) and len(v) > N:
        raise InputError(f"{len(v)} digits given at precision {N}")
    u = UnramElem.from_json(spec, v, N)
    return u if u.N == N else UnramElem(spec, N, u.c)


@dataclass
class GlobalStandardForm:
    spec: FieldSpec
    N: int
    c: ZpApprox
    places: dict = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.c, ZpApprox):
            self.c = ZpApprox(self.spec.p, self.N, int(self.c))
        clean = {}
        for x, terms in self.places.items():
            loc = LocalStandardForm(self.spec, self.N, 0, terms).terms
            if loc:
                clean[x] = loc
        self.places = clean

    @property
    def alpha(self):
        return choose_alpha(self.spec)

    def local(self, place) -> LocalStandardForm:
        return LocalStandardForm(self.spec, self.N, 0, self.places.get(place, {}))

    def __eq__(self, other):
        return (
            isinstance(other, GlobalStandardForm)
            and (self.spec, self.N, self.c) == (other.spec, other.N, other.c)
            and self.places == other.places
        )

    def __repr__(self):
        return f"GlobalStandardForm(c={self.c.value}, places={self.places})"

    def to_json(self):
        return {
            "field": self.spec.to_json(),
            "precision": self.N,
            "c": self.c.digits,
            "places": [
                {"at": INF if x == INF else x.to_json(), "coeffs": {str(i): v.to_json() for i, v in t.items()}}
                for x, t in sorted(self.places.items(), key=lambda kv: -1 if kv[0] == INF else kv[0].index)
            ],
        }


# --------------------------------------------------------------------------------
# single coordinate


@dataclass
class ASReduction:
    """f = m*alpha + sum terms[i] T^-i + (witness^p - witness)."""

    m: int
    terms: dict
    witness: LaurentSeries


def weighted_pole_order(x: WittVec) -> int:
    """max_j ceil(pole order of x_j / p^j), the pole order relevant to x as a Witt vector."""
    return max((-(-c.pole_order() // x.p**j) for j, c in enumerate(x.coords)), default=0)


def default_budget(x: WittVec) -> int:
    return weighted_pole_order(x) * x.p ** (x.N - 1) + 16


def reduce_as(f: LaurentSeries, budget: int | None = None) -> ASReduction:
    """Artin-Schreier reduction of a single series over F_q."""
    spec, p = f.spec, f.spec.p
    if f.prec is not None and f.prec <= 0:
        raise PrecisionExhausted(f"constant coefficient unknown (series known below T^{f.prec})")
    terms = {}
    wit_terms = {}
    m = 0
    for e, t in f.terms().items():
        a = FFElem(spec, t)
        if e < 0:
            i, k = split_p(-e, p)
            b = a.inv_frobenius(k)
            terms[i] = terms.get(i, FFElem.zero(spec)) + b
            for l in range(1, k + 1):
                ex = -i * p ** (k - l)
                wit_terms[ex] = (FFElem(spec, wit_terms[ex]) if ex in wit_terms else FFElem.zero(spec)) + a.inv_frobenius(l)
                wit_terms[ex] = wit_terms[ex].c
        elif e == 0:
            alpha = choose_alpha(spec)
            m = a.trace() * pow(alpha.trace(), -1, p) % p
            t0 = solve_artin_schreier(a - alpha * m)
            if t0:
                wit_terms[0] = t0.c
    terms = {i: v for i, v in terms.items() if v}
    witness = LaurentSeries.from_terms(spec, 1, wit_terms)
    pos = f.truncate(f.prec) if f.prec is not None else f
    pos = LaurentSeries(spec, 1, 1, pos.window(1, pos.end()) if pos.end() > 1 else [], f.prec)
    if not pos.is_zero() or f.prec is not None:
        limit = f.prec if f.prec is not None else budget
        if limit is None:
            raise PrecisionExhausted("exact series with a positive part needs a witness budget")
        limit = max(limit, 1)
        acc = LaurentSeries.zero(spec, 1, limit)
        cur = pos.truncate(limit)
        while not cur.is_zero():
            acc = acc - cur
            cur = cur.frobenius().truncate(limit)
        witness = witness + acc
    return ASReduction(m, terms, witness)


# --------------------------------------------------------------------------------
# local reduction


def _teich_sum_ghost_series(spec, M, monomials, n, p):
    R = galois_ring(spec, M)
    out = []
    for i in range(n):
        q = p**i
        terms = {}
        for e, a in monomials:
            terms[e * q] = R.pow(a, q)
        out.append(LaurentSeries.from_terms(spec, M, terms))
    return out


class _Folder:
    def __init__(self, spec, N):
        self.spec, self.N, self.p = spec, N, spec.p
        self.c = 0
        self.trb_inv = pow(UnramElem.teichmueller(choose_alpha(spec), N).trace().value, -1, self.p**N)

    def fold(self, j, e, a: FFElem, into: dict):
        p, N = self.p, self.N
        if e > 0:
            return
        if e == 0:
            tr = UnramElem.teichmueller(a, N).trace().value
            self.c = (self.c + p**j * tr * self.trb_inv) % p**N
            return
        i, k = split_p(-e, p)
        add = UnramElem.teichmueller(a.inv_frobenius(k), N) * p**j
        into[i] = into[i] + add if i in into else add


def _subtract_ghost(r: WittVec, sub_ghost) -> WittVec:
    return WittVec.from_ghost([a - b for a, b in zip(r.ghost(), sub_ghost)], r.ring)


def reduce_local(x: WittVec) -> LocalStandardForm:
    """Standard form of x in W_N(k((T))) modulo (F-1)W."""
    spec, N, p = x.ring.spec, x.N, x.p
    folder = _Folder(spec, N)
    terms = {}
    r = x
    for j in range(N):
        y = r.coords[0]
        try:
            if y.prec is not None and y.prec <= 0:
                raise PrecisionExhausted(f"series known below T^{y.prec}")
            monos = [(e, t) for e, t in y.terms().items() if e <= 0]
        except PrecisionExhausted as exc:
            raise PrecisionExhausted(f"coordinate {j}: constant coefficient unknown ({exc})") from exc
        for e, t in monos:
            folder.fold(j, e, FFElem(spec, t), terms)
        if j == N - 1:
            break
        n = r.N
        sub = _teich_sum_ghost_series(spec, n, monos, n, p)
        r = _subtract_ghost(r, sub)
        lead = r.coords[0]
        if not lead.is_zero() and lead.valuation() <= 0:
            raise AssertionError(f"stage {j}: leading coordinate not cleared ({lead!r})")
        r = WittVec(r.coords[1:], r.ring)
    return LocalStandardForm(spec, N, ZpApprox(p, N, folder.c), terms)


def eval_form(sf: LocalStandardForm) -> WittVec:
    """c [alpha] + sum c_i [T^-i] as a Witt vector over k((T))."""
    spec, N = sf.spec, sf.N
    ring = CharPRing(spec, "series")
    beta = UnramElem.teichmueller(sf.alpha, N) * sf.c.value
    const = from_unram(beta)
    acc = WittVec([LaurentSeries.monomial(spec, 1, w.c, 0) for w in const.coords], ring)
    p = spec.p
    for i, ci in sf.terms.items():
        w = from_unram(ci).coords
        acc = acc + WittVec([LaurentSeries.monomial(spec, 1, w[j].c, -i * p**j) for j in range(N)], ring)
    return acc


def in_wp_image(x: WittVec, budget: int | None = None):
    """(True, w) with x = F(w) - w to working precision, or (False, None)."""
    budget = default_budget(x) if budget is None else budget
    N = x.N
    ring = CharPRing(x.ring.spec, "series", budget)
    r = WittVec(x.coords, ring)
    wit = WittVec.zero(ring, N)
    for j in range(N):
        y = r.coords[j]
        try:
            red = reduce_as(y, budget)
        except PrecisionExhausted as exc:
            raise PrecisionExhausted(f"coordinate {j}: {exc}") from exc
        if red.m % x.p or red.terms:
            return False, None
        s = red.witness
        if s.prec is None:
            s = s.truncate(budget)
        vs = WittVec.teichmueller(s, N, ring)
        for _ in range(j):
            vs = vs.V()
        r = r - vs.wp()
        wit = wit + vs
        lead = r.coords[j]
        if not lead.is_zero():
            if lead.prec is not None and lead.valuation() >= lead.prec:
                continue
            raise AssertionError(f"stage {j}: coordinate not cleared ({lead!r})")
    return True, wit


# --------------------------------------------------------------------------------
# global reduction over k(X)


def _place_key(x):
    return -1 if x == INF else x.index


def reduce_global_p1(a: WittVec, N: int | None = None) -> GlobalStandardForm:
    """Standard form of a in W_N(k(X)) with poles only at rational places."""
    spec, p = a.ring.spec, a.p
    N = N or a.N
    if N < a.N:
        a = a.truncate(N)
    elif N > a.N:
        raise InputError(f"precision {N} exceeds the vector length {a.N}")
    for k, coord in enumerate(a.coords):
        try:
            coord.places()
        except UnsupportedDenominator as exc:
            raise UnsupportedDenominator(f"coordinate {k}: {exc}") from exc
    folder = _Folder(spec, N)
    places = {}
    r = a
    for j in range(N):
        y = r.coords[0]
        const, pf = y.partial_fractions()
        monos = []
        if const:
            folder.fold(j, 0, const, {})
            monos.append((None, 0, const))
        for x in sorted(pf, key=_place_key):
            bucket = places.setdefault(x, {})
            for e, coeff in sorted(pf[x].items()):
                folder.fold(j, -e, coeff, bucket)
                monos.append((x, e, coeff))
        if j == N - 1:
            break
        n = r.N
        sub = []
        for i in range(n):
            q = p**i
            terms = []
            for x, e, coeff in monos:
                if x is None:
                    R = galois_ring(spec, n)
                    terms.append(LiftedRatFunc.const(spec, n, R.pow(R.teichmueller(coeff.c), q)))
                else:
                    terms.append(LiftedRatFunc.teich_monomial(spec, n, x, coeff, e) ** q)
            acc = LiftedRatFunc(spec, n, [], {})
            for t in terms:
                acc = acc + t
            sub.append(acc)
        new = _subtract_ghost(r, sub)
        if not new.coords[0].is_zero():
            raise AssertionError(f"stage {j}: leading coordinate not cleared")
        r = WittVec(new.coords[1:], r.ring)
    return GlobalStandardForm(spec, N, ZpApprox(p, N, folder.c), places)


def eval_global_form(gf: GlobalStandardForm) -> WittVec:
    spec, N, p = gf.spec, gf.N, gf.spec.p
    ring = CharPRing(spec, "ratfunc")
    beta = from_unram(UnramElem.teichmueller(gf.alpha, N) * gf.c.value)
    acc = WittVec([RatFunc.const(spec, w) for w in beta.coords], ring)
    for x, terms in gf.places.items():
        for i, ci in terms.items():
            w = from_unram(ci).coords
            acc = acc + WittVec([RatFunc.monomial_at(spec, x, w[j], i * p**j) for j in range(N)], ring)
    return acc


def localize(a: WittVec, place, prec: int) -> WittVec:
    """Coordinatewise expansion of a rational Witt vector at a place."""
    ring = CharPRing(a.ring.spec, "series")
    return WittVec([c.expand_at(place, prec) for c in a.coords], ring)
