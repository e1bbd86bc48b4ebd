"""Seeded random generators and self-test suites.

Every suite compares two independent computations and reports how many
random cases it ran; the CLI ``oracle`` command runs them all.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import FFElem, FieldSpec, UnramElem, ZpApprox, elements
from .asw import LocalStandardForm, eval_form, in_wp_image, reduce_local
from .cft import (
    LocalUnit,
    ValuationProfile,
    classical_symbol,
    conductor_exponent,
    conductor_via_symbol,
    symbol_residue,
    symbol_sum,
)
from .ratfunc import RatFunc
from .series import LaurentSeries
from .tower import (
    PlaceProfile,
    RamificationProfile,
    frobenius_at,
    genus_sequence,
    profile_from_datum,
    stability_classify,
    unit_root_closed_form,
    unit_root_family,
)
from .witt import CharPRing, WittVec, universal_polys


def field(p, f):
    return FieldSpec.prime(p) if f == 1 else FieldSpec.standard(p, f)


def rand_ff(rng, spec, nonzero=False):
    lo = 1 if nonzero else 0
    return FFElem.from_int(spec, rng.randrange(lo, spec.q))


def rand_laurent(rng, spec, pole, top=3, density=0.6):
    """Laurent polynomial with exponents in [-pole, top]."""
    terms = {e: rand_ff(rng, spec).c for e in range(-pole, top + 1) if rng.random() < density}
    return LaurentSeries.from_terms(spec, 1, terms)


def rand_witt_series(rng, spec, N, pole, top=3):
    ring = CharPRing(spec, "series")
    return WittVec([rand_laurent(rng, spec, rng.randint(0, pole), top) for _ in range(N)], ring)


def rand_witt_field(rng, spec, N):
    return WittVec([rand_ff(rng, spec) for _ in range(N)], CharPRing(spec, "field"))


def rand_unram(rng, spec, N):
    return UnramElem(spec, N, [rng.randrange(spec.p**N) for _ in range(spec.f)])


def rand_form(rng, spec, N, pole, density=0.5):
    p = spec.p
    terms = {i: rand_unram(rng, spec, N) for i in range(1, pole + 1) if i % p and rng.random() < density}
    return LocalStandardForm(spec, N, ZpApprox(p, N, rng.randrange(p**N)), terms)


def rand_one_unit(rng, spec, length):
    coeffs = [FFElem.one(spec).c] + [rand_ff(rng, spec).c for _ in range(length)]
    return LaurentSeries(spec, 1, 0, coeffs, length + 1)


def rand_local_unit(rng, spec, N, length):
    return LocalUnit(ZpApprox(spec.p, N, rng.randrange(spec.p**N)), rand_one_unit(rng, spec, length))


def rand_ratfunc(rng, spec, terms=3, max_pole=3, places=None):
    """Sum of c X^e and c (X - x)^-e with x in ``places`` (default: all of k)."""
    X = RatFunc.X(spec)
    pts = list(elements(spec)) if places is None else places
    f = RatFunc.zero(spec)
    for _ in range(terms):
        c = rand_ff(rng, spec)
        e = rng.randint(0, max_pole)
        if rng.random() < 0.4 or not pts:
            f = f + c * X**e
        else:
            f = f + c * (X - rng.choice(pts)) ** (-e)
    return f


def rand_witt_ratfunc(rng, spec, N, **kw):
    return WittVec([rand_ratfunc(rng, spec, **kw) for _ in range(N)], CharPRing(spec, "ratfunc"))


def rand_finite_profile(rng, p, max_places=3, max_i=8, max_v=3, g0_max=2, nu_max=None):
    places = []
    for k in range(rng.randint(1, max_places)):
        vals = {}
        for i in range(1, max_i + 1):
            if i % p and rng.random() < 0.4:
                vals[i] = rng.randint(0, max_v)
        if not vals:
            vals[1] = rng.randint(0, max_v)
        places.append(PlaceProfile(f"P{k}", rng.randint(1, 2), ValuationProfile(p, None, vals)))
    if nu_max is not None:
        shift = min(min(pl.data.vals.values()) for pl in places)
        target = rng.randint(0, nu_max)
        for pl in places:
            pl.data = ValuationProfile(p, None, {i: v - shift + target for i, v in pl.data.vals.items()})
    return RamificationProfile(p, rng.randint(0, g0_max), 0, places)


# --------------------------------------------------------------------------------
# suites


@dataclass
class SuiteResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""

    def to_json(self):
        return {"suite": self.name, "passed": self.passed, "cases": self.cases, "detail": self.detail}


def _suite(name, fn, rng, scale):
    try:
        cases = fn(rng, scale)
        return SuiteResult(name, True, cases)
    except AssertionError as exc:
        return SuiteResult(name, False, 0, str(exc) or "assertion failed")


def suite_witt(rng, scale):
    cases = 0
    for p, f, N in [(2, 1, 3), (2, 2, 2), (3, 1, 3), (3, 2, 2)]:
        spec = field(p, f)
        U = universal_polys(p, N)
        for _ in range(scale):
            a, b = rand_witt_field(rng, spec, N), rand_witt_field(rng, spec, N)
            assert a + b == U.add(a, b), f"sum mismatch over {spec}"
            assert a * b == U.mul(a, b), f"product mismatch over {spec}"
            cases += 1
    return cases


def suite_asw(rng, scale):
    cases = 0
    for p, f, N in [(2, 1, 3), (3, 1, 2), (2, 2, 2)]:
        spec = field(p, f)
        for _ in range(scale):
            x = rand_witt_series(rng, spec, N, 6)
            sf = reduce_local(x)
            ok, _ = in_wp_image(x - eval_form(sf))
            assert ok, f"remainder not in the image over {spec}"
            assert reduce_local(eval_form(sf)) == sf, "reduction is not idempotent"
            cases += 1
    return cases


def suite_symbol(rng, scale):
    cases = 0
    for p, f, n in [(2, 1, 2), (3, 2, 2), (5, 1, 1), (2, 2, 3)]:
        spec = field(p, f)
        for _ in range(scale):
            sf = rand_form(rng, spec, n, 6)
            I = sf.pole_order()
            y = rand_local_unit(rng, spec, n, I * p ** (n - 1) + 1)
            r = symbol_residue(sf, y, n)
            assert r == symbol_sum(sf, y.factorization(I, n - 1), n), "residue and divisor-sum formulas differ"
            if n == 1:
                assert r == classical_symbol(sf, y), "n = 1 pairing differs from the classical formula"
            cases += 1
    return cases


def suite_conductor(rng, scale):
    cases = 0
    for p, f in [(2, 1), (3, 1), (2, 2)]:
        spec = field(p, f)
        for _ in range(max(1, scale // 4)):
            n = rng.randint(1, 3)
            sf = rand_form(rng, spec, n, 6)
            vp = ValuationProfile.of(sf)
            assert conductor_exponent(vp, n) == conductor_via_symbol(sf, n), "conductor mismatch"
            cases += 1
    return cases


def suite_genus(rng, scale):
    cases = 0
    for p, d in [(2, 1), (3, 1), (2, 3), (5, 2)]:
        prof = profile_from_datum(unit_root_family(field(p, 1), {d: 1}, 6))
        rep = genus_sequence(prof, 6)
        for lv in rep.levels:
            assert 2 * lv.g - 2 == unit_root_closed_form(p, d, lv.n), f"unit-root closed form fails at p={p}, d={d}"
        cases += 1
    for _ in range(scale):
        prof = rand_finite_profile(rng, rng.choice([2, 3]))
        genus_sequence(prof, 6)
        v = stability_classify(prof)
        assert v.kind == "stable"
        cases += 1
    return cases


def suite_frobenius(rng, scale):
    cases = 0
    s2, s4 = field(2, 1), field(2, 2)
    X = RatFunc.X(s2)
    a = WittVec.teichmueller(X, 2)
    assert frobenius_at(a, FFElem.one(s2), 2) == 3
    assert frobenius_at(a, FFElem.gen(s4), 2) == 1
    for _ in range(scale):
        spec = field(rng.choice([2, 3]), 1)
        big = field(spec.p, rng.choice([1, 2]))
        N = 2
        z = rand_ff(rng, big)
        a = rand_witt_ratfunc(rng, spec, N, places=[])
        w = rand_witt_ratfunc(rng, spec, N, places=[])
        assert frobenius_at(a + w.wp(), z, N) == frobenius_at(a, z, N), "Frobenius depends on the coset representative"
        cases += 1
    return cases


SUITES = {
    "witt": suite_witt,
    "asw": suite_asw,
    "symbol": suite_symbol,
    "conductor": suite_conductor,
    "genus": suite_genus,
    "frobenius": suite_frobenius,
}


def run_suites(seed=0, scale=10, only=None):
    out = []
    for name, fn in SUITES.items():
        if only and name not in only:
            continue
        rng = random.Random(f"{seed}:{name}")
        out.append(_suite(name, fn, rng, scale))
    return out
