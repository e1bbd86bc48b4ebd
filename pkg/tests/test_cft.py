import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F2, F3, F4, F5, F9, F25
from zptower.algebra import FFElem, UnramElem, ZpApprox
from zptower.asw import LocalStandardForm, eval_form, reduce_local
from zptower.cft import (
    LocalUnit,
    ValuationProfile,
    classical_symbol,
    conductor_exponent,
    conductor_via_symbol,
    ramification_break,
    symbol_at_T,
    symbol_residue,
    symbol_sum,
)
from zptower.errors import BoundTooSmall, EmptyProfile, WindowTooSmall
from zptower.oracle import rand_form, rand_local_unit, rand_one_unit, rand_witt_series
from zptower.series import LaurentSeries, UnitFactorization


def unit(spec, N, coeffs, e=0):
    u = LaurentSeries(spec, 1, 0, [[c] + [0] * (spec.f - 1) for c in coeffs], len(coeffs))
    return LocalUnit(ZpApprox(spec.p, N, e), u)


def form(spec, N, terms, c=0):
    return LocalStandardForm(spec, N, ZpApprox(spec.p, N, c), terms)


def both(sf, y, n):
    r = symbol_residue(sf, y, n)
    s = symbol_sum(sf, y.factorization(sf.pole_order(), n - 1), n)
    return r, s


class TestSymbolExamples:
    def test_zero_form(self, rng):
        sf = form(F3, 2, {})
        for _ in range(5):
            y = rand_local_unit(rng, F3, 2, 4)
            assert both(sf, y, 2) == (0, 0)

    def test_trivial_unit(self, rng):
        y = unit(F3, 2, [1, 0, 0, 0, 0, 0, 0, 0, 0, 0])
        for _ in range(5):
            sf = rand_form(rng, F3, 2, 3)
            assert both(sf, y, 2) == (0, 0)

    def test_p3_one_minus_T(self):
        sf = form(F3, 1, {1: 1})
        y = unit(F3, 1, [1, 2, 0])
        assert both(sf, y, 1) == (2, 2)
        assert classical_symbol(sf, y) == 2

    def test_p3_constant_against_T(self):
        sf = form(F3, 1, {}, c=1)
        y = unit(F3, 1, [1], e=1)
        assert both(sf, y, 1) == (1, 1)
        assert symbol_at_T(sf, 1) == 1

    def test_weight_p_for_second_layer(self):
        # factor (1, 1): y = (1 - T)^p, so the pairing with [T^-1] is -p Tr(1)
        sf = form(F3, 2, {1: 1})
        fac = UnitFactorization(ZpApprox(3, 2, 0), FFElem.one(F3), {(1, 1): FFElem.one(F3)}, 3)
        assert symbol_sum(sf, fac, 2) == (-3) % 9

    def test_divisor_support(self):
        # l = 2 does not divide i = 3: no contribution
        sf = form(F5, 1, {3: 1})
        fac = UnitFactorization(ZpApprox(5, 1, 0), FFElem.one(F5), {(2, 0): FFElem.one(F5)}, 3)
        assert symbol_sum(sf, fac, 1) == 0

    def test_window_too_small(self):
        sf = form(F2, 2, {3: 1})
        fac = UnitFactorization(ZpApprox(2, 2, 0), FFElem.one(F2), {}, 3)
        with pytest.raises(WindowTooSmall):
            symbol_sum(sf, fac, 2)


CASES = [(p, f, n) for p, f in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (5, 2)] for n in (1, 2, 3)]


class TestSymbolProperties:
    @pytest.mark.parametrize("p,f,n", CASES)
    def test_formulas_agree(self, p, f, n, rng):
        spec = {(2, 1): F2, (2, 2): F4, (3, 1): F3, (3, 2): F9, (5, 1): F5, (5, 2): F25}[(p, f)]
        for _ in range(10):
            sf = rand_form(rng, spec, n, 5)
            y = rand_local_unit(rng, spec, n, sf.pole_order() * p ** (n - 1) + 1)
            r, s = both(sf, y, n)
            assert r == s
            if n == 1:
                assert r == classical_symbol(sf, y)

    @given(st.integers(0, 10**6))
    def test_bilinear_in_unit(self, seed):
        rng = random.Random(seed)
        spec = rng.choice([F2, F3, F4])
        n = rng.randint(1, 3)
        sf = rand_form(rng, spec, n, 4)
        L = sf.pole_order() * spec.p ** (n - 1) + 1
        y1, y2 = rand_local_unit(rng, spec, n, L), rand_local_unit(rng, spec, n, L)
        y12 = LocalUnit(y1.e + y2.e, y1.one_unit * y2.one_unit)
        assert symbol_residue(sf, y12, n) == (symbol_residue(sf, y1, n) + symbol_residue(sf, y2, n)) % spec.p**n

    @given(st.integers(0, 10**6))
    def test_bilinear_in_form(self, seed):
        rng = random.Random(seed)
        spec = rng.choice([F2, F3])
        n = rng.randint(1, 2)
        s1, s2 = rand_form(rng, spec, n, 4), rand_form(rng, spec, n, 4)
        s12 = reduce_local(eval_form(s1) + eval_form(s2))
        L = max(s1.pole_order(), s2.pole_order(), 1) * spec.p ** (n - 1) + 1
        y = rand_local_unit(rng, spec, n, L)
        assert symbol_residue(s12, y, n) == (symbol_residue(s1, y, n) + symbol_residue(s2, y, n)) % spec.p**n

    def test_wp_invariance(self, rng):
        for _ in range(15):
            spec = rng.choice([F2, F3])
            n = 2
            sf = rand_form(rng, spec, n, 4)
            w = rand_witt_series(rng, spec, n, 3)
            sf2 = reduce_local(eval_form(sf) + w.wp())
            y = rand_local_unit(rng, spec, n, 4 * spec.p + 1)
            assert symbol_residue(sf2, y, n) == symbol_residue(sf, y, n)


class TestConductor:
    def test_empty(self):
        vp = ValuationProfile(2, None, {})
        assert [conductor_exponent(vp, n) for n in (1, 2, 3)] == [0, 0, 0]

    def test_unit_root(self):
        for p in (2, 3, 5):
            for d in (1, 2, 4, 7):
                if d % p:
                    vp = ValuationProfile(p, None, {d: 0})
                    for n in range(1, 6):
                        assert conductor_exponent(vp, n) == 1 + d * p ** (n - 1)

    def test_mixed_p2(self):
        vp = ValuationProfile(2, None, {1: 1, 3: 0})
        assert [conductor_exponent(vp, n) for n in (1, 2, 3)] == [4, 7, 13]
        sf = form(F2, 3, {1: 2, 3: 1})
        assert [conductor_via_symbol(sf, n) for n in (1, 2, 3)] == [4, 7, 13]

    @pytest.mark.parametrize("p", [2, 3])
    def test_via_symbol_on_unit_root(self, p):
        spec = F2 if p == 2 else F3
        for d in range(1, 6):
            if d % p == 0:
                continue
            for n in (1, 2, 3):
                sf = form(spec, n, {d: 1})
                assert conductor_via_symbol(sf, n) == 1 + d * p ** (n - 1)

    def test_zero_and_deep(self):
        assert conductor_via_symbol(form(F3, 2, {}), 2) == 0
        sf = form(F3, 3, {1: 9, 2: 9})
        assert conductor_via_symbol(sf, 2) == 0
        assert conductor_exponent(ValuationProfile.of(sf), 2) == 0

    def test_bound_too_small(self):
        with pytest.raises(BoundTooSmall):
            conductor_via_symbol(form(F2, 2, {3: 1}), 2, i_bound=5)

    def test_random_agreement_over_f4(self, rng):
        for _ in range(5):
            n = rng.randint(1, 2)
            sf = rand_form(rng, F4, n, 5)
            assert conductor_via_symbol(sf, n) == conductor_exponent(ValuationProfile.of(sf), n)


class TestBreaks:
    def test_single_term(self):
        for p in (2, 3):
            vp = ValuationProfile(p, None, {1: 0})
            assert ramification_break(vp, 0).raw == 0
            assert ramification_break(vp, p).raw == 1
            assert ramification_break(vp, p * p).raw == 2

    def test_mixed_p2(self):
        vp = ValuationProfile(2, None, {1: 1, 3: 0})
        assert ramification_break(vp, 12).raw == 2
        b1 = ramification_break(vp, 1)
        assert (b1.raw, b1.clamped) == (-1, 0)

    def test_empty(self):
        with pytest.raises(EmptyProfile):
            ramification_break(ValuationProfile(2, None, {}), 3)

    def test_mixed_term_clamping(self):
        # the large-index term drives the bare formula below the first conductor jump
        vp = ValuationProfile(2, None, {7: 1, 1: 0})
        b = ramification_break(vp, 3)
        assert (b.raw, b.clamped, b.termwise) == (0, 0, 1)
        assert conductor_exponent(vp, 1) == 2

    @given(st.integers(0, 10**6))
    def test_termwise_break_from_conductors(self, seed):
        # H^r lies in p^n Z_p exactly when u_n <= r
        rng = random.Random(seed)
        p = rng.choice([2, 3, 5])
        vals = {i: rng.randint(0, 3) for i in range(1, 12) if i % p and rng.random() < 0.4} or {1: 0}
        vp = ValuationProfile(p, None, vals)
        for r in range(0, 60):
            b = ramification_break(vp, r)
            levels = [n for n in range(1, 12) if conductor_exponent(vp, n) <= r]
            assert b.termwise == (max(levels) if levels else 0) or r == 0
            assert b.raw <= b.termwise and b.clamped == max(b.raw, 0)
