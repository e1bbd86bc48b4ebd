import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F2, F3, F4, F9, F25, SMALL_FIELDS, ff, ff_nonzero
from zptower.algebra import (
    FFElem,
    FieldSpec,
    UnramElem,
    ZpApprox,
    choose_alpha,
    elements,
    find_embedding,
    solve_artin_schreier,
)
from zptower.errors import InputError, NotIrreducible


def w4():
    return FFElem.gen(F4)


class TestFieldSpec:
    def test_standard_moduli_are_monic_and_irreducible(self):
        for spec in SMALL_FIELDS:
            assert spec.modulus[-1] == 1 and len(spec.modulus) == spec.f + 1

    def test_f4_modulus(self):
        assert F4.modulus == (1, 1, 1)

    def test_reducible_modulus_rejected(self):
        with pytest.raises(NotIrreducible):
            FieldSpec(2, 2, (1, 0, 1))

    def test_bad_prime(self):
        with pytest.raises(InputError):
            FieldSpec(4, 1, (0, 1))

    def test_json_roundtrip(self):
        for spec in SMALL_FIELDS:
            assert FieldSpec.from_json(spec.to_json()) == spec


class TestFFElem:
    def test_w_squared_in_f4(self):
        w = w4()
        assert (w * w).c == (1, 1)

    def test_trace_of_w(self):
        assert w4().trace() == 1
        assert (w4() + w4() ** 2) == FFElem.one(F4)

    def test_frobenius_order_f_is_identity(self):
        for spec in SMALL_FIELDS:
            for a in elements(spec):
                b = a
                for _ in range(spec.f):
                    b = b.frobenius()
                assert b == a

    def test_inv_frobenius(self):
        for a in elements(F9):
            assert a.inv_frobenius().frobenius() == a

    @pytest.mark.parametrize("spec", SMALL_FIELDS, ids=repr)
    def test_field_axioms_exhaustive_inverses(self, spec):
        one = FFElem.one(spec)
        for a in elements(spec):
            if a:
                assert a * a.inv() == one
            assert a + (-a) == FFElem.zero(spec)

    @given(st.data())
    def test_field_axioms_random(self, data):
        spec = data.draw(st.sampled_from(SMALL_FIELDS))
        a, b, c = (data.draw(ff(spec)) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a

    @given(st.data())
    def test_trace_linear_and_frobenius_invariant(self, data):
        spec = data.draw(st.sampled_from(SMALL_FIELDS))
        a, b = data.draw(ff(spec)), data.draw(ff(spec))
        k = data.draw(st.integers(0, spec.p - 1))
        assert (a + b * k).trace() == (a.trace() + k * b.trace()) % spec.p
        assert a.frobenius().trace() == a.trace()

    def test_trace_surjective(self):
        for spec in SMALL_FIELDS:
            assert {a.trace() for a in elements(spec)} == set(range(spec.p))

    def test_json_roundtrip(self):
        for spec in (F3, F9):
            for a in elements(spec):
                assert FFElem.from_json(spec, a.to_json()) == a


class TestChooseAlpha:
    def test_prime_fields(self):
        assert choose_alpha(F2) == FFElem.one(F2)
        assert choose_alpha(F3) == FFElem.one(F3)

    def test_f4_is_w(self):
        assert choose_alpha(F4) == w4()

    def test_first_with_nonzero_trace(self):
        for spec in SMALL_FIELDS:
            alpha = choose_alpha(spec)
            assert alpha.trace() != 0
            for a in elements(spec):
                if a == alpha:
                    break
                assert a.trace() == 0


class TestArtinSchreier:
    def test_solves_trace_zero(self):
        for spec in (F4, F9, F25):
            for b in elements(spec):
                if b.trace() == 0:
                    x = solve_artin_schreier(b)
                    assert x ** spec.p - x == b


class TestEmbedding:
    def test_f2_into_f4(self):
        emb = find_embedding(F2, F4)
        assert emb(FFElem.one(F2)) == FFElem.one(F4)

    def test_embedding_is_a_homomorphism(self):
        F81 = FieldSpec.standard(3, 4)
        emb = find_embedding(F9, F81)
        for a in elements(F9):
            for b in list(elements(F9))[:4]:
                assert emb(a * b) == emb(a) * emb(b)
                assert emb(a + b) == emb(a) + emb(b)


class TestZpApprox:
    def test_digits_and_valuation(self):
        x = ZpApprox(3, 4, 18)
        assert x.digits == [0, 0, 2, 0]
        assert x.valuation() == 2

    def test_zero_valuation_is_precision(self):
        assert ZpApprox(2, 5, 0).valuation() >= 5


class TestUnramElem:
    def test_teichmueller_one(self):
        t = UnramElem.teichmueller(FFElem.one(F4), 3)
        assert [d for d in t.digits()] == [FFElem.one(F4), FFElem.zero(F4), FFElem.zero(F4)]

    def test_trace_of_teich_w(self):
        t = UnramElem.teichmueller(w4(), 2)
        assert t.trace().value == 3

    def test_valuation_of_p_multiple(self):
        x = UnramElem.teichmueller(w4(), 4)
        assert x.valuation() == 0
        assert (x * 2).valuation() == 1
        assert (x * 4).valuation() == 2

    @given(st.integers(0, 3**4 - 1), st.integers(0, 3**4 - 1))
    def test_agrees_with_integers(self, m, k):
        a, b = UnramElem.from_integer(F9, 4, m), UnramElem.from_integer(F9, 4, k)
        assert a + b == UnramElem.from_integer(F9, 4, m + k)
        assert a * b == UnramElem.from_integer(F9, 4, m * k)

    @given(ff(F9), ff(F9))
    def test_teichmueller_multiplicative(self, a, b):
        assert UnramElem.teichmueller(a, 3) * UnramElem.teichmueller(b, 3) == UnramElem.teichmueller(a * b, 3)

    @given(ff(F25))
    def test_frobenius_on_teichmueller(self, a):
        assert UnramElem.teichmueller(a, 2).frobenius() == UnramElem.teichmueller(a**5, 2)

    @given(ff_nonzero(F9))
    def test_inverse(self, a):
        x = UnramElem.teichmueller(a, 3) + 3
        assert x * x.inv() == UnramElem.one(F9, 3)

    def test_digits_roundtrip(self):
        for a in elements(F9):
            x = UnramElem.teichmueller(a, 3) * 7 + 2
            assert UnramElem.from_digits(F9, x.digits()) == x
            assert UnramElem.from_json(F9, x.to_json(), 3) == x
