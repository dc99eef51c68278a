import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from adequality import numfield as nf
from adequality.errors import (DivisionByZero, ExactModeUnsupported, InfiniteValue, InvalidPrecision,
                               ModeMismatch, NegativeSqrtArgument, PrecisionExhausted)
from adequality.numfield import Ordering, Series

from strategies import TRUNC, adequal_pairs, exact_series, finite_series, nonzero_series, rationals

E = nf.epsilon(TRUNC)


def S(terms, trunc=TRUNC, **kw):
    return Series(terms, trunc=trunc, **kw)


class TestConstruction:
    def test_zero_coefficients_dropped(self):
        assert S({0: 0, 1: 2}).terms == {1: Fraction(2)}

    def test_terms_beyond_trunc_make_series_inexact(self):
        s = S({1: 1, 9: 5}, trunc=8)
        assert s.terms == {1: 1} and not s.exact

    def test_float_rejected_in_exact_mode(self):
        with pytest.raises(ModeMismatch):
            S({0: 0.5})

    def test_approx_mode_drops_tiny_coefficients(self):
        s = S({0: 1.0, 1: 1e-15}, tol=1e-12)
        assert s.terms == {0: 1.0}

    def test_epsilon_needs_positive_trunc(self):
        with pytest.raises(InvalidPrecision):
            nf.epsilon(0)

    def test_immutable(self):
        with pytest.raises(AttributeError):
            E.trunc = 3

    def test_mixed_modes_refused(self):
        with pytest.raises(ModeMismatch):
            nf.add(E, nf.epsilon(TRUNC, tol=1e-12))


class TestArithmetic:
    def test_geometric_series(self):
        s = nf.div(E.constant(1), nf.sub(E.constant(1), nf.epsilon(3)))
        assert nf.format_series(s) == "1 + E + E^2 + E^3 + O(E^4)"

    def test_inverse_of_monomial_is_exact(self):
        s = nf.inv(S({2: 4}))
        assert s.terms == {-2: Fraction(1, 4)} and s.exact

    def test_inverse_of_zero(self):
        with pytest.raises(DivisionByZero):
            nf.inv(S({}))

    def test_inverse_truncation_order(self):
        assert nf.inv(S({1: 1, 2: 1}, trunc=6)).trunc == 4

    def test_mul_truncation_order(self):
        a = S({0: 1, 1: 1}, trunc=5, exact=False)
        b = S({2: 1}, trunc=4, exact=False)
        assert nf.mul(a, b).trunc == min(5 + 2, 4 + 0)

    def test_negative_power(self):
        assert nf.power(E, -2) == S({-2: 1})

    @given(exact_series(), exact_series(), exact_series())
    def test_ring_laws(self, a, b, c):
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == S({})

    @given(nonzero_series)
    def test_exact_monomial_inverse(self, a):
        if len(a.terms) == 1:
            assert nf.mul(a, nf.inv(a)) == a.constant(1)

    @given(nonzero_series)
    def test_inverse_is_inverse_up_to_its_order(self, a):
        prod = nf.mul(a, nf.inv(a))
        for k in range(1, prod.trunc + 1):
            assert prod.coeff(k) == 0
        assert prod.coeff(0) == 1

    @given(hs.dictionaries(hs.integers(0, 5), rationals, max_size=5),
           hs.dictionaries(hs.integers(0, 5), rationals, max_size=5))
    def test_mul_matches_convolution(self, p, q):
        # oracle: plain polynomial convolution of coefficient lists
        want = {}
        for i, x in p.items():
            for j, y in q.items():
                want[i + j] = want.get(i + j, 0) + x * y
        got = nf.mul(S(p, trunc=20), S(q, trunc=20))
        assert got.terms == {k: v for k, v in want.items() if v != 0}


class TestOrder:
    def test_e_is_positive_and_below_every_rational(self):
        assert E > 0
        for r in (Fraction(1, 10**9), Fraction(1)):
            assert E < E.constant(r)

    def test_negative_powers_are_infinite(self):
        assert nf.power(E, -1) > E.constant(10**12)

    def test_equality_of_truncated_values_is_undecidable(self):
        a = S({0: 1}, trunc=2, exact=False)
        with pytest.raises(PrecisionExhausted):
            nf.compare(a, a)

    @given(exact_series(), exact_series())
    def test_trichotomy(self, a, b):
        o = nf.compare(a, b)
        assert nf.compare(b, a) is {Ordering.LESS: Ordering.GREATER, Ordering.GREATER: Ordering.LESS,
                                    Ordering.EQUAL: Ordering.EQUAL}[o]
        assert (o is Ordering.EQUAL) == (a == b)

    @given(exact_series(), exact_series(), exact_series())
    def test_order_is_compatible_with_addition(self, a, b, c):
        if a < b:
            assert a + c < b + c


class TestRelations:
    def test_sine_is_adequal_and_infinitely_close_to_e(self):
        s = nf.taylor_apply("sin", nf.epsilon(5))
        assert nf.adequal(s, nf.epsilon(5))
        assert nf.approx(s, nf.epsilon(5))

    def test_e_and_2e(self):
        two_e = nf.mul(E.constant(2), E)
        assert nf.approx(E, two_e)
        assert not nf.adequal(E, two_e)

    def test_adequal_with_zero(self):
        assert nf.adequal(S({}), S({}))
        assert not nf.adequal(S({}), E)
        assert not nf.adequal(E, S({}))

    def test_adequal_refuses_uncertified_zero(self):
        with pytest.raises(PrecisionExhausted):
            nf.adequal(S({}, trunc=2, exact=False), E)

    def test_st_of_infinite_value(self):
        with pytest.raises(InfiniteValue):
            nf.st(nf.inv(E))

    def test_st_of_e(self):
        assert nf.st(E) == 0

    @given(adequal_pairs())
    def test_adequality_invariant_under_division_by_e(self, pq):
        p, q = pq
        assert nf.adequal(p, q) == nf.adequal(nf.div(p, E), nf.div(q, E))

    @given(adequal_pairs(), nonzero_series)
    def test_adequality_invariant_under_multiplication(self, pq, c):
        p, q = pq
        assert nf.adequal(p, q) == nf.adequal(nf.mul(p, c), nf.mul(q, c))

    @given(finite_series, finite_series)
    def test_st_is_a_ring_homomorphism(self, a, b):
        assert nf.st(a + b) == nf.st(a) + nf.st(b)
        assert nf.st(a * b) == nf.st(a) * nf.st(b)
        assert nf.st(-a) == -nf.st(a)

    @given(finite_series)
    def test_st_differs_by_an_infinitesimal(self, a):
        assert nf.approx(a, a.constant(nf.st(a)))


class TestTaylor:
    def test_sin_coefficients(self):
        assert nf.format_series(nf.taylor_apply("sin", nf.epsilon(5))) == "E - 1/6*E^3 + 1/120*E^5 + O(E^6)"

    def test_cos_coefficients(self):
        c = nf.taylor_apply("cos", nf.epsilon(4))
        assert c.terms == {0: 1, 2: Fraction(-1, 2), 4: Fraction(1, 24)}

    def test_sqrt_of_perfect_square(self):
        s = nf.taylor_apply("sqrt", nf.add(E.constant(4), nf.epsilon(3)))
        assert s.terms == {0: 2, 1: Fraction(1, 4), 2: Fraction(-1, 64), 3: Fraction(1, 512)}

    def test_sqrt_squared(self):
        x = nf.add(E.constant(Fraction(9, 4)), E)
        r = nf.taylor_apply("sqrt", x)
        sq = nf.mul(r, r)
        for k in range(0, sq.trunc + 1):
            assert sq.coeff(k) == x.coeff(k)

    def test_sin_at_nonzero_rational_needs_approx_mode(self):
        with pytest.raises(ExactModeUnsupported):
            nf.taylor_apply("sin", nf.add(E.constant(1), E))

    def test_sqrt_of_negative(self):
        with pytest.raises(NegativeSqrtArgument):
            nf.taylor_apply("sqrt", nf.add(E.constant(-1), E))

    def test_sqrt_of_nonsquare_needs_approx_mode(self):
        with pytest.raises(ExactModeUnsupported):
            nf.taylor_apply("sqrt", nf.add(E.constant(2), E))

    def test_constant_argument_stays_exact(self):
        assert nf.taylor_apply("cos", E.constant(0)) == E.constant(1)

    @settings(max_examples=50)
    @given(hs.floats(-3, 3), hs.sampled_from(["sin", "cos"]))
    def test_approx_mode_matches_math(self, c, name):
        eps = nf.epsilon(6, tol=1e-14)
        s = nf.taylor_apply(name, nf.add(eps.constant(c), eps))
        f = getattr(math, name)
        h = 1e-3
        # oracle: the truncated series evaluated at a small real increment
        value = sum(coef * h ** k for k, coef in s.items())
        assert value == pytest.approx(f(c + h), abs=1e-15)


class TestFormatting:
    def test_zero(self):
        assert nf.format_series(S({})) == "0"

    def test_inexact_zero(self):
        assert nf.format_series(S({}, trunc=2, exact=False)) == "O(E^3)"

    def test_negative_exponent(self):
        assert nf.format_series(S({-1: -2, 0: 3})) == "-2*E^-1 + 3"
