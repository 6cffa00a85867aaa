import math

import mpmath
import numpy as np
import pytest

from emlab.chebyshev import (
    ALPHA0,
    C1,
    alpha_of_lambda,
    cheb_fact_b,
    cheb_T,
    cheb_U,
    cheby_gap_implication,
    f_chebyshev,
    f_eval,
    f_inverse,
    f_lower_bound_check,
    f_prime,
    g_poly,
    irrep_gap_bound,
    lambda_star,
    ratio_fact_increasing,
    y0,
)
from emlab.errors import DomainError

mpmath.mp.dps = 50


def _mp_rec(m, x, first):
    # three-term recurrence in 50-digit arithmetic
    x = mpmath.mpf(x)
    if m < 0:
        return mpmath.mpf(0)
    prev, cur = mpmath.mpf(1), first * x
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def mp_T(m, x):
    return _mp_rec(m, x, 1)


def mp_U(m, x):
    return _mp_rec(m, x, 2)


def mp_f(lam, ell):
    lam = mpmath.mpf(lam)
    return (lam - 3) * mp_U(ell - 1, lam / 2) - 3 * mp_U(ell - 2, lam / 2)


class TestPolynomials:
    def test_small_values(self):
        assert all(cheb_T(m, 1.0) == 1.0 for m in range(50))
        assert cheb_U(3, 1.0) == 4.0
        assert cheb_T(3, 2.0) == pytest.approx(26, rel=1e-14)
        assert cheb_U(-1, 0.3) == 0.0 and cheb_U(-1, 5.0) == 0.0

    def test_negative_degree(self):
        with pytest.raises(DomainError):
            cheb_T(-1, 0.5)
        with pytest.raises(DomainError):
            cheb_U(-2, 0.5)

    def test_array_input(self):
        x = np.array([-3.0, -0.5, 0.0, 0.5, 3.0])
        assert np.allclose(cheb_T(4, x), [float(mp_T(4, v)) for v in x], rtol=1e-13)
        assert cheb_T(4, x).shape == x.shape

    @pytest.mark.parametrize("m", [0, 1, 2, 5, 17, 64, 100, 150, 200])
    def test_against_mpmath(self, m):
        # inside [-1, 1]: error relative to the sup-norm (1 for T, m + 1 for U)
        for x in np.linspace(-1, 1, 41):
            assert abs(cheb_T(m, x) - float(mp_T(m, x))) <= 1e-12 * max(1.0, abs(float(mp_T(m, x))))
            u = float(mp_U(m, x))
            assert abs(cheb_U(m, x) - u) <= 1e-12 * max(1.0, abs(u), m + 1)
        # outside: plain relative error
        for x in [-3.7, -1.5, -1.0001, 1.0 + 1e-9, 1.0001, 1.2, 2.5, 4.0]:
            t, u = float(mp_T(m, x)), float(mp_U(m, x))
            if math.isfinite(t) and t != 0:
                assert cheb_T(m, x) == pytest.approx(t, rel=1e-12)
            if math.isfinite(u) and u != 0:
                assert cheb_U(m, x) == pytest.approx(u, rel=1e-12)

    def test_closed_form_in_alpha(self):
        for a in [1.01, 1.5, 2.0, 3.3, 5.0]:
            x = (a + 1 / a) / 2
            for m in [1, 7, 40, 100]:
                assert cheb_T(m, x) == pytest.approx((a**m + a**-m) / 2, rel=1e-11)
                assert cheb_U(m - 1, x) == pytest.approx((a**m - a**-m) / (a - 1 / a), rel=1e-11)

    def test_trig_forms(self):
        for th in np.linspace(0.05, 3.1, 30):
            for m in [1, 4, 13, 60]:
                assert cheb_T(m, math.cos(th)) == pytest.approx(math.cos(m * th), abs=1e-10)
                assert cheb_U(m - 1, math.cos(th)) * math.sin(th) == pytest.approx(math.sin(m * th), abs=1e-10)


class TestAlpha:
    def test_examples(self):
        assert alpha_of_lambda(2.5) == 2.0
        assert alpha_of_lambda(17 / 4) == 4.0

    def test_domain(self):
        with pytest.raises(DomainError):
            alpha_of_lambda(2.0)
        with pytest.raises(DomainError):
            alpha_of_lambda(-3.0)

    def test_round_trip(self, rng):
        for lam in rng.uniform(2.0, 10.0, 200):
            if lam > 2:
                a = alpha_of_lambda(lam)
                assert a > 1 and (a + 1 / a) == pytest.approx(lam, rel=1e-13)

    def test_alpha0(self):
        assert ALPHA0 == pytest.approx(2 / ALPHA0 + 3, abs=1e-14)
        assert C1 == 0.001


class TestFacts:
    def test_ratio_increasing(self):
        z = np.round(np.arange(1.0, 3.0001, 0.1), 10)
        assert ratio_fact_increasing(5, z)
        assert not ratio_fact_increasing(5, z[[0, 2, 1, 3]])

    def test_ratio_minimum_at_one(self):
        z = np.linspace(1, 3, 21)
        r = (cheb_T(4, z) - 1) / cheb_U(3, z)
        assert r[0] == 0 and r.min() == 0

    def test_fact_b(self):
        assert cheb_fact_b(4, 1.0)
        assert cheb_fact_b(10, 1.5)
        with pytest.raises(DomainError):
            cheb_fact_b(3, 1.5)

    def test_fact_b_at_one_is_tight(self):
        # U_3(1) = 4 and ((2 + 2)/4)^3 = 1
        assert cheb_U(3, 1.0) == 4.0
        assert (2 * cheb_T(4, 1.0) + 2) / cheb_U(3, 1.0) == 1.0


class TestY0:
    def test_quartic(self):
        # 2 T_4 + 2 - 2 U_3 = 16y^4 - 16y^3 - 16y^2 + 8y + 4 = 4(4y^4 - 4y^3 - 4y^2 + 2y + 1)
        roots = np.roots([4, -4, -4, 2, 1])
        largest = max(r.real for r in roots if abs(r.imag) < 1e-12)
        assert largest == pytest.approx(1.36602540378443864676, abs=1e-15)
        assert y0(2, 4) == pytest.approx(largest, abs=1e-11)
        assert y0(2, 4) == pytest.approx((1 + math.sqrt(3)) / 2, abs=1e-11)

    @pytest.mark.parametrize("s,m", [(2, 4), (2, 6), (3, 5), (4, 8), (16, 4), (2, 12)])
    def test_properties(self, s, m):
        assert g_poly(1.0, s, m) == pytest.approx(4 - m * s)
        r = y0(s, m)
        assert r > 1 and abs(g_poly(r, s, m)) <= 1e-9
        # no root above: compare with numpy on the power basis
        poly = 2 * np.polynomial.Chebyshev.basis(m) + 2
        ucoef = np.polynomial.Polynomial([0])
        u0, u1 = np.polynomial.Polynomial([1]), np.polynomial.Polynomial([0, 2])
        prev, cur = u0, u1
        for _ in range(m - 2):
            prev, cur = cur, np.polynomial.Polynomial([0, 2]) * cur - prev
        ucoef = cur if m >= 2 else u0
        full = poly.convert(kind=np.polynomial.Polynomial) - s * ucoef
        real = [z.real for z in full.roots() if abs(z.imag) < 1e-9]
        assert r == pytest.approx(max(real), abs=1e-9)

    def test_domain(self):
        with pytest.raises(DomainError):
            y0(1, 5)
        with pytest.raises(DomainError):
            y0(2, 3)


class TestGapBounds:
    def test_equality_at_y0(self):
        r = y0(2, 4)
        assert irrep_gap_bound(r, 4, 2, 0.0)

    def test_large_x_fails(self):
        assert not irrep_gap_bound(3.0, 6, 2, 1.0)

    def test_at_y0_with_kappa(self):
        # at y0 the kappa = 0 case is equality, so kappa > 0 fails it
        r = y0(2, 4)
        assert not irrep_gap_bound(r, 4, 2, 2.0)

    def test_implication_q5(self):
        r = y0(2, 4)
        xs = np.linspace(r, r + 5, 5001)[1:]
        assert cheby_gap_implication(4, 2, 2.0, xs) is True

    def test_implication_q13(self):
        kappa = 2 - math.sqrt(3)
        r = y0(2, 6)
        xs = np.linspace(r, r + 5, 5001)[1:]
        assert cheby_gap_implication(6, 2, kappa, xs) is True

    def test_not_applicable(self):
        assert cheby_gap_implication(4, 2, 0.1, [2.0]) is None
        assert cheby_gap_implication(4, 2, 0.0, [2.0]) is None


class TestTransfer:
    @pytest.mark.parametrize("ell", [11, 12, 15, 30, 60])
    def test_f_three_negative(self, ell):
        assert f_eval(3.0, ell) < 0

    def test_frozen_integers(self):
        # at lam = 3, f = -3 U_{l-2}(3/2); these are exact integers
        assert f_eval(3.0, 11) == pytest.approx(-20295, rel=1e-12)
        assert f_eval(3.0, 12) == pytest.approx(-53133, rel=1e-12)
        assert f_eval(3.0, 15) == pytest.approx(-953433, rel=1e-12)
        assert float(mp_f(3, 11)) == -20295

    @pytest.mark.parametrize("ell", [2, 3, 11, 15, 40])
    def test_forms_agree(self, ell):
        for lam in [2.1, 2.9, 3.5, 3.84, 4.3, 6.0]:
            exact = float(mp_f(lam, ell))
            assert f_eval(lam, ell) == pytest.approx(exact, rel=1e-10, abs=1e-10)
            assert f_chebyshev(lam, ell) == pytest.approx(exact, rel=1e-10, abs=1e-10)

    def test_alpha0_point(self):
        ell = 11
        a0 = (3 + mpmath.sqrt(17)) / 2
        closed = 3 * (a0 ** (1 - ell) - a0 ** (-ell - 1)) / (a0 - 1 / a0)
        assert float(mp_f(a0 + 1 / a0, ell)) == pytest.approx(float(closed), rel=1e-30)
        assert float(closed) == pytest.approx(2.565003599989885e-6, rel=1e-14)
        # in doubles lam itself is rounded and f' ~ 1e6, so agreement is absolute
        lam = ALPHA0 + 1 / ALPHA0
        assert f_eval(lam, ell) == pytest.approx(float(closed), abs=1e-9)
        assert f_chebyshev(lam, ell) == pytest.approx(float(closed), abs=1e-9)
        assert f_eval(lam, ell) > 0

    def test_frozen_values(self):
        assert f_eval(4.3, 11) == pytest.approx(713552.02543750637, rel=1e-12)
        assert f_prime(4.0, 11) == pytest.approx(1010584.0, rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            f_eval(2.0, 11)
        with pytest.raises(DomainError):
            f_eval(3.0, 1)
        with pytest.raises(DomainError):
            f_eval(3.0, 181)
        with pytest.raises(DomainError):
            f_prime(1.5, 11)

    @pytest.mark.parametrize("ell", [11, 13, 15])
    def test_fprime_vs_mpmath(self, ell):
        for lam in [3.2, 3.85, 4.0, 5.5]:
            d = float(mpmath.diff(lambda x: mp_f(x, ell), mpmath.mpf(lam)))
            assert f_prime(lam, ell) == pytest.approx(d, rel=1e-9)

    def test_fprime_positive_where_f_nonnegative(self):
        for ell in (11, 14):
            for lam in np.linspace(3.01, 8, 300):
                if f_eval(lam, ell) >= 0:
                    assert f_prime(lam, ell) > 0


class TestLambdaStar:
    @pytest.mark.parametrize(
        "ell,expected",
        [(11, 3.84232921920752030667), (12, 3.84232921921279407142), (15, 3.84232921921324519123)],
    )
    def test_values(self, ell, expected):
        ls = lambda_star(ell)
        assert ls == pytest.approx(expected, abs=1e-11)
        oracle = mpmath.findroot(lambda x: mp_f(x, ell), mpmath.mpf(ls))
        assert ls == pytest.approx(float(oracle), abs=1e-11)

    def test_bracket(self):
        ls = lambda_star(11)
        assert 3 < ls < ALPHA0 + 1 / ALPHA0
        assert f_eval(ls - 1e-6, 11) < 0 < f_eval(ls + 1e-6, 11)

    def test_unique_above(self):
        ls = lambda_star(11)
        grid = np.linspace(ls, ls + 10, 10001)[1:]
        vals = np.array([f_eval(x, 11) for x in grid])
        assert np.all(vals > 0) and np.all(np.diff(vals) > 0)

    def test_needs_ell_above_ten(self):
        with pytest.raises(DomainError):
            lambda_star(10)


class TestInverse:
    def test_zero(self):
        assert f_inverse(0.0, 11) == lambda_star(11)

    def test_frozen(self):
        assert f_inverse(1.0, 11) == pytest.approx(3.8423314511998162618, abs=1e-11)
        assert f_inverse(3.0, 11) == pytest.approx(3.8423359150968819193, abs=1e-11)

    def test_round_trip(self):
        ls = lambda_star(12)
        for lam in np.linspace(ls + 0.01, ls + 2, 15):
            assert f_inverse(f_eval(lam, 12), 12, ls) == pytest.approx(lam, abs=1e-9)

    def test_negative(self):
        with pytest.raises(DomainError):
            f_inverse(-1.0, 11)


class TestLowerBound:
    def test_boundary(self):
        lam = ALPHA0 + 1 / ALPHA0
        assert f_lower_bound_check(lam, 11)

    def test_example(self):
        assert f_lower_bound_check(3.9, 11)

    def test_grid(self):
        for ell in range(11, 16):
            for lam in np.linspace(ALPHA0 + 1 / ALPHA0, 6, 60)[1:]:
                assert f_lower_bound_check(lam, ell)

    def test_below_alpha0(self):
        with pytest.raises(DomainError):
            f_lower_bound_check(3.5, 11)
