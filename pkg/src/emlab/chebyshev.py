"""Chebyshev polynomials, the subdivision transfer function f and its roots.

For x > 1 we write x = (a + 1/a) / 2 with a = e^theta, so that

    T_m(x) = cosh(m theta),   U_m(x) = sinh((m + 1) theta) / sinh(theta).

Inside [-1, 1] the three-term recurrence is used (it is stable there).
The transfer function is evaluated in the variable a > 1 with
lambda = a + 1/a, where U_{l-1}(lambda / 2) = (a^l - a^-l) / (a - 1/a).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import bisect

from . import kernels
from .errors import BracketFailure, DomainError

ALPHA0 = (3.0 + math.sqrt(17.0)) / 2.0
C1 = 0.001
ELL_MIN = 11  # lemmas about f need ell > 10
ELL_MAX = 180  # alpha0**ell stays far below the double range up to here
# bisection runs to the last few ulps; steep polynomials need it for small residuals
XTOL = 1e-15
RTOL = 4 * np.finfo(float).eps


def _theta(x):
    # arccosh(x) for x >= 1, accurate near 1
    t = x - 1.0
    return np.log1p(t + np.sqrt(t * (x + 1.0)))


def _cheb(m: int, x, kind: str):
    arr = np.asarray(x, dtype=np.float64)
    flat = np.atleast_1d(arr).ravel()
    out = np.empty_like(flat)
    ax = np.abs(flat)
    inner = ax <= 1.0
    if inner.any():
        fn = kernels.cheb_t if kind == "T" else kernels.cheb_u
        out[inner] = fn(m, np.ascontiguousarray(flat[inner]))
    outer = ~inner
    if outer.any():
        th = _theta(ax[outer])
        with np.errstate(over="ignore", invalid="ignore"):
            if kind == "T":
                val = np.cosh(m * th)
            elif m < 0:
                val = np.zeros_like(th)
            else:
                val = np.sinh((m + 1) * th) / np.sinh(th)
        sign = np.where((flat[outer] < 0) & (m % 2 == 1), -1.0, 1.0)
        out[outer] = sign * val
    out = out.reshape(arr.shape)
    return float(out) if arr.ndim == 0 else out


def cheb_T(m: int, x):
    """Chebyshev polynomial of the first kind, T_m(x)."""
    if m < 0:
        raise DomainError("T_m needs m >= 0")
    return _cheb(m, x, "T")


def cheb_U(m: int, x):
    """Chebyshev polynomial of the second kind, U_m(x); U_{-1} = 0."""
    if m < -1:
        raise DomainError("U_m needs m >= -1")
    return _cheb(m, x, "U")


def alpha_of_lambda(lam: float) -> float:
    """The root a > 1 of a + 1/a = lam."""
    if not lam > 2:
        raise DomainError(f"lambda must exceed 2, got {lam}")
    return (lam + math.sqrt((lam - 2.0) * (lam + 2.0))) / 2.0


def ratio_fact_increasing(m: int, z_samples) -> bool:
    """Is (T_m(z) - 1) / U_{m-1}(z) strictly increasing along the samples?"""
    if m < 1:
        raise DomainError("m must be >= 1")
    z = np.asarray(z_samples, dtype=np.float64)
    if np.any(z < 1):
        raise DomainError("samples must be >= 1")
    r = (cheb_T(m, z) - 1.0) / cheb_U(m - 1, z)
    return bool(np.all(np.diff(r) > 0))


def cheb_fact_b(m: int, z: float, slack: float = 1e-12) -> bool:
    """U_{m-1}(z) >= ((2 T_m(z) + 2) / U_{m-1}(z))^(m-1)."""
    if m < 4:
        raise DomainError("this inequality is only claimed for m >= 4")
    if z < 1:
        raise DomainError("z must be >= 1")
    u = cheb_U(m - 1, z)
    rhs = ((2.0 * cheb_T(m, z) + 2.0) / u) ** (m - 1)
    return u >= rhs * (1.0 - slack)


def g_poly(y, size_s: int, m: int):
    return 2.0 * cheb_T(m, y) + 2.0 - size_s * cheb_U(m - 1, y)


def y0(size_s: int, m: int, grid: int = 20000) -> float:
    """Largest real root of 2 T_m(y) + 2 - |S| U_{m-1}(y).

    Every root above 1 has a - 1/a <= |S| (with y = (a + 1/a)/2), so all of
    them lie in [1, sqrt(|S|^2 + 4) / 2]. We bracket the last sign change on
    a grid there and bisect.
    """
    if size_s < 2 or m < 4:
        raise DomainError("y0 needs |S| >= 2 and m >= 4")
    y_max = math.sqrt(size_s * size_s + 4.0) / 2.0
    ys = np.linspace(1.0, y_max, grid + 1)
    gs = g_poly(ys, size_s, m)
    if not (gs[0] < 0 < gs[-1]):
        raise BracketFailure(f"no sign change on [1, {y_max}]")
    flips = np.nonzero(np.sign(gs[:-1]) != np.sign(gs[1:]))[0]
    i = flips[-1]
    if gs[i + 1] == 0:
        return float(ys[i + 1])
    return float(bisect(g_poly, ys[i], ys[i + 1], args=(size_s, m), xtol=XTOL, rtol=RTOL))


def irrep_gap_bound(x: float, m: int, size_s: int, kappa: float, slack: float = 1e-9) -> bool:
    """2 T_m(x) <= U_{m-1}(x) (|S| - kappa) + 2, up to a relative slack."""
    lhs = 2.0 * cheb_T(m, x)
    rhs = cheb_U(m - 1, x) * (size_s - kappa) + 2.0
    return bool(lhs <= rhs + slack * max(1.0, abs(lhs)))


def cheby_gap_implication(m: int, size_s: int, kappa: float, x_samples) -> bool | None:
    """When |S|^(m-1) >= 4/kappa, no sample x > y0 may satisfy irrep_gap_bound.

    Returns None when the hypothesis fails (nothing to check).
    """
    if m < 4:
        raise DomainError("m must be >= 4")
    if not kappa > 0 or size_s ** (m - 1) < 4.0 / kappa:
        return None
    root = y0(size_s, m)
    return not any(
        irrep_gap_bound(x, m, size_s, kappa, slack=0.0) for x in x_samples if x > root
    )


def _check_ell(ell: int, lo: int = 2) -> None:
    if ell < lo:
        raise DomainError(f"ell must be >= {lo}, got {ell}")
    if ell > ELL_MAX:
        raise DomainError(f"ell > {ELL_MAX} risks overflow")


def _parts(a: float, ell: int):
    """A, B and their a-derivatives for the product form f = A * B."""
    d = a - 1.0 / a
    d1 = 1.0 + a ** -2
    p = a ** ell - a ** -ell
    p1 = ell * (a ** (ell - 1) + a ** (-ell - 1))
    B = p / d
    dB = (p1 * d - p * d1) / (d * d)
    q = a ** (1 - ell) - a ** (-ell - 1)
    q1 = (1 - ell) * a ** -ell + (ell + 1) * a ** (-ell - 2)
    A = a - 2.0 / a - 3.0 + 3.0 * q / p
    dA = 1.0 + 2.0 / (a * a) + 3.0 * (q1 * p - q * p1) / (p * p)
    return A, dA, B, dB


def f_eval(lam: float, ell: int) -> float:
    """f(lam) = (lam - 3) U_{l-1}(lam/2) - 3 U_{l-2}(lam/2), for lam > 2."""
    _check_ell(ell)
    a = alpha_of_lambda(lam)
    A, _, B, _ = _parts(a, ell)
    return A * B


def f_chebyshev(lam: float, ell: int) -> float:
    """Same function through U directly; valid for any real lam."""
    _check_ell(ell)
    return (lam - 3.0) * cheb_U(ell - 1, lam / 2.0) - 3.0 * cheb_U(ell - 2, lam / 2.0)


def f_prime(lam: float, ell: int) -> float:
    _check_ell(ell)
    a = alpha_of_lambda(lam)
    A, dA, B, dB = _parts(a, ell)
    return (dA * B + A * dB) / (1.0 - a ** -2)


def _bracket_up(fn, lo: float, target: float, step: float = 0.25, cap: float = 1e6):
    hi = lo + step
    while fn(hi) < target:
        lo, hi = hi, hi + step
        step *= 2
        if hi > cap:
            raise BracketFailure("no bracket below the search cap")
    return lo, hi


def lambda_star(ell: int) -> float:
    """The root of f above 3 (f(3) < 0 and f grows past it)."""
    _check_ell(ell, ELL_MIN)
    f3 = f_eval(3.0, ell)
    if not f3 < 0:
        raise BracketFailure(f"f(3) = {f3} is not negative")
    lo, hi = _bracket_up(lambda x: f_eval(x, ell), 3.0, 0.0, step=0.05)
    return float(bisect(f_eval, lo, hi, args=(ell,), xtol=XTOL, rtol=RTOL))


def f_inverse(mu: float, ell: int, lam_star: float | None = None) -> float:
    """The unique lam >= lambda_star with f(lam) = mu."""
    _check_ell(ell, ELL_MIN)
    if mu < 0:
        raise DomainError("mu must be >= 0")
    ls = lambda_star(ell) if lam_star is None else lam_star
    if mu == 0:
        return ls
    lo, hi = _bracket_up(lambda x: f_eval(x, ell), ls, mu, step=1e-3)
    return float(bisect(lambda x: f_eval(x, ell) - mu, lo, hi, xtol=XTOL, rtol=RTOL))


def f_lower_bound_check(lam: float, ell: int, slack: float = 1e-12) -> bool:
    """f(lam) >= (a - alpha0) alpha0^(l-1), for lam >= lambda_star with a >= alpha0."""
    _check_ell(ell, ELL_MIN)
    a = alpha_of_lambda(lam)
    if a < ALPHA0 * (1.0 - 1e-12):
        raise DomainError("bound is stated for alpha >= alpha0")
    bound = max(a - ALPHA0, 0.0) * ALPHA0 ** (ell - 1)
    return f_eval(lam, ell) >= bound - slack * max(1.0, bound)
