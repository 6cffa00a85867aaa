"""Batch checks of the Chebyshev and transfer-function inequalities on grids."""

from __future__ import annotations

import numpy as np
from scipy.optimize import bisect

from ..chebyshev import (
    ALPHA0,
    ELL_MIN,
    RTOL,
    XTOL,
    alpha_of_lambda,
    cheb_fact_b,
    f_eval,
    f_prime,
    ratio_fact_increasing,
)
from ..errors import DomainError
from ..report import Claim

Z_GRID = np.linspace(1.0, 3.0, 201)
FD_STEP = 1e-6


def _root_above_3(f, ell):
    lo, step = 3.0, 0.05
    hi = lo + step
    while f(hi, ell) < 0:
        lo, hi = hi, hi + step
        if hi > 100:
            return None
    return bisect(lambda x: f(x, ell), lo, hi, xtol=XTOL, rtol=RTOL)


def _inverse(f, mu, ell, lo):
    hi = lo + 1e-3
    while f(hi, ell) < mu:
        lo, hi = hi, hi + 2 * (hi - lo)
    return bisect(lambda x: f(x, ell) - mu, lo, hi, xtol=XTOL, rtol=RTOL)


def check_ell(ell: int, f=f_eval, fprime=f_prime, samples: int = 200) -> dict:
    """All transfer-function clauses for one ell; ``f``/``fprime`` are injectable."""
    out = {"f3_negative": bool(f(3.0, ell) < 0)}
    ls = _root_above_3(f, ell)
    out["lambda_star_exists"] = ls is not None
    if ls is None:
        out.update(lambda_star_unique=False, f_increasing=False, lower_bound=False,
                   fprime_window=False, fd_match=False, fd_max_rel=float("nan"))
        return out
    out["lambda_star"] = ls
    grid = np.linspace(ls, ls + 10.0, 10001)[1:]
    fv = np.array([f(x, ell) for x in grid])
    out["lambda_star_unique"] = bool(np.all(fv > 0))
    out["f_increasing"] = bool(np.all(np.diff(fv) > 0))

    # f(lam) >= (a - alpha0) alpha0^(ell-1) for a > alpha0, lam >= lambda_star
    lam0 = ALPHA0 + 1.0 / ALPHA0
    lb_grid = np.linspace(max(lam0, ls), 6.0, 400)[1:]
    lb_ok = True
    for lam in lb_grid:
        a = alpha_of_lambda(lam)
        bound = (a - ALPHA0) * ALPHA0 ** (ell - 1)
        lb_ok &= f(lam, ell) >= bound * (1.0 - 1e-12)
    out["lower_bound"] = bool(lb_ok)

    # 0.01 alpha0^ell < f'(lam) < 3 alpha0^ell where f(lam) < 5, lam >= lambda_star
    top = _inverse(f, 5.0, ell, ls)
    window = np.linspace(ls, top, samples + 1)[:-1]
    scale = ALPHA0 ** ell
    fp = np.array([fprime(x, ell) for x in window])
    out["fprime_window"] = bool(np.all((0.01 * scale < fp) & (fp < 3.0 * scale)))
    fd = np.array([(f(x + FD_STEP, ell) - f(x - FD_STEP, ell)) / (2 * FD_STEP) for x in window])
    big = np.abs(fp) > 1
    rel = np.abs(fd[big] - fp[big]) / np.abs(fp[big])
    out["fd_max_rel"] = float(rel.max()) if rel.size else 0.0
    out["fd_match"] = bool(out["fd_max_rel"] <= 1e-4)
    return out


def check_m(m: int, z_grid=Z_GRID) -> dict:
    return {
        "ratio_increasing": ratio_fact_increasing(m, z_grid),
        "fact_b": all(cheb_fact_b(m, float(z)) for z in z_grid),
    }


ELL_CLAUSES = (
    ("f(3) < 0", "f3_negative"),
    ("lambda_star exists", "lambda_star_exists"),
    ("lambda_star unique on grid", "lambda_star_unique"),
    ("f increasing above lambda_star", "f_increasing"),
    ("f lower bound (a - alpha0) alpha0^(ell-1)", "lower_bound"),
    ("0.01 alpha0^ell < f' < 3 alpha0^ell", "fprime_window"),
    ("f' matches finite differences", "fd_match"),
)
M_CLAUSES = (
    ("(T_m - 1)/U_{m-1} increasing", "ratio_increasing"),
    ("U_{m-1} >= ((2T_m + 2)/U_{m-1})^(m-1)", "fact_b"),
)


def run_lemmas(ells, ms, f=f_eval, fprime=f_prime):
    """Returns (measured, claims); one claim per clause, conjoined over the grid."""
    ells, ms = list(ells), list(ms)
    if not ells or not ms:
        raise ValueError("ell and m lists must be nonempty")
    if min(ells) < ELL_MIN:
        raise DomainError(f"every ell must be > {ELL_MIN - 1}")
    if min(ms) < 4:
        raise DomainError("every m must be >= 4")
    per_ell = {ell: check_ell(ell, f, fprime) for ell in ells}
    per_m = {m: check_m(m) for m in ms}
    measured: dict = {"ells": ells, "ms": ms}
    claims = []
    for label, key in ELL_CLAUSES:
        measured[key] = all(per_ell[e][key] for e in ells)
        claims.append(Claim(label, key, "==", True))
    for label, key in M_CLAUSES:
        measured[key] = all(per_m[m][key] for m in ms)
        claims.append(Claim(label, key, "==", True))
    measured["fd_max_rel"] = max(per_ell[e]["fd_max_rel"] for e in ells)
    for e in ells:
        if "lambda_star" in per_ell[e]:
            measured[f"lambda_star_{e}"] = per_ell[e]["lambda_star"]
    return measured, claims


def perturbed_f(factor: float = 0.5):
    """f scaled by ``factor``; a negative control for the lower-bound clause."""
    def f(lam, ell):
        return factor * f_eval(lam, ell)
    return f
