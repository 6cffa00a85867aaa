"""Random 3-regular base graphs and the subdivided K4-blowup G(H, ell).

Eigenvalues lam > 2 of G(H, ell) correspond to eigenvalues f(lam) of H,
and f is steep (slope of order alpha0^ell) above its root lambda_star, so a
spread-out block of H-eigenvalues becomes a tight cluster just below lam_1(G).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .. import kernels
from ..chebyshev import ALPHA0, C1, ELL_MIN, f_eval, f_inverse, lambda_star
from ..errors import DomainError, HypothesisFailure, NotRegular, RetryExhausted
from ..graphcore import Graph, build_g_of_h, is_connected
from ..report import Claim
from ..spectra import Spectrum, default_tol, eigenvalues, interval_count, spectral_gap
from .common import BuildResult, measure

MAX_PAIRING_RETRIES = 1000
MIN_BASE_GAP = 0.01
ROOT8 = 2.0 * math.sqrt(2.0)


def km_density(z):
    """Limiting eigenvalue density of random 3-regular graphs, on |z| <= 2 sqrt 2."""
    z = np.asarray(z, dtype=np.float64)
    inside = np.abs(z) < ROOT8
    out = np.zeros_like(z)
    zi = z[inside]
    out[inside] = 3.0 * np.sqrt(8.0 - zi * zi) / (2.0 * np.pi * (9.0 - zi * zi))
    return out if out.ndim else float(out)


def km_mass(a: float, b: float) -> float:
    """Density mass of [a, b], integrated in phi with z = 2 sqrt 2 sin(phi)."""
    lo = math.asin(max(-1.0, min(1.0, a / ROOT8)))
    hi = math.asin(max(-1.0, min(1.0, b / ROOT8)))
    if hi <= lo:
        return 0.0

    def integrand(phi):
        c = math.cos(phi)
        s = math.sin(phi)
        return 24.0 * c * c / (2.0 * math.pi * (9.0 - 8.0 * s * s))

    val, _ = quad(integrand, lo, hi, epsabs=1e-13, epsrel=1e-13, limit=200)
    return val


def a_eps(eps: float) -> float:
    """Half the density mass of [2 sqrt 2 - sqrt 2 eps, 2 sqrt 2]; a(2) = 1/4."""
    if not 0 < eps <= 2:
        raise DomainError("eps must lie in (0, 2]")
    return 0.5 * km_mass(ROOT8 - math.sqrt(2.0) * eps, ROOT8)


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_regular_graph(n: int, seed=0, max_retries: int = MAX_PAIRING_RETRIES) -> Graph:
    """Simple connected 3-regular graph from the pairing model with rejection."""
    if n < 4 or n % 2:
        raise ValueError("n must be even and at least 4")
    rng = _rng(seed)
    stubs = np.repeat(np.arange(n, dtype=np.int64), 3)
    for _ in range(max_retries):
        ok, u, v = kernels.pair_stubs(n, rng.permutation(stubs))
        if ok:
            g = Graph(n, u, v)
            if is_connected(g):
                return g
    raise RetryExhausted(f"no simple connected pairing in {max_retries} tries", {"n": n})


def sample_seed(seed: int, index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([seed, index])


def base_measurements(h: Graph, eps: float, spec: Spectrum | None = None) -> dict:
    spec = eigenvalues(h, residual=False) if spec is None else spec
    mu2 = spec.lambda2
    a = a_eps(eps)
    return {
        "lambda1_H": spec.lambda1,
        "lambda2_H": mu2,
        "gap_H": spectral_gap(spec),
        "connected_H": is_connected(h),
        "count_H": interval_count(spec, (1.0 - eps) * mu2, mu2),
        "a_eps": a,
        "a_eps_N": a * h.n,
        "degenerate": a * h.n < 1,
    }


@dataclass
class ApproxInstance:
    N: int
    ell: int
    seed: int | None
    eps: float
    H: Graph
    measured: dict = field(default_factory=dict)

    @classmethod
    def from_graph(cls, h: Graph, ell: int = ELL_MIN, eps: float = 1.0, seed=None) -> "ApproxInstance":
        return cls(h.n, ell, seed, eps, h, base_measurements(h, eps))


def sample_good_H(n: int, eps: float, seed: int = 0, max_tries: int = 100, ell: int = ELL_MIN) -> ApproxInstance:
    """Resample until H has gap >= 0.01 and at least a(eps) n eigenvalues in [(1-eps) mu2, mu2]."""
    if n % 2:
        raise ValueError("n must be even")
    best = None
    for idx in range(max_tries):
        h = random_regular_graph(n, sample_seed(seed, idx))
        meas = base_measurements(h, eps)
        meas["tries"] = idx + 1
        good_gap = meas["gap_H"] >= MIN_BASE_GAP
        good_count = meas["count_H"] >= meas["a_eps_N"]
        if good_gap and good_count:
            return ApproxInstance(n, ell, seed, eps, h, meas)
        score = (good_gap, meas["count_H"] - meas["a_eps_N"])
        if best is None or score > best[0]:
            best = (score, meas)
    raise RetryExhausted(f"no good base graph in {max_tries} tries", best[1] if best else {})


@dataclass
class FCorrespondence:
    ell: int
    tol: float
    lam_star: float
    max_distance: float
    checked: int
    clusters: list  # (mu_lo, mu_hi, mult_H, lam, mult_G)

    @property
    def multiplicities_ok(self) -> bool:
        return all(c[4] >= c[2] for c in self.clusters)

    @property
    def ok(self) -> bool:
        return self.max_distance <= self.tol and self.multiplicities_ok

    def multiplicity_at(self, mu: float) -> int:
        for lo, hi, _, _, mult_g in self.clusters:
            if lo - self.tol <= mu <= hi + self.tol:
                return mult_g
        return 0


def f_correspondence(spec_h: Spectrum, spec_g: Spectrum, ell: int, tol: float = 1e-6) -> FCorrespondence:
    """Compare spec(G) above 2 with spec(H) through f.

    Eigenvalues within 1e-9 of 2 are skipped: G(H, ell) has eigenvalues
    exactly 2 that carry no information about H.
    """
    if ell < ELL_MIN:
        raise DomainError(f"ell must be > {ELL_MIN - 1}")
    margin = 1e-9 * max(1.0, spec_g.lambda1)
    lams = spec_g.values[spec_g.values > 2.0 + margin]
    fvals = np.array([f_eval(x, ell) for x in lams])
    mus = np.sort(spec_h.values)
    if fvals.size:
        pos = np.clip(np.searchsorted(mus, fvals), 1, mus.size - 1)
        dist = np.minimum(np.abs(fvals - mus[pos - 1]), np.abs(fvals - mus[pos]))
        max_dist = float(dist.max())
    else:
        max_dist = 0.0
    ls = lambda_star(ell)
    upper = lams >= ls - 1e-9
    clusters = []
    nonneg = mus[mus >= 0]
    i = 0
    while i < nonneg.size:
        j = i
        while j + 1 < nonneg.size and nonneg[j + 1] - nonneg[j] <= tol:
            j += 1
        lo, hi = float(nonneg[i]), float(nonneg[j])
        hit = upper & (fvals >= lo - tol) & (fvals <= hi + tol)
        lam = f_inverse(max(0.0, (lo + hi) / 2.0), ell, ls)
        clusters.append((lo, hi, j - i + 1, lam, int(hit.sum())))
        i = j + 1
    return FCorrespondence(ell, tol, ls, max_dist, int(lams.size), clusters)


def verify_f_correspondence(h: Graph, ell: int, tol: float = 1e-6) -> FCorrespondence:
    if h.has_loops() or not h.is_regular(3):
        raise NotRegular("H must be 3-regular")
    g = build_g_of_h(h, ell)
    return f_correspondence(eigenvalues(h, residual=False), eigenvalues(g, residual=False), ell, tol)


def build_approx(inst: ApproxInstance, tol: float | None = None, f_tol: float = 1e-6) -> BuildResult:
    h, ell, eps = inst.H, inst.ell, inst.eps
    if ell < ELL_MIN:
        raise DomainError(f"ell must be > {ELL_MIN - 1}")
    if h.has_loops() or not h.is_regular(3):
        raise NotRegular("H must be 3-regular")
    spec_h = eigenvalues(h, residual=False)
    base = base_measurements(h, eps, spec_h)
    if not base["connected_H"]:
        raise HypothesisFailure("H connected")
    if base["gap_H"] < MIN_BASE_GAP:
        raise HypothesisFailure("gap(H) >= 0.01", f"measured {base['gap_H']:.6g}")
    g = build_g_of_h(h, ell)
    spec, tol, measured = measure(g, tol)
    measured.update(base)
    lam1, lam2 = spec.lambda1, spec.lambda2
    shrink = ALPHA0 ** -ell
    measured["kappa_bound"] = C1 * shrink
    measured["kappa_margin"] = measured["gap"] - C1 * shrink
    measured["f_lambda1"] = f_eval(lam1, ell)
    measured["f_lambda2"] = f_eval(lam2, ell)
    measured["kappa_proof_bound"] = (3.0 - measured["f_lambda2"]) * shrink / 3.0
    measured["count_G_300"] = interval_count(spec, (1.0 - 300.0 * eps * shrink) * lam2, lam2)
    measured["count_G_stated"] = interval_count(spec, (1.0 - eps * shrink / C1) * lam2, lam2)
    corr = f_correspondence(spec_h, spec, ell, f_tol)
    measured["f_max_distance"] = corr.max_distance
    measured["f_multiplicities_ok"] = corr.multiplicities_ok
    measured["lambda_star"] = corr.lam_star
    claims = [
        Claim("connected", "connected", "==", True),
        Claim("max degree 6", "max_degree", "==", 6),
        Claim("gap >= 0.001 alpha0^-ell", "gap", ">=", C1 * shrink),
        Claim("gap >= (3 - f(lambda2)) / (3 alpha0^ell)", "gap", ">=", measured["kappa_proof_bound"]),
        Claim("cluster count (300 eps) >= count of H", "count_G_300", ">=", base["count_H"]),
        Claim("cluster count (300 eps) >= a(eps) N", "count_G_300", ">=", base["a_eps_N"]),
        Claim("cluster count (eps / C1) >= a(eps) N", "count_G_stated", ">=", base["a_eps_N"]),
        Claim("f maps spec(G) above 2 into spec(H)", "f_max_distance", "<=", f_tol),
        Claim("f-preimage multiplicities", "f_multiplicities_ok", "==", True),
    ]
    params = {"N": inst.N, "ell": ell, "eps": eps, "seed": inst.seed}
    tols = {"multiplicity": tol, "f_correspondence": f_tol}
    return BuildResult("approx", g, spec, params, measured, claims, tols, {"correspondence": corr, "H": h})
