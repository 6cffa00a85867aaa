"""Sampler checks against the limiting spectral law of random 3-regular graphs.

These are statistical sanity checks on the pairing-model sampler; the
thresholds are parameters, and the claims they produce are labeled empirical.
"""

from __future__ import annotations

import numpy as np

from ..constructions.approx import ROOT8, km_mass, random_regular_graph, sample_seed
from ..report import EMPIRICAL, Claim
from ..spectra import eigenvalues, histogram

KM_THRESHOLD = 0.05
FRIEDMAN_SLACK = 0.15
FRIEDMAN_REQUIRED = 8


def km_bin_masses(lo: float, hi: float, bins: int) -> np.ndarray:
    edges = np.linspace(lo, hi, bins + 1)
    return np.array([km_mass(a, b) for a, b in zip(edges[:-1], edges[1:])])


def _sample_spectrum(n: int, seed: int, idx: int):
    return eigenvalues(random_regular_graph(n, sample_seed(seed, idx)), residual=False)


def km_check(n: int, samples: int = 5, bins: int = 40, seed: int = 0, threshold: float = KM_THRESHOLD):
    """Average normalized histogram over [-2 sqrt 2, 2 sqrt 2] versus per-bin density mass.

    Returns (measured, claims). The top eigenvalue 3 lies outside the range,
    so each sample leaks mass 1/n.
    """
    if n < 100 or n % 2:
        raise ValueError("n must be even and at least 100")
    if samples < 1 or bins < 1:
        raise ValueError("samples and bins must be positive")
    emp = np.zeros(bins)
    lam2 = []
    for idx in range(samples):
        spec = _sample_spectrum(n, seed, idx)
        emp += histogram(spec, -ROOT8, ROOT8, bins) / n
        lam2.append(spec.lambda2)
    emp /= samples
    theo = km_bin_masses(-ROOT8, ROOT8, bins)
    dist = float(np.abs(emp - theo).sum())
    measured = {
        "n": n,
        "samples": samples,
        "bins": bins,
        "l1_distance": dist,
        "empirical_mass": float(emp.sum()),
        "density_mass": float(theo.sum()),
        "max_lambda2": float(max(lam2)),
    }
    claims = [Claim("Kesten-McKay L1 distance", "l1_distance", "<", threshold, kind=EMPIRICAL)]
    return measured, claims


def friedman_check(
    n: int = 500,
    samples: int = 10,
    seed: int = 0,
    slack: float = FRIEDMAN_SLACK,
    required: int = FRIEDMAN_REQUIRED,
):
    """Count samples with lambda2 <= 2 sqrt 2 + slack."""
    if n < 4 or n % 2:
        raise ValueError("n must be even and at least 4")
    lam2 = [_sample_spectrum(n, seed, idx).lambda2 for idx in range(samples)]
    bound = ROOT8 + slack
    hits = sum(x <= bound for x in lam2)
    measured = {
        "n": n,
        "samples": samples,
        "bound": bound,
        "hits": int(hits),
        "lambda2_values": [float(x) for x in lam2],
        "max_lambda2": float(max(lam2)),
    }
    claims = [Claim("lambda2 <= 2 sqrt 2 + slack", "hits", ">=", required, kind=EMPIRICAL,
                    note=f"required in {required} of {samples} samples")]
    return measured, claims

