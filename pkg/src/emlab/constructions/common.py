"""Measurements shared by the builders."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..graphcore import Graph, is_connected, max_degree
from ..report import Claim, VerificationReport
from ..spectra import Spectrum, default_tol, eigenvalues, second_multiplicity, spectral_gap


@dataclass
class BuildResult:
    """A built graph with its spectrum, measurements and the claims to check."""

    kind: str
    graph: Graph
    spectrum: Spectrum
    params: dict
    measured: dict
    claims: list = field(default_factory=list)
    tolerances: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)

    def report(self, seed=None, wall_clock: float = 0.0, params=None) -> VerificationReport:
        """Evaluate the claims against the measurements."""
        return VerificationReport(self.kind, self.params if params is None else params,
                                  self.measured, self.claims, self.tolerances, seed, wall_clock)


def measure(g: Graph, tol: float | None = None, spectrum: Spectrum | None = None):
    """Spectrum plus the standard measurements of a built graph."""
    spec = eigenvalues(g) if spectrum is None else spectrum
    tol = default_tol(spec) if tol is None else tol
    rep = second_multiplicity(spec, tol)
    deg = g.degrees()
    measured = {
        "n": g.n,
        "max_degree": max_degree(g),
        "min_degree": int(deg.min()),
        "connected": is_connected(g),
        "lambda1": spec.lambda1,
        "lambda2": spec.lambda2,
        "gap": spectral_gap(spec),
        "multiplicity": rep.count,
        "cluster_width": rep.cluster_max - rep.cluster_min,
        "separation": rep.separation,
        "ambiguous": rep.ambiguous,
        "residual_bound": spec.residual_bound,
    }
    return spec, tol, measured


def multiplicity_claims(bound, label: str) -> list:
    return [
        Claim(f"multiplicity >= {label}", "multiplicity", ">=", bound),
        Claim("second eigenvalue cluster isolated", "ambiguous", "==", False),
    ]
