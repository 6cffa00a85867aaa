"""Bounded-degree construction: subdivide the t-edges of a Cayley graph.

Over the affine group of F_q with Pi = F_q^x = <s>, S = {s, s^-1} and t the
unit translation, the result has degree 4, q(q-1)m vertices and second
multiplicity at least q - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..algebra import FiniteGroup, GeneratingSet, make_group
from ..chebyshev import y0
from ..errors import DomainError, HypothesisFailure
from ..graphcore import EdgeSelection, cayley_graph, subdivide
from ..report import Claim
from .cayley import CayleyGeneralInstance, check_hypotheses
from .common import BuildResult, measure, multiplicity_claims


def kappa_affine(q: int) -> float:
    """Spectral gap of the cycle Cay(F_q^x, {s, s^-1})."""
    return 2.0 - 2.0 * math.cos(2.0 * math.pi / (q - 1))


def formula_m(q: int) -> int:
    return math.ceil(2.0 * math.log2(q - 1)) - 2


def default_m(q: int) -> int:
    return max(4, formula_m(q))


@dataclass
class BoundedInstance:
    q: int
    s: int
    t: tuple
    m: int

    @property
    def kappa(self) -> float:
        return kappa_affine(self.q)


def t_edge_selection(gamma: FiniteGroup, t: int) -> EdgeSelection:
    """One unit per pair {g, g t}: the edges generated by t or t^-1."""
    g = np.arange(gamma.order)
    return EdgeSelection.from_pairs(zip(g.tolist(), gamma.right_perm(t).tolist()))


def build_subdivided_cayley(gamma: FiniteGroup, S: GeneratingSet, t: int, m: int, tol=None) -> BuildResult:
    """Cay(gamma, S + {t, t^-1}) with each t-edge replaced by an m-edge path."""
    checks, info = check_hypotheses(CayleyGeneralInstance(gamma, S, t, gap_target=0.0))
    failed = [(n, d) for n, ok, d in checks if not ok and n != "gap >= 4"]
    if failed:
        raise HypothesisFailure(failed[0][0], "; ".join(f"{n}: {d}" for n, d in failed))
    kappa = info["pi_gap"]
    if m < 4:
        raise HypothesisFailure("m >= 4", f"m = {m}")
    if len(S) ** (m - 1) < 4.0 / kappa:
        raise HypothesisFailure("|S|^(m-1) >= 4/kappa", f"{len(S)}^{m - 1} < {4.0 / kappa:.6g}")
    cay = cayley_graph(gamma, S.union([t, gamma.inv(t)]))
    g = subdivide(cay, t_edge_selection(gamma, t), m)
    spec, tol, measured = measure(g, tol)
    measured.update(info)
    measured["kappa"] = kappa
    root = y0(len(S), m)
    measured["y0"] = root
    measured["half_lambda2"] = spec.lambda2 / 2.0
    bound = gamma.order // info["pi_order"] - 1
    claims = [
        Claim("connected", "connected", "==", True),
        Claim("n = |Gamma| m", "n", "==", gamma.order * m),
        Claim("max degree |S| + 2", "max_degree", "==", len(S) + 2),
        *multiplicity_claims(bound, "|Gamma|/|Pi| - 1"),
        Claim("lambda2 / 2 >= y0", "half_lambda2", ">=", root - 1e-9,
              note="second eigenvalue sits at a root y >= y0"),
    ]
    params = {"gamma": gamma.descriptor, "S_size": len(S), "t": int(t), "m": m}
    return BuildResult("subdivided-cayley", g, spec, params, measured, claims, {"multiplicity": tol})


def build_bounded(q: int, m: int | None = None, tol=None) -> BuildResult:
    """Degree-4 instance over affine(q); ``m`` defaults to max(4, ceil(2 log2(q-1)) - 2)."""
    gamma = make_group("affine", q)
    if q < 5:
        raise DomainError("q must be at least 5 so that |S| = 2")
    field = gamma.field
    s = field.primitive_root()
    S = GeneratingSet.from_values(gamma, [(s, 0), (field.inv(s), 0)])
    t = gamma.translation(1)
    m_used = default_m(q) if m is None else m
    res = build_subdivided_cayley(gamma, S, t, m_used, tol)
    n = res.graph.n
    res.measured["sqrt_n_over_log2_n"] = math.sqrt(n / math.log2(n))
    res.measured["kappa_error"] = abs(res.measured["kappa"] - kappa_affine(q))
    on_formula = m_used == formula_m(q)
    res.claims += [
        Claim("n = q(q-1)m", "n", "==", q * (q - 1) * m_used),
        Claim("max degree 4", "max_degree", "==", 4),
        Claim("multiplicity >= q - 1", "multiplicity", ">=", q - 1),
        Claim("multiplicity >= sqrt(n / log2 n)", "multiplicity", ">=", math.sqrt(n / math.log2(n)),
              applicable=on_formula, note="" if on_formula else "m differs from ceil(2 log2(q-1)) - 2"),
        Claim("gap of Cay(Pi, S) = 2 - 2cos(2pi/(q-1))", "kappa_error", "<=", 1e-9),
    ]
    res.kind = "bounded"
    res.params = {"q": q, "m": m_used, "s": s, "t": [1, 1]}
    res.extras = {"instance": BoundedInstance(q, s, (1, 1), m_used)}
    return res
