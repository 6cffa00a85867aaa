"""Determinant identity for subdividing the edges of a regular spanning subgraph."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..chebyshev import cheb_U
from ..errors import NotRegular, SizeMismatch
from ..graphcore import EdgeSelection, Graph, overlay, subdivide


@dataclass
class PathlenSample:
    x: float
    log_lhs: float
    log_rhs: float
    sign_lhs: float
    sign_rhs: float

    @property
    def rel_error(self) -> float:
        return abs(np.expm1(self.log_lhs - self.log_rhs))


@dataclass
class PathlenCheck:
    samples: list
    tol: float
    sign: int

    @property
    def max_rel_error(self) -> float:
        return max(s.rel_error for s in self.samples)

    @property
    def ok(self) -> bool:
        return all(
            s.rel_error <= self.tol and s.sign_lhs == self.sign * s.sign_rhs for s in self.samples
        )


def pathlen_sides(h1: Graph, h2: Graph, m: int, x: float) -> PathlenSample:
    """log|det| and sign of both sides at x.

    Left: det(A_G - 2x I) for G = h1 + (h2 with each edge an m-edge path).
    Right: U^e det(A_1 - (2x - d V / U) I + A_2 / U), with U = U_{m-1}(x),
    V = U_{m-2}(x) and e the edge count of h2.
    """
    if h1.n != h2.n:
        raise SizeMismatch("h1 and h2 must share the vertex set")
    deg = h2.degrees()
    if h2.has_loops() or not np.all(deg == deg[0]):
        raise NotRegular("h2 must be regular without loops")
    d = int(deg[0]) if deg.size else 0
    g = subdivide(overlay(h1, h2), EdgeSelection.from_graph(h2), m)
    sl, ll = np.linalg.slogdet(g.adjacency_matrix() - 2.0 * x * np.eye(g.n))
    U = cheb_U(m - 1, x)
    V = cheb_U(m - 2, x)
    e = h2.total_weight
    mat = h1.adjacency_matrix() - (2.0 * x - d * V / U) * np.eye(h1.n) + h2.adjacency_matrix() / U
    sm, lm = np.linalg.slogdet(mat)
    sr = sm * np.sign(U) ** e
    return PathlenSample(float(x), float(ll), float(lm + e * np.log(abs(U))), float(sl), float(sr))


def verify_pathlen_identity(h1: Graph, h2: Graph, m: int, x_samples, tol: float = 1e-8) -> PathlenCheck:
    """Both sides agree in magnitude and differ by the sign (-1)^((m-1) e)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    sign = -1 if ((m - 1) * h2.total_weight) % 2 else 1
    samples = [pathlen_sides(h1, h2, m, float(x)) for x in x_samples]
    return PathlenCheck(samples, tol, sign)
