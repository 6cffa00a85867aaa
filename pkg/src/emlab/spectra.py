"""Dense adjacency spectra, multiplicity clustering and interval counts."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import BadInterval, SizeCap, TooSmall
from .graphcore import Graph

DEFAULT_SIZE_CAP = 20000


def size_cap() -> int:
    env = os.environ.get("EMLAB_SIZE_CAP")
    return int(env) if env else DEFAULT_SIZE_CAP


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues sorted descending.

    ``residual_bound`` bounds max ||A v - lam v|| / ||A||_2 over the computed
    pairs; it is NaN when the spectrum was not produced by the solver.
    """

    values: np.ndarray
    residual_bound: float = float("nan")
    source_n: int = -1

    def __post_init__(self):
        vals = np.sort(np.asarray(self.values, dtype=np.float64))[::-1].copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if self.source_n < 0:
            object.__setattr__(self, "source_n", vals.size)

    def __len__(self) -> int:
        return self.values.size

    @property
    def lambda1(self) -> float:
        return float(self.values[0])

    @property
    def lambda2(self) -> float:
        return float(self.values[1])


def eigenvalues(g: Graph, *, cap: int | None = None, residual: bool = True) -> Spectrum:
    """Full spectrum via LAPACK ``syevd``; deterministic for fixed input."""
    cap = size_cap() if cap is None else cap
    if g.n < 1:
        raise TooSmall("graph has no vertices")
    if g.n > cap:
        raise SizeCap(f"n = {g.n} exceeds the size cap {cap}")
    a = g.adjacency_matrix()
    if not residual:
        return Spectrum(np.linalg.eigvalsh(a), source_n=g.n)
    w, vecs = np.linalg.eigh(a)
    norm = max(abs(w[0]), abs(w[-1]), 1e-300)
    # columnwise residuals, in blocks to keep memory bounded
    worst = 0.0
    step = 512
    for lo in range(0, g.n, step):
        v = vecs[:, lo:lo + step]
        r = a @ v - v * w[lo:lo + step]
        worst = max(worst, float(np.max(np.linalg.norm(r, axis=0))))
    return Spectrum(w, worst / norm, g.n)


def default_tol(s: Spectrum) -> float:
    return max(1e-8, 1e-12 * len(s) * abs(s.lambda1))


def spectral_gap(s: Spectrum) -> float:
    if len(s) < 2:
        raise TooSmall("spectral gap needs at least two eigenvalues")
    return float(s.values[0] - s.values[1])


@dataclass(frozen=True)
class MultiplicityReport:
    target: float
    tolerance: float
    count: int
    cluster_min: float
    cluster_max: float
    separation: float

    @property
    def ambiguous(self) -> bool:
        return self.count > 0 and not self.separation > self.tolerance

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "tolerance": self.tolerance,
            "count": self.count,
            "cluster_min": self.cluster_min,
            "cluster_max": self.cluster_max,
            "separation": self.separation,
            "ambiguous": self.ambiguous,
        }


def multiplicity(s: Spectrum, target: float, tol: float | None = None) -> MultiplicityReport:
    tol = default_tol(s) if tol is None else tol
    if not tol > 0:
        raise ValueError("tol must be positive")
    vals = s.values
    inside = np.abs(vals - target) <= tol
    count = int(inside.sum())
    if count == 0:
        rest = np.abs(vals - target)
        sep = float(rest.min()) if rest.size else float("inf")
        return MultiplicityReport(target, tol, 0, float("nan"), float("nan"), sep)
    cmin, cmax = float(vals[inside].min()), float(vals[inside].max())
    out = vals[~inside]
    if out.size:
        sep = float(min(np.min(np.abs(out - cmin)), np.min(np.abs(out - cmax))))
    else:
        sep = float("inf")
    return MultiplicityReport(float(target), tol, count, cmin, cmax, sep)


def second_multiplicity(s: Spectrum, tol: float | None = None) -> MultiplicityReport:
    if len(s) < 2:
        raise TooSmall("no second eigenvalue")
    return multiplicity(s, s.lambda2, tol)


def interval_count(s: Spectrum, a: float, b: float) -> int:
    """m[a, b]: eigenvalues in the closed interval, with multiplicity."""
    if not a <= b:
        raise BadInterval(f"empty interval [{a}, {b}]")
    return int(np.count_nonzero((s.values >= a) & (s.values <= b)))


def histogram(s: Spectrum, lo: float, hi: float, bins: int, snap: float | None = None) -> np.ndarray:
    """Counts per bin [e_i, e_{i+1}), the last bin closed.

    Values within ``snap`` (default: the clustering tolerance) of a bin edge
    are moved onto it, so round-off cannot split an exact eigenvalue that
    sits on an edge.
    """
    if not lo < hi or bins < 1:
        raise BadInterval(f"bad histogram range [{lo}, {hi}] with {bins} bins")
    snap = default_tol(s) if snap is None else snap
    edges = np.linspace(lo, hi, bins + 1)
    vals = s.values.copy()
    if snap > 0:
        pos = np.clip(np.searchsorted(edges, vals), 1, bins)
        near = np.where(vals - edges[pos - 1] < edges[pos] - vals, edges[pos - 1], edges[pos])
        hit = np.abs(vals - near) <= snap
        vals[hit] = near[hit]
    counts, _ = np.histogram(vals, bins=edges)
    return counts


def spectra_match(
    s1: Spectrum,
    s2: Spectrum,
    *,
    scale: float = 1.0,
    shift: float = 0.0,
    pad_value: float = 0.0,
    pad_count: int = 0,
    tol: float = 1e-8,
) -> bool:
    """Is spec(s2) equal to (scale * spec(s1) + shift) plus pad_count copies of pad_value?"""
    lhs = np.concatenate([scale * s1.values + shift, np.full(pad_count, pad_value)])
    if lhs.size != len(s2):
        return False
    return bool(np.max(np.abs(np.sort(lhs) - np.sort(s2.values)), initial=0.0) <= tol)


def write_csv(s: Spectrum, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(to_csv(s))


def to_csv(s: Spectrum) -> str:
    lines = ["index,eigenvalue"]
    lines += [f"{i},{v:.16e}" for i, v in enumerate(s.values.tolist())]
    return "\n".join(lines) + "\n"
