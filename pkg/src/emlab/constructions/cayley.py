"""Cayley graphs on Pi x| V with a large second eigenvalue multiplicity.

Given a symmetric S generating Pi with gap(Cay(Pi, S)) >= 4, two double
cosets of Pi in Gamma and a non-involution t outside Pi, the Cayley graph
Cay(Gamma, S + {t, t^-1}) has second multiplicity at least |Gamma|/|Pi| - 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..algebra import (
    PSL2,
    SL2,
    CyclicGroup,
    DirectProduct,
    FiniteGroup,
    GeneratingSet,
    SemidirectProduct,
    default_action,
    double_coset_count,
    generated_subgroup,
    make_group,
    make_semidirect,
    quotient_preimage_sl2,
)
from ..errors import HypothesisFailure, InvalidGeneratingSet, SearchExhausted
from ..graphcore import cayley_graph
from ..report import Claim
from ..spectra import eigenvalues, spectra_match, spectral_gap
from .common import BuildResult, measure, multiplicity_claims

GAP_SLACK = 1e-9


@dataclass
class CayleyGeneralInstance:
    gamma: FiniteGroup
    S: object  # GeneratingSet on gamma, or raw indices (validated on build)
    t: int
    gap_target: float = 4.0

    def s_indices(self) -> list:
        if isinstance(self.S, GeneratingSet):
            return list(self.S.indices)
        return sorted({int(i) for i in self.S})


def _cay_gap(pi: FiniteGroup, S: GeneratingSet) -> float:
    return spectral_gap(eigenvalues(cayley_graph(pi, S), residual=False))


def check_hypotheses(inst: CayleyGeneralInstance) -> tuple[list, dict]:
    """Evaluate each hypothesis; returns ([(name, ok, detail)], measurements)."""
    gamma, t = inst.gamma, int(inst.t)
    idx = inst.s_indices()
    out, info = [], {}
    inv = set(gamma.inv_idx(idx).tolist()) if idx else set()
    sym = bool(idx) and inv == set(idx) and gamma.identity not in idx
    out.append(("S symmetric", sym, "S must equal S^-1 and avoid the identity"))
    pi = None
    if sym:
        S = GeneratingSet(gamma, idx)
        pi = generated_subgroup(S)
        info["pi_order"] = pi.order
        gap = _cay_gap(pi, S.restricted_to(pi))
        info["pi_gap"] = gap
        out.append(("gap >= 4", gap >= inst.gap_target - GAP_SLACK,
                    f"gap(Cay(Pi, S)) = {gap:.12g}"))
        dc = double_coset_count(gamma, pi)
        info["double_cosets"] = dc
        out.append(("double cosets = 2", dc == 2, f"|Pi\\Gamma/Pi| = {dc}"))
    outside = pi is None or not pi.contains_parent_index(t)
    out.append(("t outside Π", outside, "t must not lie in Pi = <S>"))
    out.append(("t ≠ t⁻¹", gamma.inv(t) != t, "t must not be an involution"))
    return out, info


def build_cayley_general(inst: CayleyGeneralInstance, tol: float | None = None) -> BuildResult:
    checks, info = check_hypotheses(inst)
    failed = [(name, detail) for name, ok, detail in checks if not ok]
    if failed:
        raise HypothesisFailure(failed[0][0], "; ".join(f"{n}: {d}" for n, d in failed))
    gamma = inst.gamma
    S = GeneratingSet(gamma, inst.s_indices())
    full = S.union([inst.t, gamma.inv(inst.t)])
    g = cayley_graph(gamma, full)
    spec, tol, measured = measure(g, tol)
    measured.update(info)
    measured["degree"] = len(full)
    bound = gamma.order // info["pi_order"] - 1
    claims = [
        Claim("connected", "connected", "==", True),
        Claim("regular of degree |S| + 2", "min_degree", "==", len(S) + 2),
        *multiplicity_claims(bound, "|Gamma|/|Pi| - 1"),
    ]
    params = {"gamma": gamma.descriptor, "S_size": len(S), "t": int(inst.t)}
    return BuildResult("cayley-general", g, spec, params, measured, claims, {"multiplicity": tol})


def _atoms(pi: FiniteGroup) -> list:
    """Symmetric building blocks: involutions alone, other elements with their inverse."""
    inv = pi.inv_idx(np.arange(pi.order))
    atoms = []
    for i in range(pi.order):
        j = int(inv[i])
        if i == pi.identity or j < i:
            continue
        atoms.append((i,) if i == j else (i, j))
    return atoms


def _combos(atoms: list, size: int):
    singles = [a for a in atoms if len(a) == 1]
    pairs = [a for a in atoms if len(a) == 2]
    for k in range(min(len(pairs), size // 2), -1, -1):
        r = size - 2 * k
        if r > len(singles):
            continue
        for ps in itertools.combinations(pairs, k):
            for ss in itertools.combinations(singles, r):
                yield sorted(x for a in ps + ss for x in a)


def count_symmetric_sets(pi: FiniteGroup, size: int) -> int:
    atoms = _atoms(pi)
    n1 = sum(len(a) == 1 for a in atoms)
    n2 = len(atoms) - n1
    return sum(math.comb(n2, k) * math.comb(n1, size - 2 * k) for k in range(size // 2 + 1))


@dataclass
class SearchResult:
    S: GeneratingSet
    gap: float
    tried: int
    exhaustive: bool


def search_generating_set(
    pi: FiniteGroup,
    size: int,
    gap_target: float,
    budget: int,
    seed: int = 0,
    *,
    strict: bool = False,
) -> SearchResult | None:
    """Find a symmetric S of the given size with gap(Cay(pi, S)) >= gap_target.

    With ``strict`` the gap must exceed the target. When all candidates fit in
    the budget they are tried in a fixed order; otherwise candidates are drawn
    at random from a generator seeded with ``seed``.
    """
    if budget <= 0 or size < 1:
        return None
    total = count_symmetric_sets(pi, size)
    exhaustive = total <= budget

    def ok(gap):
        return gap > gap_target + GAP_SLACK if strict else gap >= gap_target - GAP_SLACK

    def candidates():
        if exhaustive:
            yield from _combos(_atoms(pi), size)
            return
        rng = np.random.default_rng(seed)
        atoms = _atoms(pi)
        seen = set()
        for _ in range(50 * budget):
            chosen, left = [], size
            for k in rng.permutation(len(atoms)):
                if len(atoms[k]) <= left:
                    chosen += atoms[k]
                    left -= len(atoms[k])
                if left == 0:
                    break
            key = tuple(sorted(chosen))
            if left == 0 and key not in seen:
                seen.add(key)
                yield list(key)

    tried = 0
    for cand in candidates():
        if tried >= budget:
            break
        tried += 1
        S = GeneratingSet(pi, cand)
        gap = _cay_gap(pi, S)
        if ok(gap):
            return SearchResult(S, gap, tried, exhaustive)
    return None


def augment_gap(pi: FiniteGroup, S: GeneratingSet, N: int) -> tuple[DirectProduct, GeneratingSet]:
    """(Pi x Z_N, S x Z_N): the spectrum scales by N and gains |Pi|(N - 1) zeros."""
    if N < 1:
        raise ValueError("N must be >= 1")
    prod = DirectProduct(pi, CyclicGroup(N))
    idx = [prod.pair(s, z) for s in S.indices for z in range(N)]
    return prod, GeneratingSet(prod, idx)


def _gamma_for(actor: FiniteGroup, q: int) -> SemidirectProduct:
    vec = make_group("vec2", q)
    return make_semidirect(actor, vec, default_action(actor, vec))


def _lift_check(sl2: SL2, S: GeneratingSet, S0: GeneratingSet) -> tuple[bool, int]:
    big = eigenvalues(cayley_graph(sl2, S), residual=False)
    small = eigenvalues(cayley_graph(S0.group, S0), residual=False)
    pad = sl2.order - S0.group.order
    return spectra_match(small, big, scale=2.0, pad_count=pad, tol=1e-9), pad


def build_sl2_cayley(
    q: int,
    S0: GeneratingSet | None = None,
    *,
    budget: int = 1000,
    seed: int = 0,
    route: str = "auto",
    tol: float | None = None,
) -> BuildResult:
    """Cayley graph on SL(2,q) x| F_q^2 with second multiplicity >= q^2 - 1.

    Routes: ``lift`` pulls back a PSL(2,q) set of size 8 with gap > 2,
    ``direct`` searches SL(2,q) for 16 elements with gap >= 4, ``augment``
    takes any connected SL(2,q) set and multiplies its gap with a cyclic factor.
    """
    sl2 = make_group("sl2", q)
    notes: dict = {"route": None}
    S = pi_group = None
    lift_ok = None

    if S0 is not None:
        if not isinstance(S0.group, PSL2) or S0.group.field.p != q:
            raise InvalidGeneratingSet("S0 must live on PSL(2, q)")
        gap0 = _cay_gap(S0.group, S0)
        if not gap0 > 2 + GAP_SLACK:
            raise HypothesisFailure("gap(Cay(PSL(2,q), S0)) > 2", f"measured {gap0:.12g}")
        S, pi_group, notes["route"], notes["psl_gap"] = quotient_preimage_sl2(S0, sl2), sl2, "lift", gap0
        lift_ok, notes["lift_padding"] = _lift_check(sl2, S, S0)

    if S is None and route in ("auto", "lift"):
        psl2 = make_group("psl2", q)
        hit = search_generating_set(psl2, 8, 2.0, budget, seed, strict=True)
        if hit is not None:
            S = quotient_preimage_sl2(hit.S, sl2)
            pi_group, notes["route"], notes["psl_gap"] = sl2, "lift", hit.gap
            notes["search_tried"] = hit.tried
            lift_ok, notes["lift_padding"] = _lift_check(sl2, S, hit.S)

    if S is None and route in ("auto", "direct"):
        hit = search_generating_set(sl2, 16, 4.0, budget, seed)
        if hit is not None:
            S, pi_group, notes["route"] = hit.S, sl2, "direct"
            notes["search_tried"] = hit.tried

    if S is None and route in ("auto", "augment"):
        base = None
        for size in range(2, min(sl2.order - 1, 16) + 1):
            base = search_generating_set(sl2, size, 0.0, budget, seed, strict=True)
            if base is not None:
                break
        if base is not None:
            N = max(1, math.ceil((4.0 - GAP_SLACK) / base.gap))
            pi_group, S = augment_gap(sl2, base.S, N)
            notes.update(route="augment", augment_N=N, base_gap=base.gap, base_size=len(base.S))

    if S is None:
        raise SearchExhausted(f"no generating set found for q = {q} within budget {budget}")

    gamma = _gamma_for(pi_group, q)
    S_gamma = GeneratingSet(gamma, gamma.embed_actor(list(S.indices)))
    vec = gamma.normal
    e1 = vec.index((1, 0))
    t = gamma.pair(pi_group.identity, e1)
    res = build_cayley_general(CayleyGeneralInstance(gamma, S_gamma, t), tol)

    n = res.graph.n
    m = res.measured
    m["route"] = notes["route"]
    m["S_size"] = len(S)
    m["lift_spectrum_doubling"] = lift_ok
    m["n_pow_2_5_minus_1"] = n ** 0.4 - 1
    for k in ("psl_gap", "augment_N", "base_gap", "search_tried", "lift_padding"):
        if k in notes:
            m[k] = notes[k]
    res.claims += [
        Claim("degree 18", "degree", "==", 18, applicable=len(S) == 16,
              note="only for the 16 + 2 generator routes"),
        Claim("multiplicity >= q^2 - 1", "multiplicity", ">=", q * q - 1),
        Claim("multiplicity >= n^(2/5) - 1", "multiplicity", ">=", n ** 0.4 - 1),
        Claim("lift doubles the spectrum", "lift_spectrum_doubling", "==", True,
              applicable=lift_ok is not None),
    ]
    res.kind = "sl2-cayley"
    res.params = {"q": q, "budget": budget, "seed": seed, "route": route}
    res.extras = {"gamma": gamma, "pi": pi_group, "S": S, "t": t}
    return res


def default_t(gamma: FiniteGroup) -> int:
    """Unit translation for affine(q); (identity, e1) for a semidirect product."""
    if isinstance(gamma, SemidirectProduct):
        return gamma.pair(gamma.actor.identity, gamma.normal.index((1,) + (0,) * (gamma.normal.dim - 1)))
    if hasattr(gamma, "translation"):
        return gamma.translation(1)
    raise ValueError(f"no default t for {gamma.descriptor}")

