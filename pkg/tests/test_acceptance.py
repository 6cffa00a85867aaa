"""End-to-end acceptance checks; each prints one PASS/FAIL line."""

import json
import math
import time

import numpy as np
import pytest

from emlab.algebra import (
    GeneratingSet,
    GroupAction,
    double_coset_count,
    expected_order,
    induced_character_norm,
    make_group,
    multiplication_action,
    orbit_count,
    parse_group,
    quotient_preimage_sl2,
)
from emlab.chebyshev import ALPHA0, f_inverse
from emlab.cli import main
from emlab.constructions import (
    ApproxInstance,
    CayleyGeneralInstance,
    build_approx,
    build_bounded,
    build_cayley_general,
    build_sl2_cayley,
    sample_good_H,
    search_generating_set,
    verify_f_correspondence,
    verify_pathlen_identity,
)
from emlab.graphcore import Graph, cayley_graph, petersen_graph
from emlab.harness import friedman_check, km_check, run_lemmas
from emlab.spectra import eigenvalues, spectra_match, spectral_gap


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}  [{detail}]")
        assert ok, f"criterion {number} failed: {detail}"
    return emit


def test_01_two_double_coset_instance(verdict):
    start = time.perf_counter()
    aff = make_group("affine", 5)
    S = GeneratingSet.from_values(aff, [(2, 0), (3, 0), (4, 0)])
    res = build_cayley_general(CayleyGeneralInstance(aff, S, aff.translation(1)))
    elapsed = time.perf_counter() - start
    m = res.measured
    tol = res.tolerances["multiplicity"]
    ok = (
        m["n"] == 20 and m["degree"] == 5 and m["min_degree"] == 5 and m["max_degree"] == 5
        and m["connected"] and m["multiplicity"] >= 4 and m["separation"] > 10 * tol
        and elapsed < 1.0
    )
    verdict(1, "affine(5) over units(5), S={2,3,4}, t=1", ok,
            f"n={m['n']} deg={m['degree']} mult={m['multiplicity']} sep={m['separation']:.3g} "
            f"tol={tol:.1e} t={elapsed:.2f}s")


def test_02_bounded_degree(verdict):
    lines, ok = [], True
    for q, m_expected, mult in [(5, 4, 4), (13, 6, 12)]:
        start = time.perf_counter()
        res = build_bounded(q)
        elapsed = time.perf_counter() - start
        m = res.measured
        this = (
            res.params["m"] == m_expected and m["n"] == q * (q - 1) * m_expected
            and m["max_degree"] == 4 and m["multiplicity"] >= mult
            and m["cluster_width"] < 1e-7 * m["lambda1"] and res.report().passed
            and (q != 13 or elapsed < 30)
        )
        ok &= this
        lines.append(f"q={q} m={res.params['m']} n={m['n']} deg={m['max_degree']} "
                     f"mult={m['multiplicity']} width={m['cluster_width']:.1e} t={elapsed:.2f}s")
    verdict(2, "degree-4 subdivided affine Cayley graphs", ok, "; ".join(lines))


def test_03_sl2_pipeline(verdict):
    start = time.perf_counter()
    res = build_sl2_cayley(3)
    elapsed = time.perf_counter() - start
    m = res.measured
    S = res.extras["S"]
    gap = spectral_gap(eigenvalues(cayley_graph(res.extras["pi"], S)))
    ok = (
        gap >= 4 - 1e-9 and m["n"] == 216 and m["multiplicity"] >= 8
        and 8 >= 216 ** 0.4 - 1 and res.report().passed and elapsed < 300
    )
    verdict(3, "SL(2,3) x| F_3^2 pipeline", ok,
            f"route={m['route']} |S|={len(S)} gap={gap:.6g} n={m['n']} deg={m['degree']} "
            f"mult={m['multiplicity']} n^0.4-1={216 ** 0.4 - 1:.4f} t={elapsed:.2f}s")


def _regular(n, d, rng):
    edges = []
    for _ in range(d):
        p = rng.permutation(n)
        edges += [(int(p[i]), int(p[i + 1])) for i in range(0, n, 2)]
    return Graph.from_edges(n, edges)


def test_04_pathlen_identity(verdict):
    rng = np.random.default_rng(2024)
    worst, fails = 0.0, 0
    for trial in range(20):
        n = int(rng.choice([4, 6, 8, 10]))
        d = trial % 3 + 1
        m = int(rng.integers(2, 7))
        h1 = Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.35])
        h2 = _regular(n, d, rng)
        xs = rng.uniform(1.05, 2.5, 3)
        chk = verify_pathlen_identity(h1, h2, m, xs, tol=1e-8)
        worst = max(worst, chk.max_rel_error)
        fails += not chk.ok
    verdict(4, "subdivision determinant identity, 20 triples x 3 abscissae", fails == 0,
            f"max rel error {worst:.2e}, failures {fails}")


def test_05_f_correspondence(verdict):
    start = time.perf_counter()
    corr = verify_f_correspondence(petersen_graph(), 11)
    elapsed = time.perf_counter() - start
    at3, at1 = corr.multiplicity_at(3.0), corr.multiplicity_at(1.0)
    ok = corr.max_distance < 1e-6 and at3 >= 1 and at1 >= 5 and elapsed < 30
    verdict(5, "Petersen, ell=11: spectrum above 2 maps into spec(H)", ok,
            f"max |f(lam)-mu|={corr.max_distance:.2e} over {corr.checked} eigenvalues; "
            f"mult at f^-1(3)={at3} (lam={f_inverse(3.0, 11):.10f}), at f^-1(1)={at1}; t={elapsed:.1f}s")


def test_06_sampled_approx(verdict):
    start = time.perf_counter()
    inst = sample_good_H(50, 1.0, seed=0, ell=11)
    res = build_approx(inst)
    elapsed = time.perf_counter() - start
    m = res.measured
    bound = 0.001 * ALPHA0 ** -11
    ok = (
        m["connected_H"] and m["gap_H"] >= 0.01 and m["connected"]
        and m["gap"] >= bound and m["count_G_300"] >= m["count_H"] and elapsed < 120
    )
    verdict(6, "sampled H (N=50), ell=11, eps=1", ok,
            f"gap(H)={m['gap_H']:.4f} kappa(G)={m['gap']:.3e} >= {bound:.3e} (margin {m['kappa_margin']:.3e}); "
            f"count G={m['count_G_300']} >= count H={m['count_H']}; tries={m.get('tries', inst.measured['tries'])} "
            f"t={elapsed:.1f}s")


def test_07_lemma_suite(verdict):
    measured, claims = run_lemmas(range(11, 16), range(4, 11))
    for c in claims:
        c.evaluate(measured)
    bad = [c.name for c in claims if not c.satisfied]
    verdict(7, "transfer-function and Chebyshev inequalities on grids", not bad,
            f"{len(claims)} clauses, fd max rel {measured['fd_max_rel']:.1e}" + (f", failed: {bad}" if bad else ""))


def test_08_algebra_suite(verdict):
    details, ok = [], True
    for q in (5, 7, 11, 13):
        aff = make_group("affine", q)
        units, vec = make_group("units", q), make_group("vec1", q)
        counts = (
            double_coset_count(aff, aff.units_subgroup()),
            induced_character_norm(aff, aff.units_subgroup()),
            orbit_count(multiplication_action(units, vec)),
        )
        ok &= len(set(counts)) == 1 and aff.order == q * (q - 1)
        details.append(f"affine({q}) {counts}")
    for desc in ("semidirect:sl2:3:vec2", "semidirect:units:7:vec1"):
        g = parse_group(desc)
        pi = g.complement()
        counts = (
            double_coset_count(g, pi),
            induced_character_norm(g, pi),
            orbit_count(GroupAction(g.actor, g.action_table)),
        )
        ok &= len(set(counts)) == 1
        details.append(f"{desc} {counts}")
    for kind in ("sl2", "psl2", "affine", "units"):
        for p in (3, 5, 7, 11):
            ok &= make_group(kind, p).order == expected_order(kind, p)
    closed = all(make_group("sl2", p).order == p * (p * p - 1) for p in (3, 5, 7))
    ok &= closed
    # lift doubling on PSL(2,3) and PSL(2,5)
    lift_ok = True
    for p in (3, 5):
        psl, sl = make_group("psl2", p), make_group("sl2", p)
        rng = np.random.default_rng(p)
        for _ in range(3):
            others = np.setdiff1d(np.arange(psl.order), [psl.identity])
            S0 = GeneratingSet.symmetric_closure(psl, rng.choice(others, 3, replace=False))
            S = quotient_preimage_sl2(S0, sl)
            lift_ok &= spectra_match(eigenvalues(cayley_graph(psl, S0)), eigenvalues(cayley_graph(sl, S)),
                                     scale=2, pad_count=psl.order, tol=1e-9)
    ok &= lift_ok
    verdict(8, "double cosets = induced norm = orbits; orders; lift doubling", ok,
            "; ".join(details) + f"; lift doubling {lift_ok}")


@pytest.mark.slow
def test_09_empirical_sampler(verdict):
    km_meas, km_claims = km_check(2000, 5, 40, seed=0)
    fr_meas, fr_claims = friedman_check(500, 10, seed=0)
    km_ok = km_claims[0].evaluate(km_meas).satisfied
    fr_ok = fr_claims[0].evaluate(fr_meas).satisfied
    verdict(9, "empirical: Kesten-McKay fit and lambda2 near 2 sqrt 2", km_ok and fr_ok,
            f"L1={km_meas['l1_distance']:.4f} (< 0.05); hits={fr_meas['hits']}/10 with "
            f"lambda2 <= {fr_meas['bound']:.4f} (need 8)")


FIXTURES = [
    ["bounded", "--q", "5"],
    ["cayley", "--q", "3", "--seed", "1"],
    ["approx", "--petersen", "--ell", "11"],
    ["approx", "--n", "20", "--seed", "3"],
    ["km", "--n", "200", "--samples", "2", "--bins", "10", "--seed", "5"],
    ["friedman", "--n", "100", "--samples", "3", "--seed", "5", "--required", "0"],
    ["lemmas", "--ell", "11,12", "--m", "4,5"],
]


def test_10_determinism(verdict, capsys, tmp_path):
    same = []
    for argv in FIXTURES:
        outs = []
        for k in range(2):
            path = tmp_path / f"r{k}.json"
            main(argv + ["--out", str(path)])
            lines = [l for l in path.read_text().splitlines() if not l.lstrip().startswith('"wall_clock"')]
            outs.append("\n".join(lines))
            json.loads(path.read_text())
        same.append(outs[0] == outs[1])
    verdict(10, "byte-identical reports on rerun", all(same),
            ", ".join(f"{a[0]}:{'same' if s else 'DIFF'}" for a, s in zip(FIXTURES, same)))
