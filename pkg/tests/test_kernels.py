import numpy as np
import pytest

from emlab import _kernels_py, kernels


def test_backend_flag_matches_selection():
    assert kernels.BACKEND in ("compiled", "python")
    if kernels.BACKEND == "compiled":
        assert kernels.component_labels is kernels.compiled.component_labels


def test_component_labels_first_appearance(backend):
    src = np.array([0, 3, 4], dtype=np.int64)
    dst = np.array([1, 2, 5], dtype=np.int64)
    labels = backend.component_labels(6, src, dst)
    assert labels.tolist() == [0, 0, 1, 1, 2, 2]


def test_component_labels_isolated(backend):
    labels = backend.component_labels(3, np.empty(0, np.int64), np.empty(0, np.int64))
    assert labels.tolist() == [0, 1, 2]


def test_backends_agree_on_random_graphs(rng):
    if kernels.compiled is None:
        pytest.skip("compiled extension not built")
    for _ in range(20):
        n = int(rng.integers(1, 60))
        k = int(rng.integers(0, 2 * n))
        src = rng.integers(0, n, k).astype(np.int64)
        dst = rng.integers(0, n, k).astype(np.int64)
        a = kernels.compiled.component_labels(n, src, dst)
        b = _kernels_py.component_labels(n, src, dst)
        assert np.array_equal(a, b)


def test_cheb_small_values(backend):
    x = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])
    assert np.allclose(backend.cheb_t(0, x), 1.0)
    assert np.allclose(backend.cheb_t(1, x), x)
    assert np.allclose(backend.cheb_t(2, x), 2 * x * x - 1)
    assert np.allclose(backend.cheb_u(2, x), 4 * x * x - 1)
    assert np.allclose(backend.cheb_u(-1, x), 0.0)
    assert backend.cheb_u(3, np.array([1.0]))[0] == 4.0


def test_cheb_backends_agree(rng):
    if kernels.compiled is None:
        pytest.skip("compiled extension not built")
    x = rng.uniform(-1, 1, 500)
    for m in (0, 1, 5, 40, 200):
        assert np.array_equal(kernels.compiled.cheb_t(m, x), _kernels_py.cheb_t(m, x))
        assert np.array_equal(kernels.compiled.cheb_u(m, x), _kernels_py.cheb_u(m, x))


def test_pair_stubs_rejects_loop_and_multi_edge(backend):
    ok, _, _ = backend.pair_stubs(2, np.array([0, 0, 1, 1], dtype=np.int64))
    assert not ok
    ok, _, _ = backend.pair_stubs(2, np.array([0, 1, 1, 0], dtype=np.int64))
    assert not ok


def test_pair_stubs_sorted_output(backend):
    ok, u, v = backend.pair_stubs(4, np.array([3, 0, 2, 1], dtype=np.int64))
    assert ok
    assert u.tolist() == [0, 1] and v.tolist() == [3, 2]


def test_pair_stubs_backends_agree(rng):
    if kernels.compiled is None:
        pytest.skip("compiled extension not built")
    stubs = np.repeat(np.arange(30, dtype=np.int64), 3)
    for _ in range(50):
        perm = rng.permutation(stubs)
        a = kernels.compiled.pair_stubs(30, perm)
        b = _kernels_py.pair_stubs(30, perm)
        assert a[0] == b[0]
        assert np.array_equal(a[1], b[1]) and np.array_equal(a[2], b[2])


def test_pair_stubs_odd_count(backend):
    with pytest.raises(ValueError):
        backend.pair_stubs(3, np.array([0, 1, 2], dtype=np.int64))


def test_benchmark_runs(capsys):
    import importlib.util
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    mod.main(["--scale", "0.01", "--repeat", "1"])
    out = capsys.readouterr().out
    assert "pair_stubs" in out and "component_labels" in out
