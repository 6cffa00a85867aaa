"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--scale 1.0]

Prints one row per kernel with the best-of-N wall time of each backend and
the speedup, after checking that both backends agree on the inputs.
"""

import argparse
import timeit

import numpy as np

from emlab import _kernels_py
from emlab.kernels import compiled


def cases(scale: float):
    rng = np.random.default_rng(0)
    n = int(200_000 * scale)
    src = rng.integers(0, n, n)
    dst = rng.integers(0, n, n)
    x = rng.uniform(-1, 1, int(100_000 * scale))
    # a simple 3-regular pairing (ring plus diameters) so the whole list is scanned
    m = 2 * int(10_000 * scale)
    i = np.arange(m)
    edges = np.concatenate([np.stack([i, (i + 1) % m], 1), np.stack([i[: m // 2], i[: m // 2] + m // 2], 1)])
    stubs = edges[rng.permutation(len(edges))].ravel()
    return {
        "component_labels": lambda mod: mod.component_labels(n, src, dst),
        "cheb_t (m=50)": lambda mod: mod.cheb_t(50, x),
        "cheb_u (m=50)": lambda mod: mod.cheb_u(50, x),
        "pair_stubs": lambda mod: mod.pair_stubs(m, stubs),
    }


def same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return a.shape == b.shape and np.allclose(a, b, rtol=1e-12, atol=1e-12)
    return a == b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--scale", type=float, default=1.0, help="multiplies every input size")
    args = ap.parse_args(argv)
    if compiled is None:
        print("compiled extension not built; only the Python backend is available")
    print(f"{'kernel':<20} {'python (s)':>12} {'compiled (s)':>13} {'speedup':>9}")
    for name, fn in cases(args.scale).items():
        t_py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        if compiled is None:
            print(f"{name:<20} {t_py:>12.4f} {'-':>13} {'-':>9}")
            continue
        if not same(fn(_kernels_py), fn(compiled)):
            raise SystemExit(f"backends disagree on {name}")
        t_c = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat))
        print(f"{name:<20} {t_py:>12.4f} {t_c:>13.4f} {t_py / t_c:>8.1f}x")


if __name__ == "__main__":
    main()
