"""Pure-Python fallback for the compiled kernels (same signatures and outputs)."""

import numpy as np


def component_labels(n, src, dst):
    src = np.asarray(src, dtype=np.int64).ravel()
    dst = np.asarray(dst, dtype=np.int64).ravel()
    if src.shape != dst.shape:
        raise ValueError("src and dst differ in length")
    parent = list(range(n))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for a, b in zip(src.tolist(), dst.tolist()):
        if not (0 <= a < n and 0 <= b < n):
            raise IndexError("vertex out of range")
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
    labels = np.full(n, -1, dtype=np.int64)
    k = 0
    for i in range(n):
        r = find(i)
        if labels[r] < 0:
            labels[r] = k
            k += 1
        labels[i] = labels[r]
    return labels


def cheb_t(m, x):
    x = np.asarray(x, dtype=np.float64)
    if m == 0:
        return np.ones_like(x)
    t0, t1 = np.ones_like(x), x.copy()
    for _ in range(1, m):
        t0, t1 = t1, 2.0 * x * t1 - t0
    return t1


def cheb_u(m, x):
    x = np.asarray(x, dtype=np.float64)
    if m < 0:
        return np.zeros_like(x)
    if m == 0:
        return np.ones_like(x)
    u0, u1 = np.ones_like(x), 2.0 * x
    for _ in range(1, m):
        u0, u1 = u1, 2.0 * x * u1 - u0
    return u1


def pair_stubs(n, stubs):
    """Pair consecutive stubs; return (ok, u, v) with u < v sorted."""
    stubs = [int(s) for s in np.asarray(stubs).ravel()]
    if len(stubs) % 2:
        raise ValueError("odd number of stubs")
    empty = np.empty(0, dtype=np.int64)
    seen = set()
    for a, b in zip(stubs[0::2], stubs[1::2]):
        if a == b:
            return False, empty, empty
        key = (a, b) if a < b else (b, a)
        if key in seen:
            return False, empty, empty
        seen.add(key)
    edges = sorted(seen)
    u = np.array([e[0] for e in edges], dtype=np.int64)
    v = np.array([e[1] for e in edges], dtype=np.int64)
    return True, u, v
