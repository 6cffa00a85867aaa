"""Undirected multigraphs with integer edge weights, and the graph builders.

A ``Graph`` stores each unordered pair once as ``(u, v, w)`` with ``u <= v``
and ``w > 0``, sorted lexicographically. Adjacency is symmetric by
construction: ``A[u, v] = A[v, u] = w``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .algebra import FiniteGroup, GeneratingSet
from .errors import InvalidSelection, NotRegular, ParseError, SizeMismatch

FORMAT_HEADER = "graph v1"


class Graph:
    def __init__(self, n: int, u=(), v=(), w=None, labels=None):
        u = np.asarray(u, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        w = np.ones_like(u) if w is None else np.asarray(w, dtype=np.int64).ravel()
        if not (u.shape == v.shape == w.shape):
            raise ValueError("edge arrays differ in length")
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if u.size and (min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= n):
            raise ValueError("edge endpoint out of range")
        if np.any(w < 0):
            raise ValueError("negative edge weight")
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        keys, inverse = np.unique(lo * max(n, 1) + hi, return_inverse=True)
        summed = np.zeros(keys.size, dtype=np.int64)
        np.add.at(summed, inverse.ravel(), w)
        keep = summed > 0
        keys, summed = keys[keep], summed[keep]
        self.n = int(n)
        self.u = keys // max(n, 1)
        self.v = keys % max(n, 1)
        self.w = summed
        for arr in (self.u, self.v, self.w):
            arr.setflags(write=False)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("labels must cover every vertex")
        self.labels = labels

    @classmethod
    def from_edges(cls, n: int, edges, labels=None) -> "Graph":
        """Edges as (u, v) or (u, v, w); repeated pairs add their weights."""
        rows = [tuple(e) if len(e) == 3 else (e[0], e[1], 1) for e in edges]
        if not rows:
            return cls(n, labels=labels)
        u, v, w = zip(*rows)
        return cls(n, u, v, w, labels=labels)

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and np.array_equal(self.u, other.u)
            and np.array_equal(self.v, other.v)
            and np.array_equal(self.w, other.w)
        )

    def __repr__(self):
        return f"<Graph n={self.n} pairs={self.u.size} weight={int(self.w.sum())}>"

    @property
    def num_pairs(self) -> int:
        return int(self.u.size)

    @property
    def total_weight(self) -> int:
        """Edge count with multiplicity (a pair of weight w counts w times)."""
        return int(self.w.sum())

    def edges(self):
        return list(zip(self.u.tolist(), self.v.tolist(), self.w.tolist()))

    def weight(self, a: int, b: int) -> int:
        lo, hi = min(a, b), max(a, b)
        key = lo * max(self.n, 1) + hi
        keys = self.u * max(self.n, 1) + self.v
        pos = np.searchsorted(keys, key)
        if pos < keys.size and keys[pos] == key:
            return int(self.w[pos])
        return 0

    def degrees(self) -> np.ndarray:
        """Weighted degree: row sums of the adjacency matrix."""
        deg = np.zeros(self.n, dtype=np.int64)
        np.add.at(deg, self.u, self.w)
        off = self.u != self.v
        np.add.at(deg, self.v[off], self.w[off])
        return deg

    def adjacency_matrix(self, dtype=np.float64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        a[self.u, self.v] = self.w
        a[self.v, self.u] = self.w
        return a

    def has_loops(self) -> bool:
        return bool(np.any(self.u == self.v))

    def is_regular(self, d: int | None = None) -> bool:
        deg = self.degrees()
        if deg.size == 0:
            return True
        target = deg[0] if d is None else d
        return bool(np.all(deg == target))

    def induced_subgraph(self, keep) -> "Graph":
        keep = np.asarray(sorted(set(int(k) for k in keep)), dtype=np.int64)
        pos = np.full(self.n, -1, dtype=np.int64)
        pos[keep] = np.arange(keep.size)
        mask = (pos[self.u] >= 0) & (pos[self.v] >= 0)
        labels = None if self.labels is None else [self.labels[k] for k in keep]
        return Graph(keep.size, pos[self.u[mask]], pos[self.v[mask]], self.w[mask], labels)


def complete_graph(n: int) -> Graph:
    iu, iv = np.triu_indices(n, 1)
    return Graph(n, iu, iv)


def cycle_graph(n: int) -> Graph:
    a = np.arange(n)
    return Graph(n, a, (a + 1) % n)


def path_graph(n: int) -> Graph:
    a = np.arange(n - 1)
    return Graph(n, a, a + 1)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    us, vs, ws, off = [], [], [], 0
    for g in graphs:
        us.append(g.u + off)
        vs.append(g.v + off)
        ws.append(g.w)
        off += g.n
    if not graphs:
        return Graph(0)
    return Graph(off, np.concatenate(us), np.concatenate(vs), np.concatenate(ws))


def cayley_graph(gamma: FiniteGroup, S: GeneratingSet, *, labels: bool = False) -> Graph:
    """Cay(gamma, S): weight(g, h) = #{s in S : g s = h}; every degree is |S|."""
    if S.group is not gamma:
        raise ValueError("generating set belongs to a different group")
    n = gamma.order
    idx = np.arange(n)
    src = np.concatenate([idx] * len(S))
    dst = np.concatenate([gamma.right_perm(s) for s in S.indices])
    if np.any(src == dst):
        raise ValueError("self-loop in Cayley graph")
    # each unordered pair arises once from each endpoint (via s and s^-1)
    keep = src < dst
    return Graph(n, src[keep], dst[keep], labels=gamma.elements if labels else None)


def overlay(h1: Graph, h2: Graph) -> Graph:
    if h1.n != h2.n:
        raise SizeMismatch(f"vertex counts differ: {h1.n} vs {h2.n}")
    return Graph(
        h1.n,
        np.concatenate([h1.u, h2.u]),
        np.concatenate([h1.v, h2.v]),
        np.concatenate([h1.w, h2.w]),
        labels=h1.labels,
    )


@dataclass(frozen=True)
class EdgeSelection:
    """Edge units to subdivide: sorted tuples (u, v, multiplicity) with u < v."""

    items: tuple

    @classmethod
    def from_pairs(cls, pairs) -> "EdgeSelection":
        acc: dict = {}
        for p in pairs:
            a, b = int(p[0]), int(p[1])
            k = int(p[2]) if len(p) == 3 else 1
            key = (min(a, b), max(a, b))
            acc[key] = acc.get(key, 0) + k
        return cls(tuple((a, b, k) for (a, b), k in sorted(acc.items()) if k))

    @classmethod
    def from_graph(cls, h: Graph) -> "EdgeSelection":
        """Every edge unit of ``h`` (typically a spanning subgraph of the target)."""
        return cls.from_pairs(h.edges())

    @property
    def units(self) -> int:
        return sum(k for _, _, k in self.items)


def subdivide(g: Graph, sel: EdgeSelection, m: int) -> Graph:
    """Replace each selected edge unit by a path with m edges.

    New interior vertices are appended after the existing ones, edge by edge
    in selection order, each path listed from the smaller endpoint.
    """
    if m < 1:
        raise InvalidSelection("path length m must be >= 1")
    for a, b, k in sel.items:
        if a == b:
            raise InvalidSelection(f"cannot subdivide self-loop at {a}")
        if k < 0 or g.weight(a, b) < k:
            raise InvalidSelection(f"edge ({a}, {b}) has weight {g.weight(a, b)} < selected {k}")
    if m == 1:
        return g
    keys = g.u * max(g.n, 1) + g.v
    w = g.w.copy()
    for a, b, k in sel.items:
        w[np.searchsorted(keys, a * max(g.n, 1) + b)] -= k
    us, vs = [g.u], [g.v]
    ws = [w]
    nxt = g.n
    extra_labels = []
    for a, b, k in sel.items:
        for unit in range(k):
            path = np.concatenate([[a], np.arange(nxt, nxt + m - 1), [b]])
            us.append(path[:-1])
            vs.append(path[1:])
            ws.append(np.ones(m, dtype=np.int64))
            extra_labels += [("path", a, b, unit, i) for i in range(1, m)]
            nxt += m - 1
    labels = None if g.labels is None else g.labels + tuple(extra_labels)
    return Graph(nxt, np.concatenate(us), np.concatenate(vs), np.concatenate(ws), labels)


def build_g_of_h(h: Graph, ell: int) -> Graph:
    """Blow each vertex of a 3-regular h up into K4 and join equal labels by ell-edge paths.

    Hub vertex (i, v) gets index i * N + v; the result has (6 ell - 2) N
    vertices and maximum degree 6.
    """
    if ell < 2:
        raise ValueError("ell must be >= 2")
    if h.has_loops() or not h.is_regular(3):
        raise NotRegular("base graph must be 3-regular without loops")
    N = h.n
    hubs = np.arange(N)
    k4 = [(i * N + hubs, j * N + hubs) for i in range(4) for j in range(i + 1, 4)]
    h1 = Graph(4 * N, np.concatenate([a for a, _ in k4]), np.concatenate([b for _, b in k4]),
               labels=[("hub", i, v) for i in range(4) for v in range(N)])
    h2 = Graph(
        4 * N,
        np.concatenate([h.u + i * N for i in range(4)]),
        np.concatenate([h.v + i * N for i in range(4)]),
        np.concatenate([h.w] * 4),
    )
    return subdivide(overlay(h1, h2), EdgeSelection.from_graph(h2), ell)


def component_labels(g: Graph) -> np.ndarray:
    return kernels.component_labels(g.n, g.u, g.v)


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return bool(component_labels(g).max() == 0)


def max_degree(g: Graph) -> int:
    deg = g.degrees()
    return int(deg.max()) if deg.size else 0


def serialize(g: Graph) -> str:
    lines = [f"{FORMAT_HEADER} {g.n}"]
    lines += [f"{a} {b} {c}" for a, b, c in g.edges()]
    return "\n".join(lines) + "\n"


def deserialize(text: str) -> Graph:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty input", 1)
    head = lines[0].split()
    if len(head) != 3 or " ".join(head[:2]) != FORMAT_HEADER:
        raise ParseError(f"expected header '{FORMAT_HEADER} <n>'", 1)
    try:
        n = int(head[2])
    except ValueError:
        raise ParseError(f"bad vertex count {head[2]!r}", 1) from None
    if n < 0:
        raise ParseError("negative vertex count", 1)
    seen = set()
    us, vs, ws = [], [], []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"expected 'u v w', got {line!r}", lineno)
        try:
            a, b, c = (int(x) for x in parts)
        except ValueError:
            raise ParseError(f"non-integer field in {line!r}", lineno) from None
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"vertex out of range 0..{n - 1}", lineno)
        if c <= 0:
            raise ParseError(f"weight must be a positive integer, got {c}", lineno)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise ParseError(f"duplicate edge {key}", lineno)
        seen.add(key)
        us.append(a)
        vs.append(b)
        ws.append(c)
    return Graph(n, us, vs, ws)


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(serialize(g))


def read_graph(path) -> Graph:
    with open(path, encoding="ascii") as fh:
        return deserialize(fh.read())
