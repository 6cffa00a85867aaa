"""Enumerated finite groups.

Every group stores a canonical list of element values and works on integer
indices into that list. ``mul_idx``/``inv_idx`` are vectorized over numpy
index arrays, which is what the Cayley-graph and coset code use.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..errors import NotSubgroup, TooLarge
from .field import PrimeField

DEFAULT_ORDER_CAP = 100_000


def _as_idx(a):
    return np.asarray(a, dtype=np.int64)


class FiniteGroup:
    """Base class: enumerated elements plus index-level arithmetic."""

    kind = "abstract"

    def __init__(self, values, descriptor: str):
        self._values = list(values)
        self._index = {v: i for i, v in enumerate(self._values)}
        if len(self._index) != len(self._values):
            raise ValueError("duplicate element values")
        self.order = len(self._values)
        self.descriptor = descriptor
        self._abelian = None

    # subclasses implement these on equal-shape int64 arrays
    def _mul(self, i, j):
        raise NotImplementedError

    def _inv(self, i):
        raise NotImplementedError

    def _identity_value(self):
        raise NotImplementedError

    @property
    def identity(self) -> int:
        return self._index[self._identity_value()]

    @property
    def elements(self) -> tuple:
        return tuple(self._values)

    def element(self, i: int):
        return self._values[i]

    def index(self, value) -> int:
        try:
            return self._index[value]
        except KeyError:
            raise ValueError(f"{value!r} is not an element of {self.descriptor}") from None

    def __contains__(self, value) -> bool:
        return value in self._index

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.descriptor} order={self.order}>"

    def mul_idx(self, i, j) -> np.ndarray:
        i, j = np.broadcast_arrays(_as_idx(i), _as_idx(j))
        return self._mul(np.ascontiguousarray(i), np.ascontiguousarray(j))

    def inv_idx(self, i) -> np.ndarray:
        return self._inv(_as_idx(i))

    def mul(self, i: int, j: int) -> int:
        return int(self.mul_idx([i], [j])[0])

    def inv(self, i: int) -> int:
        return int(self.inv_idx([i])[0])

    def power(self, i: int, k: int) -> int:
        result, base = self.identity, i
        if k < 0:
            base, k = self.inv(i), -k
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def right_perm(self, s: int) -> np.ndarray:
        """Permutation g -> g*s of all element indices."""
        return self.mul_idx(np.arange(self.order), s)

    def left_perm(self, g: int) -> np.ndarray:
        return self.mul_idx(g, np.arange(self.order))

    @property
    def is_abelian(self) -> bool:
        if self._abelian is None:
            gens = generating_indices(self)
            self._abelian = all(self.mul(g, h) == self.mul(h, g) for g in gens for h in gens)
        return self._abelian


class CyclicGroup(FiniteGroup):
    kind = "cyclic"

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("cyclic group order must be >= 1")
        self.n = n
        super().__init__(range(n), f"cyclic:{n}")

    def _identity_value(self):
        return 0

    def _mul(self, i, j):
        return (i + j) % self.n

    def _inv(self, i):
        return -i % self.n


class UnitGroup(FiniteGroup):
    """Multiplicative group of F_p; element values are the residues 1..p-1."""

    kind = "units"

    def __init__(self, field: PrimeField):
        self.field = field
        p = field.p
        super().__init__(range(1, p), f"units:{p}")
        self._inv_table = np.array([field.inv(v) - 1 for v in range(1, p)], dtype=np.int64)

    def _identity_value(self):
        return 1

    def _mul(self, i, j):
        return (i + 1) * (j + 1) % self.field.p - 1

    def _inv(self, i):
        return self._inv_table[i]


class VectorGroup(FiniteGroup):
    """Additive group F_p^dim; values are tuples of residues."""

    kind = "vec"

    def __init__(self, field: PrimeField, dim: int):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        self.field, self.dim = field, dim
        p = field.p
        values = list(itertools.product(range(p), repeat=dim))
        super().__init__(values, f"vec{dim}:{p}")
        self.digits = np.array(values, dtype=np.int64).reshape(-1, dim)
        self._weights = p ** np.arange(dim - 1, -1, -1, dtype=np.int64)

    def _identity_value(self):
        return (0,) * self.dim

    def encode(self, digits) -> np.ndarray:
        return (np.asarray(digits, dtype=np.int64) % self.field.p) @ self._weights

    def _mul(self, i, j):
        return self.encode(self.digits[i] + self.digits[j])

    def _inv(self, i):
        return self.encode(-self.digits[i])


class _Mat2Group(FiniteGroup):
    """Shared machinery for 2x2 matrix groups; entries stored row-major (a, b, c, d)."""

    def _setup_lookup(self):
        p = self.field.p
        self.mats = np.array(self._values, dtype=np.int64).reshape(-1, 4)
        self._lookup = np.full(p ** 4, -1, dtype=np.int64)
        self._lookup[self._codes(self.mats)] = np.arange(self.order)

    def _codes(self, mats):
        p = self.field.p
        return ((mats[..., 0] * p + mats[..., 1]) * p + mats[..., 2]) * p + mats[..., 3]

    def _canon(self, mats):
        return mats

    def _identity_value(self):
        return (1, 0, 0, 1)

    def _product(self, x, y):
        p = self.field.p
        a = x[..., 0] * y[..., 0] + x[..., 1] * y[..., 2]
        b = x[..., 0] * y[..., 1] + x[..., 1] * y[..., 3]
        c = x[..., 2] * y[..., 0] + x[..., 3] * y[..., 2]
        d = x[..., 2] * y[..., 1] + x[..., 3] * y[..., 3]
        return np.stack([a, b, c, d], axis=-1) % p

    def _mul(self, i, j):
        prod = self._canon(self._product(self.mats[i], self.mats[j]))
        return self._lookup[self._codes(prod)]

    def _inv(self, i):
        p = self.field.p
        m = self.mats[i]
        adj = np.stack([m[..., 3], -m[..., 1], -m[..., 2], m[..., 0]], axis=-1) % p
        return self._lookup[self._codes(self._canon(adj))]


class SL2(_Mat2Group):
    kind = "sl2"

    def __init__(self, field: PrimeField):
        self.field = field
        p = field.p
        values = [
            (a, b, c, d)
            for a, b, c, d in itertools.product(range(p), repeat=4)
            if (a * d - b * c) % p == 1
        ]
        super().__init__(values, f"sl2:{p}")
        self._setup_lookup()

    def negate(self, i):
        """Index of -M."""
        return self._lookup[self._codes(-self.mats[_as_idx(i)] % self.field.p)]


def psl2_canonical(mat, p: int) -> tuple:
    """Representative of {M, -M}: first nonzero row-major entry lies in [1, p//2]."""
    m = [x % p for x in mat]
    first = next(x for x in m if x)
    if first > p // 2:
        m = [-x % p for x in m]
    return tuple(m)


class PSL2(_Mat2Group):
    kind = "psl2"

    def __init__(self, field: PrimeField):
        self.field = field
        p = field.p
        reps = sorted({
            psl2_canonical((a, b, c, d), p)
            for a, b, c, d in itertools.product(range(p), repeat=4)
            if (a * d - b * c) % p == 1
        })
        super().__init__(reps, f"psl2:{p}")
        self._setup_lookup()

    def _canon(self, mats):
        p = self.field.p
        mats = np.array(mats, copy=True)
        first_pos = np.argmax(mats != 0, axis=-1)
        first = np.take_along_axis(mats, first_pos[..., None], axis=-1)[..., 0]
        flip = first > p // 2
        mats[flip] = -mats[flip] % p
        return mats


class AffineGroup(FiniteGroup):
    """Maps x -> a*x + b over F_p; values (a, b) with a a unit."""

    kind = "affine"

    def __init__(self, field: PrimeField):
        self.field = field
        p = field.p
        super().__init__([(a, b) for a in range(1, p) for b in range(p)], f"affine:{p}")
        self._unit_inv = np.zeros(p, dtype=np.int64)
        for a in range(1, p):
            self._unit_inv[a] = field.inv(a)

    def _identity_value(self):
        return (1, 0)

    def _split(self, i):
        p = self.field.p
        a, b = np.divmod(i, p)
        return a + 1, b

    def _join(self, a, b):
        p = self.field.p
        return (a % p - 1) * p + b % p

    def _mul(self, i, j):
        a1, b1 = self._split(i)
        a2, b2 = self._split(j)
        return self._join(a1 * a2, b1 + a1 * b2)

    def _inv(self, i):
        a, b = self._split(i)
        ai = self._unit_inv[a]
        return self._join(ai, -ai * b)

    def units_subgroup(self) -> "Subgroup":
        p = self.field.p
        return Subgroup(self, [self.index((a, 0)) for a in range(1, p)])

    def translation(self, b: int) -> int:
        return self.index((1, b % self.field.p))


class SemidirectProduct(FiniteGroup):
    """Pairs (pi, v) with (a, x)(b, y) = (ab, x + a.y).

    ``action_table[a, y]`` is the index of a.y in ``normal``. Use
    ``make_semidirect`` to build one with a validated action.
    """

    kind = "semidirect"

    def __init__(self, actor: FiniteGroup, normal: FiniteGroup, action_table, descriptor=None):
        self.actor, self.normal = actor, normal
        self.action_table = np.asarray(action_table, dtype=np.int64)
        values = [(a, v) for a in actor.elements for v in normal.elements]
        if descriptor is None:
            descriptor = f"semidirect({actor.descriptor},{normal.descriptor})"
        super().__init__(values, descriptor)

    def _identity_value(self):
        return (self.actor.element(self.actor.identity), self.normal.element(self.normal.identity))

    def pair(self, a: int, x: int) -> int:
        return a * self.normal.order + x

    def _mul(self, i, j):
        nv = self.normal.order
        a, x = np.divmod(i, nv)
        b, y = np.divmod(j, nv)
        return self.actor.mul_idx(a, b) * nv + self.normal.mul_idx(x, self.action_table[a, y])

    def _inv(self, i):
        nv = self.normal.order
        a, x = np.divmod(i, nv)
        ai = self.actor.inv_idx(a)
        return ai * nv + self.action_table[ai, self.normal.inv_idx(x)]

    def complement(self) -> "Subgroup":
        """The actor embedded as {(pi, 0)}."""
        nv = self.normal.order
        return Subgroup(self, np.arange(self.actor.order) * nv + self.normal.identity)

    def embed_actor(self, a) -> np.ndarray:
        return _as_idx(a) * self.normal.order + self.normal.identity

    def normal_subgroup(self) -> "Subgroup":
        return Subgroup(self, self.actor.identity * self.normal.order + np.arange(self.normal.order))


class DirectProduct(FiniteGroup):
    kind = "product"

    def __init__(self, left: FiniteGroup, right: FiniteGroup):
        self.left, self.right = left, right
        values = [(g, h) for g in left.elements for h in right.elements]
        super().__init__(values, f"product:{left.descriptor}:{right.descriptor}")

    def _identity_value(self):
        return (self.left.element(self.left.identity), self.right.element(self.right.identity))

    def pair(self, g: int, h: int) -> int:
        return g * self.right.order + h

    def _mul(self, i, j):
        nr = self.right.order
        g1, h1 = np.divmod(i, nr)
        g2, h2 = np.divmod(j, nr)
        return self.left.mul_idx(g1, g2) * nr + self.right.mul_idx(h1, h2)

    def _inv(self, i):
        nr = self.right.order
        g, h = np.divmod(i, nr)
        return self.left.inv_idx(g) * nr + self.right.inv_idx(h)


class Subgroup(FiniteGroup):
    """A subgroup of ``parent`` with its own 0-based enumeration.

    ``members[k]`` is the parent index of the k-th element. Closure, identity
    and inverses are verified at construction (``NotSubgroup`` otherwise).
    """

    kind = "subgroup"

    def __init__(self, parent: FiniteGroup, members, *, check=True):
        members = np.unique(_as_idx(members))
        if members.size == 0:
            raise NotSubgroup("empty set")
        if members.min() < 0 or members.max() >= parent.order:
            raise NotSubgroup("index outside parent group")
        self.parent = parent
        self.members = members
        self._pos = np.full(parent.order, -1, dtype=np.int64)
        self._pos[members] = np.arange(members.size)
        super().__init__(
            [parent.element(int(m)) for m in members],
            f"subgroup({parent.descriptor};{members.size})",
        )
        if check:
            self._check_closed()

    def _check_closed(self):
        if self._pos[self.parent.identity] < 0:
            raise NotSubgroup("identity missing")
        if np.any(self._pos[self.parent.inv_idx(self.members)] < 0):
            raise NotSubgroup("not closed under inverses")
        for g in self.members:
            if np.any(self._pos[self.parent.mul_idx(g, self.members)] < 0):
                raise NotSubgroup("not closed under multiplication")

    def _identity_value(self):
        return self.parent.element(self.parent.identity)

    def contains_parent_index(self, g: int) -> bool:
        return bool(self._pos[g] >= 0)

    def to_parent(self, i) -> np.ndarray:
        return self.members[_as_idx(i)]

    def from_parent(self, g) -> np.ndarray:
        pos = self._pos[_as_idx(g)]
        if np.any(pos < 0):
            raise NotSubgroup("element not in subgroup")
        return pos

    def _mul(self, i, j):
        return self._pos[self.parent.mul_idx(self.members[i], self.members[j])]

    def _inv(self, i):
        return self._pos[self.parent.inv_idx(self.members[i])]


def closure_indices(group: FiniteGroup, gens) -> np.ndarray:
    """Parent indices of the subgroup generated by ``gens`` (sorted)."""
    from .. import kernels

    gens = [int(g) for g in np.atleast_1d(_as_idx(gens))]
    n = group.order
    idx = np.arange(n)
    src = np.concatenate([idx] * len(gens)) if gens else np.empty(0, np.int64)
    dst = np.concatenate([group.right_perm(g) for g in gens]) if gens else np.empty(0, np.int64)
    labels = kernels.component_labels(n, src, dst)
    return np.flatnonzero(labels == labels[group.identity])


def generating_indices(group: FiniteGroup) -> list[int]:
    """A small generating set, chosen greedily in element order."""
    gens: list[int] = []
    reached = np.zeros(group.order, dtype=bool)
    reached[group.identity] = True
    for g in range(group.order):
        if not reached[g]:
            gens.append(g)
            reached[:] = False
            reached[closure_indices(group, gens)] = True
            if reached.all():
                break
    return gens


ORDER_FORMULAS = {
    "cyclic": lambda n: n,
    "units": lambda p: p - 1,
    "sl2": lambda p: p * (p * p - 1),
    "psl2": lambda p: p * (p * p - 1) // (2 if p > 2 else 1),
    "affine": lambda p: p * (p - 1),
}


def expected_order(kind: str, param: int) -> int:
    if kind.startswith("vec"):
        return param ** int(kind[3:])
    return ORDER_FORMULAS[kind](param)


def verify_group_axioms(group: FiniteGroup, samples: int = 10_000, seed: int = 0) -> None:
    """Identity and inverse laws exhaustively, associativity on random triples."""
    n = group.order
    idx = np.arange(n)
    e = group.identity
    if not (np.array_equal(group.mul_idx(e, idx), idx) and np.array_equal(group.mul_idx(idx, e), idx)):
        raise AssertionError(f"{group.descriptor}: identity law fails")
    inv = group.inv_idx(idx)
    if np.any(group.mul_idx(idx, inv) != e) or np.any(group.mul_idx(inv, idx) != e):
        raise AssertionError(f"{group.descriptor}: inverse law fails")
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, samples))
    if not np.array_equal(group.mul_idx(group.mul_idx(a, b), c), group.mul_idx(a, group.mul_idx(b, c))):
        raise AssertionError(f"{group.descriptor}: associativity fails")


def make_group(kind: str, param: int, *, cap: int = DEFAULT_ORDER_CAP, verify: bool = True) -> FiniteGroup:
    """Build one of the built-in groups: cyclic(n), units(p), sl2(p), psl2(p), affine(p), vecD(p)."""
    if kind == "cyclic":
        if param < 1:
            raise ValueError("cyclic group needs n >= 1")
    elif kind in ORDER_FORMULAS or (kind.startswith("vec") and kind[3:].isdigit()):
        field = PrimeField(param)
    else:
        raise ValueError(f"unknown group kind {kind!r}")
    order = expected_order(kind, param)
    if order > cap:
        raise TooLarge(f"{kind}:{param} has order {order} > cap {cap}")
    if kind == "cyclic":
        group = CyclicGroup(param)
    elif kind == "units":
        group = UnitGroup(field)
    elif kind == "sl2":
        group = SL2(field)
    elif kind == "psl2":
        group = PSL2(field)
    elif kind == "affine":
        group = AffineGroup(field)
    else:
        group = VectorGroup(field, int(kind[3:]))
    if group.order != order:
        raise AssertionError(f"{group.descriptor}: enumerated {group.order}, expected {order}")
    if verify:
        verify_group_axioms(group)
    return group
