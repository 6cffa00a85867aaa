"""Generating sets, generated subgroups, orbits and double cosets."""

from __future__ import annotations

import numpy as np

from .. import kernels
from ..errors import InvalidGeneratingSet, NotSubgroup
from .actions import GroupAction
from .groups import PSL2, SL2, FiniteGroup, Subgroup, closure_indices, generating_indices, psl2_canonical


class GeneratingSet:
    """A symmetric, identity-free subset S = S^-1 of ``group`` (stored as indices)."""

    def __init__(self, group: FiniteGroup, indices):
        idx = sorted({int(i) for i in np.atleast_1d(np.asarray(indices, dtype=np.int64))})
        if not idx:
            raise InvalidGeneratingSet("generating set is empty")
        if idx[0] < 0 or idx[-1] >= group.order:
            raise InvalidGeneratingSet("index outside the group")
        if group.identity in idx:
            raise InvalidGeneratingSet("generating set contains the identity")
        if set(group.inv_idx(idx).tolist()) != set(idx):
            raise InvalidGeneratingSet("generating set is not symmetric")
        self.group = group
        self.indices = tuple(idx)

    @classmethod
    def from_values(cls, group: FiniteGroup, values) -> "GeneratingSet":
        return cls(group, [group.index(v) for v in values])

    @classmethod
    def symmetric_closure(cls, group: FiniteGroup, indices) -> "GeneratingSet":
        idx = np.atleast_1d(np.asarray(indices, dtype=np.int64))
        return cls(group, np.concatenate([idx, group.inv_idx(idx)]))

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __eq__(self, other):
        return isinstance(other, GeneratingSet) and other.group is self.group and other.indices == self.indices

    def __hash__(self):
        return hash((id(self.group), self.indices))

    def __repr__(self):
        return f"GeneratingSet({self.group.descriptor}, {list(self.values())})"

    def values(self) -> list:
        return [self.group.element(i) for i in self.indices]

    def union(self, other_indices) -> "GeneratingSet":
        return GeneratingSet(self.group, list(self.indices) + list(np.atleast_1d(other_indices)))

    def restricted_to(self, sub: Subgroup) -> "GeneratingSet":
        """The same elements, indexed inside ``sub`` (whose parent is this set's group)."""
        if sub.parent is not self.group:
            raise NotSubgroup("subgroup does not belong to this set's group")
        return GeneratingSet(sub, sub.from_parent(list(self.indices)))

    def lifted_from(self) -> "GeneratingSet":
        """The same elements indexed in the parent group (for a set on a Subgroup)."""
        if not isinstance(self.group, Subgroup):
            return self
        return GeneratingSet(self.group.parent, self.group.to_parent(list(self.indices)))


def generated_subgroup(S: GeneratingSet) -> Subgroup:
    return Subgroup(S.group, closure_indices(S.group, S.indices), check=False)


def element_order(group: FiniteGroup, g: int) -> int:
    k, x = 1, g
    e = group.identity
    while x != e:
        x = group.mul(x, g)
        k += 1
    return k


def _subgroup_of(gamma: FiniteGroup, pi) -> Subgroup:
    if pi is gamma:
        return Subgroup(gamma, np.arange(gamma.order), check=False)
    if isinstance(pi, Subgroup) and pi.parent is gamma:
        return pi
    raise NotSubgroup(f"{getattr(pi, 'descriptor', pi)!r} is not a subgroup of {gamma.descriptor}")


def _subgroup_gens(pi: Subgroup) -> np.ndarray:
    return pi.to_parent(generating_indices(pi))


def double_coset_count(gamma: FiniteGroup, pi) -> int:
    """|Pi \\ Gamma / Pi| by partitioning Gamma under g -> a g b."""
    pi = _subgroup_of(gamma, pi)
    n = gamma.order
    idx = np.arange(n)
    src, dst = [], []
    for a in _subgroup_gens(pi):
        src += [idx, idx]
        dst += [gamma.left_perm(a), gamma.right_perm(a)]
    if not src:
        return n
    labels = kernels.component_labels(n, np.concatenate(src), np.concatenate(dst))
    return int(labels.max()) + 1


def left_coset_labels(gamma: FiniteGroup, pi) -> np.ndarray:
    """Label of g*Pi for every g, numbered by first appearance."""
    pi = _subgroup_of(gamma, pi)
    n = gamma.order
    idx = np.arange(n)
    gens = _subgroup_gens(pi)
    if len(gens) == 0:
        return idx.copy()
    src = np.concatenate([idx] * len(gens))
    dst = np.concatenate([gamma.right_perm(a) for a in gens])
    return kernels.component_labels(n, src, dst)


def induced_character_norm(gamma: FiniteGroup, pi) -> int:
    """<chi, chi> for the permutation character of Gamma on Gamma/Pi, via Burnside.

    chi(g) is the number of cosets a*Pi fixed by g, i.e. with c(g a) = c(a).
    """
    labels = left_coset_labels(gamma, pi)
    _, reps = np.unique(labels, return_index=True)
    idx = np.arange(gamma.order)
    fixed = np.zeros(gamma.order, dtype=np.int64)
    for a in reps:
        fixed += labels[gamma.mul_idx(idx, a)] == labels[a]
    total = int(np.sum(fixed * fixed))
    if total % gamma.order:
        raise AssertionError("Burnside average is not an integer")
    return total // gamma.order


def orbit_labels(action: GroupAction) -> np.ndarray:
    k = action.space_size
    pts = np.arange(k)
    gens = generating_indices(action.actor)
    if not gens:
        return pts.copy()
    src = np.concatenate([pts] * len(gens))
    dst = np.concatenate([action.table[g] for g in gens])
    return kernels.component_labels(k, src, dst)


def orbit_count(action: GroupAction) -> int:
    return int(orbit_labels(action).max()) + 1


def psl2_projection(sl2: SL2, psl2: PSL2) -> np.ndarray:
    """Index map SL(2,p) -> PSL(2,p), M -> {M, -M}."""
    if sl2.field.p != psl2.field.p:
        raise ValueError("fields differ")
    p = sl2.field.p
    return np.array([psl2.index(psl2_canonical(m, p)) for m in sl2.elements], dtype=np.int64)


def quotient_preimage_sl2(S0: GeneratingSet, sl2: SL2 | None = None) -> GeneratingSet:
    """Lift a symmetric set on PSL(2,p) to its full preimage {M, -M} in SL(2,p)."""
    psl2 = S0.group
    if not isinstance(psl2, PSL2):
        raise TypeError("S0 must live on a PSL(2,p)")
    if sl2 is None:
        sl2 = SL2(psl2.field)
    lifted = []
    for rep in S0.values():
        i = sl2.index(rep)
        lifted += [i, int(sl2.negate(i))]
    return GeneratingSet(sl2, lifted)
