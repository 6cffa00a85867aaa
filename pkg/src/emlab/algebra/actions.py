"""Group actions, semidirect and direct products, text descriptors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidAction, TooLarge
from .field import PrimeField
from .groups import (
    DEFAULT_ORDER_CAP,
    SL2,
    DirectProduct,
    FiniteGroup,
    SemidirectProduct,
    UnitGroup,
    VectorGroup,
    generating_indices,
    make_group,
    verify_group_axioms,
)


@dataclass(frozen=True, eq=False)
class GroupAction:
    """Left action of ``actor`` on ``space_size`` points.

    ``table[g, v]`` is the index of g.v. ``space`` is the group being acted on
    when the points carry one (needed for semidirect products).
    """

    actor: FiniteGroup
    table: np.ndarray
    space: FiniteGroup | None = None
    name: str = "action"

    @property
    def space_size(self) -> int:
        return self.table.shape[1]

    def apply(self, g: int, v: int) -> int:
        return int(self.table[g, v])

    def check_axioms(self) -> None:
        """Raise InvalidAction unless e acts trivially and (gh).v = g.(h.v).

        Compatibility is checked for every g against a generating set of h,
        which implies it for all pairs.
        """
        t = self.table
        n, k = self.actor.order, self.space_size
        if t.shape != (n, k):
            raise InvalidAction(f"table shape {t.shape} != ({n}, {k})")
        if t.min() < 0 or t.max() >= k:
            raise InvalidAction("action table entry out of range")
        pts = np.arange(k)
        if not np.array_equal(t[self.actor.identity], pts):
            raise InvalidAction("identity does not act trivially")
        gs = np.arange(n)
        for h in generating_indices(self.actor):
            gh = self.actor.mul_idx(gs, h)
            if not np.array_equal(t[gh], t[:, t[h]]):
                raise InvalidAction("action is not compatible with multiplication")

    def check_automorphisms(self) -> None:
        """Each g must act as a group automorphism of ``space``."""
        space = self.space
        if space is None:
            raise InvalidAction("action has no group structure on its points")
        t = self.table
        ys = np.arange(space.order)
        for x in generating_indices(space):
            lhs = t[:, space.mul_idx(x, ys)]
            rhs = space.mul_idx(t[:, [x]], t[:, ys])
            if not np.array_equal(lhs, rhs):
                raise InvalidAction("action does not respect the group law of the acted-on group")


def action_from_function(actor: FiniteGroup, space: FiniteGroup, fn, name="action") -> GroupAction:
    """Tabulate ``fn(actor_value, space_value) -> space_value``."""
    table = np.array(
        [[space.index(fn(a, v)) for v in space.elements] for a in actor.elements],
        dtype=np.int64,
    ).reshape(actor.order, space.order)
    return GroupAction(actor, table, space, name)


def standard_action(sl2: SL2, vec: VectorGroup) -> GroupAction:
    """Matrix-vector action of SL(2, p) on column vectors of F_p^2."""
    if vec.dim != 2 or vec.field.p != sl2.field.p:
        raise InvalidAction("standard action needs F_p^2 over the same field")
    m = sl2.mats
    x, y = vec.digits[:, 0], vec.digits[:, 1]
    nx = m[:, [0]] * x + m[:, [1]] * y
    ny = m[:, [2]] * x + m[:, [3]] * y
    table = vec.encode(np.stack([nx, ny], axis=-1))
    return GroupAction(sl2, table, vec, "standard")


def multiplication_action(units: UnitGroup, vec: VectorGroup) -> GroupAction:
    """F_p^x acting on F_p (as vec1) by multiplication."""
    if vec.dim != 1 or vec.field.p != units.field.p:
        raise InvalidAction("multiplication action needs F_p over the same field")
    scal = np.array(units.elements, dtype=np.int64)[:, None]
    table = vec.encode((scal * vec.digits[:, 0])[..., None])
    return GroupAction(units, table, vec, "multiplication")


def trivial_action(actor: FiniteGroup, space: FiniteGroup) -> GroupAction:
    table = np.tile(np.arange(space.order), (actor.order, 1))
    return GroupAction(actor, table, space, "trivial")


def action_via_left_factor(product: DirectProduct, action: GroupAction) -> GroupAction:
    """Action of G x H through the projection onto G."""
    if action.actor is not product.left:
        raise InvalidAction("action must be by the left factor of the product")
    rows = np.repeat(np.arange(product.left.order), product.right.order)
    return GroupAction(product, action.table[rows], action.space, f"{action.name}*")


def make_semidirect(pi: FiniteGroup, v: FiniteGroup, action: GroupAction, descriptor=None) -> SemidirectProduct:
    """Pi x| V with (a, x)(b, y) = (ab, x + a.y)."""
    if action.actor is not pi or action.space is not v:
        raise InvalidAction("action does not connect the given groups")
    if not v.is_abelian:
        raise InvalidAction("normal factor must be abelian")
    action.check_axioms()
    action.check_automorphisms()
    group = SemidirectProduct(pi, v, action.table, descriptor)
    if group.order != pi.order * v.order:
        raise AssertionError("semidirect order mismatch")
    verify_group_axioms(group)
    return group


def make_product(left: FiniteGroup, right: FiniteGroup) -> DirectProduct:
    group = DirectProduct(left, right)
    verify_group_axioms(group)
    return group


def default_action(actor: FiniteGroup, space: VectorGroup) -> GroupAction:
    """The action used by descriptors: standard for sl2, multiplication for units."""
    if isinstance(actor, SL2):
        return standard_action(actor, space)
    if isinstance(actor, UnitGroup):
        return multiplication_action(actor, space)
    if isinstance(actor, DirectProduct):
        return action_via_left_factor(actor, default_action(actor.left, space))
    return trivial_action(actor, space)


def _field_of(group: FiniteGroup) -> PrimeField:
    if hasattr(group, "field"):
        return group.field
    if isinstance(group, DirectProduct):
        return _field_of(group.left)
    raise ValueError(f"{group.descriptor} has no underlying field")


def _parse(tokens: list[str], cap: int) -> tuple[FiniteGroup, list[str]]:
    if not tokens:
        raise ValueError("empty group descriptor")
    kind, rest = tokens[0], tokens[1:]
    if kind == "product":
        left, rest = _parse(rest, cap)
        right, rest = _parse(rest, cap)
        if left.order * right.order > cap:
            raise TooLarge("product exceeds order cap")
        return make_product(left, right), rest
    if kind == "semidirect":
        actor, rest = _parse(rest, cap)
        if not rest or not rest[0].startswith("vec"):
            raise ValueError("semidirect descriptor must end with vecD")
        vkind, rest = rest[0], rest[1:]
        p = _field_of(actor).p
        if actor.order * p ** int(vkind[3:]) > cap:
            raise TooLarge("semidirect product exceeds order cap")
        vec = make_group(vkind, p, cap=cap)
        desc = f"semidirect:{actor.descriptor}:{vkind}"
        return make_semidirect(actor, vec, default_action(actor, vec), desc), rest
    if len(rest) < 1:
        raise ValueError(f"missing parameter for {kind}")
    try:
        param = int(rest[0])
    except ValueError:
        raise ValueError(f"bad parameter {rest[0]!r} for {kind}") from None
    return make_group(kind, param, cap=cap), rest[1:]


def parse_group(descriptor: str, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build a group from text such as ``sl2:5``, ``affine:13`` or ``semidirect:sl2:3:vec2``."""
    group, rest = _parse(descriptor.strip().split(":"), cap)
    if rest:
        raise ValueError(f"trailing tokens in descriptor: {':'.join(rest)}")
    return group
