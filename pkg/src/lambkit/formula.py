"""Formula and update ASTs for hybrid ATL with model-update modalities.

Nodes are frozen dataclasses, so formulas compare and hash structurally
and can key memo tables directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Tuple


def coalition(*agents: int) -> frozenset:
    """Coalition of 1-based agent numbers."""
    return frozenset(agents)


class Formula:
    """Base class for all formula nodes."""

    __slots__ = ()

    def children(self) -> Tuple["Formula", ...]:
        return ()

    def __str__(self) -> str:
        from .syntax import print_formula
        return print_formula(self)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Prop(Formula):
    name: str


@dataclass(frozen=True)
class Nom(Formula):
    name: str


@dataclass(frozen=True)
class At(Formula):
    nom: str
    body: Formula

    def children(self):
        return (self.body,)


@dataclass(frozen=True)
class Not(Formula):
    body: Formula

    def children(self):
        return (self.body,)


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class CoalX(Formula):
    coalition: frozenset
    body: Formula

    def children(self):
        return (self.body,)


@dataclass(frozen=True)
class CoalUntil(Formula):
    """``<<C>> (left U right)``: keep ``left`` until ``right`` is reached."""

    coalition: frozenset
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class CoalRelease(Formula):
    """``<<C>> (left R right)``: keep ``right`` unless ``left`` releases it."""

    coalition: frozenset
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class CoalF(Formula):
    coalition: frozenset
    body: Formula

    def children(self):
        return (self.body,)


@dataclass(frozen=True)
class CoalG(Formula):
    coalition: frozenset
    body: Formula

    def children(self):
        return (self.body,)


@dataclass(frozen=True)
class Updated(Formula):
    update: "Update"
    body: Formula

    def children(self):
        return (self.body,)


# -- updates -----------------------------------------------------------------

class Update:
    __slots__ = ()

    def __str__(self) -> str:
        from .syntax import print_update
        return print_update(self)


@dataclass(frozen=True)
class Subst(Update):
    """Set ``prop`` at the state named ``nom`` to the truth of ``payload``."""

    prop: str
    nom: str
    payload: Formula


@dataclass(frozen=True)
class Arrow(Update):
    """Redirect the ``profile`` transition out of ``src`` to ``dst``."""

    src: str
    profile: Tuple[str, ...]
    dst: str


@dataclass(frozen=True)
class AddState(Update):
    nom: str


@dataclass(frozen=True)
class Seq(Update):
    first: Update
    second: Update


@dataclass(frozen=True)
class Union(Update):
    left: Update
    right: Update


ATOMIC_UPDATES = (Subst, Arrow, AddState)


def _cache_hash(cls):
    # Formulas key memo tables constantly; the generated hash walks the
    # whole tree, so remember it on the node.
    structural = cls.__hash__

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = structural(self)
            object.__setattr__(self, "_hash", h)
            return h

    cls.__hash__ = __hash__


for _cls in (Top, Bottom, Prop, Nom, At, Not, And, Or, Implies, Iff, CoalX, CoalUntil,
             CoalRelease, CoalF, CoalG, Updated, Subst, Arrow, AddState, Seq, Union):
    _cache_hash(_cls)

TOP = Top()
BOTTOM = Bottom()


def updated(update: Update, body: Formula) -> Formula:
    """Build ``[update] body``, unfolding top-level sequences into nesting."""
    if isinstance(update, Seq):
        return updated(update.first, updated(update.second, body))
    return Updated(update, body)


def seq(*updates: Update) -> Update:
    if not updates:
        raise ValueError("empty update sequence")
    result = updates[0]
    for u in updates[1:]:
        result = Seq(result, u)
    return result


def flatten_seq(update: Update) -> list:
    if isinstance(update, Seq):
        return flatten_seq(update.first) + flatten_seq(update.second)
    return [update]


def conj(*parts: Formula) -> Formula:
    if not parts:
        return TOP
    result = parts[0]
    for p in parts[1:]:
        result = And(result, p)
    return result


def disj(*parts: Formula) -> Formula:
    if not parts:
        return BOTTOM
    result = parts[0]
    for p in parts[1:]:
        result = Or(result, p)
    return result


# -- traversal ---------------------------------------------------------------

def update_children(update: Update) -> Tuple[Update, ...]:
    if isinstance(update, Seq):
        return (update.first, update.second)
    if isinstance(update, Union):
        return (update.left, update.right)
    return ()


def iter_updates(update: Update) -> Iterator[Update]:
    """All update nodes below and including ``update``."""
    yield update
    for c in update_children(update):
        yield from iter_updates(c)


def subformulas(phi: Formula) -> Iterator[Formula]:
    """Pre-order walk including formulas nested inside update payloads."""
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))
        if isinstance(node, Updated):
            for u in iter_updates(node.update):
                if isinstance(u, Subst):
                    stack.append(u.payload)


def props_of(phi: Formula) -> set:
    """Propositions occurring in ``phi``, including substitution targets."""
    out = set()
    for node in subformulas(phi):
        if isinstance(node, Prop):
            out.add(node.name)
        elif isinstance(node, Updated):
            for u in iter_updates(node.update):
                if isinstance(u, Subst):
                    out.add(u.prop)
    return out


def nominals_of(phi: Formula) -> set:
    out = set()
    for node in subformulas(phi):
        if isinstance(node, Nom):
            out.add(node.name)
        elif isinstance(node, At):
            out.add(node.nom)
        elif isinstance(node, Updated):
            for u in iter_updates(node.update):
                if isinstance(u, Subst):
                    out.add(u.nom)
                elif isinstance(u, Arrow):
                    out.update((u.src, u.dst))
                elif isinstance(u, AddState):
                    out.add(u.nom)
    return out


def update_size(update: Update) -> int:
    """Symbol count of an update expression."""
    if isinstance(update, Subst):
        return 2 + size(update.payload)
    if isinstance(update, Arrow):
        return 3 + len(update.profile)
    if isinstance(update, AddState):
        return 2
    a, b = update_children(update)
    return 1 + update_size(a) + update_size(b)


def size(phi: Formula) -> int:
    """Symbol count: atoms count one, ``<<C>>`` counts one plus its agents."""
    if isinstance(phi, (Top, Bottom, Prop, Nom)):
        return 1
    if isinstance(phi, At):
        return 2 + size(phi.body)
    if isinstance(phi, Not):
        return 1 + size(phi.body)
    if isinstance(phi, (And, Or, Implies, Iff)):
        return 1 + size(phi.left) + size(phi.right)
    if isinstance(phi, (CoalX, CoalF, CoalG)):
        return 2 + len(phi.coalition) + size(phi.body)
    if isinstance(phi, (CoalUntil, CoalRelease)):
        return 2 + len(phi.coalition) + size(phi.left) + size(phi.right)
    if isinstance(phi, Updated):
        return update_size(phi.update) + size(phi.body)
    raise TypeError(f"not a formula: {phi!r}")


def _update_depth(update: Update) -> int:
    if isinstance(update, Subst):
        return depth(update.payload)
    return max((_update_depth(c) for c in update_children(update)), default=0)


def depth(phi: Formula) -> int:
    """Operator nesting depth; atoms have depth 0."""
    if isinstance(phi, Updated):
        return 1 + max(depth(phi.body), _update_depth(phi.update))
    kids = phi.children()
    if not kids:
        return 0
    return 1 + max(depth(k) for k in kids)


# -- sugar -------------------------------------------------------------------

def desugar(phi: Formula) -> Formula:
    """Rewrite derived connectives into the primitive ones.

    ``F`` becomes Until with ``true``, ``G`` becomes Release with ``false``;
    ``|``, ``->`` and ``<->`` become combinations of ``!`` and ``&``.
    """
    if isinstance(phi, (Top, Bottom, Prop, Nom)):
        return phi
    if isinstance(phi, At):
        return At(phi.nom, desugar(phi.body))
    if isinstance(phi, Not):
        return Not(desugar(phi.body))
    if isinstance(phi, And):
        return And(desugar(phi.left), desugar(phi.right))
    if isinstance(phi, Or):
        return Not(And(Not(desugar(phi.left)), Not(desugar(phi.right))))
    if isinstance(phi, Implies):
        return Not(And(desugar(phi.left), Not(desugar(phi.right))))
    if isinstance(phi, Iff):
        a, b = desugar(phi.left), desugar(phi.right)
        return And(Not(And(a, Not(b))), Not(And(b, Not(a))))
    if isinstance(phi, CoalX):
        return CoalX(phi.coalition, desugar(phi.body))
    if isinstance(phi, CoalUntil):
        return CoalUntil(phi.coalition, desugar(phi.left), desugar(phi.right))
    if isinstance(phi, CoalRelease):
        return CoalRelease(phi.coalition, desugar(phi.left), desugar(phi.right))
    if isinstance(phi, CoalF):
        return CoalUntil(phi.coalition, TOP, desugar(phi.body))
    if isinstance(phi, CoalG):
        return CoalRelease(phi.coalition, BOTTOM, desugar(phi.body))
    if isinstance(phi, Updated):
        return Updated(desugar_update(phi.update), desugar(phi.body))
    raise TypeError(f"not a formula: {phi!r}")


def desugar_update(update: Update) -> Update:
    if isinstance(update, Subst):
        return Subst(update.prop, update.nom, desugar(update.payload))
    if isinstance(update, Seq):
        return Seq(desugar_update(update.first), desugar_update(update.second))
    if isinstance(update, Union):
        return Union(desugar_update(update.left), desugar_update(update.right))
    return update


# -- fragments ---------------------------------------------------------------

class Fragment(str, Enum):
    ATL = "ATL"
    HATL = "HATL"
    SLAMB = "SLAMB"
    ALAMB = "ALAMB"
    LAMB = "LAMB"
    LAMB_UNION = "LAMB_UNION"


def classify_fragment(phi: Formula) -> Fragment:
    """Smallest named fragment that contains ``phi``."""
    hybrid = False
    kinds = set()
    for node in subformulas(phi):
        if isinstance(node, (Nom, At)):
            hybrid = True
        elif isinstance(node, Updated):
            for u in iter_updates(node.update):
                kinds.add(type(u))
    if Union in kinds:
        return Fragment.LAMB_UNION
    kinds.discard(Seq)
    if not kinds:
        return Fragment.HATL if hybrid else Fragment.ATL
    if kinds == {Subst}:
        return Fragment.SLAMB
    if kinds == {Arrow}:
        return Fragment.ALAMB
    return Fragment.LAMB


def is_update_free(phi: Formula) -> bool:
    return not any(isinstance(n, Updated) for n in subformulas(phi))

