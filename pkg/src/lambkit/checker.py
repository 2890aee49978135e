"""Model checking by state labelling.

Temporal operators are evaluated with the Pre-image fixpoints of ATL.  An
update modality is evaluated on the updated model; for a substitution the
updated model depends on the evaluation point only through the truth of the
payload there, so at most two updated models are ever built per node.
Labellings are cached per query by (model fingerprint, subformula).
"""
from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Tuple

from array import array

from . import kernels
from .formula import (
    AddState, And, Arrow, At, Bottom, CoalF, CoalG, CoalRelease, CoalUntil,
    CoalX, Formula, Iff, Implies, Nom, Not, Or, Prop, Seq, Subst, Top, Union,
    Update, Updated, BOTTOM, TOP,
)
from .model import ModelError, NamedCGM, coalition_groups
from .updates import apply_update


def _groups(model: NamedCGM, coalition: FrozenSet[int]) -> Tuple[array, int]:
    for i in coalition:
        if not 1 <= i <= model.n_agents:
            raise ModelError(f"agent {i} outside 1..{model.n_agents}")
    rows = coalition_groups(model.n_agents, len(model.actions), frozenset(coalition))
    return array("i", [k for row in rows for k in row]), len(rows[0])


def _mask(model: NamedCGM, states: Iterable[int]) -> bytearray:
    idx = model.index
    out = bytearray(len(model.states))
    for s in states:
        out[idx[s]] = 1
    return out


def _unmask(model: NamedCGM, mask) -> FrozenSet[int]:
    return frozenset(s for s, bit in zip(model.states, mask) if bit)


def pre(model: NamedCGM, coalition: FrozenSet[int], q: Iterable[int]) -> FrozenSet[int]:
    """States from which ``coalition`` can force the next state into ``q``."""
    q = set(q)
    unknown = q - set(model.states)
    if unknown:
        raise ModelError(f"unknown states {sorted(unknown)}")
    groups, k = _groups(model, coalition)
    return _unmask(model, kernels.pre(model.succ_matrix, len(model.profiles), groups, k,
                                      _mask(model, q)))


class Checker:
    """One model-checking query context.

    ``memo`` toggles the labelling cache; ``stats`` collects
    ``(operator, changes, n_states)`` for every fixpoint computed.
    """

    def __init__(self, memo: bool = True):
        self.memo = memo
        self.cache: Dict[tuple, FrozenSet[int]] = {}
        self.stats: List[Tuple[str, int, int]] = []

    # -- public ---------------------------------------------------------------

    def mc(self, model: NamedCGM, s: int, phi: Formula) -> bool:
        model.check_state(s)
        return s in self.label(model, phi)

    def label(self, model: NamedCGM, phi: Formula) -> FrozenSet[int]:
        if not self.memo:
            return self._compute(model, phi)
        key = (model.fingerprint(), phi)
        hit = self.cache.get(key)
        order = model.canonical_order()
        if hit is not None:
            return frozenset(order[i] for i in hit)
        result = self._compute(model, phi)
        pos = {s: i for i, s in enumerate(order)}
        self.cache[key] = frozenset(pos[s] for s in result)
        return result

    # -- cases -----------------------------------------------------------------

    def _compute(self, model: NamedCGM, phi: Formula) -> FrozenSet[int]:
        S = frozenset(model.states)
        if isinstance(phi, Top):
            return S
        if isinstance(phi, Bottom):
            return frozenset()
        if isinstance(phi, Prop):
            return model.props.get(phi.name, frozenset())
        if isinstance(phi, Nom):
            return model.noms.get(phi.name, frozenset())
        if isinstance(phi, At):
            t = model.denotes(phi.nom)
            if t is None:
                return frozenset()
            return S if t in self.label(model, phi.body) else frozenset()
        if isinstance(phi, Not):
            return S - self.label(model, phi.body)
        if isinstance(phi, And):
            return self.label(model, phi.left) & self.label(model, phi.right)
        if isinstance(phi, Or):
            return self.label(model, phi.left) | self.label(model, phi.right)
        if isinstance(phi, Implies):
            return (S - self.label(model, phi.left)) | self.label(model, phi.right)
        if isinstance(phi, Iff):
            a, b = self.label(model, phi.left), self.label(model, phi.right)
            return (a & b) | (S - a - b)
        if isinstance(phi, CoalX):
            return pre(model, phi.coalition, self.label(model, phi.body))
        if isinstance(phi, CoalUntil):
            return self._until(model, phi.coalition, self.label(model, phi.left),
                               self.label(model, phi.right))
        if isinstance(phi, CoalF):
            return self._until(model, phi.coalition, self.label(model, TOP),
                               self.label(model, phi.body))
        if isinstance(phi, CoalRelease):
            return self._release(model, phi.coalition, self.label(model, phi.left),
                                 self.label(model, phi.right))
        if isinstance(phi, CoalG):
            return self._release(model, phi.coalition, self.label(model, BOTTOM),
                                 self.label(model, phi.body))
        if isinstance(phi, Updated):
            return self._updated(model, phi.update, phi.body)
        raise TypeError(f"not a formula: {phi!r}")

    def _until(self, model, coalition, hold, goal):
        groups, k = _groups(model, coalition)
        mask, changes = kernels.until(model.succ_matrix, len(model.profiles), groups, k,
                                      _mask(model, goal), _mask(model, hold))
        self.stats.append(("U", changes, len(model.states)))
        return _unmask(model, mask)

    def _release(self, model, coalition, rel, hold):
        groups, k = _groups(model, coalition)
        mask, changes = kernels.release(model.succ_matrix, len(model.profiles), groups, k,
                                        _mask(model, hold), _mask(model, rel))
        self.stats.append(("R", changes, len(model.states)))
        return _unmask(model, mask)

    def _updated(self, model: NamedCGM, update: Update, body: Formula) -> FrozenSet[int]:
        S = frozenset(model.states)
        if isinstance(update, Seq):
            return self.label(model, Updated(update.first, Updated(update.second, body)))
        if isinstance(update, Union):
            return (self.label(model, Updated(update.left, body))
                    & self.label(model, Updated(update.right, body)))
        anchor = model.states[0]
        if isinstance(update, Subst):
            if model.denotes(update.nom) is None:
                return self.label(model, body)
            payload = self.label(model, update.payload)
            out = set()
            for value, where in ((True, payload), (False, S - payload)):
                if where:
                    m2 = apply_update(model, anchor, update, lambda *_: value)
                    out |= where & self.label(m2, body)
            return frozenset(out)
        if isinstance(update, (Arrow, AddState)):
            m2 = apply_update(model, anchor, update)
            return self.label(m2, body) & S
        raise TypeError(f"not an update: {update!r}")


def mc(model: NamedCGM, s: int, phi: Formula, memo: bool = True) -> bool:
    """Decide whether ``phi`` holds in ``model`` at state ``s``."""
    return Checker(memo=memo).mc(model, s, phi)


def label(model: NamedCGM, phi: Formula, memo: bool = True) -> FrozenSet[int]:
    """All states of ``model`` where ``phi`` holds."""
    return Checker(memo=memo).label(model, phi)
