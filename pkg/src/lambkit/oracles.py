"""Brute-force reference evaluators.

``oracle_mc`` evaluates coalition operators straight from their semantics:
enumerate every memoryless strategy of the coalition and inspect every play
it allows.  It shares nothing with the fixpoint checker except the model
container and the update constructions, and is meant for desk-scale models.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Mapping, Sequence, Tuple

from .formula import (
    And, At, Bottom, CoalF, CoalG, CoalRelease, CoalUntil, CoalX, Formula,
    Iff, Implies, Nom, Not, Or, Prop, Seq, Top, Union, Update, Updated,
)
from .model import NamedCGM, outcome_set
from .updates import apply_update

DEFAULT_MAX_STATES = 6


class OracleRefusal(RuntimeError):
    """The instance is beyond the size the brute-force evaluator accepts."""


def strategies(model: NamedCGM, coalition: FrozenSet[int]) -> Iterator[Dict[Tuple[int, int], str]]:
    """Every memoryless strategy: a map (state, agent) -> action."""
    slots = [(s, i) for s in model.states for i in sorted(coalition)]
    for choice in itertools.product(model.actions, repeat=len(slots)):
        yield dict(zip(slots, choice))


def count_strategies(model: NamedCGM, coalition: FrozenSet[int]) -> int:
    return sum(1 for _ in strategies(model, coalition))


def _allowed(model: NamedCGM, coalition, sigma) -> Dict[int, FrozenSet[int]]:
    """Successors each state can have when the coalition follows ``sigma``."""
    return {s: outcome_set(model, s, {i: sigma[(s, i)] for i in coalition}) for s in model.states}


def _until_violated(succ, start, hold, goal, limit) -> bool:
    # A play violates (hold U goal) if it avoids goal and either leaves hold
    # or stays in hold forever.  Searching prefixes of length |S|+1 is
    # enough: a longer all-(hold, not goal) prefix repeats a state, and the
    # strategy is memoryless, so the cycle can be pumped forever.
    seen: Dict[Tuple[int, int], bool] = {}

    def bad(s: int, length: int) -> bool:
        key = (s, length)
        if key not in seen:
            if goal[s]:
                seen[key] = False
            elif not hold[s] or length >= limit:
                seen[key] = True
            else:
                seen[key] = any(bad(t, length + 1) for t in succ[s])
        return seen[key]

    return bad(start, 1)


def _release_violated(succ, start, rel, hold, limit) -> bool:
    # A violation is a finite prefix whose last state fails hold while rel
    # held at no earlier state; a state with both rel and hold releases the
    # obligation.  The shortest such prefix has no repeated state, so
    # prefixes of length |S| suffice.
    seen: Dict[Tuple[int, int], bool] = {}

    def bad(s: int, length: int) -> bool:
        key = (s, length)
        if key not in seen:
            if not hold[s]:
                seen[key] = True
            elif rel[s]:
                seen[key] = False
            elif length >= limit:
                seen[key] = False
            else:
                seen[key] = any(bad(t, length + 1) for t in succ[s])
        return seen[key]

    return bad(start, 1)


class Oracle:
    def __init__(self, max_states: int = DEFAULT_MAX_STATES):
        self.max_states = max_states
        self._memo: Dict[Tuple[int, Formula], Tuple[NamedCGM, Dict[int, bool]]] = {}
        self.strategy_count = 0

    def truth(self, model: NamedCGM, phi: Formula) -> Dict[int, bool]:
        key = (id(model), phi)
        hit = self._memo.get(key)
        if hit is not None and hit[0] is model:
            return hit[1]
        result = {s: self.holds(model, s, phi) for s in model.states}
        self._memo[key] = (model, result)
        return result

    def holds(self, model: NamedCGM, s: int, phi: Formula) -> bool:
        if len(model.states) > self.max_states:
            raise OracleRefusal(f"{len(model.states)} states exceeds oracle bound {self.max_states}")
        if isinstance(phi, Top):
            return True
        if isinstance(phi, Bottom):
            return False
        if isinstance(phi, Prop):
            return s in model.props.get(phi.name, ())
        if isinstance(phi, Nom):
            return s in model.noms.get(phi.name, ())
        if isinstance(phi, At):
            ext = model.noms.get(phi.nom, ())
            return len(ext) == 1 and self.holds(model, next(iter(ext)), phi.body)
        if isinstance(phi, Not):
            return not self.holds(model, s, phi.body)
        if isinstance(phi, And):
            return self.holds(model, s, phi.left) and self.holds(model, s, phi.right)
        if isinstance(phi, Or):
            return self.holds(model, s, phi.left) or self.holds(model, s, phi.right)
        if isinstance(phi, Implies):
            return (not self.holds(model, s, phi.left)) or self.holds(model, s, phi.right)
        if isinstance(phi, Iff):
            return self.holds(model, s, phi.left) == self.holds(model, s, phi.right)
        if isinstance(phi, (CoalX, CoalUntil, CoalRelease, CoalF, CoalG)):
            return self._strategic(model, s, phi)
        if isinstance(phi, Updated):
            return self._updated(model, s, phi.update, phi.body)
        raise TypeError(f"not a formula: {phi!r}")

    def _strategic(self, model: NamedCGM, s: int, phi: Formula) -> bool:
        coal = phi.coalition
        limit = len(model.states) + 1
        if isinstance(phi, CoalX):
            body = self.truth(model, phi.body)
            check = lambda succ: all(body[t] for t in succ[s])
        elif isinstance(phi, (CoalUntil, CoalF)):
            if isinstance(phi, CoalF):
                hold = {t: True for t in model.states}
                goal = self.truth(model, phi.body)
            else:
                hold, goal = self.truth(model, phi.left), self.truth(model, phi.right)
            check = lambda succ: not _until_violated(succ, s, hold, goal, limit)
        else:
            if isinstance(phi, CoalG):
                rel = {t: False for t in model.states}
                hold = self.truth(model, phi.body)
            else:
                rel, hold = self.truth(model, phi.left), self.truth(model, phi.right)
            check = lambda succ: not _release_violated(succ, s, rel, hold, limit)
        for sigma in strategies(model, coal):
            self.strategy_count += 1
            if check(_allowed(model, coal, sigma)):
                return True
        return False

    def _updated(self, model: NamedCGM, s: int, update: Update, body: Formula) -> bool:
        if isinstance(update, Seq):
            return self._updated(model, s, update.first, Updated(update.second, body))
        if isinstance(update, Union):
            return (self._updated(model, s, update.left, body)
                    and self._updated(model, s, update.right, body))
        new = apply_update(model, s, update, self.holds)
        return self.holds(new, s, body)


def oracle_mc(model: NamedCGM, s: int, phi: Formula, max_states: int = DEFAULT_MAX_STATES) -> bool:
    """Reference truth of ``phi`` at ``s`` by strategy enumeration."""
    model.check_state(s)
    return Oracle(max_states).holds(model, s, phi)


# -- propositional oracles ---------------------------------------------------

def eval_prop(phi: Formula, assignment: Mapping[str, bool]) -> bool:
    """Truth of a propositional formula; unassigned atoms are false."""
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Bottom):
        return False
    if isinstance(phi, Prop):
        return bool(assignment.get(phi.name, False))
    if isinstance(phi, Not):
        return not eval_prop(phi.body, assignment)
    if isinstance(phi, And):
        return eval_prop(phi.left, assignment) and eval_prop(phi.right, assignment)
    if isinstance(phi, Or):
        return eval_prop(phi.left, assignment) or eval_prop(phi.right, assignment)
    if isinstance(phi, Implies):
        return (not eval_prop(phi.left, assignment)) or eval_prop(phi.right, assignment)
    if isinstance(phi, Iff):
        return eval_prop(phi.left, assignment) == eval_prop(phi.right, assignment)
    raise ValueError(f"not propositional: {phi!r}")


@dataclass(frozen=True)
class Qbf:
    """Closed prenex QBF; ``prefix`` lists ('A'|'E', variable) outermost first."""

    prefix: Tuple[Tuple[str, str], ...]
    matrix: Formula

    def __post_init__(self):
        from .formula import props_of
        names = [v for _, v in self.prefix]
        if len(set(names)) != len(names):
            raise ValueError("a variable is quantified twice")
        if any(q not in ("A", "E") for q, _ in self.prefix):
            raise ValueError("quantifiers must be 'A' or 'E'")
        free = props_of(self.matrix) - set(names)
        if free:
            raise ValueError(f"free variables: {sorted(free)}")

    @property
    def variables(self) -> List[str]:
        return [v for _, v in self.prefix]


def eval_qbf(q: Qbf) -> bool:
    """Truth by expanding both branches of every quantifier."""
    def go(k: int, env: Dict[str, bool]) -> bool:
        if k == len(q.prefix):
            return eval_prop(q.matrix, env)
        quant, var = q.prefix[k]
        branches = (go(k + 1, {**env, var: b}) for b in (False, True))
        return all(branches) if quant == "A" else any(branches)
    return go(0, {})


@dataclass(frozen=True)
class CnfInstance:
    """3-CNF over variables 1..m; literals are signed variable indices."""

    m: int
    clauses: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        for c in self.clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have exactly 3 literals")
            if any(lit == 0 or abs(lit) > self.m for lit in c):
                raise ValueError(f"clause {c} references a variable outside 1..{self.m}")

    @classmethod
    def padded(cls, m: int, clauses: Sequence[Sequence[int]]) -> "CnfInstance":
        """Pad 1- and 2-literal clauses by repeating their last literal."""
        out = []
        for c in clauses:
            c = list(c)
            if not 1 <= len(c) <= 3:
                raise ValueError(f"clause {c} must have 1..3 literals")
            while len(c) < 3:
                c.append(c[-1])
            out.append(tuple(c))
        return cls(m, tuple(out))


MAX_SAT_VARS = 20


def brute_sat(cnf: CnfInstance) -> bool:
    if cnf.m > MAX_SAT_VARS:
        raise OracleRefusal(f"{cnf.m} variables exceeds brute-force bound {MAX_SAT_VARS}")
    for bits in itertools.product((False, True), repeat=cnf.m):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in cnf.clauses):
            return True
    return False
