"""Seed-deterministic generators for test corpora.

Every generator takes a ``random.Random`` so a corpus is reproducible from
its seed.  Formula generators mix in a nominal that no state carries, so
the "unnamed nominal" branches of the semantics get exercised.
"""
from __future__ import annotations

import random
from typing import List, Optional, Sequence, Tuple

from .formula import (
    AddState, And, Arrow, At, CoalF, CoalG, CoalRelease, CoalUntil, CoalX,
    Formula, Iff, Implies, Nom, Not, Or, Prop, Seq, Subst, Union, Update,
    Updated, BOTTOM, TOP,
)
from .model import NamedCGM, all_profiles
from .oracles import CnfInstance, Qbf
from .reductions import qbf_from_clauses

PROPS = ("p", "q")
NOMINALS = ("alpha", "beta", "gamma", "delta", "eps")
GHOST = "omega"
FRESH = ("nu", "mu")


def random_model(rng: random.Random, max_states: int = 4, n_agents: int = 2,
                 actions: Sequence[str] = ("a", "b"), props: Sequence[str] = PROPS,
                 nominals: Sequence[str] = NOMINALS) -> NamedCGM:
    """Properly named model: each state gets one nominal, some get a second."""
    n = rng.randint(1, max_states)
    states = tuple(range(n))
    names = list(nominals)
    rng.shuffle(names)
    noms = {names[s]: {s} for s in states}
    for extra in names[n:]:
        if rng.random() < 0.3:
            noms[extra] = {rng.choice(states)}
    trans = {(s, a): rng.choice(states)
             for s in states for a in all_profiles(tuple(actions), n_agents)}
    ext = {p: {s for s in states if rng.random() < 0.5} for p in props}
    return NamedCGM.build(n_agents, actions, states, trans, ext, noms)


def _coalition(rng: random.Random, n_agents: int) -> frozenset:
    return frozenset(i for i in range(1, n_agents + 1) if rng.random() < 0.5)


class FormulaGen:
    """Random formulas over fixed vocabularies.

    ``kinds`` selects which atomic updates may appear (a subset of
    ``{"subst", "arrow", "add"}``); ``union`` allows union updates.
    ``max_adds`` caps the state additions along any path, which bounds
    the size of every model the formula can reach.
    """

    def __init__(self, rng: random.Random, n_agents: int = 2, actions: Sequence[str] = ("a", "b"),
                 props: Sequence[str] = PROPS, nominals: Sequence[str] = NOMINALS + (GHOST,),
                 kinds: Sequence[str] = ("subst", "arrow", "add"), union: bool = True,
                 hybrid: bool = True, max_adds: int = 1):
        self.rng = rng
        self.n_agents = n_agents
        self.profiles = all_profiles(tuple(actions), n_agents)
        self.props = tuple(props)
        self.nominals = tuple(nominals)
        self.kinds = tuple(kinds)
        self.union = union
        self.hybrid = hybrid
        self.max_adds = max_adds

    def atom(self) -> Formula:
        r = self.rng.random()
        if r < 0.1:
            return self.rng.choice((TOP, BOTTOM))
        if self.hybrid and r < 0.35:
            return Nom(self.rng.choice(self.nominals + FRESH[:1]))
        return Prop(self.rng.choice(self.props))

    def formula(self, depth: int, adds: Optional[int] = None) -> Formula:
        adds = self.max_adds if adds is None else adds
        rng = self.rng
        if depth <= 0 or rng.random() < 0.15:
            return self.atom()
        d = depth - 1
        ops = ["not", "and", "or", "imp", "iff", "X", "U", "R", "F", "G"]
        if self.hybrid:
            ops.append("at")
        if self.kinds:
            ops.extend(["upd"] * 3)
        op = rng.choice(ops)
        if op == "not":
            return Not(self.formula(d, adds))
        if op in ("and", "or", "imp", "iff"):
            cls = {"and": And, "or": Or, "imp": Implies, "iff": Iff}[op]
            return cls(self.formula(d, adds), self.formula(d, adds))
        if op == "at":
            return At(rng.choice(self.nominals + FRESH[:1]), self.formula(d, adds))
        c = _coalition(rng, self.n_agents)
        if op == "X":
            return CoalX(c, self.formula(d, adds))
        if op == "F":
            return CoalF(c, self.formula(d, adds))
        if op == "G":
            return CoalG(c, self.formula(d, adds))
        if op == "U":
            return CoalUntil(c, self.formula(d, adds), self.formula(d, adds))
        if op == "R":
            return CoalRelease(c, self.formula(d, adds), self.formula(d, adds))
        upd, used = self.update(d, adds, allow_seq=True)
        return Updated(upd, self.formula(d, adds - used))

    def atomic_update(self, depth: int, adds: int) -> Tuple[Update, int]:
        rng = self.rng
        kinds = [k for k in self.kinds if k != "add" or adds > 0]
        kind = rng.choice(kinds)
        names = self.nominals + FRESH
        if kind == "subst":
            payload = self.formula(depth, adds) if rng.random() < 0.3 else rng.choice((TOP, BOTTOM))
            return Subst(rng.choice(self.props), rng.choice(names), payload), 0
        if kind == "arrow":
            return Arrow(rng.choice(names), rng.choice(self.profiles), rng.choice(names)), 0
        return AddState(rng.choice(FRESH)), 1

    def update(self, depth: int, adds: int, allow_seq: bool = False) -> Tuple[Update, int]:
        """A random update and the number of states it may add on one branch."""
        rng = self.rng
        r = rng.random()
        if self.union and r < 0.3:
            left, ul = self.atomic_update(depth, adds)
            right, ur = self.atomic_update(depth, adds)
            return Union(left, right), max(ul, ur)
        if allow_seq and r < 0.45:
            first, u1 = self.atomic_update(depth, adds)
            second, u2 = self.atomic_update(depth, adds - u1)
            return Seq(first, second), u1 + u2
        return self.atomic_update(depth, adds)


def random_lamb_union(rng: random.Random, depth: int = 3, n_agents: int = 2) -> Formula:
    return FormulaGen(rng, n_agents=n_agents).formula(depth)


def random_slamb(rng: random.Random, depth: int = 4, n_agents: int = 2) -> Formula:
    return FormulaGen(rng, n_agents=n_agents, kinds=("subst",), union=False).formula(depth)


def random_update(rng: random.Random, n_agents: int = 2) -> Update:
    """A single update; validity tests apply it to random models."""
    gen = FormulaGen(rng, n_agents=n_agents)
    return gen.update(1, 2, allow_seq=True)[0]


def random_cnf(rng: random.Random, m: int, n_clauses: Optional[int] = None) -> CnfInstance:
    """Random 3-CNF near the satisfiability threshold when ``n_clauses`` is omitted."""
    k = n_clauses if n_clauses is not None else max(1, round(4.26 * m))
    clauses = []
    for _ in range(k):
        clauses.append(tuple(rng.choice((1, -1)) * rng.randint(1, m) for _ in range(3)))
    return CnfInstance(m, tuple(clauses))


def random_qbf(rng: random.Random, max_vars: int = 8) -> Qbf:
    """Prenex QBF over x1..xn in random order; the matrix has clauses of 1 to 3 literals."""
    n = rng.randint(1, max_vars)
    prefix = [(rng.choice("AE"), v) for v in range(1, n + 1)]
    rng.shuffle(prefix)
    k = rng.randint(1, 2 * n + 1)
    clauses: List[Tuple[int, ...]] = [
        tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(rng.randint(1, 3)))
        for _ in range(k)
    ]
    return qbf_from_clauses(prefix, clauses)


def ring_model(n: int) -> NamedCGM:
    """Ring of ``n`` states for two agents with actions ``a``/``b``.

    Agreeing on ``a`` steps forward, agreeing on ``b`` steps back, and a
    disagreement stays put.  ``p`` holds at every third state and ``q`` at
    every fifth; state ``i`` is named ``n<i>``.
    """
    states = tuple(range(n))
    trans = {}
    for s in states:
        trans[(s, ("a", "a"))] = (s + 1) % n
        trans[(s, ("b", "b"))] = (s - 1) % n
        trans[(s, ("a", "b"))] = s
        trans[(s, ("b", "a"))] = s
    props = {"p": {s for s in states if s % 3 == 0}, "q": {s for s in states if s % 5 == 0}}
    noms = {f"n{s}": {s} for s in states}
    return NamedCGM.build(2, ("a", "b"), states, trans, props, noms)
