"""The two-agent, two-state running example and its updated variants."""
from __future__ import annotations

from typing import Dict, List, Tuple

from .formula import AddState, Arrow, Subst, Update, TOP
from .model import NamedCGM
from .norms import SanctioningNorm

ACTIONS = ("a", "b")
AGREE = (("a", "a"), ("b", "b"))
DISAGREE = (("a", "b"), ("b", "a"))


def _trans(rows: Dict[int, Tuple[int, int]]) -> dict:
    """``rows[s] = (target on agreement, target on disagreement)``."""
    out = {}
    for s, (agree, disagree) in rows.items():
        out.update({(s, a): agree for a in AGREE})
        out.update({(s, a): disagree for a in DISAGREE})
    return out


def model_m() -> NamedCGM:
    """Agreeing swaps between ``s`` and ``t``; disagreeing stays."""
    return NamedCGM.build(2, ACTIONS, (0, 1), _trans({0: (1, 0), 1: (0, 1)}),
                          {"p": {0}}, {"alpha": {0}, "beta": {1}}, {0: "s", 1: "t"})


def model_n() -> NamedCGM:
    """Agreeing stays; disagreeing swaps."""
    return NamedCGM.build(2, ACTIONS, (0, 1), _trans({0: (0, 1), 1: (1, 0)}),
                          {"p": {0}}, {"alpha": {0}, "beta": {1}}, {0: "s", 1: "t"})


def model_n_prime() -> NamedCGM:
    """``model_n`` renamed to ``gamma``/``delta`` with ``q`` added at ``s``."""
    return NamedCGM.build(2, ACTIONS, (0, 1), _trans({0: (0, 1), 1: (1, 0)}),
                          {"p": {0}, "q": {0}}, {"gamma": {0}, "delta": {1}}, {0: "s", 1: "t"})


def pi_1() -> List[Update]:
    """Add a state ``gamma`` carrying ``p`` and ``fine``."""
    return [AddState("gamma"), Subst("p", "gamma", TOP), Subst("fine", "gamma", TOP)]


def pi_2() -> List[Update]:
    """Route disagreement at ``alpha`` into ``gamma``, and out of it like ``alpha``."""
    return pi_1() + [
        Arrow("alpha", ("a", "b"), "gamma"),
        Arrow("alpha", ("b", "a"), "gamma"),
        Arrow("gamma", ("a", "a"), "beta"),
        Arrow("gamma", ("b", "b"), "beta"),
    ]


def sanction_norm() -> SanctioningNorm:
    """Disagreeing is fined everywhere."""
    return SanctioningNorm(TOP, frozenset(DISAGREE), frozenset({"fine"}))


SANCTION_POOL = ("gamma", "delta")


def expected_loop_aa() -> NamedCGM:
    """``model_m`` after ``#alpha -a,a-> #alpha``."""
    trans = _trans({0: (1, 0), 1: (0, 1)})
    trans[(0, ("a", "a"))] = 0
    return NamedCGM.build(2, ACTIONS, (0, 1), trans, {"p": {0}},
                          {"alpha": {0}, "beta": {1}}, {0: "s", 1: "t"})


def expected_pi_1() -> NamedCGM:
    trans = _trans({0: (1, 0), 1: (0, 1), 2: (2, 2)})
    return NamedCGM.build(2, ACTIONS, (0, 1, 2), trans, {"p": {0, 2}, "fine": {2}},
                          {"alpha": {0}, "beta": {1}, "gamma": {2}}, {0: "s", 1: "t", 2: "u"})


def expected_pi_2() -> NamedCGM:
    trans = _trans({0: (1, 2), 1: (0, 1), 2: (1, 2)})
    return NamedCGM.build(2, ACTIONS, (0, 1, 2), trans, {"p": {0, 2}, "fine": {2}},
                          {"alpha": {0}, "beta": {1}, "gamma": {2}}, {0: "s", 1: "t", 2: "u"})


def expected_sanctioned() -> NamedCGM:
    trans = _trans({0: (1, 2), 1: (0, 3), 2: (1, 2), 3: (0, 3)})
    return NamedCGM.build(2, ACTIONS, (0, 1, 2, 3), trans,
                          {"p": {0, 2}, "fine": {2, 3}},
                          {"alpha": {0}, "beta": {1}, "gamma": {2}, "delta": {3}},
                          {0: "s", 1: "t", 2: "u", 3: "v"})

