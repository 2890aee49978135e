"""Named concurrent game models.

A model is a finite game graph whose transitions are indexed by complete
action profiles (tuples of action names in agent order 1..n), with a
proposition valuation and a nominal valuation.  States are opaque integers;
everything externally meaningful about a state is carried by its nominals.
"""
from __future__ import annotations

import itertools
from array import array
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

Profile = Tuple[str, ...]


class Fingerprint(tuple):
    """Tuple with its hash computed once; used as a memo key."""

    def __new__(cls, items):
        self = super().__new__(cls, items)
        self._hash = tuple.__hash__(self)
        return self

    def __hash__(self):
        return self._hash


class ModelError(ValueError):
    """Raised for ill-formed models or bad arguments to model operations."""


@lru_cache(maxsize=None)
def all_profiles(actions: Tuple[str, ...], n_agents: int) -> Tuple[Profile, ...]:
    return tuple(itertools.product(actions, repeat=n_agents))


@lru_cache(maxsize=None)
def coalition_groups(n_agents: int, n_actions: int, coalition: FrozenSet[int]) -> Tuple[Tuple[int, ...], ...]:
    """Indices of complete profiles, grouped by the coalition's partial profile.

    Profile indices follow ``itertools.product`` order (agent 1 most
    significant).  Each group lists the completions of one partial profile.
    """
    members = sorted(coalition)
    groups: Dict[Tuple[int, ...], List[int]] = {}
    for idx, combo in enumerate(itertools.product(range(n_actions), repeat=n_agents)):
        key = tuple(combo[i - 1] for i in members)
        groups.setdefault(key, []).append(idx)
    return tuple(tuple(groups[k]) for k in sorted(groups))


@dataclass(frozen=True, eq=False)
class NamedCGM:
    n_agents: int
    actions: Tuple[str, ...]
    states: Tuple[int, ...]
    trans: Mapping[Tuple[int, Profile], int]
    props: Mapping[str, FrozenSet[int]]
    noms: Mapping[str, FrozenSet[int]]
    labels: Mapping[int, str] = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    @classmethod
    def build(cls, n_agents: int, actions: Iterable[str], states: Iterable[int],
              trans: Mapping[Tuple[int, Profile], int],
              props: Mapping[str, Iterable[int]] = (),
              noms: Mapping[str, Iterable[int]] = (),
              labels: Mapping[int, str] = ()) -> "NamedCGM":
        """Normalising constructor: empty valuations are dropped."""
        props = dict(props)
        noms = dict(noms)
        return cls(
            n_agents=int(n_agents),
            actions=tuple(actions),
            states=tuple(sorted(set(states))),
            trans={(s, tuple(a)): t for (s, a), t in dict(trans).items()},
            props={p: frozenset(v) for p, v in sorted(props.items()) if v},
            noms={n: frozenset(v) for n, v in sorted(noms.items()) if v},
            labels=dict(labels),
        )

    # -- basic queries -------------------------------------------------------

    @property
    def profiles(self) -> Tuple[Profile, ...]:
        return all_profiles(self.actions, self.n_agents)

    def label(self, s: int) -> str:
        return self.labels.get(s, str(s))

    def denotes(self, nom: str) -> Optional[int]:
        """The state named ``nom``, or None when the name is unused."""
        ext = self.noms.get(nom)
        if ext and len(ext) == 1:
            return next(iter(ext))
        return None

    def nominals_at(self, s: int) -> FrozenSet[str]:
        return frozenset(n for n, ext in self.noms.items() if s in ext)

    def props_at(self, s: int) -> FrozenSet[str]:
        return frozenset(p for p, ext in self.props.items() if s in ext)

    def true_at(self, s: int) -> FrozenSet[str]:
        return self.props_at(s) | self.nominals_at(s)

    def name_of(self, s: int) -> str:
        """Smallest nominal of ``s``; used when an update must refer to it."""
        return min(self.nominals_at(s))

    def successor(self, s: int, profile: Profile) -> int:
        return self.trans[(s, tuple(profile))]

    def successors(self, s: int) -> FrozenSet[int]:
        return frozenset(self.trans[(s, a)] for a in self.profiles)

    def resolve_state(self, ref: str) -> int:
        """Map a CLI-style reference (label, integer id, or ``#nominal``)."""
        if ref.startswith("#"):
            s = self.denotes(ref[1:])
            if s is None:
                raise ModelError(f"nominal {ref[1:]} denotes no state")
            return s
        for s, lab in self.labels.items():
            if lab == ref:
                return s
        if ref.lstrip("-").isdigit() and int(ref) in self.states:
            return int(ref)
        raise ModelError(f"unknown state {ref!r}")

    def check_state(self, s: int) -> None:
        if s not in self.states:
            raise ModelError(f"unknown state {s!r}")

    # -- cached derived structures ------------------------------------------

    @property
    def index(self) -> Dict[int, int]:
        """Position of each state in ``states``."""
        idx = self._cache.get("index")
        if idx is None:
            idx = {s: i for i, s in enumerate(self.states)}
            self._cache["index"] = idx
        return idx

    @property
    def succ_matrix(self) -> array:
        """Flat row-major (state position x profile index) successor positions."""
        mat = self._cache.get("succ")
        if mat is None:
            idx = self.index
            mat = array("i", [idx[self.trans[(s, a)]] for s in self.states for a in self.profiles])
            self._cache["succ"] = mat
        return mat

    def canonical_order(self) -> Tuple[int, ...]:
        """States sorted by their sorted nominal sets (unique when properly named)."""
        order = self._cache.get("canon_order")
        if order is None:
            order = tuple(sorted(self.states, key=lambda s: sorted(self.nominals_at(s))))
            self._cache["canon_order"] = order
        return order

    def fingerprint(self) -> tuple:
        """Structural key invariant under renumbering of state ids."""
        key = self._cache.get("fingerprint")
        if key is None:
            order = self.canonical_order()
            pos = {s: i for i, s in enumerate(order)}
            key = Fingerprint((
                self.n_agents,
                self.actions,
                tuple(tuple(sorted(self.nominals_at(s))) for s in order),
                tuple(tuple(sorted(self.props_at(s))) for s in order),
                tuple(pos[self.trans[(s, a)]] for s in order for a in self.profiles),
            ))
            self._cache["fingerprint"] = key
        return key


# -- operations --------------------------------------------------------------

def _fmt_profile(profile: Profile) -> str:
    return "(" + ",".join(profile) + ")"


def validate(model: NamedCGM) -> List[str]:
    """Describe every violated model invariant; an empty list means valid."""
    issues: List[str] = []
    if model.n_agents < 1:
        issues.append(f"agent count {model.n_agents} must be at least 1")
    if not model.actions:
        issues.append("action alphabet is empty")
    if len(set(model.actions)) != len(model.actions):
        issues.append("action alphabet has duplicates")
    if not model.states:
        issues.append("state set is empty")
    states = set(model.states)
    profiles = set(model.profiles)
    for s in model.states:
        for a in model.profiles:
            t = model.trans.get((s, a))
            if t is None:
                issues.append(f"missing transition {model.label(s)}/{_fmt_profile(a)}")
            elif t not in states:
                issues.append(f"transition {model.label(s)}/{_fmt_profile(a)} targets unknown state {t}")
    for (s, a) in model.trans:
        if s not in states:
            issues.append(f"transition from unknown state {s}")
        elif a not in profiles:
            issues.append(f"transition {model.label(s)}/{_fmt_profile(a)} uses an invalid profile")
    for nom, ext in model.noms.items():
        if len(ext) > 1:
            issues.append(f"nominal {nom} denotes {len(ext)} states")
        if not ext <= states:
            issues.append(f"nominal {nom} names an unknown state")
    for p, ext in model.props.items():
        if not ext <= states:
            issues.append(f"proposition {p} holds at an unknown state")
    named = set().union(*model.noms.values()) if model.noms else set()
    for s in model.states:
        if s not in named:
            issues.append(f"state {model.label(s)} has no nominal")
    return issues


def check_valid(model: NamedCGM) -> NamedCGM:
    issues = validate(model)
    if issues:
        raise ModelError("; ".join(issues))
    return model


def model_size(model: NamedCGM) -> int:
    """|Agt| + |Act| + |S| + |S|*|Act|^|Agt| + sum of |True(s)|."""
    n_states = len(model.states)
    return (model.n_agents + len(model.actions) + n_states
            + n_states * len(model.actions) ** model.n_agents
            + sum(len(model.true_at(s)) for s in model.states))


def outcome_set(model: NamedCGM, s: int, partial: Mapping[int, str]) -> FrozenSet[int]:
    """States reachable from ``s`` by completions of a coalition's profile.

    ``partial`` maps agent numbers of the coalition to their actions.
    """
    model.check_state(s)
    for agent, act in partial.items():
        if not 1 <= agent <= model.n_agents:
            raise ModelError(f"agent {agent} outside 1..{model.n_agents}")
        if act not in model.actions:
            raise ModelError(f"unknown action {act!r}")
    free = [i for i in range(1, model.n_agents + 1) if i not in partial]
    out = set()
    for rest in itertools.product(model.actions, repeat=len(free)):
        choice = dict(partial)
        choice.update(zip(free, rest))
        out.add(model.trans[(s, tuple(choice[i] for i in range(1, model.n_agents + 1)))])
    return frozenset(out)


def fresh_state_id(model: NamedCGM) -> int:
    """Smallest non-negative integer not used as a state id."""
    used = set(model.states)
    i = 0
    while i in used:
        i += 1
    return i


def disjoint_union(m1: NamedCGM, m2: NamedCGM,
                   renaming: Optional[Mapping[str, str]] = None) -> NamedCGM:
    """Side-by-side union; ``renaming`` is applied to the nominals of ``m2``."""
    if m1.n_agents != m2.n_agents or m1.actions != m2.actions:
        raise ModelError("models have different agent/action signatures")
    renaming = dict(renaming or {})
    noms2 = {}
    for nom, ext in m2.noms.items():
        new = renaming.get(nom, nom)
        if new in noms2:
            raise ModelError(f"renaming merges two nominals into {new}")
        noms2[new] = ext
    clash = set(m1.noms) & set(noms2)
    if clash:
        raise ModelError(f"nominal clash: {', '.join(sorted(clash))}")
    offset = (max(m1.states) + 1) if m1.states else 0
    shift = {s: s + offset for s in m2.states}
    trans = dict(m1.trans)
    trans.update({(shift[s], a): shift[t] for (s, a), t in m2.trans.items()})
    props: Dict[str, set] = {p: set(v) for p, v in m1.props.items()}
    for p, ext in m2.props.items():
        props.setdefault(p, set()).update(shift[s] for s in ext)
    noms = {n: set(v) for n, v in m1.noms.items()}
    noms.update({n: {shift[s] for s in ext} for n, ext in noms2.items()})
    labels = {s: m1.label(s) for s in m1.states}
    taken = set(labels.values())
    for s in m2.states:
        lab = m2.label(s)
        while lab in taken:
            lab += "'"
        taken.add(lab)
        labels[shift[s]] = lab
    return NamedCGM.build(m1.n_agents, m1.actions, list(m1.states) + list(shift.values()),
                          trans, props, noms, labels)


def models_equal_mod_ids(m1: NamedCGM, m2: NamedCGM) -> bool:
    """True iff matching states by shared nominals is a structure-preserving bijection."""
    if m1.n_agents != m2.n_agents or set(m1.actions) != set(m2.actions):
        return False
    if len(m1.states) != len(m2.states):
        return False
    mapping: Dict[int, int] = {}
    for s in m1.states:
        names = m1.nominals_at(s)
        targets = {t for n in names for t in m2.noms.get(n, ())}
        if len(targets) != 1:
            return False
        mapping[s] = targets.pop()
    if len(set(mapping.values())) != len(mapping):
        return False
    for s, t in mapping.items():
        if m1.nominals_at(s) != m2.nominals_at(t) or m1.props_at(s) != m2.props_at(t):
            return False
        for a in m1.profiles:
            if mapping[m1.trans[(s, a)]] != m2.trans.get((t, a)):
                return False
    return True
