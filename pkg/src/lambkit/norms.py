"""Compilation of sanctioning and regimenting norms into update sequences.

A sanctioning norm ``(condition, profiles, sanctions)`` makes every listed
profile played at a condition state lead into a fined copy of its target.
A regimenting norm turns the listed profiles at condition states into
self-loops.  Conditions are evaluated once, on the model before any update.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Union

from .checker import label
from .formula import AddState, Arrow, Formula, Subst, TOP, Update
from .model import ModelError, NamedCGM, Profile
from .syntax import ParseError, parse_formula_prefix


@dataclass(frozen=True)
class SanctioningNorm:
    condition: Formula
    profiles: FrozenSet[Profile]
    sanctions: FrozenSet[str]

    def __post_init__(self):
        if not self.profiles:
            raise ValueError("a sanctioning norm needs at least one profile")
        if not self.sanctions:
            raise ValueError("a sanctioning norm needs at least one sanction")


@dataclass(frozen=True)
class RegimentingNorm:
    condition: Formula
    profiles: FrozenSet[Profile]

    def __post_init__(self):
        if not self.profiles:
            raise ValueError("a regimenting norm needs at least one profile")


Norm = Union[SanctioningNorm, RegimentingNorm]


def fresh_nominals(model: NamedCGM, reserved: Iterable[str] = ()) -> Iterator[str]:
    """``_g0``, ``_g1``, ... skipping names the model or caller already use."""
    taken = set(model.noms) | set(reserved)
    i = 0
    while True:
        name = f"_g{i}"
        if name not in taken:
            yield name
        i += 1


def _check_profiles(model: NamedCGM, profiles) -> None:
    for a in profiles:
        if len(a) != model.n_agents or any(x not in model.actions for x in a):
            raise ModelError(f"profile {a} is not a complete profile of this model")


def _by_name(model: NamedCGM, states) -> List[int]:
    return sorted(states, key=lambda s: sorted(model.nominals_at(s)))


def compile_sanctioning(model: NamedCGM, norm: SanctioningNorm,
                        pool: Optional[Sequence[str]] = None) -> List[Update]:
    """Update sequence implementing ``norm``; copy-state names come from ``pool``.

    Every target of a sanctioned transition out of a condition state gets
    one copy carrying the target's propositions plus the sanctions.  From a
    copy, sanctioned profiles of a condition state keep leading to copies and
    every other profile behaves as in the original.
    """
    _check_profiles(model, norm.profiles)
    sanctioned = sorted(norm.profiles)
    cond = set(label(model, norm.condition))
    targets = {model.trans[(t, a)] for t in cond for a in sanctioned}
    if not targets:
        return []
    ordered = _by_name(model, targets)
    names = iter(pool) if pool is not None else fresh_nominals(model)
    copy = {}
    for t in ordered:
        try:
            name = next(names)
        except StopIteration:
            raise ModelError(f"nominal pool too small: need {len(ordered)} fresh names") from None
        if name in model.noms:
            raise ModelError(f"pool nominal {name} is already used by the model")
        copy[t] = name
    seq: List[Update] = []
    for t in ordered:
        seq.append(AddState(copy[t]))
        for q in sorted(model.props_at(t) | norm.sanctions):
            seq.append(Subst(q, copy[t], TOP))
    for t in _by_name(model, cond):
        for a in sanctioned:
            seq.append(Arrow(model.name_of(t), a, copy[model.trans[(t, a)]]))
    for t in ordered:
        for a in model.profiles:
            target = model.trans[(t, a)]
            if t in cond and a in norm.profiles:
                seq.append(Arrow(copy[t], a, copy[target]))
            else:
                seq.append(Arrow(copy[t], a, model.name_of(target)))
    return seq


def compile_regimenting(model: NamedCGM, norm: RegimentingNorm) -> List[Update]:
    """Loop every listed profile at a condition state back to that state."""
    _check_profiles(model, norm.profiles)
    seq: List[Update] = []
    for t in _by_name(model, label(model, norm.condition)):
        me = model.name_of(t)
        seq.extend(Arrow(me, a, me) for a in sorted(norm.profiles))
    return seq


def compile_norm(model: NamedCGM, norm: Norm, pool: Optional[Sequence[str]] = None) -> List[Update]:
    if isinstance(norm, SanctioningNorm):
        return compile_sanctioning(model, norm, pool)
    return compile_regimenting(model, norm)


_NORM_HEAD = re.compile(r"\s*(sanction|regiment)\s+when\s+")


def parse_norm(text: str) -> Norm:
    """Parse ``sanction when <phi> on <profile>+ fine <prop>+`` or
    ``regiment when <phi> on <profile>+``; profiles are comma-separated actions."""
    m = _NORM_HEAD.match(text)
    if not m:
        raise ParseError("norm must start with 'sanction when' or 'regiment when'", pos=0)
    kind = m.group(1)
    rest = text[m.end():]
    try:
        cond, end = parse_formula_prefix(rest)
    except ParseError as exc:
        raise ParseError(f"bad norm condition: {exc}") from None
    words = rest[end:].split()
    if not words or words[0] != "on":
        raise ParseError("expected 'on' after the norm condition")
    words = words[1:]
    if kind == "sanction":
        if "fine" not in words:
            raise ParseError("sanctioning norm needs 'fine <prop>+'")
        k = words.index("fine")
        prof_words, sanctions = words[:k], words[k + 1:]
        if not sanctions:
            raise ParseError("sanctioning norm needs at least one sanction")
    else:
        prof_words, sanctions = words, []
    if not prof_words:
        raise ParseError("norm needs at least one profile")
    profiles = frozenset(tuple(w.split(",")) for w in prof_words)
    if kind == "sanction":
        return SanctioningNorm(cond, profiles, frozenset(sanctions))
    return RegimentingNorm(cond, profiles)
