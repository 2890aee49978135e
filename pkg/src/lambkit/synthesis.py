"""Bounded modification synthesis.

Searches for a sequence of atomic updates from a finite alphabet, of total
symbol size at most a bound, after which a goal formula holds at the
designated state.  Sequences are explored cheapest first, so a returned
witness has minimal total size over the alphabet.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .checker import Checker
from .formula import (
    AddState, Arrow, Formula, Not, Prop, Subst, Update, BOTTOM, TOP,
    conj, disj, props_of, update_size,
)
from .model import NamedCGM
from .oracles import CnfInstance
from .updates import apply_update


@dataclass
class SynthesisConfig:
    bound: int
    alphabet: Optional[List[Update]] = None
    pool: Sequence[str] = ()
    prune: bool = True

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("bound must be non-negative")
        for u in self.alphabet or ():
            if isinstance(u, Subst) and u.payload not in (TOP, BOTTOM):
                raise ValueError("substitution payloads in the alphabet must be true or false")


def _constant(model: NamedCGM, s: int, payload: Formula) -> bool:
    if payload not in (TOP, BOTTOM):
        raise ValueError("synthesis only handles constant substitution payloads")
    return payload == TOP


def candidate_alphabet(model: NamedCGM, phi: Formula, pool: Sequence[str] = ()) -> List[Update]:
    """Every constant substitution, arrow and state addition over the model's names.

    Order: substitutions (true before false), then arrows, then additions.
    """
    pool = [n for n in pool if n not in model.noms]
    props = sorted(props_of(phi) | set(model.props))
    noms = sorted(model.noms) + list(pool)
    out: List[Update] = []
    for p in props:
        for a in noms:
            out.append(Subst(p, a, TOP))
            out.append(Subst(p, a, BOTTOM))
    for a in noms:
        for profile in model.profiles:
            for b in noms:
                out.append(Arrow(a, profile, b))
    out.extend(AddState(n) for n in pool)
    return out


def bounded_synthesis(model: NamedCGM, s: int, phi: Formula,
                      config: SynthesisConfig) -> Optional[List[Update]]:
    """Cheapest update sequence within budget making ``phi`` true at ``s``, else None."""
    model.check_state(s)
    alphabet = config.alphabet if config.alphabet is not None else candidate_alphabet(model, phi, config.pool)
    costs = [update_size(u) for u in alphabet]
    checker = Checker()
    # heap entries: (cost, alphabet-index path, model); the path breaks ties
    heap: List[tuple] = [(0, (), 0, model)]
    counter = 1
    settled = set()
    while heap:
        cost, path, _, current = heapq.heappop(heap)
        if config.prune:
            key = current.fingerprint()
            if key in settled:
                continue
            settled.add(key)
        if checker.mc(current, s, phi):
            return [alphabet[i] for i in path]
        for i, (u, c) in enumerate(zip(alphabet, costs)):
            if cost + c > config.bound:
                continue
            nxt = apply_update(current, s, u, _constant)
            if config.prune and nxt.fingerprint() in settled:
                continue
            heapq.heappush(heap, (cost + c, path + (i,), counter, nxt))
            counter += 1
    return None


def cnf_formula(cnf: CnfInstance) -> Formula:
    def lit(l: int) -> Formula:
        atom = Prop(f"x{abs(l)}")
        return atom if l > 0 else Not(atom)
    return conj(*(disj(*(lit(l) for l in clause)) for clause in cnf.clauses))


def encode_3sat(cnf: CnfInstance) -> Tuple[NamedCGM, int, Formula, SynthesisConfig]:
    """Single looping state named ``alpha`` with every variable false.

    The CNF is satisfiable iff some set of ``x_i@alpha := true`` updates
    makes the formula true there.
    """
    model = NamedCGM.build(1, ("a",), (0,), {(0, ("a",)): 0}, {}, {"alpha": {0}}, {0: "s"})
    alphabet: List[Update] = [Subst(f"x{i}", "alpha", TOP) for i in range(1, cnf.m + 1)]
    bound = sum(update_size(u) for u in alphabet)
    return model, 0, cnf_formula(cnf), SynthesisConfig(bound=bound, alphabet=alphabet)
