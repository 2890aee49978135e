"""Construction of updated models for the three primitive updates."""
from __future__ import annotations

from typing import Callable, Optional

from .formula import AddState, Arrow, Formula, Subst, Update
from .model import ModelError, NamedCGM, fresh_state_id

EvalHook = Callable[[NamedCGM, int, Formula], bool]


def _default_eval(model: NamedCGM, s: int, phi: Formula) -> bool:
    from .checker import mc
    return mc(model, s, phi)


def substitute(model: NamedCGM, prop: str, nom: str, value: bool) -> NamedCGM:
    """Force ``prop`` to ``value`` at the state named ``nom`` (identity if unnamed)."""
    t = model.denotes(nom)
    if t is None:
        return model
    ext = model.props.get(prop, frozenset())
    new_ext = ext | {t} if value else ext - {t}
    if new_ext == ext:
        return model
    props = dict(model.props)
    props[prop] = new_ext
    return NamedCGM.build(model.n_agents, model.actions, model.states, model.trans,
                          props, model.noms, model.labels)


def redirect(model: NamedCGM, src: str, profile, dst: str) -> NamedCGM:
    profile = tuple(profile)
    if len(profile) != model.n_agents or any(a not in model.actions for a in profile):
        raise ModelError(f"arrow profile {profile} is not a complete profile of this model")
    s, t = model.denotes(src), model.denotes(dst)
    if s is None or t is None or model.trans[(s, profile)] == t:
        return model
    trans = dict(model.trans)
    trans[(s, profile)] = t
    return NamedCGM.build(model.n_agents, model.actions, model.states, trans,
                          model.props, model.noms, model.labels)


def add_state(model: NamedCGM, nom: str) -> NamedCGM:
    """Add a fresh all-false state named ``nom`` whose transitions all loop."""
    if nom in model.noms:
        return model
    t = fresh_state_id(model)
    trans = dict(model.trans)
    trans.update({(t, a): t for a in model.profiles})
    noms = dict(model.noms)
    noms[nom] = frozenset({t})
    labels = dict(model.labels)
    taken = set(labels.values())
    lab = nom
    while lab in taken:
        lab = "_" + lab
    labels[t] = lab
    return NamedCGM.build(model.n_agents, model.actions, model.states + (t,), trans,
                          model.props, noms, labels)


def apply_update(model: NamedCGM, s: int, update: Update,
                 eval: Optional[EvalHook] = None) -> NamedCGM:
    """The model obtained from ``model`` at evaluation point ``s`` by ``update``.

    Substitution payloads are evaluated at ``s`` through ``eval`` (the full
    model checker by default).  Updates that mention unused nominals leave
    the model unchanged.
    """
    model.check_state(s)
    if isinstance(update, Subst):
        if model.denotes(update.nom) is None:
            return model
        hook = eval or _default_eval
        return substitute(model, update.prop, update.nom, bool(hook(model, s, update.payload)))
    if isinstance(update, Arrow):
        return redirect(model, update.src, update.profile, update.dst)
    if isinstance(update, AddState):
        return add_state(model, update.nom)
    raise ModelError(f"apply_update needs an atomic update, got {type(update).__name__}")


def apply_sequence(model: NamedCGM, s: int, updates, eval: Optional[EvalHook] = None) -> NamedCGM:
    for u in updates:
        model = apply_update(model, s, u, eval)
    return model
