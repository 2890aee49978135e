"""Elimination of substitution modalities.

A substitution with an update-free scope is rewritten into an update-free
formula that tests whether the named state exists and whether the
substitution actually flips the proposition there.  Applying this to
innermost substitutions first removes every substitution.
"""
from __future__ import annotations

from .formula import (
    And, At, Bottom, CoalF, CoalG, CoalRelease, CoalUntil, CoalX, Formula,
    Fragment, Iff, Implies, Nom, Not, Or, Prop, Seq, Subst, Top, Updated,
    TOP, classify_fragment, is_update_free, updated,
)


class TranslationError(ValueError):
    pass


def replace_prop(phi: Formula, prop: str, chi: Formula) -> Formula:
    """Replace every occurrence of ``prop`` in ``phi`` by ``chi`` in one pass."""
    if isinstance(phi, Prop):
        return chi if phi.name == prop else phi
    if isinstance(phi, (Top, Bottom, Nom)):
        return phi
    if isinstance(phi, Updated):
        raise TranslationError("replace_prop expects an update-free formula")
    if isinstance(phi, At):
        return At(phi.nom, replace_prop(phi.body, prop, chi))
    if isinstance(phi, Not):
        return Not(replace_prop(phi.body, prop, chi))
    if isinstance(phi, (And, Or, Implies, Iff)):
        return type(phi)(replace_prop(phi.left, prop, chi), replace_prop(phi.right, prop, chi))
    if isinstance(phi, (CoalX, CoalF, CoalG)):
        return type(phi)(phi.coalition, replace_prop(phi.body, prop, chi))
    if isinstance(phi, (CoalUntil, CoalRelease)):
        return type(phi)(phi.coalition, replace_prop(phi.left, prop, chi),
                         replace_prop(phi.right, prop, chi))
    raise TypeError(f"not a formula: {phi!r}")


def flipped(prop: str, nom: str) -> Formula:
    """``prop`` with its value negated exactly at the state named ``nom``."""
    return And(Implies(Nom(nom), Not(Prop(prop))), Implies(Not(Nom(nom)), Prop(prop)))


def eliminate_subst(prop: str, nom: str, payload: Formula, scope: Formula) -> Formula:
    """Update-free equivalent of ``[prop@nom := payload] scope``.

    Both ``payload`` and ``scope`` must already be update-free.
    """
    if not (is_update_free(payload) and is_update_free(scope)):
        raise TranslationError("innermost substitution still has updates below it")
    named = At(nom, TOP)
    unchanged = Iff(payload, At(nom, Prop(prop)))
    return And(
        Implies(Not(named), scope),
        Implies(named, And(Implies(unchanged, scope),
                           Implies(Not(unchanged), replace_prop(scope, prop, flipped(prop, nom))))),
    )


def _translate(phi: Formula) -> Formula:
    if isinstance(phi, (Top, Bottom, Prop, Nom)):
        return phi
    if isinstance(phi, At):
        return At(phi.nom, _translate(phi.body))
    if isinstance(phi, Not):
        return Not(_translate(phi.body))
    if isinstance(phi, (And, Or, Implies, Iff)):
        return type(phi)(_translate(phi.left), _translate(phi.right))
    if isinstance(phi, (CoalX, CoalF, CoalG)):
        return type(phi)(phi.coalition, _translate(phi.body))
    if isinstance(phi, (CoalUntil, CoalRelease)):
        return type(phi)(phi.coalition, _translate(phi.left), _translate(phi.right))
    if isinstance(phi, Updated):
        upd = phi.update
        if isinstance(upd, Seq):
            return _translate(updated(upd.first, Updated(upd.second, phi.body)))
        if not isinstance(upd, Subst):
            raise TranslationError(f"cannot translate away {type(upd).__name__} updates")
        # children first: the rewrite below only ever sees an innermost redex
        payload = _translate(upd.payload)
        scope = _translate(phi.body)
        return eliminate_subst(upd.prop, upd.nom, payload, scope)
    raise TypeError(f"not a formula: {phi!r}")


def slamb_to_hatl(phi: Formula) -> Formula:
    """Equivalent formula without update modalities, for substitution-only input."""
    if classify_fragment(phi) not in (Fragment.ATL, Fragment.HATL, Fragment.SLAMB):
        raise TranslationError(f"input is in {classify_fragment(phi).value}, not SLAMB")
    out = _translate(phi)
    assert is_update_free(out)
    return out
