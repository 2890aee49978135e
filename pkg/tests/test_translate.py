import itertools

import pytest

from lambkit.checker import label
from lambkit.formula import (
    And, At, CoalX, Iff, Implies, Nom, Not, Prop, Subst, Updated, TOP, coalition,
    is_update_free,
)
from lambkit.model import NamedCGM, all_profiles
from lambkit.syntax import parse_formula
from lambkit.translate import TranslationError, flipped, replace_prop, slamb_to_hatl

P, Q = Prop("p"), Prop("q")
CHI = flipped("p", "alpha")


def test_replace_prop():
    assert replace_prop(P, "p", CHI) == And(Implies(Nom("alpha"), Not(P)), Implies(Not(Nom("alpha")), P))
    assert replace_prop(Q, "p", CHI) == Q
    assert replace_prop(CoalX(coalition(1), P), "p", CHI) == CoalX(coalition(1), CHI)


def test_single_subst_shape():
    out = slamb_to_hatl(Updated(Subst("p", "alpha", TOP), P))
    named = At("alpha", TOP)
    same = Iff(TOP, At("alpha", P))
    assert out == And(Implies(Not(named), P),
                      Implies(named, And(Implies(same, P), Implies(Not(same), CHI))))


def test_update_free_unchanged():
    phi = parse_formula("<<1>> (p U @beta q)")
    assert slamb_to_hatl(phi) == phi


def test_rejects_other_updates():
    with pytest.raises(TranslationError):
        slamb_to_hatl(parse_formula("[new #g] p"))
    with pytest.raises(TranslationError):
        slamb_to_hatl(parse_formula("[p@a := true u p@a := false] p"))


def _two_state_models():
    """Every 2-state, 1-agent, 2-action model over p, q with nominals alpha/beta."""
    profiles = all_profiles(("a", "b"), 1)
    for succ in itertools.product((0, 1), repeat=4):
        trans = {(s, a): succ[2 * s + i] for s in (0, 1) for i, a in enumerate(profiles)}
        for pv, qv in itertools.product(itertools.product((0, 1), repeat=2), repeat=2):
            props = {"p": {s for s in (0, 1) if pv[s]}, "q": {s for s in (0, 1) if qv[s]}}
            yield NamedCGM.build(1, ("a", "b"), (0, 1), trans, props, {"alpha": {0}, "beta": {1}})


@pytest.mark.parametrize("text", [
    "[p@alpha := q] [p@alpha := !p] p",
    "[p@beta := <<1>> X p] <<1>> G p",
    "[q@alpha := p] ([p@beta := q] <<1>> (p U q) & @gamma p)",
    "[p@gamma := true] p",
])
def test_equivalent_on_all_two_state_models(text):
    phi = parse_formula(text)
    out = slamb_to_hatl(phi)
    assert is_update_free(out)
    for model in _two_state_models():
        assert label(model, phi) == label(model, out)
