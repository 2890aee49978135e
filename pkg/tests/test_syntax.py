import random

import pytest
from hypothesis import given, settings, strategies as st

from lambkit import fixtures
from lambkit.formula import (
    Arrow, CoalF, CoalUntil, CoalX, Nom, Not, Prop, Seq, Subst, Union, Updated,
    TOP, coalition, desugar,
)
from lambkit.model import ModelError, models_equal_mod_ids
from lambkit.random_gen import random_model
from lambkit.syntax import (
    ParseError, export_dot, parse_formula, parse_formula_prefix, parse_model,
    parse_update, print_formula, print_model,
)

from strategies import formulas, unfold

M_TEXT = """
agents 2
actions a b
state s names alpha props p
state t names beta   % comment
trans s a a -> t
trans s b b -> t
trans s a b -> s
trans s b a -> s
trans t a a -> s
trans t b b -> s
trans t a b -> t
trans t b a -> t
init s
"""


def test_parse_two_state_model(m):
    model, init = parse_model(M_TEXT)
    assert init == 0 and model.label(init) == "s"
    assert models_equal_mod_ids(model, m)


def test_missing_transition_diagnostic():
    text = M_TEXT.replace("trans s a a -> t\n", "")
    with pytest.raises(ModelError, match=r"missing transition s/\(a,a\)"):
        parse_model(text)


def test_duplicate_nominal_diagnostic():
    text = M_TEXT.replace("state t names beta", "state t names alpha")
    with pytest.raises(ModelError, match="nominal alpha denotes 2 states"):
        parse_model(text)


@pytest.mark.parametrize("bad, fragment", [
    ("agents 2\nactions a b\nstate s names props p\n", "needs at least one nominal"),
    ("actions a b\n", "missing 'agents'"),
    ("agents 2\nactions a b\nstate s names x\ntrans s a -> s\n", "has 1 actions"),
    ("agents 1\nactions a\nstate s names x\ntrans s c -> s\n", "unknown action c"),
    ("agents 1\nactions a\nstate s names x\ntrans s a -> s\ntrans s a -> s\n", "duplicate transition"),
    ("agents 1\nactions a\nstate s names x\nfoo\n", "unknown section"),
])
def test_model_errors(bad, fragment):
    with pytest.raises((ParseError, ModelError), match=fragment):
        parse_model(bad)


def test_formula_examples():
    assert parse_formula("<<1,2>> X !p") == CoalX(coalition(1, 2), Not(Prop("p")))
    assert parse_formula("[#alpha -a,a-> #alpha] <<1>> X #alpha") == Updated(
        Arrow("alpha", ("a", "a"), "alpha"), CoalX(coalition(1), Nom("alpha")))
    f = parse_formula("<<>> F #beta")
    assert f == CoalF(frozenset(), Nom("beta"))
    assert desugar(f) == CoalUntil(frozenset(), TOP, Nom("beta"))


def test_update_precedence():
    u = parse_update("new #g ; p@g := true u #a -x-> #b")
    assert isinstance(u, Union) and isinstance(u.left, Seq)
    u = parse_update("new #g ; (p@g := true u #a -x-> #b)")
    assert isinstance(u, Seq) and isinstance(u.second, Union)
    assert parse_update("p@a := (q & r)") == Subst("p", "a", parse_formula("(q & r)"))


@pytest.mark.parametrize("bad", [
    "p & q", "(p & q", "<<1>> (p W q)", "[p@a] q", "<<x>> X p", "p q", "(p)", "!", "@ p",
])
def test_formula_errors(bad):
    with pytest.raises(ParseError):
        parse_formula(bad)


def test_arity_checks_with_model():
    with pytest.raises(ParseError, match="outside 1..2"):
        parse_formula("<<3>> X p", n_agents=2)
    with pytest.raises(ParseError, match="profile has 1 actions"):
        parse_formula("[#a -x-> #b] p", n_agents=2)


def test_prefix_parse():
    phi, end = parse_formula_prefix("(p & q) on a,b fine f")
    assert print_formula(phi) == "(p & q)"
    assert "(p & q) on a,b fine f"[end:].startswith("on")


@settings(max_examples=300, deadline=None)
@given(formulas)
def test_print_parse_round_trip(phi):
    text = print_formula(phi)
    back = parse_formula(text)
    assert back == unfold(phi)
    assert print_formula(parse_formula(print_formula(back))) == print_formula(back)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_model_document_round_trip(seed):
    model = random_model(random.Random(seed))
    init = model.states[-1]
    again, init2 = parse_model(print_model(model, init))
    assert models_equal_mod_ids(model, again)
    assert again.nominals_at(init2) == model.nominals_at(init)


def test_dot_merges_parallel_edges(m):
    dot = export_dot(m)
    assert dot.count("[label=") == 2 + 4
    assert 'label="aa,bb"' in dot and 'label="ab,ba"' in dot


def test_dot_single_state():
    model, _ = parse_model("agents 2\nactions a b\nstate s names x\n" + "".join(
        f"trans s {a} {b} -> s\n" for a in "ab" for b in "ab"))
    dot = export_dot(model)
    assert dot.count("->") == 1
    assert 'label="aa,ab,ba,bb"' in dot


def test_dot_sanctioned_topology():
    dot = export_dot(fixtures.expected_sanctioned())
    assert dot.count(" -> ") == 8
