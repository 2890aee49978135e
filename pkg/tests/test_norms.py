import pytest

from lambkit import fixtures
from lambkit.checker import mc
from lambkit.formula import Arrow, BOTTOM, TOP
from lambkit.model import ModelError, models_equal_mod_ids, validate
from lambkit.norms import (
    RegimentingNorm, SanctioningNorm, compile_norm, compile_regimenting,
    compile_sanctioning, parse_norm,
)
from lambkit.syntax import ParseError, parse_formula
from lambkit.updates import apply_sequence


def test_sanction_matches_hand_built_model(m):
    seq = compile_sanctioning(m, fixtures.sanction_norm(), fixtures.SANCTION_POOL)
    out = apply_sequence(m, 0, seq)
    assert models_equal_mod_ids(out, fixtures.expected_sanctioned())
    assert mc(out, 0, parse_formula("<<1,2>> X fine"))


def test_sanction_with_generated_names(m):
    out = apply_sequence(m, 0, compile_sanctioning(m, fixtures.sanction_norm()))
    assert validate(out) == []
    assert {"_g0", "_g1"} <= set(out.noms)
    assert len(out.states) == 4


def test_sanction_false_condition(m):
    norm = SanctioningNorm(BOTTOM, frozenset({("a", "b")}), frozenset({"fine"}))
    assert compile_sanctioning(m, norm) == []


def test_sanctioned_plays_stay_fined(m):
    # from a copy, disagreeing again keeps the play in fined states
    out = apply_sequence(m, 0, compile_sanctioning(m, fixtures.sanction_norm(), fixtures.SANCTION_POOL))
    assert mc(out, 0, parse_formula("[#alpha -a,a-> #alpha] <<1,2>> X <<1,2>> X fine"))
    assert mc(out, out.denotes("gamma"), parse_formula("<<1,2>> X fine"))
    assert mc(out, out.denotes("gamma"), parse_formula("<<1,2>> X !fine"))


def test_sanction_only_some_states(m):
    norm = SanctioningNorm(parse_formula("p"), frozenset({("a", "b")}), frozenset({"fine"}))
    out = apply_sequence(m, 0, compile_sanctioning(m, norm, ["gamma"]))
    g = out.denotes("gamma")
    assert out.trans[(0, ("a", "b"))] == g
    assert out.trans[(0, ("b", "a"))] == 0
    assert out.trans[(1, ("a", "b"))] == 1
    assert out.props_at(g) == {"p", "fine"}


def test_pool_problems(m):
    with pytest.raises(ModelError, match="too small"):
        compile_sanctioning(m, fixtures.sanction_norm(), ["gamma"])
    with pytest.raises(ModelError, match="already used"):
        compile_sanctioning(m, fixtures.sanction_norm(), ["alpha", "gamma"])


def test_regiment_agreement(m):
    norm = RegimentingNorm(TOP, frozenset({("a", "a"), ("b", "b")}))
    out = apply_sequence(m, 0, compile_regimenting(m, norm))
    assert all(out.trans[(s, a)] == s for s in out.states for a in out.profiles)
    assert not mc(out, 0, parse_formula("<<1,2>> X #beta"))


def test_regiment_false_condition(m):
    assert compile_regimenting(m, RegimentingNorm(BOTTOM, frozenset({("a", "a")}))) == []


def test_regiment_existing_loop_is_identity(m):
    seq = compile_regimenting(m, RegimentingNorm(parse_formula("#alpha"), frozenset({("a", "b")})))
    assert seq == [Arrow("alpha", ("a", "b"), "alpha")]
    assert models_equal_mod_ids(apply_sequence(m, 0, seq), m)


def test_bad_profile(m):
    with pytest.raises(ModelError):
        compile_regimenting(m, RegimentingNorm(TOP, frozenset({("a",)})))


def test_parse_norm():
    norm = parse_norm("sanction when (p & !q) on a,b b,a fine fine late")
    assert norm == SanctioningNorm(parse_formula("(p & !q)"), frozenset({("a", "b"), ("b", "a")}),
                                   frozenset({"fine", "late"}))
    reg = parse_norm("regiment when <<1>> X p on a,a")
    assert reg == RegimentingNorm(parse_formula("<<1>> X p"), frozenset({("a", "a")}))


@pytest.mark.parametrize("bad", [
    "punish when p on a,b fine f",
    "sanction when p a,b fine f",
    "sanction when p on a,b",
    "sanction when p on a,b fine",
    "regiment when p on",
    "sanction when (p on a,b fine f",
])
def test_parse_norm_errors(bad):
    with pytest.raises(ParseError):
        parse_norm(bad)


def test_norm_dataclass_checks():
    with pytest.raises(ValueError):
        SanctioningNorm(TOP, frozenset(), frozenset({"f"}))
    with pytest.raises(ValueError):
        SanctioningNorm(TOP, frozenset({("a", "b")}), frozenset())


def test_compile_norm_dispatch(m):
    assert compile_norm(m, fixtures.sanction_norm(), fixtures.SANCTION_POOL) == \
        compile_sanctioning(m, fixtures.sanction_norm(), fixtures.SANCTION_POOL)


from hypothesis import given, settings, strategies as st
import random as _random

from lambkit.checker import label
from lambkit.random_gen import FormulaGen, random_model


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_sanction_invariants(seed):
    rng = _random.Random(seed)
    model = random_model(rng)
    cond = FormulaGen(rng, kinds=()).formula(2)
    profiles = frozenset(rng.sample(model.profiles, rng.randint(1, 3)))
    sanctions = frozenset({"fine"} | ({"late"} if rng.random() < 0.5 else set()))
    norm = SanctioningNorm(cond, profiles, sanctions)
    out = apply_sequence(model, model.states[0], compile_sanctioning(model, norm))
    assert validate(out) == []
    for t in label(model, cond):
        for a in profiles:
            assert sanctions <= out.props_at(out.trans[(t, a)])
    for t in model.states:
        for b in model.profiles:
            if b not in profiles or t not in label(model, cond):
                assert out.trans[(t, b)] == model.trans[(t, b)]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_regiment_invariants(seed):
    rng = _random.Random(seed)
    model = random_model(rng)
    cond = FormulaGen(rng, kinds=()).formula(2)
    profiles = frozenset(rng.sample(model.profiles, rng.randint(1, 4)))
    out = apply_sequence(model, model.states[0], compile_regimenting(model, RegimentingNorm(cond, profiles)))
    assert validate(out) == []
    hit = label(model, cond)
    for t in model.states:
        for a in model.profiles:
            expected = t if (t in hit and a in profiles) else model.trans[(t, a)]
            assert out.trans[(t, a)] == expected
