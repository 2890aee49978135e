import random

import pytest

from lambkit.checker import mc
from lambkit.formula import And, Iff, Not, Prop, coalition
from lambkit.oracles import (
    CnfInstance, Oracle, OracleRefusal, Qbf, brute_sat, count_strategies,
    eval_prop, eval_qbf, oracle_mc,
)
from lambkit.random_gen import FormulaGen, random_model, ring_model
from lambkit.syntax import parse_formula

X, Y = Prop("x"), Prop("y")


def test_running_example_verdicts(m, n):
    phi = parse_formula("<<1,2>> X !p")
    assert oracle_mc(m, 0, phi) is True is mc(m, 0, phi)
    arrow = parse_formula("[#alpha -a,a-> #alpha] <<1>> X #alpha")
    assert oracle_mc(n, 0, arrow) is False is mc(n, 0, arrow)
    assert oracle_mc(m, 0, arrow) is True


def test_strategy_counter(m):
    for coal, expected in ((frozenset(), 1), (coalition(1), 4), (coalition(1, 2), 16)):
        assert count_strategies(m, coal) == expected
        oracle = Oracle()
        oracle.holds(m, 0, parse_formula(f"<<{','.join(map(str, sorted(coal)))}>> X false"))
        assert oracle.strategy_count == expected


def test_refuses_big_models():
    with pytest.raises(OracleRefusal):
        oracle_mc(ring_model(7), 0, Prop("p"))


@pytest.mark.parametrize("seed", range(40))
def test_agrees_with_checker(seed):
    rng = random.Random(1000 + seed)
    model = random_model(rng)
    phi = FormulaGen(rng).formula(3)
    for s in model.states:
        assert oracle_mc(model, s, phi) == mc(model, s, phi)


def test_eval_prop():
    assert eval_prop(Iff(X, Not(Y)), {"x": True})
    with pytest.raises(ValueError):
        eval_prop(parse_formula("#a"), {})


def test_qbf_examples():
    assert eval_qbf(Qbf((("A", "x"), ("E", "y")), Iff(X, Y)))
    assert not eval_qbf(Qbf((("E", "x"),), And(X, Not(X))))


def test_qbf_validation():
    with pytest.raises(ValueError, match="free"):
        Qbf((("A", "x"),), And(X, Y))
    with pytest.raises(ValueError, match="twice"):
        Qbf((("A", "x"), ("E", "x")), X)
    with pytest.raises(ValueError):
        Qbf((("B", "x"),), X)


def test_brute_sat():
    assert brute_sat(CnfInstance(3, ((1, 2, 3),)))
    assert not brute_sat(CnfInstance(1, ((1, 1, 1), (-1, -1, -1))))
    with pytest.raises(OracleRefusal):
        brute_sat(CnfInstance(21, ((1, 2, 3),)))


def test_cnf_validation():
    with pytest.raises(ValueError):
        CnfInstance(2, ((1, 2),))
    with pytest.raises(ValueError):
        CnfInstance(2, ((1, 2, 3),))
    with pytest.raises(ValueError):
        CnfInstance.padded(2, [[]])


def test_lasso_until_without_goal_is_false():
    from lambkit.model import NamedCGM
    loop = NamedCGM.build(1, ("a",), (0,), {(0, ("a",)): 0}, {"p": {0}}, {"x": {0}})
    assert not oracle_mc(loop, 0, parse_formula("<<1>> (p U q)"))
    assert oracle_mc(loop, 0, parse_formula("<<1>> G p"))
