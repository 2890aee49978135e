import random

import pytest

from lambkit.checker import mc
from lambkit.formula import Iff, Not, Or, Prop
from lambkit.model import validate
from lambkit.oracles import Qbf, eval_qbf
from lambkit.random_gen import random_qbf
from lambkit.reductions import (
    parse_qdimacs, print_qdimacs, qbf_to_alamb_union, qbf_to_slamb_union,
)
from lambkit.syntax import ParseError

X1 = Prop("x1")
ENCODINGS = [qbf_to_alamb_union, qbf_to_slamb_union]


def _decide(encode, q):
    model, s, phi = encode(q)
    assert validate(model) == []
    return mc(model, s, phi)


@pytest.mark.parametrize("encode", ENCODINGS)
def test_small_cases(encode):
    assert _decide(encode, Qbf((("A", "x1"),), Or(X1, Not(X1))))
    assert _decide(encode, Qbf((("E", "x1"),), X1))
    assert not _decide(encode, Qbf((("A", "x1"),), X1))
    assert _decide(encode, Qbf((("E", "x1"),), Not(X1)))


@pytest.mark.parametrize("encode", ENCODINGS)
def test_order_of_quantifiers_matters(encode):
    x, y = Prop("x1"), Prop("x2")
    forall_exists = Qbf((("A", "x1"), ("E", "x2")), Iff(x, y))
    exists_forall = Qbf((("E", "x2"), ("A", "x1")), Iff(x, y))
    assert _decide(encode, forall_exists) is True
    assert _decide(encode, exists_forall) is False


def test_arrow_model_shape():
    q = random_qbf(random.Random(3), max_vars=4)
    model, s, _ = qbf_to_alamb_union(q)
    n = len(q.prefix)
    assert model.n_agents == 1 and len(model.actions) == n and len(model.states) == n + 1
    assert all(model.trans[(t, a)] == t for t in model.states for a in model.profiles)
    for v in q.variables:
        assert model.props[v] == model.noms[v]
    assert model.label(s) == "t"


def test_subst_model_shape():
    q = random_qbf(random.Random(4), max_vars=4)
    model, s, _ = qbf_to_slamb_union(q)
    assert model.states == (0,) and model.denotes("alpha") == 0
    assert all(model.props[v] == {0} for v in q.variables)


@pytest.mark.parametrize("seed", range(30))
def test_random_agreement(seed):
    q = random_qbf(random.Random(seed), max_vars=5)
    truth = eval_qbf(q)
    assert _decide(qbf_to_alamb_union, q) == truth
    assert _decide(qbf_to_slamb_union, q) == truth


QDIMACS = """c example
p cnf 3 2
a 1 2 0
e 3 0
1 -3 0
2 3 -1 0
"""


def test_qdimacs_round_trip():
    q = parse_qdimacs(QDIMACS)
    assert q.prefix == (("A", "x1"), ("A", "x2"), ("E", "x3"))
    assert parse_qdimacs(print_qdimacs(q)) == q


def test_qdimacs_free_variables_are_outer_existentials():
    q = parse_qdimacs("p cnf 2 1\na 2 0\n1 2 0\n")
    assert q.prefix == (("E", "x1"), ("A", "x2"))


@pytest.mark.parametrize("bad", [
    "a 1 0\n1 0\n",
    "p cnf 1 1\n2 0\n",
    "p cnf 1 1\n1\n",
    "p cnf 1 1\na 1\n1 0\n",
    "p cnf 1 1\n1 0\na 1 0\n",
    "p dnf 1 1\n",
    "p cnf 1 1\nx 0\n",
])
def test_qdimacs_errors(bad):
    with pytest.raises(ParseError):
        parse_qdimacs(bad)


def test_random_qbfs_print_and_parse():
    for seed in range(20):
        q = random_qbf(random.Random(seed))
        assert parse_qdimacs(print_qdimacs(q)) == q
