"""QBF encodings into union-update formulas, plus a QDIMACS-style reader.

Both encodings turn a closed prenex QBF into a pointed model and a formula
that is true there iff the QBF is true.  Universal quantifiers become a
union of two updates; existential ones use the dual ``not [a u b] not``.
The first quantifier in the prefix ends up outermost.
"""
from __future__ import annotations

from typing import List, Sequence, Tuple

from .formula import (
    And, Arrow, CoalX, Formula, Not, Or, Prop, Subst, Union, Update, Updated,
    BOTTOM, TOP, conj, disj,
)
from .model import NamedCGM
from .oracles import Qbf
from .syntax import ParseError


def _replace_atoms(phi: Formula, reader) -> Formula:
    if isinstance(phi, Prop):
        return reader(phi.name)
    kids = phi.children()
    if not kids:
        return phi
    return type(phi)(*(_replace_atoms(k, reader) for k in kids))


def _quantify(quant: str, choice: Update, body: Formula) -> Formula:
    if quant == "A":
        return Updated(choice, body)
    return Not(Updated(choice, Not(body)))


def _start_nominal(variables: Sequence[str]) -> str:
    name = "xt"
    while name in variables:
        name += "_"
    return name


def qbf_to_alamb_union(q: Qbf) -> Tuple[NamedCGM, int, Formula]:
    """Arrow encoding: one agent whose action ``a_k`` at the start state can
    be redirected towards the state of variable ``k``.

    A variable reads as true when the agent can force a step into its state,
    i.e. ``<<1>> X p_k``.
    """
    names = q.variables
    n = len(names)
    start_nom = _start_nominal(names)
    actions = tuple(f"a{k}" for k in range(1, n + 1)) or ("a1",)
    states = tuple(range(n + 1))
    trans = {(s, (a,)): s for s in states for a in actions}
    props = {v: {k + 1} for k, v in enumerate(names)}
    noms = {start_nom: {0}, **props}
    labels = {0: "t", **{k + 1: f"s{k + 1}" for k in range(n)}}
    model = NamedCGM.build(1, actions, states, trans, props, noms, labels)

    one = frozenset({1})
    phi = _replace_atoms(q.matrix, lambda v: CoalX(one, Prop(v)))
    for k in reversed(range(n)):
        quant, var = q.prefix[k]
        profile = (actions[k],)
        choice = Union(Arrow(start_nom, profile, var), Arrow(start_nom, profile, start_nom))
        phi = _quantify(quant, choice, phi)
    return model, 0, phi


def qbf_to_slamb_union(q: Qbf) -> Tuple[NamedCGM, int, Formula]:
    """Substitution encoding: a single state where every variable starts true
    and each quantifier chooses its value by substitution."""
    names = q.variables
    model = NamedCGM.build(1, ("a",), (0,), {(0, ("a",)): 0},
                           {v: {0} for v in names}, {"alpha": {0}}, {0: "s"})
    phi = q.matrix
    for quant, var in reversed(q.prefix):
        choice = Union(Subst(var, "alpha", TOP), Subst(var, "alpha", BOTTOM))
        phi = _quantify(quant, choice, phi)
    return model, 0, phi


ENCODINGS = {"arrow": qbf_to_alamb_union, "subst": qbf_to_slamb_union}


# -- QDIMACS-like text form ---------------------------------------------------

def qbf_from_clauses(prefix: Sequence[Tuple[str, int]], clauses: Sequence[Sequence[int]]) -> Qbf:
    """Build a Qbf over variables ``x<i>`` from a numeric prefix and CNF clauses."""
    def lit(l: int) -> Formula:
        atom = Prop(f"x{abs(l)}")
        return atom if l > 0 else Not(atom)
    matrix = conj(*(disj(*(lit(l) for l in c)) if c else BOTTOM for c in clauses))
    return Qbf(tuple((quant, f"x{v}") for quant, v in prefix), matrix)


def parse_qdimacs(text: str) -> Qbf:
    """Read ``p cnf``, ``a``/``e`` quantifier lines and ``0``-terminated clauses.

    Variables that appear in no quantifier line are existential and placed
    outermost, as in QDIMACS.
    """
    n_vars = None
    prefix: List[Tuple[str, int]] = []
    clauses: List[List[int]] = []
    current: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        words = line.split()
        if words[0] == "p":
            if len(words) != 4 or words[1] != "cnf":
                raise ParseError("expected 'p cnf <vars> <clauses>'", line=lineno)
            if not words[2].isdigit():
                raise ParseError("variable count must be a number", line=lineno)
            n_vars = int(words[2])
            continue
        if n_vars is None:
            raise ParseError("missing 'p cnf' header", line=lineno)
        quant = words[0] in ("a", "e")
        try:
            nums = [int(w) for w in (words[1:] if quant else words)]
        except ValueError:
            raise ParseError(f"bad number in line: {line!r}", line=lineno) from None
        if quant:
            if current or clauses:
                raise ParseError("quantifier line after clauses", line=lineno)
            if not nums or nums[-1] != 0:
                raise ParseError("quantifier line must end with 0", line=lineno)
            prefix.extend((words[0].upper(), v) for v in nums[:-1])
            continue
        for v in nums:
            if v == 0:
                clauses.append(current)
                current = []
            elif abs(v) > n_vars:
                raise ParseError(f"variable {abs(v)} exceeds declared {n_vars}", line=lineno)
            else:
                current.append(v)
    if n_vars is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("last clause is not terminated by 0")
    bound = {v for _, v in prefix}
    if any(not 1 <= v <= n_vars for v in bound):
        raise ParseError("quantified variable outside the declared range")
    used = sorted({abs(l) for c in clauses for l in c} - bound)
    prefix = [("E", v) for v in used] + prefix
    try:
        return qbf_from_clauses(prefix, clauses)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _literal(phi: Formula) -> int:
    neg = isinstance(phi, Not)
    atom = phi.body if neg else phi
    if not (isinstance(atom, Prop) and atom.name[:1] == "x" and atom.name[1:].isdigit()):
        raise ValueError(f"not a literal over x<i>: {phi}")
    v = int(atom.name[1:])
    return -v if neg else v


def _split(phi: Formula, op) -> List[Formula]:
    if isinstance(phi, op):
        return _split(phi.left, op) + _split(phi.right, op)
    return [phi]


def print_qdimacs(q: Qbf) -> str:
    """Inverse of ``parse_qdimacs`` for CNF matrices over ``x<i>`` variables."""
    clauses = [[_literal(l) for l in _split(c, Or)] for c in _split(q.matrix, And)]
    prefix = [(quant, _literal(Prop(v))) for quant, v in q.prefix]
    n = max([v for _, v in prefix] + [abs(l) for c in clauses for l in c] + [0])
    lines = [f"p cnf {n} {len(clauses)}"]
    i = 0
    while i < len(prefix):
        j = i
        while j < len(prefix) and prefix[j][0] == prefix[i][0]:
            j += 1
        lines.append(prefix[i][0].lower() + " " + " ".join(str(v) for _, v in prefix[i:j]) + " 0")
        i = j
    lines.extend(" ".join(str(l) for l in c) + " 0" for c in clauses)
    return "\n".join(lines) + "\n"
