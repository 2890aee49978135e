"""Concrete syntax: model documents, the formula grammar, and DOT export.

Formula grammar (binary connectives are always parenthesised)::

    phi ::= true | false | p | #a | @a phi | !phi
          | (phi & phi) | (phi | phi) | (phi -> phi) | (phi <-> phi)
          | <<1,2>> X phi | <<C>> (phi U phi) | <<C>> (phi R phi)
          | <<C>> F phi | <<C>> G phi | [upd] phi
    upd ::= p@a := phi | #a -x,y-> #b | new #a | upd ; upd | upd u upd | (upd)

``;`` binds tighter than ``u``.  A top-level sequence inside brackets is
unfolded into nested modalities.
"""
from __future__ import annotations

import re
from typing import Dict, List, Optional, Tuple

from .formula import (
    AddState, And, Arrow, At, Bottom, CoalF, CoalG, CoalRelease, CoalUntil,
    CoalX, Formula, Iff, Implies, Nom, Not, Or, Prop, Seq, Subst, Top, Union,
    Update, Updated, BOTTOM, TOP, updated,
)
from .model import ModelError, NamedCGM, validate


class ParseError(ValueError):
    """Syntax error; ``pos`` is a character offset or ``line`` a line number."""

    def __init__(self, message: str, pos: Optional[int] = None, line: Optional[int] = None):
        where = f" at line {line}" if line is not None else (f" at position {pos}" if pos is not None else "")
        super().__init__(message + where)
        self.pos = pos
        self.line = line


# -- formulas ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(<<|>>|<->|->|:=|[()\[\]!&|@#;,\-])|([A-Za-z_][A-Za-z0-9_']*)|(\d+))")
_KEYWORDS = {"true", "false", "new"}


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos=pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("op", m.group(1), start))
        elif m.group(2):
            tokens.append(("id", m.group(2), start))
        else:
            tokens.append(("num", m.group(3), start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, n_agents: Optional[int] = None):
        self.toks = _tokenize(text)
        self.i = 0
        self.n_agents = n_agents

    def peek(self, ahead: int = 0):
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg: str):
        raise ParseError(msg, pos=self.peek()[2])

    def expect(self, value: str):
        tok = self.next()
        if tok[1] != value or tok[0] == "eof":
            self.i -= 1
            self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}")
        return tok

    def ident(self) -> str:
        tok = self.next()
        if tok[0] != "id":
            self.i -= 1
            self.error(f"expected identifier, found {tok[1] or 'end of input'!r}")
        return tok[1]

    def nominal(self) -> str:
        self.expect("#")
        return self.ident()

    # phi
    def formula(self) -> Formula:
        kind, val, _ = self.peek()
        if kind == "id":
            self.next()
            if val == "true":
                return TOP
            if val == "false":
                return BOTTOM
            return Prop(val)
        if val == "#":
            return Nom(self.nominal())
        if val == "@":
            self.next()
            nom = self.ident()
            return At(nom, self.formula())
        if val == "!":
            self.next()
            return Not(self.formula())
        if val == "(":
            self.next()
            left = self.formula()
            op = self.next()[1]
            cls = {"&": And, "|": Or, "->": Implies, "<->": Iff}.get(op)
            if cls is None:
                self.i -= 1
                self.error(f"expected a binary connective, found {op!r}")
            right = self.formula()
            self.expect(")")
            return cls(left, right)
        if val == "<<":
            return self.strategic()
        if val == "[":
            self.next()
            upd = self.update()
            self.expect("]")
            return updated(upd, self.formula())
        self.error(f"unexpected {val or 'end of input'!r}")

    def strategic(self) -> Formula:
        self.expect("<<")
        agents = []
        if self.peek()[1] != ">>":
            while True:
                tok = self.next()
                if tok[0] != "num":
                    self.i -= 1
                    self.error("expected an agent number")
                agents.append(int(tok[1]))
                if self.peek()[1] != ",":
                    break
                self.next()
        self.expect(">>")
        coal = frozenset(agents)
        if self.n_agents is not None and any(not 1 <= a <= self.n_agents for a in coal):
            self.error(f"coalition {sorted(coal)} mentions an agent outside 1..{self.n_agents}")
        kind, val, _ = self.peek()
        if kind == "id" and val in ("X", "F", "G"):
            self.next()
            body = self.formula()
            return {"X": CoalX, "F": CoalF, "G": CoalG}[val](coal, body)
        self.expect("(")
        left = self.formula()
        op = self.next()
        if op[1] not in ("U", "R"):
            self.i -= 1
            self.error("expected U or R")
        right = self.formula()
        self.expect(")")
        return (CoalUntil if op[1] == "U" else CoalRelease)(coal, left, right)

    # upd
    def update(self) -> Update:
        left = self.update_seq()
        while self.peek()[:2] == ("id", "u"):
            self.next()
            left = Union(left, self.update_seq())
        return left

    def update_seq(self) -> Update:
        left = self.update_atom()
        while self.peek()[1] == ";":
            self.next()
            left = Seq(left, self.update_atom())
        return left

    def update_atom(self) -> Update:
        kind, val, _ = self.peek()
        if val == "(":
            self.next()
            inner = self.update()
            self.expect(")")
            return inner
        if val == "#":
            src = self.nominal()
            self.expect("-")
            profile = [self.ident()]
            while self.peek()[1] == ",":
                self.next()
                profile.append(self.ident())
            self.expect("->")
            dst = self.nominal()
            if self.n_agents is not None and len(profile) != self.n_agents:
                self.error(f"profile has {len(profile)} actions, model has {self.n_agents} agents")
            return Arrow(src, tuple(profile), dst)
        if kind == "id" and val == "new":
            self.next()
            return AddState(self.nominal())
        if kind == "id":
            prop = self.ident()
            self.expect("@")
            nom = self.ident()
            self.expect(":=")
            return Subst(prop, nom, self.formula())
        self.error(f"expected an update, found {val or 'end of input'!r}")


def parse_formula(text: str, n_agents: Optional[int] = None) -> Formula:
    """Parse ``text``; with ``n_agents`` also check coalitions and profile arity."""
    p = _Parser(text, n_agents)
    phi = p.formula()
    if p.peek()[0] != "eof":
        p.error(f"trailing input {p.peek()[1]!r}")
    return phi


def parse_update(text: str, n_agents: Optional[int] = None) -> Update:
    p = _Parser(text, n_agents)
    upd = p.update()
    if p.peek()[0] != "eof":
        p.error(f"trailing input {p.peek()[1]!r}")
    return upd


def parse_formula_prefix(text: str) -> Tuple[Formula, int]:
    """Parse one formula from the start of ``text``; return it and the end offset."""
    p = _Parser(text)
    phi = p.formula()
    return phi, p.peek()[2]


def _coal(c) -> str:
    return "<<" + ",".join(str(a) for a in sorted(c)) + ">>"


def print_formula(phi: Formula) -> str:
    if isinstance(phi, Top):
        return "true"
    if isinstance(phi, Bottom):
        return "false"
    if isinstance(phi, Prop):
        return phi.name
    if isinstance(phi, Nom):
        return "#" + phi.name
    if isinstance(phi, At):
        return f"@{phi.nom} {print_formula(phi.body)}"
    if isinstance(phi, Not):
        return "!" + print_formula(phi.body)
    for cls, op in ((And, "&"), (Or, "|"), (Implies, "->"), (Iff, "<->")):
        if isinstance(phi, cls):
            return f"({print_formula(phi.left)} {op} {print_formula(phi.right)})"
    if isinstance(phi, CoalX):
        return f"{_coal(phi.coalition)} X {print_formula(phi.body)}"
    if isinstance(phi, CoalF):
        return f"{_coal(phi.coalition)} F {print_formula(phi.body)}"
    if isinstance(phi, CoalG):
        return f"{_coal(phi.coalition)} G {print_formula(phi.body)}"
    if isinstance(phi, CoalUntil):
        return f"{_coal(phi.coalition)} ({print_formula(phi.left)} U {print_formula(phi.right)})"
    if isinstance(phi, CoalRelease):
        return f"{_coal(phi.coalition)} ({print_formula(phi.left)} R {print_formula(phi.right)})"
    if isinstance(phi, Updated):
        return f"[{print_update(phi.update)}] {print_formula(phi.body)}"
    raise TypeError(f"not a formula: {phi!r}")


def print_update(upd: Update) -> str:
    if isinstance(upd, Subst):
        return f"{upd.prop}@{upd.nom} := {print_formula(upd.payload)}"
    if isinstance(upd, Arrow):
        return f"#{upd.src} -{','.join(upd.profile)}-> #{upd.dst}"
    if isinstance(upd, AddState):
        return f"new #{upd.nom}"

    def part(u):
        text = print_update(u)
        return f"({text})" if isinstance(u, (Seq, Union)) else text

    if isinstance(upd, Seq):
        return f"{part(upd.first)} ; {part(upd.second)}"
    if isinstance(upd, Union):
        return f"{part(upd.left)} u {part(upd.right)}"
    raise TypeError(f"not an update: {upd!r}")


def print_updates(updates) -> str:
    """A sequence of atomic updates in bracket syntax, ``a ; b ; c``."""
    return " ; ".join(print_update(u) for u in updates)


# -- model documents ---------------------------------------------------------

def parse_model(text: str) -> Tuple[NamedCGM, Optional[int]]:
    """Parse a model document; returns the model and its ``init`` state (or None)."""
    n_agents: Optional[int] = None
    actions: Optional[Tuple[str, ...]] = None
    ids: Dict[str, int] = {}
    props: Dict[str, set] = {}
    noms: Dict[str, set] = {}
    trans: Dict[tuple, int] = {}
    pending = []
    init_name = None
    init_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line or line.startswith("#"):
            continue
        words = line.split()
        head = words[0]
        if head == "agents":
            if len(words) != 2 or not words[1].isdigit():
                raise ParseError("expected 'agents <n>'", line=lineno)
            n_agents = int(words[1])
        elif head == "actions":
            if len(words) < 2:
                raise ParseError("expected 'actions <id>+'", line=lineno)
            actions = tuple(words[1:])
        elif head == "state":
            if len(words) < 4 or words[2] != "names":
                raise ParseError("expected 'state <id> names <nominal>+ [props <prop>*]'", line=lineno)
            name = words[1]
            if name in ids:
                raise ParseError(f"duplicate state {name}", line=lineno)
            rest = words[3:]
            if "props" in rest:
                k = rest.index("props")
                names, plist = rest[:k], rest[k + 1:]
            else:
                names, plist = rest, []
            if not names:
                raise ParseError(f"state {name} needs at least one nominal", line=lineno)
            sid = len(ids)
            ids[name] = sid
            for n in names:
                noms.setdefault(n, set()).add(sid)
            for p in plist:
                props.setdefault(p, set()).add(sid)
        elif head == "trans":
            if "->" not in words or words.index("->") != len(words) - 2:
                raise ParseError("expected 'trans <state> <a1> ... <an> -> <state>'", line=lineno)
            pending.append((lineno, words[1], tuple(words[2:-2]), words[-1]))
        elif head == "init":
            if len(words) != 2:
                raise ParseError("expected 'init <state>'", line=lineno)
            init_name, init_line = words[1], lineno
        else:
            raise ParseError(f"unknown section {head!r}", line=lineno)
    if n_agents is None:
        raise ParseError("missing 'agents' line")
    if actions is None:
        raise ParseError("missing 'actions' line")
    for lineno, src, profile, dst in pending:
        for name in (src, dst):
            if name not in ids:
                raise ParseError(f"unknown state {name}", line=lineno)
        if len(profile) != n_agents:
            raise ParseError(f"profile {' '.join(profile)} has {len(profile)} actions, expected {n_agents}",
                             line=lineno)
        for a in profile:
            if a not in actions:
                raise ParseError(f"unknown action {a}", line=lineno)
        key = (ids[src], profile)
        if key in trans:
            raise ParseError(f"duplicate transition {src}/({','.join(profile)})", line=lineno)
        trans[key] = ids[dst]
    labels = {sid: name for name, sid in ids.items()}
    model = NamedCGM.build(n_agents, actions, ids.values(), trans, props, noms, labels)
    issues = validate(model)
    if issues:
        raise ModelError("invalid model: " + "; ".join(issues))
    init = None
    if init_name is not None:
        if init_name not in ids:
            raise ParseError(f"unknown init state {init_name}", line=init_line)
        init = ids[init_name]
    return model, init


def print_model(model: NamedCGM, init: Optional[int] = None) -> str:
    """Render ``model`` as a model document (canonical line order)."""
    lines = [f"agents {model.n_agents}", "actions " + " ".join(model.actions)]
    for s in model.states:
        line = f"state {model.label(s)} names " + " ".join(sorted(model.nominals_at(s)))
        ps = sorted(model.props_at(s))
        if ps:
            line += " props " + " ".join(ps)
        lines.append(line)
    for s in model.states:
        for a in model.profiles:
            lines.append(f"trans {model.label(s)} {' '.join(a)} -> {model.label(model.trans[(s, a)])}")
    if init is not None:
        lines.append(f"init {model.label(init)}")
    return "\n".join(lines) + "\n"


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(model: NamedCGM) -> str:
    """Graphviz digraph; parallel edges with the same target share one labelled edge."""
    sep = "" if all(len(a) == 1 for a in model.actions) else "."
    out = ["digraph cgm {"]
    for s in model.states:
        label = f"{model.label(s)}:{','.join(sorted(model.nominals_at(s)))}{{{','.join(sorted(model.props_at(s)))}}}"
        out.append(f'  n{s} [label="{_dot_escape(label)}"];')
    for s in model.states:
        by_target: Dict[int, List[str]] = {}
        for a in model.profiles:
            by_target.setdefault(model.trans[(s, a)], []).append(sep.join(a))
        for t in sorted(by_target):
            out.append(f'  n{s} -> n{t} [label="{_dot_escape(",".join(by_target[t]))}"];')
    out.append("}")
    return "\n".join(out) + "\n"
