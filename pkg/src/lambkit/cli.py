"""Command-line interface: ``lambkit <subcommand> ...``.

Exit codes: 0 for TRUE / success, 1 for FALSE / no witness, 2 for any
parse or validation error.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from . import checker
from .formula import Union, flatten_seq
from .model import ModelError
from .norms import compile_norm, parse_norm
from .reductions import ENCODINGS, parse_qdimacs
from .synthesis import SynthesisConfig, bounded_synthesis
from .syntax import (
    ParseError, export_dot, parse_formula, parse_model, parse_update,
    print_formula, print_model, print_updates,
)
from .translate import TranslationError, slamb_to_hatl
from .updates import apply_sequence


class UsageError(Exception):
    pass


def _read(arg: str) -> str:
    """Inline text, or the contents of ``arg`` when it names a file."""
    if os.path.isfile(arg):
        with open(arg) as fh:
            return fh.read()
    return arg


def _load(path: str):
    with open(path) as fh:
        return parse_model(fh.read())


def _state(model, init, ref: Optional[str]) -> int:
    if ref is not None:
        return model.resolve_state(ref)
    if init is None:
        raise UsageError("no -s given and the model has no init state")
    return init


def cmd_check(args) -> int:
    model, init = _load(args.model)
    s = _state(model, init, args.state)
    phi = parse_formula(_read(args.formula), model.n_agents)
    verdict = checker.mc(model, s, phi)
    print("TRUE" if verdict else "FALSE")
    return 0 if verdict else 1


def cmd_label(args) -> int:
    model, _ = _load(args.model)
    phi = parse_formula(_read(args.formula), model.n_agents)
    states = checker.label(model, phi)
    print("{" + ", ".join(model.label(s) for s in sorted(states)) + "}")
    return 0


def cmd_apply(args) -> int:
    model, init = _load(args.model)
    if args.state is None and init is None:
        s = model.states[0]
    else:
        s = _state(model, init, args.state)
    update = parse_update(_read(args.update), model.n_agents)
    steps = flatten_seq(update)
    if any(isinstance(u, Union) for u in steps):
        raise UsageError("a union update has two outcomes; apply each branch separately")
    new = apply_sequence(model, s, steps)
    sys.stdout.write(print_model(new, s))
    return 0


def cmd_translate(args) -> int:
    print(print_formula(slamb_to_hatl(parse_formula(_read(args.formula)))))
    return 0


def cmd_synth(args) -> int:
    model, init = _load(args.model)
    s = _state(model, init, args.state)
    phi = parse_formula(_read(args.formula), model.n_agents)
    pool = args.pool.split(",") if args.pool else ()
    witness = bounded_synthesis(model, s, phi, SynthesisConfig(bound=args.bound, pool=pool))
    if witness is None:
        print("NONE")
        return 1
    print(print_updates(witness) if witness else "(empty)")
    return 0


def cmd_compile_norm(args) -> int:
    model, _ = _load(args.model)
    norm = parse_norm(_read(args.norm))
    pool = args.pool.split(",") if args.pool else None
    print(print_updates(compile_norm(model, norm, pool)))
    return 0


def cmd_qbf(args) -> int:
    q = parse_qdimacs(_read(args.qbf))
    model, s, phi = ENCODINGS[args.encoding](q)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "model.cgm"), "w") as fh:
            fh.write(print_model(model, s))
        with open(os.path.join(args.out, "formula.txt"), "w") as fh:
            fh.write(print_formula(phi) + "\n")
    verdict = checker.mc(model, s, phi)
    print("TRUE" if verdict else "FALSE")
    return 0 if verdict else 1


def cmd_dot(args) -> int:
    model, _ = _load(args.model)
    sys.stdout.write(export_dot(model))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lambkit", description="Model checking with model-update modalities.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, model=True, state=False):
        p = sub.add_parser(name, help=help)
        if model:
            p.add_argument("-m", "--model", required=True, help="model document")
        if state:
            p.add_argument("-s", "--state", help="state label, id, or #nominal (default: init)")
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "decide a formula at a state", state=True)
    p.add_argument("-f", "--formula", required=True, help="formula text or file")
    p = add("label", cmd_label, "print the states satisfying a formula")
    p.add_argument("-f", "--formula", required=True)
    p = add("apply", cmd_apply, "apply an update and print the new model", state=True)
    p.add_argument("-u", "--update", required=True)
    p = add("translate", cmd_translate, "remove substitutions from a formula", model=False)
    p.add_argument("-f", "--formula", required=True)
    p = add("synth", cmd_synth, "search for an update sequence making a goal true", state=True)
    p.add_argument("-f", "--formula", required=True, help="goal formula")
    p.add_argument("-n", "--bound", type=int, required=True, help="total update size budget")
    p.add_argument("--pool", help="comma-separated fresh nominals for state additions")
    p = add("compile-norm", cmd_compile_norm, "compile a norm into an update sequence")
    p.add_argument("-N", "--norm", required=True, help="norm text or file")
    p.add_argument("--pool", help="comma-separated nominals for copy states")
    p = add("qbf", cmd_qbf, "decide a QDIMACS QBF through an encoding", model=False)
    p.add_argument("-q", "--qbf", required=True, help="QDIMACS file or text")
    p.add_argument("--encoding", choices=sorted(ENCODINGS), default="arrow")
    p.add_argument("--out", help="directory for the encoded model and formula")
    add("dot", cmd_dot, "print the model as Graphviz DOT")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (ParseError, ModelError, TranslationError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
