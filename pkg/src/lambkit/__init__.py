"""Model checking and model building for hybrid ATL with update modalities."""
from .checker import Checker, label, mc, pre
from .formula import (
    AddState, And, Arrow, At, Bottom, CoalF, CoalG, CoalRelease, CoalUntil,
    CoalX, Formula, Fragment, Iff, Implies, Nom, Not, Or, Prop, Seq, Subst,
    Top, Union, Update, Updated, BOTTOM, TOP, classify_fragment, coalition,
)
from .kernels import BACKEND
from .model import ModelError, NamedCGM, disjoint_union, model_size, models_equal_mod_ids, validate
from .norms import RegimentingNorm, SanctioningNorm, compile_norm, parse_norm
from .oracles import CnfInstance, Qbf, brute_sat, eval_qbf, oracle_mc
from .reductions import parse_qdimacs, qbf_to_alamb_union, qbf_to_slamb_union
from .synthesis import SynthesisConfig, bounded_synthesis, encode_3sat
from .syntax import (
    ParseError, export_dot, parse_formula, parse_model, parse_update,
    print_formula, print_model, print_update,
)
from .translate import slamb_to_hatl
from .updates import apply_sequence, apply_update

__version__ = "0.1.0"

__all__ = [
    "Checker",
    "label",
    "mc",
    "pre",
    "AddState",
    "And",
    "Arrow",
    "At",
    "Bottom",
    "CoalF",
    "CoalG",
    "CoalRelease",
    "CoalUntil",
    "CoalX",
    "Formula",
    "Fragment",
    "Iff",
    "Implies",
    "Nom",
    "Not",
    "Or",
    "Prop",
    "Seq",
    "Subst",
    "Top",
    "Union",
    "Update",
    "Updated",
    "BOTTOM",
    "TOP",
    "classify_fragment",
    "coalition",
    "BACKEND",
    "ModelError",
    "NamedCGM",
    "disjoint_union",
    "model_size",
    "models_equal_mod_ids",
    "validate",
    "RegimentingNorm",
    "SanctioningNorm",
    "compile_norm",
    "parse_norm",
    "CnfInstance",
    "Qbf",
    "brute_sat",
    "eval_qbf",
    "oracle_mc",
    "parse_qdimacs",
    "qbf_to_alamb_union",
    "qbf_to_slamb_union",
    "SynthesisConfig",
    "bounded_synthesis",
    "encode_3sat",
    "ParseError",
    "export_dot",
    "parse_formula",
    "parse_model",
    "parse_update",
    "print_formula",
    "print_model",
    "print_update",
    "slamb_to_hatl",
    "apply_sequence",
    "apply_update",
]
