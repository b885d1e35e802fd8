"""Disordered vectors and a sparse multivariate polynomial engine."""

from .disord import Disord, make_disord, pmax, pmin, rdis
from .errors import (
    BadIndex,
    DisordError,
    HashMismatch,
    LengthMismatch,
    MixedKinds,
    NegativePower,
    ParseError,
    PlainVectorOperand,
    PlainVectorReplacement,
    TypeMismatch,
)
from .interpreter import Interpreter, run_script
from .mvp import Monomial, Mvp, coeffs, mvp_from_triples, powers, rmvp, set_coeffs, vars
from .polytext import parse_mvp, print_mvp
from .provenance import ProvenanceHash
from .storage import INSERTION, Insertion, Shuffle, storage_order

__all__ = [
    "BadIndex", "Disord", "DisordError", "HashMismatch", "INSERTION", "Insertion",
    "Interpreter", "LengthMismatch", "MixedKinds", "Monomial", "Mvp", "NegativePower",
    "ParseError", "PlainVectorOperand", "PlainVectorReplacement", "ProvenanceHash",
    "Shuffle", "TypeMismatch", "coeffs", "make_disord", "mvp_from_triples", "parse_mvp",
    "pmax", "pmin", "powers", "print_mvp", "rdis", "rmvp", "run_script", "set_coeffs",
    "storage_order", "vars",
]
