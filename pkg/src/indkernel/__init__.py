"""Least fixed points of finite rule systems, derivations as
well-founded trees, compactness witnesses, and square/family checkers.

The dependency order of the modules mirrors the math: finite carriers
and maps (finite), trees over a signature (wtree), rule systems and
closures (inddef), derivations and witnesses (proofs), square and
family checkers (squares), cover presentations (topology), plus the
rule-file DSL (dsl), JSON instance formats (jsonio), and a CLI (cli).
"""

from .errors import (
    ArityMismatch,
    CodomainMismatch,
    DslError,
    DuplicateName,
    EmptyFamily,
    EmptyWType,
    IndkernelError,
    InvalidSquare,
    NoFactorization,
    NotASurjection,
    ParseError,
    SchemaError,
    UndeclaredName,
    UnknownElement,
)
from .finite import Carrier, FinMap, Subset, compose, fiber, identity, image, is_surjection, pullback
from .inddef import (
    InductiveDefinition,
    Rule,
    closure,
    closure_stages,
    is_phi_closed,
    naive_closure_oracle,
)
from .proofs import (
    ProofSignature,
    ass,
    build_proof_signature,
    characterize,
    compactness_basis,
    conc,
    is_proof,
    synthesize_proof,
    witness,
)
from .squares import (
    Square,
    SurjectionFamily,
    build_amc_square,
    check_collection_square,
    check_covering_square,
    is_amc_witness_family,
    is_collection_family,
    refines,
    strong_amc_factor,
    surjections_onto,
)
from .topology import CoverPresentation, compact_subcover, covers, to_inductive_definition
from .wtree import Signature, WTree, depth, fold, node_count, random_tree, subtrees, sup
from .dsl import RuleFileAST, emit, parse_rule_file

__version__ = "0.1.0"

__all__ = [
    "ArityMismatch",
    "CodomainMismatch",
    "Carrier",
    "CoverPresentation",
    "DslError",
    "DuplicateName",
    "EmptyFamily",
    "EmptyWType",
    "FinMap",
    "IndkernelError",
    "InductiveDefinition",
    "InvalidSquare",
    "NoFactorization",
    "NotASurjection",
    "ParseError",
    "ProofSignature",
    "Rule",
    "RuleFileAST",
    "SchemaError",
    "Signature",
    "Square",
    "Subset",
    "SurjectionFamily",
    "UndeclaredName",
    "UnknownElement",
    "WTree",
    "ass",
    "build_amc_square",
    "build_proof_signature",
    "characterize",
    "check_collection_square",
    "check_covering_square",
    "closure",
    "closure_stages",
    "compact_subcover",
    "compactness_basis",
    "compose",
    "conc",
    "covers",
    "depth",
    "emit",
    "fiber",
    "fold",
    "identity",
    "image",
    "is_amc_witness_family",
    "is_collection_family",
    "is_phi_closed",
    "is_proof",
    "is_surjection",
    "naive_closure_oracle",
    "node_count",
    "parse_rule_file",
    "pullback",
    "random_tree",
    "refines",
    "strong_amc_factor",
    "subtrees",
    "sup",
    "surjections_onto",
    "synthesize_proof",
    "to_inductive_definition",
    "witness",
]
