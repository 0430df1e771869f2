"""Finite automata, rational expressions, MSO logic on words, syntactic
monoids, star-free languages and pumping arguments.

The submodules are the real API; the most used names are re-exported here.
"""

from .automata import (
    EPS,
    EPS_TOKEN,
    Alphabet,
    Dfa,
    Nfa,
    accepts_nfa,
    complete,
    determinize,
    enumerate_language,
    is_empty,
    remove_epsilon,
    run_dfa,
    subset_automaton,
    to_dfa,
    trim,
)
from .config import DEFAULT_CAPS, Caps
from .errors import ContractError, InputError, RationalKitError, ResourceError
from .logic import compile_formula, decide_mso, dfa_to_mso, eval_formula, parse_formula
from .minimize import minimal_dfa, minimize
from .monoid import FiniteMonoid, is_aperiodic, syntactic_monoid, transition_monoid
from .ops import Morphism, decide_equivalence, decide_inclusion
from .pumping import check_certificate, pump_split, refute_rationality, verify_pump
from .regex import compile_regex, extract_regex, parse_regex, simplify
from .starfree import extract_starfree, is_fo_definable, relativize, starfree_to_fo

__version__ = "0.1.0"

__all__ = [
    "EPS",
    "EPS_TOKEN",
    "Alphabet",
    "Caps",
    "ContractError",
    "DEFAULT_CAPS",
    "Dfa",
    "FiniteMonoid",
    "InputError",
    "Morphism",
    "Nfa",
    "RationalKitError",
    "ResourceError",
    "accepts_nfa",
    "check_certificate",
    "compile_formula",
    "compile_regex",
    "complete",
    "decide_equivalence",
    "decide_inclusion",
    "decide_mso",
    "determinize",
    "dfa_to_mso",
    "enumerate_language",
    "eval_formula",
    "extract_regex",
    "extract_starfree",
    "is_aperiodic",
    "is_empty",
    "is_fo_definable",
    "minimal_dfa",
    "minimize",
    "parse_formula",
    "parse_regex",
    "pump_split",
    "refute_rationality",
    "relativize",
    "remove_epsilon",
    "run_dfa",
    "simplify",
    "starfree_to_fo",
    "subset_automaton",
    "syntactic_monoid",
    "to_dfa",
    "transition_monoid",
    "trim",
    "verify_pump",
]
