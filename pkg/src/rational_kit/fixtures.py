"""Small named automata and monoids used by the tests, demos and CLI.

They are textbook machines: a coin-operated vending machine, a divisibility
test on reversed binary numerals, several recognizers for ``A*abA*`` and
``A*aaaA*``, and the usual small monoid examples.
"""

from __future__ import annotations

import numpy as np

from .automata import Alphabet, Dfa, Nfa

AB = Alphabet(("a", "b"))


def coffee_machine() -> Dfa:
    """Accepts coin sequences (f=5, t=10, w=20 cents) summing to exactly 25."""
    names = ("q0", "q05", "q1", "q15", "q2", "q25")
    table = {
        "q0": {"f": "q05", "t": "q1", "w": "q2"},
        "q05": {"f": "q1", "t": "q15", "w": "q25"},
        "q1": {"f": "q15", "t": "q2", "w": "q25"},
        "q15": {"f": "q2", "t": "q25", "w": "q25"},
        "q2": {"f": "q25", "t": "q25", "w": "q25"},
    }
    return Dfa.from_table(("f", "t", "w"), table, "q0", {"q25"}, names)


def mod3_reverse_binary() -> Dfa:
    """Reads a binary numeral least-significant bit first; accepts multiples of 3.

    State ``r_k`` means "value ≡ k mod 3, next bit has weight 1 mod 3" and the
    primed copy ``r_k'`` means the next bit has weight 2 mod 3.
    """
    names = ("r0", "r1'", "r1", "r2'", "r2", "r0'")
    table = {
        "r0": {"1": "r1'", "0": "r0'"},
        "r1'": {"1": "r0", "0": "r1"},
        "r1": {"1": "r2'", "0": "r1'"},
        "r2'": {"1": "r1", "0": "r2"},
        "r2": {"1": "r0'", "0": "r2'"},
        "r0'": {"1": "r2", "0": "r0"},
    }
    return Dfa.from_table(("0", "1"), table, "r0", {"r0", "r0'"}, names)


def reverse_binary(n: int) -> str:
    return bin(n)[2:][::-1]


def contains_ab_nfa() -> Nfa:
    """Three-state nondeterministic recognizer of ``A*abA*`` (states 1, 2, 3)."""
    triples = [("1", "a", "1"), ("1", "b", "1"), ("1", "a", "2"), ("2", "b", "3"), ("3", "a", "3"), ("3", "b", "3")]
    return Nfa.from_triples(AB, 3, triples, ["1"], ["3"], ("1", "2", "3"))


def contains_ab_dfa() -> Dfa:
    """Complete deterministic recognizer of ``A*abA*``."""
    table = {
        "s0": {"a": "s1", "b": "s0"},
        "s1": {"a": "s1", "b": "s2"},
        "s2": {"a": "s2", "b": "s2"},
    }
    return Dfa.from_table(AB, table, "s0", {"s2"}, ("s0", "s1", "s2"))


def bstar_astar() -> Nfa:
    """Partial deterministic recognizer of ``b*a*`` (states 0, 1; both final)."""
    triples = [("0", "b", "0"), ("0", "a", "1"), ("1", "a", "1")]
    return Nfa.from_triples(AB, 2, triples, ["0"], ["0", "1"], ("0", "1"))


def contains_aaa_last_two() -> Dfa:
    """Recognizer of ``A*aaaA*`` that remembers the last two letters (8 states)."""
    names = ("e", "a", "b", "aa", "ab", "ba", "bb", "H")
    table = {
        "e": {"a": "a", "b": "b"},
        "a": {"a": "aa", "b": "ab"},
        "b": {"a": "ba", "b": "bb"},
        "aa": {"a": "H", "b": "ab"},
        "ab": {"a": "ba", "b": "bb"},
        "ba": {"a": "aa", "b": "ab"},
        "bb": {"a": "ba", "b": "bb"},
        "H": {"a": "H", "b": "H"},
    }
    return Dfa.from_table(AB, table, "e", {"H"}, names)


def contains_aaa_run_length() -> Dfa:
    """Recognizer of ``A*aaaA*`` that counts the current run of a's (4 states)."""
    names = ("e", "a", "aa", "aaa")
    table = {
        "e": {"a": "a", "b": "e"},
        "a": {"a": "aa", "b": "e"},
        "aa": {"a": "aaa", "b": "e"},
        "aaa": {"a": "aaa", "b": "aaa"},
    }
    return Dfa.from_table(AB, table, "e", {"aaa"}, names)


def six_state_redundant() -> Dfa:
    """Six-state DFA whose minimal quotient has classes {1,2,3}, {4,5}, {6}."""
    names = tuple("123456")
    table = {
        "1": {"a": "5", "b": "2"},
        "2": {"a": "5", "b": "1"},
        "3": {"a": "4", "b": "2"},
        "4": {"a": "5", "b": "6"},
        "5": {"a": "5", "b": "6"},
        "6": {"a": "4", "b": "3"},
    }
    return Dfa.from_table(AB, table, "1", {"4", "5", "6"}, names)


def a_chain_minimal() -> Dfa:
    """Accepts words with at least five a's: an a-chain 1..6 with b-loops.  Already minimal."""
    names = tuple("123456")
    table = {str(i): {"a": str(i + 1), "b": str(i)} for i in range(1, 6)}
    table["6"] = {"a": "6", "b": "6"}
    return Dfa.from_table(AB, table, "1", {"6"}, names)


def ab_star_minimal() -> Dfa:
    """Minimal complete DFA of ``(ab)*``: states 1, 2 and a sink 3."""
    table = {
        "1": {"a": "2", "b": "3"},
        "2": {"a": "3", "b": "1"},
        "3": {"a": "3", "b": "3"},
    }
    return Dfa.from_table(AB, table, "1", {"1"}, ("1", "2", "3"))


# Element order used for the six-element monoid of (ab)*, by representative word.
AB_STAR_ELEMENTS = ("1", "α", "β", "αβ", "βα", "0")
AB_STAR_REPRESENTATIVES = ((), ("a",), ("b",), ("a", "b"), ("b", "a"), ("a", "a"))
AB_STAR_TABLE = (
    ("1", "α", "β", "αβ", "βα", "0"),
    ("α", "0", "αβ", "0", "α", "0"),
    ("β", "βα", "0", "β", "0", "0"),
    ("αβ", "α", "0", "αβ", "0", "0"),
    ("βα", "0", "β", "0", "βα", "0"),
    ("0", "0", "0", "0", "0", "0"),
)


def five_cycle_and_swap() -> Dfa:
    """``a`` acts as a 5-cycle and ``b`` swaps states 1 and 2: transition monoid S5."""
    names = tuple("12345")
    table = {
        "1": {"a": "2", "b": "2"},
        "2": {"a": "3", "b": "1"},
        "3": {"a": "4", "b": "3"},
        "4": {"a": "5", "b": "4"},
        "5": {"a": "1", "b": "5"},
    }
    return Dfa.from_table(AB, table, "1", {"1"}, names)


def full_transformations_5() -> Dfa:
    """Adds a letter ``c`` merging states 1 and 2: transition monoid is all 5^5 maps."""
    names = tuple("12345")
    table = {
        "1": {"a": "2", "b": "2", "c": "2"},
        "2": {"a": "3", "b": "1", "c": "2"},
        "3": {"a": "4", "b": "3", "c": "3"},
        "4": {"a": "5", "b": "4", "c": "4"},
        "5": {"a": "1", "b": "5", "c": "5"},
    }
    return Dfa.from_table(("a", "b", "c"), table, "1", {"1"}, names)


def ab_star_with_group() -> Dfa:
    """Non-minimal DFA of ``(ab)*`` whose two sink states swap on every letter."""
    table = {
        "1": {"a": "2", "b": "4"},
        "2": {"a": "3", "b": "1"},
        "3": {"a": "4", "b": "4"},
        "4": {"a": "3", "b": "3"},
    }
    return Dfa.from_table(AB, table, "1", {"1"}, ("1", "2", "3", "4"))


def a_at_distance(n: int) -> Nfa:
    """The n-state NFA for ``A*aA^(n-2)``: the (n-1)-th letter from the end is ``a``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    triples = [(0, "a", 0), (0, "b", 0), (0, "a", 1)]
    for i in range(1, n - 1):
        triples += [(i, "a", i + 1), (i, "b", i + 1)]
    return Nfa.from_triples(AB, n, triples, [0], [n - 1])


def even_length() -> Dfa:
    table = {0: {"a": 1, "b": 1}, 1: {"a": 0, "b": 0}}
    return Dfa.from_table(AB, table, 0, {0})


def right_zero_monoid_table() -> np.ndarray:
    """``{1, α, β, γ}`` with ``m·n = n`` for ``n ≠ 1``: not the syntactic monoid of any language."""
    t = np.empty((4, 4), dtype=np.int64)
    for m in range(4):
        for n in range(4):
            t[m, n] = m if n == 0 else n
    return t
