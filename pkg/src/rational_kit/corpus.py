"""Seeded random automata, expressions and sentences.

Everything takes a ``random.Random`` (or a seed), so a corpus is fully
determined by its seed.
"""

from __future__ import annotations

import random

import numpy as np

from .automata import EPS, Alphabet, Dfa, Nfa
from .logic import (
    TRUE,
    And,
    Eq,
    ExistsFO,
    ExistsSO,
    ForallFO,
    ForallSO,
    Formula,
    LetterAt,
    Less,
    Not,
    Or,
    SetMem,
    Succ,
)
from .regex import EMPTY, EPSILON, Complement, Concat, Intersect, Letter, Regex, Star, Union


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_dfa(seed, num_states: int, alphabet="ab", final_prob: float = 0.5, partial_prob: float = 0.0) -> Dfa:
    """A DFA with uniformly random moves; ``partial_prob`` leaves moves undefined."""
    rng = _rng(seed)
    alphabet = Alphabet.of(alphabet)
    delta = np.array(
        [[-1 if rng.random() < partial_prob else rng.randrange(num_states) for _ in alphabet] for _ in range(num_states)],
        dtype=np.int64,
    ).reshape(num_states, len(alphabet))
    finals = frozenset(q for q in range(num_states) if rng.random() < final_prob)
    return Dfa(alphabet, delta, 0, finals)


def random_nfa(seed, num_states: int, alphabet="ab", density: float = 0.3, eps_prob: float = 0.0,
               final_prob: float = 0.4) -> Nfa:
    """Each possible move is present with probability ``density``; state 0 is initial."""
    rng = _rng(seed)
    alphabet = Alphabet.of(alphabet)
    trans = set()
    for p in range(num_states):
        for q in range(num_states):
            for x in range(len(alphabet)):
                if rng.random() < density:
                    trans.add((p, x, q))
            if p != q and rng.random() < eps_prob:
                trans.add((p, EPS, q))
    finals = frozenset(q for q in range(num_states) if rng.random() < final_prob)
    return Nfa(alphabet, num_states, frozenset(trans), frozenset({0}), finals)


def random_regex(seed, max_nodes: int, alphabet="ab", extended: bool = False, star: bool = True) -> Regex:
    """A random expression with at most ``max_nodes`` tree nodes."""
    rng = _rng(seed)
    symbols = Alphabet.of(alphabet).symbols

    def leaf():
        r = rng.random()
        if r < 0.08:
            return EMPTY
        if r < 0.18:
            return EPSILON
        return Letter(rng.choice(symbols))

    def build(budget):
        if budget <= 1:
            return leaf()
        unary = [Star] if star else []
        if extended:
            unary.append(Complement)
        binary = [Union, Concat, Concat] + ([Intersect] if extended else [])
        if budget == 2 or (unary and rng.random() < 0.25):
            if not unary:
                return leaf()
            return rng.choice(unary)(build(budget - 1))
        left = rng.randint(1, budget - 2)
        return rng.choice(binary)(build(left), build(budget - 1 - left))

    return build(rng.randint(1, max_nodes))


def random_sentence(seed, depth: int, alphabet="ab", second_order: bool = True) -> Formula:
    """A random sentence of nesting depth at most ``depth``.

    Atoms only mention variables bound above them, so the result is closed.
    """
    rng = _rng(seed)
    symbols = Alphabet.of(alphabet).symbols
    fo_names = "xyzuvw"
    so_names = "XYZUVW"

    def atom(fo, so):
        if not fo:
            return TRUE if rng.random() < 0.5 else Not(TRUE)
        x, y = rng.choice(fo), rng.choice(fo)
        kinds = ["letter", "letter", "less", "succ", "eq"] + (["mem", "mem"] if so else [])
        kind = rng.choice(kinds)
        if kind == "letter":
            return LetterAt(rng.choice(symbols), x)
        if kind == "less":
            return Less(x, y)
        if kind == "succ":
            return Succ(x, y)
        if kind == "eq":
            return Eq(x, y)
        return SetMem(rng.choice(so), x)

    def build(d, fo, so):
        if d == 0:
            return atom(fo, so)
        r = rng.random()
        if not fo or r < 0.45:
            if second_order and len(so) < 2 and rng.random() < 0.3:
                v = so_names[len(so)]
                q = rng.choice([ExistsSO, ForallSO])
                return q(v, build(d - 1, fo, so + [v]))
            if len(fo) < 3:
                v = fo_names[len(fo)]
                q = rng.choice([ExistsFO, ForallFO])
                return q(v, build(d - 1, fo + [v], so))
        if r < 0.6:
            return Not(build(d - 1, fo, so))
        if r < 0.85:
            op = rng.choice([And, Or])
            return op(build(d - 1, fo, so), build(rng.randint(0, d - 1), fo, so))
        return atom(fo, so)

    return build(depth, [], [])
