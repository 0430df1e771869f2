"""Minimal automata: pair marking, Moore refinement and Nerode classes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .automata import Alphabet, Dfa, Word, bfs_order, to_dfa, word_list
from .errors import ContractError, InputError

ALGORITHMS = ("moore", "pair_marking")


@dataclass(frozen=True)
class StatePartition:
    """Blocks of original state ids, ordered by their smallest member."""

    blocks: tuple

    @property
    def block_of(self) -> dict:
        return {q: i for i, block in enumerate(self.blocks) for q in block}

    def __len__(self):
        return len(self.blocks)

    def as_sets(self) -> list:
        return [set(b) for b in self.blocks]


class Minimized(NamedTuple):
    dfa: Dfa
    partition: StatePartition
    state_map: dict  # accessible original state -> state of the minimal DFA
    passes: int  # refinement passes that changed something


def _accessible_order(d: Dfa) -> list:
    return sorted(bfs_order(d.delta, d.initial))


def _require_complete(d):
    if not isinstance(d, Dfa):
        raise ContractError("minimize needs a Dfa; determinize first")
    if not d.is_complete:
        raise ContractError("minimize needs a complete Dfa; call complete() first")


def _local(d: Dfa):
    """Accessible states, their local renumbering, and the local transition table."""
    states = _accessible_order(d)
    local = np.full(d.num_states, -1, dtype=np.int64)
    local[states] = np.arange(len(states))
    delta = local[d.delta[states]]
    final = np.zeros(len(states), dtype=bool)
    for i, q in enumerate(states):
        final[i] = q in d.finals
    return states, delta, final


def marking_table(d: Dfa):
    """Pair-marking on the accessible part.

    Returns ``(states, delta, mark_pass, mark_letter, passes)`` where
    ``mark_pass[p, q]`` is the pass that marked ``{p, q}`` (0 for the initial
    marking, -1 if never marked) and ``mark_letter`` the letter that caused it.
    """
    _require_complete(d)
    states, delta, final = _local(d)
    n = len(states)
    mark_pass = np.where(final[:, None] != final[None, :], 0, -1)
    mark_letter = np.full((n, n), -1, dtype=np.int64)
    passes = 0
    while True:
        marked = mark_pass >= 0
        new = np.zeros((n, n), dtype=bool)
        letter = np.full((n, n), -1, dtype=np.int64)
        for x in range(delta.shape[1]):
            col = delta[:, x]
            hit = marked[col[:, None], col[None, :]] & ~marked & ~new
            letter[hit] = x
            new |= hit
        if not new.any():
            break
        passes += 1
        mark_pass[new] = passes
        mark_letter[new] = letter[new]
    return states, delta, mark_pass, mark_letter, passes


def _moore_blocks(delta: np.ndarray, final: np.ndarray):
    n = len(final)
    block = final.astype(np.int64)
    block = _canonical(block)
    count = len(np.unique(block))
    passes = 0
    while True:
        sig = np.ascontiguousarray(np.column_stack([block, block[delta]])) if n else np.zeros((0, 1), dtype=np.int64)
        # one opaque byte string per row makes the row-wise unique a plain 1-D sort
        rows = sig.view(np.dtype((np.void, sig.dtype.itemsize * sig.shape[1]))).ravel()
        _, inv = np.unique(rows, return_inverse=True)
        new = _canonical(inv.reshape(-1))
        new_count = int(new.max()) + 1 if n else 0
        if new_count == count:
            return new, passes
        passes += 1
        block, count = new, new_count


def _canonical(labels: np.ndarray) -> np.ndarray:
    """Renumber block labels by first occurrence."""
    if len(labels) == 0:
        return labels
    _, first = np.unique(labels, return_index=True)
    order = np.argsort(first)
    rank = np.empty(len(order), dtype=np.int64)
    rank[order] = np.arange(len(order))
    _, inv = np.unique(labels, return_inverse=True)
    return rank[inv.reshape(-1)]


def minimize(d: Dfa, algorithm: str = "moore") -> Minimized:
    """Quotient of the accessible part of a complete DFA by state equivalence."""
    _require_complete(d)
    if algorithm not in ALGORITHMS:
        raise InputError(f"unknown minimization algorithm {algorithm!r} ({'|'.join(ALGORITHMS)})")
    if algorithm == "moore":
        states, delta, final = _local(d)
        block, passes = _moore_blocks(delta, final)
    else:
        states, delta, mark_pass, _, passes = marking_table(d)
        n = len(states)
        unmarked = mark_pass < 0
        block = np.full(n, -1, dtype=np.int64)
        count = 0
        for p in range(n):
            if block[p] < 0:
                block[unmarked[p] & (block < 0)] = count
                count += 1
    nblocks = int(block.max()) + 1
    members = [[] for _ in range(nblocks)]
    for i, q in enumerate(states):
        members[block[i]].append(q)
    # blocks are numbered by smallest member because states are sorted
    _, rep = np.unique(block, return_index=True)
    new_delta = block[delta[rep]]
    finals = frozenset(int(block[i]) for i in range(len(states)) if states[i] in d.finals)
    local_initial = states.index(d.initial)
    names = tuple(",".join(d.state_name(q) for q in m) for m in members) if d.names is not None else None
    out = Dfa(d.alphabet, new_delta, int(block[local_initial]), finals, names)
    partition = StatePartition(tuple(tuple(m) for m in members))
    state_map = {q: int(block[i]) for i, q in enumerate(states)}
    return Minimized(out, partition, state_map, passes)


def minimal_dfa(a, cap: int | None = None) -> Dfa:
    """The minimal complete DFA of any automaton (determinize, complete, minimize)."""
    return minimize(to_dfa(a, cap=cap)).dfa


@dataclass(frozen=True)
class StateEquivalence:
    equivalent: bool
    word: Word | None = None  # shortest word separating the two states

    def __bool__(self):
        return self.equivalent


def equivalent_states(d: Dfa, p, q) -> StateEquivalence:
    """Decide ``p ≡ q`` from the marking table; a shortest separating word otherwise.

    States that are not accessible from the initial state are handled by
    running the table on ``d`` with the initial state moved.
    """
    _require_complete(d)
    p, q = d.state_id(p), d.state_id(q)
    if p == q:
        return StateEquivalence(True)
    work = d
    if p not in _accessible_order(d) or q not in _accessible_order(d):
        work = _all_states_accessible(d)
    states, delta, mark_pass, mark_letter, _ = marking_table(work)
    idx = {s: i for i, s in enumerate(states)}
    i, j = idx[p], idx[q]
    if mark_pass[i, j] < 0:
        return StateEquivalence(True)
    word = []
    while mark_pass[i, j] > 0:
        x = int(mark_letter[i, j])
        word.append(d.alphabet.symbols[x])
        i, j = int(delta[i, x]), int(delta[j, x])
    return StateEquivalence(False, tuple(word))


def _all_states_accessible(d: Dfa) -> Dfa:
    """Make every state accessible with extra letters ``#i`` sending all states to ``i``.

    Such letters send both members of a pair to the same state, so they
    never mark anything and separating words are unchanged.
    """
    n, k = d.num_states, len(d.alphabet)
    alphabet = Alphabet(d.alphabet.symbols + tuple(f"#{i}" for i in range(n)))
    wide = np.empty((n + 1, k + n), dtype=np.int64)
    wide[:n, :k] = d.delta
    wide[n, :k] = 0
    wide[:, k:] = np.arange(n)[None, :]
    return Dfa(alphabet, wide, n, d.finals)


def nerode_classes(d: Dfa, max_len: int) -> list:
    """Group every word of length ≤ ``max_len`` by the state it reaches in the minimal DFA.

    Classes are listed in order of their shortlex-least word.
    """
    _require_complete(d)
    m = minimize(d).dfa
    groups = {}
    for w in word_list(d.alphabet, max_len):
        groups.setdefault(m.step(m.initial, w), []).append(w)
    return list(groups.values())
