"""Automaton kernel: alphabets, NFAs, DFAs and the basic constructions.

States are dense integers ``0..n-1``; optional display names live in a side
tuple.  Words are tuples of symbol names.  Internally symbols are addressed
by their index in the alphabet and the empty-word label is :data:`EPS`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .config import DEFAULT_CAPS
from .errors import ContractError, InputError, ResourceError

EPS = -1
EPS_TOKEN = "eps"

Word = tuple  # tuple[str, ...]


@dataclass(frozen=True)
class Alphabet:
    """An ordered, finite, non-empty set of symbol tokens."""

    symbols: tuple

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise InputError("alphabet must be non-empty")
        seen = set()
        for s in symbols:
            if not isinstance(s, str) or not s or any(c.isspace() for c in s):
                raise InputError(f"invalid alphabet symbol {s!r}")
            if s == EPS_TOKEN:
                raise InputError(f"'{EPS_TOKEN}' is reserved and cannot be an alphabet symbol")
            if s in seen:
                raise InputError(f"duplicate alphabet symbol {s!r}")
            seen.add(s)

    @classmethod
    def of(cls, symbols) -> "Alphabet":
        if isinstance(symbols, Alphabet):
            return symbols
        if isinstance(symbols, str):
            symbols = symbols.split() if any(c.isspace() for c in symbols) else list(symbols)
        return cls(tuple(symbols))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    @cached_property
    def _index(self):
        return {s: i for i, s in enumerate(self.symbols)}

    @cached_property
    def single_chars(self) -> bool:
        return all(len(s) == 1 for s in self.symbols)

    def id(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise InputError(f"unknown symbol {symbol!r} (alphabet: {' '.join(self.symbols)})") from None

    def encode(self, word) -> tuple:
        return tuple(self.id(s) for s in self.word(word))

    def decode(self, ids: Iterable[int]) -> Word:
        return tuple(self.symbols[i] for i in ids)

    def word(self, text) -> Word:
        """Normalise ``text`` into a word (tuple of symbols).

        Strings are split on whitespace when they contain any; otherwise
        they are tokenised greedily against the alphabet, so ``"abba"``
        works for single-character alphabets and ``"tw"`` works for
        multi-character ones as long as the split is unambiguous.  The
        tokens ``eps`` and ``""`` denote the empty word.
        """
        if isinstance(text, tuple) and all(isinstance(s, str) for s in text):
            for s in text:
                if s not in self._index:
                    raise InputError(f"unknown symbol {s!r} (alphabet: {' '.join(self.symbols)})")
            return text
        if not isinstance(text, str):
            return self.word(tuple(text))
        text = text.strip()
        if text in ("", EPS_TOKEN):
            return ()
        if any(c.isspace() for c in text):
            return self.word(tuple(t for t in text.split() if t != EPS_TOKEN))
        if self.single_chars:
            return self.word(tuple(text))
        out = []
        pos = 0
        longest = max(len(s) for s in self.symbols)
        while pos < len(text):
            for size in range(min(longest, len(text) - pos), 0, -1):
                if text[pos : pos + size] in self._index:
                    out.append(text[pos : pos + size])
                    pos += size
                    break
            else:
                raise InputError(f"cannot split {text!r} into symbols at offset {pos}")
        return tuple(out)

    def show(self, word) -> str:
        word = tuple(word)
        if not word:
            return EPS_TOKEN
        if self.single_chars:
            return "".join(word)
        return " ".join(word)

    def union(self, other: "Alphabet") -> "Alphabet":
        extra = tuple(s for s in other.symbols if s not in self._index)
        return Alphabet(self.symbols + extra)


def _check_states(states, n, what):
    out = frozenset(states)
    for q in out:
        if not isinstance(q, (int, np.integer)) or not 0 <= q < n:
            raise InputError(f"{what} state {q!r} out of range 0..{n - 1}")
    return frozenset(int(q) for q in out)


@dataclass(frozen=True, eq=False)
class Nfa:
    """Nondeterministic automaton ``(Q, T, I, F)`` with optional ε-moves.

    ``transitions`` holds ``(source, label, target)`` triples where
    ``label`` is a symbol index or :data:`EPS`.
    """

    alphabet: Alphabet
    num_states: int
    transitions: frozenset
    initials: frozenset
    finals: frozenset
    names: tuple | None = None

    def __post_init__(self):
        n = self.num_states
        if n < 0:
            raise InputError("number of states must be non-negative")
        k = len(self.alphabet)
        trans = frozenset(self.transitions)
        for t in trans:
            p, a, q = t
            if not (0 <= p < n and 0 <= q < n):
                raise InputError(f"transition {t} has an endpoint outside 0..{n - 1}")
            if a != EPS and not 0 <= a < k:
                raise InputError(f"transition {t} has a label outside the alphabet")
        object.__setattr__(self, "transitions", trans)
        object.__setattr__(self, "initials", _check_states(self.initials, n, "initial"))
        object.__setattr__(self, "finals", _check_states(self.finals, n, "final"))
        if self.names is not None:
            names = tuple(str(x) for x in self.names)
            if len(names) != n:
                raise InputError(f"{len(names)} names given for {n} states")
            object.__setattr__(self, "names", names)

    @classmethod
    def from_triples(cls, alphabet, num_states, triples, initials, finals, names=None) -> "Nfa":
        """Build from ``(p, symbol, q)`` triples; ``symbol`` may be ``None`` or ``'eps'``.

        States may be given by id or, when ``names`` is supplied, by name.
        """
        alphabet = Alphabet.of(alphabet)
        lookup = {str(nm): i for i, nm in enumerate(names)} if names is not None else {}

        def sid(q):
            if isinstance(q, str) and q in lookup:
                return lookup[q]
            return q

        trans = set()
        for p, a, q in triples:
            label = EPS if a in (None, EPS_TOKEN) else alphabet.id(a)
            trans.add((sid(p), label, sid(q)))
        return cls(
            alphabet,
            num_states,
            frozenset(trans),
            frozenset(sid(q) for q in initials),
            frozenset(sid(q) for q in finals),
            names,
        )

    # -- views ----------------------------------------------------------------

    @cached_property
    def out(self) -> tuple:
        """``out[p][label]`` is the tuple of targets of ``p`` under ``label``."""
        table = [dict() for _ in range(self.num_states)]
        for p, a, q in sorted(self.transitions):
            table[p].setdefault(a, []).append(q)
        return tuple({a: tuple(qs) for a, qs in row.items()} for row in table)

    @cached_property
    def has_epsilon(self) -> bool:
        return any(a == EPS for _, a, _ in self.transitions)

    def state_name(self, q: int) -> str:
        return self.names[q] if self.names is not None else str(q)

    def state_id(self, q) -> int:
        return _state_id(self, q)

    @property
    def is_complete(self) -> bool:
        k = len(self.alphabet)
        return all(all(a in row for a in range(k)) for row in self.out)

    @property
    def is_deterministic(self) -> bool:
        if len(self.initials) != 1 or self.has_epsilon:
            return False
        return all(len(qs) <= 1 for row in self.out for qs in row.values())

    def to_dfa(self) -> "Dfa":
        """Reinterpret a deterministic NFA as a :class:`Dfa` (no subset construction)."""
        if not self.is_deterministic:
            raise ContractError("automaton is not deterministic")
        delta = np.full((self.num_states, len(self.alphabet)), -1, dtype=np.int64)
        for p, a, q in self.transitions:
            delta[p, a] = q
        (i,) = self.initials
        return Dfa(self.alphabet, delta, i, self.finals, self.names)

    def triples(self):
        """Transitions as sorted ``(p, symbol, q)`` with ``'eps'`` for ε."""
        sym = self.alphabet.symbols
        return [(p, EPS_TOKEN if a == EPS else sym[a], q) for p, a, q in sorted(self.transitions)]


@dataclass(frozen=True, eq=False)
class Dfa:
    """Deterministic automaton ``(Q, δ, i, F)``; ``delta[q, a] == -1`` means undefined."""

    alphabet: Alphabet
    delta: np.ndarray
    initial: int
    finals: frozenset
    names: tuple | None = None

    def __post_init__(self):
        delta = np.array(self.delta, dtype=np.int64, copy=True)
        if delta.ndim != 2 or delta.shape[1] != len(self.alphabet):
            raise InputError(f"transition table must have shape (n, {len(self.alphabet)})")
        n = delta.shape[0]
        if n == 0:
            raise InputError("a deterministic automaton needs at least its initial state")
        if delta.size and (delta.min() < -1 or delta.max() >= n):
            raise InputError("transition table refers to a state out of range")
        delta.setflags(write=False)
        object.__setattr__(self, "delta", delta)
        if not 0 <= self.initial < n:
            raise InputError(f"initial state {self.initial} out of range")
        object.__setattr__(self, "initial", int(self.initial))
        object.__setattr__(self, "finals", _check_states(self.finals, n, "final"))
        if self.names is not None:
            names = tuple(str(x) for x in self.names)
            if len(names) != n:
                raise InputError(f"{len(names)} names given for {n} states")
            object.__setattr__(self, "names", names)

    @classmethod
    def from_table(cls, alphabet, table, initial, finals, names=None) -> "Dfa":
        """Build from ``{state: {symbol: target}}`` (states by id or name)."""
        alphabet = Alphabet.of(alphabet)
        if names is None:
            n = len(table)
            lookup = {}
        else:
            n = len(names)
            lookup = {str(nm): i for i, nm in enumerate(names)}

        def sid(q):
            return lookup.get(q, q) if isinstance(q, str) else q

        delta = np.full((n, len(alphabet)), -1, dtype=np.int64)
        for p, row in table.items():
            for a, q in row.items():
                delta[sid(p), alphabet.id(a)] = sid(q)
        return cls(alphabet, delta, sid(initial), frozenset(sid(f) for f in finals), names)

    @property
    def num_states(self) -> int:
        return self.delta.shape[0]

    @property
    def is_complete(self) -> bool:
        return bool((self.delta >= 0).all())

    @property
    def initials(self) -> frozenset:
        return frozenset((self.initial,))

    def state_name(self, q: int) -> str:
        return self.names[q] if self.names is not None else str(q)

    def state_id(self, q) -> int:
        return _state_id(self, q)

    def step(self, q: int, word) -> int | None:
        """``δ(q, word)`` or ``None`` when undefined."""
        for a in self.alphabet.encode(word):
            q = int(self.delta[q, a])
            if q < 0:
                return None
        return q

    def to_nfa(self) -> Nfa:
        p, a = np.nonzero(self.delta >= 0)
        trans = frozenset(zip(p.tolist(), a.tolist(), self.delta[p, a].tolist()))
        return Nfa(self.alphabet, self.num_states, trans, frozenset((self.initial,)), self.finals, self.names)

    def with_finals(self, finals) -> "Dfa":
        return Dfa(self.alphabet, self.delta, self.initial, frozenset(finals), self.names)

    def with_initial(self, initial: int) -> "Dfa":
        return Dfa(self.alphabet, self.delta, initial, self.finals, self.names)


def _state_id(a, q) -> int:
    if isinstance(q, str) and a.names is not None and q in a.names:
        return a.names.index(q)
    if isinstance(q, (int, np.integer)) and 0 <= q < a.num_states:
        return int(q)
    raise InputError(f"unknown state {q!r}")


def as_nfa(a) -> Nfa:
    if isinstance(a, Nfa):
        return a
    if isinstance(a, Dfa):
        return a.to_nfa()
    raise ContractError(f"expected an automaton, got {type(a).__name__}")


# -- acceptance ----------------------------------------------------------------


@dataclass(frozen=True)
class PathWitness:
    """A path ``q0 -a1-> q1 ... -an-> qn``; ε-steps carry the label ``None``."""

    states: tuple
    labels: tuple

    def __post_init__(self):
        if len(self.states) != len(self.labels) + 1:
            raise ValueError("a path over n labels visits n+1 states")

    @property
    def word(self) -> Word:
        return tuple(a for a in self.labels if a is not None)

    def is_path_of(self, a: Nfa) -> bool:
        for p, label, q in zip(self.states, self.labels, self.states[1:]):
            lab = EPS if label is None else a.alphabet.id(label)
            if (p, lab, q) not in a.transitions:
                return False
        return True


@dataclass(frozen=True)
class Acceptance:
    accepted: bool
    path: PathWitness | None = None

    def __bool__(self):
        return self.accepted


def accepts_nfa(a, w) -> Acceptance:
    """Decide ``w ∈ L(a)`` and return a successful path when there is one."""
    a = as_nfa(a)
    ids = a.alphabet.encode(w)
    n = len(ids)
    parent = {}
    queue = deque()
    for i in sorted(a.initials):
        parent[(0, i)] = None
        queue.append((0, i))
    goal = None
    while queue:
        pos, q = queue.popleft()
        if pos == n and q in a.finals:
            goal = (pos, q)
            break
        row = a.out[q]
        for r in row.get(EPS, ()):
            if (pos, r) not in parent:
                parent[(pos, r)] = ((pos, q), None)
                queue.append((pos, r))
        if pos < n:
            for r in row.get(ids[pos], ()):
                if (pos + 1, r) not in parent:
                    parent[(pos + 1, r)] = ((pos, q), a.alphabet.symbols[ids[pos]])
                    queue.append((pos + 1, r))
    if goal is None:
        return Acceptance(False)
    states, labels = [goal[1]], []
    node = goal
    while parent[node] is not None:
        node, label = parent[node]
        states.append(node[1])
        labels.append(label)
    return Acceptance(True, PathWitness(tuple(reversed(states)), tuple(reversed(labels))))


class Run(NamedTuple):
    state: int | None
    accepted: bool


def run_dfa(d: Dfa, w) -> Run:
    q = d.step(d.initial, w)
    return Run(q, q is not None and q in d.finals)


# -- completion, trimming, emptiness --------------------------------------------


def complete(a):
    """Add one sink state if some ``(q, a)`` has no transition; otherwise return ``a``."""
    if isinstance(a, Dfa):
        if a.is_complete:
            return a
        n = a.num_states
        delta = np.vstack([a.delta, np.full((1, len(a.alphabet)), n, dtype=np.int64)])
        delta[delta < 0] = n
        names = a.names + ("z",) if a.names is not None else None
        return Dfa(a.alphabet, delta, a.initial, a.finals, names)
    a = as_nfa(a)
    if a.is_complete:
        return a
    z = a.num_states
    extra = {(z, x, z) for x in range(len(a.alphabet))}
    for q, row in enumerate(a.out):
        extra.update((q, x, z) for x in range(len(a.alphabet)) if x not in row)
    names = a.names + ("z",) if a.names is not None else None
    return Nfa(a.alphabet, z + 1, a.transitions | extra, a.initials, a.finals, names)


def _reach(num_states, start, edges):
    """Forward closure by the layered iteration ``Q_{n+1} = Q_n ∪ succ(Q_n)``.

    Returns the reached set and the number of rounds that added something.
    """
    reached = set(start)
    frontier = set(start)
    rounds = 0
    while frontier:
        new = set()
        for q in frontier:
            new.update(r for r in edges[q] if r not in reached)
        if not new:
            break
        rounds += 1
        reached |= new
        frontier = new
    return frozenset(reached), rounds


class Trimmed(NamedTuple):
    nfa: Nfa
    accessible: frozenset
    coaccessible: frozenset
    rounds: int  # largest number of productive rounds of either fixpoint


def _successors(a: Nfa):
    return [sorted({q for qs in row.values() for q in qs}) for row in a.out]


def _predecessors(a: Nfa):
    pred = [set() for _ in range(a.num_states)]
    for p, _, q in a.transitions:
        pred[q].add(p)
    return [sorted(s) for s in pred]


def restrict(a: Nfa, keep) -> Nfa:
    """Sub-automaton on the states ``keep`` (renumbered in increasing order)."""
    keep = sorted(keep)
    new = {q: i for i, q in enumerate(keep)}
    trans = frozenset(
        (new[p], x, new[q]) for p, x, q in a.transitions if p in new and q in new
    )
    names = tuple(a.names[q] for q in keep) if a.names is not None else None
    return Nfa(
        a.alphabet,
        len(keep),
        trans,
        frozenset(new[q] for q in a.initials if q in new),
        frozenset(new[q] for q in a.finals if q in new),
        names,
    )


def trim(a) -> Trimmed:
    a = as_nfa(a)
    acc, r1 = _reach(a.num_states, a.initials, _successors(a))
    coacc, r2 = _reach(a.num_states, a.finals, _predecessors(a))
    return Trimmed(restrict(a, acc & coacc), acc, coacc, max(r1, r2))


def accessible_states(a) -> frozenset:
    a = as_nfa(a)
    return _reach(a.num_states, a.initials, _successors(a))[0]


@dataclass(frozen=True)
class Emptiness:
    empty: bool
    word: Word | None = None  # a shortest accepted word when not empty

    def __bool__(self):
        return self.empty


def is_empty(a) -> Emptiness:
    """Emptiness test by breadth-first search; also yields a shortest accepted word."""
    a = as_nfa(a)
    if a.has_epsilon:
        a = remove_epsilon(a)
    parent = {q: None for q in sorted(a.initials)}
    queue = deque(sorted(a.initials))
    while queue:
        q = queue.popleft()
        if q in a.finals:
            word = []
            while parent[q] is not None:
                q, x = parent[q]
                word.append(a.alphabet.symbols[x])
            return Emptiness(False, tuple(reversed(word)))
        for x in range(len(a.alphabet)):
            for r in a.out[q].get(x, ()):
                if r not in parent:
                    parent[r] = (q, x)
                    queue.append(r)
    return Emptiness(True)


# -- ε-removal and determinization ----------------------------------------------


def epsilon_closure(a: Nfa) -> list:
    """``R[p]``: states reachable from ``p`` by ε-transitions only (reflexive)."""
    eps_succ = [row.get(EPS, ()) for row in a.out]
    closure = []
    for p in range(a.num_states):
        seen = {p}
        stack = [p]
        while stack:
            q = stack.pop()
            for r in eps_succ[q]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        closure.append(frozenset(seen))
    return closure


def remove_epsilon(a) -> Nfa:
    """``T' = {(p,a,q) : (p,a,q') ∈ T, q' R q}``, ``I' = R(I)``, ``F`` unchanged."""
    a = as_nfa(a)
    if not a.has_epsilon:
        return a
    R = epsilon_closure(a)
    trans = frozenset(
        (p, x, q) for p, x, q1 in a.transitions if x != EPS for q in R[q1]
    )
    initials = frozenset(q for p in a.initials for q in R[p])
    return Nfa(a.alphabet, a.num_states, trans, initials, a.finals, a.names)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask(states) -> int:
    m = 0
    for q in states:
        m |= 1 << q
    return m


def _subset_name(a: Nfa, mask: int) -> str:
    return "{" + ",".join(a.state_name(q) for q in _bits(mask)) + "}"


def _successor_masks(a: Nfa):
    """``table[q, x]`` = bitmask of the x-successors of q (object array beyond 63 states)."""
    k = len(a.alphabet)
    rows = [[0] * k for _ in range(max(a.num_states, 1))]
    for p, x, q in a.transitions:
        rows[p][x] |= 1 << q
    if a.num_states <= 63:
        return np.array(rows, dtype=np.uint64).reshape(len(rows), k)
    table = np.empty((len(rows), k), dtype=object)
    for p, row in enumerate(rows):
        table[p, :] = row
    return table


def subset_automaton(a, cap: int | None = None) -> Dfa:
    """The full powerset automaton ``A_sub``; state ``s`` stands for the subset with bitmask ``s``."""
    a = as_nfa(a)
    if a.has_epsilon:
        raise ContractError("subset_automaton needs an ε-free automaton; call remove_epsilon first")
    cap = DEFAULT_CAPS.subset_states if cap is None else cap
    if a.num_states > cap:
        raise ResourceError(f"subset automaton of {a.num_states} states exceeds cap {cap} (2^{a.num_states} states)")
    n, k = a.num_states, len(a.alphabet)
    succ = [[_mask(a.out[q].get(x, ())) for x in range(k)] for q in range(n)]
    size = 1 << n
    delta = np.zeros((size, k), dtype=np.int64)
    for s in range(1, size):
        low = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        for x in range(k):
            delta[s, x] = delta[rest, x] | succ[low][x]
    fmask = _mask(a.finals)
    finals = frozenset(s for s in range(size) if s & fmask)
    names = tuple(_subset_name(a, s) for s in range(size))
    return Dfa(a.alphabet, delta, _mask(a.initials), finals, names)


class Determinized(NamedTuple):
    dfa: Dfa
    subsets: tuple  # subsets[s] = frozenset of NFA states represented by DFA state s


def determinize(a, prune: bool = False, cap: int | None = None) -> Determinized:
    """Accessible part of the subset automaton, built on the fly from ``I``.

    With ``prune=True`` the states that cannot reach a final state are also
    removed, which generally leaves a partial DFA.
    """
    a = remove_epsilon(as_nfa(a))
    cap = DEFAULT_CAPS.determinize_states if cap is None else cap
    k = len(a.alphabet)
    table = _successor_masks(a)
    small = table.dtype != object
    start = _mask(a.initials)
    ids = {start: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        s = order[i]
        i += 1
        members = list(_bits(s))
        if members:
            if small:
                succ = np.bitwise_or.reduce(table[members], axis=0).tolist()
            else:
                succ = list(np.bitwise_or.reduce(table[members], axis=0))
        else:
            succ = [0] * k
        row = []
        for t in succ:
            t = int(t)
            j = ids.get(t)
            if j is None:
                j = len(order)
                if j >= cap:
                    raise ResourceError(
                        f"determinization exceeded {cap} states", partial=len(order)
                    )
                ids[t] = j
                order.append(t)
            row.append(j)
        rows.append(row)
    delta = np.array(rows, dtype=np.int64).reshape(len(order), k)
    fmask = _mask(a.finals)
    finals = frozenset(j for j, s in enumerate(order) if s & fmask)
    subsets = tuple(frozenset(_bits(s)) for s in order)
    names = tuple(_subset_name(a, s) for s in order)
    d = Dfa(a.alphabet, delta, 0, finals, names)
    if prune:
        d, keep = prune_dfa(d)
        subsets = tuple(subsets[q] for q in keep)
    return Determinized(d, subsets)


def prune_dfa(d: Dfa):
    """Drop non-co-accessible states (the initial state is always kept)."""
    coacc = _reach(d.num_states, d.finals, _predecessors(d.to_nfa()))[0] | {d.initial}
    keep = sorted(coacc)
    new = np.full(d.num_states + 1, -1, dtype=np.int64)
    new[keep] = np.arange(len(keep))
    delta = new[d.delta[keep]]  # -1 indexes the trailing -1 sentinel
    names = tuple(d.names[q] for q in keep) if d.names is not None else None
    return Dfa(d.alphabet, delta, int(new[d.initial]), frozenset(int(new[f]) for f in d.finals), names), keep


def to_dfa(a, cap: int | None = None) -> Dfa:
    """A complete DFA for ``L(a)``: determinize NFAs, complete partial DFAs."""
    if isinstance(a, Dfa):
        return complete(a)
    a = as_nfa(a)
    if a.is_deterministic and a.is_complete:
        return a.to_dfa()
    return determinize(a, cap=cap).dfa


def bfs_order(delta: np.ndarray, start: int) -> list:
    """States reachable from ``start`` in breadth-first discovery order (letters in alphabet order)."""
    seen = np.zeros(delta.shape[0], dtype=bool)
    seen[start] = True
    order = [start]
    frontier = np.array([start])
    while len(frontier):
        cand = delta[frontier].ravel()
        cand = cand[cand >= 0]
        cand = cand[~seen[cand]]
        if not len(cand):
            break
        _, first = np.unique(cand, return_index=True)
        frontier = cand[np.sort(first)]
        seen[frontier] = True
        order.extend(frontier.tolist())
    return order


def accessible_dfa(d: Dfa) -> Dfa:
    """Restrict ``d`` to the states reachable from its initial state (BFS order)."""
    order = bfs_order(d.delta, d.initial)
    seen = set(order)
    if len(order) == d.num_states and order == list(range(d.num_states)):
        return d
    new = np.full(d.num_states + 1, -1, dtype=np.int64)
    new[order] = np.arange(len(order))
    delta = new[d.delta[order]]
    names = tuple(d.names[q] for q in order) if d.names is not None else None
    finals = frozenset(int(new[f]) for f in d.finals if f in seen)
    return Dfa(d.alphabet, delta, 0, finals, names)


# -- enumeration and isomorphism -------------------------------------------------


def enumerate_language(a, max_len: int, cap: int | None = None) -> list:
    """All accepted words of length ≤ ``max_len`` in shortlex (alphabet) order."""
    cap = DEFAULT_CAPS.enumerate_length if cap is None else cap
    if max_len < 0:
        raise InputError("max_len must be non-negative")
    if max_len > cap:
        raise ResourceError(f"enumeration length {max_len} exceeds cap {cap}")
    a = remove_epsilon(as_nfa(a))
    useful = trim(a).coaccessible
    k = len(a.alphabet)
    step_cache = {}

    def step(s, x):
        key = (s, x)
        if key not in step_cache:
            step_cache[key] = frozenset(r for q in s for r in a.out[q].get(x, ()) if r in useful)
        return step_cache[key]

    fin = a.finals
    layer = [((), frozenset(q for q in a.initials if q in useful))]
    layer = [(w, s) for w, s in layer if s]
    words = []
    for length in range(max_len + 1):
        words.extend(a.alphabet.decode(w) for w, s in layer if s & fin)
        if length == max_len:
            break
        nxt = []
        for w, s in layer:
            for x in range(k):
                t = step(s, x)
                if t:
                    nxt.append((w + (x,), t))
        layer = nxt
        if not layer:
            break
    return words


def canonical_form(d: Dfa):
    """Structure of the accessible part under BFS numbering from the initial state."""
    order = {d.initial: 0}
    queue = [d.initial]
    rows = []
    i = 0
    while i < len(queue):
        q = queue[i]
        i += 1
        row = []
        for r in d.delta[q]:
            r = int(r)
            if r < 0:
                row.append(-1)
                continue
            if r not in order:
                order[r] = len(queue)
                queue.append(r)
            row.append(order[r])
        rows.append(tuple(row))
    finals = tuple(q in d.finals for q in queue)
    return tuple(rows), finals, queue


@dataclass(frozen=True)
class Isomorphism:
    isomorphic: bool
    bijection: dict | None = field(default=None)

    def __bool__(self):
        return self.isomorphic


def dfa_isomorphic(d1: Dfa, d2: Dfa) -> Isomorphism:
    """Isomorphism of the accessible parts (BFS canonical numbering)."""
    if d1.alphabet.symbols != d2.alphabet.symbols:
        return Isomorphism(False)
    rows1, fin1, order1 = canonical_form(d1)
    rows2, fin2, order2 = canonical_form(d2)
    if rows1 != rows2 or fin1 != fin2:
        return Isomorphism(False)
    return Isomorphism(True, dict(zip(order1, order2)))


def check_same_alphabet(*automata) -> Alphabet:
    first = automata[0].alphabet
    for other in automata[1:]:
        if other.alphabet.symbols != first.symbols:
            raise ContractError(
                f"alphabet mismatch: {' '.join(first.symbols)} vs {' '.join(other.alphabet.symbols)}"
            )
    return first


def widen(a, alphabet: Alphabet):
    """Reinterpret ``a`` over a larger alphabet (new letters have no transitions)."""
    alphabet = Alphabet.of(alphabet)
    if alphabet.symbols == a.alphabet.symbols:
        return a
    for s in a.alphabet:
        if s not in alphabet:
            raise ContractError(f"symbol {s!r} missing from target alphabet")
    remap = [alphabet.id(s) for s in a.alphabet]
    if isinstance(a, Dfa):
        delta = np.full((a.num_states, len(alphabet)), -1, dtype=np.int64)
        delta[:, remap] = a.delta
        return Dfa(alphabet, delta, a.initial, a.finals, a.names)
    a = as_nfa(a)
    trans = frozenset((p, x if x == EPS else remap[x], q) for p, x, q in a.transitions)
    return Nfa(alphabet, a.num_states, trans, a.initials, a.finals, a.names)


def word_list(alphabet: Alphabet, max_len: int):
    """Every word of length ≤ ``max_len`` in shortlex order."""
    out = [()]
    layer = [()]
    for _ in range(max_len):
        layer = [w + (s,) for w in layer for s in alphabet.symbols]
        out.extend(layer)
    return out


def words_of_length(alphabet: Alphabet, n: int) -> Sequence:
    layer = [()]
    for _ in range(n):
        layer = [w + (s,) for w in layer for s in alphabet.symbols]
    return layer
