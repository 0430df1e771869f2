"""Closure constructions on automata and the decisions built from them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .automata import (
    EPS,
    EPS_TOKEN,
    Alphabet,
    Dfa,
    Nfa,
    Word,
    as_nfa,
    check_same_alphabet,
    is_empty,
    remove_epsilon,
    restrict,
    to_dfa,
    trim,
)
from .errors import ContractError, InputError, ResourceError

NAMED_PRODUCT_LIMIT = 4096


# -- morphisms -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Morphism:
    """A monoid morphism ``A* → B*`` given by the images of the letters of ``A``."""

    source: Alphabet
    target: Alphabet
    images: dict = field(default_factory=dict)

    def __post_init__(self):
        images = {}
        for a in self.source:
            if a not in self.images:
                raise InputError(f"morphism gives no image for symbol {a!r}")
            images[a] = self.target.word(self.images[a])
        extra = set(self.images) - set(self.source.symbols)
        if extra:
            raise InputError(f"morphism maps symbols outside its source: {sorted(extra)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def parse(cls, text: str, source=None, target=None) -> "Morphism":
        """Parse ``"a->bc b->eps"`` (commas also accepted as separators).

        Missing alphabets are inferred: the source from the left-hand sides
        in order of appearance, the target from the image letters.
        """
        pairs = []
        for item in text.replace(",", " ").split():
            if "->" not in item:
                raise InputError(f"expected 'symbol->image', got {item!r}")
            lhs, rhs = item.split("->", 1)
            if not lhs:
                raise InputError(f"missing source symbol in {item!r}")
            pairs.append((lhs, rhs))
        if source is None:
            source = Alphabet(tuple(lhs for lhs, _ in pairs))
        source = Alphabet.of(source)
        if target is None:
            letters = []
            for _, rhs in pairs:
                if rhs != EPS_TOKEN:
                    letters.extend(c for c in rhs if c not in letters)
            target = Alphabet(tuple(letters) or ("a",))
        target = Alphabet.of(target)
        images = {}
        for lhs, rhs in pairs:
            if lhs in images:
                raise InputError(f"symbol {lhs!r} mapped twice")
            images[lhs] = rhs
        return cls(source, target, images)

    def _key(self):
        return (self.source.symbols, self.target.symbols, tuple(self.images[a] for a in self.source))

    def __eq__(self, other):
        return isinstance(other, Morphism) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def apply(self, word) -> Word:
        out = []
        for a in self.source.word(word):
            out.extend(self.images[a])
        return tuple(out)

    def __call__(self, word) -> Word:
        return self.apply(word)

    def show(self) -> str:
        return " ".join(f"{a}->{self.target.show(self.images[a]) if self.images[a] else EPS_TOKEN}" for a in self.source)


# -- elementary automata -----------------------------------------------------------


def empty_automaton(alphabet) -> Nfa:
    return Nfa(Alphabet.of(alphabet), 0, frozenset(), frozenset(), frozenset())


def epsilon_automaton(alphabet) -> Nfa:
    return Nfa(Alphabet.of(alphabet), 1, frozenset(), frozenset({0}), frozenset({0}))


def word_automaton(alphabet, word) -> Nfa:
    """The ``|w|+1``-state path automaton accepting exactly ``word``."""
    alphabet = Alphabet.of(alphabet)
    ids = alphabet.encode(word)
    trans = frozenset((i, x, i + 1) for i, x in enumerate(ids))
    return Nfa(alphabet, len(ids) + 1, trans, frozenset({0}), frozenset({len(ids)}))


def universal(alphabet) -> Dfa:
    alphabet = Alphabet.of(alphabet)
    return Dfa(alphabet, np.zeros((1, len(alphabet)), dtype=np.int64), 0, frozenset({0}))


# -- boolean operations -------------------------------------------------------------


def complement(d: Dfa) -> Dfa:
    """Swap final and non-final states of a complete DFA."""
    if not isinstance(d, Dfa):
        raise ContractError("complement needs a Dfa; determinize and complete first")
    if not d.is_complete:
        raise ContractError("complement needs a complete Dfa; call complete() first")
    return d.with_finals(frozenset(range(d.num_states)) - d.finals)


def complement_language(a, cap: int | None = None) -> Dfa:
    """Complement of any automaton: determinize and complete, then swap finals."""
    return complement(to_dfa(a, cap=cap))


def union_disjoint(a1, a2) -> Nfa:
    a1, a2 = as_nfa(a1), as_nfa(a2)
    alphabet = check_same_alphabet(a1, a2)
    n = a1.num_states
    trans = a1.transitions | {(p + n, x, q + n) for p, x, q in a2.transitions}
    names = None
    if a1.names is not None or a2.names is not None:
        names = tuple(f"1.{a1.state_name(q)}" for q in range(n)) + tuple(
            f"2.{a2.state_name(q)}" for q in range(a2.num_states)
        )
    return Nfa(
        alphabet,
        n + a2.num_states,
        trans,
        a1.initials | {q + n for q in a2.initials},
        a1.finals | {q + n for q in a2.finals},
        names,
    )


def _pair_finals(mode, n2, f1, f2, pairs):
    if mode == "intersect":
        return frozenset(i for i, (p, q) in enumerate(pairs) if p in f1 and q in f2)
    return frozenset(i for i, (p, q) in enumerate(pairs) if p in f1 or q in f2)


def _dfa_product(d1: Dfa, d2: Dfa, mode: str) -> Dfa:
    """Pairs reachable from the initial pair, explored one BFS layer at a time."""
    n1, n2 = d1.num_states, d2.num_states
    start = d1.initial * n2 + d2.initial
    dense = n1 * n2 <= 50_000_000
    index = np.full(n1 * n2, -1, dtype=np.int64) if dense else {}
    order = [start]
    index[start] = 0
    rows = []
    frontier = np.array([start], dtype=np.int64)
    while len(frontier):
        p, q = frontier // n2, frontier % n2
        left, right = d1.delta[p], d2.delta[q]
        codes = np.where((left < 0) | (right < 0), -1, left * n2 + right)
        rows.append(codes)
        cand = codes[codes >= 0]
        if dense:
            cand = cand[index[cand] < 0]
        else:
            cand = np.array([c for c in cand.tolist() if c not in index], dtype=np.int64)
        if not len(cand):
            break
        _, first = np.unique(cand, return_index=True)
        frontier = cand[np.sort(first)]
        base = len(order)
        if dense:
            index[frontier] = np.arange(base, base + len(frontier))
        else:
            for i, c in enumerate(frontier.tolist()):
                index[c] = base + i
        order.extend(frontier.tolist())
    codes = np.vstack(rows)
    if dense:
        delta = np.where(codes >= 0, index[np.maximum(codes, 0)], -1)
    else:
        delta = np.array([[index[c] if c >= 0 else -1 for c in row] for row in codes.tolist()], dtype=np.int64)
    delta = delta.reshape(len(order), len(d1.alphabet))
    pairs = [(c // n2, c % n2) for c in order]
    finals = _pair_finals(mode, n2, d1.finals, d2.finals, pairs)
    names = None
    if len(pairs) <= NAMED_PRODUCT_LIMIT and (d1.names is not None or d2.names is not None):
        names = tuple(f"({d1.state_name(p)},{d2.state_name(q)})" for p, q in pairs)
    return Dfa(d1.alphabet, delta, 0, finals, names)


def product(a1, a2, mode: str = "intersect"):
    """Synchronous product, restricted to pairs reachable from ``I × I'``.

    ``mode="intersect"`` uses ``F × F'``; ``mode="union"`` uses
    ``(F × Q') ∪ (Q × F')`` and needs both inputs complete.  Two DFAs give
    a DFA.
    """
    if mode not in ("intersect", "union"):
        raise InputError(f"unknown product mode {mode!r} (intersect|union)")
    check_same_alphabet(a1, a2)
    if mode == "union":
        for a in (a1, a2):
            if not a.is_complete:
                raise ContractError("union product needs complete automata; call complete() first")
    if isinstance(a1, Dfa) and isinstance(a2, Dfa):
        return _dfa_product(a1, a2, mode)
    a1, a2 = remove_epsilon(as_nfa(a1)), remove_epsilon(as_nfa(a2))
    k = len(a1.alphabet)
    start = [(p, q) for p in sorted(a1.initials) for q in sorted(a2.initials)]
    ids = {pq: i for i, pq in enumerate(start)}
    pairs = list(start)
    trans = set()
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        for x in range(k):
            for r in a1.out[p].get(x, ()):
                for s in a2.out[q].get(x, ()):
                    j = ids.get((r, s))
                    if j is None:
                        j = ids[(r, s)] = len(pairs)
                        pairs.append((r, s))
                    trans.add((i, x, j))
        i += 1
    names = None
    if len(pairs) <= NAMED_PRODUCT_LIMIT:
        names = tuple(f"({a1.state_name(p)},{a2.state_name(q)})" for p, q in pairs)
    finals = _pair_finals(mode, a2.num_states, a1.finals, a2.finals, pairs)
    return Nfa(a1.alphabet, len(pairs), frozenset(trans), frozenset(range(len(start))), finals, names)


def intersection(a1, a2):
    return product(a1, a2, "intersect")


# -- rational operations -----------------------------------------------------------


def concat(a1, a2, keep_epsilon: bool = False) -> Nfa:
    """``(Q ∪ Q', T ∪ T' ∪ (F × {ε} × I'), I, F')`` followed by ε-removal."""
    a1, a2 = as_nfa(a1), as_nfa(a2)
    alphabet = check_same_alphabet(a1, a2)
    n = a1.num_states
    trans = set(a1.transitions)
    trans |= {(p + n, x, q + n) for p, x, q in a2.transitions}
    trans |= {(f, EPS, i + n) for f in a1.finals for i in a2.initials}
    out = Nfa(alphabet, n + a2.num_states, frozenset(trans), a1.initials, frozenset(f + n for f in a2.finals))
    return out if keep_epsilon else remove_epsilon(out)


def star(a, keep_epsilon: bool = False) -> Nfa:
    """``(Q ∪ {j}, T ∪ (F × {ε} × I), I ∪ {j}, F ∪ {j})`` followed by ε-removal."""
    a = as_nfa(a)
    j = a.num_states
    trans = a.transitions | {(f, EPS, i) for f in a.finals for i in a.initials}
    names = a.names + ("j",) if a.names is not None else None
    out = Nfa(a.alphabet, j + 1, trans, a.initials | {j}, a.finals | {j}, names)
    return out if keep_epsilon else remove_epsilon(out)


def morphic_image(a, phi: Morphism) -> Nfa:
    """Replace each ``x``-edge by a fresh path labeled ``φ(x)`` (an ε-edge if empty)."""
    a = as_nfa(a)
    if a.alphabet.symbols != phi.source.symbols:
        raise ContractError("morphism source alphabet differs from the automaton's alphabet")
    target = phi.target
    images = [target.encode(phi.images[s]) for s in a.alphabet]
    n = a.num_states
    trans = set()
    for p, x, q in a.transitions:
        if x == EPS:
            trans.add((p, EPS, q))
            continue
        img = images[x]
        if not img:
            trans.add((p, EPS, q))
            continue
        prev = p
        for b in img[:-1]:
            trans.add((prev, b, n))
            prev = n
            n += 1
        trans.add((prev, img[-1], q))
    return remove_epsilon(Nfa(target, n, frozenset(trans), a.initials, a.finals))


def letter_image_dfa(d: Dfa, target: Alphabet, letter_map, cap: int | None = None) -> Dfa:
    """Determinized image of ``L(d)`` under a letter-to-letter morphism.

    ``letter_map[x]`` is the target letter index of source letter ``x``.
    Same language as ``to_dfa(morphic_image(d, φ))`` but computed on bitmask
    tables, which matters for the wide alphabets of formula compilation.
    """
    from .config import DEFAULT_CAPS

    letter_map = np.asarray(letter_map, dtype=np.int64)
    n, k = d.num_states, len(target)
    if n > 63 or not d.is_complete:
        images = {s: (target.symbols[int(letter_map[x])],) for x, s in enumerate(d.alphabet.symbols)}
        return to_dfa(morphic_image(d, Morphism(d.alphabet, target, images)), cap=cap)
    cap = DEFAULT_CAPS.determinize_states if cap is None else cap
    bits = np.left_shift(np.uint64(1), d.delta.astype(np.uint64))
    order = np.argsort(letter_map, kind="stable")
    present, starts = np.unique(letter_map[order], return_index=True)
    succ = np.zeros((n, k), dtype=np.uint64)
    succ[:, present] = np.bitwise_or.reduceat(bits[:, order], starts, axis=1)
    start = 1 << d.initial
    ids = {start: 0}
    subsets = [start]
    rows = []
    i = 0
    while i < len(subsets):
        s = subsets[i]
        i += 1
        members = [q for q in range(n) if s >> q & 1]
        row = np.bitwise_or.reduce(succ[members], axis=0) if members else np.zeros(k, dtype=np.uint64)
        values, inverse = np.unique(row, return_inverse=True)
        targets = []
        for v in values.tolist():
            j = ids.get(v)
            if j is None:
                j = ids[v] = len(subsets)
                if j >= cap:
                    raise ResourceError(f"determinization exceeded {cap} states", partial=j)
                subsets.append(v)
            targets.append(j)
        rows.append(np.asarray(targets, dtype=np.int64)[inverse.reshape(-1)])
    fmask = sum(1 << f for f in d.finals)
    finals = frozenset(j for j, s in enumerate(subsets) if s & fmask)
    return Dfa(target, np.vstack(rows), 0, finals)


def _read(a: Nfa, p: int, ids) -> frozenset:
    current = {p}
    for x in ids:
        current = {r for q in current for r in a.out[q].get(x, ())}
        if not current:
            break
    return frozenset(current)


def inverse_morphic_image(a, phi: Morphism) -> Nfa:
    """``T' = {(p, x, q) : p -φ(x)-> q is a path of a}`` over the source alphabet."""
    a = remove_epsilon(as_nfa(a))
    for b in phi.target:
        if b not in a.alphabet:
            raise ContractError(f"morphism image symbol {b!r} not in the automaton's alphabet")
    images = [a.alphabet.encode(phi.images[s]) for s in phi.source]
    trans = frozenset(
        (p, x, q) for p in range(a.num_states) for x, img in enumerate(images) for q in _read(a, p, img)
    )
    return Nfa(phi.source, a.num_states, trans, a.initials, a.finals, a.names)


def _product_reach(a: Nfa, k: Nfa, start):
    """Pairs ``(q, s)`` reachable from ``start`` in the synchronous product of ``a`` and ``k``."""
    seen = set(start)
    queue = deque(start)
    letters = range(len(a.alphabet))
    while queue:
        q, s = queue.popleft()
        for x in letters:
            for r in a.out[q].get(x, ()):
                for t in k.out[s].get(x, ()):
                    if (r, t) not in seen:
                        seen.add((r, t))
                        queue.append((r, t))
    return seen


def quotient(a, k, side: str = "left") -> Nfa:
    """``K⁻¹L`` (left) or ``LK⁻¹`` (right) by changing initial or final states."""
    a, k = remove_epsilon(as_nfa(a)), remove_epsilon(as_nfa(k))
    check_same_alphabet(a, k)
    if side == "left":
        reached = _product_reach(a, k, [(i, j) for i in a.initials for j in k.initials])
        initials = frozenset(q for q, s in reached if s in k.finals)
        return Nfa(a.alphabet, a.num_states, a.transitions, initials, a.finals, a.names)
    if side == "right":
        ra, rk = reverse(a), reverse(k)
        reached = _product_reach(ra, rk, [(f, g) for f in a.finals for g in k.finals])
        finals = frozenset(q for q, s in reached if s in k.initials)
        return Nfa(a.alphabet, a.num_states, a.transitions, a.initials, finals, a.names)
    raise InputError(f"unknown quotient side {side!r} (left|right)")


def reverse(a) -> Nfa:
    """Mirror: reverse every transition and swap ``I`` and ``F``."""
    a = as_nfa(a)
    trans = frozenset((q, x, p) for p, x, q in a.transitions)
    return Nfa(a.alphabet, a.num_states, trans, a.finals, a.initials, a.names)


def subwords(a) -> Nfa:
    """Add an ε-copy of every transition, so letters may be skipped."""
    a = as_nfa(a)
    trans = a.transitions | {(p, EPS, q) for p, _, q in a.transitions}
    return remove_epsilon(Nfa(a.alphabet, a.num_states, trans, a.initials, a.finals, a.names))


CLOSURE_KINDS = ("prefixes", "suffixes", "factors", "mirror", "subwords")


def closure_unary(a, kind: str) -> Nfa:
    a = as_nfa(a)
    if kind == "prefixes":
        return quotient(a, universal(a.alphabet), "right")
    if kind == "suffixes":
        return quotient(a, universal(a.alphabet), "left")
    if kind == "factors":
        return closure_unary(closure_unary(a, "prefixes"), "suffixes")
    if kind == "mirror":
        return reverse(a)
    if kind == "subwords":
        return subwords(a)
    raise InputError(f"unknown closure kind {kind!r} ({'|'.join(CLOSURE_KINDS)})")


def shuffle(a1, a2) -> Nfa:
    """Pair automaton where each letter advances exactly one component."""
    a1, a2 = remove_epsilon(as_nfa(a1)), remove_epsilon(as_nfa(a2))
    alphabet = check_same_alphabet(a1, a2)
    start = [(p, q) for p in sorted(a1.initials) for q in sorted(a2.initials)]
    ids = {pq: i for i, pq in enumerate(start)}
    pairs = list(start)
    trans = set()
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        moves = [((r, q), x) for x, rs in a1.out[p].items() for r in rs]
        moves += [((p, s), x) for x, ss in a2.out[q].items() for s in ss]
        for pair, x in moves:
            j = ids.get(pair)
            if j is None:
                j = ids[pair] = len(pairs)
                pairs.append(pair)
            trans.add((i, x, j))
        i += 1
    finals = frozenset(i for i, (p, q) in enumerate(pairs) if p in a1.finals and q in a2.finals)
    return Nfa(alphabet, len(pairs), frozenset(trans), frozenset(range(len(start))), finals)


# -- decisions -----------------------------------------------------------------------


@dataclass(frozen=True)
class Decision:
    """Outcome of an inclusion or equivalence test.

    ``counterexample`` is a shortest word separating the two languages;
    ``side`` says which language contains it (``"left"`` or ``"right"``).
    """

    holds: bool
    counterexample: Word | None = None
    side: str | None = None

    def __bool__(self):
        return self.holds


def decide_inclusion(a1, a2, cap: int | None = None) -> Decision:
    """``L(a1) ⊆ L(a2)`` via emptiness of ``L(a1) ∩ complement(L(a2))``."""
    check_same_alphabet(a1, a2)
    diff = product(as_nfa(a1), as_nfa(complement_language(a2, cap=cap)), "intersect")
    result = is_empty(diff)
    if result.empty:
        return Decision(True)
    return Decision(False, result.word, "left")


def decide_equivalence(a1, a2, cap: int | None = None) -> Decision:
    """Both inclusions; the shorter counterexample wins when both fail."""
    left = decide_inclusion(a1, a2, cap=cap)
    right = decide_inclusion(a2, a1, cap=cap)
    if left and right:
        return Decision(True)
    candidates = []
    if not left:
        candidates.append((len(left.counterexample), 0, left.counterexample, "left"))
    if not right:
        candidates.append((len(right.counterexample), 1, right.counterexample, "right"))
    _, _, word, side = min(candidates)
    return Decision(False, word, side)


def trimmed(a) -> Nfa:
    """Shorthand for ``trim(a).nfa``."""
    return trim(a).nfa


__all__ = [
    "Morphism",
    "Decision",
    "complement",
    "complement_language",
    "union_disjoint",
    "product",
    "intersection",
    "concat",
    "star",
    "morphic_image",
    "inverse_morphic_image",
    "quotient",
    "reverse",
    "subwords",
    "closure_unary",
    "shuffle",
    "decide_inclusion",
    "decide_equivalence",
    "empty_automaton",
    "epsilon_automaton",
    "word_automaton",
    "universal",
    "restrict",
]
