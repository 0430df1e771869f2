"""First-order definability, star-free expressions and their FO sentences.

A rational language is first-order definable exactly when its syntactic
monoid is aperiodic, exactly when it is star-free.  This module decides the
first condition and builds the witnesses for the other two: a star-free
expression extracted from an automaton with an aperiodic transition monoid,
and an FO(<) sentence translated from a star-free expression.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import ops
from .automata import Alphabet, Dfa, canonical_form, complete
from .config import DEFAULT_CAPS
from .errors import ContractError, ResourceError
from .logic import (
    FALSE,
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
    all_variables,
    fresh_name,
    implies,
)
from .minimize import minimal_dfa
from .monoid import FiniteMonoid, is_aperiodic, syntactic_monoid, transition_monoid
from .regex import (
    EMPTY,
    EPSILON,
    Complement,
    Concat,
    Empty,
    Epsilon,
    Intersect,
    Letter,
    Morph,
    Regex,
    Star,
    Union,
    compile_regex,
    nodes,
    nullable,
    regex_size,
    simplify,
)

FULL = Complement(EMPTY)  # A*, whatever the alphabet


# -- deciding ----------------------------------------------------------------------


@dataclass(frozen=True)
class FoDefinability:
    definable: bool
    monoid_size: int
    witness: str | None = None  # element generating a nontrivial group, by representative word
    cycle: tuple = ()  # the group it generates
    monoid: FiniteMonoid | None = field(default=None, repr=False, compare=False)

    def __bool__(self):
        return self.definable


def is_fo_definable(lang, alphabet=None, cap: int | None = None) -> FoDefinability:
    """First-order definability through aperiodicity of the syntactic monoid."""
    syn = syntactic_monoid(lang, alphabet, cap=cap)
    m = syn.monoid
    ap = is_aperiodic(m)
    if ap.aperiodic:
        return FoDefinability(True, m.size, monoid=m)
    return FoDefinability(False, m.size, m.name(ap.element), tuple(m.name(c) for c in ap.cycle), m)


# -- derivation trace --------------------------------------------------------------


@dataclass
class DerivationNode:
    """One recursion step: an automaton given by its transition table."""

    num_states: int
    alphabet: tuple
    case: str  # single-state | unary | permutation | split
    letter: str | None = None  # the non-surjective letter (split case)
    image: tuple = ()  # states hit by that letter
    c_letters: tuple = ()  # (name, map of the B-word on states, letter)
    expansion_log: list = field(default_factory=list)
    children: list = field(default_factory=list)

    @property
    def measure(self) -> tuple:
        return (self.num_states, len(self.alphabet))

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        head = f"{pad}{self.case}: |Q|={self.num_states} A={{{','.join(self.alphabet)}}}"
        if self.case == "split":
            head += f" letter={self.letter} image={{{','.join(map(str, self.image))}}}"
        lines = [head]
        for name, f, a in self.c_letters:
            lines.append(f"{pad}  {name} = ({'.'.join(map(str, f))}, {a})")
        lines.extend(f"{pad}  {entry}" for entry in self.expansion_log)
        for role, child in zip(("B", "C"), self.children):
            lines.append(f"{pad}  [{role}]")
            lines.append(child.render(indent + 2))
        return "\n".join(lines)


@dataclass
class StarFreeDerivation:
    root: DerivationNode | None = None
    node_count: int = 0  # distinct expression nodes built so far

    def render(self) -> str:
        return self.root.render() if self.root is not None else "(empty derivation)"


@dataclass(frozen=True)
class StarFreeExtraction:
    expression: Regex  # for L(d)
    pairs: dict  # (q, q') -> expression for {w : q·w = q'}
    derivation: StarFreeDerivation


# -- extraction --------------------------------------------------------------------


def _reachable(delta: np.ndarray) -> np.ndarray:
    """``reach[p, q]``: some word leads from p to q."""
    n = delta.shape[0]
    reach = np.eye(n, dtype=bool)
    reach[np.repeat(np.arange(n), delta.shape[1]), delta.ravel()] = True
    for k in range(n):
        reach |= reach[:, k : k + 1] & reach[k : k + 1, :]
    return reach


def _words_union(words) -> Regex:
    out = EMPTY
    for w in words:
        out = Union(out, w)
    return out


def _power(letter: str, k: int) -> Regex:
    if k == 0:
        return EPSILON
    out = Letter(letter)
    for _ in range(k - 1):
        out = Concat(out, Letter(letter))
    return out


def _embed(e: Regex, missing: str, memo: dict) -> Regex:
    """Read an expression over ``A∖{missing}`` as one over ``A``: complements stay inside the smaller free monoid."""
    if e in memo:
        return memo[e]
    small_star = Complement(Concat(FULL, Concat(Letter(missing), FULL)))
    for node in nodes(e):
        if node in memo:
            continue
        if isinstance(node, (Empty, Epsilon, Letter)):
            out = node
        elif isinstance(node, Complement):
            out = Intersect(Complement(memo[node.inner]), small_star)
        elif isinstance(node, (Union, Concat, Intersect)):
            out = type(node)(memo[node.left], memo[node.right])
        else:
            raise ContractError(f"unexpected node in a star-free expression: {node!r}")
        memo[node] = out
    return memo[e]


def _expand(e: Regex, letter_images: dict, a: str, memo: dict) -> Regex:
    """Translate an expression over the C-letters to one over A.

    ``Ψ'(R) = {w ∈ ε ∪ A*a : w_C ∈ R}``; keeping ε makes the map commute
    with concatenation, and ``Ψ(R) = Ψ'(R) ∩ A*a``.
    """
    guard = Union(EPSILON, Concat(FULL, Letter(a)))
    for node in nodes(e):
        if node in memo:
            continue
        if isinstance(node, (Empty, Epsilon)):
            out = node
        elif isinstance(node, Letter):
            out = letter_images[node.symbol]
        elif isinstance(node, Complement):
            out = Intersect(Complement(memo[node.inner]), guard)
        elif isinstance(node, (Union, Concat, Intersect)):
            out = type(node)(memo[node.left], memo[node.right])
        else:
            raise ContractError(f"unexpected node in a star-free expression: {node!r}")
        memo[node] = out
    return memo[e]




class _Extractor:
    def __init__(self, cap: int):
        self.cap = cap
        self.memo = {}
        self.languages = {}  # (alphabet, minimal DFA shape) -> smallest expression seen
        self.dfas = {}  # alphabet -> node -> minimal DFA
        self.reduced = {}  # alphabet -> node -> smallest equivalent
        self.seen = set()
        self.derivation = StarFreeDerivation()

    def language(self, e: Regex, symbols: tuple) -> Dfa:
        """Minimal complete DFA of ``e`` over ``symbols``, memoized per node."""
        alphabet = Alphabet(symbols)
        memo = self.dfas.setdefault(symbols, {})
        for node in nodes(e):
            if node in memo:
                continue
            if isinstance(node, (Empty, Epsilon, Letter)):
                out = minimal_dfa(compile_regex(node, alphabet))
            elif isinstance(node, Complement):
                out = ops.complement(memo[node.inner])
            elif isinstance(node, Union):
                out = minimal_dfa(ops.product(memo[node.left], memo[node.right], "union"))
            elif isinstance(node, Intersect):
                out = minimal_dfa(ops.product(memo[node.left], memo[node.right], "intersect"))
            elif isinstance(node, Concat):
                out = minimal_dfa(ops.concat(memo[node.left], memo[node.right]))
            else:
                raise ContractError(f"unexpected node in a star-free expression: {node!r}")
            memo[node] = out
        return memo[e]

    def canon(self, e: Regex, symbols: tuple) -> Regex:
        """Replace every subexpression by the smallest known one with the same language over ``symbols``."""
        out = self.reduced.setdefault(symbols, {})
        for node in nodes(e):
            if node in out:
                continue
            kids = tuple(out[c] for c in node.children())
            rebuilt = type(node)(*kids) if kids != node.children() else node
            if rebuilt not in out:
                out[rebuilt] = self.smallest(rebuilt, symbols)
            out[node] = out[rebuilt]
        return out[e]

    def smallest(self, e: Regex, symbols: tuple) -> Regex:
        rows, finals, _ = canonical_form(self.language(e, symbols))
        key = (symbols, rows, finals)
        best = self.languages.get(key)
        if best is None:
            if not any(finals):
                best = EMPTY
            elif len(rows) == 1:
                best = FULL
            elif len(rows) == 2 and finals == (True, False) and all(r == 1 for r in rows[0]):
                best = EPSILON
            else:
                best = e
        elif regex_size(e) < regex_size(best):
            best = e
        self.languages[key] = best
        return best

    def charge(self, exprs):
        for e in exprs:
            stack = [e]
            while stack:
                node = stack.pop()
                if node in self.seen:
                    continue
                self.seen.add(node)
                stack.extend(node.children())
        self.derivation.node_count = len(self.seen)
        if self.derivation.node_count > self.cap:
            raise ResourceError(
                f"star-free extraction exceeded {self.cap} expression nodes", partial=self.derivation
            )

    def extract(self, delta: np.ndarray, symbols: tuple):
        """Expressions for every ``L_{q,q'}`` of the table, over ``symbols``."""
        key = (delta.tobytes(), delta.shape, symbols)
        if key in self.memo:
            pairs, node = self.memo[key]
            return pairs, node
        n, k = delta.shape
        reach = _reachable(delta)
        node = DerivationNode(n, symbols, "split")
        if n == 1:
            node.case = "single-state"
            pairs = {(0, 0): FULL}
        elif k == 1:
            node.case = "unary"
            pairs = self.unary(delta[:, 0], symbols[0])
        elif all(len(np.unique(delta[:, x])) == n for x in range(k)):
            node.case = "permutation"
            if not (delta == np.arange(n)[:, None]).all():
                raise ContractError("a letter permutes states non-trivially: the transition monoid is not aperiodic")
            pairs = {(p, q): FULL if p == q else EMPTY for p in range(n) for q in range(n)}
        else:
            pairs = self.split(delta, symbols, node, reach)
        pairs = {pq: (self.canon(e, symbols) if reach[pq] else EMPTY) for pq, e in pairs.items()}
        self.charge(pairs.values())
        self.memo[key] = (pairs, node)
        return pairs, node

    def unary(self, f: np.ndarray, a: str) -> dict:
        n = len(f)
        r = n - 1  # an aperiodic map on n points is constant on its orbits after n-1 steps
        short = _words_union(_power(a, j) for j in range(r))
        pairs = {}
        for q in range(n):
            orbit = [q]
            for _ in range(r):
                orbit.append(int(f[orbit[-1]]))
            if int(f[orbit[r]]) != orbit[r]:
                raise ContractError("a letter acts with a cycle: the transition monoid is not aperiodic")
            for target in range(n):
                parts = [_power(a, j) for j in range(r) if orbit[j] == target]
                if orbit[r] == target:
                    parts.append(Complement(short))  # a^r a* as the complement of a finite set
                pairs[(q, target)] = _words_union(parts)
        return pairs

    def split(self, delta, symbols, node, reach) -> dict:
        n, k = delta.shape
        ai = next(x for x in range(k) if len(np.unique(delta[:, x])) < n)
        a = symbols[ai]
        fa = delta[:, ai]
        image = tuple(sorted(set(fa.tolist())))
        node.letter, node.image = a, image
        # B: the same states, every letter but a
        b_cols = [x for x in range(k) if x != ai]
        b_delta = delta[:, b_cols]
        b_symbols = tuple(symbols[x] for x in b_cols)
        lb_raw, b_node = self.extract(b_delta, b_symbols)
        embed_memo = {}
        lb = {pq: self.canon(_embed(e, a, embed_memo), symbols) for pq, e in lb_raw.items()}
        # C: one letter per transformation f_v of B, acting on the image of a by q ↦ (q f_v) f_a
        maps = _transformations(b_delta)
        local = {q: i for i, q in enumerate(image)}
        c_symbols = tuple(f"c{i}" for i in range(len(maps)))
        c_delta = np.array([[local[int(fa[f[q]])] for f in maps] for q in image], dtype=np.int64)
        node.c_letters = tuple((c, tuple(f), a) for c, f in zip(c_symbols, maps))
        lc, c_node = self.extract(c_delta, c_symbols)
        node.children = [b_node, c_node]
        images = {}
        for c, f in zip(c_symbols, maps):
            s = FULL
            for p in range(n):
                s = Intersect(s, lb[(p, int(f[p]))])
            images[c] = Concat(self.canon(s, symbols), Letter(a))
            node.expansion_log.append(f"{c} expands to S_{c} {a}, where S_{c} = words over B acting on states as {'.'.join(map(str, f))}")
        expand_memo = {}
        ends_in_a = Concat(FULL, Letter(a))
        t = {}
        for p2 in image:
            for q2 in image:
                expanded = _expand(lc[(local[p2], local[q2])], images, a, expand_memo)
                t[(p2, q2)] = self.canon(Intersect(expanded, ends_in_a), symbols)
        node.expansion_log.append(f"T[p,q] = expand(L_C[p,q]) & A*{a} for p, q in the image of {a}")
        c_reach = _reachable(c_delta)
        pairs = {}
        for q in range(n):
            for q1 in range(n):
                if not reach[q, q1]:
                    pairs[(q, q1)] = EMPTY
                    continue
                parts = [lb[(q, q1)]]
                for p in range(n):
                    p2 = int(fa[p])
                    head = Concat(lb[(q, p)], Letter(a))
                    parts.append(Concat(head, lb[(p2, q1)]))
                    for q2 in image:
                        if c_reach[local[p2], local[q2]]:
                            parts.append(Concat(Concat(head, t[(p2, q2)]), lb[(q2, q1)]))
                pairs[(q, q1)] = _words_union(parts)
        return pairs


def _transformations(delta: np.ndarray) -> list:
    """All maps ``f_v`` (as tuples) for words ``v`` over the table's letters, identity first, BFS order."""
    n, k = delta.shape
    start = tuple(range(n))
    seen = {start}
    out = [start]
    i = 0
    while i < len(out):
        f = out[i]
        i += 1
        for x in range(k):
            g = tuple(int(delta[q, x]) for q in f)
            if g not in seen:
                seen.add(g)
                out.append(g)
    return out


def extract_starfree(d: Dfa, validate: bool = True, cap: int | None = None) -> StarFreeExtraction:
    """Star-free expressions for every ``L_{q,q'}`` of a DFA with aperiodic transition monoid.

    The recursion picks the first letter that is not a permutation, splits
    words at its occurrences, and handles the stretches between them with
    an automaton over a derived alphabet whose letters are the maps induced
    by the other letters.  With ``validate`` every expression is compiled
    and checked equivalent to the corresponding automaton language.
    """
    if not isinstance(d, Dfa):
        raise ContractError("extract_starfree needs a Dfa")
    d = complete(d)
    ap = is_aperiodic(transition_monoid(d))
    if not ap.aperiodic:
        raise ContractError("the transition monoid is not aperiodic; the language is not star-free")
    cap = DEFAULT_CAPS.starfree_nodes if cap is None else cap
    ex = _Extractor(cap)
    pairs, root = ex.extract(np.asarray(d.delta), d.alphabet.symbols)
    ex.derivation.root = root
    expression = ex.canon(simplify(_words_union(pairs[(d.initial, f)] for f in sorted(d.finals))), d.alphabet.symbols)
    if validate:
        for (q, q1), e in pairs.items():
            target = Dfa(d.alphabet, d.delta, q, frozenset({q1}))
            if not ops.decide_equivalence(compile_regex(e, d.alphabet), target):
                raise ContractError(f"extracted expression for ({q},{q1}) is not equivalent; this is a bug")
    return StarFreeExtraction(expression, pairs, ex.derivation)


# -- star-free expressions to sentences ---------------------------------------------

RELATIVIZE_MODES = ("below", "at_or_below", "strictly_above")


def _bound(mode: str, y: str, x: str) -> Formula:
    if mode == "below":
        return Less(y, x)
    if mode == "at_or_below":
        return Or(Less(y, x), Eq(y, x))
    return Less(x, y)


def relativize(phi: Formula, x: str, mode: str) -> Formula:
    """Bound every first-order quantifier of ``phi`` to positions below / at or below / above ``x``.

    For a sentence ``phi``, ``u, x↦i`` satisfies the result iff the part of
    ``u`` before ``i`` (up to ``i``, after ``i``) satisfies ``phi``.
    """
    if mode not in RELATIVIZE_MODES:
        raise ContractError(f"unknown mode {mode!r} ({'|'.join(RELATIVIZE_MODES)})")
    if x in all_variables(phi):
        raise ContractError(f"variable {x!r} already occurs in the formula")
    memo = {}

    def go(f):
        if f in memo:
            return memo[f]
        if isinstance(f, (ExistsSO, ForallSO)):
            raise ContractError("relativize works on first-order formulas")
        if isinstance(f, ExistsFO):
            out = ExistsFO(f.var, And(_bound(mode, f.var, x), go(f.body)))
        elif isinstance(f, ForallFO):
            out = ForallFO(f.var, implies(_bound(mode, f.var, x), go(f.body)))
        elif isinstance(f, Not):
            out = Not(go(f.inner))
        elif isinstance(f, (And, Or)):
            out = type(f)(go(f.left), go(f.right))
        else:
            out = f
        memo[f] = out
        return out

    return go(phi)


def _check_star_free(e: Regex) -> None:
    for node in nodes(e):
        if isinstance(node, (Star, Morph)):
            raise ContractError("starfree_to_fo needs a star-free expression (no star, no morphic image)")


def _letter_sentence(symbol: str) -> Formula:
    return ExistsFO("x", And(LetterAt(symbol, "x"), ForallFO("y", Eq("y", "x"))))


def _fo_fresh(e: Regex) -> Formula:
    """Direct translation: every concatenation gets its own variable and relativizes both sides."""
    memo = {}
    for node in nodes(e):
        if isinstance(node, Empty):
            out = FALSE
        elif isinstance(node, Epsilon):
            out = Not(ExistsFO("x", TRUE))
        elif isinstance(node, Letter):
            out = _letter_sentence(node.symbol)
        elif isinstance(node, Union):
            out = Or(memo[node.left], memo[node.right])
        elif isinstance(node, Intersect):
            out = And(memo[node.left], memo[node.right])
        elif isinstance(node, Complement):
            out = Not(memo[node.inner])
        else:
            phi, psi = memo[node.left], memo[node.right]
            x = fresh_name(all_variables(phi) | all_variables(psi), "x")
            out = ExistsFO(x, And(relativize(phi, x, "at_or_below"), relativize(psi, x, "strictly_above")))
            if nullable(node.left):
                out = Or(out, psi)
        memo[node] = out
    return memo[e]


_NAMES = ("x", "y", "z")


def _fo_interval(e: Regex) -> Formula:
    """Translation over factors ``(lo, hi]`` with three reusable variable names.

    ``tr(e, lo, hi)`` holds when the positions after ``lo`` and up to ``hi``
    spell a word of ``e``; a missing bound means the start or end of the
    word.  Only the two bounds are ever free, so a third name suffices for
    each split point and the quantifier depth does not multiply tracks.
    """
    memo = {}

    def spare(*taken):
        return next(v for v in _NAMES if v not in taken)

    def inside(v, lo, hi):
        parts = []
        if lo is not None:
            parts.append(Less(lo, v))
        if hi is not None:
            parts.append(Or(Less(v, hi), Eq(v, hi)))
        if not parts:
            return TRUE
        return parts[0] if len(parts) == 1 else And(parts[0], parts[1])

    def bounded_exists(v, lo, hi, body):
        guard = inside(v, lo, hi)
        return ExistsFO(v, body if guard is TRUE else And(guard, body))

    def tr(node, lo, hi):
        key = (node, lo, hi)
        if key in memo:
            return memo[key]
        if isinstance(node, Empty):
            out = FALSE
        elif isinstance(node, Epsilon):
            out = Not(bounded_exists(spare(lo, hi), lo, hi, TRUE))
        elif isinstance(node, Letter):
            at = LetterAt(node.symbol, hi) if hi is not None else None
            if hi is None:
                x = spare(lo)
                y = spare(lo, x)
                only = ForallFO(y, Eq(y, x)) if lo is None else ForallFO(y, implies(Less(lo, y), Eq(y, x)))
                out = bounded_exists(x, lo, None, And(LetterAt(node.symbol, x), only))
            elif lo is None:
                y = spare(hi)
                out = And(at, Not(ExistsFO(y, Less(y, hi))))
            else:
                y = spare(lo, hi)
                between = ExistsFO(y, And(Less(lo, y), Less(y, hi)))
                out = And(And(Less(lo, hi), at), Not(between))
        elif isinstance(node, Union):
            out = Or(tr(node.left, lo, hi), tr(node.right, lo, hi))
        elif isinstance(node, Intersect):
            out = And(tr(node.left, lo, hi), tr(node.right, lo, hi))
        elif isinstance(node, Complement):
            out = Not(tr(node.inner, lo, hi))
        else:
            z = spare(lo, hi)
            out = bounded_exists(z, lo, hi, And(tr(node.left, lo, z), tr(node.right, z, hi)))
            if nullable(node.left):
                out = Or(out, tr(node.right, lo, hi))
        memo[key] = out
        return out

    return tr(e, None, None)


def starfree_to_fo(e: Regex, reuse_variables: bool = True) -> Formula:
    """An FO(<) sentence defining the language of a star-free expression.

    Concatenation ``L1 L2`` becomes ``∃x(φ≤x ∧ ψ>x)``, with ``∨ ψ`` added
    when ``ε ∈ L1``.  By default the relativization is done against both
    ends of the current factor so that three variable names suffice; with
    ``reuse_variables=False`` each concatenation relativizes its operand
    sentences with a fresh variable, which is literal but compiles slowly
    once concatenations nest.
    """
    _check_star_free(e)
    return _fo_interval(e) if reuse_variables else _fo_fresh(e)
