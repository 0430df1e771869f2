"""Rational and extended rational expressions.

The AST is made of small frozen dataclasses.  Nodes hash once and cache the
value, so the DAG-shaped trees produced by state elimination stay cheap to
put in dictionaries.  The dialect (rational, extended, star-free) is a
property checked by :func:`check_dialect`, not something stored on nodes.

Concrete syntax, loosest to tightest binding::

    expr  := inter ('|' inter)*
    inter := cat ('&' cat)*
    cat   := rep rep*
    rep   := atom '*'*
    atom  := '0' | 'eps' | SYMBOL | '~' atom | '(' expr ')'
           | 'map{' SYMBOL '->' word (',' SYMBOL '->' word)* '}(' expr ')'

A run of identifier characters is split into one symbol per character, or
greedily against the alphabet when one is supplied.  ``0`` always means the
empty set; a symbol literally named ``0`` (or any multi-character symbol)
is written in quotes: ``'0'``, ``'coin'``.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from . import ops
from .automata import EPS_TOKEN, Alphabet, Nfa, as_nfa, remove_epsilon, trim, widen
from .errors import InputError

DIALECTS = ("rational", "extended", "star-free")


class Regex:
    """Base class of expression nodes."""

    __slots__ = ()

    # Structurally equal nodes built through the constructor are one object,
    # so equality on shared DAGs stops at the first level.
    _interned = weakref.WeakValueDictionary()

    def __new__(cls, *args, **kwargs):
        if kwargs or not args:
            return object.__new__(cls)
        key = (cls,) + tuple(id(a) if isinstance(a, Regex) else a for a in args)
        node = Regex._interned.get(key)
        if node is None:
            node = object.__new__(cls)
            Regex._interned[key] = node
        return node

    @cached_property
    def _hash(self):
        return hash((type(self).__name__,) + tuple(self._fields()))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self._fields() == other._fields()

    def _fields(self):
        return ()

    def children(self) -> tuple:
        return ()

    def __str__(self):
        return to_text(self)

    # operator sugar for building expressions in code
    def __or__(self, other):
        return Union(self, other)

    def __and__(self, other):
        return Intersect(self, other)

    def __add__(self, other):
        return Concat(self, other)

    def __invert__(self):
        return Complement(self)


@dataclass(frozen=True, eq=False)
class Empty(Regex):
    __hash__ = Regex.__hash__


@dataclass(frozen=True, eq=False)
class Epsilon(Regex):
    __hash__ = Regex.__hash__


@dataclass(frozen=True, eq=False)
class Letter(Regex):
    symbol: str
    __hash__ = Regex.__hash__

    def _fields(self):
        return (self.symbol,)


@dataclass(frozen=True, eq=False)
class Union(Regex):
    left: Regex
    right: Regex
    __hash__ = Regex.__hash__

    def _fields(self):
        return (self.left, self.right)

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=False)
class Concat(Regex):
    left: Regex
    right: Regex
    __hash__ = Regex.__hash__

    def _fields(self):
        return (self.left, self.right)

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=False)
class Star(Regex):
    inner: Regex
    __hash__ = Regex.__hash__

    def _fields(self):
        return (self.inner,)

    def children(self):
        return (self.inner,)


@dataclass(frozen=True, eq=False)
class Intersect(Regex):
    left: Regex
    right: Regex
    __hash__ = Regex.__hash__

    def _fields(self):
        return (self.left, self.right)

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=False)
class Complement(Regex):
    inner: Regex
    __hash__ = Regex.__hash__

    def _fields(self):
        return (self.inner,)

    def children(self):
        return (self.inner,)


@dataclass(frozen=True, eq=False)
class Morph(Regex):
    phi: ops.Morphism
    inner: Regex
    __hash__ = Regex.__hash__

    def _fields(self):
        return (self.phi, self.inner)

    def children(self):
        return (self.inner,)


EMPTY = Empty()
EPSILON = Epsilon()


def nodes(e: Regex) -> Iterator[Regex]:
    """Distinct nodes of the expression DAG, children before parents."""
    seen = set()
    stack = [(e, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            yield node
            continue
        if node in seen:
            continue
        seen.add(node)
        stack.append((node, True))
        stack.extend((c, False) for c in node.children())


def regex_size(e: Regex) -> int:
    """Number of nodes of the expression viewed as a tree."""
    size = {}
    for node in nodes(e):
        size[node] = 1 + sum(size[c] for c in node.children())
    return size[e]


def letters(e: Regex) -> list:
    """Symbols used by the expression, in order of first appearance (left to right)."""
    out = []
    seen = set()

    def visit(node):
        stack = [node]
        while stack:
            n = stack.pop()
            if isinstance(n, Letter):
                if n.symbol not in seen:
                    seen.add(n.symbol)
                    out.append(n.symbol)
            elif isinstance(n, Morph):
                for s in n.phi.target:
                    if s not in seen:
                        seen.add(s)
                        out.append(s)
            else:
                stack.extend(reversed(n.children()))

    visit(e)
    return out


def check_dialect(e: Regex, dialect: str) -> None:
    """Raise :class:`InputError` if ``e`` uses an operator the dialect forbids."""
    if dialect not in DIALECTS:
        raise InputError(f"unknown dialect {dialect!r} ({'|'.join(DIALECTS)})")
    if dialect == "extended":
        return
    banned = {
        "rational": {Intersect: "intersection '&'", Complement: "complement '~'", Morph: "morphic image 'map'"},
        "star-free": {Star: "star '*'", Morph: "morphic image 'map'"},
    }[dialect]
    for node in nodes(e):
        name = banned.get(type(node))
        if name:
            raise InputError(f"{name} is not allowed in the {dialect} dialect")


# -- lexer and parser ------------------------------------------------------------

_PUNCT = "()|&*~{},"


def _is_ident(c: str) -> bool:
    return c.isalnum() or c in "_."


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind, self.value, self.line, self.col = kind, value, line, col

    def __repr__(self):
        return f"{self.kind}:{self.value!r}"


def _split_run(run: str, alphabet: Alphabet | None, line: int, col: int):
    """Split an identifier run into SYMBOL / EMPTY tokens."""
    if run == "0":
        return [_Token("empty", "0", line, col)]
    if run == EPS_TOKEN:
        return [_Token("eps", run, line, col)]
    out = []
    pos = 0
    symbols = []
    if alphabet is not None and not alphabet.single_chars:
        symbols = sorted((s for s in alphabet if s != "0" and all(_is_ident(c) for c in s)), key=len, reverse=True)
    while pos < len(run):
        for s in symbols:
            if run.startswith(s, pos):
                out.append(_Token("sym", s, line, col + pos))
                pos += len(s)
                break
        else:
            c = run[pos]
            out.append(_Token("empty" if c == "0" else "sym", c, line, col + pos))
            pos += 1
    return out


def _lex(text: str, alphabet: Alphabet | None):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text.startswith("->", i):
            tokens.append(_Token("->", "->", line, col))
            i += 2
            col += 2
            continue
        if c in _PUNCT:
            tokens.append(_Token(c, c, line, col))
            i += 1
            col += 1
            continue
        if c == "'":
            j = text.find("'", i + 1)
            if j < 0 or "\n" in text[i + 1 : j]:
                raise InputError("unterminated quoted symbol", line, col)
            sym = text[i + 1 : j]
            if not sym or any(ch.isspace() for ch in sym):
                raise InputError(f"invalid quoted symbol {sym!r}", line, col)
            tokens.append(_Token("sym", sym, line, col))
            col += j + 1 - i
            i = j + 1
            continue
        if _is_ident(c):
            j = i
            while j < n and _is_ident(text[j]):
                j += 1
            run = text[i:j]
            if run == "map" and j < n and text[j] == "{":
                tokens.append(_Token("map", run, line, col))
            else:
                tokens.extend(_split_run(run, alphabet, line, col))
            col += j - i
            i = j
            continue
        raise InputError(f"unexpected character {c!r}", line, col)
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text, alphabet):
        self.tokens = _lex(text, alphabet)
        self.pos = 0
        self.alphabet = alphabet

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok.kind != kind:
            what = "end of input" if tok.kind == "end" else repr(tok.value)
            raise InputError(f"expected {kind!r} but found {what}", tok.line, tok.col)
        self.pos += 1
        return tok

    def expr(self):
        left = self.inter()
        while self.peek().kind == "|":
            self.take()
            left = Union(left, self.inter())
        return left

    def inter(self):
        left = self.cat()
        while self.peek().kind == "&":
            self.take()
            left = Intersect(left, self.cat())
        return left

    _STARTS = ("empty", "eps", "sym", "~", "(", "map")

    def cat(self):
        left = self.rep()
        while self.peek().kind in self._STARTS:
            left = Concat(left, self.rep())
        return left

    def rep(self):
        node = self.atom()
        while self.peek().kind == "*":
            self.take()
            node = Star(node)
        return node

    def atom(self):
        tok = self.take()
        kind = tok.kind
        if kind == "empty":
            return EMPTY
        if kind == "eps":
            return EPSILON
        if kind == "sym":
            if self.alphabet is not None and tok.value not in self.alphabet:
                raise InputError(f"unknown symbol {tok.value!r}", tok.line, tok.col)
            return Letter(tok.value)
        if kind == "~":
            return Complement(self.atom())
        if kind == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "map":
            return self.morph()
        what = "end of input" if kind == "end" else repr(tok.value)
        raise InputError(f"unexpected {what}", tok.line, tok.col)

    def morph(self):
        self.take("{")
        pairs = []
        while True:
            src = self.take("sym").value
            self.take("->")
            image = []
            if self.peek().kind == "eps":
                self.take()
            else:
                image.append(self.take("sym").value)
                while self.peek().kind == "sym":
                    image.append(self.take().value)
            pairs.append((src, tuple(image)))
            if self.peek().kind == ",":
                self.take()
                continue
            self.take("}")
            break
        self.take("(")
        inner = self.expr()
        self.take(")")
        source = Alphabet(tuple(s for s, _ in pairs))
        target_syms = []
        for _, img in pairs:
            target_syms.extend(c for c in img if c not in target_syms)
        if self.alphabet is not None:
            target = self.alphabet
        else:
            target = Alphabet(tuple(target_syms) or source.symbols)
        images = {}
        for s, img in pairs:
            if s in images:
                raise InputError(f"symbol {s!r} mapped twice")
            images[s] = img
        return Morph(ops.Morphism(source, target, images), inner)


def parse_regex(text: str, dialect: str = "extended", alphabet=None) -> Regex:
    """Parse ``text``; with an alphabet, runs like ``tw`` split greedily into its symbols."""
    if alphabet is not None:
        alphabet = Alphabet.of(alphabet)
    parser = _Parser(text, alphabet)
    if parser.peek().kind == "end":
        raise InputError("empty expression", 1, 1)
    e = parser.expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise InputError(f"unexpected {tok.value!r}", tok.line, tok.col)
    check_dialect(e, dialect)
    return e


# -- printer -----------------------------------------------------------------------

_PREC = {Union: 0, Intersect: 1, Concat: 2}


def _show_symbol(s: str) -> str:
    if len(s) == 1 and _is_ident(s) and s != "0":
        return s
    return f"'{s}'"


def _run_at(text: str, from_end: bool) -> str:
    chars = reversed(text) if from_end else iter(text)
    run = []
    for c in chars:
        if not _is_ident(c):
            break
        run.append(c)
    return "".join(reversed(run)) if from_end else "".join(run)


def _juxtapose(left: str, right: str) -> str:
    tail, head = _run_at(left, True), _run_at(right, False)
    if tail and head and EPS_TOKEN in (tail, head, tail + head):
        return left + " " + right
    return left + right


def to_text(e: Regex) -> str:
    """Render ``e`` so that :func:`parse_regex` gives back the same tree."""
    memo = {}
    for node in nodes(e):
        memo[node] = _render(node, memo)
    return memo[e][0]


def _render(node, memo):
    """Return ``(text, precedence)``; precedence 3 is atomic/unary."""
    if isinstance(node, Empty):
        return "0", 3
    if isinstance(node, Epsilon):
        return EPS_TOKEN, 3
    if isinstance(node, Letter):
        return _show_symbol(node.symbol), 3
    if isinstance(node, (Union, Intersect, Concat)):
        prec = _PREC[type(node)]
        lt, lp = memo[node.left]
        rt, rp = memo[node.right]
        if lp < prec:
            lt = f"({lt})"
        if rp <= prec:
            rt = f"({rt})"
        if isinstance(node, Concat):
            return _juxtapose(lt, rt), prec
        return lt + ("|" if isinstance(node, Union) else "&") + rt, prec
    if isinstance(node, Star):
        t, p = memo[node.inner]
        if p < 3:
            t = f"({t})"
        return t + "*", 3
    if isinstance(node, Complement):
        t, p = memo[node.inner]
        if p < 3 or isinstance(node.inner, Star):
            t = f"({t})"
        return "~" + t, 3
    if isinstance(node, Morph):
        parts = []
        for s in node.phi.source:
            img = node.phi.images[s]
            parts.append(f"{_show_symbol(s)}->{''.join(_show_symbol(c) for c in img) if img else EPS_TOKEN}")
        return "map{" + ", ".join(parts) + "}(" + memo[node.inner][0] + ")", 3
    raise TypeError(f"not a regex node: {node!r}")


# -- compilation -------------------------------------------------------------------


def infer_alphabet(e: Regex) -> Alphabet:
    syms = letters(e)
    if not syms:
        return Alphabet(("a",))
    return Alphabet(tuple(sorted(syms)))


def compile_regex(e: Regex, alphabet=None, stats: dict | None = None, cap: int | None = None) -> Nfa:
    """Structural compilation through the closure constructions.

    ``stats``, when given, counts the constructions used (``"star"``,
    ``"complement"``, ...) so callers can check, for instance, that a
    star-free expression never goes through the star construction.
    """
    from .minimize import minimize

    alphabet = infer_alphabet(e) if alphabet is None else Alphabet.of(alphabet)
    memo = {}

    def bump(key):
        if stats is not None:
            stats[key] = stats.get(key, 0) + 1

    for node in nodes(e):
        if isinstance(node, Morph):
            inner = _compile_morph_inner(node, cap, stats)
            image = ops.morphic_image(inner, node.phi)
            bump("morph")
            memo[node] = trim(widen(image, alphabet)).nfa if image.alphabet.symbols != alphabet.symbols else trim(image).nfa
            continue
        if isinstance(node, Empty):
            out = ops.empty_automaton(alphabet)
        elif isinstance(node, Epsilon):
            out = ops.epsilon_automaton(alphabet)
        elif isinstance(node, Letter):
            if node.symbol not in alphabet:
                raise InputError(f"symbol {node.symbol!r} is not in the alphabet {' '.join(alphabet)}")
            out = ops.word_automaton(alphabet, (node.symbol,))
        elif isinstance(node, Union):
            bump("union")
            out = ops.union_disjoint(memo[node.left], memo[node.right])
        elif isinstance(node, Concat):
            bump("concat")
            out = ops.concat(memo[node.left], memo[node.right])
        elif isinstance(node, Star):
            bump("star")
            out = ops.star(memo[node.inner])
        elif isinstance(node, Intersect):
            bump("intersect")
            out = ops.product(memo[node.left], memo[node.right], "intersect")
        elif isinstance(node, Complement):
            bump("complement")
            out = minimize(ops.complement_language(memo[node.inner], cap=cap)).dfa.to_nfa()
        else:
            raise TypeError(f"not a regex node: {node!r}")
        memo[node] = trim(out).nfa
    return memo[e]


def _compile_morph_inner(node: Morph, cap, stats):
    return compile_regex(node.inner, node.phi.source, stats=stats, cap=cap)


# -- McNaughton-Yamada extraction ----------------------------------------------------


def _union(a, b):
    return Union(a, b)


def extract_regex(a) -> Regex:
    """Rational expression for ``L(a)`` by the ``L_{p,q}(P)`` recurrence.

    States are eliminated in increasing id order: ``L_{p,q}(P)`` removes
    ``r = max(P)`` first, and since every ``P`` that occurs is a prefix
    ``{0..k-1}``, the memo table is indexed by ``(p, q, k)``.  The base case
    contains ``ε`` exactly when ``p = q``.  No simplification is applied;
    run :func:`simplify` on the result.
    """
    a = remove_epsilon(as_nfa(a))
    n = a.num_states
    alphabet = a.alphabet
    # base table L_{p,q}(∅)
    cur = [[None] * n for _ in range(n)]
    for p in range(n):
        for q in range(n):
            terms = [Letter(alphabet.symbols[x]) for x in range(len(alphabet)) if q in a.out[p].get(x, ())]
            if p == q:
                terms.insert(0, EPSILON)
            node = EMPTY
            for t in terms:
                node = t if node is EMPTY else Union(node, t)
            cur[p][q] = node
    for r in range(n):
        loop = Star(cur[r][r])
        nxt = [[None] * n for _ in range(n)]
        for p in range(n):
            for q in range(n):
                nxt[p][q] = Union(cur[p][q], Concat(Concat(cur[p][r], loop), cur[r][q]))
        cur = nxt
    result = None
    for i in sorted(a.initials):
        for f in sorted(a.finals):
            result = cur[i][f] if result is None else Union(result, cur[i][f])
    return EMPTY if result is None else result


# -- simplification -------------------------------------------------------------------


def nullable(e: Regex, alphabet=None) -> bool:
    """Whether ``ε ∈ L(e)``, computed structurally (morphic images are compiled)."""
    memo = {}
    for node in nodes(e):
        if isinstance(node, (Empty, Letter)):
            v = False
        elif isinstance(node, (Epsilon, Star)):
            v = True
        elif isinstance(node, Union):
            v = memo[node.left] or memo[node.right]
        elif isinstance(node, (Concat, Intersect)):
            v = memo[node.left] and memo[node.right]
        elif isinstance(node, Complement):
            v = not memo[node.inner]
        else:
            erased = tuple(x for x in node.phi.source if not node.phi.images[x])
            inner = compile_regex(node.inner, node.phi.source)
            v = bool(erased) and not ops.is_empty(
                ops.product(inner, _only_letters(node.phi.source, erased), "intersect")
            ).empty
        memo[node] = v
    return memo[e]


def _only_letters(alphabet: Alphabet, allowed) -> Nfa:
    trans = frozenset((0, alphabet.id(s), 0) for s in allowed)
    return Nfa(alphabet, 1, trans, frozenset({0}), frozenset({0}))


def _flatten(node, cls, out):
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, cls):
            stack.append(n.right)
            stack.append(n.left)
        else:
            out.append(n)
    return out


def _left_fold(cls, items):
    node = items[0]
    for it in items[1:]:
        node = cls(node, it)
    return node


def simplify(e: Regex) -> Regex:
    """Language-preserving rewriting to a fixpoint.

    Rules: ``∅|e → e``, ``∅e → ∅``, ``εe → e``, ``∅* → ε``, ``ε* → ε``,
    ``(e*)* → e*``, ``e|e → e``; unions and intersections are flattened,
    deduplicated and sorted by printed form.  A few further safe rules:
    ``∅&e → ∅``, ``~~e → e``, ``(ε|e)* → e*``, ``ε|e → e`` when ``e`` is
    nullable by construction, and ``f|(e|f)* → (e|f)*``.
    """
    while True:
        out = _simplify_once(e)
        if out == e:
            return out
        e = out


def _simplify_once(e: Regex) -> Regex:
    memo = {}
    texts = {}
    null = {}

    def text(n):
        t = texts.get(n)
        if t is None:
            t = texts[n] = to_text(n)
        return t

    for node in nodes(e):
        if isinstance(node, (Empty, Epsilon, Letter)):
            memo[node] = node
        elif isinstance(node, Union):
            items = []
            for part in _flatten(node, Union, []):
                s = memo[part]
                items.extend(_flatten(s, Union, []))
            items = [x for x in items if not isinstance(x, Empty)]
            uniq = {}
            for x in items:
                uniq.setdefault(x, None)
            items = list(uniq)
            if EPSILON in items and any(_surely_nullable(x, null) for x in items if x != EPSILON):
                items = [x for x in items if x != EPSILON]
            starred = {p for x in items if isinstance(x, Star) for p in _flatten(x.inner, Union, [])}
            if starred:
                items = [x for x in items if x not in starred]
            if not items:
                memo[node] = EMPTY
            else:
                items.sort(key=text)
                memo[node] = _left_fold(Union, items)
        elif isinstance(node, Intersect):
            items = []
            for part in _flatten(node, Intersect, []):
                items.extend(_flatten(memo[part], Intersect, []))
            if any(isinstance(x, Empty) for x in items):
                memo[node] = EMPTY
                continue
            full = Complement(EMPTY)
            items = list(dict.fromkeys(x for x in items if x != full)) or [full]
            items.sort(key=text)
            memo[node] = _left_fold(Intersect, items)
        elif isinstance(node, Concat):
            items = []
            for part in _flatten(node, Concat, []):
                items.extend(_flatten(memo[part], Concat, []))
            if any(isinstance(x, Empty) for x in items):
                memo[node] = EMPTY
                continue
            items = _absorb_stars([x for x in items if not isinstance(x, Epsilon)])
            memo[node] = _left_fold(Concat, items) if items else EPSILON
        elif isinstance(node, Star):
            inner = memo[node.inner]
            if isinstance(inner, (Empty, Epsilon)):
                memo[node] = EPSILON
            elif isinstance(inner, Star):
                memo[node] = inner
            elif isinstance(inner, Union):
                parts = [x for x in _flatten(inner, Union, []) if not isinstance(x, Epsilon)]
                if not parts:
                    memo[node] = EPSILON
                else:
                    memo[node] = Star(_left_fold(Union, parts))
            else:
                memo[node] = Star(inner)
        elif isinstance(node, Complement):
            inner = memo[node.inner]
            memo[node] = inner.inner if isinstance(inner, Complement) else Complement(inner)
        elif isinstance(node, Morph):
            memo[node] = Morph(node.phi, memo[node.inner])
        else:
            raise TypeError(f"not a regex node: {node!r}")
    return memo[e]


def _absorb_stars(items: list) -> list:
    """``e*e* → e*`` and ``(ε|e)e* → e*`` (either side) on a flattened product."""

    def optional_of(x, body):
        if not isinstance(x, Union):
            return False
        parts = _flatten(x, Union, [])
        return len(parts) == 2 and EPSILON in parts and body in parts

    out = []
    for x in items:
        if out:
            prev = out[-1]
            if isinstance(prev, Star) and (x == prev or optional_of(x, prev.inner)):
                continue
            if isinstance(x, Star) and optional_of(prev, x.inner):
                out[-1] = x
                continue
        out.append(x)
    return out


def _surely_nullable(e: Regex, cache: dict) -> bool:
    """Structural ``ε ∈ L(e)``; expressions with morphic images count as not nullable."""
    for node in nodes(e):
        if node in cache:
            continue
        if isinstance(node, (Empty, Letter, Morph)):
            v = False
        elif isinstance(node, (Epsilon, Star)):
            v = True
        elif isinstance(node, Union):
            v = cache[node.left] or cache[node.right]
        elif isinstance(node, (Concat, Intersect)):
            v = cache[node.left] and cache[node.right]
        else:
            v = not cache[node.inner] and not any(isinstance(n, Morph) for n in nodes(node.inner))
        cache[node] = v
    return cache[e]


def is_star_free_syntax(e: Regex) -> bool:
    return not any(isinstance(n, (Star, Morph)) for n in nodes(e))


__all__ = [
    "Regex",
    "Empty",
    "Epsilon",
    "Letter",
    "Union",
    "Concat",
    "Star",
    "Intersect",
    "Complement",
    "Morph",
    "EMPTY",
    "EPSILON",
    "DIALECTS",
    "parse_regex",
    "to_text",
    "compile_regex",
    "extract_regex",
    "simplify",
    "check_dialect",
    "nullable",
    "regex_size",
    "letters",
    "infer_alphabet",
]
