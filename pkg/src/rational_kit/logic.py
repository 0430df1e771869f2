"""Monadic second-order logic on finite words.

Formulas talk about positions of a word: first-order variables (lowercase)
range over positions, set variables (uppercase) over sets of positions.
Atoms are ``true``, ``x=y``, ``x<y``, ``S(x,y)`` (``y`` is the successor of
``x``), ``'a'(x)`` (position ``x`` carries ``a``) and ``X(x)``.

A formula with free variables is compiled to an automaton over a *track
alphabet*: each letter is a base symbol together with one bit per free
variable.  A first-order track must carry exactly one 1; a set track
carries the characteristic word of the set.  Sentences compile to
automata over the base alphabet.

Concrete syntax, loosest to tightest::

    iff    := imp ('<->' imp)*
    imp    := or ('->' imp)?
    or     := and ('|' and)*
    and    := unary ('&' unary)*
    unary  := '!' unary | QUANT VAR '.' iff | atom
    atom   := 'true' | 'false' | '(' iff ')' | x '=' y | x '<' y
            | 'S(' x ',' y ')' | X '(' x ')' | QUOTED '(' x ')'

``QUANT`` is one of ``ex1 all1 ex2 all2``; a quantifier's scope runs to
the end of the enclosing parenthesis.  ``->`` and ``<->`` are expanded
while parsing.
"""

from __future__ import annotations

import re
import weakref
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import NamedTuple

import numpy as np

from . import ops
from .automata import Alphabet, Dfa, Word, is_empty
from .config import DEFAULT_CAPS
from .errors import ContractError, InputError, ResourceError
from .minimize import minimize

# -- syntax tree -------------------------------------------------------------------


class Formula:
    """Base class of formula nodes."""

    __slots__ = ()

    # Structurally equal nodes built through the constructor are one object,
    # so equality on shared DAGs stops at the first level.
    _interned = weakref.WeakValueDictionary()

    def __new__(cls, *args, **kwargs):
        if kwargs or not args:
            return object.__new__(cls)
        key = (cls,) + tuple(id(a) if isinstance(a, Formula) else a for a in args)
        node = Formula._interned.get(key)
        if node is None:
            node = object.__new__(cls)
            Formula._interned[key] = node
        return node

    @cached_property
    def _hash(self):
        return hash((type(self).__name__,) + self._fields())

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self._fields() == other._fields()

    def _fields(self) -> tuple:
        return ()

    def children(self) -> tuple:
        return ()

    def __str__(self):
        return to_text(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)


def _check_fo(name):
    if not isinstance(name, str) or not re.fullmatch(r"[a-z][A-Za-z0-9_]*", name):
        raise InputError(f"first-order variable names start with a lowercase letter, got {name!r}")


def _check_so(name):
    if not isinstance(name, str) or not re.fullmatch(r"[A-Z][A-Za-z0-9_]*", name):
        raise InputError(f"set variable names start with an uppercase letter, got {name!r}")


@dataclass(frozen=True, eq=False)
class Truth(Formula):
    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=False)
class Eq(Formula):
    x: str
    y: str
    __hash__ = Formula.__hash__

    def __post_init__(self):
        _check_fo(self.x)
        _check_fo(self.y)

    def _fields(self):
        return (self.x, self.y)


@dataclass(frozen=True, eq=False)
class Less(Formula):
    x: str
    y: str
    __hash__ = Formula.__hash__

    def __post_init__(self):
        _check_fo(self.x)
        _check_fo(self.y)

    def _fields(self):
        return (self.x, self.y)


@dataclass(frozen=True, eq=False)
class Succ(Formula):
    x: str
    y: str
    __hash__ = Formula.__hash__

    def __post_init__(self):
        _check_fo(self.x)
        _check_fo(self.y)

    def _fields(self):
        return (self.x, self.y)


@dataclass(frozen=True, eq=False)
class LetterAt(Formula):
    symbol: str
    x: str
    __hash__ = Formula.__hash__

    def __post_init__(self):
        _check_fo(self.x)

    def _fields(self):
        return (self.symbol, self.x)


@dataclass(frozen=True, eq=False)
class SetMem(Formula):
    X: str
    x: str
    __hash__ = Formula.__hash__

    def __post_init__(self):
        _check_so(self.X)
        _check_fo(self.x)

    def _fields(self):
        return (self.X, self.x)


@dataclass(frozen=True, eq=False)
class Not(Formula):
    inner: Formula
    __hash__ = Formula.__hash__

    def _fields(self):
        return (self.inner,)

    def children(self):
        return (self.inner,)


@dataclass(frozen=True, eq=False)
class And(Formula):
    left: Formula
    right: Formula
    __hash__ = Formula.__hash__

    def _fields(self):
        return (self.left, self.right)

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=False)
class Or(Formula):
    left: Formula
    right: Formula
    __hash__ = Formula.__hash__

    def _fields(self):
        return (self.left, self.right)

    def children(self):
        return (self.left, self.right)


class _Quantifier(Formula):
    __slots__ = ()
    keyword = ""
    first_order = True

    def _fields(self):
        return (self.var, self.body)

    def children(self):
        return (self.body,)


@dataclass(frozen=True, eq=False)
class ExistsFO(_Quantifier):
    var: str
    body: Formula
    keyword = "ex1"
    __hash__ = Formula.__hash__

    def __post_init__(self):
        _check_fo(self.var)


@dataclass(frozen=True, eq=False)
class ForallFO(_Quantifier):
    var: str
    body: Formula
    keyword = "all1"
    __hash__ = Formula.__hash__

    def __post_init__(self):
        _check_fo(self.var)


@dataclass(frozen=True, eq=False)
class ExistsSO(_Quantifier):
    var: str
    body: Formula
    keyword = "ex2"
    first_order = False
    __hash__ = Formula.__hash__

    def __post_init__(self):
        _check_so(self.var)


@dataclass(frozen=True, eq=False)
class ForallSO(_Quantifier):
    var: str
    body: Formula
    keyword = "all2"
    first_order = False
    __hash__ = Formula.__hash__

    def __post_init__(self):
        _check_so(self.var)


TRUE = Truth()
FALSE = Not(TRUE)
_QUANTIFIER_BY_KEYWORD = {c.keyword: c for c in (ExistsFO, ForallFO, ExistsSO, ForallSO)}


def implies(a: Formula, b: Formula) -> Formula:
    return Or(Not(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return And(implies(a, b), implies(b, a))


def _balanced(items, node, empty):
    items = list(items)
    if not items:
        return empty
    while len(items) > 1:
        items = [node(items[i], items[i + 1]) if i + 1 < len(items) else items[i] for i in range(0, len(items), 2)]
    return items[0]


def conj(*items) -> Formula:
    """Balanced conjunction; the empty conjunction is ``true``."""
    return _balanced(items, And, TRUE)


def disj(*items) -> Formula:
    """Balanced disjunction; the empty disjunction is ``!true``."""
    return _balanced(items, Or, FALSE)


def _atom_vars(f: Formula) -> tuple:
    if isinstance(f, (Eq, Less, Succ)):
        return (f.x, f.y)
    if isinstance(f, LetterAt):
        return (f.x,)
    if isinstance(f, SetMem):
        return (f.X, f.x)
    return ()


def free_variables(phi: Formula, _memo=None) -> tuple:
    """Free variables in order of first free occurrence (left to right)."""
    memo = {} if _memo is None else _memo
    hit = memo.get(phi)
    if hit is not None:
        return hit
    if isinstance(phi, _Quantifier):
        out = tuple(v for v in free_variables(phi.body, memo) if v != phi.var)
    elif phi.children():
        seen = []
        for c in phi.children():
            seen.extend(v for v in free_variables(c, memo) if v not in seen)
        out = tuple(seen)
    else:
        out = tuple(dict.fromkeys(_atom_vars(phi)))
    memo[phi] = out
    return out


def is_first_order_name(name: str) -> bool:
    return name[:1].islower()


def all_variables(phi: Formula) -> set:
    out = set()
    stack = [phi]
    while stack:
        f = stack.pop()
        out.update(_atom_vars(f))
        if isinstance(f, _Quantifier):
            out.add(f.var)
        stack.extend(f.children())
    return out


def letters(phi: Formula) -> set:
    out = set()
    stack = [phi]
    while stack:
        f = stack.pop()
        if isinstance(f, LetterAt):
            out.add(f.symbol)
        stack.extend(f.children())
    return out


def formula_size(phi: Formula) -> int:
    return 1 + sum(formula_size(c) for c in phi.children())


@dataclass(frozen=True)
class FragmentTag:
    uses_successor: bool
    uses_order: bool
    uses_set_quantifier: bool

    @property
    def fo_order(self) -> bool:
        return not self.uses_successor and not self.uses_set_quantifier

    @property
    def fo_successor(self) -> bool:
        return not self.uses_order and not self.uses_set_quantifier

    @property
    def mso_order(self) -> bool:
        return not self.uses_successor

    @property
    def mso_successor(self) -> bool:
        return not self.uses_order

    def name(self) -> str:
        logic = "MSO" if self.uses_set_quantifier else "FO"
        if self.uses_successor and self.uses_order:
            return f"{logic}(S,<)"
        return f"{logic}(S)" if self.uses_successor else f"{logic}(<)"


def fragment(phi: Formula) -> FragmentTag:
    succ = order = sets = False
    stack = [phi]
    while stack:
        f = stack.pop()
        succ |= isinstance(f, Succ)
        order |= isinstance(f, Less)
        sets |= isinstance(f, (ExistsSO, ForallSO))
        stack.extend(f.children())
    return FragmentTag(succ, order, sets)


# -- printing ----------------------------------------------------------------------

# binding strength; quantifiers bind loosest because their scope runs to the right
_LEVEL = {Or: 3, And: 4}
_OP = {Or: "|", And: "&"}


def to_text(phi: Formula) -> str:
    """Concrete syntax that :func:`parse_formula` reads back to the same tree."""
    return _show(phi, 0)


def _show(f: Formula, need: int) -> str:
    if isinstance(f, Truth):
        return "true"
    if isinstance(f, Eq):
        return _wrap(f"{f.x}={f.y}", need > 5)
    if isinstance(f, Less):
        return _wrap(f"{f.x}<{f.y}", need > 5)
    if isinstance(f, Succ):
        return f"S({f.x},{f.y})"
    if isinstance(f, LetterAt):
        return f"{_quote(f.symbol)}({f.x})"
    if isinstance(f, SetMem):
        return f"{f.X}({f.x})"
    if f == FALSE:
        return "false"
    if isinstance(f, Not):
        return "!" + _show(f.inner, 6)
    if isinstance(f, (And, Or)):
        level = _LEVEL[type(f)]
        # the parser groups to the left, so a same-level right child needs parentheses
        text = f"{_show(f.left, level)} {_OP[type(f)]} {_show(f.right, level + 1)}"
        return _wrap(text, need > level)
    if isinstance(f, _Quantifier):
        return _wrap(f"{f.keyword} {f.var}. {_show(f.body, 0)}", need > 0)
    raise ContractError(f"not a formula node: {f!r}")


def _wrap(text, yes):
    return f"({text})" if yes else text


def _quote(symbol: str) -> str:
    return "'" + symbol.replace("\\", "\\\\").replace("'", "\\'") + "'"


# -- parsing -----------------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>\s+|\#[^\n]*)"
    r"|(?P<op><->|->|[!&|().,=<])"
    r"|(?P<quoted>'(?:[^'\\]|\\.)*')"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
)


class _Tok(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


def _tokens(text: str) -> list:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise InputError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "quoted":
                value = re.sub(r"\\(.)", r"\1", value[1:-1])
                if not value:
                    raise InputError("empty letter predicate", line, pos - line_start + 1)
            out.append(_Tok(kind, value, line, pos - line_start + 1))
        for i, c in enumerate(m.group()):
            if c == "\n":
                line, line_start = line + 1, pos + i + 1
        pos = m.end()
    out.append(_Tok("end", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text, alphabet):
        self.toks = _tokens(text)
        self.i = 0
        self.alphabet = alphabet

    def peek(self, offset=0):
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return InputError(message, tok.line, tok.column)

    def take(self, text=None, kind=None):
        tok = self.peek()
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind) or tok.kind == "end" and text:
            want = repr(text) if text else kind
            got = repr(tok.text) if tok.kind != "end" else "end of input"
            raise self.error(f"expected {want}, got {got}")
        self.i += 1
        return tok

    def at(self, text):
        tok = self.peek()
        return tok.kind == "op" and tok.text == text

    def parse(self):
        f = self.iff()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return f

    def iff(self):
        f = self.imp()
        while self.at("<->"):
            self.take("<->")
            f = iff(f, self.imp())
        return f

    def imp(self):
        f = self.disj()
        if self.at("->"):
            self.take("->")
            return implies(f, self.imp())
        return f

    def disj(self):
        f = self.conj()
        while self.at("|"):
            self.take("|")
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.at("&"):
            self.take("&")
            f = And(f, self.unary())
        return f

    def unary(self):
        tok = self.peek()
        if self.at("!"):
            self.take("!")
            return Not(self.unary())
        if tok.kind == "name" and tok.text in _QUANTIFIER_BY_KEYWORD:
            self.take()
            cls = _QUANTIFIER_BY_KEYWORD[tok.text]
            var = self.take(kind="name")
            check = _check_fo if cls.first_order else _check_so
            try:
                check(var.text)
            except InputError as e:
                raise self.error(f"{tok.text}: {e}", var) from None
            self.take(".")
            return cls(var.text, self.iff())
        return self.atom()

    def fo_var(self):
        tok = self.take(kind="name")
        if not is_first_order_name(tok.text) or tok.text in _KEYWORDS:
            raise self.error(f"expected a first-order variable (lowercase), got {tok.text!r}", tok)
        return tok.text

    def atom(self):
        tok = self.peek()
        if self.at("("):
            self.take("(")
            f = self.iff()
            self.take(")")
            return f
        if tok.kind == "quoted":
            self.take()
            if self.alphabet is not None and tok.text not in self.alphabet:
                raise self.error(f"unknown letter {tok.text!r} in letter predicate", tok)
            self.take("(")
            x = self.fo_var()
            self.take(")")
            return LetterAt(tok.text, x)
        if tok.kind != "name":
            raise self.error("expected a formula" if tok.kind != "end" else "unexpected end of input")
        if tok.text == "true":
            self.take()
            return TRUE
        if tok.text == "false":
            self.take()
            return FALSE
        if tok.text[0].isupper():
            self.take()
            self.take("(")
            x = self.fo_var()
            if tok.text == "S" and self.at(","):
                self.take(",")
                y = self.fo_var()
                self.take(")")
                return Succ(x, y)
            self.take(")")
            return SetMem(tok.text, x)
        x = self.fo_var()
        if self.at("("):
            raise self.error(f"letter predicates are written quoted: '{tok.text}'(x)", tok)
        op = self.peek()
        if self.at("="):
            self.take()
            return Eq(x, self.fo_var())
        if self.at("<"):
            self.take()
            return Less(x, self.fo_var())
        raise self.error(f"expected '=' or '<' after variable {x!r}", op)


_KEYWORDS = {"true", "false", *_QUANTIFIER_BY_KEYWORD}


def parse_formula(text: str, alphabet=None) -> Formula:
    """Parse a formula; letter predicates are checked against ``alphabet`` if given."""
    alphabet = Alphabet.of(alphabet) if alphabet is not None else None
    return _Parser(text, alphabet).parse()


# -- semantics ---------------------------------------------------------------------


@dataclass(frozen=True)
class Valuation:
    """Positions for first-order variables, sets of positions for set variables."""

    fo: dict = field(default_factory=dict)
    so: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "fo", dict(self.fo))
        object.__setattr__(self, "so", {k: frozenset(v) for k, v in self.so.items()})


def _as_word(u, alphabet) -> Word:
    if alphabet is not None:
        return Alphabet.of(alphabet).word(u)
    if isinstance(u, str):
        u = u.strip()
        if u in ("", "eps"):
            return ()
        return tuple(u.split()) if any(c.isspace() for c in u) else tuple(u)
    return tuple(u)


def eval_formula(u, nu: Valuation | None, phi: Formula, alphabet=None) -> bool:
    """``u, ν ⊨ φ`` by direct recursion; set quantifiers try all subsets."""
    u = _as_word(u, alphabet)
    nu = nu or Valuation()
    n = len(u)
    missing = [v for v in free_variables(phi) if v not in (nu.fo if is_first_order_name(v) else nu.so)]
    if missing:
        raise ContractError(f"valuation does not bind free variables {missing}")
    for v, d in nu.fo.items():
        if not 0 <= d < n:
            raise ContractError(f"position {d} of {v} outside the word (length {n})")
    so = {}
    for v, s in nu.so.items():
        if any(not 0 <= d < n for d in s):
            raise ContractError(f"set {v} has positions outside the word (length {n})")
        so[v] = sum(1 << d for d in s)
    return _eval(phi, u, n, dict(nu.fo), so)


def _eval(f, u, n, fo, so) -> bool:
    t = type(f)
    if t is Truth:
        return True
    if t is Eq:
        return fo[f.x] == fo[f.y]
    if t is Less:
        return fo[f.x] < fo[f.y]
    if t is Succ:
        return fo[f.y] == fo[f.x] + 1
    if t is LetterAt:
        return u[fo[f.x]] == f.symbol
    if t is SetMem:
        return bool(so[f.X] >> fo[f.x] & 1)
    if t is Not:
        return not _eval(f.inner, u, n, fo, so)
    if t is And:
        return _eval(f.left, u, n, fo, so) and _eval(f.right, u, n, fo, so)
    if t is Or:
        return _eval(f.left, u, n, fo, so) or _eval(f.right, u, n, fo, so)
    if t is ExistsFO or t is ForallFO:
        want = t is ExistsFO
        old = fo.get(f.var)
        result = not want
        for d in range(n):
            fo[f.var] = d
            if _eval(f.body, u, n, fo, so) == want:
                result = want
                break
        _restore(fo, f.var, old)
        return result
    if t is ExistsSO or t is ForallSO:
        want = t is ExistsSO
        old = so.get(f.var)
        result = not want
        for mask in range(1 << n):
            so[f.var] = mask
            if _eval(f.body, u, n, fo, so) == want:
                result = want
                break
        _restore(so, f.var, old)
        return result
    raise ContractError(f"not a formula node: {f!r}")


def _restore(env, var, old):
    if old is None:
        env.pop(var, None)
    else:
        env[var] = old


def satisfies(u, phi: Formula, alphabet=None) -> bool:
    """``u ⊨ φ`` for a sentence."""
    return eval_formula(u, Valuation(), phi, alphabet)


# -- rewritings --------------------------------------------------------------------


def fresh_name(used: set, stem: str) -> str:
    if stem not in used:
        return stem
    i = 1
    while f"{stem}{i}" in used:
        i += 1
    return f"{stem}{i}"


def _rewrite(phi: Formula, atom_map) -> Formula:
    memo = {}

    def go(f):
        hit = memo.get(f)
        if hit is not None:
            return hit
        if not f.children():
            out = atom_map(f)
        elif isinstance(f, Not):
            out = Not(go(f.inner))
        elif isinstance(f, (And, Or)):
            out = type(f)(go(f.left), go(f.right))
        else:
            out = type(f)(f.var, go(f.body))
        memo[f] = out
        return out

    return go(phi)


def rewrite_successor_in_order(phi: Formula) -> Formula:
    """Replace ``S(x,y)`` by ``x<y ∧ ∀z(x<z → (y=z ∨ y<z))``."""
    z = fresh_name(all_variables(phi), "z")

    def atom(f):
        if isinstance(f, Succ):
            return And(Less(f.x, f.y), ForallFO(z, implies(Less(f.x, z), Or(Eq(f.y, z), Less(f.y, z)))))
        return f

    return _rewrite(phi, atom)


def rewrite_order_in_mso_s(phi: Formula) -> Formula:
    """Replace ``x<y`` by ``∃X(X(y) ∧ ¬X(x) ∧ ∀z∀t((X(z) ∧ S(z,t)) → X(t)))``."""
    used = all_variables(phi)
    z = fresh_name(used, "z")
    t = fresh_name(used | {z}, "t")
    big = fresh_name(used, "X")

    def atom(f):
        if isinstance(f, Less):
            closed = ForallFO(z, ForallFO(t, implies(And(SetMem(big, z), Succ(z, t)), SetMem(big, t))))
            return ExistsSO(big, And(SetMem(big, f.y), And(Not(SetMem(big, f.x)), closed)))
        return f

    return _rewrite(phi, atom)


# -- track alphabets ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TrackAlphabet(Alphabet):
    """``A × {0,1}^p × {0,1}^q``: first-order tracks, then set tracks.

    Letter number ``i`` is base symbol ``i >> m`` with bit ``t`` of ``i``
    on track ``t`` (``m = p + q``).  Symbols print as ``a[bits]``.
    """

    base: Alphabet = None
    fo_tracks: tuple = ()
    so_tracks: tuple = ()

    @classmethod
    def build(cls, base, fo_tracks=(), so_tracks=()) -> "TrackAlphabet":
        return _track_alphabet(Alphabet.of(base), tuple(fo_tracks), tuple(so_tracks))

    @classmethod
    def _build(cls, base, fo_tracks, so_tracks) -> "TrackAlphabet":
        fo_tracks, so_tracks = tuple(fo_tracks), tuple(so_tracks)
        for v in fo_tracks:
            _check_fo(v)
        for v in so_tracks:
            _check_so(v)
        if len(set(fo_tracks + so_tracks)) != len(fo_tracks) + len(so_tracks):
            raise InputError("duplicate track variable")
        m = len(fo_tracks) + len(so_tracks)
        if m == 0:
            symbols = base.symbols
        else:
            bits = ["".join("1" if L >> t & 1 else "0" for t in range(m)) for L in range(1 << m)]
            symbols = tuple(f"{a}[{b}]" for a in base.symbols for b in bits)
        return cls(symbols, base, fo_tracks, so_tracks)

    def __eq__(self, other):
        return isinstance(other, TrackAlphabet) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return (self.base.symbols, self.fo_tracks, self.so_tracks)

    @property
    def tracks(self) -> tuple:
        return self.fo_tracks + self.so_tracks

    @property
    def width(self) -> int:
        return len(self.fo_tracks) + len(self.so_tracks)

    def position(self, var: str) -> int:
        try:
            return self.tracks.index(var)
        except ValueError:
            raise ContractError(f"no track for variable {var!r}") from None

    def letter(self, base_symbol: str, bits) -> int:
        """Index of the letter carrying ``base_symbol`` and the given track bits."""
        i = self.base.id(base_symbol) << self.width
        for t, b in enumerate(bits):
            i |= int(b) << t
        return i

    def encode_valuation(self, u, nu: Valuation) -> Word:
        """The track word of ``(u, ν)``."""
        u = self.base.word(u)
        out = []
        for d, a in enumerate(u):
            bits = [nu.fo[v] == d for v in self.fo_tracks] + [d in nu.so[v] for v in self.so_tracks]
            out.append(self.symbols[self.letter(a, bits)])
        return tuple(out)

    def decode(self, ids) -> Word:
        return tuple(self.symbols[i] for i in ids)

    def decode_valuation(self, word):
        """``(u, ν)`` from a track word; ``None`` if a first-order track does not carry exactly one 1."""
        ids = self.encode(word)
        m = self.width
        u = tuple(self.base.symbols[i >> m] for i in ids)
        fo, so = {}, {}
        for t, v in enumerate(self.fo_tracks):
            ones = [d for d, i in enumerate(ids) if i >> t & 1]
            if len(ones) != 1:
                return None
            fo[v] = ones[0]
        for t, v in enumerate(self.so_tracks, start=len(self.fo_tracks)):
            so[v] = frozenset(d for d, i in enumerate(ids) if i >> t & 1)
        return u, Valuation(fo, so)


@lru_cache(maxsize=256)
def _track_alphabet(base, fo_tracks, so_tracks):
    return TrackAlphabet._build(base, fo_tracks, so_tracks)


@lru_cache(maxsize=256)
def k_constraint(ta: TrackAlphabet) -> Dfa:
    """Words whose first-order tracks each carry exactly one 1.

    State ``s`` is the set (bitmask) of first-order tracks that already
    carried their 1; one extra dead state.  With no first-order track this
    is ``A*`` over the track alphabet.
    """
    p = len(ta.fo_tracks)
    full = (1 << p) - 1
    states = np.arange(1 << p)[:, None]
    fbits = (np.arange(len(ta)) & full)[None, :]
    dead = 1 << p
    delta = np.where(states & fbits, dead, states | fbits)
    delta = np.vstack([delta, np.full((1, len(ta)), dead)]).astype(np.int64)
    return Dfa(ta, delta, 0, frozenset({full}))


# -- compilation -------------------------------------------------------------------


def _bare(d: Dfa) -> Dfa:
    return Dfa(d.alphabet, d.delta, d.initial, d.finals) if d.names is not None else d


def _min(d: Dfa) -> Dfa:
    return _bare(minimize(d).dfa)


def _pattern(ta: TrackAlphabet, num_states: int, finals, step) -> Dfa:
    """Complete DFA from ``step(state, symbol, bits) -> state | None``; ``None`` goes to a dead state."""
    m = ta.width
    dead = num_states
    delta = np.full((num_states + 1, len(ta)), dead, dtype=np.int64)
    for letter in range(len(ta)):
        symbol = ta.base.symbols[letter >> m]
        bits = tuple(letter >> t & 1 for t in range(m))
        for q in range(num_states):
            r = step(q, symbol, bits)
            if r is not None:
                delta[q, letter] = r
    return Dfa(ta, delta, 0, frozenset(finals))


def cylindrify(d: Dfa, ta: TrackAlphabet) -> Dfa:
    """Reinterpret ``d`` over a track alphabet with more (or reordered) tracks; new tracks are ignored."""
    old = d.alphabet
    letters = np.arange(len(ta))
    image = (letters >> ta.width) << old.width
    for t, v in enumerate(old.tracks):
        image |= ((letters >> ta.position(v)) & 1) << t
    return Dfa(ta, d.delta[:, image], d.initial, d.finals)


def _merge(a: TrackAlphabet, b: TrackAlphabet) -> TrackAlphabet:
    fo = a.fo_tracks + tuple(v for v in b.fo_tracks if v not in a.fo_tracks)
    so = a.so_tracks + tuple(v for v in b.so_tracks if v not in a.so_tracks)
    if fo == a.fo_tracks and so == a.so_tracks:
        return a
    return TrackAlphabet.build(a.base, fo, so)


def project_track(d: Dfa, var: str, cap: int | None = None) -> Dfa:
    """Erase the track of ``var``: image under the letter-to-letter morphism that deletes that bit.

    The determinized image (:func:`ops.letter_image_dfa`, the same language
    as :func:`ops.morphic_image`) is intersected with the smaller K
    constraint and minimized.
    """
    ta = d.alphabet
    pos = ta.position(var)
    fo = tuple(v for v in ta.fo_tracks if v != var)
    so = tuple(v for v in ta.so_tracks if v != var)
    small = TrackAlphabet.build(ta.base, fo, so)
    low = (1 << pos) - 1
    ids = np.arange(len(ta))
    letter_map = ((ids >> (pos + 1)) << pos) | (ids & low)
    out = ops.letter_image_dfa(d, small, letter_map, cap=cap)
    return _min(ops.product(_min(out), k_constraint(small)))


class _Compiler:
    def __init__(self, base: Alphabet, cap, letter_cap):
        self.base = base
        self.cap = cap
        self.letter_cap = letter_cap
        self.memo = {}
        self.fv = {}
        self.alphabets = {}

    def track_alphabet(self, variables) -> TrackAlphabet:
        fo = tuple(v for v in variables if is_first_order_name(v))
        so = tuple(v for v in variables if not is_first_order_name(v))
        key = (fo, so)
        ta = self.alphabets.get(key)
        if ta is None:
            size = len(self.base) << (len(fo) + len(so))
            if size > self.letter_cap:
                raise ResourceError(f"track alphabet of {size} letters exceeds cap {self.letter_cap}")
            ta = self.alphabets[key] = TrackAlphabet.build(self.base, fo, so)
        return ta

    def tracks(self, f: Formula, ctx: Dfa | None) -> TrackAlphabet:
        """Tracks of ``ctx`` followed by the free variables of ``f`` it lacks."""
        have = ctx.alphabet.tracks if ctx is not None else ()
        return self.track_alphabet(have + tuple(v for v in free_variables(f, self.fv) if v not in have))

    def run(self, f: Formula, ctx: Dfa | None = None) -> Dfa:
        """Minimal DFA for ``L(f) ∩ L(ctx) ∩ K`` over :meth:`tracks`.

        The context is what is already known about the surrounding
        conjunction.  Compiling under it keeps intermediate automata small:
        a subformula only has to be right on words the context accepts.
        """
        key = (f, id(ctx))
        hit = self.memo.get(key)
        if hit is not None:
            return hit[0]
        try:
            out = self.node(f, ctx)
        except ResourceError as e:
            if getattr(e, "subformula", None) is not None:
                raise
            text = to_text(f)
            if len(text) > 120:
                text = text[:117] + "..."
            err = ResourceError(f"{e} (while compiling {text})", partial=e.partial)
            err.subformula = f
            raise err from e
        self.memo[key] = (out, ctx)  # holding ctx keeps its id from being reused
        return out

    def restrict(self, d: Dfa, ctx: Dfa | None, ta: TrackAlphabet) -> Dfa:
        if ctx is None:
            return cylindrify(d, ta) if d.alphabet != ta else d
        return _min(ops.product(cylindrify(d, ta), cylindrify(ctx, ta)))

    def node(self, f: Formula, ctx: Dfa | None) -> Dfa:
        ta = self.tracks(f, ctx)
        if isinstance(f, Not):
            inner = self.run(f.inner, ctx)
            out = ops.product(ops.complement(inner), k_constraint(ta))
            if ctx is not None:
                out = ops.product(_min(out), cylindrify(ctx, ta))
            return _min(out)
        if isinstance(f, And):
            return self.run(f.right, self.run(f.left, ctx))
        if isinstance(f, Or):
            left, right = self.run(f.left, ctx), self.run(f.right, ctx)
            both = ops.product(cylindrify(left, ta), cylindrify(right, ta), "union")
            return _min(ops.product(_min(both), k_constraint(ta)))
        if isinstance(f, (ForallFO, ForallSO)):
            dual = ExistsFO if isinstance(f, ForallFO) else ExistsSO
            return self.run(Not(dual(f.var, Not(f.body))), ctx)
        if isinstance(f, (ExistsFO, ExistsSO)):
            if ctx is not None and f.var in ctx.alphabet.tracks:
                # the bound variable shadows a context track
                return self.restrict(self.run(f, None), ctx, ta)
            have = ctx.alphabet.tracks if ctx is not None else ()
            wide = self.track_alphabet(have + (f.var,))
            inner_ctx = k_constraint(wide)
            if ctx is not None:
                inner_ctx = _min(ops.product(cylindrify(ctx, wide), inner_ctx))
            body = self.run(f.body, inner_ctx)
            return project_track(body, f.var, cap=self.cap)
        return self.restrict(self.atom(f), ctx, ta)

    def atom(self, f: Formula) -> Dfa:
        ta = self.track_alphabet(free_variables(f, self.fv))
        if isinstance(f, Truth):
            return _pattern(ta, 1, {0}, lambda q, a, b: 0)
        if isinstance(f, (Eq, Less, Succ)) and f.x == f.y:
            if isinstance(f, Eq):
                return k_constraint(ta)
            return _pattern(ta, 1, (), lambda q, a, b: None)
        if isinstance(f, Eq):
            step = {(0, (0, 0)): 0, (0, (1, 1)): 1, (1, (0, 0)): 1}
            return _pattern(ta, 2, {1}, lambda q, a, b: step.get((q, b)))
        if isinstance(f, Less):
            step = {(0, (0, 0)): 0, (0, (1, 0)): 1, (1, (0, 0)): 1, (1, (0, 1)): 2, (2, (0, 0)): 2}
            return _pattern(ta, 3, {2}, lambda q, a, b: step.get((q, b)))
        if isinstance(f, Succ):
            # adjacent positions: the 1 on y comes right after the 1 on x
            step = {(0, (0, 0)): 0, (0, (1, 0)): 1, (1, (0, 1)): 2, (2, (0, 0)): 2}
            return _pattern(ta, 3, {2}, lambda q, a, b: step.get((q, b)))
        if isinstance(f, LetterAt):
            sym = f.symbol

            def letter_step(q, a, b):
                if b[0] == 0:
                    return q
                return 1 if q == 0 and a == sym else None

            return _pattern(ta, 2, {1}, letter_step)
        if isinstance(f, SetMem):
            # tracks: (x, X); the single 1 on x must sit on a position of X
            def mem_step(q, a, b):
                if b[0] == 0:
                    return q
                return 1 if q == 0 and b[1] == 1 else None

            return _pattern(ta, 2, {1}, mem_step)
        raise ContractError(f"not a formula node: {f!r}")


def compile_formula(phi: Formula, alphabet, track_order=None, cap: int | None = None) -> Dfa:
    """Minimal complete DFA for ``L(φ)`` over the track alphabet of its free variables.

    Tracks follow the first free occurrence of each variable unless
    ``track_order`` lists them explicitly.  A sentence gives a DFA over
    ``alphabet`` itself.
    """
    base = Alphabet.of(alphabet)
    unknown = letters(phi) - set(base.symbols)
    if unknown:
        raise InputError(f"letter predicates use symbols outside the alphabet: {sorted(unknown)}")
    cap = DEFAULT_CAPS.determinize_states if cap is None else cap
    compiler = _Compiler(base, cap, DEFAULT_CAPS.track_letters)
    d = compiler.run(phi)
    fv = free_variables(phi, compiler.fv)
    if not fv:
        return Dfa(base, d.delta, d.initial, d.finals)
    if track_order is not None:
        track_order = tuple(track_order)
        if sorted(track_order) != sorted(fv):
            raise InputError(f"track order {list(track_order)} must list exactly the free variables {list(fv)}")
        d = cylindrify(d, compiler.track_alphabet(track_order))
    return d


class MsoDecision(NamedTuple):
    holds: bool
    word: Word | None  # witness (satisfiable) or counterexample (valid)

    def __bool__(self):
        return self.holds


MODES = ("valid", "satisfiable")


def decide_mso(phi: Formula, alphabet, mode: str = "valid", cap: int | None = None) -> MsoDecision:
    """Validity or satisfiability of a sentence, with a shortest witness word."""
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r} ({'|'.join(MODES)})")
    fv = free_variables(phi)
    if fv:
        raise ContractError(f"decide_mso needs a sentence; free variables {list(fv)}")
    if mode == "satisfiable":
        e = is_empty(compile_formula(phi, alphabet, cap=cap))
        return MsoDecision(not e.empty, e.word)
    e = is_empty(compile_formula(Not(phi), alphabet, cap=cap))
    return MsoDecision(e.empty, e.word)


# -- automata to sentences ---------------------------------------------------------


def _at_min(f_of) -> Formula:
    """``f(min)``: ``∀x(∀y ¬S(y,x) → f(x))``."""
    return ForallFO("x", implies(ForallFO("y", Not(Succ("y", "x"))), f_of("x")))


def _at_max(f_of) -> Formula:
    """``f(max)``: ``∀x(∀y ¬S(x,y) → f(x))``."""
    return ForallFO("x", implies(ForallFO("y", Not(Succ("x", "y"))), f_of("x")))


def dfa_to_mso(d: Dfa) -> Formula:
    """Existential MSO sentence describing accepting runs of a complete DFA.

    Set ``X<q>`` holds the positions after which the automaton is in state
    ``q``.  The sets partition the positions, consecutive positions follow
    the transitions, the first position follows the transition out of the
    initial state and the last position is in a final state.  When the
    initial state is not final, ``∃x true`` rules the empty word out.
    """
    if not isinstance(d, Dfa) or not d.is_complete:
        raise ContractError("dfa_to_mso needs a complete Dfa")
    n = d.num_states
    X = [f"X{q}" for q in range(n)]
    symbols = d.alphabet.symbols
    disjoint = [Not(ExistsFO("x", And(SetMem(X[q], "x"), SetMem(X[r], "x")))) for q in range(n) for r in range(q + 1, n)]
    cover = ForallFO("x", disj(*(SetMem(X[q], "x") for q in range(n))))
    steps = disj(
        *(
            conj(SetMem(X[q], "x"), LetterAt(a, "y"), SetMem(X[int(d.delta[q, i])], "y"))
            for q in range(n)
            for i, a in enumerate(symbols)
        )
    )
    moves = ForallFO("x", ForallFO("y", implies(Succ("x", "y"), steps)))
    start = [
        implies(_at_min(lambda v, a=a: LetterAt(a, v)), _at_min(lambda v, i=i: SetMem(X[int(d.delta[d.initial, i])], v)))
        for i, a in enumerate(symbols)
    ]
    accept = disj(*(_at_max(lambda v, q=q: SetMem(X[q], v)) for q in sorted(d.finals)))
    body = conj(conj(*disjoint), cover, moves, conj(*start), accept)
    for q in reversed(range(n)):
        body = ExistsSO(X[q], body)
    if d.initial not in d.finals:
        body = And(body, ExistsFO("x", TRUE))
    return body
